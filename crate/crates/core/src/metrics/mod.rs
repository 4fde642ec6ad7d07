//! Structural comparison suite: density, clustering (average-local and
//! global-transitivity variants), mean geodesic distance, discrete power-law
//! fit and degree assortativity.
//!
//! Everything here is read-only over an immutable graph. The per-source
//! breadth-first traversals and per-node triangle counts are data-parallel;
//! with the `parallel` feature they run on rayon and reduce by integer sums,
//! which keeps results independent of scheduling order. The
//! `*_sequential` variants are always available and are what the feature-off
//! build dispatches to.

mod powerlaw;

pub use powerlaw::{powerlaw_fit, PowerLawError, PowerLawFit, MIN_FIT_SAMPLES};

use crate::graph::{Graph, NodeId};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
#[cfg(feature = "parallel")]
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::VecDeque;

/// Components at or below this size get exact all-pairs geodesics; larger
/// ones are sampled.
pub const EXACT_GEODESIC_LIMIT: usize = 20_000;
/// Source count for sampled geodesics.
pub const DEFAULT_GEODESIC_SOURCES: usize = 1_000;
/// Seed for the sampled-geodesic source choice.
pub const DEFAULT_GEODESIC_SEED: u64 = 7;

/// `2E / (N(N−1))`, or `None` for graphs with fewer than two nodes.
pub fn density(g: &Graph) -> Option<f64> {
    let n = g.node_count();
    if n < 2 {
        return None;
    }
    Some(2.0 * g.edge_count() as f64 / (n as f64 * (n - 1) as f64))
}

fn triangles_at(g: &Graph, v: NodeId) -> u64 {
    // every triangle through v is seen once from each of its two other
    // corners, hence the halving
    let sum: u64 = g
        .neighbors(v)
        .iter()
        .map(|&u| g.common_neighbor_count(u, v) as u64)
        .sum();
    debug_assert_eq!(sum % 2, 0);
    sum / 2
}

/// Triangle count per node (each triangle counts once at each corner).
pub fn triangle_counts(g: &Graph) -> Vec<u64> {
    #[cfg(feature = "parallel")]
    {
        (0..g.node_count() as u32)
            .into_par_iter()
            .map(|v| triangles_at(g, NodeId(v)))
            .collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        triangle_counts_sequential(g)
    }
}

/// Sequential fallback of [`triangle_counts`].
pub fn triangle_counts_sequential(g: &Graph) -> Vec<u64> {
    g.nodes().map(|v| triangles_at(g, v)).collect()
}

fn clustering_from_counts(g: &Graph, tri: &[u64]) -> (f64, f64) {
    let n = g.node_count();
    if n == 0 {
        return (0.0, 0.0);
    }
    let mut local_sum = 0.0;
    let mut tri_sum: u64 = 0;
    let mut triples: u64 = 0;
    for v in g.nodes() {
        let d = g.degree(v) as u64;
        let t = tri[v.index()];
        tri_sum += t;
        if d >= 2 {
            let pairs = d * (d - 1) / 2;
            triples += pairs;
            local_sum += t as f64 / pairs as f64;
        }
        // degree-<2 nodes contribute 0 to the average, they are not excluded
    }
    let avg_local = local_sum / n as f64;
    let transitivity = if triples == 0 {
        0.0
    } else {
        tri_sum as f64 / triples as f64
    };
    (avg_local, transitivity)
}

/// Mean over all nodes of the fraction of a node's neighbor pairs that are
/// themselves connected; nodes of degree < 2 contribute 0.
pub fn avg_local_clustering(g: &Graph) -> f64 {
    clustering_from_counts(g, &triangle_counts(g)).0
}

/// `3 × triangles / connected triples`, 0 when no triple exists.
pub fn global_transitivity(g: &Graph) -> f64 {
    clustering_from_counts(g, &triangle_counts(g)).1
}

/// Nodes of the largest connected component, ascending. Ties go to the
/// component containing the smallest node id.
pub fn largest_component(g: &Graph) -> Vec<NodeId> {
    let n = g.node_count();
    let mut label = vec![u32::MAX; n];
    let mut best: (usize, u32) = (0, 0);
    let mut queue = VecDeque::new();
    let mut next = 0u32;
    for start in g.nodes() {
        if label[start.index()] != u32::MAX {
            continue;
        }
        let id = next;
        next += 1;
        label[start.index()] = id;
        queue.push_back(start);
        let mut size = 0usize;
        while let Some(v) = queue.pop_front() {
            size += 1;
            for &w in g.neighbors(v) {
                if label[w.index()] == u32::MAX {
                    label[w.index()] = id;
                    queue.push_back(w);
                }
            }
        }
        if size > best.0 {
            best = (size, id);
        }
    }
    g.nodes().filter(|v| label[v.index()] == best.1).collect()
}

pub fn is_connected(g: &Graph) -> bool {
    g.node_count() == 0 || largest_component(g).len() == g.node_count()
}

/// Geodesic evaluation mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeodesicMode {
    /// One BFS per node of the largest component.
    Exact,
    /// BFS from `sources` component nodes chosen without replacement by a
    /// generator seeded with `seed`. With `sources >=` component size this
    /// equals [`GeodesicMode::Exact`].
    Sampled { sources: usize, seed: u64 },
}

/// How a report's geodesic value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum GeodesicMethod {
    Exact,
    Sampled { sources: usize, seed: u64 },
}

/// BFS distance sum from `source`; returns (sum of distances, reached nodes
/// excluding the source).
fn bfs_distance_sum(
    g: &Graph,
    source: NodeId,
    dist: &mut [u32],
    queue: &mut VecDeque<NodeId>,
) -> (u64, u64) {
    dist.fill(u32::MAX);
    queue.clear();
    dist[source.index()] = 0;
    queue.push_back(source);
    let mut sum = 0u64;
    let mut reached = 0u64;
    while let Some(v) = queue.pop_front() {
        let d = dist[v.index()];
        for &w in g.neighbors(v) {
            if dist[w.index()] == u32::MAX {
                dist[w.index()] = d + 1;
                sum += (d + 1) as u64;
                reached += 1;
                queue.push_back(w);
            }
        }
    }
    (sum, reached)
}

fn geodesic_sources(comp: &[NodeId], mode: GeodesicMode) -> Vec<NodeId> {
    match mode {
        GeodesicMode::Exact => comp.to_vec(),
        GeodesicMode::Sampled { sources, seed } => {
            let k = sources.clamp(1, comp.len());
            if k == comp.len() {
                return comp.to_vec();
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut picked: Vec<NodeId> = rand::seq::index::sample(&mut rng, comp.len(), k)
                .into_iter()
                .map(|i| comp[i])
                .collect();
            picked.sort_unstable();
            picked
        }
    }
}

/// Average shortest-path length over reachable pairs in the largest
/// component, or `None` for edgeless graphs.
pub fn mean_geodesic(g: &Graph, mode: GeodesicMode) -> Option<f64> {
    if g.edge_count() == 0 {
        return None;
    }
    let comp = largest_component(g);
    let sources = geodesic_sources(&comp, mode);
    #[cfg(feature = "parallel")]
    let (sum, pairs) = {
        sources
            .par_iter()
            .map_init(
                || (vec![u32::MAX; g.node_count()], VecDeque::new()),
                |(dist, queue), &s| bfs_distance_sum(g, s, dist, queue),
            )
            .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1))
    };
    #[cfg(not(feature = "parallel"))]
    let (sum, pairs) = sum_over_sources(g, &sources);
    debug_assert!(pairs > 0);
    Some(sum as f64 / pairs as f64)
}

/// Sequential fallback of [`mean_geodesic`].
pub fn mean_geodesic_sequential(g: &Graph, mode: GeodesicMode) -> Option<f64> {
    if g.edge_count() == 0 {
        return None;
    }
    let comp = largest_component(g);
    let sources = geodesic_sources(&comp, mode);
    let (sum, pairs) = sum_over_sources(g, &sources);
    Some(sum as f64 / pairs as f64)
}

fn sum_over_sources(g: &Graph, sources: &[NodeId]) -> (u64, u64) {
    let mut dist = vec![u32::MAX; g.node_count()];
    let mut queue = VecDeque::new();
    let mut sum = 0u64;
    let mut pairs = 0u64;
    for &s in sources {
        let (d, r) = bfs_distance_sum(g, s, &mut dist, &mut queue);
        sum += d;
        pairs += r;
    }
    (sum, pairs)
}

/// Pearson correlation of endpoint degrees over edges, each edge contributing
/// both orientations. `None` when there are no edges or the endpoint-degree
/// variance vanishes (all endpoint degrees equal).
pub fn degree_assortativity(g: &Graph) -> Option<f64> {
    if g.edge_count() == 0 {
        return None;
    }
    let mut sum_x: u128 = 0; // Σ over ordered endpoint pairs of x
    let mut sum_x2: u128 = 0; // Σ x²
    let mut sum_xy: u128 = 0; // Σ x·y
    for (u, v) in g.edges() {
        let (du, dv) = (g.degree(u) as u128, g.degree(v) as u128);
        sum_x += du + dv;
        sum_x2 += du * du + dv * dv;
        sum_xy += 2 * du * dv;
    }
    let m = (2 * g.edge_count()) as f64;
    let mean = sum_x as f64 / m;
    let var = sum_x2 as f64 / m - mean * mean;
    let cov = sum_xy as f64 / m - mean * mean;
    // guard against cancellation noise around an exactly-degenerate variance
    if var.abs() < 1e-12 * (1.0 + mean * mean) {
        return None;
    }
    Some(cov / var)
}

/// The full comparison suite for one graph.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsReport {
    pub node_count: usize,
    pub edge_count: usize,
    pub density: Option<f64>,
    pub avg_local_clustering: f64,
    pub global_transitivity: f64,
    pub mean_geodesic: Option<f64>,
    pub geodesic_method: GeodesicMethod,
    pub powerlaw: Option<PowerLawFit>,
    pub assortativity: Option<f64>,
}

impl MetricsReport {
    /// Computes every metric, picking the geodesic mode automatically: exact
    /// up to [`EXACT_GEODESIC_LIMIT`] component nodes, sampled with
    /// [`DEFAULT_GEODESIC_SOURCES`] sources beyond that.
    pub fn compute(g: &Graph) -> Self {
        Self::compute_with(g, None)
    }

    /// Computes every metric with an explicit geodesic mode.
    pub fn compute_with(g: &Graph, mode: Option<GeodesicMode>) -> Self {
        let mode = mode.unwrap_or_else(|| {
            if largest_component(g).len() <= EXACT_GEODESIC_LIMIT {
                GeodesicMode::Exact
            } else {
                GeodesicMode::Sampled {
                    sources: DEFAULT_GEODESIC_SOURCES,
                    seed: DEFAULT_GEODESIC_SEED,
                }
            }
        });
        let method = match mode {
            GeodesicMode::Exact => GeodesicMethod::Exact,
            GeodesicMode::Sampled { sources, seed } => GeodesicMethod::Sampled { sources, seed },
        };
        let (avg_local, transitivity) = clustering_from_counts(g, &triangle_counts(g));
        let powerlaw = match powerlaw_fit(&g.degrees()) {
            Ok(fit) => Some(fit),
            Err(err) => {
                log::debug!("power-law fit unavailable: {err}");
                None
            }
        };
        MetricsReport {
            node_count: g.node_count(),
            edge_count: g.edge_count(),
            density: density(g),
            avg_local_clustering: avg_local,
            global_transitivity: transitivity,
            mean_geodesic: mean_geodesic(g, mode),
            geodesic_method: method,
            powerlaw,
            assortativity: degree_assortativity(g),
        }
    }
}
