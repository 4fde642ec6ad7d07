//! Two-phase network construction: seeded attribute initialization followed
//! by iterative node arrival with similarity-guided linking and triad
//! formation.
//!
//! Construction starts from a triangle on nodes 0, 1, 2 (connected regardless
//! of similarity). Every later node draws a target degree `m` uniformly from
//! `[m_min, m_max]` (capped at the number of existing nodes so the graph stays
//! simple) and, while its link count is below `m`, repeats two sub-steps:
//!
//! 1. with probability `p_sim` it links to an existing node sampled
//!    proportionally to the combined similarity score over all eligible
//!    (non-adjacent) nodes, otherwise to one chosen uniformly at random;
//! 2. with probability `p_triad` it links to up to `triad_count` of the most
//!    similar eligible neighbors of the node chosen in sub-step 1, falling
//!    back to uniformly random eligible nodes when that anchor has no
//!    eligible neighbors.
//!
//! Both sub-steps count toward `m`. Generation is strictly sequential — each
//! arrival depends on the full prior graph — so parallelism belongs at the
//! level of independent seeded runs.
//!
//! # Randomness
//!
//! All stochastic choices consume one master [`rand::Rng`] stream in a fixed
//! order. Per arrival: one target-degree draw, then per iteration one
//! `p_sim` coin, one selection draw, and (while budget remains) one `p_triad`
//! coin plus the fallback draws if the triad step falls back to random
//! selection. When profiles are sampled rather than loaded, sampling consumes
//! the stream first (node-major, attribute-minor). Driving the pipeline with
//! a seeded `ChaCha8Rng`, as [`generate`] does, makes outputs byte-identical
//! across platforms.

use crate::graph::{Graph, NodeId};
use crate::schema::{AttributeSchema, NodeProfile};
use crate::similarity::demographic_sim;
use rand::distributions::{Distribution, WeightedIndex};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Seed used when a run config does not specify one.
pub const DEFAULT_SEED: u64 = 42;

/// Generator knobs: node count, per-arrival degree range, step probabilities,
/// triad budget and the RNG seed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenParams {
    /// Number of nodes in the finished network.
    pub n: usize,
    /// Minimum per-arrival target degree (`m_o`).
    pub m_min: usize,
    /// Maximum per-arrival target degree (`m_f`).
    pub m_max: usize,
    /// Probability that a link is similarity-guided rather than uniform.
    pub p_sim: f64,
    /// Probability that a triad-formation sub-step runs.
    pub p_triad: f64,
    /// Maximum closure links per triad sub-step (`t_c`).
    pub triad_count: usize,
    /// Master RNG seed.
    pub seed: u64,
    /// When set, the triad step considers neighbors of every node linked so
    /// far at this arrival instead of only the current iteration's anchor.
    pub wide_anchor: bool,
}

impl GenParams {
    /// Params with the common defaults: `p_sim = p_triad = 1`,
    /// `triad_count = 3`, the documented default seed, narrow anchors.
    pub fn new(n: usize, m_min: usize, m_max: usize) -> Self {
        GenParams {
            n,
            m_min,
            m_max,
            p_sim: 1.0,
            p_triad: 1.0,
            triad_count: 3,
            seed: DEFAULT_SEED,
            wide_anchor: false,
        }
    }

    pub fn validate(&self) -> Result<(), GenerateError> {
        let fail = |field: &'static str, message: &str| {
            Err(GenerateError::InvalidParams {
                field,
                message: message.to_string(),
            })
        };
        if self.m_min < 1 {
            return fail("m_min", "must be at least 1");
        }
        if self.m_min > self.m_max {
            return fail("m_max", "must be at least m_min");
        }
        if self.m_max >= self.n {
            return fail("m_max", "must be smaller than n");
        }
        if !self.p_sim.is_finite() || !(0.0..=1.0).contains(&self.p_sim) {
            return fail("p_sim", "must lie in [0, 1]");
        }
        if !self.p_triad.is_finite() || !(0.0..=1.0).contains(&self.p_triad) {
            return fail("p_triad", "must lie in [0, 1]");
        }
        Ok(())
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum GenerateError {
    #[error("need at least 3 nodes for the seed triad, got {0}")]
    TooFewNodes(usize),
    #[error("expected {expected} profiles for n = {expected} nodes, got {got}")]
    ProfileCountMismatch { expected: usize, got: usize },
    #[error("params.{field}: {message}")]
    InvalidParams {
        field: &'static str,
        message: String,
    },
}

/// How the similarity sub-step picked its node.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LinkSelection {
    /// Sampled proportionally to the combined similarity scores.
    Proportional,
    /// Uniform pick because the `p_sim` coin came up random.
    UniformCoin,
    /// Uniform fallback because every candidate scored zero.
    UniformZeroScore,
}

/// Result of one triad sub-step.
#[derive(Debug, Clone, PartialEq)]
pub struct TriadOutcome {
    /// Nodes linked, in rank order (or pick order for the fallback).
    pub linked: Vec<NodeId>,
    /// Whether the random fallback ran because no anchor neighbor was
    /// eligible.
    pub random_fallback: bool,
}

/// Per-arrival generation record.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrivalRecord {
    pub node: u32,
    /// Target degree after the existing-node cap.
    pub target_degree: u32,
    /// Similarity sub-step edges picked proportionally to score.
    pub proportional_edges: u32,
    /// Similarity sub-step edges picked uniformly (`p_sim` coin miss).
    pub uniform_edges: u32,
    /// Similarity sub-step edges picked uniformly because all scores were 0.
    pub zero_score_edges: u32,
    /// Triad sub-step edges to ranked anchor neighbors.
    pub triad_ranked_edges: u32,
    /// Triad sub-step edges from the random fallback.
    pub triad_random_edges: u32,
    /// Number of triad sub-steps that hit the random fallback.
    pub triad_fallback_events: u32,
    /// The arrival loop stopped early for lack of eligible nodes.
    pub exhausted: bool,
}

impl ArrivalRecord {
    /// Edges created at this node's arrival.
    pub fn edges_created(&self) -> usize {
        (self.proportional_edges
            + self.uniform_edges
            + self.zero_score_edges
            + self.triad_ranked_edges
            + self.triad_random_edges) as usize
    }
}

/// Construction trace: one record per arriving node (the three seed-triad
/// nodes are not arrivals and carry no record).
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct GenTrace {
    pub arrivals: Vec<ArrivalRecord>,
}

impl GenTrace {
    /// Edges created by arrivals; the seed triad adds 3 more.
    pub fn edges_created(&self) -> usize {
        self.arrivals.iter().map(ArrivalRecord::edges_created).sum()
    }

    pub fn similarity_guided_edges(&self) -> usize {
        self.arrivals
            .iter()
            .map(|a| a.proportional_edges as usize)
            .sum()
    }

    pub fn triad_edges(&self) -> usize {
        self.arrivals
            .iter()
            .map(|a| (a.triad_ranked_edges + a.triad_random_edges) as usize)
            .sum()
    }

    pub fn target_degree_sum(&self) -> usize {
        self.arrivals.iter().map(|a| a.target_degree as usize).sum()
    }
}

/// Draws the target degree for an arriving node: uniform on the inclusive
/// interval `[m_min, m_max]`, capped at the number of already-placed nodes so
/// a simple graph can absorb every link.
pub fn draw_target_degree<R: Rng>(params: &GenParams, existing_nodes: usize, rng: &mut R) -> usize {
    rng.gen_range(params.m_min..=params.m_max)
        .min(existing_nodes)
}

/// Reusable buffers for the candidate scans. The demographic scores against
/// the current arrival are cached per arrival; common-neighbor counts are
/// rebuilt per scoring pass via the incidence walk over the arrival's
/// two-hop neighborhood.
struct Scratch {
    demog: Vec<f64>,
    demog_for: Option<NodeId>,
    common: Vec<u32>,
    touched: Vec<u32>,
    candidates: Vec<NodeId>,
    weights: Vec<f64>,
}

impl Scratch {
    fn new(capacity: usize) -> Self {
        Scratch {
            demog: vec![0.0; capacity],
            demog_for: None,
            common: vec![0; capacity],
            touched: Vec::new(),
            candidates: Vec::new(),
            weights: Vec::new(),
        }
    }

    fn ensure(&mut self, n: usize) {
        if self.demog.len() < n {
            self.demog.resize(n, 0.0);
            self.common.resize(n, 0);
        }
    }
}

/// Lists every node that is neither `u` nor adjacent to `u`, in id order.
fn collect_candidates(g: &Graph, u: NodeId, out: &mut Vec<NodeId>) {
    out.clear();
    let nbs = g.neighbors(u);
    let mut p = 0;
    for idx in 0..g.node_count() as u32 {
        let c = NodeId(idx);
        if c == u {
            continue;
        }
        if p < nbs.len() && nbs[p] == c {
            p += 1;
            continue;
        }
        out.push(c);
    }
}

fn fill_demog(
    schema: &AttributeSchema,
    profiles: &[NodeProfile],
    count: usize,
    u: NodeId,
    scratch: &mut Scratch,
) {
    if scratch.demog_for == Some(u) {
        return;
    }
    let pu = &profiles[u.index()];
    for (c, profile) in profiles[..count].iter().enumerate() {
        if c != u.index() {
            scratch.demog[c] = demographic_sim(profile, pu, schema);
        }
    }
    scratch.demog_for = Some(u);
}

fn fill_common(g: &Graph, u: NodeId, scratch: &mut Scratch) {
    for &t in &scratch.touched {
        scratch.common[t as usize] = 0;
    }
    scratch.touched.clear();
    for &w in g.neighbors(u) {
        for &x in g.neighbors(w) {
            if x != u {
                let slot = &mut scratch.common[x.index()];
                if *slot == 0 {
                    scratch.touched.push(x.0);
                }
                *slot += 1;
            }
        }
    }
}

/// Combined similarity of candidate `c` against the arrival whose
/// demographic and common-neighbor tables are loaded in `scratch`.
///
/// The arithmetic mirrors [`combined_sim`] term for term (the
/// common-neighbor count comes from the incidence walk instead of a pairwise
/// intersection), so the scores are bit-identical to the kernel route; a test
/// asserts exact equality.
#[inline]
fn score_against(
    g: &Graph,
    schema: &AttributeSchema,
    scratch: &Scratch,
    arrival_degree: usize,
    max_degree: usize,
    c: NodeId,
) -> f64 {
    let deg_c = g.degree(c);
    let min_deg = deg_c.min(arrival_degree);
    let fof = if min_deg == 0 {
        0.0
    } else {
        scratch.common[c.index()] as f64 / min_deg as f64
    };
    let pa = if max_degree == 0 {
        0.0
    } else {
        deg_c as f64 / max_degree as f64
    };
    schema.alpha() * scratch.demog[c.index()]
        + schema.beta() * (schema.weight_fof() * fof + schema.weight_pa() * pa)
}

/// Scores `scratch.candidates` against arrival `u` into `scratch.weights`.
fn score_candidates(g: &Graph, schema: &AttributeSchema, u: NodeId, scratch: &mut Scratch) {
    fill_common(g, u, scratch);
    let du = g.degree(u);
    let max_degree = g.max_degree().unwrap_or(0);
    scratch.weights.clear();
    for i in 0..scratch.candidates.len() {
        let c = scratch.candidates[i];
        let score = score_against(g, schema, scratch, du, max_degree, c);
        scratch.weights.push(score);
    }
}

fn sim_step_impl<R: Rng>(
    g: &mut Graph,
    schema: &AttributeSchema,
    profiles: &[NodeProfile],
    params: &GenParams,
    u: NodeId,
    scratch: &mut Scratch,
    rng: &mut R,
) -> Option<(NodeId, LinkSelection)> {
    collect_candidates(g, u, &mut scratch.candidates);
    if scratch.candidates.is_empty() {
        return None;
    }
    let (chosen, selection) = if rng.gen_bool(params.p_sim) {
        fill_demog(schema, profiles, g.node_count(), u, scratch);
        score_candidates(g, schema, u, scratch);
        let total: f64 = scratch.weights.iter().sum();
        if total > 0.0 {
            let dist = WeightedIndex::new(scratch.weights.iter().copied())
                .expect("weights are finite, non-negative and sum to a positive value");
            (
                scratch.candidates[dist.sample(rng)],
                LinkSelection::Proportional,
            )
        } else {
            let idx = rng.gen_range(0..scratch.candidates.len());
            (scratch.candidates[idx], LinkSelection::UniformZeroScore)
        }
    } else {
        let idx = rng.gen_range(0..scratch.candidates.len());
        (scratch.candidates[idx], LinkSelection::UniformCoin)
    };
    let added = g.add_edge(u, chosen);
    debug_assert!(added, "candidate list admitted an existing edge");
    Some((chosen, selection))
}

/// One similarity-based link sub-step for `new_node`.
///
/// With probability `p_sim` the node links to an eligible node sampled
/// proportionally to the combined similarity score (uniformly when every
/// score is zero); otherwise to a uniformly random eligible node. Returns the
/// chosen node and how it was selected, or `None` when no eligible node
/// exists (in which case no RNG draw is consumed and the graph is unchanged).
pub fn similarity_link_step<R: Rng>(
    g: &mut Graph,
    schema: &AttributeSchema,
    profiles: &[NodeProfile],
    params: &GenParams,
    new_node: NodeId,
    rng: &mut R,
) -> Option<(NodeId, LinkSelection)> {
    let mut scratch = Scratch::new(g.node_count());
    sim_step_impl(g, schema, profiles, params, new_node, &mut scratch, rng)
}

#[allow(clippy::too_many_arguments)]
fn triad_step_impl<R: Rng>(
    g: &mut Graph,
    schema: &AttributeSchema,
    profiles: &[NodeProfile],
    params: &GenParams,
    new_node: NodeId,
    anchors: &[NodeId],
    budget: usize,
    scratch: &mut Scratch,
    rng: &mut R,
) -> TriadOutcome {
    let no_op = TriadOutcome {
        linked: Vec::new(),
        random_fallback: false,
    };
    if !rng.gen_bool(params.p_triad) {
        return no_op;
    }
    let cap = params.triad_count.min(budget);
    if cap == 0 {
        return no_op;
    }

    let mut eligible: Vec<NodeId> = Vec::new();
    for &anchor in anchors {
        for &w in g.neighbors(anchor) {
            if w != new_node && !g.has_edge(new_node, w) {
                eligible.push(w);
            }
        }
    }
    eligible.sort_unstable();
    eligible.dedup();

    if !eligible.is_empty() {
        // Rank on the pre-step graph state, then insert.
        fill_demog(schema, profiles, g.node_count(), new_node, scratch);
        fill_common(g, new_node, scratch);
        let du = g.degree(new_node);
        let max_degree = g.max_degree().unwrap_or(0);
        let mut scored: Vec<(f64, NodeId)> = eligible
            .into_iter()
            .map(|w| (score_against(g, schema, scratch, du, max_degree, w), w))
            .collect();
        scored.sort_by(|a, b| {
            b.0.partial_cmp(&a.0)
                .expect("similarity scores are finite")
                .then(a.1.cmp(&b.1))
        });
        let linked: Vec<NodeId> = scored.iter().take(cap).map(|&(_, w)| w).collect();
        for &w in &linked {
            g.add_edge(new_node, w);
        }
        TriadOutcome {
            linked,
            random_fallback: false,
        }
    } else {
        collect_candidates(g, new_node, &mut scratch.candidates);
        let take = cap.min(scratch.candidates.len());
        let mut linked = Vec::with_capacity(take);
        for i in 0..take {
            let j = rng.gen_range(i..scratch.candidates.len());
            scratch.candidates.swap(i, j);
            linked.push(scratch.candidates[i]);
        }
        for &w in &linked {
            g.add_edge(new_node, w);
        }
        TriadOutcome {
            linked,
            random_fallback: true,
        }
    }
}

/// One triad-formation sub-step for `new_node` with the given `anchor` (the
/// node chosen by the preceding similarity sub-step).
///
/// With probability `p_triad`: ranks the anchor's eligible neighbors by
/// combined similarity (ties broken by ascending id) and links the top
/// `min(triad_count, available, budget)`; when the anchor has no eligible
/// neighbor it links that many uniformly random eligible nodes instead and
/// flags the fallback. An empty result is normal.
#[allow(clippy::too_many_arguments)]
pub fn triad_step<R: Rng>(
    g: &mut Graph,
    schema: &AttributeSchema,
    profiles: &[NodeProfile],
    params: &GenParams,
    new_node: NodeId,
    anchor: NodeId,
    budget: usize,
    rng: &mut R,
) -> TriadOutcome {
    let mut scratch = Scratch::new(g.node_count());
    triad_step_impl(
        g,
        schema,
        profiles,
        params,
        new_node,
        std::slice::from_ref(&anchor),
        budget,
        &mut scratch,
        rng,
    )
}

/// Runs the full construction phase with a caller-supplied random stream.
///
/// Used by the run pipeline so profile sampling and construction share one
/// master stream; see the module docs for the draw order.
pub fn generate_with_rng<R: Rng>(
    schema: &AttributeSchema,
    profiles: &[NodeProfile],
    params: &GenParams,
    rng: &mut R,
) -> Result<(Graph, GenTrace), GenerateError> {
    params.validate()?;
    if params.n < 3 {
        return Err(GenerateError::TooFewNodes(params.n));
    }
    if profiles.len() != params.n {
        return Err(GenerateError::ProfileCountMismatch {
            expected: params.n,
            got: profiles.len(),
        });
    }

    let mut g = Graph::with_nodes(3);
    g.add_edge(NodeId(0), NodeId(1));
    g.add_edge(NodeId(0), NodeId(2));
    g.add_edge(NodeId(1), NodeId(2));

    let mut scratch = Scratch::new(params.n);
    let mut trace = GenTrace {
        arrivals: Vec::with_capacity(params.n - 3),
    };
    let mut anchors: Vec<NodeId> = Vec::new();

    for _ in 3..params.n {
        let u = g.add_node();
        scratch.ensure(g.node_count());
        let existing = u.index();
        let m = draw_target_degree(params, existing, rng);
        let mut rec = ArrivalRecord {
            node: u.0,
            target_degree: m as u32,
            ..ArrivalRecord::default()
        };
        anchors.clear();
        let mut links = 0;
        while links < m {
            let Some((chosen, selection)) =
                sim_step_impl(&mut g, schema, profiles, params, u, &mut scratch, rng)
            else {
                rec.exhausted = true;
                break;
            };
            links += 1;
            match selection {
                LinkSelection::Proportional => rec.proportional_edges += 1,
                LinkSelection::UniformCoin => rec.uniform_edges += 1,
                LinkSelection::UniformZeroScore => rec.zero_score_edges += 1,
            }
            anchors.push(chosen);
            if links < m {
                let anchor_set: &[NodeId] = if params.wide_anchor {
                    &anchors
                } else {
                    std::slice::from_ref(anchors.last().expect("just pushed"))
                };
                let outcome = triad_step_impl(
                    &mut g,
                    schema,
                    profiles,
                    params,
                    u,
                    anchor_set,
                    m - links,
                    &mut scratch,
                    rng,
                );
                links += outcome.linked.len();
                if outcome.random_fallback {
                    rec.triad_fallback_events += 1;
                    rec.triad_random_edges += outcome.linked.len() as u32;
                } else {
                    rec.triad_ranked_edges += outcome.linked.len() as u32;
                }
            }
        }
        trace.arrivals.push(rec);
    }
    Ok((g, trace))
}

/// Runs the full construction phase from `params.seed`.
///
/// A pure function of `(schema, profiles, params)`: identical inputs produce
/// identical edge lists on every platform.
pub fn generate(
    schema: &AttributeSchema,
    profiles: &[NodeProfile],
    params: &GenParams,
) -> Result<(Graph, GenTrace), GenerateError> {
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    generate_with_rng(schema, profiles, params, &mut rng)
}
