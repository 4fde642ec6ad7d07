//! Similarity kernels driving link formation.
//!
//! Link propensity between an existing node `i` and an arriving node `j`
//! combines a demographic score and a structural score,
//! `alpha · D(i,j) + beta · S(i,j)`. The demographic score sums weighted
//! per-attribute kernels (exact match for categorical attributes, inverted
//! normalized differences for ordinal and numerical ones); the structural
//! score sums a weighted friend-of-a-friend overlap term and a weighted
//! normalized-degree term.
//!
//! The ordinal and numerical kernels are `1 − |a − b| / rho`. The plain
//! normalized difference `|a − b| / rho` would reward dissimilarity when
//! summed into the demographic score, contradicting the homophily premise
//! that closer individuals are more likely to link; the inverted form is the
//! default, and [`AttributeSchema::raw_difference`] restores the plain
//! difference for fidelity experiments.
//!
//! All kernels are pure over immutable inputs and safe to evaluate
//! concurrently.

use crate::graph::{Graph, NodeId};
use crate::schema::{AttrValue, AttributeKind, AttributeSchema, NodeProfile};
use std::sync::atomic::{AtomicBool, Ordering};

/// Non-negative, finite similarity value. Per-kernel outputs lie in `[0, 1]`;
/// aggregates are weighted sums and scale with the weights.
pub type SimilarityScore = f64;

/// 1 when the two level indices match, 0 otherwise.
#[inline]
pub fn categorical_sim(a: usize, b: usize) -> f64 {
    if a == b {
        1.0
    } else {
        0.0
    }
}

/// `1 − |a − b| / rho` over ranking orders.
///
/// `rho` must be positive and at least the maximum possible rank difference;
/// both are enforced at schema construction, so violations here are
/// programmer bugs.
#[inline]
pub fn ordinal_sim(a_rank: usize, b_rank: usize, rho: f64) -> f64 {
    1.0 - ordinal_difference(a_rank, b_rank, rho)
}

/// The normalized rank difference `|a − b| / rho` exactly as printed;
/// the fidelity-mode counterpart of [`ordinal_sim`].
#[inline]
pub fn ordinal_difference(a_rank: usize, b_rank: usize, rho: f64) -> f64 {
    debug_assert!(rho > 0.0);
    let diff = a_rank.abs_diff(b_rank) as f64;
    diff / rho
}

/// `1 − |a − b| / rho` over numeric values, clamped to 0 when the difference
/// exceeds `rho` (a warning is logged once per process; with the default
/// domain-width `rho` the clamp is unreachable).
#[inline]
pub fn numerical_sim(a: f64, b: f64, rho: f64) -> f64 {
    debug_assert!(rho > 0.0);
    let diff = (a - b).abs() / rho;
    if diff > 1.0 {
        warn_clamped_once();
        return 0.0;
    }
    1.0 - diff
}

/// The normalized numeric difference `|a − b| / rho` exactly as printed;
/// the fidelity-mode counterpart of [`numerical_sim`].
#[inline]
pub fn numerical_difference(a: f64, b: f64, rho: f64) -> f64 {
    debug_assert!(rho > 0.0);
    (a - b).abs() / rho
}

fn warn_clamped_once() {
    static WARNED: AtomicBool = AtomicBool::new(false);
    if !WARNED.swap(true, Ordering::Relaxed) {
        log::warn!("numerical difference exceeds rho; similarity clamped to 0");
    }
}

/// Weighted sum of per-attribute kernels over two profiles.
///
/// With all weights 1 and `k` attributes the result lies in `[0, k]`.
/// Profiles must conform to the schema (guaranteed when they come from
/// [`crate::schema::sample_profiles`] or [`crate::schema::load_profiles`]).
pub fn demographic_sim(
    a: &NodeProfile,
    b: &NodeProfile,
    schema: &AttributeSchema,
) -> SimilarityScore {
    debug_assert_eq!(a.values().len(), schema.attributes().len());
    debug_assert_eq!(b.values().len(), schema.attributes().len());
    let raw = schema.raw_difference();
    let mut sum = 0.0;
    for (attr, (va, vb)) in schema
        .attributes()
        .iter()
        .zip(a.values().iter().zip(b.values()))
    {
        let s = match (attr.kind(), va, vb) {
            (AttributeKind::Categorical, AttrValue::Level(x), AttrValue::Level(y)) => {
                categorical_sim(*x, *y)
            }
            (AttributeKind::Ordinal, AttrValue::Level(x), AttrValue::Level(y)) => {
                // ranks are 1-based level positions; differences match index differences
                if raw {
                    ordinal_difference(*x + 1, *y + 1, attr.rho())
                } else {
                    ordinal_sim(*x + 1, *y + 1, attr.rho())
                }
            }
            (AttributeKind::Numerical, AttrValue::Number(x), AttrValue::Number(y)) => {
                if raw {
                    numerical_difference(*x, *y, attr.rho())
                } else {
                    numerical_sim(*x, *y, attr.rho())
                }
            }
            _ => panic!(
                "profile value does not conform to attribute '{}'",
                attr.name()
            ),
        };
        sum += attr.weight() * s;
    }
    sum
}

/// Friend-of-a-friend overlap: `|adj(i) ∩ adj(j)| / min(deg(i), deg(j))`,
/// or 0 when either node is isolated (no shared structure means no triadic
/// evidence). The min denominator keeps a relationship from being penalized
/// just because one side has many links.
pub fn fof_sim(g: &Graph, i: NodeId, j: NodeId) -> f64 {
    let min_deg = g.degree(i).min(g.degree(j));
    if min_deg == 0 {
        return 0.0;
    }
    g.common_neighbor_count(i, j) as f64 / min_deg as f64
}

/// Preferential-attachment term: `deg(i) / max_degree`, or 0 when the graph
/// has no edges yet. A function of the existing node only.
pub fn pa_sim(g: &Graph, i: NodeId) -> f64 {
    match g.max_degree() {
        None | Some(0) => 0.0,
        Some(max) => g.degree(i) as f64 / max as f64,
    }
}

/// Weighted structural score `weight_fof · FoF(i,j) + weight_pa · PA(i)`.
///
/// `i` is the existing node, `j` the arriving one; the preferential
/// attachment term depends on `i` alone, which makes the score asymmetric by
/// construction.
pub fn structural_sim(
    g: &Graph,
    i: NodeId,
    j: NodeId,
    schema: &AttributeSchema,
) -> SimilarityScore {
    schema.weight_fof() * fof_sim(g, i, j) + schema.weight_pa() * pa_sim(g, i)
}

/// Combined link-formation score `alpha · D + beta · S` for existing node `i`
/// (profile `pi`) and arriving node `j` (profile `pj`).
pub fn combined_sim(
    g: &Graph,
    pi: &NodeProfile,
    pj: &NodeProfile,
    i: NodeId,
    j: NodeId,
    schema: &AttributeSchema,
) -> SimilarityScore {
    schema.alpha() * demographic_sim(pi, pj, schema)
        + schema.beta() * structural_sim(g, i, j, schema)
}
