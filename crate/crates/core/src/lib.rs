//! Synthetic social-network generation from demographic and structural
//! similarity, plus the structural-metrics suite used to validate generated
//! networks against references.
//!
//! The pipeline has two phases. Initialization assigns demographic profiles
//! to all nodes, either sampled from declared proportions
//! ([`schema::sample_profiles`]) or loaded from a reference attribute table
//! ([`schema::load_profiles`]). Construction ([`generator::generate`]) grows
//! the network one node at a time: links form in proportion to a combined
//! demographic/structural similarity score ([`similarity`]), with triad
//! formation closing friend-of-a-friend loops along the way. The [`metrics`]
//! module measures density, clustering, geodesics, the discrete power-law
//! exponent and degree assortativity for comparisons; [`io`] handles run
//! configs, edge lists, GraphML, profile tables and reports.
//!
//! Generation is deterministic: one seeded ChaCha stream drives profile
//! sampling and construction in a documented order, so a `(config, seed)`
//! pair reproduces the same network byte for byte on any platform.
//!
//! The `parallel` feature (on by default) runs the metric kernels on rayon;
//! disabling it falls back to the sequential implementations, which remain
//! available either way as `*_sequential` functions.

pub mod generator;
pub mod graph;
pub mod io;
pub mod metrics;
pub mod schema;
pub mod similarity;

pub use generator::{generate, generate_with_rng, GenParams, GenTrace, GenerateError};
pub use graph::{Graph, NodeId};
pub use metrics::{GeodesicMode, MetricsReport, PowerLawFit};
pub use schema::{
    load_profiles, sample_profiles, AttrValue, AttributeKind, AttributeSchema, AttributeSpec,
    NodeProfile,
};
