//! Serialization: run configs, edge lists, graph markup, profile tables,
//! metric reports and comparison documents.
//!
//! Formats are chosen for determinism and outside tooling rather than
//! compactness: configs are TOML, reports and traces are JSON (undefined
//! metrics appear as explicit `null`, never omitted), edge lists and degree
//! histograms are tab-separated text with a canonical ordering so determinism
//! checks can compare raw bytes.

mod config;
mod edgelist;
mod graphml;
mod profiles;
mod report;

pub use config::{parse_config, ConfigError, ProfileSource, RunConfig};
pub use edgelist::{read_edge_list, write_edge_list, EdgeListError};
pub use graphml::write_graphml;
pub use profiles::write_profiles;
pub use report::{
    read_comparison, read_report, write_comparison, write_degree_histogram, write_report,
    ComparisonDeltas, ComparisonReport, MetricDelta,
};
