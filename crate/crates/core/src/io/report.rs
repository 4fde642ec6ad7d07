//! Metric reports, comparison documents and degree-histogram plot data.
//!
//! Reports are JSON with a fixed field order. Undefined metrics (geodesics of
//! an edgeless graph, assortativity under zero degree variance, a fit that
//! lacks data) appear as explicit `null` so consumers can tell "undefined"
//! from "missing".

use crate::graph::Graph;
use crate::metrics::MetricsReport;
use serde::{Deserialize, Serialize};
use std::io::{self, Read, Write};

/// Absolute and baseline-relative difference of one metric. Both are `null`
/// when either side is undefined; the relative delta is additionally `null`
/// for a zero baseline.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricDelta {
    pub absolute: Option<f64>,
    pub relative: Option<f64>,
}

fn delta(baseline: Option<f64>, candidate: Option<f64>) -> MetricDelta {
    match (baseline, candidate) {
        (Some(a), Some(b)) => MetricDelta {
            absolute: Some(b - a),
            relative: if a != 0.0 {
                Some((b - a) / a.abs())
            } else {
                None
            },
        },
        _ => MetricDelta {
            absolute: None,
            relative: None,
        },
    }
}

/// Per-metric deltas mirroring the comparison suite.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComparisonDeltas {
    pub density: MetricDelta,
    pub avg_local_clustering: MetricDelta,
    pub global_transitivity: MetricDelta,
    pub mean_geodesic: MetricDelta,
    pub powerlaw_alpha: MetricDelta,
    pub assortativity: MetricDelta,
}

/// A baseline report, a candidate report and their per-metric deltas.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub baseline: MetricsReport,
    pub candidate: MetricsReport,
    pub deltas: ComparisonDeltas,
}

impl ComparisonReport {
    pub fn new(baseline: MetricsReport, candidate: MetricsReport) -> Self {
        let deltas = ComparisonDeltas {
            density: delta(baseline.density, candidate.density),
            avg_local_clustering: delta(
                Some(baseline.avg_local_clustering),
                Some(candidate.avg_local_clustering),
            ),
            global_transitivity: delta(
                Some(baseline.global_transitivity),
                Some(candidate.global_transitivity),
            ),
            mean_geodesic: delta(baseline.mean_geodesic, candidate.mean_geodesic),
            powerlaw_alpha: delta(
                baseline.powerlaw.as_ref().map(|f| f.alpha),
                candidate.powerlaw.as_ref().map(|f| f.alpha),
            ),
            assortativity: delta(baseline.assortativity, candidate.assortativity),
        };
        ComparisonReport {
            baseline,
            candidate,
            deltas,
        }
    }
}

pub fn write_report<W: Write>(report: &MetricsReport, mut w: W) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut w, report)?;
    writeln!(w)
}

pub fn read_report<R: Read>(r: R) -> serde_json::Result<MetricsReport> {
    serde_json::from_reader(r)
}

pub fn write_comparison<W: Write>(comparison: &ComparisonReport, mut w: W) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut w, comparison)?;
    writeln!(w)
}

pub fn read_comparison<R: Read>(r: R) -> serde_json::Result<ComparisonReport> {
    serde_json::from_reader(r)
}

/// Degree histogram as `degree<TAB>count` lines, ascending by degree.
pub fn write_degree_histogram<W: Write>(g: &Graph, mut w: W) -> io::Result<()> {
    let mut counts: Vec<usize> = Vec::new();
    for d in g.degrees() {
        if d >= counts.len() {
            counts.resize(d + 1, 0);
        }
        counts[d] += 1;
    }
    for (degree, count) in counts.iter().enumerate() {
        if *count > 0 {
            writeln!(w, "{degree}\t{count}")?;
        }
    }
    Ok(())
}
