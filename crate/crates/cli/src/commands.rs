//! Subcommand implementations shared plumbing: config loading, the
//! sample-or-load profile pipeline, artifact writing.

use anyhow::{bail, Context, Result};
use demograph::generator::{generate_with_rng, GenTrace};
use demograph::io::{
    parse_config, read_edge_list, read_report, write_comparison, write_degree_histogram,
    write_edge_list, write_graphml, write_profiles, write_report, ComparisonReport, ProfileSource,
    RunConfig,
};
use demograph::metrics::{GeodesicMode, MetricsReport};
use demograph::schema::{load_profiles, sample_profiles, NodeProfile};
use demograph::Graph;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::fs::{self, File};
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

/// Reads and validates a run config, applying CLI overrides and printing
/// parse warnings to stderr. Relative profile paths resolve against the
/// config file's directory.
pub fn load_config(path: &Path, seed: Option<u64>, out: Option<PathBuf>) -> Result<RunConfig> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("cannot read config {}", path.display()))?;
    let mut config = parse_config(&text).context("invalid config")?;
    if let Some(seed) = seed {
        config.params.seed = seed;
        // an explicit override supersedes the defaulted-seed warning
        config
            .warnings
            .retain(|w| !w.contains("seed not specified"));
    }
    if out.is_some() {
        config.output_prefix = out;
    }
    if let ProfileSource::File(p) = &config.profile_source {
        if p.is_relative() {
            if let Some(dir) = path.parent() {
                config.profile_source = ProfileSource::File(dir.join(p));
            }
        }
    }
    for warning in &config.warnings {
        eprintln!("warning: {warning}");
    }
    // fail fast: referenced files must exist before any work starts
    if let ProfileSource::File(p) = &config.profile_source {
        if !p.exists() {
            bail!("profile table {} does not exist", p.display());
        }
    }
    Ok(config)
}

/// Resolves the node profiles and runs construction on the master stream:
/// sampled profiles consume the stream first, then the generator.
pub fn run_pipeline(config: &RunConfig) -> Result<(Vec<NodeProfile>, Graph, GenTrace, Duration)> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.params.seed);
    let profiles = match &config.profile_source {
        ProfileSource::Sample => sample_profiles(&config.schema, config.params.n, &mut rng),
        ProfileSource::File(path) => {
            let file = File::open(path)
                .with_context(|| format!("cannot open profile table {}", path.display()))?;
            let profiles = load_profiles(&config.schema, BufReader::new(file))
                .with_context(|| format!("invalid profile table {}", path.display()))?;
            if profiles.len() != config.params.n {
                bail!(
                    "profile table {} has {} rows but params.n = {}",
                    path.display(),
                    profiles.len(),
                    config.params.n
                );
            }
            profiles
        }
    };
    let started = Instant::now();
    let (graph, trace) = generate_with_rng(&config.schema, &profiles, &config.params, &mut rng)?;
    let elapsed = started.elapsed();
    Ok((profiles, graph, trace, elapsed))
}

/// Aggregate trace statistics written next to the generated artifacts.
#[derive(Debug, Serialize)]
struct TraceSummary {
    nodes: usize,
    seed_edges: usize,
    edges_created: usize,
    target_degree_sum: usize,
    proportional_edges: usize,
    uniform_edges: usize,
    zero_score_edges: usize,
    triad_ranked_edges: usize,
    triad_random_edges: usize,
    triad_fallback_events: usize,
    exhausted_arrivals: usize,
    generation_seconds: f64,
}

impl TraceSummary {
    fn new(n: usize, trace: &GenTrace, elapsed: Duration) -> Self {
        let sum = |f: fn(&demograph::generator::ArrivalRecord) -> u32| -> usize {
            trace.arrivals.iter().map(|a| f(a) as usize).sum()
        };
        TraceSummary {
            nodes: n,
            seed_edges: 3,
            edges_created: trace.edges_created(),
            target_degree_sum: trace.target_degree_sum(),
            proportional_edges: sum(|a| a.proportional_edges),
            uniform_edges: sum(|a| a.uniform_edges),
            zero_score_edges: sum(|a| a.zero_score_edges),
            triad_ranked_edges: sum(|a| a.triad_ranked_edges),
            triad_random_edges: sum(|a| a.triad_random_edges),
            triad_fallback_events: sum(|a| a.triad_fallback_events),
            exhausted_arrivals: trace.arrivals.iter().filter(|a| a.exhausted).count(),
            generation_seconds: elapsed.as_secs_f64(),
        }
    }
}

pub(crate) fn create_output(path: &Path) -> Result<BufWriter<File>> {
    if let Some(dir) = path.parent() {
        if !dir.as_os_str().is_empty() {
            fs::create_dir_all(dir)
                .with_context(|| format!("cannot create output directory {}", dir.display()))?;
        }
    }
    Ok(BufWriter::new(File::create(path).with_context(|| {
        format!("cannot create output file {}", path.display())
    })?))
}

fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut name = prefix.as_os_str().to_owned();
    name.push(suffix);
    PathBuf::from(name)
}

/// `demograph generate`: full pipeline plus the artifact set under the
/// output prefix.
pub fn generate(config_path: &Path, seed: Option<u64>, out: Option<PathBuf>) -> Result<()> {
    let config = load_config(config_path, seed, out)?;
    let prefix = config
        .output_prefix
        .clone()
        .unwrap_or_else(|| PathBuf::from("network"));
    let (profiles, graph, trace, elapsed) = run_pipeline(&config)?;
    let report = MetricsReport::compute(&graph);

    let edges_path = with_suffix(&prefix, ".edges.tsv");
    write_edge_list(&graph, create_output(&edges_path)?)?;
    write_graphml(
        &graph,
        Some((&config.schema, &profiles)),
        create_output(&with_suffix(&prefix, ".graphml"))?,
    )?;
    write_profiles(
        &config.schema,
        &profiles,
        create_output(&with_suffix(&prefix, ".profiles.csv"))?,
    )?;
    write_report(
        &report,
        create_output(&with_suffix(&prefix, ".metrics.json"))?,
    )?;
    write_degree_histogram(
        &graph,
        create_output(&with_suffix(&prefix, ".degrees.tsv"))?,
    )?;
    let summary = TraceSummary::new(graph.node_count(), &trace, elapsed);
    let mut trace_file = create_output(&with_suffix(&prefix, ".trace.json"))?;
    serde_json::to_writer_pretty(&mut trace_file, &summary)?;
    writeln!(trace_file)?;

    println!(
        "generated {} nodes, {} edges in {:.3} s -> {}.*",
        graph.node_count(),
        graph.edge_count(),
        elapsed.as_secs_f64(),
        prefix.display()
    );
    Ok(())
}

fn read_graph(path: &Path) -> Result<Graph> {
    let file =
        File::open(path).with_context(|| format!("cannot open edge list {}", path.display()))?;
    read_edge_list(BufReader::new(file))
        .with_context(|| format!("invalid edge list {}", path.display()))
}

fn analyze_graph(g: &Graph, sampled: Option<usize>, geodesic_seed: u64) -> MetricsReport {
    let mode = sampled.map(|sources| GeodesicMode::Sampled {
        sources,
        seed: geodesic_seed,
    });
    MetricsReport::compute_with(g, mode)
}

/// `demograph analyze`: metric suite for one edge list.
pub fn analyze(
    edges: &Path,
    sampled: Option<usize>,
    geodesic_seed: u64,
    out: Option<PathBuf>,
) -> Result<()> {
    let graph = read_graph(edges)?;
    if graph.edge_count() == 0 {
        eprintln!("warning: graph has no edges; geodesic distance and assortativity are undefined");
    }
    let report = analyze_graph(&graph, sampled, geodesic_seed);
    write_report(&report, std::io::stdout().lock())?;
    if let Some(path) = out {
        write_report(&report, create_output(&path)?)?;
    }
    Ok(())
}

/// Loads a comparison input: a previously written report (JSON) or an edge
/// list to analyze on the spot.
fn load_comparison_input(path: &Path) -> Result<MetricsReport> {
    let bytes = fs::read(path).with_context(|| format!("cannot read input {}", path.display()))?;
    if bytes.trim_ascii_start().starts_with(b"{") {
        return read_report(bytes.as_slice()).with_context(|| {
            format!(
                "{} looks like JSON but is not a metrics report",
                path.display()
            )
        });
    }
    let graph = read_edge_list(bytes.as_slice())
        .with_context(|| format!("invalid edge list {}", path.display()))?;
    Ok(analyze_graph(
        &graph,
        None,
        demograph::metrics::DEFAULT_GEODESIC_SEED,
    ))
}

/// `demograph compare`: per-metric deltas between two inputs.
pub fn compare(baseline: &Path, candidate: &Path, out: Option<PathBuf>) -> Result<()> {
    let base = load_comparison_input(baseline)?;
    let cand = load_comparison_input(candidate)?;
    let comparison = ComparisonReport::new(base, cand);
    write_comparison(&comparison, std::io::stdout().lock())?;
    if let Some(path) = out {
        write_comparison(&comparison, create_output(&path)?)?;
    }
    Ok(())
}

/// `demograph replicate`: generate a synthetic twin of a reference network
/// using its exact attribute assignment, then compare the two.
pub fn replicate(
    edges: &Path,
    attributes: &Path,
    config_path: &Path,
    seed: Option<u64>,
    out: Option<PathBuf>,
) -> Result<()> {
    let mut config = load_config(config_path, seed, out)?;
    let reference = read_graph(edges)?;
    let attr_file = File::open(attributes)
        .with_context(|| format!("cannot open attribute table {}", attributes.display()))?;
    let profiles = load_profiles(&config.schema, BufReader::new(attr_file))
        .with_context(|| format!("invalid attribute table {}", attributes.display()))?;
    if profiles.len() != reference.node_count() {
        bail!(
            "attribute table has {} rows but the reference network has {} nodes",
            profiles.len(),
            reference.node_count()
        );
    }
    if config.params.n != reference.node_count() {
        eprintln!(
            "warning: params.n = {} overridden by the reference size {}",
            config.params.n,
            reference.node_count()
        );
        config.params.n = reference.node_count();
    }

    let mut rng = ChaCha8Rng::seed_from_u64(config.params.seed);
    let started = Instant::now();
    let (synthetic, trace) =
        generate_with_rng(&config.schema, &profiles, &config.params, &mut rng)?;
    let elapsed = started.elapsed();

    let reference_report = MetricsReport::compute(&reference);
    let synthetic_report = MetricsReport::compute(&synthetic);
    let comparison = ComparisonReport::new(reference_report, synthetic_report);

    let prefix = config
        .output_prefix
        .clone()
        .unwrap_or_else(|| PathBuf::from("replica"));
    write_edge_list(
        &synthetic,
        create_output(&with_suffix(&prefix, ".edges.tsv"))?,
    )?;
    write_report(
        &comparison.candidate.clone(),
        create_output(&with_suffix(&prefix, ".metrics.json"))?,
    )?;
    let summary = TraceSummary::new(synthetic.node_count(), &trace, elapsed);
    let mut trace_file = create_output(&with_suffix(&prefix, ".trace.json"))?;
    serde_json::to_writer_pretty(&mut trace_file, &summary)?;
    writeln!(trace_file)?;
    write_comparison(
        &comparison,
        create_output(&with_suffix(&prefix, ".comparison.json"))?,
    )?;
    write_comparison(&comparison, std::io::stdout().lock())?;
    Ok(())
}
