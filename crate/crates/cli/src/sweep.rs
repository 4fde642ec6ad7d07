//! Parameter sweeps: the cross product of one varied parameter and a seed
//! count, one tab-separated row per run.
//!
//! Runs are independent, so with the `parallel` feature they execute on the
//! rayon pool; rows are always emitted in deterministic (value-major,
//! seed-minor) order regardless of completion order. Wall-clock time is
//! measured around generation only, excluding profile sampling and metrics.

use crate::commands::load_config;
use anyhow::{bail, Context, Result};
use demograph::generator::generate_with_rng;
use demograph::io::{ProfileSource, RunConfig};
use demograph::metrics::MetricsReport;
use demograph::schema::{load_profiles, sample_profiles};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
#[cfg(feature = "parallel")]
use rayon::prelude::*;
use std::fmt::Write as _;
use std::fs::File;
use std::io::{BufReader, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

/// Parameters a sweep may vary. `seed` is deliberately absent: every value
/// already runs across `--seeds` consecutive seeds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum SweepParam {
    N,
    MMin,
    MMax,
    PSim,
    PTriad,
    TriadCount,
    Alpha,
    Beta,
    WeightFof,
    WeightPa,
}

const PARAM_NAMES: [(&str, SweepParam); 10] = [
    ("n", SweepParam::N),
    ("m_min", SweepParam::MMin),
    ("m_max", SweepParam::MMax),
    ("p_sim", SweepParam::PSim),
    ("p_triad", SweepParam::PTriad),
    ("triad_count", SweepParam::TriadCount),
    ("alpha", SweepParam::Alpha),
    ("beta", SweepParam::Beta),
    ("weight_fof", SweepParam::WeightFof),
    ("weight_pa", SweepParam::WeightPa),
];

fn parse_param(name: &str) -> Result<SweepParam> {
    PARAM_NAMES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|&(_, p)| p)
        .ok_or_else(|| {
            let valid: Vec<&str> = PARAM_NAMES.iter().map(|&(n, _)| n).collect();
            anyhow::anyhow!(
                "unknown sweep parameter '{name}'; valid names: {}",
                valid.join(", ")
            )
        })
}

fn apply(config: &mut RunConfig, param: SweepParam, value: f64) -> Result<()> {
    let as_count = |value: f64, name: &str| -> Result<usize> {
        if value < 0.0 || value.fract() != 0.0 {
            bail!("{name} needs a non-negative integer, got {value}");
        }
        Ok(value as usize)
    };
    match param {
        SweepParam::N => config.params.n = as_count(value, "n")?,
        SweepParam::MMin => config.params.m_min = as_count(value, "m_min")?,
        SweepParam::MMax => config.params.m_max = as_count(value, "m_max")?,
        SweepParam::TriadCount => config.params.triad_count = as_count(value, "triad_count")?,
        SweepParam::PSim => config.params.p_sim = value,
        SweepParam::PTriad => config.params.p_triad = value,
        SweepParam::Alpha => config.schema.set_alpha(value)?,
        SweepParam::Beta => config.schema.set_beta(value)?,
        SweepParam::WeightFof => config.schema.set_weight_fof(value)?,
        SweepParam::WeightPa => config.schema.set_weight_pa(value)?,
    }
    config.params.validate()?;
    Ok(())
}

struct Job {
    name: &'static str,
    value: f64,
    seed: u64,
    config: RunConfig,
}

fn run_job(job: &Job) -> Result<String> {
    let config = &job.config;
    let mut rng = ChaCha8Rng::seed_from_u64(job.seed);
    let profiles = match &config.profile_source {
        ProfileSource::Sample => sample_profiles(&config.schema, config.params.n, &mut rng),
        ProfileSource::File(path) => {
            let file = File::open(path)
                .with_context(|| format!("cannot open profile table {}", path.display()))?;
            let profiles = load_profiles(&config.schema, BufReader::new(file))?;
            if profiles.len() != config.params.n {
                bail!(
                    "profile table {} has {} rows but n = {}",
                    path.display(),
                    profiles.len(),
                    config.params.n
                );
            }
            profiles
        }
    };
    let started = Instant::now();
    let (graph, _) = generate_with_rng(&config.schema, &profiles, &config.params, &mut rng)?;
    let elapsed = started.elapsed().as_secs_f64();
    let report = MetricsReport::compute(&graph);

    let opt = |v: Option<f64>| v.map_or_else(|| "NA".to_string(), |x| format!("{x}"));
    let mut row = String::new();
    write!(
        row,
        "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
        job.name,
        job.value,
        job.seed,
        config.params.n,
        config.params.m_min,
        config.params.m_max,
        config.params.p_sim,
        config.params.p_triad,
        config.params.triad_count,
        config.schema.alpha(),
        config.schema.beta(),
        config.schema.weight_fof(),
        config.schema.weight_pa(),
    )?;
    write!(
        row,
        "\t{}\t{}\t{}\t{}\t{}\t{}",
        report.node_count,
        report.edge_count,
        opt(report.density),
        report.avg_local_clustering,
        report.global_transitivity,
        opt(report.mean_geodesic),
    )?;
    match &report.powerlaw {
        Some(fit) => write!(row, "\t{}\t{}\t{}", fit.alpha, fit.x_min, fit.ks_statistic)?,
        None => write!(row, "\tNA\tNA\tNA")?,
    }
    write!(row, "\t{}\t{elapsed:.6}", opt(report.assortativity))?;
    Ok(row)
}

pub const HEADER: &str = "param\tvalue\tseed\tn\tm_min\tm_max\tp_sim\tp_triad\ttriad_count\talpha\tbeta\tweight_fof\tweight_pa\tnodes\tedges\tdensity\tavg_local_clustering\tglobal_transitivity\tmean_geodesic\tpowerlaw_alpha\tpowerlaw_xmin\tpowerlaw_ks\tassortativity\tgeneration_seconds";

/// `demograph sweep`.
pub fn run(config_path: &Path, vary: &str, seeds: usize, out: Option<PathBuf>) -> Result<()> {
    let base = load_config(config_path, None, None)?;
    let Some((name, values_text)) = vary.split_once('=') else {
        bail!("--vary expects NAME=V1,V2,... , got '{vary}'");
    };
    let param = parse_param(name.trim())?;
    let name = PARAM_NAMES
        .iter()
        .find(|&&(_, p)| p == param)
        .map(|&(n, _)| n)
        .expect("param came from the table");
    let values: Vec<f64> = values_text
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<f64>()
                .with_context(|| format!("cannot parse sweep value '{s}'"))
        })
        .collect::<Result<_>>()?;
    if values.is_empty() {
        bail!("--vary range is empty");
    }
    if seeds == 0 {
        bail!("--seeds must be at least 1");
    }

    let mut jobs = Vec::with_capacity(values.len() * seeds);
    for &value in &values {
        for i in 0..seeds as u64 {
            let mut config = base.clone();
            apply(&mut config, param, value)
                .with_context(|| format!("cannot apply {name} = {value}"))?;
            let seed = base.params.seed + i;
            config.params.seed = seed;
            jobs.push(Job {
                name,
                value,
                seed,
                config,
            });
        }
    }

    #[cfg(feature = "parallel")]
    let rows: Vec<Result<String>> = jobs.par_iter().map(run_job).collect();
    #[cfg(not(feature = "parallel"))]
    let rows: Vec<Result<String>> = jobs.iter().map(run_job).collect();

    let mut table = String::with_capacity(rows.len() * 160);
    writeln!(table, "{HEADER}")?;
    for row in rows {
        writeln!(table, "{}", row?)?;
    }
    print!("{table}");
    if let Some(path) = out {
        let mut file = crate::commands::create_output(&path)?;
        file.write_all(table.as_bytes())?;
    }
    Ok(())
}
