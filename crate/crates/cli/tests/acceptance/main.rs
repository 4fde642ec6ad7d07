//! Acceptance suite: one test per criterion, each printing a `PASS` line
//! with its measured values. Run
//! `cargo test -p demograph-cli --test acceptance -- --nocapture` to see the
//! per-criterion lines (add `--test-threads=1` for ordered output).

mod oracles;

use demograph::generator::{generate_with_rng, GenParams};
use demograph::metrics::{self, mean_geodesic, powerlaw_fit, GeodesicMode, MetricsReport};
use demograph::schema::{sample_profiles, AttributeSchema, AttributeSpec, NodeProfile};
use demograph::{Graph, NodeId};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::fs;
use std::process::Command;
use std::time::{Duration, Instant};
use tempfile::TempDir;

/// Synthetic campus schema of matching arity: gender, class year, major,
/// residence. Domains are deliberately coarse; they model effective
/// community granularity rather than raw label counts.
fn campus_schema() -> AttributeSchema {
    AttributeSchema::new(vec![
        AttributeSpec::categorical("gender", vec!["f".into(), "m".into()], None, 1.0).unwrap(),
        AttributeSpec::ordinal(
            "class_year",
            vec!["2006".into(), "2007".into(), "2008".into()],
            None,
            1.0,
            None,
        )
        .unwrap(),
        AttributeSpec::categorical(
            "major",
            vec!["m0".into(), "m1".into(), "m2".into(), "m3".into()],
            None,
            1.0,
        )
        .unwrap(),
        AttributeSpec::categorical(
            "residence",
            vec!["h0".into(), "h1".into(), "h2".into()],
            None,
            1.0,
        )
        .unwrap(),
    ])
}

/// The five reference configurations: (name, n, m_max, triad_count), with
/// m_min = 1 and both probabilities at 1 throughout.
const CAMPUS_CONFIGS: [(&str, usize, usize, usize); 5] = [
    ("caltech", 769, 44, 3),
    ("reed", 962, 40, 3),
    ("simmons", 1518, 43, 4),
    ("middlebury", 3075, 83, 4),
    ("american", 6386, 72, 4),
];

fn campus_params(n: usize, m_max: usize, triad_count: usize, seed: u64) -> GenParams {
    GenParams {
        n,
        m_min: 1,
        m_max,
        p_sim: 1.0,
        p_triad: 1.0,
        triad_count,
        seed,
        wide_anchor: false,
    }
}

/// One seeded pipeline run: profile sampling and construction share the
/// master stream.
fn run_pipeline(schema: &AttributeSchema, params: &GenParams) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let profiles = sample_profiles(schema, params.n, &mut rng);
    let (graph, _) = generate_with_rng(schema, &profiles, params, &mut rng).unwrap();
    graph
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_demograph"))
}

fn assert_close(label: &str, got: f64, want: f64, tol: f64) {
    assert!(
        (got - want).abs() <= tol,
        "{label}: {got} vs oracle {want} (tolerance {tol})"
    );
}

/// Criterion 1: density, both clustering variants, exact mean geodesic and
/// assortativity agree with brute-force oracles within 1e-9 on at least 200
/// random connected graphs of at most 7 nodes.
#[test]
fn criterion_01_metric_oracle_equivalence() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let mut checked = 0;
    while checked < 200 {
        let n = rng.gen_range(2..=7usize);
        let p = rng.gen_range(0.25..0.95f64);
        let mut edges: Vec<(usize, usize)> = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                if rng.gen_bool(p) {
                    edges.push((i, j));
                }
            }
        }
        if !oracles::is_connected(n, &edges) {
            continue;
        }
        checked += 1;
        let g = Graph::from_edges(n, edges.iter().map(|&(u, v)| (u as u32, v as u32)));
        let label = format!("graph #{checked} (n={n}, m={})", edges.len());

        match (metrics::density(&g), oracles::density(n, &edges)) {
            (Some(a), Some(b)) => assert_close(&format!("{label} density"), a, b, 1e-9),
            (a, b) => assert_eq!(a, b, "{label} density definedness"),
        }
        assert_close(
            &format!("{label} avg_local_clustering"),
            metrics::avg_local_clustering(&g),
            oracles::avg_local_clustering(n, &edges),
            1e-9,
        );
        assert_close(
            &format!("{label} global_transitivity"),
            metrics::global_transitivity(&g),
            oracles::global_transitivity(n, &edges),
            1e-9,
        );
        match (
            mean_geodesic(&g, GeodesicMode::Exact),
            oracles::mean_geodesic_largest_component(n, &edges),
        ) {
            (Some(a), Some(b)) => assert_close(&format!("{label} mean_geodesic"), a, b, 1e-9),
            (a, b) => assert_eq!(a, b, "{label} geodesic definedness"),
        }
        match (
            metrics::degree_assortativity(&g),
            oracles::degree_assortativity(n, &edges),
        ) {
            (Some(a), Some(b)) => assert_close(&format!("{label} assortativity"), a, b, 1e-9),
            (None, None) => {}
            (a, b) => panic!("{label} assortativity definedness: {a:?} vs {b:?}"),
        }
    }
    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    println!(
        "criterion 01 (metric-oracle equivalence): PASS - {checked} connected graphs <= 7 nodes, all five metrics within 1e-9, {:.2?}",
        elapsed
    );
}

/// Criterion 2: the fitter recovers alpha = 2.5 within ±0.15 from 10^4
/// inverse-CDF samples at x_min = 1, in each of 20 trials.
#[test]
fn criterion_02_powerlaw_estimator_recovery() {
    let started = Instant::now();
    let sampler = oracles::PowerLawSampler::new(2.5, 1);
    let mut worst: f64 = 0.0;
    for trial in 0..20u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(trial);
        let sample: Vec<usize> = (0..10_000).map(|_| sampler.sample(&mut rng)).collect();
        let fit = powerlaw_fit(&sample).unwrap();
        let err = (fit.alpha - 2.5).abs();
        worst = worst.max(err);
        assert!(
            err <= 0.15,
            "trial {trial}: alpha {} (x_min {}) misses 2.5 by {err}",
            fit.alpha,
            fit.x_min
        );
    }
    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    println!(
        "criterion 02 (power-law estimator recovery): PASS - 20 trials, worst |alpha - 2.5| = {worst:.4}, {:.2?}",
        elapsed
    );
}

/// Criterion 3: each reference configuration yields a fitted exponent in
/// [1.9, 3.1] in at least 8 of 10 seeded runs.
#[test]
fn criterion_03_powerlaw_fit_range() {
    let started = Instant::now();
    let schema = campus_schema();
    let mut summary = Vec::new();
    for (name, n, m_max, triad_count) in CAMPUS_CONFIGS {
        let alphas: Vec<f64> = (1..=10u64)
            .into_par_iter()
            .map(|seed| {
                let params = campus_params(n, m_max, triad_count, seed);
                let g = run_pipeline(&schema, &params);
                powerlaw_fit(&g.degrees()).unwrap().alpha
            })
            .collect();
        let in_band = alphas.iter().filter(|a| (1.9..=3.1).contains(*a)).count();
        let min = alphas.iter().cloned().fold(f64::INFINITY, f64::min);
        let max = alphas.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        assert!(
            in_band >= 8,
            "{name}: only {in_band}/10 fits in [1.9, 3.1]: {alphas:?}"
        );
        summary.push(format!("{name} {in_band}/10 [{min:.2}, {max:.2}]"));
    }
    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(900), "took {elapsed:?}");
    println!(
        "criterion 03 (power-law fit range): PASS - {}, {:.2?}",
        summary.join("; "),
        elapsed
    );
}

/// Criterion 4: at n = 1000, m in [1, 9], both probabilities 1, t_c = 3, the
/// 10-seed mean edge count stays within 10% of 3 + 997 * 5.
#[test]
fn criterion_04_density_control() {
    let started = Instant::now();
    let schema = campus_schema();
    let total: usize = (0..10u64)
        .into_par_iter()
        .map(|seed| {
            let params = GenParams {
                n: 1000,
                m_min: 1,
                m_max: 9,
                p_sim: 1.0,
                p_triad: 1.0,
                triad_count: 3,
                seed,
                wide_anchor: false,
            };
            run_pipeline(&schema, &params).edge_count()
        })
        .sum();
    let mean = total as f64 / 10.0;
    let target = 3.0 + 997.0 * 5.0;
    assert!(
        (mean - target).abs() <= 0.10 * target,
        "mean edge count {mean} outside 10% of {target}"
    );
    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    println!(
        "criterion 04 (density control): PASS - mean edges {mean:.1} vs target {target} ({:+.2}%), {:.2?}",
        100.0 * (mean - target) / target,
        elapsed
    );
}

/// Criterion 5: the 10-seed mean of average-local clustering is
/// non-decreasing in t_c over {0, 1, 2, 3, 4} at n = 1000, P(T) = 1.
#[test]
fn criterion_05_clustering_monotonicity_in_triad_count() {
    let started = Instant::now();
    let schema = campus_schema();
    let jobs: Vec<(usize, u64)> = (0..=4usize)
        .flat_map(|tc| (0..10u64).map(move |seed| (tc, seed)))
        .collect();
    let results: Vec<(usize, f64)> = jobs
        .par_iter()
        .map(|&(tc, seed)| {
            let params = GenParams {
                n: 1000,
                m_min: 1,
                m_max: 9,
                p_sim: 1.0,
                p_triad: 1.0,
                triad_count: tc,
                seed: 300 + seed,
                wide_anchor: false,
            };
            let g = run_pipeline(&schema, &params);
            (tc, metrics::avg_local_clustering(&g))
        })
        .collect();
    let mut means = [0.0f64; 5];
    for (tc, c) in results {
        means[tc] += c / 10.0;
    }
    for w in means.windows(2) {
        assert!(
            w[1] >= w[0],
            "clustering means must be non-decreasing in t_c: {means:?}"
        );
    }
    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(300), "took {elapsed:?}");
    println!(
        "criterion 05 (clustering monotone in t_c): PASS - means {:?}, {:.2?}",
        means.map(|m| (m * 1000.0).round() / 1000.0),
        elapsed
    );
}

/// Criterion 6: every reference-configuration run keeps the mean geodesic
/// distance under log2(n).
#[test]
fn criterion_06_small_world_property() {
    let started = Instant::now();
    let schema = campus_schema();
    let mut summary = Vec::new();
    for (name, n, m_max, triad_count) in CAMPUS_CONFIGS {
        for seed in [1u64, 2] {
            let params = campus_params(n, m_max, triad_count, seed);
            let g = run_pipeline(&schema, &params);
            let geo = mean_geodesic(&g, GeodesicMode::Exact).unwrap();
            let bound = (n as f64).log2();
            assert!(
                geo < bound,
                "{name} seed {seed}: mean geodesic {geo} >= log2(n) = {bound}"
            );
            if seed == 1 {
                summary.push(format!("{name} {geo:.2} < {bound:.1}"));
            }
        }
    }
    let elapsed = started.elapsed();
    println!(
        "criterion 06 (small-world property): PASS - {}, {:.2?}",
        summary.join("; "),
        elapsed
    );
}

/// Criterion 7: identical config and seed give byte-identical edge-list
/// files through the CLI; different seeds differ.
#[test]
fn criterion_07_cli_determinism() {
    let started = Instant::now();
    let dir = TempDir::new().unwrap();
    let config = dir.path().join("net.toml");
    fs::write(
        &config,
        r#"
[params]
n = 200
m_min = 1
m_max = 6
triad_count = 2
seed = 9

[schema]
[[schema.attributes]]
name = "group"
kind = "categorical"
levels = ["a", "b", "c"]
"#,
    )
    .unwrap();
    let run = |args: &[&str]| {
        let out = bin().current_dir(dir.path()).args(args).output().unwrap();
        assert!(
            out.status.success(),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
    };
    run(&["generate", "net.toml", "--out", "one"]);
    run(&["generate", "net.toml", "--out", "two"]);
    run(&["generate", "net.toml", "--seed", "10", "--out", "three"]);
    let one = fs::read(dir.path().join("one.edges.tsv")).unwrap();
    let two = fs::read(dir.path().join("two.edges.tsv")).unwrap();
    let three = fs::read(dir.path().join("three.edges.tsv")).unwrap();
    assert_eq!(one, two, "same seed must reproduce bytes");
    assert_ne!(one, three, "different seeds must differ");
    let elapsed = started.elapsed();
    println!(
        "criterion 07 (determinism through the CLI): PASS - {} identical bytes per run, {:.2?}",
        one.len(),
        elapsed
    );
}

/// Criterion 8: 50 randomized configurations all yield connected, self-loop
/// free, multi-edge free graphs (full independent scan).
#[test]
fn criterion_08_connectivity_and_simplicity() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(777);
    let schemas = [AttributeSchema::default(), campus_schema()];
    for round in 0..50 {
        let n = rng.gen_range(3..=300usize);
        let m_min = rng.gen_range(1..=3usize);
        let span = rng.gen_range(0..=6usize);
        let m_max = rng.gen_range(m_min..=m_min + span).min(n - 1);
        let params = GenParams {
            n,
            m_min,
            m_max: m_max.max(m_min),
            p_sim: [0.0, 0.3, 0.7, 1.0][rng.gen_range(0..4)],
            p_triad: [0.0, 0.3, 0.7, 1.0][rng.gen_range(0..4)],
            triad_count: rng.gen_range(0..=4),
            seed: rng.gen(),
            wide_anchor: rng.gen_bool(0.2),
        };
        let schema = &schemas[round % 2];
        let g = run_pipeline(schema, &params);

        // independent structural scan
        let mut degree_sum = 0usize;
        for u in g.nodes() {
            let nbs = g.neighbors(u);
            for w in nbs.windows(2) {
                assert!(w[0] < w[1], "round {round}: duplicate neighbor at {u}");
            }
            for &v in nbs {
                assert_ne!(v, u, "round {round}: self-loop at {u}");
                assert!(
                    g.neighbors(v).contains(&u),
                    "round {round}: asymmetric edge ({u},{v})"
                );
            }
            degree_sum += nbs.len();
        }
        assert_eq!(degree_sum, 2 * g.edge_count(), "round {round}: edge count");

        // independent BFS connectivity
        let mut seen = vec![false; n];
        let mut stack = vec![NodeId(0)];
        seen[0] = true;
        let mut count = 0;
        while let Some(v) = stack.pop() {
            count += 1;
            for &w in g.neighbors(v) {
                if !seen[w.index()] {
                    seen[w.index()] = true;
                    stack.push(w);
                }
            }
        }
        assert_eq!(count, n, "round {round}: graph is disconnected");
    }
    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(300), "took {elapsed:?}");
    println!(
        "criterion 08 (connectivity and simplicity): PASS - 50 randomized configs scanned clean, {:.2?}",
        elapsed
    );
}

/// Criterion 9: 10,000-node generation finishes within 60 s; 100,000-node
/// generation completes (superlinear growth expected and recorded, not
/// penalized).
#[test]
fn criterion_09_scalability() {
    let schema = campus_schema();
    let params = campus_params(10_000, 44, 3, 5);
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let profiles = sample_profiles(&schema, params.n, &mut rng);
    let started = Instant::now();
    let (g10k, _) = generate_with_rng(&schema, &profiles, &params, &mut rng).unwrap();
    let t10k = started.elapsed();
    assert_eq!(g10k.node_count(), 10_000);
    assert!(
        t10k <= Duration::from_secs(60),
        "10k generation took {t10k:?}, budget 60 s"
    );

    let light = AttributeSchema::new(vec![AttributeSpec::categorical(
        "group",
        vec!["a".into(), "b".into()],
        None,
        1.0,
    )
    .unwrap()]);
    let params = GenParams {
        n: 100_000,
        m_min: 1,
        m_max: 3,
        p_sim: 1.0,
        p_triad: 1.0,
        triad_count: 1,
        seed: 5,
        wide_anchor: false,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let profiles = sample_profiles(&light, params.n, &mut rng);
    let started = Instant::now();
    let (g100k, trace) = generate_with_rng(&light, &profiles, &params, &mut rng).unwrap();
    let t100k = started.elapsed();
    assert_eq!(g100k.node_count(), 100_000);
    assert_eq!(g100k.edge_count(), 3 + trace.edges_created());
    println!(
        "criterion 09 (scalability): PASS - 10k nodes in {:.2?} (bound 60 s); 100k nodes completed in {:.2?} ({} edges, no bound asserted)",
        t10k,
        t100k,
        g100k.edge_count()
    );
}

/// Criterion 10: self-replication through the CLI replicate pipeline keeps
/// density and clustering within 15% and the mean geodesic within 10% of the
/// reference, over 10 trials.
#[test]
fn criterion_10_self_replication_deltas() {
    let started = Instant::now();
    let dir = TempDir::new().unwrap();
    fs::write(
        dir.path().join("campus.toml"),
        r#"
[params]
n = 769
m_min = 1
m_max = 44
triad_count = 3
seed = 42

[schema]

[[schema.attributes]]
name = "gender"
kind = "categorical"
levels = ["f", "m"]

[[schema.attributes]]
name = "class_year"
kind = "ordinal"
levels = [2006, 2007, 2008]

[[schema.attributes]]
name = "major"
kind = "categorical"
levels = ["m0", "m1", "m2", "m3"]

[[schema.attributes]]
name = "residence"
kind = "categorical"
levels = ["h0", "h1", "h2"]
"#,
    )
    .unwrap();
    let run = |args: &[&str]| {
        let out = bin().current_dir(dir.path()).args(args).output().unwrap();
        assert!(
            out.status.success(),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
    };
    run(&["generate", "campus.toml", "--out", "ref"]);

    let rel = |doc: &serde_json::Value, metric: &str| -> f64 {
        doc["deltas"][metric]["relative"]
            .as_f64()
            .unwrap_or_else(|| panic!("missing relative delta for {metric}"))
    };
    let (mut worst_density, mut worst_clustering, mut worst_geodesic) = (0.0f64, 0.0f64, 0.0f64);
    for trial in 0..10u64 {
        let out_prefix = format!("rep{trial}");
        let seed = (1000 + trial).to_string();
        run(&[
            "replicate",
            "ref.edges.tsv",
            "ref.profiles.csv",
            "campus.toml",
            "--seed",
            &seed,
            "--out",
            &out_prefix,
        ]);
        let doc: serde_json::Value = serde_json::from_str(
            &fs::read_to_string(dir.path().join(format!("{out_prefix}.comparison.json"))).unwrap(),
        )
        .unwrap();
        let density = rel(&doc, "density").abs();
        let clustering = rel(&doc, "avg_local_clustering").abs();
        let geodesic = rel(&doc, "mean_geodesic").abs();
        worst_density = worst_density.max(density);
        worst_clustering = worst_clustering.max(clustering);
        worst_geodesic = worst_geodesic.max(geodesic);
        assert!(density < 0.15, "trial {trial}: density delta {density}");
        assert!(
            clustering < 0.15,
            "trial {trial}: clustering delta {clustering}"
        );
        assert!(geodesic < 0.10, "trial {trial}: geodesic delta {geodesic}");
    }
    let elapsed = started.elapsed();
    println!(
        "criterion 10 (self-replication deltas): PASS - worst relative deltas over 10 trials: density {worst_density:.3}, clustering {worst_clustering:.3}, geodesic {worst_geodesic:.3}, {:.2?}",
        elapsed
    );
}

/// The replicate pipeline is also checked at the library level: loading the
/// written profile table reproduces the sampled profiles exactly, which is
/// what makes criterion 10's "identical attribute assignment" meaningful.
#[test]
fn replicate_profiles_round_trip_exactly() {
    let schema = campus_schema();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let profiles: Vec<NodeProfile> = sample_profiles(&schema, 300, &mut rng);
    let mut bytes = Vec::new();
    demograph::io::write_profiles(&schema, &profiles, &mut bytes).unwrap();
    let loaded = demograph::schema::load_profiles(&schema, bytes.as_slice()).unwrap();
    assert_eq!(profiles, loaded);
    let report = MetricsReport::compute(&Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]));
    assert_eq!(report.node_count, 3);
}
