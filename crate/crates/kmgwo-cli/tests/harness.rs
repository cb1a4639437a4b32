//! Harness-level integration: CSV round trips, summary recomputation, and
//! the table-reproduction protocol at a reduced size.

use std::path::PathBuf;

use kmgwo::gwo::GwoParams;
use kmgwo::hybrid::KmgwoParams;
use kmgwo::problems::{self, ProblemId};

use kmgwo_cli::experiment::{
    reproduce_tables, run_experiment, Algorithm, ExperimentSpec, ReproduceConfig,
};
use kmgwo_cli::export;
use kmgwo_cli::stats;

fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/cec2019")
}

fn small_spec(algorithm: Algorithm, output: Option<PathBuf>) -> ExperimentSpec {
    ExperimentSpec {
        algorithm,
        problem: ProblemId::Sphere(3),
        repetitions: 6,
        base_seed: 11,
        params: KmgwoParams {
            gwo: GwoParams {
                population_size: 8,
                max_iterations: 25,
                seed: 0,
                ..GwoParams::default()
            },
            ..KmgwoParams::default()
        },
        output,
    }
}

#[test]
fn summary_recomputes_from_exported_records() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("runs.csv");
    let spec = small_spec(Algorithm::Kmgwo, Some(path.clone()));
    let problem = problems::sphere(3);
    let (summary, _) = run_experiment(&spec, &problem).unwrap();

    let rows = export::read_run_records(&path).unwrap();
    let finals = export::final_bests_by_problem(&rows);
    let recomputed = &finals["sphere:3"];
    assert_eq!(recomputed.len(), summary.finals.len());

    let avg = stats::mean(recomputed);
    let std = stats::sample_std(recomputed);
    assert!((avg - summary.avg).abs() <= 1e-12 * summary.avg.abs().max(1.0));
    assert!((std - summary.std).abs() <= 1e-12 * summary.std.abs().max(1.0));

    // The exported floats parse back bit-for-bit.
    let mut sorted_a: Vec<u64> = recomputed.iter().map(|f| f.to_bits()).collect();
    let mut sorted_b: Vec<u64> = summary.finals.iter().map(|f| f.to_bits()).collect();
    sorted_a.sort_unstable();
    sorted_b.sort_unstable();
    assert_eq!(sorted_a, sorted_b);
}

#[test]
fn summary_csv_shape_and_empty_set() {
    let dir = tempfile::tempdir().unwrap();
    let one = dir.path().join("one.csv");
    let spec = small_spec(Algorithm::Gwo, None);
    let problem = problems::sphere(3);
    let (summary, _) = run_experiment(&spec, &problem).unwrap();
    export::write_summaries(std::slice::from_ref(&summary), &one).unwrap();
    let text = std::fs::read_to_string(&one).unwrap();
    assert_eq!(text.lines().count(), 2, "header plus one row");

    let empty = dir.path().join("empty.csv");
    export::write_summaries(&[], &empty).unwrap();
    let text = std::fs::read_to_string(&empty).unwrap();
    assert_eq!(text.lines().count(), 1, "header only");
}

#[test]
fn wilcoxon_between_experiments_separates_distinct_problems() {
    let problem = problems::sphere(3);
    let (a, _) = run_experiment(&small_spec(Algorithm::Gwo, None), &problem).unwrap();
    let (b, _) = run_experiment(&small_spec(Algorithm::Kmgwo, None), &problem).unwrap();
    let p = stats::wilcoxon_rank_sum(&a.finals, &b.finals);
    assert!(p > 0.0 && p <= 1.0);
}

#[test]
fn reproduce_tables_shapes_and_idempotence() {
    let out_a = tempfile::tempdir().unwrap();
    let out_b = tempfile::tempdir().unwrap();
    let mut config = ReproduceConfig::new(data_dir(), out_a.path().to_path_buf());
    config.agents = 8;
    config.iterations = 20;
    config.cec_repetitions = 3;
    config.vessel_repetitions = 15;
    config.base_seed = 7;

    let report = reproduce_tables(&config).unwrap();
    assert_eq!(report.functions.len(), 10);
    assert!(report.pooled_p > 0.0 && report.pooled_p <= 1.0);
    for row in &report.functions {
        assert!(row.p_value > 0.0 && row.p_value <= 1.0);
    }

    let lines = |path: &std::path::Path| -> Vec<String> {
        std::fs::read_to_string(path)
            .unwrap()
            .lines()
            .map(str::to_string)
            .collect()
    };
    let table1 = lines(&out_a.path().join("table1.csv"));
    let table3 = lines(&out_a.path().join("table3.csv"));
    let table4 = lines(&out_a.path().join("table4.csv"));
    assert_eq!(table1.len(), 1 + 10);
    assert_eq!(table3.len(), 1 + 10);
    assert_eq!(table4.len(), 1 + 2 * 15);

    // Same base seed, fresh output directory: byte-identical table bodies.
    config.out_dir = out_b.path().to_path_buf();
    reproduce_tables(&config).unwrap();
    for name in ["table1.csv", "table3.csv", "table4.csv"] {
        let a = std::fs::read(out_a.path().join(name)).unwrap();
        let b = std::fs::read(out_b.path().join(name)).unwrap();
        assert_eq!(a, b, "{name} differs between reruns");
    }
}
