//! Repeated seeded runs and the benchmark-table protocols.

use std::path::PathBuf;
use std::str::FromStr;

use rayon::prelude::*;

use kmgwo::gwo::{self, RunRecord};
use kmgwo::hybrid::{self, GateTrace, KmgwoParams};
use kmgwo::problems::{self, cec2019, vessel, ProblemId, ProblemSettings};
use kmgwo::Problem;

use crate::export;
use crate::stats::{self, wilcoxon_rank_sum};
use crate::{HarnessError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    Gwo,
    Kmgwo,
}

impl Algorithm {
    pub fn as_str(&self) -> &'static str {
        match self {
            Algorithm::Gwo => "gwo",
            Algorithm::Kmgwo => "kmgwo",
        }
    }
}

impl std::fmt::Display for Algorithm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Algorithm {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "gwo" => Ok(Algorithm::Gwo),
            "kmgwo" => Ok(Algorithm::Kmgwo),
            other => Err(HarnessError::Config(format!(
                "unknown algorithm {other:?}; expected gwo or kmgwo"
            ))),
        }
    }
}

/// One experiment: an algorithm, a problem, and a number of independent
/// seeded repetitions.
#[derive(Debug, Clone)]
pub struct ExperimentSpec {
    pub algorithm: Algorithm,
    pub problem: ProblemId,
    pub repetitions: usize,
    pub base_seed: u64,
    /// Run parameters; the per-run seed replaces `params.gwo.seed`, and the
    /// hybrid-only fields are ignored for plain GWO.
    pub params: KmgwoParams,
    /// When set, per-run records are persisted here as CSV.
    pub output: Option<PathBuf>,
}

/// One repetition's results.
#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub run_index: usize,
    pub seed: u64,
    pub record: RunRecord,
    pub gate: Option<GateTrace>,
}

/// Cross-run aggregates of one experiment.
#[derive(Debug, Clone)]
pub struct ExperimentSummary {
    pub algorithm: Algorithm,
    pub problem: String,
    pub repetitions: usize,
    /// Final best fitness per run, in run order.
    pub finals: Vec<f64>,
    pub avg: f64,
    pub std: f64,
    pub best: f64,
    /// Fraction of runs that proceeded on a selected cluster (hybrid only).
    pub gate_cluster_rate: Option<f64>,
}

/// Derives the seed of run `run_index` from the experiment's base seed.
///
/// SplitMix64 finalizer over `base + (index + 1) * phi`; the finalizer is a
/// bijection and the offsets are distinct, so per-run seeds never collide.
pub fn mix_seed(base_seed: u64, run_index: u64) -> u64 {
    const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;
    let mut z = base_seed.wrapping_add(run_index.wrapping_add(1).wrapping_mul(GOLDEN));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn execute_run(spec: &ExperimentSpec, problem: &Problem, run_index: usize) -> Result<RunOutcome> {
    let seed = mix_seed(spec.base_seed, run_index as u64);
    let mut params = spec.params.clone();
    params.gwo.seed = seed;
    let (record, gate) = match spec.algorithm {
        Algorithm::Gwo => (gwo::run(problem, &params.gwo)?, None),
        Algorithm::Kmgwo => {
            let (record, gate) = hybrid::run(problem, &params)?;
            (record, Some(gate))
        }
    };
    if !record.is_monotone_nonincreasing() {
        return Err(HarnessError::Runtime(format!(
            "best-per-iteration regressed in run {run_index} (seed {seed})"
        )));
    }
    Ok(RunOutcome {
        run_index,
        seed,
        record,
        gate,
    })
}

/// Executes every repetition (in parallel; the per-run seeds make the result
/// identical to sequential execution) and aggregates the summary.
pub fn run_experiment(
    spec: &ExperimentSpec,
    problem: &Problem,
) -> Result<(ExperimentSummary, Vec<RunOutcome>)> {
    if spec.repetitions == 0 {
        return Err(HarnessError::Config(
            "repetitions must be at least 1".into(),
        ));
    }
    let outcomes: Vec<RunOutcome> = (0..spec.repetitions)
        .into_par_iter()
        .map(|run_index| {
            execute_run(spec, problem, run_index).map_err(|err| {
                let seed = mix_seed(spec.base_seed, run_index as u64);
                match err {
                    HarnessError::Runtime(msg) => HarnessError::Runtime(msg),
                    other => {
                        HarnessError::Runtime(format!("run {run_index} (seed {seed}): {other}"))
                    }
                }
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let summary = summarize(spec, &outcomes);
    if let Some(path) = &spec.output {
        export::write_run_records(&outcomes, spec.algorithm, &spec.problem.to_string(), path)?;
    }
    Ok((summary, outcomes))
}

fn summarize(spec: &ExperimentSpec, outcomes: &[RunOutcome]) -> ExperimentSummary {
    let finals: Vec<f64> = outcomes
        .iter()
        .map(|o| o.record.final_best.evaluated_fitness())
        .collect();
    let avg = stats::mean(&finals);
    let std = stats::sample_std(&finals);
    let best = finals.iter().copied().fold(f64::INFINITY, f64::min);
    let gate_cluster_rate = match spec.algorithm {
        Algorithm::Gwo => None,
        Algorithm::Kmgwo => {
            let selected = outcomes
                .iter()
                .filter(|o| o.gate.as_ref().is_some_and(GateTrace::selected_cluster))
                .count();
            Some(selected as f64 / outcomes.len() as f64)
        }
    };
    ExperimentSummary {
        algorithm: spec.algorithm,
        problem: spec.problem.to_string(),
        repetitions: spec.repetitions,
        finals,
        avg,
        std,
        best,
        gate_cluster_rate,
    }
}

/// Settings for the full table-reproduction protocol.
#[derive(Debug, Clone)]
pub struct ReproduceConfig {
    pub data_dir: PathBuf,
    pub out_dir: PathBuf,
    pub base_seed: u64,
    pub agents: usize,
    pub iterations: usize,
    pub cec_repetitions: usize,
    pub vessel_repetitions: usize,
    pub penalty: f64,
    pub cluster_fitness: hybrid::ClusterFitness,
    pub constraint_mode: vessel::ConstraintMode,
}

impl ReproduceConfig {
    pub fn new(data_dir: PathBuf, out_dir: PathBuf) -> Self {
        Self {
            data_dir,
            out_dir,
            base_seed: 42,
            agents: 30,
            iterations: 500,
            cec_repetitions: 30,
            vessel_repetitions: 15,
            penalty: vessel::DEFAULT_PENALTY,
            cluster_fitness: hybrid::ClusterFitness::Min,
            constraint_mode: vessel::ConstraintMode::Standard,
        }
    }

    fn params(&self) -> KmgwoParams {
        KmgwoParams {
            gwo: gwo::GwoParams {
                population_size: self.agents,
                max_iterations: self.iterations,
                seed: 0,
                ..gwo::GwoParams::default()
            },
            cluster_fitness: self.cluster_fitness,
            ..KmgwoParams::default()
        }
    }
}

/// Per-function comparison row of the benchmark-suite protocol.
#[derive(Debug, Clone)]
pub struct FunctionComparison {
    pub problem: String,
    pub gwo: ExperimentSummary,
    pub kmgwo: ExperimentSummary,
    pub p_value: f64,
}

/// Pressure-vessel comparison of the two algorithms.
#[derive(Debug, Clone)]
pub struct VesselComparison {
    pub gwo: ExperimentSummary,
    pub kmgwo: ExperimentSummary,
    pub gwo_outcomes: Vec<RunOutcome>,
    pub kmgwo_outcomes: Vec<RunOutcome>,
}

/// Everything produced by [`reproduce_tables`].
#[derive(Debug, Clone)]
pub struct ReproduceReport {
    pub functions: Vec<FunctionComparison>,
    pub vessel: VesselComparison,
    /// Rank-sum p over the per-function average fitnesses of the two
    /// algorithms (a pooled, cross-function comparison).
    pub pooled_p: f64,
    pub files: Vec<PathBuf>,
}

/// Stable per-experiment seed namespace inside one reproduction run.
fn experiment_base(base_seed: u64, algorithm: Algorithm, slot: u64) -> u64 {
    let algo_tag = match algorithm {
        Algorithm::Gwo => 0,
        Algorithm::Kmgwo => 1,
    };
    mix_seed(base_seed, algo_tag * 64 + slot)
}

fn comparison_experiment(
    config: &ReproduceConfig,
    algorithm: Algorithm,
    problem_id: ProblemId,
    slot: u64,
    repetitions: usize,
    problem: &Problem,
) -> Result<(ExperimentSummary, Vec<RunOutcome>)> {
    let spec = ExperimentSpec {
        algorithm,
        problem: problem_id,
        repetitions,
        base_seed: experiment_base(config.base_seed, algorithm, slot),
        params: config.params(),
        output: None,
    };
    run_experiment(&spec, problem)
}

/// Runs both algorithms over CEC2019 F1–F10 and the pressure vessel, and
/// writes the three comparison tables.
///
/// Output files (under `config.out_dir`):
///
/// - `table1.csv` — per-function avg/std for both algorithms
/// - `table3.csv` — per-function rank-sum p-values over the per-run finals
/// - `table4.csv` — per-run vessel results for both algorithms
///
/// Everything is keyed off `config.base_seed`; repeated invocations write
/// byte-identical table bodies.
pub fn reproduce_tables(config: &ReproduceConfig) -> Result<ReproduceReport> {
    let data = cec2019::load_data(&config.data_dir).map_err(HarnessError::from)?;
    let settings = ProblemSettings {
        penalty_coefficient: config.penalty,
        constraint_mode: config.constraint_mode,
    };

    let mut functions = Vec::new();
    for id in 1..=cec2019::FUNCTION_COUNT {
        let problem_id = ProblemId::Cec2019(id);
        let problem = cec2019::benchmark_problem(id, &data).map_err(HarnessError::from)?;
        let (gwo_summary, _) = comparison_experiment(
            config,
            Algorithm::Gwo,
            problem_id.clone(),
            id as u64,
            config.cec_repetitions,
            &problem,
        )?;
        let (kmgwo_summary, _) = comparison_experiment(
            config,
            Algorithm::Kmgwo,
            problem_id.clone(),
            id as u64,
            config.cec_repetitions,
            &problem,
        )?;
        let p_value = wilcoxon_rank_sum(&gwo_summary.finals, &kmgwo_summary.finals);
        functions.push(FunctionComparison {
            problem: problem_id.to_string(),
            gwo: gwo_summary,
            kmgwo: kmgwo_summary,
            p_value,
        });
    }

    let vessel_problem = problems::resolve(&ProblemId::PressureVessel, None, &settings)
        .map_err(HarnessError::from)?;
    let (vessel_gwo, vessel_gwo_outcomes) = comparison_experiment(
        config,
        Algorithm::Gwo,
        ProblemId::PressureVessel,
        20,
        config.vessel_repetitions,
        &vessel_problem,
    )?;
    let (vessel_kmgwo, vessel_kmgwo_outcomes) = comparison_experiment(
        config,
        Algorithm::Kmgwo,
        ProblemId::PressureVessel,
        20,
        config.vessel_repetitions,
        &vessel_problem,
    )?;

    let gwo_avgs: Vec<f64> = functions.iter().map(|f| f.gwo.avg).collect();
    let kmgwo_avgs: Vec<f64> = functions.iter().map(|f| f.kmgwo.avg).collect();
    let pooled_p = wilcoxon_rank_sum(&gwo_avgs, &kmgwo_avgs);

    std::fs::create_dir_all(&config.out_dir).map_err(|source| HarnessError::Io {
        path: config.out_dir.clone(),
        source,
    })?;
    let vessel = VesselComparison {
        gwo: vessel_gwo,
        kmgwo: vessel_kmgwo,
        gwo_outcomes: vessel_gwo_outcomes,
        kmgwo_outcomes: vessel_kmgwo_outcomes,
    };
    let files = vec![
        export::write_table1(&functions, &config.out_dir.join("table1.csv"))?,
        export::write_table3(&functions, &config.out_dir.join("table3.csv"))?,
        export::write_table4(&vessel, &vessel_problem, &config.out_dir.join("table4.csv"))?,
    ];

    Ok(ReproduceReport {
        functions,
        vessel,
        pooled_p,
        files,
    })
}

/// Convenience: data directory from an explicit flag, the `KMGWO_DATA_DIR`
/// environment variable, or a default path, in that order.
pub fn data_dir_fallback(explicit: Option<PathBuf>) -> Option<PathBuf> {
    explicit.or_else(|| std::env::var_os("KMGWO_DATA_DIR").map(PathBuf::from))
}

/// Feasibility of a vessel run's final position under the standard
/// constraint set.
pub fn vessel_run_feasible(outcome: &RunOutcome, problem: &Problem) -> bool {
    problem
        .violation(outcome.record.final_best.position())
        .map(|v| v == 0.0)
        .unwrap_or(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use kmgwo::space::Bounds;

    fn constant_problem() -> Problem {
        Problem::new("constant", Bounds::symmetric(2, -1.0, 1.0).unwrap(), |_| {
            7.0
        })
    }

    fn quick_spec(algorithm: Algorithm, repetitions: usize) -> ExperimentSpec {
        ExperimentSpec {
            algorithm,
            problem: ProblemId::Sphere(2),
            repetitions,
            base_seed: 5,
            params: KmgwoParams {
                gwo: gwo::GwoParams {
                    population_size: 8,
                    max_iterations: 20,
                    seed: 0,
                    ..gwo::GwoParams::default()
                },
                ..KmgwoParams::default()
            },
            output: None,
        }
    }

    #[test]
    fn constant_objective_yields_degenerate_summary() {
        let spec = quick_spec(Algorithm::Gwo, 6);
        let (summary, _) = run_experiment(&spec, &constant_problem()).unwrap();
        assert_eq!(summary.avg, 7.0);
        assert_eq!(summary.std, 0.0);
        assert_eq!(summary.best, 7.0);
        assert!(summary.gate_cluster_rate.is_none());
    }

    #[test]
    fn identical_specs_reproduce_identical_summaries() {
        let spec = quick_spec(Algorithm::Kmgwo, 5);
        let problem = problems::sphere(2);
        let (a, _) = run_experiment(&spec, &problem).unwrap();
        let (b, _) = run_experiment(&spec, &problem).unwrap();
        assert_eq!(a.finals, b.finals);
        assert_eq!(a.avg, b.avg);
        assert_eq!(a.std, b.std);
        assert_eq!(a.gate_cluster_rate, b.gate_cluster_rate);
    }

    #[test]
    fn parallel_matches_sequential_execution() {
        let spec = quick_spec(Algorithm::Gwo, 8);
        let problem = problems::sphere(2);
        let (_, outcomes) = run_experiment(&spec, &problem).unwrap();
        for (run_index, outcome) in outcomes.iter().enumerate() {
            let sequential = execute_run(&spec, &problem, run_index).unwrap();
            assert!(outcome.record.same_result(&sequential.record));
            assert_eq!(outcome.seed, sequential.seed);
        }
    }

    #[test]
    fn mixed_seeds_are_pairwise_distinct() {
        let mut seen = std::collections::HashSet::new();
        for r in 0..10_000u64 {
            assert!(seen.insert(mix_seed(1234, r)), "collision at run {r}");
        }
    }

    #[test]
    fn summary_statistics_recompute_from_finals() {
        let spec = quick_spec(Algorithm::Gwo, 10);
        let problem = problems::sphere(2);
        let (summary, _) = run_experiment(&spec, &problem).unwrap();
        let avg = summary.finals.iter().sum::<f64>() / summary.finals.len() as f64;
        assert!((summary.avg - avg).abs() <= 1e-12 * avg.abs().max(1.0));
        assert!(summary.best <= summary.avg);
        assert!(summary.std >= 0.0);
    }
}
