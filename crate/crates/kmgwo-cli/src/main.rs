//! Command-line interface over the experiment harness.
//!
//! Subcommands: `run` (one seeded run), `suite` (CEC2019 comparison
//! protocol), `vessel` (pressure-vessel protocol), `stats` (rank-sum test
//! between two run-record CSVs), `reproduce` (all comparison tables).
//!
//! Exit codes: 0 success, 2 configuration error, 3 data ingestion error,
//! 4 runtime failure.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use kmgwo::gwo::GwoParams;
use kmgwo::hybrid::{ClusterFitness, KmgwoParams};
use kmgwo::problems::{vessel, ProblemId, ProblemSettings};

use kmgwo_cli::experiment::{
    self, reproduce_tables, run_experiment, Algorithm, ExperimentSpec, ReproduceConfig,
};
use kmgwo_cli::{config, export, stats, HarnessError, Result};

#[derive(Parser)]
#[command(
    name = "kmgwo",
    version,
    about = "GWO / KMGWO optimization benchmark harness"
)]
struct Cli {
    #[command(flatten)]
    opts: CliOpts,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct CliOpts {
    /// key=value config file; command-line flags take precedence.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Algorithm: gwo or kmgwo.
    #[arg(long, global = true)]
    algo: Option<String>,

    /// Problem id: cec19:fN, vessel, or sphere:D.
    #[arg(long, global = true)]
    problem: Option<String>,

    /// Population size.
    #[arg(long, global = true)]
    agents: Option<usize>,

    /// Iteration budget per run.
    #[arg(long, global = true)]
    iters: Option<usize>,

    /// Repetitions per experiment.
    #[arg(long, global = true)]
    reps: Option<usize>,

    /// Seed (single run) or base seed (experiments).
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Directory with the CEC2019 shift/rotation files. Falls back to the
    /// KMGWO_DATA_DIR environment variable.
    #[arg(long, global = true, value_name = "PATH")]
    data_dir: Option<PathBuf>,

    /// Output file (suite, vessel, stats) or directory (reproduce).
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Penalty coefficient for the vessel constraints.
    #[arg(long, global = true)]
    penalty: Option<f64>,

    /// Cluster fitness: min or mean.
    #[arg(long, global = true)]
    cluster_fitness: Option<String>,

    /// Evaluate the literal (degenerate) printed constraint variant instead
    /// of the corrected one.
    #[arg(long, global = true)]
    paper_literal_constraints: bool,
}

#[derive(Subcommand)]
enum Command {
    /// One seeded run; prints the final best solution.
    Run,
    /// CEC2019 F1-F10, both algorithms, repeated runs; writes summaries.
    Suite,
    /// Pressure vessel, both algorithms, repeated runs; writes summaries.
    Vessel,
    /// Two-sided rank-sum p-values between two run-record CSV files.
    Stats {
        /// Run records of the first algorithm.
        a: PathBuf,
        /// Run records of the second algorithm.
        b: PathBuf,
    },
    /// Full table protocol: suite + vessel + per-function p-values.
    Reproduce,
}

/// Flag values merged with the config file; flags win.
struct Resolved {
    algo: Algorithm,
    problem: Option<ProblemId>,
    agents: usize,
    iters: usize,
    reps: Option<usize>,
    seed: u64,
    data_dir: Option<PathBuf>,
    out: Option<PathBuf>,
    penalty: f64,
    cluster_fitness: ClusterFitness,
    literal_constraints: bool,
}

fn parse_cluster_fitness(text: &str) -> Result<ClusterFitness> {
    match text.trim().to_ascii_lowercase().as_str() {
        "min" => Ok(ClusterFitness::Min),
        "mean" => Ok(ClusterFitness::Mean),
        other => Err(HarnessError::Config(format!(
            "unknown cluster fitness {other:?}; expected min or mean"
        ))),
    }
}

fn parse_bool(text: &str) -> Result<bool> {
    match text.trim().to_ascii_lowercase().as_str() {
        "true" | "1" | "yes" => Ok(true),
        "false" | "0" | "no" => Ok(false),
        other => Err(HarnessError::Config(format!(
            "expected a boolean, got {other:?}"
        ))),
    }
}

fn resolve(opts: &CliOpts) -> Result<Resolved> {
    let file: BTreeMap<String, String> = match &opts.config {
        Some(path) => config::parse_config_file(path)?,
        None => BTreeMap::new(),
    };

    let algo_text = opts
        .algo
        .clone()
        .or_else(|| file.get("algo").cloned())
        .unwrap_or_else(|| "gwo".to_string());
    let problem_text = opts
        .problem
        .clone()
        .or_else(|| file.get("problem").cloned());
    let problem = problem_text
        .map(|text| text.parse::<ProblemId>())
        .transpose()
        .map_err(|e| HarnessError::Config(e.to_string()))?;

    let cluster_text = opts
        .cluster_fitness
        .clone()
        .or_else(|| file.get("cluster-fitness").cloned());
    let cluster_fitness = match cluster_text {
        Some(text) => parse_cluster_fitness(&text)?,
        None => ClusterFitness::Min,
    };

    let literal_constraints = opts.paper_literal_constraints
        || match file.get("paper-literal-constraints") {
            Some(text) => parse_bool(text)?,
            None => false,
        };

    let data_dir = opts
        .data_dir
        .clone()
        .or_else(|| file.get("data-dir").map(PathBuf::from));

    Ok(Resolved {
        algo: algo_text.parse()?,
        problem,
        agents: match opts.agents {
            Some(v) => v,
            None => config::parse_value(&file, "agents")?.unwrap_or(30),
        },
        iters: match opts.iters {
            Some(v) => v,
            None => config::parse_value(&file, "iters")?.unwrap_or(500),
        },
        reps: match opts.reps {
            Some(v) => Some(v),
            None => config::parse_value(&file, "reps")?,
        },
        seed: match opts.seed {
            Some(v) => v,
            None => config::parse_value(&file, "seed")?.unwrap_or(42),
        },
        data_dir: experiment::data_dir_fallback(data_dir),
        out: opts
            .out
            .clone()
            .or_else(|| file.get("out").map(PathBuf::from)),
        penalty: match opts.penalty {
            Some(v) => v,
            None => config::parse_value(&file, "penalty")?.unwrap_or(vessel::DEFAULT_PENALTY),
        },
        cluster_fitness,
        literal_constraints,
    })
}

impl Resolved {
    fn settings(&self) -> ProblemSettings {
        ProblemSettings {
            penalty_coefficient: self.penalty,
            constraint_mode: if self.literal_constraints {
                vessel::ConstraintMode::Literal
            } else {
                vessel::ConstraintMode::Standard
            },
        }
    }

    fn params(&self, seed: u64) -> KmgwoParams {
        KmgwoParams {
            gwo: GwoParams {
                population_size: self.agents,
                max_iterations: self.iters,
                seed,
                ..GwoParams::default()
            },
            cluster_fitness: self.cluster_fitness,
            ..KmgwoParams::default()
        }
    }
}

fn cmd_run(resolved: &Resolved) -> Result<()> {
    let problem_id = resolved
        .problem
        .clone()
        .ok_or_else(|| HarnessError::Config("run requires --problem".into()))?;
    let problem = kmgwo::problems::resolve(
        &problem_id,
        resolved.data_dir.as_deref(),
        &resolved.settings(),
    )?;
    let params = resolved.params(resolved.seed);

    println!(
        "algorithm={} problem={} agents={} iters={} seed={}",
        resolved.algo, problem_id, resolved.agents, resolved.iters, resolved.seed
    );
    let record = match resolved.algo {
        Algorithm::Gwo => kmgwo::gwo::run(&problem, &params.gwo)?,
        Algorithm::Kmgwo => {
            let (record, gate) = kmgwo::hybrid::run(&problem, &params)?;
            println!(
                "gate: draw={:.6} decision={:?} selected_size={}",
                gate.gate_draw, gate.decision, gate.selected_size
            );
            record
        }
    };
    println!(
        "final best fitness = {}",
        export::format_float(record.final_best.evaluated_fitness())
    );
    println!("position = {:?}", record.final_best.position());
    println!(
        "evaluations = {}, wall time = {:.3}s",
        record.evaluations,
        record.wall_time.as_secs_f64()
    );
    if problem_id == ProblemId::PressureVessel {
        let report = vessel::constraints_with_mode(
            record.final_best.position(),
            resolved.settings().constraint_mode,
        );
        println!(
            "constraints g = {:?}, feasible = {}",
            report.g, report.feasible
        );
    }
    Ok(())
}

fn run_both_algorithms(
    resolved: &Resolved,
    problem_ids: &[ProblemId],
    repetitions: usize,
    runs_out: Option<&PathBuf>,
) -> Result<Vec<kmgwo_cli::experiment::ExperimentSummary>> {
    let mut summaries = Vec::new();
    for (slot, problem_id) in problem_ids.iter().enumerate() {
        let problem = kmgwo::problems::resolve(
            problem_id,
            resolved.data_dir.as_deref(),
            &resolved.settings(),
        )?;
        for algorithm in [Algorithm::Gwo, Algorithm::Kmgwo] {
            let output = runs_out.map(|base| {
                let stem = base
                    .file_stem()
                    .map(|s| s.to_string_lossy().to_string())
                    .unwrap_or_else(|| "runs".to_string());
                let name = format!(
                    "{stem}_{algorithm}_{}.csv",
                    problem_id.to_string().replace(':', "_")
                );
                base.with_file_name(name)
            });
            let spec = ExperimentSpec {
                algorithm,
                problem: problem_id.clone(),
                repetitions,
                base_seed: experiment::mix_seed(resolved.seed, slot as u64 * 2 + algorithm as u64),
                params: resolved.params(0),
                output,
            };
            let (summary, _) = run_experiment(&spec, &problem)?;
            println!(
                "{:<6} {:<10} reps={} avg={:.6e} std={:.6e} best={:.6e}",
                summary.algorithm.as_str(),
                summary.problem,
                summary.repetitions,
                summary.avg,
                summary.std,
                summary.best
            );
            summaries.push(summary);
        }
    }
    Ok(summaries)
}

fn cmd_suite(resolved: &Resolved) -> Result<()> {
    let repetitions = resolved.reps.unwrap_or(30);
    let problem_ids: Vec<ProblemId> = (1..=10).map(ProblemId::Cec2019).collect();
    let out = resolved
        .out
        .clone()
        .unwrap_or_else(|| PathBuf::from("suite_summary.csv"));
    let summaries = run_both_algorithms(resolved, &problem_ids, repetitions, Some(&out))?;
    let path = export::write_summaries(&summaries, &out)?;
    println!("wrote {}", path.display());
    Ok(())
}

fn cmd_vessel(resolved: &Resolved) -> Result<()> {
    let repetitions = resolved.reps.unwrap_or(15);
    let out = resolved
        .out
        .clone()
        .unwrap_or_else(|| PathBuf::from("vessel_summary.csv"));
    let summaries = run_both_algorithms(
        resolved,
        &[ProblemId::PressureVessel],
        repetitions,
        Some(&out),
    )?;
    let path = export::write_summaries(&summaries, &out)?;
    println!("wrote {}", path.display());
    Ok(())
}

fn cmd_stats(resolved: &Resolved, a: &Path, b: &Path) -> Result<()> {
    let rows_a = export::read_run_records(a)?;
    let rows_b = export::read_run_records(b)?;
    let finals_a = export::final_bests_by_problem(&rows_a);
    let finals_b = export::final_bests_by_problem(&rows_b);

    let mut results: Vec<(String, f64)> = Vec::new();
    for (problem, sample_a) in &finals_a {
        if let Some(sample_b) = finals_b.get(problem) {
            results.push((
                problem.clone(),
                stats::wilcoxon_rank_sum(sample_a, sample_b),
            ));
        }
    }
    if results.is_empty() {
        return Err(HarnessError::Data(
            "the two record files share no problems".into(),
        ));
    }
    for (problem, p) in &results {
        println!("{problem}: p = {}", export::format_float(*p));
    }
    if let Some(out) = &resolved.out {
        let mut writer = csv::Writer::from_path(out).map_err(|e| HarnessError::Io {
            path: out.clone(),
            source: std::io::Error::other(e),
        })?;
        writer
            .write_record(["problem", "p_value"])
            .and_then(|()| {
                results.iter().try_for_each(|(problem, p)| {
                    writer.write_record([problem.as_str(), &export::format_float(*p)])
                })
            })
            .map_err(|e| HarnessError::Io {
                path: out.clone(),
                source: std::io::Error::other(e),
            })?;
        writer.flush().map_err(|source| HarnessError::Io {
            path: out.clone(),
            source,
        })?;
        println!("wrote {}", out.display());
    }
    Ok(())
}

fn cmd_reproduce(resolved: &Resolved) -> Result<()> {
    let data_dir = resolved.data_dir.clone().ok_or_else(|| {
        HarnessError::Config("reproduce needs --data-dir or KMGWO_DATA_DIR".into())
    })?;
    let out_dir = resolved
        .out
        .clone()
        .unwrap_or_else(|| PathBuf::from("tables"));
    let mut config = ReproduceConfig::new(data_dir, out_dir);
    config.base_seed = resolved.seed;
    config.agents = resolved.agents;
    config.iterations = resolved.iters;
    if let Some(reps) = resolved.reps {
        config.cec_repetitions = reps;
    }
    config.penalty = resolved.penalty;
    config.cluster_fitness = resolved.cluster_fitness;
    config.constraint_mode = resolved.settings().constraint_mode;

    let report = reproduce_tables(&config)?;
    for row in &report.functions {
        println!(
            "{:<10} gwo avg={:.6e} kmgwo avg={:.6e} p={:.6e}",
            row.problem, row.gwo.avg, row.kmgwo.avg, row.p_value
        );
    }
    println!(
        "vessel gwo avg={:.4} best={:.4} | kmgwo avg={:.4} best={:.4}",
        report.vessel.gwo.avg,
        report.vessel.gwo.best,
        report.vessel.kmgwo.avg,
        report.vessel.kmgwo.best
    );
    println!(
        "pooled p over per-function averages = {}",
        export::format_float(report.pooled_p)
    );
    for file in &report.files {
        println!("wrote {}", file.display());
    }
    Ok(())
}

fn dispatch(cli: &Cli) -> Result<()> {
    let resolved = resolve(&cli.opts)?;
    match &cli.command {
        Command::Run => cmd_run(&resolved),
        Command::Suite => cmd_suite(&resolved),
        Command::Vessel => cmd_vessel(&resolved),
        Command::Stats { a, b } => cmd_stats(&resolved, a, b),
        Command::Reproduce => cmd_reproduce(&resolved),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
