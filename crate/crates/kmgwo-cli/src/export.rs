//! CSV import/export for run records, summaries, and comparison tables.
//!
//! Numbers are rendered with 17 significant digits so exported values parse
//! back bit-for-bit.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use kmgwo::Problem;

use crate::experiment::{
    Algorithm, ExperimentSummary, FunctionComparison, RunOutcome, VesselComparison,
};
use crate::{HarnessError, Result};

/// Lossless float rendering: 17 significant digits in scientific notation.
pub fn format_float(value: f64) -> String {
    format!("{value:.16e}")
}

fn io_error(path: &Path) -> impl Fn(std::io::Error) -> HarnessError + '_ {
    move |source| HarnessError::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn csv_write_error(path: &Path, err: csv::Error) -> HarnessError {
    HarnessError::Io {
        path: path.to_path_buf(),
        source: std::io::Error::other(err),
    }
}

/// One row of a run-record export: the best fitness seen up to `iteration`
/// of the run started from `seed`.
#[derive(Debug, Clone, PartialEq)]
pub struct RunRecordRow {
    pub algorithm: String,
    pub problem: String,
    pub seed: u64,
    pub iteration: usize,
    pub best_fitness: f64,
}

/// Writes full convergence curves, one row per iteration per run.
pub fn write_run_records(
    outcomes: &[RunOutcome],
    algorithm: Algorithm,
    problem: &str,
    path: &Path,
) -> Result<PathBuf> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        std::fs::create_dir_all(parent).map_err(io_error(path))?;
    }
    let mut writer = csv::Writer::from_path(path).map_err(|e| csv_write_error(path, e))?;
    writer
        .write_record(["algorithm", "problem", "seed", "iteration", "best_fitness"])
        .map_err(|e| csv_write_error(path, e))?;
    for outcome in outcomes {
        for (iteration, best) in outcome.record.best_per_iteration.iter().enumerate() {
            writer
                .write_record([
                    algorithm.as_str(),
                    problem,
                    &outcome.seed.to_string(),
                    &iteration.to_string(),
                    &format_float(*best),
                ])
                .map_err(|e| csv_write_error(path, e))?;
        }
    }
    writer.flush().map_err(io_error(path))?;
    Ok(path.to_path_buf())
}

/// Reads a run-record CSV produced by [`write_run_records`].
pub fn read_run_records(path: &Path) -> Result<Vec<RunRecordRow>> {
    let mut reader = csv::Reader::from_path(path)
        .map_err(|e| HarnessError::Data(format!("cannot open {}: {e}", path.display())))?;
    let mut rows = Vec::new();
    for (line, record) in reader.records().enumerate() {
        let record = record.map_err(|e| HarnessError::Data(format!("{}: {e}", path.display())))?;
        let field = |idx: usize, name: &str| -> Result<String> {
            record.get(idx).map(str::to_string).ok_or_else(|| {
                HarnessError::Data(format!(
                    "{}: row {}: missing column {name}",
                    path.display(),
                    line + 2
                ))
            })
        };
        let parse_err = |name: &str, value: &str| {
            HarnessError::Data(format!(
                "{}: row {}: bad {name} value {value:?}",
                path.display(),
                line + 2
            ))
        };
        let seed_text = field(2, "seed")?;
        let iteration_text = field(3, "iteration")?;
        let fitness_text = field(4, "best_fitness")?;
        rows.push(RunRecordRow {
            algorithm: field(0, "algorithm")?,
            problem: field(1, "problem")?,
            seed: seed_text
                .parse()
                .map_err(|_| parse_err("seed", &seed_text))?,
            iteration: iteration_text
                .parse()
                .map_err(|_| parse_err("iteration", &iteration_text))?,
            best_fitness: fitness_text
                .parse()
                .map_err(|_| parse_err("best_fitness", &fitness_text))?,
        });
    }
    Ok(rows)
}

/// Final best fitness per run, grouped by problem, in seed order of first
/// appearance.
pub fn final_bests_by_problem(rows: &[RunRecordRow]) -> BTreeMap<String, Vec<f64>> {
    let mut per_run: BTreeMap<(String, u64), (usize, f64)> = BTreeMap::new();
    for row in rows {
        let key = (row.problem.clone(), row.seed);
        match per_run.get(&key) {
            Some((iteration, _)) if *iteration >= row.iteration => {}
            _ => {
                per_run.insert(key, (row.iteration, row.best_fitness));
            }
        }
    }
    let mut grouped: BTreeMap<String, Vec<f64>> = BTreeMap::new();
    for ((problem, _), (_, fitness)) in per_run {
        grouped.entry(problem).or_default().push(fitness);
    }
    grouped
}

/// Writes experiment summaries, one row per (algorithm, problem).
pub fn write_summaries(summaries: &[ExperimentSummary], path: &Path) -> Result<PathBuf> {
    let mut writer = csv::Writer::from_path(path).map_err(|e| csv_write_error(path, e))?;
    writer
        .write_record([
            "algorithm",
            "problem",
            "repetitions",
            "avg",
            "std",
            "best",
            "gate_cluster_rate",
        ])
        .map_err(|e| csv_write_error(path, e))?;
    for summary in summaries {
        writer
            .write_record([
                summary.algorithm.as_str(),
                &summary.problem,
                &summary.repetitions.to_string(),
                &format_float(summary.avg),
                &format_float(summary.std),
                &format_float(summary.best),
                &summary
                    .gate_cluster_rate
                    .map(format_float)
                    .unwrap_or_default(),
            ])
            .map_err(|e| csv_write_error(path, e))?;
    }
    writer.flush().map_err(io_error(path))?;
    Ok(path.to_path_buf())
}

/// Per-function avg/std comparison of the two algorithms.
pub fn write_table1(functions: &[FunctionComparison], path: &Path) -> Result<PathBuf> {
    let mut writer = csv::Writer::from_path(path).map_err(|e| csv_write_error(path, e))?;
    writer
        .write_record(["function", "gwo_avg", "gwo_std", "kmgwo_avg", "kmgwo_std"])
        .map_err(|e| csv_write_error(path, e))?;
    for row in functions {
        writer
            .write_record([
                row.problem.as_str(),
                &format_float(row.gwo.avg),
                &format_float(row.gwo.std),
                &format_float(row.kmgwo.avg),
                &format_float(row.kmgwo.std),
            ])
            .map_err(|e| csv_write_error(path, e))?;
    }
    writer.flush().map_err(io_error(path))?;
    Ok(path.to_path_buf())
}

/// Per-function rank-sum p-values comparing the per-run finals.
pub fn write_table3(functions: &[FunctionComparison], path: &Path) -> Result<PathBuf> {
    let mut writer = csv::Writer::from_path(path).map_err(|e| csv_write_error(path, e))?;
    writer
        .write_record(["function", "p_value"])
        .map_err(|e| csv_write_error(path, e))?;
    for row in functions {
        writer
            .write_record([row.problem.as_str(), &format_float(row.p_value)])
            .map_err(|e| csv_write_error(path, e))?;
    }
    writer.flush().map_err(io_error(path))?;
    Ok(path.to_path_buf())
}

/// Per-run vessel results for both algorithms.
pub fn write_table4(vessel: &VesselComparison, problem: &Problem, path: &Path) -> Result<PathBuf> {
    let mut writer = csv::Writer::from_path(path).map_err(|e| csv_write_error(path, e))?;
    writer
        .write_record(["algorithm", "run", "seed", "best_fitness", "feasible"])
        .map_err(|e| csv_write_error(path, e))?;
    for (algorithm, outcomes) in [
        (Algorithm::Gwo, &vessel.gwo_outcomes),
        (Algorithm::Kmgwo, &vessel.kmgwo_outcomes),
    ] {
        for outcome in outcomes {
            let feasible = crate::experiment::vessel_run_feasible(outcome, problem);
            writer
                .write_record([
                    algorithm.as_str(),
                    &outcome.run_index.to_string(),
                    &outcome.seed.to_string(),
                    &format_float(outcome.record.final_best.evaluated_fitness()),
                    if feasible { "true" } else { "false" },
                ])
                .map_err(|e| csv_write_error(path, e))?;
        }
    }
    writer.flush().map_err(io_error(path))?;
    Ok(path.to_path_buf())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn float_format_round_trips() {
        for value in [
            0.0,
            1.0,
            -1.0,
            std::f64::consts::PI,
            6059.7143,
            1.0e-300,
            -3.3e220,
            f64::MIN_POSITIVE,
        ] {
            let parsed: f64 = format_float(value).parse().unwrap();
            assert_eq!(parsed.to_bits(), value.to_bits(), "{value}");
        }
    }

    proptest! {
        #[test]
        fn float_format_round_trips_everywhere(bits in any::<u64>()) {
            let value = f64::from_bits(bits);
            prop_assume!(value.is_finite());
            let parsed: f64 = format_float(value).parse().unwrap();
            prop_assert_eq!(parsed.to_bits(), value.to_bits());
        }
    }

    #[test]
    fn final_bests_pick_last_iteration() {
        let rows = vec![
            RunRecordRow {
                algorithm: "gwo".into(),
                problem: "sphere:2".into(),
                seed: 1,
                iteration: 0,
                best_fitness: 10.0,
            },
            RunRecordRow {
                algorithm: "gwo".into(),
                problem: "sphere:2".into(),
                seed: 1,
                iteration: 1,
                best_fitness: 4.0,
            },
            RunRecordRow {
                algorithm: "gwo".into(),
                problem: "sphere:2".into(),
                seed: 2,
                iteration: 1,
                best_fitness: 6.0,
            },
        ];
        let grouped = final_bests_by_problem(&rows);
        assert_eq!(grouped["sphere:2"], vec![4.0, 6.0]);
    }
}
