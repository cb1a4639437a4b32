//! Benchmark problem library: the CEC2019 suite, the pressure vessel design
//! problem, and a plain sphere for smoke tests.

pub mod cec2019;
pub mod vessel;

use std::path::Path;
use std::str::FromStr;

use crate::space::{Bounds, Problem};
use crate::{Error, Result};

pub use vessel::ConstraintMode;

/// Parsed problem identifier, as accepted on the command line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProblemId {
    /// `cec19:fN` for N in 1..=10.
    Cec2019(u8),
    /// `vessel`
    PressureVessel,
    /// `sphere:D` — an unshifted sphere in `[-100, 100]^D`.
    Sphere(usize),
}

impl FromStr for ProblemId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        if lower == "vessel" {
            return Ok(ProblemId::PressureVessel);
        }
        if let Some(rest) = lower.strip_prefix("cec19:f") {
            let id: u8 = rest
                .parse()
                .map_err(|_| Error::InvalidConfig(format!("bad CEC2019 function in {s:?}")))?;
            if !(1..=cec2019::FUNCTION_COUNT).contains(&id) {
                return Err(Error::InvalidConfig(format!(
                    "CEC2019 defines f1..=f{}, got {s:?}",
                    cec2019::FUNCTION_COUNT
                )));
            }
            return Ok(ProblemId::Cec2019(id));
        }
        if let Some(rest) = lower.strip_prefix("sphere:") {
            let dim: usize = rest
                .parse()
                .map_err(|_| Error::InvalidConfig(format!("bad sphere dimension in {s:?}")))?;
            if dim == 0 {
                return Err(Error::InvalidConfig(
                    "sphere dimension must be positive".into(),
                ));
            }
            return Ok(ProblemId::Sphere(dim));
        }
        Err(Error::InvalidConfig(format!(
            "unknown problem {s:?}; expected cec19:fN, vessel, or sphere:D"
        )))
    }
}

impl std::fmt::Display for ProblemId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ProblemId::Cec2019(id) => write!(f, "cec19:f{id}"),
            ProblemId::PressureVessel => write!(f, "vessel"),
            ProblemId::Sphere(dim) => write!(f, "sphere:{dim}"),
        }
    }
}

/// Sphere objective over `[-100, 100]^dimension`.
pub fn sphere(dimension: usize) -> Problem {
    Problem::new(
        format!("sphere:{dimension}"),
        Bounds::symmetric(dimension, -100.0, 100.0).expect("static bounds"),
        |x| x.iter().map(|v| v * v).sum(),
    )
}

/// Settings that parameterize problem construction.
#[derive(Debug, Clone)]
pub struct ProblemSettings {
    pub penalty_coefficient: f64,
    pub constraint_mode: ConstraintMode,
}

impl Default for ProblemSettings {
    fn default() -> Self {
        Self {
            penalty_coefficient: vessel::DEFAULT_PENALTY,
            constraint_mode: ConstraintMode::Standard,
        }
    }
}

/// Builds the experiment problem behind an id. CEC2019 functions run over
/// the comparison protocol's shared search box (see
/// [`cec2019::benchmark_problem`]); F4–F10 need `data_dir`, every other
/// problem ignores it.
pub fn resolve(
    id: &ProblemId,
    data_dir: Option<&Path>,
    settings: &ProblemSettings,
) -> Result<Problem> {
    match id {
        ProblemId::Sphere(dim) => Ok(sphere(*dim)),
        ProblemId::PressureVessel => Ok(vessel::problem(
            settings.penalty_coefficient,
            settings.constraint_mode,
        )),
        ProblemId::Cec2019(fid) => {
            if cec2019::TRANSFORMED_IDS.contains(fid) {
                let dir = data_dir.ok_or_else(|| {
                    Error::InvalidConfig(format!(
                        "cec19:f{fid} needs a data directory (--data-dir or KMGWO_DATA_DIR)"
                    ))
                })?;
                let data = cec2019::load_data(dir)?;
                cec2019::benchmark_problem(*fid, &data)
            } else {
                cec2019::benchmark_problem(*fid, &cec2019::SuiteData::default())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn problem_ids_parse_and_display() {
        assert_eq!(
            "cec19:f3".parse::<ProblemId>().unwrap(),
            ProblemId::Cec2019(3)
        );
        assert_eq!(
            "CEC19:F10".parse::<ProblemId>().unwrap(),
            ProblemId::Cec2019(10)
        );
        assert_eq!(
            "vessel".parse::<ProblemId>().unwrap(),
            ProblemId::PressureVessel
        );
        assert_eq!(
            "sphere:10".parse::<ProblemId>().unwrap(),
            ProblemId::Sphere(10)
        );
        assert!("cec19:f11".parse::<ProblemId>().is_err());
        assert!("cec19:f0".parse::<ProblemId>().is_err());
        assert!("banana".parse::<ProblemId>().is_err());
        assert_eq!(ProblemId::Cec2019(7).to_string(), "cec19:f7");
    }

    #[test]
    fn transformed_function_without_data_dir_is_an_error() {
        let err = resolve(&ProblemId::Cec2019(4), None, &ProblemSettings::default());
        assert!(err.is_err());
        // F1..F3 need no data.
        assert!(resolve(&ProblemId::Cec2019(2), None, &ProblemSettings::default()).is_ok());
    }
}
