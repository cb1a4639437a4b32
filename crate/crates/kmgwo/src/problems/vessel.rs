//! Pressure vessel design: minimize fabrication cost of a cylindrical vessel
//! with hemispherical heads over four design variables
//! `x = [x1 x2 x3 x4] = [shell thickness, head thickness, inner radius,
//! cylinder length]`, subject to thickness and volume constraints.
//!
//! Two printed variants of the constraint set circulate; the `Literal` mode
//! reproduces them for auditing:
//!
//! - `g2` as `-x3 + 0.00954*x3` is degenerate (nonpositive for any feasible
//!   radius and independent of the head thickness). `Standard` uses
//!   `g2 = -x2 + 0.00954*x3`.
//! - `g4` as `x4 + 240 <= 0` is unsatisfiable within the variable limits.
//!   `Standard` uses `g4 = x4 - 240`.

use std::f64::consts::PI;

use crate::space::{Bounds, Problem};

pub const DIMENSION: usize = 4;

/// Quadratic-penalty coefficient that dwarfs the objective scale.
pub const DEFAULT_PENALTY: f64 = 1e6;

/// Which constraint formulation to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ConstraintMode {
    /// Corrected, standard formulation.
    #[default]
    Standard,
    /// The degenerate printed variant, for auditability.
    Literal,
}

/// Variable limits: `0 <= x1, x2 <= 99` and `10 <= x3, x4 <= 200`.
pub fn bounds() -> Bounds {
    Bounds::new(vec![0.0, 0.0, 10.0, 10.0], vec![99.0, 99.0, 200.0, 200.0])
        .expect("static limits are well formed")
}

/// Constraint values and derived feasibility information.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstraintReport {
    pub g: [f64; 4],
    /// `max(0, g_i)` per constraint.
    pub violations: [f64; 4],
    /// All `g_i <= 0`; equivalently, the violations sum to zero.
    pub feasible: bool,
}

impl ConstraintReport {
    pub fn total_violation(&self) -> f64 {
        self.violations.iter().sum()
    }
}

fn check_length(x: &[f64]) {
    assert_eq!(
        x.len(),
        DIMENSION,
        "pressure vessel expects {DIMENSION} variables, got {}",
        x.len()
    );
}

/// Fabrication cost:
/// `0.6224*x1*x3*x4 + 1.7781*x2*x3^2 + 3.1661*x1^2*x4 + 19.84*x1^2*x3`.
///
/// # Panics
///
/// Panics unless `x` has exactly four components.
pub fn objective(x: &[f64]) -> f64 {
    check_length(x);
    let (x1, x2, x3, x4) = (x[0], x[1], x[2], x[3]);
    0.6224 * x1 * x3 * x4 + 1.7781 * x2 * x3 * x3 + 3.1661 * x1 * x1 * x4 + 19.84 * x1 * x1 * x3
}

/// Evaluates the four design constraints under the given formulation.
pub fn constraints_with_mode(x: &[f64], mode: ConstraintMode) -> ConstraintReport {
    check_length(x);
    let (x1, x2, x3, x4) = (x[0], x[1], x[2], x[3]);
    let g = match mode {
        ConstraintMode::Standard => [
            -x1 + 0.0193 * x3,
            -x2 + 0.00954 * x3,
            -PI * x3 * x3 * x4 - (4.0 / 3.0) * PI * x3 * x3 * x3 + 1_296_000.0,
            x4 - 240.0,
        ],
        ConstraintMode::Literal => [
            -x1 + 0.0193 * x3,
            -x3 + 0.00954 * x3,
            -PI * x3 * x3 * x4 - (4.0 / 3.0) * PI * x3 * x3 * x3 + 1_296_000.0,
            x4 + 240.0,
        ],
    };
    let violations = g.map(|gi| gi.max(0.0));
    ConstraintReport {
        g,
        violations,
        feasible: violations.iter().all(|&v| v == 0.0),
    }
}

/// [`constraints_with_mode`] under the standard formulation.
pub fn constraints(x: &[f64]) -> ConstraintReport {
    constraints_with_mode(x, ConstraintMode::Standard)
}

/// Static quadratic penalty: objective plus
/// `penalty_coefficient * sum(max(0, g_i)^2)`. Equals the raw objective
/// exactly on the feasible set.
pub fn penalized_fitness_with_mode(
    x: &[f64],
    penalty_coefficient: f64,
    mode: ConstraintMode,
) -> f64 {
    let report = constraints_with_mode(x, mode);
    let penalty: f64 = report.violations.iter().map(|v| v * v).sum();
    objective(x) + penalty_coefficient * penalty
}

/// [`penalized_fitness_with_mode`] under the standard formulation.
pub fn penalized_fitness(x: &[f64], penalty_coefficient: f64) -> f64 {
    penalized_fitness_with_mode(x, penalty_coefficient, ConstraintMode::Standard)
}

/// Search objective for the vessel experiments: the quadratic penalty plus
/// a linear (exact) term, `objective + c * sum(v_i + v_i^2)`.
///
/// The quadratic term alone balances against the objective gradient at a
/// violation of about `grad / (2c)` (around 1e-3 at the default
/// coefficient), so search minimizers systematically sit on the infeasible
/// side of the boundary. The linear term's slope `c` dwarfs the objective
/// gradient everywhere, which puts the penalized minimum exactly on the
/// feasible set; on it, the value still equals the raw objective.
pub fn search_fitness_with_mode(x: &[f64], penalty_coefficient: f64, mode: ConstraintMode) -> f64 {
    let report = constraints_with_mode(x, mode);
    let penalty: f64 = report.violations.iter().map(|v| v + v * v).sum();
    objective(x) + penalty_coefficient * penalty
}

/// The vessel as a minimization problem, driven by
/// [`search_fitness_with_mode`].
pub fn problem(penalty_coefficient: f64, mode: ConstraintMode) -> Problem {
    Problem::new("vessel", bounds(), move |x| {
        search_fitness_with_mode(x, penalty_coefficient, mode)
    })
    .with_violation(move |x| constraints_with_mode(x, mode).total_violation())
}
