//! Bounded search spaces, search agents, and problem definitions.

use std::sync::Arc;

use crate::rng::UniformSource;
use crate::{Error, Result};

/// Per-dimension box constraints of a search space.
#[derive(Debug, Clone, PartialEq)]
pub struct Bounds {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl Bounds {
    /// Builds bounds from per-dimension limits; `lower[d] < upper[d]` must
    /// hold for every dimension.
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        if lower.is_empty() || lower.len() != upper.len() {
            return Err(Error::InvalidConfig(format!(
                "bounds must have equal nonzero length ({} lower vs {} upper)",
                lower.len(),
                upper.len()
            )));
        }
        for (d, (lo, hi)) in lower.iter().zip(&upper).enumerate() {
            if lo.partial_cmp(hi) != Some(std::cmp::Ordering::Less) {
                return Err(Error::InvalidConfig(format!(
                    "bounds[{d}]: lower {lo} must be strictly below upper {hi}"
                )));
            }
        }
        Ok(Self { lower, upper })
    }

    /// Same limits `[lo, hi]` in every dimension.
    pub fn symmetric(dimension: usize, lo: f64, hi: f64) -> Result<Self> {
        Self::new(vec![lo; dimension], vec![hi; dimension])
    }

    pub fn dimension(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    /// In-place hard clamp. Dimensions must already match.
    pub fn clamp_in_place(&self, position: &mut [f64]) {
        debug_assert_eq!(position.len(), self.dimension());
        for (x, (lo, hi)) in position.iter_mut().zip(self.lower.iter().zip(&self.upper)) {
            *x = x.max(*lo).min(*hi);
        }
    }

    pub fn contains(&self, position: &[f64]) -> bool {
        position.len() == self.dimension()
            && position
                .iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(x, (lo, hi))| *lo <= *x && *x <= *hi)
    }
}

/// Hard-clamps each component of `position` into its bounds interval.
/// Components already in range are returned unchanged.
///
/// # Panics
///
/// Panics if `position` and `bounds` disagree on dimension.
pub fn clamp(position: &[f64], bounds: &Bounds) -> Vec<f64> {
    assert_eq!(
        position.len(),
        bounds.dimension(),
        "clamp: position dimension {} does not match bounds dimension {}",
        position.len(),
        bounds.dimension()
    );
    let mut out = position.to_vec();
    bounds.clamp_in_place(&mut out);
    out
}

/// A position in the decision space plus its cached objective value.
///
/// The cache is cleared whenever the position changes, so a `Some` fitness is
/// always the objective value of the current position.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchAgent {
    position: Vec<f64>,
    fitness: Option<f64>,
}

impl SearchAgent {
    pub fn new(position: Vec<f64>) -> Self {
        Self {
            position,
            fitness: None,
        }
    }

    /// Placeholder leader with infinite fitness; any evaluated agent
    /// displaces it.
    pub fn sentinel(dimension: usize) -> Self {
        Self {
            position: vec![0.0; dimension],
            fitness: Some(f64::INFINITY),
        }
    }

    pub fn position(&self) -> &[f64] {
        &self.position
    }

    /// Replaces the position and marks the cached fitness stale.
    pub fn set_position(&mut self, position: Vec<f64>) {
        self.position = position;
        self.fitness = None;
    }

    /// Cached fitness, `None` while stale.
    pub fn fitness(&self) -> Option<f64> {
        self.fitness
    }

    /// Cached fitness of an agent that must have been evaluated.
    ///
    /// # Panics
    ///
    /// Panics if the fitness is stale.
    pub fn evaluated_fitness(&self) -> f64 {
        self.fitness
            .expect("agent fitness is stale; evaluate before use")
    }

    pub fn set_fitness(&mut self, fitness: f64) {
        self.fitness = Some(fitness);
    }
}

/// The three best solutions found so far, ordered by fitness
/// (`alpha <= beta <= delta` under minimization).
#[derive(Debug, Clone)]
pub struct Leaders {
    pub alpha: SearchAgent,
    pub beta: SearchAgent,
    pub delta: SearchAgent,
}

impl Leaders {
    /// Sentinel leaders for a fresh run; the first evaluated population
    /// fills all three slots.
    pub fn sentinel(dimension: usize) -> Self {
        Self {
            alpha: SearchAgent::sentinel(dimension),
            beta: SearchAgent::sentinel(dimension),
            delta: SearchAgent::sentinel(dimension),
        }
    }

    pub fn is_ordered(&self) -> bool {
        self.alpha.evaluated_fitness() <= self.beta.evaluated_fitness()
            && self.beta.evaluated_fitness() <= self.delta.evaluated_fitness()
    }
}

type ObjectiveFn = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;
type ViolationFn = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;

/// A minimization problem: a pure objective over a bounded space.
///
/// Objectives must be deterministic and re-entrant; a `Problem` may be shared
/// by many concurrent runs. Maximization problems are expressed by negating
/// the objective.
#[derive(Clone)]
pub struct Problem {
    name: String,
    bounds: Bounds,
    objective: ObjectiveFn,
    violation: Option<ViolationFn>,
}

impl Problem {
    pub fn new(
        name: impl Into<String>,
        bounds: Bounds,
        objective: impl Fn(&[f64]) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Self {
            name: name.into(),
            bounds,
            objective: Arc::new(objective),
            violation: None,
        }
    }

    /// Attaches a constraint-violation measure: total violation, zero on the
    /// feasible set.
    pub fn with_violation(
        mut self,
        violation: impl Fn(&[f64]) -> f64 + Send + Sync + 'static,
    ) -> Self {
        self.violation = Some(Arc::new(violation));
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn bounds(&self) -> &Bounds {
        &self.bounds
    }

    pub fn dimension(&self) -> usize {
        self.bounds.dimension()
    }

    pub fn evaluate(&self, position: &[f64]) -> f64 {
        assert_eq!(
            position.len(),
            self.dimension(),
            "evaluate: position dimension {} does not match problem dimension {}",
            position.len(),
            self.dimension()
        );
        (self.objective)(position)
    }

    /// Total constraint violation at `position`, if the problem defines
    /// constraints. Zero means feasible.
    pub fn violation(&self, position: &[f64]) -> Option<f64> {
        self.violation.as_ref().map(|v| v(position))
    }
}

impl std::fmt::Debug for Problem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Problem")
            .field("name", &self.name)
            .field("dimension", &self.dimension())
            .finish()
    }
}

/// Minimum population able to seat three leaders plus one follower.
pub const MIN_POPULATION: usize = 4;

/// Draws `n` agents uniformly inside the problem bounds, fitness stale.
///
/// Draw order: agent-major, dimension-minor (`n * dimension` draws total);
/// component `d` is uniform in `[lower[d], upper[d])`.
pub fn random_population<R: UniformSource>(
    n: usize,
    problem: &Problem,
    rng: &mut R,
) -> Result<Vec<SearchAgent>> {
    if n < MIN_POPULATION {
        return Err(Error::InvalidConfig(format!(
            "population size {n} is below the minimum of {MIN_POPULATION}"
        )));
    }
    let bounds = problem.bounds();
    let population = (0..n)
        .map(|_| {
            let position = bounds
                .lower()
                .iter()
                .zip(bounds.upper())
                .map(|(lo, hi)| rng.uniform_in(*lo, *hi))
                .collect();
            SearchAgent::new(position)
        })
        .collect();
    Ok(population)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::RandomStream;
    use proptest::prelude::*;

    fn unit_problem(bounds: Bounds) -> Problem {
        Problem::new("unit", bounds, |x| x.iter().map(|v| v * v).sum())
    }

    #[test]
    fn clamp_saturates_upper() {
        let b = Bounds::new(vec![0.0], vec![2.0]).unwrap();
        assert_eq!(clamp(&[3.0], &b), vec![2.0]);
    }

    #[test]
    fn clamp_keeps_interior_point() {
        let b = Bounds::new(vec![0.0], vec![2.0]).unwrap();
        assert_eq!(clamp(&[1.0], &b), vec![1.0]);
    }

    #[test]
    fn clamp_saturates_both_ends() {
        let b = Bounds::new(vec![0.0, 10.0], vec![99.0, 200.0]).unwrap();
        assert_eq!(clamp(&[-5.0, 250.0], &b), vec![0.0, 200.0]);
    }

    #[test]
    #[should_panic(expected = "clamp: position dimension")]
    fn clamp_rejects_dimension_mismatch() {
        let b = Bounds::new(vec![0.0], vec![2.0]).unwrap();
        clamp(&[1.0, 2.0], &b);
    }

    #[test]
    fn bounds_reject_inverted_limits() {
        assert!(Bounds::new(vec![1.0], vec![1.0]).is_err());
        assert!(Bounds::new(vec![2.0], vec![1.0]).is_err());
        assert!(Bounds::new(vec![], vec![]).is_err());
        assert!(Bounds::new(vec![0.0], vec![1.0, 2.0]).is_err());
    }

    #[test]
    fn population_is_reproducible() {
        let p = unit_problem(Bounds::symmetric(5, -3.0, 7.0).unwrap());
        let a = random_population(30, &p, &mut RandomStream::new(99)).unwrap();
        let b = random_population(30, &p, &mut RandomStream::new(99)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn population_respects_bounds() {
        let p = unit_problem(Bounds::symmetric(3, 0.0, 2.0).unwrap());
        let pop = random_population(30, &p, &mut RandomStream::new(5)).unwrap();
        for agent in &pop {
            for x in agent.position() {
                assert!((0.0..2.0).contains(x));
            }
            assert!(agent.fitness().is_none());
        }
    }

    #[test]
    fn population_below_minimum_is_rejected() {
        let p = unit_problem(Bounds::symmetric(2, 0.0, 1.0).unwrap());
        assert!(matches!(
            random_population(3, &p, &mut RandomStream::new(0)),
            Err(Error::InvalidConfig(_))
        ));
    }

    #[test]
    fn set_position_marks_fitness_stale() {
        let mut agent = SearchAgent::new(vec![1.0]);
        agent.set_fitness(4.0);
        assert_eq!(agent.fitness(), Some(4.0));
        agent.set_position(vec![2.0]);
        assert_eq!(agent.fitness(), None);
    }

    proptest! {
        #[test]
        fn clamp_is_idempotent(xs in proptest::collection::vec(-1e6f64..1e6, 1..8)) {
            let dim = xs.len();
            let b = Bounds::symmetric(dim, -10.0, 10.0).unwrap();
            let once = clamp(&xs, &b);
            let twice = clamp(&once, &b);
            prop_assert_eq!(once, twice);
        }

        #[test]
        fn clamp_output_is_in_bounds(xs in proptest::collection::vec(-1e12f64..1e12, 1..8)) {
            let b = Bounds::symmetric(xs.len(), -5.0, 5.0).unwrap();
            prop_assert!(b.contains(&clamp(&xs, &b)));
        }
    }
}
