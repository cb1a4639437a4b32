//! Canonical grey wolf optimizer.
//!
//! The three best solutions (alpha, beta, delta) pull every agent toward a
//! stochastic neighborhood of each leader; the control scalar `a` decays
//! linearly from 2 to 0, shrinking exploration over the run.
//!
//! Determinism contract: within one iteration, agents are updated in index
//! order, and each agent consumes exactly 6 uniform draws per dimension
//! (an `(r1, r2)` pair per leader, in the order alpha, beta, delta,
//! dimension-major). One run therefore consumes exactly
//! `6 * dimension * population_size` draws per iteration.

use std::time::{Duration, Instant};

use crate::rng::{RandomStream, UniformSource};
use crate::space::{random_population, Leaders, Problem, SearchAgent, MIN_POPULATION};
use crate::{Error, Result};

/// Parameters of a GWO run.
#[derive(Debug, Clone)]
pub struct GwoParams {
    pub population_size: usize,
    pub max_iterations: usize,
    pub seed: u64,
    /// Start of the linear control schedule. 2.0 is the canonical value and
    /// the only one used by the benchmark protocols.
    pub a_initial: f64,
}

impl Default for GwoParams {
    fn default() -> Self {
        Self {
            population_size: 30,
            max_iterations: 500,
            seed: 0,
            a_initial: 2.0,
        }
    }
}

impl GwoParams {
    pub fn validate(&self) -> Result<()> {
        if self.population_size < MIN_POPULATION {
            return Err(Error::InvalidConfig(format!(
                "population_size {} is below the minimum of {MIN_POPULATION}",
                self.population_size
            )));
        }
        if self.max_iterations == 0 {
            return Err(Error::InvalidConfig(
                "max_iterations must be at least 1".into(),
            ));
        }
        if !(self.a_initial.is_finite() && self.a_initial > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "a_initial must be a positive finite number, got {}",
                self.a_initial
            )));
        }
        Ok(())
    }
}

/// Everything observable about one optimizer run.
#[derive(Debug, Clone)]
pub struct RunRecord {
    /// Alpha fitness after each iteration; nonincreasing because leaders are
    /// elitist.
    pub best_per_iteration: Vec<f64>,
    pub final_best: SearchAgent,
    /// Number of objective evaluations performed.
    pub evaluations: u64,
    /// Wall-clock time; informational only, excluded from equality.
    pub wall_time: Duration,
}

impl RunRecord {
    /// Bitwise equality of the deterministic payload (`wall_time` is
    /// measurement noise and is ignored).
    pub fn same_result(&self, other: &RunRecord) -> bool {
        self.evaluations == other.evaluations
            && self.best_per_iteration.len() == other.best_per_iteration.len()
            && self
                .best_per_iteration
                .iter()
                .zip(&other.best_per_iteration)
                .all(|(a, b)| a.to_bits() == b.to_bits())
            && self.final_best.position().len() == other.final_best.position().len()
            && self
                .final_best
                .position()
                .iter()
                .zip(other.final_best.position())
                .all(|(a, b)| a.to_bits() == b.to_bits())
            && self.final_best.evaluated_fitness().to_bits()
                == other.final_best.evaluated_fitness().to_bits()
    }

    pub fn is_monotone_nonincreasing(&self) -> bool {
        self.best_per_iteration.windows(2).all(|w| w[1] <= w[0])
    }
}

/// Linear control schedule: `2 * (1 - iteration / max_iterations)`.
///
/// # Panics
///
/// Panics if `iteration > max_iterations`.
pub fn update_a(iteration: usize, max_iterations: usize) -> f64 {
    assert!(max_iterations > 0, "max_iterations must be positive");
    assert!(
        iteration <= max_iterations,
        "iteration {iteration} exceeds max_iterations {max_iterations}"
    );
    2.0 * ((max_iterations - iteration) as f64 / max_iterations as f64)
}

/// Draws one `(A, C)` coefficient pair: `A = 2*a*r1 - a` in `[-a, a)` and
/// `C = 2*r2` in `[0, 2)`. Consumes exactly two uniform draws.
pub fn sample_coefficients<R: UniformSource>(a: f64, rng: &mut R) -> (f64, f64) {
    debug_assert!(
        (0.0..=2.0).contains(&a),
        "control scalar a={a} out of [0,2]"
    );
    let r1 = rng.uniform01();
    let r2 = rng.uniform01();
    (2.0 * a * r1 - a, 2.0 * r2)
}

/// Moves `x` toward the stochastic encirclement of the three leaders.
///
/// Per dimension `d` and leader `L`: `D_L = |C_L * X_L[d] - x[d]|`,
/// `X_L' = X_L[d] - A_L * D_L`; the result is the componentwise mean of the
/// three `X_L'`. Consumes exactly `6 * dimension` uniform draws in the fixed
/// order alpha, beta, delta within each dimension.
///
/// # Panics
///
/// Panics on dimension mismatch between `x` and any leader.
pub fn leader_guided_position<R: UniformSource>(
    x: &[f64],
    leaders: &Leaders,
    a: f64,
    rng: &mut R,
) -> Vec<f64> {
    let dim = x.len();
    for leader in [&leaders.alpha, &leaders.beta, &leaders.delta] {
        assert_eq!(
            leader.position().len(),
            dim,
            "leader dimension {} does not match agent dimension {dim}",
            leader.position().len()
        );
    }
    let mut next = Vec::with_capacity(dim);
    for (d, &component) in x.iter().enumerate() {
        let mut sum = 0.0;
        for leader in [&leaders.alpha, &leaders.beta, &leaders.delta] {
            let (coef_a, coef_c) = sample_coefficients(a, rng);
            let lead = leader.position()[d];
            let dist = (coef_c * lead - component).abs();
            sum += lead - coef_a * dist;
        }
        next.push(sum / 3.0);
    }
    next
}

/// Folds a population into the leader hierarchy.
///
/// Each agent is compared against alpha, then beta, then delta; a strictly
/// better agent displaces the leader and shifts the worse ones down. Ties
/// keep the incumbent. Leaders persist across calls, so alpha never worsens.
///
/// # Panics
///
/// Panics if any agent's fitness is stale.
pub fn update_leaders(population: &[SearchAgent], leaders: &mut Leaders) {
    for agent in population {
        let fitness = agent.evaluated_fitness();
        if fitness < leaders.alpha.evaluated_fitness() {
            leaders.delta = leaders.beta.clone();
            leaders.beta = leaders.alpha.clone();
            leaders.alpha = agent.clone();
        } else if fitness < leaders.beta.evaluated_fitness() {
            leaders.delta = leaders.beta.clone();
            leaders.beta = agent.clone();
        } else if fitness < leaders.delta.evaluated_fitness() {
            leaders.delta = agent.clone();
        }
    }
    debug_assert!(leaders.is_ordered());
}

/// Runs the GWO iteration loop on an existing population.
///
/// Stale agents are evaluated first (the initial fitness pass), leaders are
/// filled from the population, then `max_iterations` sweeps of
/// {move, clamp, evaluate, update leaders} run with the control scalar at
/// `a_initial * (max_iterations - i) / max_iterations` for sweep `i`.
///
/// This is the shared engine behind [`run`] and the KMGWO hybrid; callers
/// control everything that happened to the stream and the population
/// beforehand.
pub fn optimize_population<R: UniformSource>(
    problem: &Problem,
    mut population: Vec<SearchAgent>,
    rng: &mut R,
    max_iterations: usize,
    a_initial: f64,
) -> Result<RunRecord> {
    if population.len() < MIN_POPULATION {
        return Err(Error::InvalidConfig(format!(
            "population of {} cannot seat three leaders plus a follower",
            population.len()
        )));
    }
    if max_iterations == 0 {
        return Err(Error::InvalidConfig(
            "max_iterations must be at least 1".into(),
        ));
    }
    let dim = problem.dimension();
    for agent in &population {
        assert_eq!(
            agent.position().len(),
            dim,
            "agent dimension {} does not match problem dimension {dim}",
            agent.position().len()
        );
    }

    let started = Instant::now();
    let mut evaluations: u64 = 0;

    for (idx, agent) in population.iter_mut().enumerate() {
        if agent.fitness().is_none() {
            let fitness = problem.evaluate(agent.position());
            evaluations += 1;
            if fitness.is_nan() {
                return Err(Error::NonFiniteFitness {
                    iteration: 0,
                    agent: idx,
                });
            }
            agent.set_fitness(fitness);
        }
    }

    let mut leaders = Leaders::sentinel(dim);
    update_leaders(&population, &mut leaders);

    let mut best_per_iteration = Vec::with_capacity(max_iterations);
    for iteration in 0..max_iterations {
        let a = a_initial * ((max_iterations - iteration) as f64 / max_iterations as f64);

        for agent in population.iter_mut() {
            let mut next = leader_guided_position(agent.position(), &leaders, a, rng);
            problem.bounds().clamp_in_place(&mut next);
            agent.set_position(next);
        }
        for (idx, agent) in population.iter_mut().enumerate() {
            let fitness = problem.evaluate(agent.position());
            evaluations += 1;
            if fitness.is_nan() {
                return Err(Error::NonFiniteFitness {
                    iteration: iteration + 1,
                    agent: idx,
                });
            }
            agent.set_fitness(fitness);
        }
        update_leaders(&population, &mut leaders);
        best_per_iteration.push(leaders.alpha.evaluated_fitness());
    }

    Ok(RunRecord {
        best_per_iteration,
        final_best: leaders.alpha,
        evaluations,
        wall_time: started.elapsed(),
    })
}

/// One full GWO run: seeded initialization followed by the iteration loop.
///
/// Objective evaluations total `population_size * (max_iterations + 1)`.
pub fn run(problem: &Problem, params: &GwoParams) -> Result<RunRecord> {
    params.validate()?;
    let started = Instant::now();
    let mut rng = RandomStream::new(params.seed);
    let population = random_population(params.population_size, problem, &mut rng)?;
    let mut record = optimize_population(
        problem,
        population,
        &mut rng,
        params.max_iterations,
        params.a_initial,
    )?;
    record.wall_time = started.elapsed();
    Ok(record)
}
