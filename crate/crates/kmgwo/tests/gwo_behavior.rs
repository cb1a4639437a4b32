//! End-to-end behavior of the plain optimizer: convergence depth against a
//! random-search yardstick, determinism, and the draw-count contract.

use kmgwo::gwo::{self, GwoParams};
use kmgwo::problems;
use kmgwo::rng::{RandomStream, UniformSource};
use kmgwo::space::random_population;

struct Counting<'a> {
    draws: &'a mut u64,
    inner: RandomStream,
}

impl UniformSource for Counting<'_> {
    fn uniform01(&mut self) -> f64 {
        *self.draws += 1;
        self.inner.uniform01()
    }
}

/// Best fitness of plain random search with the same evaluation budget.
fn random_search_best(dim: usize, evaluations: usize, seed: u64) -> f64 {
    let problem = problems::sphere(dim);
    let mut rng = RandomStream::new(seed);
    let mut best = f64::INFINITY;
    for _ in 0..evaluations {
        let x: Vec<f64> = (0..dim).map(|_| rng.uniform_in(-100.0, 100.0)).collect();
        best = best.min(problem.evaluate(&x));
    }
    best
}

#[test]
fn sphere_converges_far_beyond_random_search() {
    let problem = problems::sphere(10);
    let params = GwoParams {
        population_size: 30,
        max_iterations: 500,
        seed: 42,
        ..GwoParams::default()
    };
    let record = gwo::run(&problem, &params).unwrap();
    let best = record.final_best.evaluated_fitness();
    assert!(best <= 1e-10, "sphere best {best} above 1e-10");

    // Same budget of 30 * 501 evaluations: random search stays many orders
    // of magnitude away from the optimum.
    let budget = 30 * 501;
    for seed in [1, 2, 3] {
        let yardstick = random_search_best(10, budget, seed);
        assert!(
            yardstick >= 1e-1,
            "random search unexpectedly reached {yardstick}"
        );
    }
}

#[test]
fn identical_runs_are_bit_identical() {
    let problem = problems::sphere(6);
    let params = GwoParams {
        population_size: 12,
        max_iterations: 120,
        seed: 987,
        ..GwoParams::default()
    };
    let a = gwo::run(&problem, &params).unwrap();
    let b = gwo::run(&problem, &params).unwrap();
    assert!(a.same_result(&b));
    assert_eq!(a.evaluations, 12 * 121);
}

#[test]
fn position_updates_consume_six_draws_per_dimension_per_agent() {
    let dim = 7;
    let agents = 9;
    let iterations = 11;
    let problem = problems::sphere(dim);

    let mut rng = RandomStream::new(5);
    let population = random_population(agents, &problem, &mut rng).unwrap();

    let mut draws = 0;
    let mut counting = Counting {
        draws: &mut draws,
        inner: rng,
    };
    gwo::optimize_population(&problem, population, &mut counting, iterations, 2.0).unwrap();
    assert_eq!(draws, (6 * dim * agents * iterations) as u64);
}

#[test]
fn monotone_convergence_across_seeds() {
    let problem = problems::sphere(8);
    for seed in 0..20 {
        let params = GwoParams {
            population_size: 10,
            max_iterations: 60,
            seed,
            ..GwoParams::default()
        };
        let record = gwo::run(&problem, &params).unwrap();
        assert!(record.is_monotone_nonincreasing(), "seed {seed} regressed");
        assert!(problem.bounds().contains(record.final_best.position()));
    }
}
