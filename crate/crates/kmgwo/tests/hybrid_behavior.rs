//! Cross-algorithm behavior of the hybrid: the GWO reduction under a forced
//! gate, and convergence parity on a convex bowl.

use kmgwo::gwo::{self, GwoParams};
use kmgwo::hybrid::{self, GateOverride, KmgwoParams};
use kmgwo::problems;
use kmgwo::rng::{RandomStream, UniformSource};
use kmgwo::space::random_population;

fn params(seed: u64, population: usize, iterations: usize) -> KmgwoParams {
    KmgwoParams {
        gwo: GwoParams {
            population_size: population,
            max_iterations: iterations,
            seed,
            ..GwoParams::default()
        },
        ..KmgwoParams::default()
    }
}

#[test]
fn gate_off_reduces_to_gwo_across_seeds() {
    let problem = problems::sphere(5);
    for seed in 0..10 {
        let mut p = params(seed, 12, 40);
        p.gate_override = Some(GateOverride::NoCluster);
        let (km_record, _) = hybrid::run(&problem, &p).unwrap();

        // Documented draw order: init draws, k + 1 skipped draws, loop.
        let mut rng = RandomStream::new(seed);
        let population = random_population(12, &problem, &mut rng).unwrap();
        rng.skip(p.k + 1);
        let gwo_record = gwo::optimize_population(&problem, population, &mut rng, 40, 2.0).unwrap();
        assert!(
            km_record.same_result(&gwo_record),
            "reduction failed for seed {seed}"
        );
    }
}

#[test]
fn hybrid_does_not_regress_catastrophically_on_the_sphere() {
    // Paired 30-seed comparison on the 10-D sphere. Both optimizers drive
    // the mean final fitness far below the 1e-10 convergence bar; the
    // hybrid's smaller post-gate population only shallows the exponential
    // rate, it never stalls.
    let problem = problems::sphere(10);
    let mut gwo_finals = Vec::new();
    let mut km_finals = Vec::new();
    for seed in 0..30 {
        let p = params(seed, 30, 500);
        gwo_finals.push(
            gwo::run(&problem, &p.gwo)
                .unwrap()
                .final_best
                .evaluated_fitness(),
        );
        km_finals.push(
            hybrid::run(&problem, &p)
                .unwrap()
                .0
                .final_best
                .evaluated_fitness(),
        );
    }
    let gwo_mean = gwo_finals.iter().sum::<f64>() / gwo_finals.len() as f64;
    let km_mean = km_finals.iter().sum::<f64>() / km_finals.len() as f64;
    assert!(gwo_mean <= 1e-10, "gwo mean {gwo_mean}");
    assert!(km_mean <= 1e-10, "kmgwo mean {km_mean}");
}

#[test]
fn clustering_runs_once_before_the_loop() {
    // The gate plus k-means draws happen before any loop draw: two hybrid
    // runs differing only in iteration count share the same gate trace.
    let problem = problems::sphere(4);
    let (_, short_trace) = hybrid::run(&problem, &params(7, 10, 5)).unwrap();
    let (_, long_trace) = hybrid::run(&problem, &params(7, 10, 50)).unwrap();
    assert_eq!(
        short_trace.gate_draw.to_bits(),
        long_trace.gate_draw.to_bits()
    );
    assert_eq!(short_trace.decision, long_trace.decision);
    assert_eq!(short_trace.selected_size, long_trace.selected_size);
}
