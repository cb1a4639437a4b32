//! KMGWO: K-means population selection in front of the grey wolf optimizer.
//!
//! The initialized population is split into two clusters. A single gate draw
//! then decides whether the run proceeds on the fitter cluster or on the full
//! population, after which the standard GWO loop runs unchanged.
//!
//! Draw-order contract (one stream, in order):
//!
//! 1. population initialization — `population_size * dimension` draws
//! 2. K-means initialization — exactly `k` draws
//! 3. the gate — exactly 1 draw, consumed on every branch
//! 4. the GWO iteration loop
//!
//! Forcing the gate off therefore reproduces plain GWO exactly: a GWO loop
//! started from the same initialized population, with the stream advanced by
//! `k + 1` draws, yields a bit-identical run record.

use std::time::Instant;

use crate::gwo::{self, GwoParams, RunRecord};
use crate::kmeans;
use crate::rng::{RandomStream, UniformSource};
use crate::space::{random_population, Problem, SearchAgent, MIN_POPULATION};
use crate::{Error, Result};

/// How a cluster's collective fitness is scored.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ClusterFitness {
    /// Best (minimum) member fitness. Matches the leader mechanism.
    #[default]
    Min,
    /// Mean member fitness.
    Mean,
}

/// Forces the gate decision, for experiments and tests. The gate draw is
/// still consumed so the stream stays aligned with unforced runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GateOverride {
    ClusterSelect,
    NoCluster,
}

/// Outcome of the population-selection gate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GateDecision {
    TookCluster1,
    TookCluster2,
    KeptFullPopulation,
    /// The winning cluster was too small to seat the leader hierarchy; the
    /// run fell back to the full population.
    GuardFallback,
}

/// Record of what the gate saw and decided.
#[derive(Debug, Clone)]
pub struct GateTrace {
    pub gate_draw: f64,
    pub fitness_c1: f64,
    pub fitness_c2: f64,
    pub decision: GateDecision,
    pub selected_size: usize,
}

impl GateTrace {
    /// True when the run proceeded on a selected cluster.
    pub fn selected_cluster(&self) -> bool {
        matches!(
            self.decision,
            GateDecision::TookCluster1 | GateDecision::TookCluster2
        )
    }
}

/// Parameters of a KMGWO run.
#[derive(Debug, Clone)]
pub struct KmgwoParams {
    pub gwo: GwoParams,
    /// Number of clusters; the gate protocol is two-cluster, so this is
    /// fixed at 2.
    pub k: usize,
    /// The gate selects a cluster when the draw exceeds this (strictly).
    pub gate_threshold: f64,
    /// Smallest cluster the run may shrink to; below it the full population
    /// is kept.
    pub min_selected_size: usize,
    pub gate_override: Option<GateOverride>,
    pub cluster_fitness: ClusterFitness,
}

impl Default for KmgwoParams {
    fn default() -> Self {
        Self {
            gwo: GwoParams::default(),
            k: 2,
            gate_threshold: 0.5,
            min_selected_size: MIN_POPULATION,
            gate_override: None,
            cluster_fitness: ClusterFitness::Min,
        }
    }
}

impl KmgwoParams {
    pub fn validate(&self) -> Result<()> {
        self.gwo.validate()?;
        if self.k != 2 {
            return Err(Error::InvalidConfig(format!(
                "the selection gate is defined over exactly 2 clusters, got k = {}",
                self.k
            )));
        }
        if !(0.0..=1.0).contains(&self.gate_threshold) {
            return Err(Error::InvalidConfig(format!(
                "gate_threshold {} outside [0, 1]",
                self.gate_threshold
            )));
        }
        if self.min_selected_size < MIN_POPULATION {
            return Err(Error::InvalidConfig(format!(
                "min_selected_size {} is below the minimum population of {MIN_POPULATION}",
                self.min_selected_size
            )));
        }
        Ok(())
    }
}

/// Iteration cap for the population clustering; Lloyd converges in a handful
/// of rounds on populations this small.
pub const KMEANS_MAX_ITERATIONS: usize = 100;

/// Collective fitness of a cluster.
///
/// # Panics
///
/// Panics on an empty member list or stale fitness.
pub fn cluster_fitness(members: &[SearchAgent], mode: ClusterFitness) -> f64 {
    assert!(!members.is_empty(), "cluster fitness of an empty cluster");
    let values = members.iter().map(SearchAgent::evaluated_fitness);
    match mode {
        ClusterFitness::Min => values.fold(f64::INFINITY, f64::min),
        ClusterFitness::Mean => values.sum::<f64>() / members.len() as f64,
    }
}

/// Clusters the population and applies the selection gate.
///
/// Positions are never modified; the returned population is either the full
/// input or the members of the fitter cluster. Requires every agent to carry
/// fresh fitness. Consumes exactly `k` draws for clustering plus one gate
/// draw, on every branch.
pub fn select_initial_population<R: UniformSource>(
    population: Vec<SearchAgent>,
    params: &KmgwoParams,
    rng: &mut R,
) -> (Vec<SearchAgent>, GateTrace) {
    assert!(population.len() >= MIN_POPULATION);
    let positions: Vec<Vec<f64>> = population
        .iter()
        .map(|agent| agent.position().to_vec())
        .collect();
    let clustering = kmeans::lloyd(&positions, params.k, rng, KMEANS_MAX_ITERATIONS)
        .expect("population size was validated against k");

    let mut cluster1 = Vec::new();
    let mut cluster2 = Vec::new();
    for (agent, &label) in population.iter().zip(&clustering.assignments) {
        if label == 0 {
            cluster1.push(agent.clone());
        } else {
            cluster2.push(agent.clone());
        }
    }

    let fitness_c1 = cluster_fitness(&cluster1, params.cluster_fitness);
    let fitness_c2 = cluster_fitness(&cluster2, params.cluster_fitness);

    let gate_draw = rng.uniform01();
    let select = match params.gate_override {
        Some(GateOverride::ClusterSelect) => true,
        Some(GateOverride::NoCluster) => false,
        None => gate_draw > params.gate_threshold,
    };

    if !select {
        let selected_size = population.len();
        return (
            population,
            GateTrace {
                gate_draw,
                fitness_c1,
                fitness_c2,
                decision: GateDecision::KeptFullPopulation,
                selected_size,
            },
        );
    }

    // Strictly smaller wins; an exact tie goes to cluster 1.
    let (winner, decision) = if fitness_c2 < fitness_c1 {
        (cluster2, GateDecision::TookCluster2)
    } else {
        (cluster1, GateDecision::TookCluster1)
    };

    if winner.len() < params.min_selected_size {
        let selected_size = population.len();
        return (
            population,
            GateTrace {
                gate_draw,
                fitness_c1,
                fitness_c2,
                decision: GateDecision::GuardFallback,
                selected_size,
            },
        );
    }

    let selected_size = winner.len();
    (
        winner,
        GateTrace {
            gate_draw,
            fitness_c1,
            fitness_c2,
            decision,
            selected_size,
        },
    )
}

/// One full KMGWO run: initialization, one clustering pass, the gate, then
/// the standard GWO loop on whatever population survived.
///
/// Objective evaluations total `population_size` for the initial pass plus
/// `selected_size * max_iterations` for the loop.
pub fn run(problem: &Problem, params: &KmgwoParams) -> Result<(RunRecord, GateTrace)> {
    params.validate()?;
    let started = Instant::now();
    let mut rng = RandomStream::new(params.gwo.seed);

    let mut population = random_population(params.gwo.population_size, problem, &mut rng)?;
    let mut initial_evaluations: u64 = 0;
    for (idx, agent) in population.iter_mut().enumerate() {
        let fitness = problem.evaluate(agent.position());
        initial_evaluations += 1;
        if fitness.is_nan() {
            return Err(Error::NonFiniteFitness {
                iteration: 0,
                agent: idx,
            });
        }
        agent.set_fitness(fitness);
    }

    let (selected, trace) = select_initial_population(population, params, &mut rng);

    let mut record = gwo::optimize_population(
        problem,
        selected,
        &mut rng,
        params.gwo.max_iterations,
        params.gwo.a_initial,
    )?;
    record.evaluations += initial_evaluations;
    record.wall_time = started.elapsed();
    Ok((record, trace))
}
