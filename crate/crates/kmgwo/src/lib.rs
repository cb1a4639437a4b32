//! Grey wolf optimizer (GWO), K-means clustering, and the KMGWO hybrid.
//!
//! Everything in this crate is deterministic given a seed: each run owns an
//! explicit [`rng::RandomStream`] and the order in which uniform draws are
//! consumed is part of the documented contract of every algorithm. Two runs
//! with the same problem, parameters, and seed produce bit-identical results.
//!
//! The crate is organized around the optimizers:
//!
//! - [`space`] — bounded search spaces, search agents, and problem definitions
//! - [`gwo`] — the canonical grey wolf optimizer
//! - [`kmeans`] — Lloyd's algorithm over agent positions
//! - [`hybrid`] — KMGWO: K-means population selection in front of GWO
//! - [`problems`] — the CEC2019 benchmark suite and the pressure vessel
//!   design problem

pub mod error;
pub mod gwo;
pub mod hybrid;
pub mod kmeans;
pub mod problems;
pub mod rng;
pub mod space;

pub use error::Error;
pub use rng::{RandomStream, UniformSource};
pub use space::{clamp, random_population, Bounds, Leaders, Problem, SearchAgent};

/// Convenience alias used across the crate.
pub type Result<T> = std::result::Result<T, Error>;
