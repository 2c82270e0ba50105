//! Directed and undirected random graph models, the forgetful map between
//! them, exact distributions on small vertex sets, location couplings with
//! error accounting, and a seeded Monte Carlo harness.

pub mod coupling;
pub mod error;
pub mod exact;
pub mod graph;
pub mod models;
pub mod montecarlo;
pub mod numeric;
pub mod rng;

pub use error::{Error, Result};
