//! Exact symbolic solving of autonomous algebraic ODE systems.

pub mod algsolve;
pub mod cli;
pub mod diff_ring;
pub mod error;
pub mod poly;
pub mod puiseux;
pub mod solver;
pub mod systems;
pub mod thomas;

pub use error::{Error, Result};
pub use poly::factor::Limits;

/// Limits shared by every stage of the solver.
#[derive(Clone, Debug)]
pub struct Config {
    pub limits: Limits,
    /// Bound on decomposition steps.
    pub fuel: usize,
    /// Seed for randomized factorization.
    pub seed: u64,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            limits: Limits::default(),
            fuel: 10_000,
            seed: 0x5eed,
        }
    }
}
