use serde::{Deserialize, Serialize};

use crate::error::{input, Result};
use crate::kernel::{BallFamily, QuasiRoundSet};

/// Parameters of a seeded annealing search.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SearchConfig {
    pub seed: u64,
    /// Total number of proposals, shared evenly by the restarts.
    pub budget: u64,
    pub restarts: u32,
    /// Initial temperature, in units of the typical radius.
    pub t0: f64,
    /// Per-proposal temperature factor.
    pub decay: f64,
    /// Proposal step, relative to the radius of the moved ball.
    pub perturbation: f64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { seed: 0, budget: 100_000, restarts: 8, t0: 0.02, decay: 0.999, perturbation: 0.1 }
    }
}

impl SearchConfig {
    pub fn with_seed(seed: u64) -> Self {
        SearchConfig { seed, ..Self::default() }
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.budget < 1 {
            return input("budget must be at least 1");
        }
        if self.restarts < 1 {
            return input("restarts must be at least 1");
        }
        if !(self.decay > 0.0 && self.decay < 1.0) {
            return input(format!("decay must lie in (0, 1), got {}", self.decay));
        }
        if !(self.t0.is_finite() && self.t0 >= 0.0) {
            return input(format!("initial temperature must be finite and nonnegative, got {}", self.t0));
        }
        if !(self.perturbation.is_finite() && self.perturbation > 0.0) {
            return input(format!("perturbation must be positive, got {}", self.perturbation));
        }
        Ok(())
    }
}

/// Best configuration found by a search.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchResult {
    pub best: BallFamily,
    /// Size of `best`.
    pub score: usize,
    /// `best` passed its validator when the search returned.
    pub feasible: bool,
    /// Best score of every restart.
    pub trace: Vec<usize>,
    /// Quasi-round sets of a satellite search (`best` holds their inner balls).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sets: Option<Vec<QuasiRoundSet>>,
}
