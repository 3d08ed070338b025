use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Rounds over which the plateau detector measures relative improvement.
pub const PLATEAU_WINDOW: usize = 50;
/// Relative improvement below which the plateau detector stops training.
pub const PLATEAU_TOLERANCE: f64 = 1e-7;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Hyperparams {
    /// Step size of each unitary update.
    pub epsilon: f64,
    /// Scale of the update matrices.
    pub eta: f64,
    /// Weight of the graph loss; must be non-positive.
    pub gamma_graph: f64,
    pub rounds: usize,
    pub shots: usize,
    pub seed: u64,
    /// Stop early once the combined loss stops improving. Off by default.
    #[serde(default)]
    pub stop_on_plateau: bool,
}

impl Default for Hyperparams {
    fn default() -> Self {
        Self {
            epsilon: 0.01,
            eta: 1.0,
            gamma_graph: 0.0,
            rounds: 1000,
            shots: 30,
            seed: 0,
            stop_on_plateau: false,
        }
    }
}

impl Hyperparams {
    pub fn validate(&self) -> Result<()> {
        if !(self.epsilon.is_finite() && self.epsilon > 0.0) {
            return Err(Error::InvalidHyperparams(format!("epsilon must be > 0, got {}", self.epsilon)));
        }
        if !(self.eta.is_finite() && self.eta > 0.0) {
            return Err(Error::InvalidHyperparams(format!("eta must be > 0, got {}", self.eta)));
        }
        if !(self.gamma_graph.is_finite() && self.gamma_graph <= 0.0) {
            return Err(Error::InvalidHyperparams(format!(
                "gamma_graph must be <= 0, got {}",
                self.gamma_graph
            )));
        }
        if self.shots == 0 {
            return Err(Error::InvalidHyperparams("shots must be at least 1".into()));
        }
        Ok(())
    }

    pub fn with_gamma(&self, gamma_graph: f64) -> Self {
        Self {
            gamma_graph,
            ..self.clone()
        }
    }
}
