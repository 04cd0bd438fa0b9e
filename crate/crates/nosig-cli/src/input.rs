//! Ensemble files: JSON with complex entries as `[re, im]` pairs and
//! matrices as row-major arrays of rows.
//!
//! ```json
//! {
//!   "dim": 2,
//!   "states": [
//!     { "prior": 0.5, "matrix": [[[1.0, 0.0], [0.0, 0.0]],
//!                                 [[0.0, 0.0], [0.0, 0.0]]] },
//!     { "prior": 0.5, "matrix": [[[0.0, 0.0], [0.0, 0.0]],
//!                                 [[0.0, 0.0], [1.0, 0.0]]] }
//!   ]
//! }
//! ```
//!
//! Parsing enforces every state invariant, naming the violated invariant
//! and the offending state index.

use anyhow::{anyhow, bail, Context, Result};
use serde::{Deserialize, Serialize};
use std::path::Path;

use nosig::{ComplexMatrix, DensityOperator, Ensemble};

#[derive(Debug, Serialize, Deserialize)]
pub struct EnsembleFile {
    pub dim: usize,
    pub states: Vec<StateEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct StateEntry {
    pub prior: f64,
    pub matrix: ComplexMatrix,
}

impl EnsembleFile {
    pub fn to_ensemble(&self) -> Result<Ensemble> {
        if self.states.len() < 2 {
            bail!("ensemble needs at least 2 states, found {}", self.states.len());
        }
        let mut members = Vec::with_capacity(self.states.len());
        for (index, entry) in self.states.iter().enumerate() {
            if entry.matrix.dim() != self.dim {
                bail!(
                    "state {index}: matrix dimension {} does not match header dim {}",
                    entry.matrix.dim(),
                    self.dim
                );
            }
            let state = DensityOperator::new(entry.matrix.clone())
                .map_err(|e| anyhow!("state {index}: {e}"))?;
            members.push((entry.prior, state));
        }
        Ensemble::new(members).map_err(|e| anyhow!("ensemble priors: {e}"))
    }
}

/// Read and validate an ensemble file.
pub fn load_ensemble(path: &Path) -> Result<Ensemble> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    let file: EnsembleFile = serde_json::from_str(&text)
        .with_context(|| format!("parsing {}", path.display()))?;
    file.to_ensemble()
        .with_context(|| format!("validating {}", path.display()))
}
