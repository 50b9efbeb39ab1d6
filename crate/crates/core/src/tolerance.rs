use serde::{Deserialize, Serialize};

use crate::error::{NormError, Result};

/// Numeric slack used by every comparison in the crate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ToleranceConfig {
    /// Relative slack for membership in a face (argmax ties).
    pub face: f64,
    /// Slack for norm equalities.
    pub norm: f64,
    /// A point counts as approximately smooth when `diam J(x) <= 2 - strict`.
    pub strict: f64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        Self {
            face: 1e-9,
            norm: 1e-9,
            strict: 1e-9,
        }
    }
}

impl ToleranceConfig {
    pub fn new(face: f64, norm: f64, strict: f64) -> Result<Self> {
        let tol = Self { face, norm, strict };
        tol.validate()?;
        Ok(tol)
    }

    /// Same value for every field.
    pub fn uniform(tol: f64) -> Result<Self> {
        Self::new(tol, tol, tol)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("face", self.face), ("norm", self.norm), ("strict", self.strict)] {
            if !(v > 0.0 && v < 1e-3) {
                return Err(NormError::InvalidInput(format!(
                    "tolerance `{name}` must lie in (0, 1e-3), got {v}"
                )));
            }
        }
        Ok(())
    }
}
