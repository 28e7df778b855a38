//! Numerical tolerances shared by every module.

use crate::error::{Error, Result};

/// Guard for relative-slack denominators, so that `0 ≤ 0` passes.
pub const SLACK_FLOOR: f64 = 1e-300;

/// Relative slack below which a failure counts as a genuine violation rather
/// than a tolerance-level miss.
pub const VIOLATION_REL: f64 = 1e-6;

/// Tolerances for decompositions, inequality verdicts and equality
/// certification.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(default))]
pub struct ToleranceProfile {
    /// Relative residual allowed for decompositions and class predicates.
    pub decomposition: f64,
    /// A check passes when `rel_slack ≥ -slack_rel`.
    pub slack_rel: f64,
    /// An equality case is certified when `|rel_slack| ≤ equality_rel`.
    pub equality_rel: f64,
}

impl Default for ToleranceProfile {
    fn default() -> Self {
        Self { decomposition: 1e-10, slack_rel: 1e-9, equality_rel: 1e-8 }
    }
}

impl ToleranceProfile {
    /// Checks positivity and `slack_rel ≥ decomposition`.
    ///
    /// A zero `slack_rel` is accepted so that campaigns can be run with no
    /// rounding allowance at all.
    pub fn validate(&self) -> Result<()> {
        let finite = self.decomposition.is_finite()
            && self.slack_rel.is_finite()
            && self.equality_rel.is_finite();
        if !finite || self.decomposition <= 0.0 || self.equality_rel <= 0.0 || self.slack_rel < 0.0 {
            return Err(Error::InvalidParameter("tolerances must be finite and positive"));
        }
        if self.slack_rel > 0.0 && self.slack_rel < self.decomposition {
            return Err(Error::InvalidParameter("slack_rel must not be below the decomposition tolerance"));
        }
        Ok(())
    }
}
