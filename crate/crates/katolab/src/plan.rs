use std::path::Path;

use katolab_core::registry::{checker_ids, checker_index};
use katolab_core::trace_suite::AlphaGrid;
use katolab_core::ToleranceProfile;
use serde::{Deserialize, Serialize};

use crate::ConfigError;

/// Largest supported dimension.
pub const MAX_DIM: usize = 512;

/// Seed used when neither the command line, `KTL_SEED` nor a config file
/// supplies one.
pub const DEFAULT_SEED: u64 = 42;

/// Environment variable overriding the plan seed; `--seed` wins over it.
pub const SEED_ENV: &str = "KTL_SEED";

/// A campaign: which checkers to run, at which dimensions, how often.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TrialPlan {
    pub seed: u64,
    pub dims: Vec<usize>,
    pub trials_per_cell: u64,
    pub alpha_grid: AlphaGrid,
    /// Checker ids; empty means every registered checker.
    pub checkers: Vec<String>,
    pub tolerance: ToleranceProfile,
}

impl Default for TrialPlan {
    fn default() -> Self {
        Self {
            seed: DEFAULT_SEED,
            dims: (1..=8).collect(),
            trials_per_cell: 200,
            alpha_grid: AlphaGrid::default(),
            checkers: Vec::new(),
            tolerance: ToleranceProfile::default(),
        }
    }
}

impl TrialPlan {
    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        let plan: TrialPlan = serde_json::from_str(text)?;
        plan.validate()?;
        Ok(plan)
    }

    pub fn from_file(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|e| ConfigError::Io(path.display().to_string(), e))?;
        Self::from_json(&text)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.dims.is_empty() {
            return Err(ConfigError::Invalid("dims must not be empty".into()));
        }
        if let Some(&n) = self.dims.iter().find(|&&n| !(1..=MAX_DIM).contains(&n)) {
            return Err(ConfigError::Invalid(format!("dimension {n} outside 1..={MAX_DIM}")));
        }
        if self.trials_per_cell == 0 {
            return Err(ConfigError::Invalid("trials_per_cell must be at least 1".into()));
        }
        for id in &self.checkers {
            checker_index(id)?;
        }
        self.tolerance.validate()?;
        Ok(())
    }

    /// Checker ids in run order.
    pub fn checker_list(&self) -> Vec<String> {
        if self.checkers.is_empty() {
            checker_ids().map(String::from).collect()
        } else {
            self.checkers.clone()
        }
    }
}

pub fn parse_seed(text: &str) -> Result<u64, ConfigError> {
    text.trim().parse().map_err(|_| ConfigError::Invalid(format!("seed `{text}` is not a 64-bit unsigned integer")))
}

/// Parses `1,2,5` or ranges such as `1..8` and `1-8` (inclusive).
pub fn parse_dims(text: &str) -> Result<Vec<usize>, ConfigError> {
    let bad = || ConfigError::Invalid(format!("cannot parse dimension list `{text}`"));
    let mut out = Vec::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let range = part.split_once("..=").or_else(|| part.split_once("..")).or_else(|| part.split_once('-'));
        match range {
            Some((lo, hi)) => {
                let lo: usize = lo.trim().parse().map_err(|_| bad())?;
                let hi: usize = hi.trim().parse().map_err(|_| bad())?;
                if lo > hi {
                    return Err(bad());
                }
                out.extend(lo..=hi);
            }
            None => out.push(part.parse().map_err(|_| bad())?),
        }
    }
    if out.is_empty() {
        return Err(bad());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_plan_is_valid() {
        TrialPlan::default().validate().unwrap();
        assert_eq!(TrialPlan::default().checker_list().len(), katolab_core::registry::CHECKERS.len());
    }

    #[test]
    fn json_round_trip_and_defaults() {
        let plan = TrialPlan { dims: vec![1, 3], checkers: vec!["kato".into()], ..TrialPlan::default() };
        let text = serde_json::to_string(&plan).unwrap();
        assert_eq!(TrialPlan::from_json(&text).unwrap(), plan);
        let partial = TrialPlan::from_json(r#"{"seed": 7, "dims": [2]}"#).unwrap();
        assert_eq!((partial.seed, partial.trials_per_cell), (7, 200));
    }

    #[test]
    fn invalid_plans_are_rejected() {
        for text in [
            r#"{"dims": []}"#,
            r#"{"dims": [0]}"#,
            r#"{"dims": [513]}"#,
            r#"{"trials_per_cell": 0}"#,
            r#"{"checkers": ["nope"]}"#,
            r#"{"alpha_grid": [0.5, 0.2]}"#,
            r#"{"tolerance": {"slack_rel": -1}}"#,
            r#"{"unknown": 1}"#,
        ] {
            assert!(TrialPlan::from_json(text).is_err(), "{text}");
        }
    }

    #[test]
    fn dimension_lists() {
        assert_eq!(parse_dims("1..8").unwrap(), (1..=8).collect::<Vec<_>>());
        assert_eq!(parse_dims("1-3,7").unwrap(), vec![1, 2, 3, 7]);
        assert_eq!(parse_dims("4").unwrap(), vec![4]);
        assert!(parse_dims("3..1").is_err());
        assert!(parse_dims("x").is_err());
    }
}
