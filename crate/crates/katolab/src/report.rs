use std::borrow::Cow;
use std::collections::BTreeMap;
use std::path::Path;

use katolab_core::{Context, InequalityCheck};
use serde::{Deserialize, Serialize};

use crate::plan::TrialPlan;
use crate::{exit, ConfigError};

pub const TOOL: &str = "katolab";
pub const RNG: &str = "ChaCha20 (rand_chacha), 64-bit seed, per-trial stream index";

/// One evaluated inequality of a campaign.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub checker: Cow<'static, str>,
    pub name: Cow<'static, str>,
    pub context: Context,
    #[serde(with = "float")]
    pub lhs: f64,
    #[serde(with = "float")]
    pub rhs: f64,
    #[serde(with = "float")]
    pub slack: f64,
    #[serde(with = "float")]
    pub rel_slack: f64,
    #[serde(with = "float")]
    pub scale: f64,
    pub passed: bool,
}

impl Record {
    pub fn new(checker: impl Into<Cow<'static, str>>, check: InequalityCheck) -> Self {
        Self {
            checker: checker.into(),
            name: check.name,
            context: check.context,
            lhs: check.lhs,
            rhs: check.rhs,
            slack: check.slack,
            rel_slack: check.rel_slack,
            scale: check.scale,
            passed: check.passed,
        }
    }

    pub fn to_check(&self) -> InequalityCheck {
        InequalityCheck {
            name: self.name.clone(),
            lhs: self.lhs,
            rhs: self.rhs,
            slack: self.slack,
            rel_slack: self.rel_slack,
            scale: self.scale,
            passed: self.passed,
            context: self.context.clone(),
        }
    }

    pub fn is_violation(&self) -> bool {
        self.to_check().is_violation()
    }

    pub fn ratio(&self) -> Option<f64> {
        self.to_check().ratio()
    }
}

/// Numerical failure inside a cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorRecord {
    pub checker: String,
    pub n: usize,
    pub message: String,
}

/// Per-checker summary.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Aggregate {
    pub checker: String,
    pub checks: usize,
    pub passed: usize,
    pub violations: usize,
    pub skipped: usize,
    pub errors: usize,
    #[serde(with = "opt_float")]
    pub worst_rel_slack: Option<f64>,
    #[serde(with = "opt_float")]
    pub best_ratio: Option<f64>,
}

impl Aggregate {
    fn empty(checker: &str) -> Self {
        Self {
            checker: checker.to_owned(),
            checks: 0,
            passed: 0,
            violations: 0,
            skipped: 0,
            errors: 0,
            worst_rel_slack: None,
            best_ratio: None,
        }
    }

    fn add(&mut self, r: &Record) {
        self.checks += 1;
        self.passed += r.passed as usize;
        self.violations += r.is_violation() as usize;
        self.worst_rel_slack = Some(self.worst_rel_slack.map_or(r.rel_slack, |w| w.min(r.rel_slack)));
        if let Some(q) = r.ratio() {
            self.best_ratio = Some(self.best_ratio.map_or(q, |b| b.max(q)));
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub rng: String,
    pub plan: TrialPlan,
    pub runtime_seconds: f64,
    pub aggregates: Vec<Aggregate>,
    pub errors: Vec<ErrorRecord>,
    pub records: Vec<Record>,
}

impl Report {
    pub fn new(plan: TrialPlan) -> Self {
        Self {
            tool: TOOL.into(),
            version: env!("CARGO_PKG_VERSION").into(),
            rng: RNG.into(),
            plan,
            runtime_seconds: 0.0,
            aggregates: Vec::new(),
            errors: Vec::new(),
            records: Vec::new(),
        }
    }

    /// Aggregates implied by the records, in first-seen checker order.
    /// Skip counts are not recoverable from records and come from `skipped`.
    pub fn aggregate(
        records: &[Record],
        errors: &[ErrorRecord],
        skipped: &BTreeMap<String, usize>,
        order: &[String],
    ) -> Vec<Aggregate> {
        let mut out: Vec<Aggregate> = order.iter().map(|c| Aggregate::empty(c)).collect();
        let slot = |checker: &str, out: &mut Vec<Aggregate>| match out.iter().position(|a| a.checker == checker) {
            Some(i) => i,
            None => {
                out.push(Aggregate::empty(checker));
                out.len() - 1
            }
        };
        for r in records {
            let i = slot(&r.checker, &mut out);
            out[i].add(r);
        }
        for e in errors {
            let i = slot(&e.checker, &mut out);
            out[i].errors += 1;
        }
        for a in &mut out {
            a.skipped = skipped.get(&a.checker).copied().unwrap_or(0);
        }
        out
    }

    pub fn total_checks(&self) -> usize {
        self.records.len()
    }

    pub fn total_passed(&self) -> usize {
        self.records.iter().filter(|r| r.passed).count()
    }

    pub fn violations(&self) -> usize {
        self.records.iter().filter(|r| r.is_violation()).count()
    }

    pub fn worst_rel_slack(&self) -> Option<f64> {
        self.records.iter().map(|r| r.rel_slack).reduce(f64::min)
    }

    /// 0 when every check passed, 3 on any violation beyond `1e−6`,
    /// otherwise 2 for tolerance-level failures or numerical errors.
    pub fn exit_code(&self) -> i32 {
        if self.violations() > 0 {
            exit::VIOLATION
        } else if self.total_passed() < self.total_checks() || !self.errors.is_empty() {
            exit::TOLERANCE
        } else {
            exit::OK
        }
    }

    pub fn to_json(&self) -> Result<String, ConfigError> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn write(&self, path: &Path) -> Result<(), ConfigError> {
        std::fs::write(path, self.to_json()? + "\n").map_err(|e| ConfigError::Io(path.display().to_string(), e))
    }

    /// Records only, for determinism comparisons that ignore the runtime.
    pub fn records_json(&self) -> Result<String, ConfigError> {
        Ok(serde_json::to_string(&self.records)?)
    }

    /// Human summary: one line per checker plus totals.
    pub fn summary(&self) -> String {
        use std::fmt::Write;
        let mut s = String::new();
        let fmt = |v: Option<f64>| v.map_or_else(|| "-".to_owned(), |x| format!("{x:.3e}"));
        let _ = writeln!(
            s,
            "{:<26} {:>8} {:>8} {:>6} {:>8} {:>7} {:>11} {:>10}",
            "checker", "checks", "passed", "viol", "skipped", "errors", "worst_slack", "best_ratio"
        );
        for a in &self.aggregates {
            let _ = writeln!(
                s,
                "{:<26} {:>8} {:>8} {:>6} {:>8} {:>7} {:>11} {:>10}",
                a.checker,
                a.checks,
                a.passed,
                a.violations,
                a.skipped,
                a.errors,
                fmt(a.worst_rel_slack),
                fmt(a.best_ratio)
            );
        }
        let _ = writeln!(
            s,
            "total: {} checks, {} passed, {} violations, {} errors, worst rel_slack {}, {:.2} s",
            self.total_checks(),
            self.total_passed(),
            self.violations(),
            self.errors.len(),
            fmt(self.worst_rel_slack()),
            self.runtime_seconds
        );
        s
    }
}

// JSON has no NaN or infinities; those travel as the strings "NaN", "inf", "-inf".
mod float {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
        if v.is_finite() {
            s.serialize_f64(*v)
        } else if v.is_nan() {
            s.serialize_str("NaN")
        } else if *v > 0.0 {
            s.serialize_str("inf")
        } else {
            s.serialize_str("-inf")
        }
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Num(f64),
        Text(String),
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        match Repr::deserialize(d)? {
            Repr::Num(v) => Ok(v),
            Repr::Text(t) => match t.as_str() {
                "NaN" => Ok(f64::NAN),
                "inf" => Ok(f64::INFINITY),
                "-inf" => Ok(f64::NEG_INFINITY),
                _ => Err(serde::de::Error::custom(format!("not a number: {t}"))),
            },
        }
    }
}

mod opt_float {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Wrap(#[serde(with = "super::float")] f64);

    pub fn serialize<S: Serializer>(v: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
        v.map(Wrap).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<f64>, D::Error> {
        Ok(Option::<Wrap>::deserialize(d)?.map(|w| w.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(checker: &'static str, lhs: f64, rhs: f64) -> Record {
        Record::new(checker, InequalityCheck::new("c", lhs, rhs).with_context(Context::new(2).with_alpha(0.25)))
    }

    #[test]
    fn non_finite_values_round_trip() {
        let mut r = record("kato", f64::INFINITY, 1.0);
        r.scale = f64::NAN;
        let text = serde_json::to_string(&r).unwrap();
        assert!(text.contains("\"inf\"") && text.contains("\"NaN\""));
        let back: Record = serde_json::from_str(&text).unwrap();
        assert_eq!(back.lhs, f64::INFINITY);
        assert!(back.scale.is_nan());
        assert_eq!(back.rel_slack, f64::NEG_INFINITY);
    }

    #[test]
    fn exit_codes() {
        let mut rep = Report::new(TrialPlan::default());
        rep.records.push(record("a", 0.5, 1.0));
        assert_eq!(rep.exit_code(), exit::OK);
        rep.records.push(record("a", 1.0 + 1e-8, 1.0));
        assert_eq!(rep.exit_code(), exit::TOLERANCE);
        rep.records.push(record("b", 2.0, 1.0));
        assert_eq!(rep.exit_code(), exit::VIOLATION);
    }

    #[test]
    fn aggregates_follow_records() {
        let records = vec![record("a", 0.5, 1.0), record("a", 0.9, 1.0), record("b", 0.0, 0.0)];
        let order = vec!["a".to_owned(), "b".to_owned(), "c".to_owned()];
        let skipped = BTreeMap::from([("c".to_owned(), 4)]);
        let agg = Report::aggregate(&records, &[], &skipped, &order);
        assert_eq!(agg.len(), 3);
        assert_eq!((agg[0].checks, agg[0].passed), (2, 2));
        assert_eq!(agg[0].best_ratio, Some(0.9));
        assert!((agg[0].worst_rel_slack.unwrap() - 0.1).abs() < 1e-15);
        assert_eq!(agg[1].best_ratio, None);
        assert_eq!((agg[2].checks, agg[2].skipped), (0, 4));
    }
}
