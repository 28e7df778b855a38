use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;
use std::time::Instant;

use katolab_core::linalg::Matrix;
use katolab_core::registry::{checker_index, run_checker, TrialOutput, CHECKERS};
use katolab_core::trace_suite::{AlphaGrid, TraceKato};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::plan::TrialPlan;
use crate::report::{ErrorRecord, Record, Report};
use crate::ConfigError;

struct Cell {
    checker: usize,
    n: usize,
    output: TrialOutput,
}

// Cells run in parallel; the collected vector keeps plan order.
fn run_cells(plan: &TrialPlan) -> Result<Vec<Cell>, ConfigError> {
    plan.validate()?;
    let mut grid = Vec::new();
    for id in plan.checker_list() {
        let checker = checker_index(&id)?;
        grid.extend(plan.dims.iter().map(|&n| (checker, n)));
    }
    grid.into_par_iter()
        .map(|(checker, n)| {
            let mut output = run_checker(CHECKERS[checker].id, n, plan.trials_per_cell, plan.seed, &plan.alpha_grid)?;
            for c in &mut output.checks {
                c.passed = c.passes(&plan.tolerance);
            }
            Ok(Cell { checker, n, output })
        })
        .collect()
}

/// Runs every checker of the plan at every dimension and collects all
/// records. Failed checks never stop the campaign.
pub fn run_verify(plan: &TrialPlan) -> Result<Report, ConfigError> {
    let start = Instant::now();
    let cells = run_cells(plan)?;
    let mut report = Report::new(plan.clone());
    let mut skipped: BTreeMap<String, usize> = BTreeMap::new();
    for cell in cells {
        let id = CHECKERS[cell.checker].id;
        *skipped.entry(id.to_owned()).or_default() += cell.output.skipped;
        report.records.extend(cell.output.checks.into_iter().map(|c| Record::new(id, c)));
        report.errors.extend(cell.output.errors.iter().map(|e| ErrorRecord {
            checker: id.to_owned(),
            n: cell.n,
            message: e.to_string(),
        }));
    }
    report.aggregates = Report::aggregate(&report.records, &report.errors, &skipped, &plan.checker_list());
    report.runtime_seconds = start.elapsed().as_secs_f64();
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepAxis {
    /// One row per checker, dimension and exponent.
    Alpha,
    /// One row per checker and dimension.
    Dim,
}

impl FromStr for SweepAxis {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, ConfigError> {
        match s {
            "alpha" => Ok(SweepAxis::Alpha),
            "dim" => Ok(SweepAxis::Dim),
            other => Err(ConfigError::Invalid(format!("sweep axis must be `alpha` or `dim`, not `{other}`"))),
        }
    }
}

/// One CSV row of a sweep. Ratios are `lhs/rhs` over checks with a
/// nonvanishing right side; empty when there is none.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub checker: String,
    pub n: usize,
    pub alpha: Option<f64>,
    pub trials: u64,
    pub mean_ratio: Option<f64>,
    pub max_ratio: Option<f64>,
    pub worst_rel_slack: Option<f64>,
}

#[derive(Debug, Default)]
struct RowStats {
    ratios: usize,
    sum: f64,
    max: Option<f64>,
    worst: Option<f64>,
}

impl RowStats {
    fn add(&mut self, ratio: Option<f64>, rel_slack: f64) {
        if let Some(r) = ratio {
            self.ratios += 1;
            self.sum += r;
            self.max = Some(self.max.map_or(r, |m| m.max(r)));
        }
        self.worst = Some(self.worst.map_or(rel_slack, |w| w.min(rel_slack)));
    }

    fn row(&self, checker: &str, n: usize, alpha: Option<f64>, trials: u64) -> SweepRow {
        SweepRow {
            checker: checker.to_owned(),
            n,
            alpha,
            trials,
            mean_ratio: (self.ratios > 0).then(|| self.sum / self.ratios as f64),
            max_ratio: self.max,
            worst_rel_slack: self.worst,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct SweepTable {
    pub rows: Vec<SweepRow>,
}

impl SweepTable {
    /// CSV with header `checker,n,alpha,trials,mean_ratio,max_ratio,worst_rel_slack`.
    pub fn to_csv(&self) -> Result<String, ConfigError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for row in &self.rows {
            w.serialize(row)?;
        }
        if self.rows.is_empty() {
            w.write_record(["checker", "n", "alpha", "trials", "mean_ratio", "max_ratio", "worst_rel_slack"])?;
        }
        let bytes = w.into_inner().map_err(|e| ConfigError::Invalid(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| ConfigError::Invalid(e.to_string()))
    }

    pub fn from_csv(text: &str) -> Result<Self, ConfigError> {
        let mut r = csv::Reader::from_reader(text.as_bytes());
        let rows = r.deserialize().collect::<Result<Vec<SweepRow>, _>>()?;
        Ok(Self { rows })
    }

    pub fn write(&self, path: &Path) -> Result<(), ConfigError> {
        std::fs::write(path, self.to_csv()?).map_err(|e| ConfigError::Io(path.display().to_string(), e))
    }
}

/// Per-cell ratio statistics of a campaign, split by exponent or by
/// dimension only. Exponent-free checkers get an empty `alpha`.
pub fn run_sweep(plan: &TrialPlan, axis: SweepAxis) -> Result<SweepTable, ConfigError> {
    let cells = run_cells(plan)?;
    let mut table = SweepTable::default();
    for cell in cells {
        let id = CHECKERS[cell.checker].id;
        // Keyed by the bit pattern of alpha, which orders nonnegative floats.
        let mut groups: BTreeMap<Option<u64>, RowStats> = BTreeMap::new();
        for c in &cell.output.checks {
            let key = match axis {
                SweepAxis::Alpha => c.context.alpha.map(f64::to_bits),
                SweepAxis::Dim => None,
            };
            groups.entry(key).or_default().add(c.ratio(), c.rel_slack);
        }
        if groups.is_empty() {
            groups.insert(None, RowStats::default());
        }
        for (key, stats) in groups {
            table.rows.push(stats.row(id, cell.n, key.map(f64::from_bits), plan.trials_per_cell));
        }
    }
    Ok(table)
}

/// Trace-Kato ratio of one fixed operator across the grid.
pub fn alpha_profile(t: &Matrix, grid: &AlphaGrid) -> Result<SweepTable, ConfigError> {
    let kato = TraceKato::new(t)?;
    let mut table = SweepTable::default();
    for &alpha in grid.points() {
        let c = kato.at(alpha)?;
        let mut stats = RowStats::default();
        stats.add(c.ratio(), c.rel_slack);
        table.rows.push(stats.row("trace-kato", t.dim(), Some(alpha), 1));
    }
    Ok(table)
}
