//! Cross-checks between independent evaluation routes.

use katolab_core::generators::{OperatorClass, Sampler, SeedPlan};
use katolab_core::linalg::{schatten, trace_via_basis, Matrix, C64};
use katolab_core::series::{eval_matrix_spectral, eval_matrix_truncated, truncation_terms, PowerSeries, SeriesCatalog};
use serde::{Deserialize, Serialize};

use crate::ConfigError;

pub const BASIS_TOL: f64 = 1e-10;
pub const SERIES_TOL: f64 = 1e-8;
pub const BASIS_MATRICES: usize = 100;
pub const BASES_PER_MATRIX: usize = 10;
pub const SERIES_MATRICES: usize = 50;
/// Spectral radius of the test matrices, as a fraction of the radius of
/// convergence.
pub const RADIUS_FRACTION: f64 = 0.9;
/// Spectral radius used for entire series.
pub const ENTIRE_RADIUS: f64 = 2.0;
const MAX_DIM: usize = 8;
const TAIL_TOL: f64 = 1e-17;
// Streams well away from the campaign's packed trial streams.
const BASIS_STREAM: u64 = 0xb0 << 56;
const SERIES_STREAM: u64 = 0xb1 << 56;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BasisOracle {
    pub matrices: usize,
    pub bases_per_matrix: usize,
    /// Largest `|tr_B A − tr A| / max(|tr A|, ‖A‖₁)`.
    pub worst_gap: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesOracle {
    pub series: String,
    pub closed_form: bool,
    pub spectral_radius: f64,
    pub matrices: usize,
    pub max_terms: usize,
    /// Largest `‖f_spec(N) − f_trunc(N)‖₂ / ‖f_spec(N)‖₂`.
    pub worst_gap: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    pub seed: u64,
    pub basis: BasisOracle,
    pub series: Vec<SeriesOracle>,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.basis.passed && self.series.iter().all(|s| s.passed)
    }

    pub fn summary(&self) -> String {
        let mut s = format!(
            "basis independence: {} matrices x {} bases, worst gap {:.3e} [{}]\n",
            self.basis.matrices,
            self.basis.bases_per_matrix,
            self.basis.worst_gap,
            verdict(self.basis.passed)
        );
        for o in &self.series {
            s += &format!(
                "spectral vs truncated {:<20} radius {:<4} terms {:>5} worst gap {:.3e} [{}]\n",
                o.series,
                o.spectral_radius,
                o.max_terms,
                o.worst_gap,
                verdict(o.passed)
            );
        }
        s
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

/// Trace over random orthonormal bases against the diagonal sum.
pub fn basis_oracle(seed: u64) -> Result<BasisOracle, ConfigError> {
    let mut s = Sampler::new(SeedPlan::new(seed, BASIS_STREAM));
    let mut worst = 0.0_f64;
    for i in 0..BASIS_MATRICES {
        let n = 1 + i % MAX_DIM;
        let a = s.matrix(n, OperatorClass::ALL[i % OperatorClass::ALL.len()]);
        let tr = a.trace();
        let scale = tr.norm().max(schatten(&a)?.tr_norm).max(f64::MIN_POSITIVE);
        for _ in 0..BASES_PER_MATRIX {
            let basis = s.unitary(n);
            let gap = (trace_via_basis(&a, &basis)? - tr).norm() / scale;
            worst = worst.max(gap);
        }
    }
    Ok(BasisOracle {
        matrices: BASIS_MATRICES,
        bases_per_matrix: BASES_PER_MATRIX,
        worst_gap: worst,
        passed: worst <= BASIS_TOL,
    })
}

/// Normal matrix with spectral radius exactly `r`.
pub fn normal_with_radius(s: &mut Sampler, n: usize, r: f64) -> Matrix {
    let u = s.unitary(n);
    let mut d: Vec<C64> = (0..n).map(|_| s.unit_disk()).collect();
    let top = d.iter().map(|z| z.norm()).fold(0.0, f64::max);
    for z in &mut d {
        *z = if top > 0.0 { *z * (r / top) } else { C64::new(r, 0.0) };
    }
    &(&u * &Matrix::diag(&d)) * &u.adjoint()
}

/// Spectral evaluation against Horner-summed truncation for one series.
pub fn series_oracle(series: &PowerSeries, seed: u64, stream: u64) -> Result<SeriesOracle, ConfigError> {
    let r = if series.radius().is_finite() { RADIUS_FRACTION * series.radius() } else { ENTIRE_RADIUS };
    let terms = truncation_terms(series, r, TAIL_TOL)? + 8;
    let mut s = Sampler::new(SeedPlan::new(seed, stream));
    let mut worst = 0.0_f64;
    for i in 0..SERIES_MATRICES {
        let m = normal_with_radius(&mut s, 1 + i % MAX_DIM, r);
        let spectral = eval_matrix_spectral(series, &m)?;
        let truncated = eval_matrix_truncated(series, &m, terms);
        let diff = (&spectral - &truncated).hs_norm();
        let size = spectral.hs_norm();
        let gap = if size > 0.0 { diff / size } else { diff };
        worst = worst.max(gap);
    }
    Ok(SeriesOracle {
        series: series.name().to_owned(),
        closed_form: series.has_closed_form(),
        spectral_radius: r,
        matrices: SERIES_MATRICES,
        max_terms: terms,
        worst_gap: worst,
        passed: worst <= SERIES_TOL,
    })
}

/// Basis independence of the trace and spectral-vs-truncated agreement for
/// every catalogue entry.
pub fn run_oracle(seed: u64) -> Result<OracleReport, ConfigError> {
    let catalog = SeriesCatalog::standard();
    let series = catalog
        .entries()
        .iter()
        .enumerate()
        .map(|(k, s)| series_oracle(s, seed, SERIES_STREAM + k as u64))
        .collect::<Result<_, _>>()?;
    Ok(OracleReport { seed, basis: basis_oracle(seed)?, series })
}
