//! Named checkers over seeded random data, and the sharpness search.
//!
//! Each checker draws its operators from one [`SeedPlan`], decomposes them
//! once, and evaluates its inequalities at every admissible exponent of an
//! [`AlphaGrid`]. Draws that miss a hypothesis are counted as skipped.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::Float;

use crate::check::{Context, InequalityCheck};
use crate::error::{Error, Result};
use crate::functional::{
    check_bounds, ctx, ensure_ordered, sandwich_pair, superadditive_check, tuple_kato_check, weight_extremes,
    Functional, OperatorTuple, TupleFunctional,
};
use crate::generators::{scale_to_trace_budget, OperatorClass, Sampler, SeedPlan};
use crate::linalg::{frac_power, schatten, Matrix, PsdPowers, C64};
use crate::pointwise::{check_positive_norm, check_schwarz_positive, KatoForms, KatoNormForms, McCarthyForms};
use crate::series::{
    check_normal_series, check_normal_series_example, CommutingPair, ExampleKind, PowerSeries, Rule,
    TRUNCATED_CROSSCHECK_DIM, ORACLE_TOL,
};
use crate::trace_suite::{
    AlphaGrid, BasisNorms, NormalProduct, NormalTrace, ProductTrace, RemarkVariants, TraceKato,
};

/// Area a checker belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum Module {
    Core,
    Pointwise,
    TraceSuite,
    Functional,
    Series,
}

impl Module {
    pub fn name(self) -> &'static str {
        match self {
            Module::Core => "core",
            Module::Pointwise => "pointwise",
            Module::TraceSuite => "trace-suite",
            Module::Functional => "functional",
            Module::Series => "series",
        }
    }
}

/// Which grid exponents a checker is evaluated at.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum AlphaMode {
    /// Exponent-free inequality, evaluated once per trial.
    Free,
    /// Every grid point in `[0, 1]`.
    Closed,
    /// Grid points in `(0, 1)`.
    Interior,
}

type Runner = fn(&mut Sampler, usize, &[f64], &AlphaGrid, &mut TrialOutput);

/// A registered checker.
#[derive(Clone, Copy)]
pub struct CheckerSpec {
    pub id: &'static str,
    pub module: Module,
    pub alpha_mode: AlphaMode,
    pub summary: &'static str,
    run: Runner,
}

impl core::fmt::Debug for CheckerSpec {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("CheckerSpec")
            .field("id", &self.id)
            .field("module", &self.module)
            .field("alpha_mode", &self.alpha_mode)
            .finish()
    }
}

const fn spec(id: &'static str, module: Module, alpha_mode: AlphaMode, summary: &'static str, run: Runner) -> CheckerSpec {
    CheckerSpec { id, module, alpha_mode, summary, run }
}

use AlphaMode::{Closed, Free, Interior};

/// Every checker, in report order.
pub static CHECKERS: &[CheckerSpec] = &[
    spec("norm-chain", Module::Core, Free, "‖A‖ ≤ ‖A‖₂ ≤ ‖A‖₁ and |tr A| ≤ ‖A‖₁", run_norm_chain),
    spec("trace-duality", Module::Core, Free, "tr(AT) = tr(TA), |tr(AT)| ≤ ‖A‖₁‖T‖, tr(A*) = conj tr A", run_trace_duality),
    spec("schwarz-positive", Module::Pointwise, Free, "|⟨Px, y⟩|² ≤ ⟨Px, x⟩⟨Py, y⟩", run_schwarz_positive),
    spec("positive-norm", Module::Pointwise, Free, "‖Px‖² ≤ ‖P‖⟨Px, x⟩", run_positive_norm),
    spec("kato", Module::Pointwise, Closed, "|⟨Tx, y⟩|² ≤ ⟨|T|^{2α}x, x⟩⟨|T*|^{2(1−α)}y, y⟩", run_kato),
    spec("kato-norm", Module::Pointwise, Closed, "‖Tx‖² ≤ ‖T‖^{2(1−α)}⟨|T|^{2α}x, x⟩", run_kato_norm),
    spec("mccarthy", Module::Pointwise, Interior, "⟨P^β y, y⟩ ≤ ‖y‖^{2(1−β)}⟨Py, y⟩^β", run_mccarthy),
    spec("trace-kato", Module::TraceSuite, Closed, "|tr T|² ≤ tr|T|^{2α}·tr|T*|^{2(1−α)}", run_trace_kato),
    spec("basis-bound", Module::TraceSuite, Closed, "|tr T| ≤ Σ‖Tbᵢ‖^α‖T*bᵢ‖^{1−α}", run_basis_bound),
    spec("basis-inf-bound", Module::TraceSuite, Free, "|tr T| ≤ inf over α of the basis bound", run_basis_inf_bound),
    spec("cbs-corollary", Module::TraceSuite, Free, "|tr T| ≤ Σ‖Tbᵢ‖^{1/2}‖T*bᵢ‖^{1/2}", run_cbs_corollary),
    spec("normal-trace", Module::TraceSuite, Interior, "|tr N|² ≤ tr|N|^{2α}·tr|N|^{2(1−α)}", run_normal_trace),
    spec("product-trace", Module::TraceSuite, Closed, "|tr(AB*T)|² ≤ tr(|A*|²|T|^{2α})·tr(|B*|²|T*|^{2(1−α)})", run_product_trace),
    spec("corollary-half", Module::TraceSuite, Free, "|tr(AB*T)|² ≤ tr(|A*|²|T|)·tr(|B*|²|T*|)", run_corollary_half),
    spec("normal-product", Module::TraceSuite, Closed, "product bound for normal T", run_normal_product),
    spec("remark-variants", Module::TraceSuite, Closed, "single-weight forms with |B|² and B²", run_remark_variants),
    spec("sigma-nonnegative", Module::Functional, Closed, "σ(P) ≥ 0", run_sigma_nonnegative),
    spec("superadditive", Module::Functional, Closed, "σ(P + Q) ≥ σ(P) + σ(Q)", run_superadditive),
    spec("monotone", Module::Functional, Closed, "σ(P) ≥ σ(Q) for P ≥ Q", run_monotone),
    spec("sandwich", Module::Functional, Closed, "Mσ(Q) ≥ σ(P) ≥ mσ(Q) for MQ ≥ P ≥ mQ", run_sandwich),
    spec("identity-sandwich", Module::Functional, Closed, "sandwich with Q = 1", run_identity_sandwich),
    spec("vsq-forms", Module::Functional, Closed, "superadditivity and monotonicity at |V|², |U|²", run_vsq_forms),
    spec("invertible-sandwich", Module::Functional, Closed, "‖U‖²σ(1) ≥ σ(|U|²) ≥ ‖U⁻¹‖⁻²σ(1)", run_invertible_sandwich),
    spec("tuple-kato", Module::Functional, Closed, "trace inequality for operator tuples", run_tuple_kato),
    spec("tuple-superadditive", Module::Functional, Closed, "tuple σ is superadditive", run_tuple_superadditive),
    spec("tuple-monotone", Module::Functional, Closed, "tuple σ is monotone", run_tuple_monotone),
    spec("tuple-sandwich", Module::Functional, Closed, "tuple sandwich bounds", run_tuple_sandwich),
    spec("weight-bounds", Module::Functional, Closed, "max p·σ(1) ≥ σ(p) ≥ min p·σ(1)", run_weight_bounds),
    spec("normal-series", Module::Series, Interior, "|tr f(N)|² ≤ tr f_a(|N|^{2α})·tr f_a(|N|^{2(1−α)})", run_normal_series),
    spec("normal-series-example", Module::Series, Interior, "resolvent and exponential forms for normal N", run_normal_series_example),
    spec("commuting-series", Module::Series, Closed, "|tr f(|A|²T)|² ≤ tr f_a(|A|²|T|^{2α})·tr f_a(|A|²|T|^{2(1−α)})", run_commuting_series),
    spec("commuting-series-example", Module::Series, Closed, "resolvent and exponential forms for commuting pairs", run_commuting_series_example),
    spec("series-brackets", Module::Series, Closed, "superadditivity and dominance of series brackets", run_series_brackets),
];

/// Checker by id, or `UnknownChecker`.
pub fn checker(id: &str) -> Result<&'static CheckerSpec> {
    checker_index(id).map(|i| &CHECKERS[i])
}

/// Position of a checker in [`CHECKERS`].
pub fn checker_index(id: &str) -> Result<usize> {
    CHECKERS.iter().position(|c| c.id == id).ok_or_else(|| Error::UnknownChecker(id.into()))
}

pub fn checker_ids() -> impl Iterator<Item = &'static str> {
    CHECKERS.iter().map(|c| c.id)
}

/// Stream index of one trial: checker, dimension and trial number packed
/// into disjoint bit ranges.
pub fn trial_stream(checker_index: usize, n: usize, trial: u64) -> u64 {
    ((checker_index as u64) << 48) | ((n as u64 & 0xffff) << 32) | (trial & 0xffff_ffff)
}

/// Records of one trial.
#[derive(Debug, Clone, Default)]
pub struct TrialOutput {
    pub checks: Vec<InequalityCheck>,
    /// Evaluations whose draw missed a hypothesis.
    pub skipped: usize,
    /// Numerical failures, which a campaign reports but does not abort on.
    pub errors: Vec<Error>,
}

impl TrialOutput {
    fn push(&mut self, r: Result<InequalityCheck>) {
        match r {
            Ok(c) => self.checks.push(c),
            Err(e) => self.fail(e),
        }
    }

    fn extend(&mut self, r: Result<impl IntoIterator<Item = InequalityCheck>>) {
        match r {
            Ok(cs) => self.checks.extend(cs),
            Err(e) => self.fail(e),
        }
    }

    fn fail(&mut self, e: Error) {
        if e.is_precondition() {
            self.skipped += 1;
        } else {
            self.errors.push(e);
        }
    }

    /// Runs a fallible setup, recording its error.
    fn setup<T>(&mut self, r: Result<T>) -> Option<T> {
        r.map_err(|e| self.fail(e)).ok()
    }
}

impl CheckerSpec {
    /// Exponents this checker is evaluated at.
    pub fn alphas(&self, grid: &AlphaGrid) -> Vec<f64> {
        match self.alpha_mode {
            Free => Vec::new(),
            Closed => grid.points().to_vec(),
            Interior => grid.interior().collect(),
        }
    }

    /// One trial on data drawn from `seed`; contexts carry the seed.
    pub fn run_trial(&self, n: usize, seed: SeedPlan, grid: &AlphaGrid) -> Result<TrialOutput> {
        if n == 0 {
            return Err(Error::EmptyDimension);
        }
        let mut out = TrialOutput::default();
        let mut sampler = Sampler::new(seed);
        (self.run)(&mut sampler, n, &self.alphas(grid), grid, &mut out);
        for c in &mut out.checks {
            c.context.n = n;
            c.context.seed = Some(seed.master_seed);
            c.context.stream = Some(seed.stream_index);
        }
        Ok(out)
    }
}

/// Runs `trials` seeded trials of one checker at dimension `n`.
pub fn run_checker(id: &str, n: usize, trials: u64, master_seed: u64, grid: &AlphaGrid) -> Result<TrialOutput> {
    let idx = checker_index(id)?;
    let spec = &CHECKERS[idx];
    let mut all = TrialOutput::default();
    for trial in 0..trials {
        let out = spec.run_trial(n, SeedPlan::new(master_seed, trial_stream(idx, n, trial)), grid)?;
        all.checks.extend(out.checks);
        all.skipped += out.skipped;
        all.errors.extend(out.errors);
    }
    Ok(all)
}

/// Largest `lhs/rhs` seen by a sharpness search and where it occurred.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Sharpness {
    pub checker: &'static str,
    pub n: usize,
    pub trials: u64,
    pub best_ratio: f64,
    /// Name of the maximising check.
    pub check: Option<alloc::borrow::Cow<'static, str>>,
    pub witness: Option<Context>,
}

/// Maximum of `lhs/rhs` over `trials` seeded trials and every grid exponent;
/// checks with a vanishing right side are skipped.
pub fn sharpness_search(id: &str, n: usize, trials: u64, seed: SeedPlan, grid: &AlphaGrid) -> Result<Sharpness> {
    if trials == 0 {
        return Err(Error::InvalidParameter("sharpness search needs at least one trial"));
    }
    let idx = checker_index(id)?;
    let spec = &CHECKERS[idx];
    let mut best = Sharpness { checker: spec.id, n, trials, best_ratio: 0.0, check: None, witness: None };
    for trial in 0..trials {
        let stream = seed.stream_index.wrapping_add(trial_stream(idx, n, trial));
        let out = spec.run_trial(n, SeedPlan::new(seed.master_seed, stream), grid)?;
        for c in out.checks {
            if let Some(r) = c.ratio() {
                if best.witness.is_none() || r > best.best_ratio {
                    best.best_ratio = r;
                    best.check = Some(c.name.clone());
                    best.witness = Some(c.context.clone());
                }
            }
        }
    }
    Ok(best)
}

fn any_class(s: &mut Sampler) -> OperatorClass {
    OperatorClass::ALL[s.index(OperatorClass::ALL.len())]
}

fn normal_class(s: &mut Sampler) -> OperatorClass {
    const NORMAL: [OperatorClass; 4] =
        [OperatorClass::Normal, OperatorClass::Selfadjoint, OperatorClass::Positive, OperatorClass::Unitary];
    NORMAL[s.index(NORMAL.len())]
}

fn any_matrix(s: &mut Sampler, n: usize) -> Matrix {
    let class = any_class(s);
    s.matrix(n, class)
}

// ---- core properties

fn run_norm_chain(s: &mut Sampler, n: usize, _: &[f64], _: &AlphaGrid, out: &mut TrialOutput) {
    let a = any_matrix(s, n);
    out.extend(schatten(&a).map(|norms| {
        [
            InequalityCheck::new("norm-chain/operator-hs", norms.op_norm, norms.hs_norm),
            InequalityCheck::new("norm-chain/hs-trace", norms.hs_norm, norms.tr_norm),
            InequalityCheck::new("norm-chain/trace", a.trace().norm(), norms.tr_norm),
        ]
    }));
}

fn run_trace_duality(s: &mut Sampler, n: usize, _: &[f64], _: &AlphaGrid, out: &mut TrialOutput) {
    let a = any_matrix(s, n);
    let t = any_matrix(s, n);
    let at = (&a * &t).trace();
    let ta = (&t * &a).trace();
    out.extend(schatten(&a).and_then(|na| Ok((na, schatten(&t)?))).map(|(na, nt)| {
        [
            InequalityCheck::with_scale("trace-duality/commutation", (at - ta).norm(), 0.0, na.hs_norm * nt.hs_norm),
            InequalityCheck::new("trace-duality/holder", at.norm(), na.tr_norm * nt.op_norm),
            InequalityCheck::with_scale("trace-duality/adjoint", (a.adjoint().trace() - a.trace().conj()).norm(), 0.0, na.tr_norm),
        ]
    }));
}

// ---- pointwise

fn run_schwarz_positive(s: &mut Sampler, n: usize, _: &[f64], _: &AlphaGrid, out: &mut TrialOutput) {
    let p = s.psd(n);
    let (x, y) = (s.vector(n), s.vector(n));
    out.push(check_schwarz_positive(&p, &x, &y));
}

fn run_positive_norm(s: &mut Sampler, n: usize, _: &[f64], _: &AlphaGrid, out: &mut TrialOutput) {
    let p = s.psd(n);
    let x = s.vector(n);
    out.push(check_positive_norm(&p, &x));
}

fn run_kato(s: &mut Sampler, n: usize, alphas: &[f64], _: &AlphaGrid, out: &mut TrialOutput) {
    let t = any_matrix(s, n);
    let (x, y) = (s.vector(n), s.vector(n));
    if let Some(forms) = out.setup(KatoForms::new(&t, &x, &y)) {
        alphas.iter().for_each(|&a| out.push(forms.at(a)));
    }
}

fn run_kato_norm(s: &mut Sampler, n: usize, alphas: &[f64], _: &AlphaGrid, out: &mut TrialOutput) {
    let t = any_matrix(s, n);
    let x = s.vector(n);
    if let Some(forms) = out.setup(KatoNormForms::new(&t, &x)) {
        alphas.iter().for_each(|&a| out.push(forms.at(a)));
    }
}

fn run_mccarthy(s: &mut Sampler, n: usize, alphas: &[f64], _: &AlphaGrid, out: &mut TrialOutput) {
    let p = s.psd(n);
    let y = s.vector(n);
    if let Some(forms) = out.setup(McCarthyForms::new(&p, &y)) {
        alphas.iter().for_each(|&a| out.push(forms.at(a)));
    }
}

// ---- trace suite

fn run_trace_kato(s: &mut Sampler, n: usize, alphas: &[f64], _: &AlphaGrid, out: &mut TrialOutput) {
    let t = any_matrix(s, n);
    if let Some(forms) = out.setup(TraceKato::new(&t)) {
        alphas.iter().for_each(|&a| out.push(forms.at(a)));
        out.checks.push(forms.half());
    }
}

fn basis_norms(s: &mut Sampler, n: usize, out: &mut TrialOutput) -> Option<BasisNorms> {
    let t = any_matrix(s, n);
    let basis = s.unitary(n);
    out.setup(BasisNorms::new(&t, &basis))
}

fn run_basis_bound(s: &mut Sampler, n: usize, alphas: &[f64], _: &AlphaGrid, out: &mut TrialOutput) {
    if let Some(forms) = basis_norms(s, n, out) {
        alphas.iter().for_each(|&a| out.push(forms.at(a)));
    }
}

fn run_basis_inf_bound(s: &mut Sampler, n: usize, _: &[f64], grid: &AlphaGrid, out: &mut TrialOutput) {
    if let Some(forms) = basis_norms(s, n, out) {
        let (trace, min) = forms.inf_bound(grid);
        out.checks.extend([trace, min]);
    }
}

fn run_cbs_corollary(s: &mut Sampler, n: usize, _: &[f64], _: &AlphaGrid, out: &mut TrialOutput) {
    if let Some(forms) = basis_norms(s, n, out) {
        out.checks.push(forms.cbs());
    }
}

fn run_normal_trace(s: &mut Sampler, n: usize, alphas: &[f64], _: &AlphaGrid, out: &mut TrialOutput) {
    let class = normal_class(s);
    let m = s.matrix(n, class);
    if let Some(forms) = out.setup(NormalTrace::new(&m)) {
        alphas.iter().for_each(|&a| out.extend(forms.at(a).map(|(p, q)| [p, q])));
    }
}

fn product_data(s: &mut Sampler, n: usize, normal: bool) -> [Matrix; 3] {
    let t = if normal {
        let class = normal_class(s);
        s.matrix(n, class)
    } else {
        any_matrix(s, n)
    };
    [t, s.gaussian_matrix(n), s.gaussian_matrix(n)]
}

fn run_product_trace(s: &mut Sampler, n: usize, alphas: &[f64], _: &AlphaGrid, out: &mut TrialOutput) {
    let [t, a, b] = product_data(s, n, false);
    if let Some(forms) = out.setup(ProductTrace::new(&t, &a, &b)) {
        alphas.iter().for_each(|&x| out.extend(forms.at(x).map(|(p, q)| [p, q])));
    }
}

fn run_corollary_half(s: &mut Sampler, n: usize, _: &[f64], _: &AlphaGrid, out: &mut TrialOutput) {
    let [t, a, b] = product_data(s, n, false);
    if let Some(forms) = out.setup(ProductTrace::new(&t, &a, &b)) {
        out.checks.push(forms.half());
    }
}

fn run_normal_product(s: &mut Sampler, n: usize, alphas: &[f64], _: &AlphaGrid, out: &mut TrialOutput) {
    let [t, a, b] = product_data(s, n, true);
    if let Some(forms) = out.setup(NormalProduct::new(&t, &a, &b)) {
        alphas.iter().for_each(|&x| out.extend(forms.at(x).map(|(p, q, r)| [p, q, r])));
    }
}

fn run_remark_variants(s: &mut Sampler, n: usize, alphas: &[f64], _: &AlphaGrid, out: &mut TrialOutput) {
    let t = if s.uniform() < 0.5 {
        let class = normal_class(s);
        s.matrix(n, class)
    } else {
        any_matrix(s, n)
    };
    let b = s.gaussian_matrix(n);
    if let Some(forms) = out.setup(RemarkVariants::new(&t, &b)) {
        for &x in alphas {
            out.extend(forms.at(x).map(|(p, q, r, u)| [Some(p), Some(q), r, u].into_iter().flatten()));
        }
    }
}

// ---- functional

fn functional(s: &mut Sampler, n: usize, out: &mut TrialOutput) -> Option<Functional> {
    let a = s.gaussian_matrix(n);
    let t = any_matrix(s, n);
    out.setup(Functional::new(&a, &t))
}

// `m·Q ≤ Q^{1/2}(m + (M − m)S)Q^{1/2} ≤ M·Q` for `0 ≤ S ≤ 1`.
fn sandwiched(s: &mut Sampler, q: &Matrix, m: f64, big_m: f64) -> Result<Matrix> {
    let n = q.dim();
    let root = frac_power(q, 0.5)?;
    let inner = &Matrix::identity(n).scale(m) + &s.psd(n).scale(big_m - m);
    Ok((&(&root * &inner) * &root).hermitian_part())
}

fn sandwich_constants(s: &mut Sampler) -> (f64, f64) {
    let m = s.uniform_in(0.1, 1.0);
    (m, m + s.uniform_in(0.0, 2.0))
}

fn run_sigma_nonnegative(s: &mut Sampler, n: usize, alphas: &[f64], _: &AlphaGrid, out: &mut TrialOutput) {
    let Some(f) = functional(s, n, out) else { return };
    let p = s.psd(n);
    if let Some(terms) = out.setup(f.terms(&p)) {
        for &a in alphas {
            out.push(terms.eval(a).map(|v| {
                InequalityCheck::at_least("sigma-nonnegative", v.value, 0.0, v.scale()).with_context(ctx(n, a))
            }));
        }
    }
}

fn run_superadditive(s: &mut Sampler, n: usize, alphas: &[f64], _: &AlphaGrid, out: &mut TrialOutput) {
    let Some(f) = functional(s, n, out) else { return };
    let (p, q) = (s.psd(n), s.psd(n));
    let Some(terms) = out.setup((|| Ok([f.terms(&(&p + &q))?, f.terms(&p)?, f.terms(&q)?]))()) else { return };
    for &a in alphas {
        out.push((|| {
            let [sum, tp, tq] = [terms[0].eval(a)?, terms[1].eval(a)?, terms[2].eval(a)?];
            Ok(superadditive_check(sum, tp, tq, "superadditive").with_context(ctx(n, a)))
        })());
    }
}

fn run_monotone(s: &mut Sampler, n: usize, alphas: &[f64], _: &AlphaGrid, out: &mut TrialOutput) {
    let Some(f) = functional(s, n, out) else { return };
    let q = s.psd(n);
    let p = &q + &s.psd(n).scale(s.uniform());
    let Some((tp, tq)) = out.setup((|| {
        ensure_ordered(&p, &q)?;
        Ok((f.terms(&p)?, f.terms(&q)?))
    })()) else {
        return;
    };
    for &a in alphas {
        out.push((|| {
            let (sp, sq) = (tp.eval(a)?, tq.eval(a)?);
            Ok(InequalityCheck::at_least("monotone", sp.value, sq.value, sp.scale().max(sq.scale())).with_context(ctx(n, a)))
        })());
    }
}

fn run_sandwich(s: &mut Sampler, n: usize, alphas: &[f64], _: &AlphaGrid, out: &mut TrialOutput) {
    let Some(f) = functional(s, n, out) else { return };
    let q = s.psd(n);
    let (m, big_m) = sandwich_constants(s);
    let Some((tp, tq)) = out.setup((|| {
        let p = sandwiched(s, &q, m, big_m)?;
        check_bounds(m, big_m)?;
        ensure_ordered(&q.scale(big_m), &p)?;
        ensure_ordered(&p, &q.scale(m))?;
        Ok((f.terms(&p)?, f.terms(&q)?))
    })()) else {
        return;
    };
    for &a in alphas {
        out.extend((|| {
            let (u, l) = sandwich_pair(("sandwich/upper", "sandwich/lower"), tp.eval(a)?, tq.eval(a)?, m, big_m, n, a);
            Ok([u, l])
        })());
    }
}

fn run_identity_sandwich(s: &mut Sampler, n: usize, alphas: &[f64], _: &AlphaGrid, out: &mut TrialOutput) {
    let Some(f) = functional(s, n, out) else { return };
    let p = s.psd(n);
    let Some((tp, base, m, big_m)) = out.setup((|| {
        let eig = PsdPowers::new(&p)?;
        let big_m = eig.norm();
        let m = eig.eigenvalues().last().copied().unwrap_or(0.0);
        if !(m > 0.0) {
            return Err(Error::PreconditionFailed("identity sandwich needs P bounded below"));
        }
        Ok((f.terms(&p)?, f.identity_terms(), m, big_m))
    })()) else {
        return;
    };
    for &a in alphas {
        out.extend((|| {
            let names = ("identity-sandwich/upper", "identity-sandwich/lower");
            let (u, l) = sandwich_pair(names, tp.eval(a)?, base.eval(a)?, m, big_m, n, a);
            Ok([u, l])
        })());
    }
}

fn run_vsq_forms(s: &mut Sampler, n: usize, alphas: &[f64], _: &AlphaGrid, out: &mut TrialOutput) {
    let Some(f) = functional(s, n, out) else { return };
    let u = s.gaussian_matrix(n);
    let ordered = s.uniform() < 0.5;
    let v = if ordered {
        let uu = &u.adjoint() * &u;
        let w = s.unitary(n);
        let lift = (&uu + &s.psd(n)).hermitian_part();
        match frac_power(&lift, 0.5) {
            Ok(root) => &w * &root,
            Err(e) => return out.fail(e),
        }
    } else {
        s.gaussian_matrix(n)
    };
    let Some((tv, tu, monotone)) = out.setup((|| {
        let tv = f.modulus_terms(&v)?;
        let tu = f.modulus_terms(&u)?;
        let monotone = match ensure_ordered(&(&v.adjoint() * &v), &(&u.adjoint() * &u)) {
            Ok(()) => true,
            Err(Error::NotOrdered { .. }) => false,
            Err(e) => return Err(e),
        };
        Ok((tv, tu, monotone))
    })()) else {
        return;
    };
    let one = C64::new(1.0, 0.0);
    let sum = crate::functional::SigmaTerms::combine([(&tv, one), (&tu, one)]);
    for &a in alphas {
        out.extend((|| {
            let (sv, su) = (tv.eval(a)?, tu.eval(a)?);
            let mut checks = vec![superadditive_check(sum.eval(a)?, sv, su, "vsq-forms/superadditive").with_context(ctx(n, a))];
            if monotone {
                checks.push(
                    InequalityCheck::at_least("vsq-forms/monotone", sv.value, su.value, sv.scale().max(su.scale()))
                        .with_context(ctx(n, a)),
                );
            }
            Ok(checks)
        })());
    }
}

fn run_invertible_sandwich(s: &mut Sampler, n: usize, alphas: &[f64], _: &AlphaGrid, out: &mut TrialOutput) {
    let Some(f) = functional(s, n, out) else { return };
    let u = s.gaussian_matrix(n);
    let Some((middle, base, lo, hi)) = out.setup((|| {
        let sv = crate::linalg::svd(&u)?.real_values();
        let top = sv.first().copied().unwrap_or(0.0);
        let bottom = sv.last().copied().unwrap_or(0.0);
        if !(bottom > 1e-8 * top) {
            return Err(Error::Singular);
        }
        Ok((f.modulus_terms(&u)?, f.identity_terms(), bottom * bottom, top * top))
    })()) else {
        return;
    };
    for &a in alphas {
        out.extend((|| {
            let names = ("invertible-sandwich/upper", "invertible-sandwich/lower");
            let (u, l) = sandwich_pair(names, middle.eval(a)?, base.eval(a)?, lo, hi, n, a);
            Ok([u, l])
        })());
    }
}

fn random_tuple(s: &mut Sampler, n: usize) -> Result<OperatorTuple> {
    let k = 1 + s.index(3);
    let mut parts = (Vec::new(), Vec::new(), Vec::new(), Vec::new(), Vec::new());
    for _ in 0..k {
        parts.0.push(any_matrix(s, n));
        parts.1.push(s.gaussian_matrix(n));
        parts.2.push(s.psd(n));
        parts.3.push(s.complex_normal());
        parts.4.push(s.uniform());
    }
    OperatorTuple::new(parts.0, parts.1, parts.2, parts.3, parts.4)
}

fn tuple_setup(s: &mut Sampler, n: usize, out: &mut TrialOutput) -> Option<(OperatorTuple, TupleFunctional)> {
    out.setup((|| {
        let tuple = random_tuple(s, n)?;
        let f = TupleFunctional::new(&tuple)?;
        Ok((tuple, f))
    })())
}

fn run_tuple_kato(s: &mut Sampler, n: usize, alphas: &[f64], _: &AlphaGrid, out: &mut TrialOutput) {
    let Some((tuple, f)) = tuple_setup(s, n, out) else { return };
    if let Some(terms) = out.setup(f.terms(tuple.positives(), tuple.coefficients())) {
        alphas.iter().for_each(|&a| out.push(tuple_kato_check(&terms, n, a)));
    }
}

fn ones(k: usize) -> Vec<C64> {
    vec![C64::new(1.0, 0.0); k]
}

fn run_tuple_superadditive(s: &mut Sampler, n: usize, alphas: &[f64], _: &AlphaGrid, out: &mut TrialOutput) {
    let Some((tuple, f)) = tuple_setup(s, n, out) else { return };
    let q: Vec<Matrix> = (0..tuple.len()).map(|_| s.psd(n)).collect();
    let sum: Vec<Matrix> = tuple.positives().iter().zip(&q).map(|(a, b)| a + b).collect();
    let c = ones(tuple.len());
    let Some(terms) = out.setup((|| Ok([f.terms(&sum, &c)?, f.terms(tuple.positives(), &c)?, f.terms(&q, &c)?]))()) else {
        return;
    };
    for &a in alphas {
        out.push((|| {
            let check = superadditive_check(terms[0].eval(a)?, terms[1].eval(a)?, terms[2].eval(a)?, "tuple-superadditive");
            Ok(check.with_context(ctx(n, a)))
        })());
    }
}

fn run_tuple_monotone(s: &mut Sampler, n: usize, alphas: &[f64], _: &AlphaGrid, out: &mut TrialOutput) {
    let Some((tuple, f)) = tuple_setup(s, n, out) else { return };
    let q: Vec<Matrix> = tuple.positives().to_vec();
    let p: Vec<Matrix> = q.iter().map(|qk| qk + &s.psd(n).scale(s.uniform())).collect();
    let c = ones(tuple.len());
    let Some((tp, tq)) = out.setup((|| {
        for (pk, qk) in p.iter().zip(&q) {
            ensure_ordered(pk, qk)?;
        }
        Ok((f.terms(&p, &c)?, f.terms(&q, &c)?))
    })()) else {
        return;
    };
    for &a in alphas {
        out.push((|| {
            let (sp, sq) = (tp.eval(a)?, tq.eval(a)?);
            Ok(InequalityCheck::at_least("tuple-monotone", sp.value, sq.value, sp.scale().max(sq.scale()))
                .with_context(ctx(n, a)))
        })());
    }
}

fn run_tuple_sandwich(s: &mut Sampler, n: usize, alphas: &[f64], _: &AlphaGrid, out: &mut TrialOutput) {
    let Some((tuple, f)) = tuple_setup(s, n, out) else { return };
    let (m, big_m) = sandwich_constants(s);
    let q: Vec<Matrix> = tuple.positives().to_vec();
    let c = ones(tuple.len());
    let Some((tp, tq)) = out.setup((|| {
        check_bounds(m, big_m)?;
        let p = q.iter().map(|qk| sandwiched(s, qk, m, big_m)).collect::<Result<Vec<_>>>()?;
        for (pk, qk) in p.iter().zip(&q) {
            ensure_ordered(&qk.scale(big_m), pk)?;
            ensure_ordered(pk, &qk.scale(m))?;
        }
        Ok((f.terms(&p, &c)?, f.terms(&q, &c)?))
    })()) else {
        return;
    };
    for &a in alphas {
        out.extend((|| {
            let names = ("tuple-sandwich/upper", "tuple-sandwich/lower");
            let (u, l) = sandwich_pair(names, tp.eval(a)?, tq.eval(a)?, m, big_m, n, a);
            Ok([u, l])
        })());
    }
}

fn run_weight_bounds(s: &mut Sampler, n: usize, alphas: &[f64], _: &AlphaGrid, out: &mut TrialOutput) {
    let Some((tuple, f)) = tuple_setup(s, n, out) else { return };
    let Some((lo, hi)) = out.setup(weight_extremes(tuple.weights())) else { return };
    let weighted = f.weighted_identity_terms(tuple.weights());
    let unit = f.weighted_identity_terms(&vec![1.0; tuple.len()]);
    for &a in alphas {
        out.extend((|| {
            let names = ("weight-bounds/upper", "weight-bounds/lower");
            let (u, l) = sandwich_pair(names, weighted.eval(a)?, unit.eval(a)?, lo, hi, n, a);
            Ok([u, l])
        })());
    }
}

// ---- series

/// Series with `f(0) = 0` used for normal operators.
const VANISHING_SERIES: [Rule; 7] = [
    Rule::ExpMinusOne,
    Rule::GeomMinusOne,
    Rule::Sinh,
    Rule::Artanh,
    Rule::Sin,
    Rule::GeomAltMinusOne,
    Rule::LogOnePlusInv,
];

const PAIR_SERIES: [Rule; 12] = [
    Rule::Exp,
    Rule::ExpMinusOne,
    Rule::Geom,
    Rule::GeomMinusOne,
    Rule::Sinh,
    Rule::Cosh,
    Rule::Artanh,
    Rule::Cos,
    Rule::GeomAlt,
    Rule::LogOnePlusInv,
    Rule::Arcsin,
    Rule::Gauss2F1 { a: 1.0, b: 1.0, c: 2.0 },
];

/// `(f, g)` with nonnegative coefficients; the first three have `f ≥ g`
/// coefficientwise.
const BRACKET_PAIRS: [(Rule, Rule); 6] = [
    (Rule::Geom, Rule::LogOneMinusInv),
    (Rule::Exp, Rule::Sinh),
    (Rule::Geom, Rule::GeomMinusOne),
    (Rule::Sinh, Rule::Cosh),
    (Rule::Artanh, Rule::Arcsin),
    (Rule::Exp, Rule::Zero),
];

fn noted(mut c: InequalityCheck, note: &str) -> InequalityCheck {
    c.context.note = Some(alloc::string::String::from(note).into());
    c
}

fn pick<T: Clone>(s: &mut Sampler, items: &[T]) -> T {
    items[s.index(items.len())].clone()
}

fn margin(s: &mut Sampler) -> f64 {
    s.uniform_in(0.2, 0.95)
}

fn run_normal_series(s: &mut Sampler, n: usize, alphas: &[f64], _: &AlphaGrid, out: &mut TrialOutput) {
    let class = normal_class(s);
    let raw = s.matrix(n, class);
    let series = PowerSeries::from_rule(pick(s, &VANISHING_SERIES));
    let margin = margin(s);
    for &a in alphas {
        out.push((|| {
            let m = scale_to_trace_budget(&raw, a, series.radius(), margin)?;
            Ok(noted(check_normal_series(&m, a, &series)?, series.name()))
        })());
    }
}

fn run_normal_series_example(s: &mut Sampler, n: usize, alphas: &[f64], _: &AlphaGrid, out: &mut TrialOutput) {
    let class = normal_class(s);
    let raw = s.matrix(n, class);
    let which = pick(s, &ExampleKind::ALL);
    let radius = if which == ExampleKind::Exp { f64::INFINITY } else { 1.0 };
    let margin = margin(s);
    for &a in alphas {
        out.push((|| {
            let m = scale_to_trace_budget(&raw, a, radius, margin)?;
            check_normal_series_example(&m, a, which)
        })());
    }
}

/// The pair `(T, cA)` with `c` chosen so both trace loads equal
/// `margin·R`; unchanged for entire series.
fn budgeted(pair: &CommutingPair, alpha: f64, radius: f64, margin: f64) -> CommutingPair {
    if !radius.is_finite() {
        return pair.clone();
    }
    let load = pair.power_trace(2.0 * alpha).max(pair.power_trace(2.0 * (1.0 - alpha)));
    if load > 0.0 {
        pair.with_weight_scale((margin * radius / load).sqrt())
    } else {
        pair.clone()
    }
}

fn commuting_pair(s: &mut Sampler, n: usize, out: &mut TrialOutput) -> Option<(Matrix, Matrix, CommutingPair)> {
    let (t, a) = s.double_commuting_pair(n);
    let pair = out.setup(CommutingPair::new(&t, &a))?;
    Some((t, a, pair))
}

fn run_commuting_series(s: &mut Sampler, n: usize, alphas: &[f64], _: &AlphaGrid, out: &mut TrialOutput) {
    let Some((_, _, pair)) = commuting_pair(s, n, out) else { return };
    let series = PowerSeries::from_rule(pick(s, &PAIR_SERIES));
    let margin = margin(s);
    for (i, &a) in alphas.iter().enumerate() {
        let scaled = budgeted(&pair, a, series.radius(), margin);
        if i == 0 && n <= TRUNCATED_CROSSCHECK_DIM {
            match scaled.truncated_gap(&series) {
                Ok(gap) if gap <= ORACLE_TOL => {}
                Ok(gap) => out.fail(Error::OracleMismatch { gap }),
                Err(e) => out.fail(e),
            }
        }
        out.push(scaled.series_check(&series, a).map(|c| noted(c, series.name())));
    }
}

fn run_commuting_series_example(s: &mut Sampler, n: usize, alphas: &[f64], _: &AlphaGrid, out: &mut TrialOutput) {
    let (t, a) = s.double_commuting_pair(n);
    let which = pick(s, &ExampleKind::ALL);
    let radius = if which == ExampleKind::Exp { f64::INFINITY } else { 1.0 };
    let margin = margin(s);
    let Some(pair) = out.setup(CommutingPair::new(&t, &a)) else { return };
    for &x in alphas {
        let load = pair.power_trace(2.0 * x).max(pair.power_trace(2.0 * (1.0 - x)));
        let c = if radius.is_finite() && load > 0.0 { (margin * radius / load).sqrt() } else { 1.0 };
        out.push(crate::series::check_commuting_series_example(&t, &a.scale(c), x, which));
    }
}

fn run_series_brackets(s: &mut Sampler, n: usize, alphas: &[f64], _: &AlphaGrid, out: &mut TrialOutput) {
    let Some((_, _, pair)) = commuting_pair(s, n, out) else { return };
    let (f, g) = pick(s, &BRACKET_PAIRS);
    let (f, g) = (PowerSeries::from_rule(f), PowerSeries::from_rule(g));
    let radius = f.radius().min(g.radius());
    let margin = margin(s);
    for &a in alphas {
        let scaled = budgeted(&pair, a, radius, margin);
        out.extend(scaled.bracket_checks(&f, &g, a).map(|(sup, dom)| [Some(sup), dom].into_iter().flatten()));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid() -> AlphaGrid {
        AlphaGrid::uniform(4)
    }

    #[test]
    fn ids_are_unique_and_resolvable() {
        for (i, c) in CHECKERS.iter().enumerate() {
            assert_eq!(checker_index(c.id).unwrap(), i);
        }
        assert!(matches!(checker("nope"), Err(Error::UnknownChecker(_))));
    }

    #[test]
    fn every_checker_passes_small_campaign() {
        for spec in CHECKERS {
            for n in [1, 2, 4] {
                let out = run_checker(spec.id, n, 6, 7, &grid()).unwrap();
                assert!(out.errors.is_empty(), "{} n={n}: {:?}", spec.id, out.errors);
                assert!(!out.checks.is_empty(), "{} n={n} produced no checks", spec.id);
                for c in &out.checks {
                    assert!(c.passed, "{} n={n}: {c:?}", spec.id);
                }
            }
        }
    }

    #[test]
    fn trials_are_deterministic() {
        let a = run_checker("commuting-series", 3, 4, 99, &grid()).unwrap();
        let b = run_checker("commuting-series", 3, 4, 99, &grid()).unwrap();
        assert_eq!(a.checks, b.checks);
    }

    #[test]
    fn trace_kato_sharpness_examples() {
        let one = sharpness_search("trace-kato", 1, 20, SeedPlan::new(1, 0), &AlphaGrid::default()).unwrap();
        assert!((one.best_ratio - 1.0).abs() < 1e-12, "{one:?}");
        let two = sharpness_search("trace-kato", 2, 1000, SeedPlan::new(1, 0), &AlphaGrid::default()).unwrap();
        assert!(two.best_ratio > 0.0 && two.best_ratio <= 1.0 + 1e-9);
        let again = sharpness_search("trace-kato", 2, 1000, SeedPlan::new(1, 0), &AlphaGrid::default()).unwrap();
        assert_eq!(two, again);
        assert!(two.witness.unwrap().seed == Some(1));
    }

    #[test]
    fn streams_are_disjoint_across_cells() {
        assert_ne!(trial_stream(0, 1, 0), trial_stream(0, 2, 0));
        assert_ne!(trial_stream(1, 1, 0), trial_stream(0, 1, 0));
        assert_ne!(trial_stream(0, 1, 1), trial_stream(0, 1, 0));
    }
}
