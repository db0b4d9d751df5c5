//! Independent checks of claimed polynomial solutions.
//!
//! Every check returns a [`Certificate`]: a pass/fail verdict together with
//! the named quantities it was decided on, so that a failure can be
//! reproduced without rerunning the search. Exact checks demand a literal
//! zero; numeric checks compare against [`Tolerances`].

mod sl2;

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;

use crate::algebra::{Approx, Field, OrderedField, RatFunc, Ring, UniPoly, Q};
use crate::gradation::OdeOperator;
use crate::models::{Branch, JuddianPoint, JuddianSet, ModelKind, ModelSpec, SweepSystem};
use crate::recurrence::{power_sums, theorem4_from_sums, RecurrenceError};

pub use sl2::{cfrm_defect, degeneracy_lemma_check, sl2_certificate, sl2_decompose, sl2_fit, Sl2Decomposition, Sl2Outcome};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum VerificationError {
    #[error("roots are not simple (z_{0} = z_{1})")]
    RepeatedRoots(usize, usize),
    #[error("root z_{index} = {value} is a zero of the leading coefficient A")]
    SingularRoot { index: usize, value: String },
    #[error("check needs a second-order operator")]
    NotSecondOrder,
    #[error("no sum rule is stated for the {0} model")]
    NoSumRule(&'static str),
    #[error(transparent)]
    Recurrence(#[from] RecurrenceError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertificateKind {
    Residual,
    Bethe,
    SumRule,
    Theorem4,
    Sl2,
    Degeneracy,
}

impl CertificateKind {
    pub fn name(self) -> &'static str {
        match self {
            CertificateKind::Residual => "residual",
            CertificateKind::Bethe => "bethe",
            CertificateKind::SumRule => "sum-rule",
            CertificateKind::Theorem4 => "theorem4",
            CertificateKind::Sl2 => "sl2",
            CertificateKind::Degeneracy => "degeneracy",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    fn of(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

/// A recorded quantity: an exact value printed in canonical form, or a float.
#[derive(Clone, Debug, PartialEq)]
pub enum Witness {
    Exact(String),
    Float(f64),
    Flag(bool),
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Exact(s) => f.write_str(s),
            Witness::Float(x) => write!(f, "{x:e}"),
            Witness::Flag(b) => write!(f, "{b}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Certificate {
    pub kind: CertificateKind,
    pub status: Status,
    pub model: Option<String>,
    pub n: Option<usize>,
    pub parameter: Option<String>,
    pub witnesses: Vec<(String, Witness)>,
}

impl Certificate {
    fn new(kind: CertificateKind, ok: bool) -> Self {
        Certificate { kind, status: Status::of(ok), model: None, n: None, parameter: None, witnesses: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn with_context(mut self, model: &str, n: usize, parameter: impl ToString) -> Self {
        self.model = Some(model.into());
        self.n = Some(n);
        self.parameter = Some(parameter.to_string());
        self
    }

    fn exact(mut self, name: &str, v: impl ToString) -> Self {
        self.witnesses.push((name.into(), Witness::Exact(v.to_string())));
        self
    }

    fn float(mut self, name: &str, v: f64) -> Self {
        self.witnesses.push((name.into(), Witness::Float(v)));
        self
    }

    fn flag(mut self, name: &str, v: bool) -> Self {
        self.witnesses.push((name.into(), Witness::Flag(v)));
        self
    }

    pub fn witness(&self, name: &str) -> Option<&Witness> {
        self.witnesses.iter().find(|(k, _)| k == name).map(|(_, w)| w)
    }

    /// Re-decides the verdict from the stored witnesses alone: a numeric
    /// certificate stores `measured` and `tolerance`, an exact one
    /// `exact_zero`, a predicate certificate `holds`.
    pub fn reverify(&self) -> bool {
        let ok = match (self.witness("measured"), self.witness("tolerance"), self.witness("exact_zero"), self.witness("holds")) {
            (Some(Witness::Float(m)), Some(Witness::Float(t)), _, _) => m.is_finite() && m <= t,
            (_, _, Some(Witness::Flag(z)), _) => *z,
            (_, _, _, Some(Witness::Flag(h))) => *h,
            _ => return false,
        };
        ok == self.passed()
    }
}

/// Numeric-mode thresholds.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    /// `max|ℒS| / (max|ℒ|·max|S|)`.
    pub residual_rel: f64,
    pub bethe_abs: f64,
    pub sum_rule_abs: f64,
    /// Relative mismatch of the predicted `C` coefficients.
    pub theorem4_rel: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { residual_rel: 1e-10, bethe_abs: 1e-8, sum_rule_abs: 1e-9, theorem4_rel: 1e-9 }
    }
}

fn max_abs(xs: impl Iterator<Item = f64>) -> f64 {
    xs.fold(0.0, |m, x| m.max(x.abs()))
}

/// Exact residual: pass iff `ℒS` is the zero polynomial.
pub fn residual_certificate<F: Field>(op: &OdeOperator<F>, sol: &UniPoly<F>) -> Certificate {
    let r = op.apply(sol);
    let nonzero = r.coeffs().iter().filter(|c| !c.is_zero()).count();
    let mut cert = Certificate::new(CertificateKind::Residual, r.is_zero()).flag("exact_zero", r.is_zero()).exact("nonzero_coefficients", nonzero);
    if let Some(d) = r.degree() {
        cert = cert.exact("leading_residual", r.coeff(d)).exact("residual_degree", d);
    }
    cert
}

/// Numeric residual of a solution given by double coefficients
/// `a_0, …, a_n` under an exact operator evaluated in double precision.
pub fn residual_certificate_numeric(op: &OdeOperator<Q>, coefficients: &[f64], tol: &Tolerances) -> Certificate {
    let opf = op.map(|c| Approx::new(c.to_f64()));
    let s = UniPoly::new(coefficients.iter().map(|&x| Approx::new(x)).collect(), crate::algebra::Var::Z);
    let r = opf.apply(&s);
    let num = max_abs(r.coeffs().iter().map(|c| c.value));
    let den = max_abs(opf.terms().iter().map(|t| t.coef.value)) * max_abs(coefficients.iter().copied());
    let rel = if num == 0.0 { 0.0 } else { num / den.max(f64::MIN_POSITIVE) };
    Certificate::new(CertificateKind::Residual, rel.is_finite() && rel <= tol.residual_rel)
        .float("measured", rel)
        .float("tolerance", tol.residual_rel)
        .float("max_abs_residual", num)
}

/// Exact residual certificate for a whole sweep: every coefficient of
/// `ℒS` (a rational function of the coupling) vanishes at every root of the
/// defining polynomial.
pub fn sweep_residual_certificate(set: &JuddianSet) -> Certificate {
    let d = &set.defining;
    let r = set.system.operator.apply(&set.system.solution.poly);
    let failing = r.coeffs().iter().filter(|c| !c.vanishes_on(d)).count();
    Certificate::new(CertificateKind::Residual, failing == 0 && !d.is_constant())
        .flag("exact_zero", failing == 0 && !d.is_constant())
        .exact("defining_polynomial", d)
        .exact("coefficients_checked", r.coeffs().len())
        .exact("coefficients_failing", failing)
}

fn complex_poly(op: &OdeOperator<Q>, l: usize) -> Vec<f64> {
    op.coefficient(l).coeffs().iter().map(|c| c.to_f64()).collect()
}

fn horner(c: &[f64], z: Complex64) -> Complex64 {
    c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &a| acc * z + a)
}

/// Per-root residuals of the Bethe-ansatz equations
///
/// ```text
/// Σ_{l≠i} 2/(z_i − z_l) + B(z_i)/A(z_i) = 0,
/// ```
///
/// which the zeros of any polynomial solution of `A S″ + B S′ + C S = 0`
/// satisfy. Pass iff every residual is below `tol.bethe_abs`.
pub fn bethe_residuals(op: &OdeOperator<Q>, roots: &[Complex64], tol: &Tolerances) -> Result<(Certificate, Vec<f64>), VerificationError> {
    if op.order() != 2 {
        return Err(VerificationError::NotSecondOrder);
    }
    let (a, b) = (complex_poly(op, 2), complex_poly(op, 1));
    let a_scale = max_abs(a.iter().copied());
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            if (roots[i] - roots[j]).norm() <= 1e-12 * (1.0 + roots[i].norm()) {
                return Err(VerificationError::RepeatedRoots(i, j));
            }
        }
        let zi = roots[i];
        let scale = a_scale * libm::pow(1.0 + zi.norm(), a.len().saturating_sub(1) as f64);
        if horner(&a, zi).norm() <= 1e-12 * scale {
            return Err(VerificationError::SingularRoot { index: i, value: format!("{zi}") });
        }
    }
    let residuals: Vec<f64> = (0..roots.len())
        .map(|i| {
            let zi = roots[i];
            let sum: Complex64 = (0..roots.len()).filter(|&l| l != i).map(|l| 2.0 / (zi - roots[l])).sum();
            (sum + horner(&b, zi) / horner(&a, zi)).norm()
        })
        .collect();
    let worst = max_abs(residuals.iter().copied());
    let cert = Certificate::new(CertificateKind::Bethe, worst.is_finite() && worst <= tol.bethe_abs)
        .float("measured", worst)
        .float("tolerance", tol.bethe_abs)
        .exact("roots", roots.len());
    Ok((cert, residuals))
}

/// The quantity that a model's sum rule sets to zero, given the coupling
/// `g` and `p₁ = Σ z_i`:
///
/// * Rabi and driven Rabi: `Δ² + 2ng² + 2sωg p₁` with `s = −1` only on the
///   primed driven branch;
/// * Schweber form: `μ² + κ p₁`, `κ = 2g/ω`, `μ = Δ/ω`;
/// * Koc form: `μ² + 4κ² p₁`, `κ = g/ω`.
pub fn sum_rule_value<F: Field>(spec: &ModelSpec, n: usize, g: &F, p1: &F) -> Result<F, VerificationError> {
    let w = F::from_rational(&spec.omega);
    let d = F::from_rational(&spec.delta);
    let mu = d.div(&w).expect("ω > 0");
    match spec.kind {
        ModelKind::Rabi | ModelKind::DrivenRabi => {
            let s = if spec.kind == ModelKind::DrivenRabi && spec.branch == Branch::Minus { -2 } else { 2 };
            Ok(d.mul(&d).add(&g.mul(g).scale(2 * n as i64)).add(&w.mul(g).mul(p1).scale(s)))
        }
        ModelKind::SchweberForm => {
            let k = g.scale(2).div(&w).expect("ω > 0");
            Ok(mu.mul(&mu).add(&k.mul(p1)))
        }
        ModelKind::KocForm => {
            let k = g.div(&w).expect("ω > 0");
            Ok(mu.mul(&mu).add(&k.mul(&k).scale(4).mul(p1)))
        }
        other => Err(VerificationError::NoSumRule(other.name())),
    }
}

/// Numeric sum rule at a Juddian point from the computed zeros.
pub fn sum_rule_certificate(spec: &ModelSpec, n: usize, g: f64, roots: &[Complex64], tol: &Tolerances) -> Result<Certificate, VerificationError> {
    let p1: Complex64 = roots.iter().sum();
    let v = sum_rule_value(spec, n, &Approx::new(g), &Approx::new(p1.re))?.value;
    let m = libm::hypot(v, p1.im);
    Ok(Certificate::new(CertificateKind::SumRule, m.is_finite() && m <= tol.sum_rule_abs)
        .float("measured", m)
        .float("tolerance", tol.sum_rule_abs)
        .float("sum_of_roots", p1.re))
}

/// Exact sum rule over a sweep: `p₁ = −a_{n−1}(t)` is substituted and the
/// resulting rational function must vanish on the defining polynomial.
pub fn sweep_sum_rule_certificate(set: &JuddianSet) -> Result<Certificate, VerificationError> {
    let sys = &set.system;
    let n = sys.n;
    let p1 = if n == 0 { RatFunc::zero() } else { sys.solution.poly.coeff(n - 1).neg() };
    let t = RatFunc::param(crate::algebra::Var::T);
    let v = sum_rule_value(&sys.spec, n, &t, &p1)?;
    let ok = v.vanishes_on(&set.defining) && !set.defining.is_constant();
    Ok(Certificate::new(CertificateKind::SumRule, ok).flag("exact_zero", ok).exact("sum_rule", &v).exact("defining_polynomial", &set.defining))
}

fn theorem4_cert<F: Field>(op: &OdeOperator<F>, s: &UniPoly<F>, check: impl Fn(&F) -> bool) -> Result<Certificate, VerificationError> {
    let n = s.degree().unwrap_or(0);
    let (p1, p2, e2) = power_sums(s);
    let pred = theorem4_from_sums(op, n, &p1, &p2, &e2)?;
    let diffs = pred.differences();
    let ok = diffs.iter().all(&check);
    let mut cert = Certificate::new(CertificateKind::Theorem4, ok).flag("holds", ok).exact("gamma", pred.gamma);
    for (i, name) in ["c_gamma", "c_gamma-1", "c_gamma-2"].iter().enumerate() {
        cert = cert.exact(&format!("{name}_predicted"), &pred.predicted[i]).exact(&format!("{name}_actual"), &pred.actual[i]);
    }
    Ok(cert)
}

/// Predicted versus actual `(c_γ, c_{γ−1}, c_{γ−2})` for an exact solution.
/// The power sums of the zeros come from the top coefficients of `S`, so no
/// root finding is involved; simplicity of the zeros is checked by
/// `gcd(S, S′) = 1`.
pub fn theorem4_certificate<F: Field>(op: &OdeOperator<F>, sol: &UniPoly<F>) -> Result<Certificate, VerificationError> {
    if !sol.is_squarefree() {
        return Err(RecurrenceError::RepeatedRoots.into());
    }
    theorem4_cert(op, &sol.monic(), |d| d.is_zero())
}

/// The coefficient identity over a sweep: the differences must vanish on the defining
/// polynomial.
pub fn sweep_theorem4_certificate(set: &JuddianSet) -> Result<Certificate, VerificationError> {
    let d = set.defining.clone();
    let nonconst = !d.is_constant();
    theorem4_cert(&set.system.operator, &set.system.solution.poly, move |x| nonconst && x.vanishes_on(&d))
}

/// The coefficient identity in double precision from the computed zeros.
pub fn theorem4_certificate_numeric(op: &OdeOperator<Q>, roots: &[Complex64], tol: &Tolerances) -> Result<Certificate, VerificationError> {
    let opf = op.map(|c| Approx::new(c.to_f64()));
    let p1: Complex64 = roots.iter().sum();
    let p2: Complex64 = roots.iter().map(|z| z * z).sum();
    let e2 = (p1 * p1 - p2) * 0.5;
    let pred = theorem4_from_sums(&opf, roots.len(), &Approx::new(p1.re), &Approx::new(p2.re), &Approx::new(e2.re))?;
    let scale = max_abs(opf.terms().iter().map(|t| t.coef.value)) * libm::pow(1.0 + roots.iter().map(|z| z.norm()).fold(0.0, f64::max), 2.0);
    let worst = max_abs(pred.differences().iter().map(|d| d.value)) / scale.max(f64::MIN_POSITIVE);
    Ok(Certificate::new(CertificateKind::Theorem4, worst.is_finite() && worst <= tol.theorem4_rel)
        .float("measured", worst)
        .float("tolerance", tol.theorem4_rel))
}

/// All certificates that apply to one Juddian point: exact residual at the
/// refined rational coupling is not expected to vanish, so the residual is
/// judged numerically; for n ≥ 2 the identity holds exactly at any coupling on
/// the baseline and is checked exactly; Bethe and the sum rule use the zeros.
pub fn certify_point(set: &JuddianSet, point: &JuddianPoint, tol: &Tolerances) -> Vec<Certificate> {
    certify_values(&set.system, &point.param, point.value, &point.coefficients, &point.roots, tol)
}

/// [`certify_point`] from bare values, e.g. a point read back from a file.
/// The coefficients and zeros are taken as given; only the operator is
/// rebuilt from `param`.
pub fn certify_values(
    sys: &SweepSystem,
    param: &Q,
    value: f64,
    coefficients: &[f64],
    roots: &[Complex64],
    tol: &Tolerances,
) -> Vec<Certificate> {
    let spec = &sys.spec;
    let n = sys.n;
    let ctx = |c: Certificate| c.with_context(spec.kind.name(), n, param);
    let mut out = Vec::new();
    let Some(op) = sys.operator_at(param) else { return out };
    out.push(ctx(residual_certificate_numeric(&op, coefficients, tol)));
    if op.order() == 2 {
        // The identities use the recurrence lines for a_{n−1}, a_{n−2}; for
        // n < 2 the last one is a constraint line and only holds at the
        // algebraic point itself.
        let exact = if n >= 2 { sys.solution_at(param).and_then(|s| theorem4_certificate(&op, &s).ok()) } else { None };
        match exact {
            Some(c) => out.push(ctx(c)),
            None => {
                if let Ok(c) = theorem4_certificate_numeric(&op, roots, tol) {
                    out.push(ctx(c));
                }
            }
        }
        match bethe_residuals(&op, roots, tol) {
            Ok((c, _)) => out.push(ctx(c)),
            // A double zero at a regular point forces S ≡ 0, so it cannot
            // come from a genuine solution. A zero at a root of A is
            // legitimate; the Bethe equations simply do not apply there.
            Err(VerificationError::RepeatedRoots(..)) => {
                out.push(ctx(Certificate::new(CertificateKind::Bethe, false).flag("holds", false)));
            }
            Err(_) => {}
        }
    }
    if let Ok(c) = sum_rule_certificate(spec, n, value, roots, tol) {
        out.push(ctx(c));
    }
    out
}

/// Exact certificates for every point of a sweep at once.
pub fn certify_sweep(set: &JuddianSet) -> Vec<Certificate> {
    let sys = &set.system;
    let ctx = |c: Certificate| c.with_context(sys.spec.kind.name(), sys.n, &set.defining);
    let mut out = alloc::vec![ctx(sweep_residual_certificate(set))];
    if sys.operator.order() == 2 {
        if let Ok(c) = sweep_theorem4_certificate(set) {
            out.push(ctx(c));
        }
    }
    if let Ok(c) = sweep_sum_rule_certificate(set) {
        out.push(ctx(c));
    }
    out
}
