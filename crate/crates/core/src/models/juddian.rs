//! Juddian points: coupling values on a baseline where every constraint
//! vanishes, so that the model has a polynomial solution.
//!
//! Exact pipeline: build the operator with the coupling as a symbol `t`,
//! solve the baseline, run the recurrence over ℚ(t), clear the constraints,
//! and take the squarefree common part `d(t)` of the cleared constraints with
//! the roots of the clearing factor removed. Every real root of `d` in the
//! domain is a Juddian point; the residual `ℒS` is certified to vanish at all
//! of them at once by checking `d | numerator` for each of its coefficients.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Signed;
use num_complex::Complex64;

use crate::algebra::roots::refine_interval;
use crate::algebra::{complex_roots, polish_roots_exact, resultant, sturm_isolate, Approx, OrderedField, RatFunc, Ring, RootInterval, UniPoly, Var, Q};
use crate::gradation::OdeOperator;
use crate::recurrence::{
    constraint_polynomials, downward_recurrence, raw_constraints, solve_baseline, BaselineSolution, ConstraintPolynomial, PolynomialSolution,
};

use super::{ModelError, ModelSpec};

/// A model on its n-th baseline with the coupling left symbolic.
#[derive(Clone, Debug)]
pub struct SweepSystem {
    pub spec: ModelSpec,
    pub n: usize,
    /// `E_n(t)`.
    pub energy: RatFunc<Q>,
    /// The built operator with `E = E_n(t)` substituted.
    pub operator: OdeOperator<RatFunc<Q>>,
    /// `scale · operator`, free of denominators in `t`.
    pub baseline: BaselineSolution<RatFunc<Q>>,
    pub scale: UniPoly<Q>,
    pub solution: PolynomialSolution<RatFunc<Q>>,
    pub constraints: Vec<ConstraintPolynomial>,
}

impl SweepSystem {
    pub fn gamma(&self) -> i64 {
        self.baseline.gamma()
    }

    /// The operator at a rational coupling value (`None` at a pole).
    pub fn operator_at(&self, t: &Q) -> Option<OdeOperator<Q>> {
        let mut terms = Vec::new();
        for term in self.operator.terms() {
            terms.push(crate::gradation::OdeTerm::new(term.coef.eval(t)?, term.m, term.l));
        }
        Some(OdeOperator::new(terms))
    }

    /// `S_n` at a rational coupling value.
    pub fn solution_at(&self, t: &Q) -> Option<UniPoly<Q>> {
        let coeffs: Option<Vec<Q>> = self.solution.poly.coeffs().iter().map(|c| c.eval(t)).collect();
        Some(UniPoly::new(coeffs?, Var::Z))
    }

    pub fn energy_at(&self, t: &Q) -> Option<Q> {
        self.energy.eval(t)
    }

    /// Product of the clearing factor and the denominator scale: coupling
    /// values where the recurrence itself breaks down.
    pub fn exceptional_factor(&self) -> UniPoly<Q> {
        match self.constraints.first() {
            Some(c) => c.clearing_factor.mul(&self.scale),
            None => self.scale.clone(),
        }
    }
}

/// Builds the symbolic system for `spec` on baseline `n`.
pub fn sweep_system(spec: &ModelSpec, n: usize) -> Result<SweepSystem, ModelError> {
    spec.validate()?;
    let p = spec.sweep_params();
    let built = spec.build(&p);
    let fixed = solve_baseline(&built, n)?;
    let energy = fixed.energy.clone().expect("solve_baseline fixes the energy");
    let operator = fixed.op.clone();
    let scale = operator
        .terms()
        .iter()
        .fold(UniPoly::constant(Q::one(), Var::T), |acc, t| acc.lcm(t.coef.den()))
        .with_var(Var::T);
    let scaled = operator.scale(&RatFunc::from_poly(scale.clone()));
    let baseline = BaselineSolution::assume(scaled, n)?;
    let solution = downward_recurrence(&baseline)?;
    let constraints = constraint_polynomials(&baseline, &solution)?;
    Ok(SweepSystem { spec: spec.clone(), n, energy, operator, baseline, scale, solution, constraints })
}

/// One Juddian point with its solution evaluated at a refined rational
/// approximation of the coupling.
#[derive(Clone, Debug)]
pub struct JuddianPoint {
    /// Isolating interval, refined to width below 2⁻¹⁰⁰.
    pub interval: RootInterval,
    pub param: Q,
    /// The coupling `t` (g, Ω, Λ or κ).
    pub value: f64,
    /// The physical coupling g (κ for the generalized model).
    pub coupling: f64,
    pub energy: f64,
    /// `a_{n,0}, …, a_{n,n}`.
    pub coefficients: Vec<f64>,
    /// Zeros of `S_n` (in the model's own variable: `u = z/g` for the
    /// two-photon and two-mode models).
    pub roots: Vec<Complex64>,
    /// `max|ℒS| / (max|ℒ| · max|S|)` evaluated exactly at `param`.
    pub residual_rel: f64,
}

#[derive(Clone, Debug)]
pub struct JuddianSet {
    pub system: SweepSystem,
    /// Squarefree polynomial whose real roots in the domain are the points.
    pub defining: UniPoly<Q>,
    /// `res(P₁, P₂)` when there are two nonconstant constraints.
    pub resultant: Option<Q>,
    /// Common roots of the constraints that are also roots of the
    /// clearing factor; excluded pending separate analysis.
    pub excluded: Vec<RootInterval>,
    /// The residual and every raw constraint vanish at every root of
    /// `defining` (exact divisibility check).
    pub certified: bool,
    pub points: Vec<JuddianPoint>,
}

fn refinement_eps() -> Q {
    Q::new(BigInt::from(1u8), BigInt::from(1u8) << 100)
}

fn max_abs(xs: impl Iterator<Item = f64>) -> f64 {
    xs.fold(0.0, |m, x| m.max(x.abs()))
}

/// Relative size of `ℒS` at a fixed parameter value.
pub(crate) fn relative_residual(op: &OdeOperator<Q>, s: &UniPoly<Q>) -> f64 {
    let res = op.apply(s);
    let r = max_abs(res.coeffs().iter().map(|c| c.to_f64()));
    let o = max_abs(op.terms().iter().map(|t| t.coef.to_f64()));
    let m = max_abs(s.coeffs().iter().map(|c| c.to_f64()));
    if r == 0.0 {
        0.0
    } else {
        r / (o * m).max(f64::MIN_POSITIVE)
    }
}

/// Exact Juddian points of `spec` on baseline `n` with the coupling in the
/// open interval `(lo, hi)`.
pub fn juddian_points(spec: &ModelSpec, n: usize, lo: &Q, hi: &Q) -> Result<JuddianSet, ModelError> {
    if lo >= hi {
        return Err(ModelError::InvalidParameter("empty coupling interval".into()));
    }
    let system = sweep_system(spec, n)?;
    let cleared: Vec<&UniPoly<Q>> = system.constraints.iter().map(|c| &c.normalized).collect();
    let nonzero: Vec<&UniPoly<Q>> = cleared.iter().copied().filter(|p| !p.is_zero()).collect();
    if nonzero.is_empty() {
        return Err(ModelError::IdenticallySatisfied);
    }
    let resultant = match (cleared.first(), cleared.get(1)) {
        (Some(a), Some(b)) if !a.is_zero() && !b.is_zero() && !(a.is_constant() && b.is_constant()) => Some(resultant(a, b)?),
        _ => None,
    };
    let mut common = nonzero[0].clone();
    for p in &nonzero[1..] {
        common = common.gcd(p);
    }
    let mut defining = common.squarefree_part();
    let bad = system.exceptional_factor();
    let mut removed = UniPoly::constant(Q::one(), Var::T);
    loop {
        let g = defining.gcd(&bad);
        if g.is_constant() {
            break;
        }
        removed = removed.mul(&g);
        defining = defining.exact_quo(&g)?;
    }
    let defining = defining.with_var(Var::T);
    if let Some(r) = &resultant {
        // A nonzero resultant means no common root at all.
        debug_assert!(r.is_zero() || defining.is_constant());
    }
    let excluded = if removed.is_constant() {
        Vec::new()
    } else {
        open_interval_roots(&removed.squarefree_part(), lo, hi)?
    };
    let residual = system.operator.apply(&system.solution.poly);
    let raw = raw_constraints(&system.baseline, &system.solution);
    let certified = defining.is_constant()
        || (residual.coeffs().iter().all(|c| c.vanishes_on(&defining)) && raw.iter().all(|c| c.vanishes_on(&defining)));
    let mut points = Vec::new();
    if !defining.is_constant() {
        for iv in open_interval_roots(&defining, lo, hi)? {
            let iv = refine_interval(&defining, &iv, &refinement_eps())?;
            points.push(evaluate_point(&system, iv)?);
        }
    }
    Ok(JuddianSet { system, defining, resultant, excluded, certified, points })
}

fn open_interval_roots(p: &UniPoly<Q>, lo: &Q, hi: &Q) -> Result<Vec<RootInterval>, ModelError> {
    let ivs = sturm_isolate(p, lo, hi)?;
    Ok(ivs.into_iter().filter(|iv| !(iv.is_exact() && (&iv.lo == lo || &iv.lo == hi))).collect())
}

fn evaluate_point(system: &SweepSystem, interval: RootInterval) -> Result<JuddianPoint, ModelError> {
    let t = interval.midpoint();
    let pole = || ModelError::InvalidParameter("coupling value at a pole of the recurrence".into());
    let s = system.solution_at(&t).ok_or_else(pole)?;
    let op = system.operator_at(&t).ok_or_else(pole)?;
    let energy = system.energy_at(&t).ok_or_else(pole)?.to_f64();
    let coefficients: Vec<f64> = s.coeffs().iter().map(|c| c.to_f64()).collect();
    let roots = polish_roots_exact(&s, &complex_roots(&coefficients));
    let value = t.to_f64();
    Ok(JuddianPoint {
        residual_rel: relative_residual(&op, &s),
        coupling: system.spec.physical_coupling(value),
        interval,
        param: t,
        value,
        energy,
        coefficients,
        roots,
    })
}

/// A Juddian point found in floating point.
#[derive(Clone, Debug)]
pub struct NumericPoint {
    /// The coupling as an exact rational, refined past double precision so
    /// that the reported solution is evaluated where the constraint is
    /// small even when the point is badly conditioned.
    pub param: Q,
    pub value: f64,
    pub coupling: f64,
    pub energy: f64,
    pub coefficients: Vec<f64>,
    pub roots: Vec<Complex64>,
    pub residual_rel: f64,
}

struct NumericState {
    cleared: Vec<f64>,
    clearing: f64,
    energy: f64,
    coefficients: Vec<f64>,
    residual_rel: f64,
}

fn numeric_state(spec: &ModelSpec, n: usize, t: f64) -> Result<NumericState, ModelError> {
    let p = spec.params_with(Approx::new(t));
    let built = spec.build(&p);
    let b = solve_baseline(&built, n)?;
    let sol = downward_recurrence(&b)?;
    let clearing = b.clearing_factor();
    let cleared = raw_constraints(&b, &sol).iter().map(|c| c.mul(&clearing).value).collect();
    let res = b.op.apply(&sol.poly);
    let r = max_abs(res.coeffs().iter().map(|c| c.value));
    let o = max_abs(b.op.terms().iter().map(|t| t.coef.value));
    let coefficients: Vec<f64> = (0..=n).map(|k| sol.poly.coeff(k).value).collect();
    let m = max_abs(coefficients.iter().copied());
    Ok(NumericState {
        cleared,
        clearing: clearing.value,
        energy: b.energy.map(|e| e.value).unwrap_or(f64::NAN),
        residual_rel: if r == 0.0 { 0.0 } else { r / (o * m) },
        coefficients,
    })
}

/// The first cleared constraint evaluated exactly at a rational coupling.
fn exact_first_constraint(spec: &ModelSpec, n: usize, t: &Q) -> Option<Q> {
    let b = solve_baseline(&spec.build(&spec.params_with(t.clone())), n).ok()?;
    let sol = downward_recurrence(&b).ok()?;
    let first = raw_constraints(&b, &sol).into_iter().next()?;
    Some(first.mul(&b.clearing_factor()))
}

/// Secant steps on the exactly evaluated constraint, starting from a root
/// located in floating point. Near small couplings the float constraint is
/// dominated by cancellation, so bisection alone can stop well short of
/// machine precision. Returns `t` unchanged if the iteration misbehaves.
fn polish_coupling(spec: &ModelSpec, n: usize, t: f64) -> f64 {
    let f = |x: f64| Q::from_float(x).and_then(|q| exact_first_constraint(spec, n, &q)).map(|v| v.to_f64());
    let (mut x0, mut x1) = (t, t * (1.0 + 1e-9) + 1e-300);
    let (Some(mut f0), Some(mut f1)) = (f(x0), f(x1)) else { return t };
    for _ in 0..8 {
        if f1 == 0.0 || f1 == f0 {
            break;
        }
        let x2 = x1 - f1 * (x1 - x0) / (f1 - f0);
        if !x2.is_finite() || (x2 - t).abs() > 1e-6 * t.abs().max(1e-300) {
            return t;
        }
        let Some(f2) = f(x2) else { return t };
        (x0, f0, x1, f1) = (x1, f1, x2, f2);
        if (x1 - x0).abs() <= f64::EPSILON * x1.abs() {
            break;
        }
    }
    x1
}

/// Bits kept past the leading one when refining a coupling beyond `f64`.
const REFINE_BITS: i32 = 120;

fn round_dyadic(x: &Q, exponent: i32) -> Q {
    let k = (REFINE_BITS - exponent).max(0) as usize;
    let scale = Q::from_integer(BigInt::from(1u8) << k);
    (x * &scale).round() / scale
}

/// Continues the secant iteration in exact arithmetic, rounding iterates to
/// `REFINE_BITS` significant bits. Some Juddian points are so sensitive that
/// the nearest double leaves a relative residual far above 1e-10; the
/// refined rational does not. Falls back to the double itself whenever an
/// iterate fails to shrink the constraint.
fn refine_coupling_exact(spec: &ModelSpec, n: usize, t: f64) -> Option<Q> {
    let start = Q::from_float(t)?;
    if t == 0.0 {
        return Some(start);
    }
    let exponent = t.abs().log2().floor() as i32;
    let f = |x: &Q| exact_first_constraint(spec, n, x);
    let (mut x0, mut x1) = (start.clone(), round_dyadic(&(&start * Q::from_float(1.0 + 1e-12)?), exponent));
    let (mut f0, mut f1) = (f(&x0)?, f(&x1)?);
    let mut best = if f1.abs() < f0.abs() { (x1.clone(), f1.abs()) } else { (x0.clone(), f0.abs()) };
    for _ in 0..6 {
        if f1.is_zero() || f1 == f0 {
            break;
        }
        let x2 = round_dyadic(&(&x1 - &f1 * (&x1 - &x0) / (&f1 - &f0)), exponent);
        if x2 == x1 {
            break;
        }
        let f2 = f(&x2)?;
        if f2.abs() < best.1 {
            best = (x2.clone(), f2.abs());
        }
        (x0, f0, x1, f1) = (x1, f1, x2, f2);
    }
    Some(best.0)
}

fn exact_solution_at(spec: &ModelSpec, n: usize, tq: &Q) -> Option<(f64, Vec<f64>, Vec<Complex64>, f64)> {
    let b = solve_baseline(&spec.build(&spec.params_with(tq.clone())), n).ok()?;
    let sol = downward_recurrence(&b).ok()?;
    let energy = b.energy.as_ref()?.to_f64();
    let coefficients: Vec<f64> = (0..=n).map(|k| sol.poly.coeff(k).to_f64()).collect();
    let roots = polish_roots_exact(&sol.poly, &complex_roots(&coefficients));
    Some((energy, coefficients, roots, relative_residual(&b.op, &sol.poly)))
}

/// Floating-point Juddian points: scan the first cleared constraint on a
/// uniform grid of `grid` cells over `(lo, hi)`, bisect every sign change to
/// machine precision, and keep the points where the remaining constraints
/// also change sign in a small neighbourhood.
pub fn juddian_points_numeric(spec: &ModelSpec, n: usize, lo: f64, hi: f64, grid: usize) -> Result<Vec<NumericPoint>, ModelError> {
    if !(lo < hi) || grid < 2 {
        return Err(ModelError::InvalidParameter("sweep needs lo < hi and at least two grid cells".into()));
    }
    spec.validate()?;
    let f = |t: f64| numeric_state(spec, n, t).map(|s| s.cleared.first().copied().unwrap_or(0.0));
    let ts: Vec<f64> = (1..grid).map(|i| lo + (hi - lo) * i as f64 / grid as f64).collect();
    let mut vals = Vec::with_capacity(ts.len());
    for &t in &ts {
        vals.push(f(t)?);
    }
    let clearing_scale = max_abs(ts.iter().map(|&t| numeric_state(spec, n, t).map(|s| s.clearing).unwrap_or(0.0)));
    let mut roots = Vec::new();
    for i in 0..ts.len() {
        if vals[i] == 0.0 {
            roots.push(ts[i]);
            continue;
        }
        if i + 1 < ts.len() && vals[i + 1] != 0.0 && (vals[i] < 0.0) != (vals[i + 1] < 0.0) {
            let (mut a, mut b, fa) = (ts[i], ts[i + 1], vals[i]);
            for _ in 0..200 {
                let m = 0.5 * (a + b);
                if m <= a || m >= b {
                    break;
                }
                let fm = f(m)?;
                if fm == 0.0 {
                    a = m;
                    b = m;
                    break;
                }
                if (fm < 0.0) == (fa < 0.0) {
                    a = m;
                } else {
                    b = m;
                }
            }
            roots.push(0.5 * (a + b));
        }
    }
    let mut out = Vec::new();
    for t in roots {
        let t = polish_coupling(spec, n, t);
        let st = numeric_state(spec, n, t)?;
        if st.clearing.abs() <= 1e-12 * clearing_scale {
            continue;
        }
        if st.cleared.len() > 1 {
            let h = 1e-7 * t.abs().max(1.0);
            let (l, r) = (numeric_state(spec, n, t - h)?, numeric_state(spec, n, t + h)?);
            let all_change = (1..st.cleared.len()).all(|g| (l.cleared[g] < 0.0) != (r.cleared[g] < 0.0) || st.cleared[g] == 0.0);
            if !all_change {
                continue;
            }
        }
        // The downward recurrence in floating point can lose several digits
        // to cancellation; the solution is therefore re-evaluated exactly at
        // a rational refinement of the located coupling.
        let param = refine_coupling_exact(spec, n, t).or_else(|| Q::from_float(t)).ok_or(ModelError::InvalidParameter("non-finite coupling".into()))?;
        let t = param.to_f64();
        let fallback = || {
            let roots = complex_roots(&st.coefficients);
            (st.energy, st.coefficients.clone(), roots, st.residual_rel)
        };
        let (energy, coefficients, roots, residual_rel) = exact_solution_at(spec, n, &param).unwrap_or_else(fallback);
        out.push(NumericPoint {
            param,
            value: t,
            coupling: spec.physical_coupling(t),
            energy,
            roots,
            coefficients,
            residual_rel,
        });
    }
    Ok(out)
}
