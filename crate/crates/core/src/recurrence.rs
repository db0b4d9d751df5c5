//! Polynomial solutions on a baseline.
//!
//! For an operator of highest grade γ and width w, the monic ansatz
//! `S_n = Σ a_k z^k` turns `ℒ S_n = 0` into one linear relation per power of
//! `z`. The top power gives the baseline condition `F_γ(n) = 0`; the powers
//! `z^{k+γ}`, `k = n−1 … 0`, each fix one coefficient,
//!
//! ```text
//! a_k F_γ(k) = − Σ_{i=1}^{w−1} a_{k+i} F_{γ−i}(k+i),
//! ```
//!
//! and the γ remaining powers `z^{g−1}`, `g = 1 … γ`, are the constraints
//! `P_g = Σ_k a_k F_{g−1−k}(k) = 0`. Multiplying `P_g` by `∏_{k<n} F_γ(k)`
//! clears every denominator the recurrence introduced.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::algebra::{Field, RatFunc, Ring, UniPoly, Var, Q};
use crate::gradation::{GradeSignature, OdeOperator};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RecurrenceError {
    #[error("operator has no terms")]
    EmptyOperator,
    #[error("F_γ(n) is a nonzero constant independent of the energy: no baseline of degree {n}")]
    NoBaseline { n: usize },
    #[error("F_γ(n) vanishes for every energy: the baseline does not determine E")]
    Underdetermined,
    #[error("F_γ(n) has degree {0} in the energy; only linear dependence is supported")]
    NonlinearEnergy(usize),
    #[error("degenerate baseline: F_γ({k}) = 0 with k < n")]
    DegenerateBaseline { k: usize },
    #[error("F_γ(n) ≠ 0: the operator is not on the n-th baseline")]
    NotOnBaseline,
    #[error("clearing by ∏F_γ(k) left a nonconstant denominator")]
    ClearingFailed,
    #[error("operator coefficients must be polynomial in the sweep parameter")]
    NonPolynomialCoefficients,
    #[error("roots are not simple")]
    RepeatedRoots,
    #[error("the coefficient identities need a second-order operator with γ ≥ 0")]
    NotSecondOrder,
}

/// An operator with its energy fixed on the n-th baseline.
#[derive(Clone, Debug)]
pub struct BaselineSolution<F> {
    pub n: usize,
    /// The energy that solves `F_γ(n) = 0` (`None` if the operator was
    /// supplied with its energy already fixed).
    pub energy: Option<F>,
    pub signature: GradeSignature,
    pub op: OdeOperator<F>,
}

impl<F: Field> BaselineSolution<F> {
    /// Wraps an operator whose energy is already fixed, checking the
    /// baseline condition.
    pub fn assume(op: OdeOperator<F>, n: usize) -> Result<Self, RecurrenceError> {
        let op = op.normalized();
        let signature = op.signature().ok_or(RecurrenceError::EmptyOperator)?;
        if !op.multiplicator(signature.gamma, n).is_zero() {
            return Err(RecurrenceError::NotOnBaseline);
        }
        Ok(BaselineSolution { n, energy: None, signature, op })
    }

    pub fn gamma(&self) -> i64 {
        self.signature.gamma
    }

    pub fn multiplicator(&self, grade: i64, k: usize) -> F {
        self.op.multiplicator(grade, k)
    }

    /// `∏_{k=0}^{n−1} F_γ(k)`.
    pub fn clearing_factor(&self) -> F {
        (0..self.n).fold(F::one(), |acc, k| acc.mul(&self.multiplicator(self.gamma(), k)))
    }
}

/// Solves `F_γ(n) = 0` for the energy. The operator's coefficients are
/// polynomials in the energy (tag [`Var::E`]) over the field `F`.
pub fn solve_baseline<F: Field>(op: &OdeOperator<UniPoly<F>>, n: usize) -> Result<BaselineSolution<F>, RecurrenceError> {
    let op = op.normalized();
    let signature = op.signature().ok_or(RecurrenceError::EmptyOperator)?;
    let f = op.multiplicator(signature.gamma, n);
    let energy = match f.degree() {
        None => return Err(RecurrenceError::Underdetermined),
        Some(0) => return Err(RecurrenceError::NoBaseline { n }),
        Some(1) => f.coeff(0).neg().div(&f.coeff(1)).expect("nonzero leading coefficient"),
        Some(d) => return Err(RecurrenceError::NonlinearEnergy(d)),
    };
    let fixed = op.map(|c| c.eval(&energy));
    Ok(BaselineSolution { n, energy: Some(energy), signature, op: fixed })
}

/// A monic polynomial solution candidate.
#[derive(Clone, Debug)]
pub struct PolynomialSolution<F> {
    pub n: usize,
    /// `S_n(z)`, monic of degree n.
    pub poly: UniPoly<F>,
    /// `ℒ S_n`; the zero polynomial exactly when all constraints vanish.
    pub residual: UniPoly<F>,
    /// Numerical approximations of the zeros of `S_n` (filled in by callers
    /// that evaluate at a concrete parameter value).
    pub roots: Vec<Complex64>,
}

impl<F: Field> PolynomialSolution<F> {
    /// `a_{n,k}`.
    pub fn coefficient(&self, k: usize) -> F {
        self.poly.coeff(k)
    }
}

/// The γ-dependent part of the recurrence, shared by the strict and the
/// permissive (degenerate-tolerant) drivers.
fn run_recurrence<F: Field>(b: &BaselineSolution<F>, strict: bool) -> Result<(Vec<F>, bool), RecurrenceError> {
    let n = b.n;
    let gamma = b.gamma();
    let w = b.signature.width;
    let mut a = vec![F::zero(); n + 1];
    a[n] = F::one();
    let mut unique = true;
    for k in (0..n).rev() {
        let mut s = F::zero();
        for i in 1..w {
            let j = k + i as usize;
            if j > n {
                break;
            }
            if a[j].is_zero() {
                continue;
            }
            let f = b.multiplicator(gamma - i, j);
            if !f.is_zero() {
                s = s.add(&a[j].mul(&f));
            }
        }
        let fk = b.multiplicator(gamma, k);
        match fk.inv() {
            Some(inv) => a[k] = s.neg().mul(&inv),
            None => {
                if strict || !s.is_zero() {
                    return Err(RecurrenceError::DegenerateBaseline { k });
                }
                unique = false;
            }
        }
    }
    Ok((a, unique))
}

/// Computes `a_{n,n−1}, …, a_{n,0}` top-down, dividing each line by `F_γ(k)`.
pub fn downward_recurrence<F: Field>(b: &BaselineSolution<F>) -> Result<PolynomialSolution<F>, RecurrenceError> {
    let (a, _) = run_recurrence(b, true)?;
    Ok(package(b, a))
}

fn package<F: Field>(b: &BaselineSolution<F>, a: Vec<F>) -> PolynomialSolution<F> {
    let poly = UniPoly::new(a, Var::Z);
    let residual = b.op.apply(&poly);
    PolynomialSolution { n: b.n, poly, residual, roots: Vec::new() }
}

/// The raw constraints `P_1 … P_γ` (empty for γ ≤ 0).
pub fn raw_constraints<F: Field>(b: &BaselineSolution<F>, sol: &PolynomialSolution<F>) -> Vec<F> {
    let gamma = b.gamma();
    if gamma < 1 {
        return Vec::new();
    }
    (1..=gamma)
        .map(|g| {
            let mut acc = F::zero();
            for j in 0..=sol.n {
                let a = sol.poly.coeff(j);
                if a.is_zero() {
                    continue;
                }
                let f = b.multiplicator(g - 1 - j as i64, j);
                acc = acc.add(&a.mul(&f));
            }
            acc
        })
        .collect()
}

/// A denominator-free constraint in the sweep parameter.
#[derive(Clone, Debug)]
pub struct ConstraintPolynomial {
    /// Grade index g ∈ {1 … γ}.
    pub g: usize,
    /// `P_g · ∏F_γ(k)` as a polynomial.
    pub cleared: UniPoly<Q>,
    /// `cleared`, made monic (or |c| for a nonzero constant).
    pub normalized: UniPoly<Q>,
    pub clearing_factor: UniPoly<Q>,
    pub raw: RatFunc<Q>,
}

/// Monic when nonconstant, absolute value when a nonzero constant.
pub fn normalize_constraint(p: &UniPoly<Q>) -> UniPoly<Q> {
    use num_traits::Signed;
    match p.degree() {
        None => p.clone(),
        Some(0) => UniPoly::constant(p.coeff(0).abs(), p.var()),
        Some(_) => p.monic(),
    }
}

/// The γ cleared constraints of a sweep-mode baseline (coefficients in ℚ(t)).
pub fn constraint_polynomials(
    b: &BaselineSolution<RatFunc<Q>>,
    sol: &PolynomialSolution<RatFunc<Q>>,
) -> Result<Vec<ConstraintPolynomial>, RecurrenceError> {
    if b.op.terms().iter().any(|t| !t.coef.is_polynomial()) {
        return Err(RecurrenceError::NonPolynomialCoefficients);
    }
    let clearing = b.clearing_factor();
    let clearing_poly = clearing.as_polynomial().ok_or(RecurrenceError::NonPolynomialCoefficients)?;
    raw_constraints(b, sol)
        .into_iter()
        .enumerate()
        .map(|(i, raw)| {
            let cleared = raw.mul(&clearing).as_polynomial().ok_or(RecurrenceError::ClearingFailed)?.with_var(Var::T);
            Ok(ConstraintPolynomial {
                g: i + 1,
                normalized: normalize_constraint(&cleared),
                cleared,
                clearing_factor: clearing_poly.clone().with_var(Var::T),
                raw,
            })
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Existence {
    ExistsUnique,
    Exists,
    None,
}

/// Outcome of [`existence_decision`] with the values that were checked.
#[derive(Clone, Debug)]
pub struct Decision<F> {
    pub verdict: Existence,
    pub witnesses: Vec<(String, String)>,
    pub solution: Option<PolynomialSolution<F>>,
}

/// Decides whether the operator (energy fixed) has a polynomial solution of
/// degree n: baseline condition, recurrence and all γ constraints.
pub fn existence_decision<F: Field>(op: &OdeOperator<F>, n: usize) -> Decision<F> {
    let mut witnesses = Vec::new();
    let none = |witnesses| Decision { verdict: Existence::None, witnesses, solution: None };
    let op = op.normalized();
    let Some(signature) = op.signature() else {
        // The zero operator annihilates everything.
        let poly = UniPoly::monomial(F::one(), n, Var::Z);
        let sol = PolynomialSolution { n, poly, residual: UniPoly::zero_in(Var::Z), roots: Vec::new() };
        return Decision { verdict: Existence::Exists, witnesses, solution: Some(sol) };
    };
    let gamma = signature.gamma;
    witnesses.push(("gamma".to_string(), format!("{gamma}")));
    let top = op.multiplicator(gamma, n);
    witnesses.push((format!("F_{gamma}({n})"), top.to_string()));
    if !top.is_zero() {
        return none(witnesses);
    }
    for k in 0..n {
        witnesses.push((format!("F_{gamma}({k})"), op.multiplicator(gamma, k).to_string()));
    }
    let b = BaselineSolution { n, energy: None, signature, op };
    let (a, unique) = match run_recurrence(&b, false) {
        Ok(r) => r,
        Err(RecurrenceError::DegenerateBaseline { k }) => {
            witnesses.push(("inconsistent_line".to_string(), format!("{k}")));
            return none(witnesses);
        }
        Err(_) => return none(witnesses),
    };
    let sol = package(&b, a);
    let constraints = raw_constraints(&b, &sol);
    for (i, c) in constraints.iter().enumerate() {
        witnesses.push((format!("P_{}", i + 1), c.to_string()));
    }
    if constraints.iter().any(|c| !c.is_zero()) || !sol.residual.is_zero() {
        return none(witnesses);
    }
    let verdict = if unique { Existence::ExistsUnique } else { Existence::Exists };
    Decision { verdict, witnesses, solution: Some(sol) }
}

/// Degrees `n ≤ max_n` for which `F_γ(n) = 0` with the operator's energy
/// fixed. When `F_γ` is linear in `n` there is at most one.
pub fn baseline_degrees<F: Field>(op: &OdeOperator<F>, max_n: usize) -> Vec<usize> {
    let op = op.normalized();
    let Some(sig) = op.signature() else { return (0..=max_n).collect() };
    (0..=max_n).filter(|&n| op.multiplicator(sig.gamma, n).is_zero()).collect()
}

/// A basis of `{S ∈ P_n : ℒS = 0}` by exact elimination on the matrix of
/// `ℒ` restricted to polynomials of degree at most `n`. Independent of the
/// grading; the basis is in reduced echelon form (distinct leading degrees).
pub fn polynomial_kernel<F: Field>(op: &OdeOperator<F>, n: usize) -> Vec<UniPoly<F>> {
    let images: Vec<UniPoly<F>> = (0..=n).map(|k| op.apply(&UniPoly::monomial(F::one(), k, Var::Z))).collect();
    let rows = images.iter().map(|p| p.coeffs().len()).max().unwrap_or(0);
    // m[r][k] = coefficient of z^r in ℒ z^k.
    let mut m: Vec<Vec<F>> = (0..rows).map(|r| images.iter().map(|p| p.coeff(r)).collect()).collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in (0..=n).rev() {
        let Some(p) = (row..rows).find(|&r| !m[r][col].is_zero()) else { continue };
        m.swap(row, p);
        let inv = m[row][col].inv().expect("nonzero pivot");
        for k in 0..=n {
            m[row][k] = m[row][k].mul(&inv);
        }
        for r in 0..rows {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for k in 0..=n {
                    m[r][k] = m[r][k].sub(&f.mul(&m[row][k]));
                }
            }
        }
        pivots.push((row, col));
        row += 1;
    }
    let free: Vec<usize> = (0..=n).filter(|c| !pivots.iter().any(|(_, pc)| pc == c)).collect();
    free.iter()
        .rev()
        .map(|&f| {
            let mut v = vec![F::zero(); n + 1];
            v[f] = F::one();
            for &(r, c) in &pivots {
                v[c] = m[r][f].neg();
            }
            UniPoly::new(v, Var::Z).monic()
        })
        .collect()
}

/// Predicted and actual `(c_γ, c_{γ−1}, c_{γ−2})`.
#[derive(Clone, Debug)]
pub struct Theorem4Prediction<F> {
    pub gamma: i64,
    pub predicted: [F; 3],
    pub actual: [F; 3],
}

impl<F: Field> Theorem4Prediction<F> {
    pub fn differences(&self) -> [F; 3] {
        [0, 1, 2].map(|i| self.predicted[i].sub(&self.actual[i]))
    }

    pub fn holds(&self) -> bool {
        self.differences().iter().all(|d| d.is_zero())
    }
}

/// Coefficient identities for `C(z)` in terms of `A`, `B` and the power sums
/// `p₁ = Σ z_i`, `p₂ = Σ z_i²`, `e₂ = Σ_{i<l} z_i z_l` of the zeros of a
/// degree-n solution.
pub fn theorem4_from_sums<F: Field>(op: &OdeOperator<F>, n: usize, p1: &F, p2: &F, e2: &F) -> Result<Theorem4Prediction<F>, RecurrenceError> {
    if op.order() > 2 {
        return Err(RecurrenceError::NotSecondOrder);
    }
    let sig = op.signature().ok_or(RecurrenceError::EmptyOperator)?;
    let gamma = sig.gamma;
    if gamma < 0 {
        return Err(RecurrenceError::NotSecondOrder);
    }
    let (a, b, c) = op.abc();
    let at = |p: &UniPoly<F>, i: i64| if i < 0 { F::zero() } else { p.coeff(i as usize) };
    let nn = F::from_i64(n as i64);
    let nn1 = F::from_i64((n * n.saturating_sub(1)) as i64);
    let two_n1 = F::from_i64(2 * n.saturating_sub(1) as i64);
    let (a2, a1, a0) = (at(&a, gamma + 2), at(&a, gamma + 1), at(&a, gamma));
    let (b1, b0, bm) = (at(&b, gamma + 1), at(&b, gamma), at(&b, gamma - 1));
    let lead = two_n1.mul(&a2).add(&b1);
    let c_g = nn1.mul(&a2).add(&nn.mul(&b1)).neg();
    let c_g1 = lead.mul(p1).add(&nn1.mul(&a1)).add(&nn.mul(&b0)).neg();
    let c_g2 = lead
        .mul(p2)
        .add(&a2.scale(2).mul(e2))
        .add(&two_n1.mul(&a1).add(&b0).mul(p1))
        .add(&nn1.mul(&a0))
        .add(&nn.mul(&bm))
        .neg();
    Ok(Theorem4Prediction {
        gamma,
        predicted: [c_g, c_g1, c_g2],
        actual: [at(&c, gamma), at(&c, gamma - 1), at(&c, gamma - 2)],
    })
}

/// As [`theorem4_from_sums`], from an explicit list of simple zeros.
pub fn theorem4_coefficients<F: Field>(op: &OdeOperator<F>, n: usize, roots: &[F]) -> Result<Theorem4Prediction<F>, RecurrenceError> {
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            if roots[i].sub(&roots[j]).is_zero() {
                return Err(RecurrenceError::RepeatedRoots);
            }
        }
    }
    let p1 = roots.iter().fold(F::zero(), |s, z| s.add(z));
    let p2 = roots.iter().fold(F::zero(), |s, z| s.add(&z.mul(z)));
    let e2 = p1.mul(&p1).sub(&p2).div(&F::from_i64(2)).expect("2 is invertible");
    theorem4_from_sums(op, n, &p1, &p2, &e2)
}

/// Power sums `(p₁, p₂, e₂)` of the zeros of a monic polynomial, from its
/// coefficients (Newton's identities).
pub fn power_sums<F: Field>(s: &UniPoly<F>) -> (F, F, F) {
    let n = s.degree().unwrap_or(0);
    let c1 = if n >= 1 { s.coeff(n - 1) } else { F::zero() };
    let c2 = if n >= 2 { s.coeff(n - 2) } else { F::zero() };
    let p1 = c1.neg();
    let e2 = c2;
    let p2 = p1.mul(&p1).sub(&e2.scale(2));
    (p1, p2, e2)
}
