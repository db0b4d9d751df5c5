//! Linear differential operators with polynomial coefficients, written as
//! finite sums of terms `c · z^m · d_z^l`, and their slicing by grade.
//!
//! The grade of `z^m d^l` is `m − l`: the shift it applies to monomial
//! degrees. Collecting terms of equal grade `g` gives a slice `ℱ_g` with
//! `ℱ_g z^k = F_g(k) z^{k+g}`, where the induced multiplicator is
//! `F_g(k) = Σ c · k(k−1)…(k−l+1)`.

use core::fmt::Write as _;

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{Field, Ring, UniPoly, Var};

#[derive(Clone, Debug, PartialEq)]
pub struct OdeTerm<R> {
    pub coef: R,
    pub m: usize,
    pub l: usize,
}

impl<R> OdeTerm<R> {
    pub fn new(coef: R, m: usize, l: usize) -> Self {
        OdeTerm { coef, m, l }
    }

    pub fn grade(&self) -> i64 {
        self.m as i64 - self.l as i64
    }
}

/// `k (k−1) … (k−l+1)`; zero when `k < l`.
pub fn falling_factorial(k: usize, l: usize) -> i64 {
    if k < l {
        return 0;
    }
    (0..l).map(|i| (k - i) as i64).product()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GradeSignature {
    pub gamma: i64,
    pub gamma_star: i64,
    pub width: i64,
}

impl GradeSignature {
    pub fn new(gamma: i64, gamma_star: i64) -> Self {
        GradeSignature { gamma, gamma_star, width: gamma - gamma_star + 1 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Slice<R> {
    pub grade: i64,
    pub terms: Vec<OdeTerm<R>>,
}

impl<R: Ring> Slice<R> {
    pub fn multiplicator(&self, k: usize) -> R {
        induced_multiplicator(self, k)
    }
}

/// Second-order classification by coefficient degrees.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Alternative {
    /// deg B ≤ deg A − 1, deg C ≤ deg A − 2, with equality somewhere.
    A1,
    /// deg B ≥ deg A and deg C = deg B − 1 (the "anomalous" case).
    A2,
    Other,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GradationError {
    #[error("operator has no terms")]
    EmptyOperator,
}

/// A linear differential operator. Terms are merged on `(m, l)`, zero terms
/// are dropped, and storage order is by `(grade, l)`.
#[derive(Clone, Debug, PartialEq)]
pub struct OdeOperator<R> {
    terms: Vec<OdeTerm<R>>,
    /// Power of z divided out of every coefficient by [`OdeOperator::normalized`].
    factored_z: usize,
}

impl<R: Ring> OdeOperator<R> {
    pub fn new(terms: impl IntoIterator<Item = OdeTerm<R>>) -> Self {
        let mut merged: BTreeMap<(i64, usize, usize), R> = BTreeMap::new();
        for t in terms {
            let key = (t.grade(), t.l, t.m);
            match merged.get_mut(&key) {
                Some(c) => *c = c.add(&t.coef),
                None => {
                    merged.insert(key, t.coef);
                }
            }
        }
        let terms = merged
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|((_, l, m), coef)| OdeTerm { coef, m, l })
            .collect();
        OdeOperator { terms, factored_z: 0 }
    }

    /// `Σ_l X_l(z) d^l` from the coefficient polynomials `[X_0, X_1, …]`.
    pub fn from_coefficients(xs: &[UniPoly<R>]) -> Self {
        let mut terms = Vec::new();
        for (l, x) in xs.iter().enumerate() {
            for (m, c) in x.coeffs().iter().enumerate() {
                terms.push(OdeTerm::new(c.clone(), m, l));
            }
        }
        Self::new(terms)
    }

    /// The second-order operator `A d² + B d + C`.
    pub fn from_abc(a: &UniPoly<R>, b: &UniPoly<R>, c: &UniPoly<R>) -> Self {
        Self::from_coefficients(&[c.clone(), b.clone(), a.clone()])
    }

    pub fn terms(&self) -> &[OdeTerm<R>] {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn factored_z_power(&self) -> usize {
        self.factored_z
    }

    /// Highest derivative order present.
    pub fn order(&self) -> usize {
        self.terms.iter().map(|t| t.l).max().unwrap_or(0)
    }

    /// Coefficient polynomial `X_l(z)` of `d^l`.
    pub fn coefficient(&self, l: usize) -> UniPoly<R> {
        let deg = self.terms.iter().filter(|t| t.l == l).map(|t| t.m).max();
        let Some(deg) = deg else { return UniPoly::zero_in(Var::Z) };
        let mut v = vec![R::zero(); deg + 1];
        for t in self.terms.iter().filter(|t| t.l == l) {
            v[t.m] = t.coef.clone();
        }
        UniPoly::new(v, Var::Z)
    }

    /// `(A, B, C)`: the coefficients of `d²`, `d`, `1`.
    pub fn abc(&self) -> (UniPoly<R>, UniPoly<R>, UniPoly<R>) {
        (self.coefficient(2), self.coefficient(1), self.coefficient(0))
    }

    /// Terms with derivative order at most two.
    pub fn second_order_part(&self) -> Self {
        Self::new(self.terms.iter().filter(|t| t.l <= 2).cloned())
    }

    pub fn signature(&self) -> Option<GradeSignature> {
        let gamma = self.terms.iter().map(|t| t.grade()).max()?;
        let gamma_star = self.terms.iter().map(|t| t.grade()).min()?;
        Some(GradeSignature::new(gamma, gamma_star))
    }

    pub fn slices(&self) -> Vec<Slice<R>> {
        let mut out: Vec<Slice<R>> = Vec::new();
        for t in &self.terms {
            match out.last_mut() {
                Some(s) if s.grade == t.grade() => s.terms.push(t.clone()),
                _ => out.push(Slice { grade: t.grade(), terms: vec![t.clone()] }),
            }
        }
        out
    }

    /// `F_g(k)` for the slice of grade `g`; zero if the slice is empty.
    pub fn multiplicator(&self, grade: i64, k: usize) -> R {
        let mut acc = R::zero();
        for t in self.terms.iter().filter(|t| t.grade() == grade) {
            let ff = falling_factorial(k, t.l);
            if ff != 0 {
                acc = acc.add(&t.coef.scale(ff));
            }
        }
        acc
    }

    /// Divides every coefficient by `z^{γ*}` when the lowest grade γ* is
    /// positive; the operator then has the same polynomial kernel.
    pub fn normalized(&self) -> Self {
        let Some(sig) = self.signature() else { return self.clone() };
        if sig.gamma_star <= 0 {
            return self.clone();
        }
        let s = sig.gamma_star as usize;
        let mut op = Self::new(self.terms.iter().map(|t| OdeTerm::new(t.coef.clone(), t.m - s, t.l)));
        op.factored_z = self.factored_z + s;
        op
    }

    pub fn apply(&self, p: &UniPoly<R>) -> UniPoly<R> {
        let mut acc = UniPoly::zero_in(Var::Z);
        for t in &self.terms {
            let d = p.derivative_n(t.l);
            acc = acc.add(&d.shift(t.m).scale(&t.coef));
        }
        acc
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> OdeOperator<S> {
        let mut op = OdeOperator::new(self.terms.iter().map(|t| OdeTerm::new(f(&t.coef), t.m, t.l)));
        op.factored_z = self.factored_z;
        op
    }

    pub fn scale(&self, c: &R) -> Self {
        self.map(|x| x.mul(c))
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(self.terms.iter().chain(o.terms.iter()).cloned())
    }

    /// The operator in the reflected variable `z → −z`.
    pub fn reflect(&self) -> Self {
        Self::new(self.terms.iter().map(|t| {
            let c = if (t.m + t.l) % 2 == 1 { t.coef.neg() } else { t.coef.clone() };
            OdeTerm::new(c, t.m, t.l)
        }))
    }

    /// Plain-text dump, one term per line: `coef * z^m * D^l`.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        for t in &self.terms {
            let c = t.coef.to_string();
            let c = if is_plain(&c) { c } else { alloc::format!("({c})") };
            let _ = writeln!(s, "{c} * z^{} * D^{}", t.m, t.l);
        }
        s
    }
}

impl<F: Field> OdeOperator<F> {
    /// The operator in the variable `u = z / s`: `z^m d_z^l ↦ s^{m−l} u^m d_u^l`.
    pub fn rescale(&self, s: &F) -> Self {
        let inv = s.inv().expect("nonzero rescaling factor");
        self.map_terms(|t| {
            let g = t.grade();
            let f = if g >= 0 { s.pow(g as u32) } else { inv.pow((-g) as u32) };
            t.coef.mul(&f)
        })
    }

    fn map_terms(&self, f: impl Fn(&OdeTerm<F>) -> F) -> Self {
        Self::new(self.terms.iter().map(|t| OdeTerm::new(f(t), t.m, t.l)))
    }
}

fn is_plain(s: &str) -> bool {
    !s.contains([' ', '+', '(']) && !s.get(1..).unwrap_or("").contains('-')
}

pub fn slice_operator<R: Ring>(op: &OdeOperator<R>) -> Result<(GradeSignature, Vec<Slice<R>>), GradationError> {
    let sig = op.signature().ok_or(GradationError::EmptyOperator)?;
    Ok((sig, op.slices()))
}

pub fn induced_multiplicator<R: Ring>(s: &Slice<R>, k: usize) -> R {
    let mut acc = R::zero();
    for t in &s.terms {
        let ff = falling_factorial(k, t.l);
        if ff != 0 {
            acc = acc.add(&t.coef.scale(ff));
        }
    }
    acc
}

pub fn apply_operator<R: Ring>(op: &OdeOperator<R>, p: &UniPoly<R>) -> UniPoly<R> {
    op.apply(p)
}

/// Classification of the second-order part `A d² + B d + C`.
pub fn classify_alternative<R: Ring>(op: &OdeOperator<R>) -> Alternative {
    let (a, b, c) = op.second_order_part().abc();
    if a.is_zero() {
        return Alternative::Other;
    }
    let (da, db, dc) = (a.deg_i(), b.deg_i(), c.deg_i());
    if db <= da - 1 && dc <= da - 2 && (db == da - 1 || dc == da - 2) {
        Alternative::A1
    } else if !b.is_zero() && db >= da && dc == db - 1 {
        Alternative::A2
    } else {
        Alternative::Other
    }
}

/// True iff `B = −A′`, the only situation in which a second-order operator
/// with fixed coefficients can have two independent polynomial solutions.
pub fn wronskian_uniqueness_flag<R: Ring>(op: &OdeOperator<R>) -> bool {
    let (a, b, _) = op.second_order_part().abc();
    !a.is_zero() && b == a.derivative().neg()
}
