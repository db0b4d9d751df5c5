//! sl₂ algebraization of second-order operators.
//!
//! With `J₊ = z²d − 2jz`, `J₀ = zd − j`, `J₋ = d` (spin `j`, `2j = n`), a
//! normally ordered quadratic combination
//!
//! ```text
//! T₂ = C₊₊J₊² + C₊₀J₊J₀ + C₀₀J₀² + C₀₋J₀J₋ + C₋₋J₋² + C₊J₊ + C₀J₀ + C₋J₋ + C_*
//! ```
//!
//! equals `P₄ d² + P₃ d + P₂` with
//!
//! ```text
//! P₄ = C₊₊z⁴ + C₊₀z³ + C₀₀z² + C₀₋z + C₋₋
//! P₃ = −2(2j−1)C₊₊z³ + [C₊ − (3j−1)C₊₀]z² + [C₀ − (2j−1)C₀₀]z + C₋ − jC₀₋
//! P₂ = 2j(2j−1)C₊₊z² + 2j(jC₊₀ − C₊)z + j²C₀₀ − jC₀ + C_*
//! ```
//!
//! Matching against `(A, B, C)` gives twelve linear equations in nine
//! unknowns; nine fix the `C`'s, the other three (`z³` of `B`, `z²` and `z`
//! of `C`) are conditions on the operator.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{q, Field, UniPoly, Var};
use crate::gradation::OdeOperator;

use super::{Certificate, CertificateKind};

/// Coefficients of a normally ordered quadratic in the sl₂ generators.
#[derive(Clone, Debug, PartialEq)]
pub struct Sl2Decomposition<F> {
    /// `2j`.
    pub two_j: usize,
    pub c_pp: F,
    pub c_p0: F,
    pub c_00: F,
    pub c_0m: F,
    pub c_mm: F,
    pub c_p: F,
    pub c_0: F,
    pub c_m: F,
    pub c_star: F,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Sl2Outcome<F> {
    Valid(Sl2Decomposition<F>),
    /// The operator has the right shape but the spin-`j` conditions fail;
    /// each entry is a condition name and its (nonzero) defect.
    ConditionViolated { decomposition: Sl2Decomposition<F>, failures: Vec<(String, F)> },
    NotRepresentable(String),
}

impl<F: Field> Sl2Outcome<F> {
    pub fn valid(&self) -> Option<&Sl2Decomposition<F>> {
        match self {
            Sl2Outcome::Valid(d) => Some(d),
            _ => None,
        }
    }
}

fn spin<F: Field>(two_j: usize) -> F {
    F::from_rational(&q(two_j as i64, 2))
}

impl<F: Field> Sl2Decomposition<F> {
    pub fn j(&self) -> F {
        spin(self.two_j)
    }

    /// `(P₄, P₃, P₂)` in the variable `z`.
    pub fn reconstruct(&self) -> (UniPoly<F>, UniPoly<F>, UniPoly<F>) {
        let j = self.j();
        let tj = F::from_i64(self.two_j as i64);
        let one = F::one();
        let p4 = vec![self.c_mm.clone(), self.c_0m.clone(), self.c_00.clone(), self.c_p0.clone(), self.c_pp.clone()];
        let p3 = vec![
            self.c_m.sub(&j.mul(&self.c_0m)),
            self.c_0.sub(&tj.sub(&one).mul(&self.c_00)),
            self.c_p.sub(&j.scale(3).sub(&one).mul(&self.c_p0)),
            tj.sub(&one).scale(-2).mul(&self.c_pp),
        ];
        let p2 = vec![
            j.mul(&j).mul(&self.c_00).sub(&j.mul(&self.c_0)).add(&self.c_star),
            tj.mul(&j.mul(&self.c_p0).sub(&self.c_p)),
            tj.mul(&tj.sub(&one)).mul(&self.c_pp),
        ];
        (UniPoly::new(p4, Var::Z), UniPoly::new(p3, Var::Z), UniPoly::new(p2, Var::Z))
    }

    pub fn to_operator(&self) -> OdeOperator<F> {
        let (a, b, c) = self.reconstruct();
        OdeOperator::from_abc(&a, &b, &c)
    }
}

fn shape<F: Field>(op: &OdeOperator<F>) -> Result<(UniPoly<F>, UniPoly<F>, UniPoly<F>), String> {
    if op.order() > 2 {
        return Err(format!("order {} exceeds 2", op.order()));
    }
    let (a, b, c) = op.abc();
    for (name, p, max) in [("A", &a, 4), ("B", &b, 3), ("C", &c, 2)] {
        if p.deg_i() > max {
            return Err(format!("deg {name} = {} exceeds {max}", p.deg_i()));
        }
    }
    Ok((a, b, c))
}

fn at<F: Field>(p: &UniPoly<F>, k: usize) -> F {
    p.coeff(k)
}

/// Decomposition on spin `j = n/2`. For the γ = 1 family with
/// `a₄ = a₃ = b₃ = c₂ = 0` it uses the closed form
/// `C₀₀ = a₂, C₀ = b₁ + (2j−1)a₂, C₊ = b₂, C_* = c₀ + jb₁ + j(j−1)a₂`, valid
/// iff `2j·b₂ + c₁ = 0`; any other second-order operator of admissible
/// degrees goes through the general linear fit [`sl2_fit`].
///
/// Operators whose top-grade part is not a multiple of `J₊²` (for instance
/// a `z³d` or `z²` term without a `z⁴d²` term) are not representable for
/// any spin.
pub fn sl2_decompose<F: Field>(op: &OdeOperator<F>, n: usize) -> Sl2Outcome<F> {
    let (a, b, c) = match shape(op) {
        Ok(abc) => abc,
        Err(why) => return Sl2Outcome::NotRepresentable(why),
    };
    let anomalous = [at(&a, 4), at(&a, 3), at(&b, 3), at(&c, 2)].iter().all(|x| x.is_zero());
    if !anomalous {
        return sl2_fit(op, n);
    }
    let j: F = spin(n);
    let tj = F::from_i64(n as i64);
    let (a2, b2, b1, c1, c0) = (at(&a, 2), at(&b, 2), at(&b, 1), at(&c, 1), at(&c, 0));
    let d = Sl2Decomposition {
        two_j: n,
        c_pp: F::zero(),
        c_p0: F::zero(),
        c_00: a2.clone(),
        c_0m: at(&a, 1),
        c_mm: at(&a, 0),
        c_p: b2.clone(),
        c_0: b1.add(&tj.sub(&F::one()).mul(&a2)),
        c_m: at(&b, 0).add(&j.mul(&at(&a, 1))),
        c_star: c0.add(&j.mul(&b1)).add(&j.mul(&j.sub(&F::one())).mul(&a2)),
    };
    let defect = tj.mul(&b2).add(&c1);
    if defect.is_zero() {
        Sl2Outcome::Valid(d)
    } else {
        Sl2Outcome::ConditionViolated { decomposition: d, failures: vec![("2j*b2 + c1".into(), defect)] }
    }
}

/// The general fit: Gaussian elimination over `F` on the twelve coefficient
/// equations. Unknowns are ordered `C₊₊, C₊₀, C₀₀, C₀₋, C₋₋, C₊, C₀, C₋, C_*`;
/// the nine determining equations come first so that the three left over
/// are the named consistency conditions.
pub fn sl2_fit<F: Field>(op: &OdeOperator<F>, n: usize) -> Sl2Outcome<F> {
    let (a, b, c) = match shape(op) {
        Ok(abc) => abc,
        Err(why) => return Sl2Outcome::NotRepresentable(why),
    };
    let j: F = spin(n);
    let tj = F::from_i64(n as i64);
    let one = F::one();
    let row = |entries: &[(usize, F)], rhs: F| {
        let mut r = vec![F::zero(); 10];
        for (k, v) in entries {
            r[*k] = v.clone();
        }
        r[9] = rhs;
        r
    };
    // (label, row); the first nine determine the unknowns.
    let mut rows: Vec<(&str, Vec<F>)> = vec![
        ("A z^4", row(&[(0, one.clone())], at(&a, 4))),
        ("A z^3", row(&[(1, one.clone())], at(&a, 3))),
        ("A z^2", row(&[(2, one.clone())], at(&a, 2))),
        ("A z^1", row(&[(3, one.clone())], at(&a, 1))),
        ("A z^0", row(&[(4, one.clone())], at(&a, 0))),
        ("B z^2", row(&[(1, j.scale(3).sub(&one).neg()), (5, one.clone())], at(&b, 2))),
        ("B z^1", row(&[(2, tj.sub(&one).neg()), (6, one.clone())], at(&b, 1))),
        ("B z^0", row(&[(3, j.neg()), (7, one.clone())], at(&b, 0))),
        ("C z^0", row(&[(2, j.mul(&j)), (6, j.neg()), (8, one.clone())], at(&c, 0))),
        ("B z^3", row(&[(0, tj.sub(&one).scale(-2))], at(&b, 3))),
        ("C z^2", row(&[(0, tj.mul(&tj.sub(&one)))], at(&c, 2))),
        ("C z^1", row(&[(1, tj.mul(&j)), (5, tj.neg())], at(&c, 1))),
    ];
    for col in 0..9 {
        let Some(p) = (col..rows.len()).find(|&r| !rows[r].1[col].is_zero()) else {
            return Sl2Outcome::NotRepresentable(format!("no pivot for unknown {col}"));
        };
        rows.swap(col, p);
        let inv = rows[col].1[col].inv().expect("nonzero pivot");
        let pivot: Vec<F> = rows[col].1.iter().map(|x| x.mul(&inv)).collect();
        rows[col].1 = pivot.clone();
        for (r, (_, other)) in rows.iter_mut().enumerate() {
            if r == col || other[col].is_zero() {
                continue;
            }
            let f = other[col].clone();
            for k in 0..10 {
                other[k] = other[k].sub(&f.mul(&pivot[k]));
            }
        }
    }
    let sol: Vec<F> = (0..9).map(|k| rows[k].1[9].clone()).collect();
    let d = Sl2Decomposition {
        two_j: n,
        c_pp: sol[0].clone(),
        c_p0: sol[1].clone(),
        c_00: sol[2].clone(),
        c_0m: sol[3].clone(),
        c_mm: sol[4].clone(),
        c_p: sol[5].clone(),
        c_0: sol[6].clone(),
        c_m: sol[7].clone(),
        c_star: sol[8].clone(),
    };
    // Remaining rows read 0 = defect after elimination.
    let failures: Vec<(String, F)> = rows[9..].iter().filter(|(_, r)| !r[9].is_zero()).map(|(l, r)| (String::from(*l), r[9].neg())).collect();
    if failures.is_empty() {
        return Sl2Outcome::Valid(d);
    }
    // A grade-2 part without a J₊² term cannot come from any spin.
    let top_grade = failures.iter().any(|(l, _)| *l == "B z^3" || *l == "C z^2");
    if top_grade && d.c_pp.is_zero() {
        return Sl2Outcome::NotRepresentable(String::from("grade-2 terms without a z^4 d^2 term"));
    }
    Sl2Outcome::ConditionViolated { decomposition: d, failures }
}

/// `C_* + b₂p₁ + j(3j−1)a₂ + jb₁` for a valid γ = 1 decomposition of `op`
/// and the sum `p₁` of the zeros of a solution; zero at every solution.
pub fn cfrm_defect<F: Field>(d: &Sl2Decomposition<F>, op: &OdeOperator<F>, p1: &F) -> F {
    let (a, b, _) = op.abc();
    let j = d.j();
    let a2 = a.coeff(2);
    let (b2, b1) = (b.coeff(2), b.coeff(1));
    d.c_star.add(&b2.mul(p1)).add(&j.mul(&j.scale(3).sub(&F::one())).mul(&a2)).add(&j.mul(&b1))
}

/// The four conditions under which a spin-`j` module could carry a
/// degenerate level. Nondegeneracy is guaranteed (certificate passes) as
/// soon as one of them fails.
pub fn degeneracy_lemma_check<F: Field>(d: &Sl2Decomposition<F>) -> Certificate {
    let j = d.j();
    let one = F::one();
    let conditions = [
        ("C++ = 0", d.c_pp.clone()),
        ("C+ = (3j-4)C+0", d.c_p.sub(&j.scale(3).sub(&F::from_i64(4)).mul(&d.c_p0))),
        ("C0 = (2j-3)C00", d.c_0.sub(&j.scale(2).sub(&F::from_i64(3)).mul(&d.c_00))),
        ("C- = (j-1)C0-", d.c_m.sub(&j.sub(&one).mul(&d.c_0m))),
    ];
    let violated = conditions.iter().any(|(_, v)| !v.is_zero());
    let mut cert = Certificate::new(CertificateKind::Degeneracy, violated).flag("holds", violated);
    for (name, v) in conditions {
        cert = cert.flag(&format!("{name} satisfied"), v.is_zero()).exact(&format!("{name} defect"), v);
    }
    cert
}

/// sl₂ certificate: pass iff the decomposition is valid and reconstructs
/// the operator exactly.
pub fn sl2_certificate<F: Field>(op: &OdeOperator<F>, n: usize) -> Certificate {
    match sl2_decompose(op, n) {
        Sl2Outcome::Valid(d) => {
            let (a, b, c) = op.abc();
            let (p4, p3, p2) = d.reconstruct();
            let round_trip = a == p4 && b == p3 && c == p2;
            Certificate::new(CertificateKind::Sl2, round_trip)
                .flag("holds", round_trip)
                .exact("representable", true)
                .exact("2j", n)
                .exact("C00", &d.c_00)
                .exact("C0", &d.c_0)
                .exact("C+", &d.c_p)
                .exact("C*", &d.c_star)
        }
        Sl2Outcome::ConditionViolated { failures, .. } => {
            let mut c = Certificate::new(CertificateKind::Sl2, false).flag("holds", false).exact("representable", true);
            for (name, v) in failures {
                c = c.exact(&name, v);
            }
            c
        }
        Sl2Outcome::NotRepresentable(why) => Certificate::new(CertificateKind::Sl2, false).flag("holds", false).exact("representable", false).exact("reason", why),
    }
}
