//! Operator builders. Every builder is generic over the scalar field, so the
//! same formulas serve fixed rational parameters, quadratic extensions,
//! rational functions of a sweep parameter and interval-tracked floats.
//! Coefficients are polynomials in the energy (tag [`Var::E`]).

use core::ops::{Add, Mul, Neg, Sub};

use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{q, Field, UniPoly, Var};
use crate::gradation::{OdeOperator, OdeTerm};

/// A coefficient expression: a polynomial in the energy over `F`, with
/// arithmetic operators so the model formulas read like the formulas.
#[derive(Clone, Debug)]
pub(crate) struct Ex<F: Field>(pub UniPoly<F>);

impl<F: Field> Ex<F> {
    pub fn c(v: &F) -> Self {
        Ex(UniPoly::constant(v.clone(), Var::E))
    }
    pub fn i(n: i64) -> Self {
        Ex(UniPoly::constant(F::from_i64(n), Var::E))
    }
    pub fn r(n: i64, d: i64) -> Self {
        Ex(UniPoly::constant(F::from_rational(&q(n, d)), Var::E))
    }
    pub fn energy() -> Self {
        Ex(UniPoly::x(Var::E))
    }
    pub fn sq(&self) -> Self {
        self.clone() * self.clone()
    }
    /// Division by a parameter expression that is constant in the energy.
    pub fn over(&self, d: &F) -> Self {
        let inv = d.inv().expect("model parameter in a denominator must be nonzero");
        Ex(self.0.scale(&inv))
    }
}

impl<F: Field> Add for Ex<F> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Ex(self.0.add(&o.0))
    }
}
impl<F: Field> Sub for Ex<F> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Ex(self.0.sub(&o.0))
    }
}
impl<F: Field> Mul for Ex<F> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Ex(self.0.mul(&o.0))
    }
}
impl<F: Field> Neg for Ex<F> {
    type Output = Self;
    fn neg(self) -> Self {
        Ex(self.0.neg())
    }
}

fn op<F: Field>(terms: Vec<(Ex<F>, usize, usize)>) -> OdeOperator<UniPoly<F>> {
    OdeOperator::new(terms.into_iter().map(|(c, m, l)| OdeTerm::new(c.0, m, l)))
}

/// Rabi model, `A φ″ + B φ′ + C φ = 0` with `A = ω²z² − g²`.
pub fn rabi<F: Field>(omega: &F, delta: &F, g: &F) -> OdeOperator<UniPoly<F>> {
    let (w, d, g) = (Ex::c(omega), Ex::c(delta), Ex::c(g));
    let e = Ex::energy;
    let g2w = g.sq().over(omega);
    op(vec![
        (w.sq(), 2, 2),
        (-g.sq(), 0, 2),
        (-(Ex::i(2) * w.clone() * g.clone()), 2, 1),
        (w.sq() - Ex::i(2) * g.sq() - Ex::i(2) * e() * w.clone(), 1, 1),
        ((Ex::i(2) * g.sq() - w.sq()) * g.clone().over(omega), 0, 1),
        (Ex::i(2) * g.clone() * (g2w.clone() + e()), 1, 0),
        (e().sq() - d.sq() - g2w.sq(), 0, 0),
    ])
}

/// Driven Rabi model. `branch = +1` eliminates with the substitution of the
/// unprimed form, `−1` with the primed one; the drive `δ` enters with
/// opposite signs.
pub fn driven_rabi<F: Field>(omega: &F, delta: &F, g: &F, drive: &F, branch: i64) -> OdeOperator<UniPoly<F>> {
    let (w, d, g, dd) = (Ex::c(omega), Ex::c(delta), Ex::c(g), Ex::c(drive));
    let s = Ex::i(branch);
    let e = Ex::energy;
    let g2w = g.sq().over(omega);
    op(vec![
        (w.sq(), 2, 2),
        (-g.sq(), 0, 2),
        (-(Ex::i(2) * s.clone() * w.clone() * g.clone()), 2, 1),
        (w.sq() - Ex::i(2) * g.sq() - Ex::i(2) * e() * w.clone(), 1, 1),
        (s.clone() * (Ex::i(2) * g.clone() * (g2w.clone() - s.clone() * dd.clone()) - g.clone() * w.clone()), 0, 1),
        (s.clone() * Ex::i(2) * g.clone() * (g2w.clone() + e() - s.clone() * dd.clone()), 1, 0),
        (e().sq() - (dd - s * g2w).sq() - d.sq(), 0, 0),
    ])
}

/// Two-photon Rabi model in the rescaled variable `u = z/g`. All coupling
/// dependence is carried by `Ω = √(1 − 4g²/ω²)`.
pub fn two_photon<F: Field>(omega: &F, delta: &F, big_omega: &F, q_index: &F) -> OdeOperator<UniPoly<F>> {
    let (w, d, o, qq) = (Ex::c(omega), Ex::c(delta), Ex::c(big_omega), Ex::c(q_index));
    let e = Ex::energy;
    let one = || Ex::i(1);
    let qh = qq.clone() + Ex::r(1, 2);
    op(vec![
        (Ex::i(16), 2, 4),
        (Ex::i(16) * w.clone() * (o.clone() - one()), 2, 3),
        (Ex::i(64) * qh.clone(), 1, 3),
        (Ex::i(4) * w.sq() * (o.sq() - Ex::i(3) * o.clone() + one()), 2, 2),
        (Ex::i(16) * w.clone() * (Ex::i(3) * qh.clone() * o.clone() - Ex::i(3) * qq.clone() - one()), 1, 2),
        (Ex::i(64) * qq.clone() * qh.clone(), 0, 2),
        (Ex::i(2) * w.sq() * w.clone() * o.clone() * (one() - o.clone()), 2, 1),
        (
            Ex::i(8) * w.sq() * qq.clone() * (one() - o.clone())
                + Ex::i(8) * w.sq() * qh.clone() * (one() - o.clone()).sq()
                + Ex::i(4) * w.clone() * (e() - Ex::i(2) * w.clone() * (qq.clone() + Ex::r(1, 4))),
            1,
            1,
        ),
        (Ex::i(32) * w.clone() * qq.clone() * (qh.clone() * o.clone() - qq.clone()), 0, 1),
        (
            w.sq() * (one() - o.clone()) * (Ex::i(2) * qq.clone() * w.clone() * o.clone() - Ex::r(1, 2) * w.clone() - e()),
            1,
            0,
        ),
        (
            Ex::i(4) * w.sq() * qq.sq() * (one() - o).sq() - (e() - Ex::i(2) * w * (qq - Ex::r(1, 4))).sq() + d.sq(),
            0,
            0,
        ),
    ])
}

/// The two-photon operator in the original variable `z`, with `g` and `Ω`
/// both supplied (they must satisfy `Ω² = 1 − 4g²/ω²`).
pub fn two_photon_z<F: Field>(omega: &F, delta: &F, g: &F, big_omega: &F, q_index: &F) -> OdeOperator<UniPoly<F>> {
    let (w, d, gg, o, qq) = (Ex::c(omega), Ex::c(delta), Ex::c(g), Ex::c(big_omega), Ex::c(q_index));
    let e = Ex::energy;
    let one = || Ex::i(1);
    let qh = qq.clone() + Ex::r(1, 2);
    op(vec![
        (Ex::i(16) * gg.sq(), 2, 4),
        (Ex::i(16) * gg.clone() * w.clone() * (o.clone() - one()), 2, 3),
        (Ex::i(64) * gg.sq() * qh.clone(), 1, 3),
        (Ex::i(4) * w.sq() * (o.sq() - Ex::i(3) * o.clone() + one()), 2, 2),
        (Ex::i(16) * w.clone() * gg.clone() * (Ex::i(3) * qh.clone() * o.clone() - Ex::i(3) * qq.clone() - one()), 1, 2),
        (Ex::i(64) * gg.sq() * qq.clone() * qh.clone(), 0, 2),
        ((Ex::i(2) * w.sq() * w.clone() * o.clone() * (one() - o.clone())).over(g), 2, 1),
        (
            Ex::i(8) * w.sq() * qq.clone() * (one() - o.clone())
                + Ex::i(8) * w.sq() * qh.clone() * (one() - o.clone()).sq()
                + Ex::i(4) * w.clone() * (e() - Ex::i(2) * w.clone() * (qq.clone() + Ex::r(1, 4))),
            1,
            1,
        ),
        (Ex::i(32) * w.clone() * gg.clone() * qq.clone() * (qh.clone() * o.clone() - qq.clone()), 0, 1),
        (
            (w.sq() * (one() - o.clone()) * (Ex::i(2) * qq.clone() * w.clone() * o.clone() - Ex::r(1, 2) * w.clone() - e())).over(g),
            1,
            0,
        ),
        (
            Ex::i(4) * w.sq() * qq.sq() * (one() - o).sq() - (e() - Ex::i(2) * w * (qq - Ex::r(1, 4))).sq() + d.sq(),
            0,
            0,
        ),
    ])
}

/// Two-mode Rabi model in `u = z/g`, coupling carried by `Λ = √(1 − g²/ω²)`.
pub fn two_mode<F: Field>(omega: &F, delta: &F, lambda: &F, q_index: &F) -> OdeOperator<UniPoly<F>> {
    let (w, d, l, qq) = (Ex::c(omega), Ex::c(delta), Ex::c(lambda), Ex::c(q_index));
    let e = Ex::energy;
    let one = || Ex::i(1);
    let qh = qq.clone() + Ex::r(1, 2);
    op(vec![
        (Ex::i(1), 2, 4),
        (Ex::i(4) * w.clone() * (l.clone() - one()), 2, 3),
        (Ex::i(4) * qh.clone(), 1, 3),
        (Ex::i(4) * w.sq() * (l.sq() - Ex::i(3) * l.clone() + one()), 2, 2),
        (Ex::i(4) * w.clone() * (Ex::i(3) * qh.clone() * l.clone() - Ex::i(3) * qq.clone() - one()), 1, 2),
        (Ex::i(4) * qq.clone() * qh.clone(), 0, 2),
        (Ex::i(8) * w.sq() * w.clone() * l.clone() * (one() - l.clone()), 2, 1),
        (
            Ex::i(8) * w.sq() * qq.clone() * (one() - l.clone())
                + Ex::i(8) * w.sq() * qh.clone() * (one() - l.clone()).sq()
                + Ex::i(4) * w.clone() * (e() - Ex::i(2) * w.clone() * qq.clone()),
            1,
            1,
        ),
        (Ex::i(8) * w.clone() * qq.clone() * (qh.clone() * l.clone() - qq.clone()), 0, 1),
        (
            Ex::i(4) * w.sq() * (one() - l.clone()) * (Ex::i(2) * qq.clone() * w.clone() * l.clone() - w.clone() - e()),
            1,
            0,
        ),
        (
            Ex::i(4) * w.sq() * qq.sq() * (one() - l).sq() - (e() - Ex::i(2) * w * (qq - Ex::r(1, 2))).sq() + d.sq(),
            0,
            0,
        ),
    ])
}

/// The two-mode operator in the original variable `z`.
pub fn two_mode_z<F: Field>(omega: &F, delta: &F, g: &F, lambda: &F, q_index: &F) -> OdeOperator<UniPoly<F>> {
    let (w, d, gg, l, qq) = (Ex::c(omega), Ex::c(delta), Ex::c(g), Ex::c(lambda), Ex::c(q_index));
    let e = Ex::energy;
    let one = || Ex::i(1);
    let qh = qq.clone() + Ex::r(1, 2);
    op(vec![
        (gg.sq(), 2, 4),
        (Ex::i(4) * gg.clone() * w.clone() * (l.clone() - one()), 2, 3),
        (Ex::i(4) * gg.sq() * qh.clone(), 1, 3),
        (Ex::i(4) * w.sq() * (l.sq() - Ex::i(3) * l.clone() + one()), 2, 2),
        (Ex::i(4) * w.clone() * gg.clone() * (Ex::i(3) * qh.clone() * l.clone() - Ex::i(3) * qq.clone() - one()), 1, 2),
        (Ex::i(4) * gg.sq() * qq.clone() * qh.clone(), 0, 2),
        ((Ex::i(8) * w.sq() * w.clone() * l.clone() * (one() - l.clone())).over(g), 2, 1),
        (
            Ex::i(8) * w.sq() * qq.clone() * (one() - l.clone())
                + Ex::i(8) * w.sq() * qh.clone() * (one() - l.clone()).sq()
                + Ex::i(4) * w.clone() * (e() - Ex::i(2) * w.clone() * qq.clone()),
            1,
            1,
        ),
        (Ex::i(8) * w.clone() * gg.clone() * qq.clone() * (qh.clone() * l.clone() - qq.clone()), 0, 1),
        (
            (Ex::i(4) * w.sq() * (one() - l.clone()) * (Ex::i(2) * qq.clone() * w.clone() * l.clone() - w.clone() - e())).over(g),
            1,
            0,
        ),
        (
            Ex::i(4) * w.sq() * qq.sq() * (one() - l).sq() - (e() - Ex::i(2) * w * (qq - Ex::r(1, 2))).sq() + d.sq(),
            0,
            0,
        ),
    ])
}

/// Derived couplings of the generalized Rabi model for given `(κ, μ, ρ)`:
/// `(λ₊, λ₋, ν)`.
pub fn generalized_couplings<F: Field>(kappa: &F, mu: &F, rho: &F) -> (F, F, F) {
    let k2 = kappa.mul(kappa);
    let rinv = rho.inv().expect("ρ ≠ 0");
    let half = F::from_rational(&q(1, 2));
    let lp = k2.mul(&rho.add(&rinv)).mul(&half);
    let lm = k2.mul(&rho.sub(&rinv)).mul(&half);
    let denom = kappa.mul(&rho.mul(rho).sub(&F::one()));
    let nu = mu.mul(rho).scale(2).div(&denom).expect("ρ ≠ 1 and κ ≠ 0");
    (lp, lm, nu)
}

/// Generalized Rabi model (two couplings), dimensionless with ω = 1 and
/// energy variable `e = E/ω`. Third-order coefficient `A₃` has the three
/// singular points `ν, ±κ`.
pub fn generalized_rabi<F: Field>(kappa: &F, mu: &F, rho: &F) -> OdeOperator<UniPoly<F>> {
    let (lp, _, nu) = generalized_couplings(kappa, mu, rho);
    let (k, m, n, lp) = (Ex::c(kappa), Ex::c(mu), Ex::c(&nu), Ex::c(&lp));
    let e = Ex::energy;
    let eps = || e() + lp.clone();
    let k2 = k.sq();
    let k4 = k2.sq();
    // A₃ = z³ − νz² − κ²z + νκ²; B₃ = −2κA₃ + (remaining quadratic).
    let a = [n.clone() * k2.clone(), -k2.clone(), -n.clone(), Ex::i(1)];
    let two_k = Ex::i(2) * k.clone();
    let b = [
        -(two_k.clone() * a[0].clone()) - k.clone() * (n.clone() - k.clone()),
        -(two_k.clone() * a[1].clone()) + Ex::i(2) * eps() * n.clone() + k.clone() - n.clone(),
        -(two_k.clone() * a[2].clone()) - Ex::i(2) * eps(),
        -(two_k.clone() * a[3].clone()),
    ];
    let c1 = e() * (e() + Ex::i(1)) - m.sq() + (n.clone() * lp.clone()).over(kappa) + n.clone() * k.clone()
        - k2.clone()
        - Ex::i(2) * n.clone() * k.clone() * eps()
        - k4.clone();
    let c0 = n.clone() * (m.sq() - e().sq() + lp.clone() + k2.clone() + k4) + k.clone() * (e() - k2);
    let c = [c0, c1, Ex::i(2) * k * eps()];
    let mut terms = Vec::new();
    for (m, x) in a.into_iter().enumerate() {
        terms.push((x, m, 2));
    }
    for (m, x) in b.into_iter().enumerate() {
        terms.push((x, m, 1));
    }
    for (m, x) in c.into_iter().enumerate() {
        terms.push((x, m, 0));
    }
    op(terms)
}

/// The generalized Rabi model on its degenerate line `ν = −κ` (that is
/// `μ = −λ₋`, which needs `ρ < 1`), after the common factor `z + κ` has
/// been removed. Returns the operator and the tied value of μ.
pub fn generalized_rabi_degenerate<F: Field>(kappa: &F, rho: &F) -> (OdeOperator<UniPoly<F>>, F) {
    let (lp, lm, _) = generalized_couplings(kappa, &F::zero(), rho);
    let mu = lm.neg();
    let (k, m, lp) = (Ex::c(kappa), Ex::c(&mu), Ex::c(&lp));
    let e = Ex::energy;
    let eps = || e() + lp.clone();
    let k2 = k.sq();
    let d0_over_k = eps().sq() + lp.clone() * (lp.clone() - Ex::i(2)) - m.sq() - eps() * (Ex::i(2) * lp.clone() - Ex::i(1))
        - Ex::i(2) * k2.clone()
        - k2.sq();
    let operator = op(vec![
        (Ex::i(1), 2, 2),
        (-k2.clone(), 0, 2),
        (-(Ex::i(2) * k.clone()), 2, 1),
        (-(Ex::i(2) * eps()), 1, 1),
        (Ex::i(2) * k.clone() * (k2 + Ex::i(1)), 0, 1),
        (Ex::i(2) * k * eps(), 1, 0),
        (d0_over_k, 0, 0),
    ]);
    (operator, mu)
}

/// Schweber's form of the Rabi equation, `κ = 2g/ω`, `ε = E + g²/ω`.
pub fn schweber<F: Field>(omega: &F, delta: &F, g: &F) -> OdeOperator<UniPoly<F>> {
    let k = (Ex::i(2) * Ex::c(g)).over(omega);
    let mu = Ex::c(delta).over(omega);
    let eps_w = (Ex::energy() + Ex::c(g).sq().over(omega)).over(omega);
    let one = || Ex::i(1);
    op(vec![
        (one(), 2, 2),
        (-k.clone(), 1, 2),
        (-k.clone(), 2, 1),
        (k.sq() - Ex::i(2) * eps_w.clone() + one(), 1, 1),
        (k.clone() * eps_w.clone() - k.clone(), 0, 1),
        (k.clone() * eps_w.clone(), 1, 0),
        (eps_w.sq() - mu.sq() - k.sq() * eps_w, 0, 0),
    ])
}

/// The Koc form of the Rabi equation, `κ = g/ω`, `ε = E/ω`.
pub fn koc<F: Field>(omega: &F, delta: &F, g: &F) -> OdeOperator<UniPoly<F>> {
    let k = Ex::c(g).over(omega);
    let mu = Ex::c(delta).over(omega);
    let eps = Ex::energy().over(omega);
    let k2 = k.sq();
    let one = || Ex::i(1);
    op(vec![
        (one(), 1, 2),
        (-one(), 2, 2),
        (Ex::i(4) * k2.clone(), 2, 1),
        (-(Ex::i(2) * k2.clone() - Ex::i(2) * eps.clone() + one()), 1, 1),
        (one() - eps.clone() - k2.clone(), 0, 1),
        (-(Ex::i(4) * k2.clone() * (eps.clone() + k2.clone())), 1, 0),
        (Ex::i(3) * k2.sq() + Ex::i(2) * eps.clone() * k2 - eps.sq() + mu.sq(), 0, 0),
    ])
}
