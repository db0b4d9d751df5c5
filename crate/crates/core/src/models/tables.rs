//! Closed-form induced multiplicators `F_g(k)` on the n-th baseline, written
//! out per model rather than derived from the operators, so that the two
//! can be checked against each other.

use alloc::boxed::Box;

use crate::algebra::{q, Field};

use super::{generalized_couplings, Branch, ModelKind, ModelSpec, Params};

/// `k ↦ F_g(k)` for every grade of a model on a fixed baseline.
pub struct CoefficientTable<F> {
    pub n: usize,
    pub gamma: i64,
    pub gamma_star: i64,
    eval: Box<dyn Fn(i64, i64) -> F + Send + Sync>,
}

impl<F: Field> CoefficientTable<F> {
    /// `F_g(k)`; zero outside `[γ*, γ]`.
    pub fn value(&self, grade: i64, k: usize) -> F {
        if grade < self.gamma_star || grade > self.gamma {
            return F::zero();
        }
        (self.eval)(grade, k as i64)
    }
}

/// Tiny helper: arithmetic on field elements without the reference noise.
#[derive(Clone)]
struct V<F: Field>(F);

impl<F: Field> core::ops::Add for V<F> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        V(self.0.add(&o.0))
    }
}
impl<F: Field> core::ops::Sub for V<F> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        V(self.0.sub(&o.0))
    }
}
impl<F: Field> core::ops::Mul for V<F> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        V(self.0.mul(&o.0))
    }
}
impl<F: Field> core::ops::Neg for V<F> {
    type Output = Self;
    fn neg(self) -> Self {
        V(self.0.neg())
    }
}

fn i<F: Field>(n: i64) -> V<F> {
    V(F::from_i64(n))
}

fn half<F: Field>() -> V<F> {
    V(F::from_rational(&q(1, 2)))
}

impl<F: Field> V<F> {
    fn sq(&self) -> Self {
        self.clone() * self.clone()
    }
    fn over(&self, d: &V<F>) -> Self {
        V(self.0.div(&d.0).expect("nonzero model parameter"))
    }
}

/// The coefficient table of `spec` on baseline `n` for parameters `p`.
pub fn coefficient_table<F: Field + Send + Sync + 'static>(spec: &ModelSpec, p: &Params<F>, n: usize) -> CoefficientTable<F> {
    let (w, d, c, dd, qq) = (V(p.omega.clone()), V(p.delta.clone()), V(p.coupling.clone()), V(p.drive.clone()), V(p.q.clone()));
    let nn = n as i64;
    let eval: Box<dyn Fn(i64, i64) -> F + Send + Sync> = match spec.kind {
        ModelKind::Rabi | ModelKind::DrivenRabi => {
            let s = if spec.kind == ModelKind::Rabi { 0 } else { spec.branch.sign() };
            let dd = if spec.kind == ModelKind::Rabi { i(0) } else { dd };
            let g = c;
            Box::new(move |grade, k| {
                let s_ = i::<F>(s);
                let sig = if s == 0 { i(1) } else { s_.clone() };
                let v = match grade {
                    1 => sig * i(2) * w.clone() * g.clone() * i(nn - k),
                    0 => {
                        i::<F>(k * (k - 2 * nn)) * w.sq() + i::<F>(nn * nn) * w.sq() - d.sq() - i::<F>(2 * nn) * g.sq()
                            + s_.clone() * i(2 * (nn - k)) * w.clone() * dd.clone()
                    }
                    -1 => {
                        sig * (i::<F>(k) * g.clone()).over(&w)
                            * (i::<F>(2) * g.sq() - w.sq() - s_ * i(2) * w.clone() * dd.clone())
                    }
                    _ => -(i::<F>(k * (k - 1)) * g.sq()),
                };
                v.0
            })
        }
        ModelKind::TwoPhoton | ModelKind::TwoMode => {
            // The same structure with model-specific weights; the
            // multiplicators are those of the operator in u = z/g.
            let two_photon = spec.kind == ModelKind::TwoPhoton;
            let o = c;
            let one = i::<F>(1);
            let qh = qq.clone() + half();
            let energy = if two_photon {
                -(half::<F>() * w.clone()) + i::<F>(2) * (i::<F>(nn) + qq.clone()) * w.clone() * o.clone()
            } else {
                -w.clone() + i::<F>(2) * (i::<F>(nn) + qq.clone()) * w.clone() * o.clone()
            };
            let (shift_b, shift_c) = if two_photon {
                (V(F::from_rational(&q(1, 4))), V(F::from_rational(&q(-1, 4))))
            } else {
                (i(0), V(F::from_rational(&q(-1, 2))))
            };
            let a2 = i::<F>(4) * w.sq() * (o.sq() - i::<F>(3) * o.clone() + one.clone());
            let b1 = i::<F>(8) * w.sq() * qq.clone() * (one.clone() - o.clone())
                + i::<F>(8) * w.sq() * qh.clone() * (one.clone() - o.clone()).sq()
                + i::<F>(4) * w.clone() * (energy.clone() - i::<F>(2) * w.clone() * (qq.clone() + shift_b));
            let c0 = i::<F>(4) * w.sq() * qq.sq() * (one.clone() - o.clone()).sq()
                - (energy - i::<F>(2) * w.clone() * (qq.clone() + shift_c)).sq()
                + d.sq();
            let (f1w, fm1w, fm1c, fm2w) = if two_photon { (2, 16, 32, 16) } else { (8, 4, 8, 1) };
            Box::new(move |grade, k| {
                let v = match grade {
                    1 => -(i::<F>(f1w * (nn - k)) * (one.clone() - o.clone()) * w.sq() * w.clone() * o.clone()),
                    0 => i::<F>(k * (k - 1)) * a2.clone() + i::<F>(k) * b1.clone() + c0.clone(),
                    -1 => {
                        i::<F>(fm1w * k * (k - 1) * (k - 2)) * w.clone() * (o.clone() - one.clone())
                            + i::<F>(fm1w * k * (k - 1)) * w.clone() * (i::<F>(3) * qh.clone() * o.clone() - i::<F>(3) * qq.clone() - one.clone())
                            + i::<F>(fm1c * k) * w.clone() * qq.clone() * (qh.clone() * o.clone() - qq.clone())
                    }
                    _ => {
                        i::<F>(fm2w * k * (k - 1) * (k - 2) * (k - 3))
                            + i::<F>(4 * fm2w * k * (k - 1)) * (i::<F>(k - 2) + qq.clone()) * qh.clone()
                    }
                };
                v.0
            })
        }
        ModelKind::GeneralizedRabi if spec.branch == Branch::Degenerate => {
            let (lp, lm, _) = generalized_couplings(&p.coupling, &F::zero(), &p.rho);
            let (k, lp, mu) = (c, V(lp), -V(lm));
            let eps = i::<F>(nn);
            let k2 = k.sq();
            let d0k = eps.sq() + lp.clone() * (lp.clone() - i(2)) - mu.sq() - eps * (i::<F>(2) * lp - i(1)) - i::<F>(2) * k2.clone() - k2.sq();
            Box::new(move |grade, l| {
                let v = match grade {
                    1 => i::<F>(2 * (nn - l)) * k.clone(),
                    0 => i::<F>(l * (l - 1 - 2 * nn)) + d0k.clone(),
                    -1 => i::<F>(2 * l) * k.clone() * (k2.clone() + i(1)),
                    _ => -(i::<F>(l * (l - 1)) * k2.clone()),
                };
                v.0
            })
        }
        ModelKind::GeneralizedRabi => {
            let (lp, _, nu) = generalized_couplings(&p.coupling, &p.delta, &p.rho);
            let (k, mu, lp, nu) = (c, d, V(lp), V(nu));
            let eps = i::<F>(nn);
            let e = eps.clone() - lp.clone();
            let k2 = k.sq();
            let k3 = k2.clone() * k.clone();
            let c1 = e.clone() * (e.clone() + i(1)) - mu.sq() + (nu.clone() * lp.clone()).over(&k) + nu.clone() * k.clone()
                - k2.clone()
                - i::<F>(2) * nu.clone() * k.clone() * eps
                - k2.sq();
            let c0 = nu.clone() * (mu.sq() - e.sq() + lp + k2.clone() + k2.sq()) + k.clone() * (e - k2.clone());
            Box::new(move |grade, l| {
                let v = match grade {
                    2 => i::<F>(2 * (nn - l)) * k.clone(),
                    1 => i::<F>(l) * (i::<F>(l - 1 - 2 * nn) + i::<F>(2) * k.clone() * nu.clone()) + c1.clone(),
                    0 => i::<F>(l) * (i::<F>(2) * k3.clone() + i::<F>(2 * nn - l) * nu.clone() + k.clone()) + c0.clone(),
                    -1 => -(i::<F>(l) * (k.clone() * (nu.clone() - k.clone()) + i::<F>(l - 1) * k2.clone() + i::<F>(2) * nu.clone() * k3.clone())),
                    _ => i::<F>(l * (l - 1)) * nu.clone() * k2.clone(),
                };
                v.0
            })
        }
        ModelKind::SchweberForm => {
            // κ = 2g/ω, μ = Δ/ω.
            let k = (i::<F>(2) * c).over(&w);
            let mu = d.over(&w);
            Box::new(move |grade, l| {
                let m = i::<F>(nn - l);
                let v = match grade {
                    1 => k.clone() * m,
                    0 => m.sq() - k.sq() * m - mu.sq(),
                    _ => k.clone() * i(l) * m,
                };
                v.0
            })
        }
        ModelKind::KocForm => {
            // κ = g/ω, μ = Δ/ω.
            let k = c.over(&w);
            let mu = d.over(&w);
            Box::new(move |grade, l| {
                let m = i::<F>(nn - l);
                let v = match grade {
                    1 => -(i::<F>(4) * k.sq() * m),
                    0 => -m.sq() + i::<F>(4) * k.sq() * m + mu.sq(),
                    _ => -(i::<F>(l) * m),
                };
                v.0
            })
        }
    };
    let (gamma, gamma_star) = match spec.kind {
        ModelKind::GeneralizedRabi if spec.branch != Branch::Degenerate => (2, -2),
        ModelKind::SchweberForm | ModelKind::KocForm => (1, -1),
        _ => (1, -2),
    };
    CoefficientTable { n, gamma, gamma_star, eval }
}
