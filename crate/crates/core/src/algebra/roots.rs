//! Real-root isolation by Sturm sequences and refinement by bisection.

use core::cmp::Ordering;

use alloc::vec;
use alloc::vec::Vec;
use num_complex::{Complex, Complex64};
use num_traits::{One, Signed, Zero};

use super::poly::UniPoly;
use super::rational::{qi, Q};
use super::traits::OrderedField;
use super::AlgebraError;

/// Closed rational interval containing exactly one simple real root.
/// `lo == hi` means the root is the rational `lo` itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: Q,
    pub hi: Q,
}

impl RootInterval {
    pub fn exact(x: Q) -> Self {
        RootInterval { lo: x.clone(), hi: x }
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> Q {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Q {
        (&self.lo + &self.hi) / qi(2)
    }

    pub fn contains(&self, x: &Q) -> bool {
        &self.lo <= x && x <= &self.hi
    }
}

/// Sign of `p(x)` at a rational point.
pub fn sign_at<F: OrderedField>(p: &UniPoly<F>, x: &Q) -> Ordering {
    p.eval(&F::from_rational(x)).sign()
}

/// Canonical Sturm sequence p, p′, −rem(p, p′), …
pub fn sturm_sequence<F: OrderedField>(p: &UniPoly<F>) -> Vec<UniPoly<F>> {
    let mut seq = vec![p.clone()];
    let d = p.derivative();
    if d.is_zero() {
        return seq;
    }
    seq.push(d);
    loop {
        let n = seq.len();
        let r = seq[n - 2].rem(&seq[n - 1]).expect("nonzero divisor").neg();
        if r.is_zero() {
            break;
        }
        seq.push(r);
    }
    seq
}

fn variations(signs: impl Iterator<Item = Ordering>) -> usize {
    let mut count = 0;
    let mut last = Ordering::Equal;
    for s in signs {
        if s == Ordering::Equal {
            continue;
        }
        if last != Ordering::Equal && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

fn variations_at<F: OrderedField>(seq: &[UniPoly<F>], x: &Q) -> usize {
    let xf = F::from_rational(x);
    variations(seq.iter().map(|p| p.eval(&xf).sign()))
}

/// Cauchy bound: every real root lies in (−B, B).
pub fn cauchy_bound(p: &UniPoly<Q>) -> Q {
    let lc = p.lc().abs();
    let m = p.coeffs()[..p.coeffs().len().saturating_sub(1)]
        .iter()
        .map(|c| c.abs() / &lc)
        .fold(<Q as Zero>::zero(), |a, b| if b > a { b } else { a });
    m + <Q as One>::one()
}

/// Isolates the real roots of a squarefree nonzero `p` in the closed
/// interval `[lo, hi]`, returning disjoint intervals in increasing order.
pub fn sturm_isolate<F: OrderedField>(p: &UniPoly<F>, lo: &Q, hi: &Q) -> Result<Vec<RootInterval>, AlgebraError> {
    if p.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    if lo > hi {
        return Err(AlgebraError::EmptyInterval);
    }
    if !p.is_squarefree() {
        return Err(AlgebraError::NotSquareFree);
    }
    if p.is_constant() {
        return Ok(Vec::new());
    }
    let seq = sturm_sequence(p);
    let mut out = Vec::new();
    let (mut a, mut b) = (lo.clone(), hi.clone());
    if lo == hi {
        if sign_at(p, lo) == Ordering::Equal {
            out.push(RootInterval::exact(lo.clone()));
        }
        return Ok(out);
    }
    // Roots sitting exactly on the endpoints are recorded and stepped over.
    if sign_at(p, &a) == Ordering::Equal {
        out.push(RootInterval::exact(a.clone()));
        a = step_off(&seq, &a, &b, true);
    }
    let mut tail = None;
    if sign_at(p, &b) == Ordering::Equal {
        tail = Some(RootInterval::exact(b.clone()));
        b = step_off(&seq, &a, &b, false);
    }
    let mut stack = vec![(a, b)];
    let mut found = Vec::new();
    while let Some((a, b)) = stack.pop() {
        let count = variations_at(&seq, &a).saturating_sub(variations_at(&seq, &b));
        match count {
            0 => {}
            1 => found.push(RootInterval { lo: a, hi: b }),
            _ => {
                let m = (&a + &b) / qi(2);
                if sign_at(p, &m) == Ordering::Equal {
                    found.push(RootInterval::exact(m.clone()));
                    let left = step_off(&seq, &a, &m, false);
                    let right = step_off(&seq, &m, &b, true);
                    stack.push((a, left));
                    stack.push((right, b));
                } else {
                    stack.push((a, m.clone()));
                    stack.push((m, b));
                }
            }
        }
    }
    found.sort_by(|x, y| x.lo.cmp(&y.lo));
    out.extend(found);
    out.extend(tail);
    Ok(out)
}

/// A point strictly between the root at one end of `[a, b]` and any other
/// root: moves from `a` upward (`from_left`) or from `b` downward.
fn step_off<F: OrderedField>(seq: &[UniPoly<F>], a: &Q, b: &Q, from_left: bool) -> Q {
    let root = if from_left { a } else { b };
    let mut h = (b - a) / qi(2);
    loop {
        let (l, r) = (root - &h, root + &h);
        let p = &seq[0];
        if sign_at(p, &l) != Ordering::Equal
            && sign_at(p, &r) != Ordering::Equal
            && variations_at(seq, &l).saturating_sub(variations_at(seq, &r)) == 1
        {
            return if from_left { r } else { l };
        }
        h /= qi(2);
    }
}

/// Number of distinct real roots in (lo, hi], for a squarefree `p`.
pub fn sturm_count<F: OrderedField>(p: &UniPoly<F>, lo: &Q, hi: &Q) -> usize {
    let seq = sturm_sequence(p);
    variations_at(&seq, lo).saturating_sub(variations_at(&seq, hi))
}

/// All real roots of the squarefree part of `p` in `[lo, hi]`.
pub fn real_roots(p: &UniPoly<Q>, lo: &Q, hi: &Q) -> Result<Vec<RootInterval>, AlgebraError> {
    sturm_isolate(&p.squarefree_part(), lo, hi)
}

/// Bisects an isolating interval until it is narrower than `eps`; returns the
/// refined interval. Exact rational roots are returned as degenerate intervals.
pub fn refine_interval<F: OrderedField>(p: &UniPoly<F>, iv: &RootInterval, eps: &Q) -> Result<RootInterval, AlgebraError> {
    if iv.is_exact() {
        return if sign_at(p, &iv.lo) == Ordering::Equal { Ok(iv.clone()) } else { Err(AlgebraError::NotIsolating) };
    }
    let (mut a, mut b) = (iv.lo.clone(), iv.hi.clone());
    let sa = sign_at(p, &a);
    let sb = sign_at(p, &b);
    if sa == Ordering::Equal {
        return Ok(RootInterval::exact(a));
    }
    if sb == Ordering::Equal {
        return Ok(RootInterval::exact(b));
    }
    if sa == sb {
        return Err(AlgebraError::NotIsolating);
    }
    while &b - &a >= *eps {
        let m = (&a + &b) / qi(2);
        let sm = sign_at(p, &m);
        if sm == Ordering::Equal {
            return Ok(RootInterval::exact(m));
        }
        if sm == sa {
            a = m;
        } else {
            b = m;
        }
    }
    Ok(RootInterval { lo: a, hi: b })
}

/// Rational approximation within `eps` of the root isolated by `iv`.
pub fn refine_root<F: OrderedField>(p: &UniPoly<F>, iv: &RootInterval, eps: &Q) -> Result<Q, AlgebraError> {
    refine_interval(p, iv, eps).map(|r| r.midpoint())
}

/// Newton-polishes approximate zeros of an exact polynomial, evaluating
/// `p` and `p′` exactly at each double-precision iterate. Clustered zeros
/// computed from rounded coefficients can be off by far more than an ulp;
/// after polishing they are limited only by the representation of `z`.
pub fn polish_roots_exact(p: &UniPoly<Q>, roots: &[Complex64]) -> Vec<Complex64> {
    let dp = p.derivative();
    let eval = |poly: &UniPoly<Q>, z: &Complex<Q>| {
        poly.coeffs().iter().rev().fold(Complex::new(Q::zero(), Q::zero()), |acc, c| acc * z.clone() + Complex::new(c.clone(), Q::zero()))
    };
    let to_c64 = |z: &Complex<Q>| Complex64::new(z.re.to_f64(), z.im.to_f64());
    roots
        .iter()
        .map(|&z0| {
            let mut z = z0;
            for _ in 0..4 {
                let (Some(re), Some(im)) = (Q::from_float(z.re), Q::from_float(z.im)) else { break };
                let zq = Complex::new(re, im);
                let (v, d) = (to_c64(&eval(p, &zq)), to_c64(&eval(&dp, &zq)));
                if v.norm() == 0.0 || d.norm() == 0.0 {
                    break;
                }
                let step = v / d;
                if !step.norm().is_finite() {
                    break;
                }
                z -= step;
                if step.norm() <= f64::EPSILON * z.norm() {
                    break;
                }
            }
            z
        })
        .collect()
}

/// All complex roots of a polynomial with double coefficients, by the
/// Aberth–Ehrlich iteration followed by Newton polishing.
pub fn complex_roots(coeffs: &[f64]) -> Vec<Complex64> {
    let mut c: Vec<f64> = coeffs.to_vec();
    while c.last().is_some_and(|x| *x == 0.0) {
        c.pop();
    }
    if c.len() <= 1 {
        return Vec::new();
    }
    let n = c.len() - 1;
    let lead = c[n];
    let monic: Vec<Complex64> = c.iter().map(|x| Complex64::new(x / lead, 0.0)).collect();
    let radius = 1.0 + monic[..n].iter().map(|x| x.norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let ang = 2.0 * core::f64::consts::PI * (k as f64 + 0.25) / n as f64 + 0.4;
            Complex64::from_polar(0.5 * radius, ang)
        })
        .collect();
    let eval = |x: Complex64| -> (Complex64, Complex64) {
        let mut p = Complex64::zero();
        let mut dp = Complex64::zero();
        for a in monic.iter().rev() {
            dp = dp * x + p;
            p = p * x + a;
        }
        (p, dp)
    };
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let (p, dp) = eval(z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let mut s = Complex64::zero();
            for j in 0..n {
                if j != i {
                    s += (z[i] - z[j]).inv();
                }
            }
            let w = ratio / (Complex64::one() - ratio * s);
            if w.norm().is_finite() {
                z[i] -= w;
                moved = moved.max(w.norm() / (1.0 + z[i].norm()));
            }
        }
        if moved < 1e-16 {
            break;
        }
    }
    for zi in z.iter_mut() {
        for _ in 0..3 {
            let (p, dp) = eval(*zi);
            if dp.norm() == 0.0 {
                break;
            }
            let step = p / dp;
            if !step.norm().is_finite() {
                break;
            }
            *zi -= step;
        }
        if zi.im.abs() <= 1e-14 * (1.0 + zi.re.abs()) {
            zi.im = 0.0;
        }
    }
    z.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap_or(Ordering::Equal).then(a.im.partial_cmp(&b.im).unwrap_or(Ordering::Equal)));
    z
}
