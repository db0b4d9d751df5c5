//! Exact scalars in ℚ or a real quadratic extension ℚ(√r).

use core::cmp::Ordering;
use core::fmt;

use alloc::sync::Arc;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::rational::{rational_sqrt, split_square, Q};
use super::traits::{Field, OrderedField, Ring};
use super::AlgebraError;

/// `a + b·θ` with `θ = √r`, `r` a positive non-square integer.
///
/// Canonical form: `b == 0` implies no radicand is stored, so rational values
/// compare equal regardless of which extension produced them. The radicand
/// is a per-context constant (the extension generated by Ω, Λ or κ); mixing
/// two genuinely different extensions is a logic error and panics.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ParamScalar {
    a: Q,
    b: Q,
    r: Option<Arc<BigInt>>,
}

impl ParamScalar {
    pub fn rational(a: Q) -> Self {
        ParamScalar { a, b: <Q as Zero>::zero(), r: None }
    }

    /// `√x` for a non-negative rational `x`.
    pub fn sqrt(x: &Q) -> Result<Self, AlgebraError> {
        if x.is_negative() {
            return Err(AlgebraError::NegativeRadicand);
        }
        if let Some(s) = rational_sqrt(x) {
            return Ok(Self::rational(s));
        }
        let (c, m) = split_square(x);
        Ok(ParamScalar { a: <Q as Zero>::zero(), b: c, r: Some(Arc::new(m)) })
    }

    /// `a + b·√r`, canonicalized.
    pub fn from_parts(a: Q, b: Q, r: &Q) -> Result<Self, AlgebraError> {
        let root = Self::sqrt(r)?;
        Ok(Self::rational(a).add(&root.mul(&Self::rational(b))))
    }

    pub fn rational_part(&self) -> &Q {
        &self.a
    }

    pub fn irrational_part(&self) -> &Q {
        &self.b
    }

    pub fn radicand(&self) -> Option<&BigInt> {
        self.r.as_deref()
    }

    pub fn is_rational(&self) -> bool {
        self.r.is_none()
    }

    pub fn as_rational(&self) -> Option<&Q> {
        if self.r.is_none() {
            Some(&self.a)
        } else {
            None
        }
    }

    fn canon(a: Q, b: Q, r: Option<Arc<BigInt>>) -> Self {
        if Zero::is_zero(&b) {
            ParamScalar { a, b, r: None }
        } else {
            ParamScalar { a, b, r }
        }
    }

    /// Brings `self` and `other` to a common radicand: returns
    /// `(b_self, b_other, r)` with both irrational parts expressed over `r`.
    fn align(&self, other: &Self) -> (Q, Q, Option<Arc<BigInt>>) {
        match (&self.r, &other.r) {
            (None, None) => (<Q as Zero>::zero(), <Q as Zero>::zero(), None),
            (Some(r), None) => (self.b.clone(), <Q as Zero>::zero(), Some(r.clone())),
            (None, Some(r)) => (<Q as Zero>::zero(), other.b.clone(), Some(r.clone())),
            (Some(r1), Some(r2)) => {
                if r1 == r2 {
                    return (self.b.clone(), other.b.clone(), Some(r1.clone()));
                }
                // √r2 = c·√r1 when r2/r1 is a rational square.
                let ratio = BigRational::new((**r2).clone(), (**r1).clone());
                match rational_sqrt(&ratio) {
                    Some(c) => (self.b.clone(), &other.b * c, Some(r1.clone())),
                    None => panic!("ParamScalar: operands live in different quadratic extensions (√{r1} vs √{r2})"),
                }
            }
        }
    }

    pub fn conj(&self) -> Self {
        Self::canon(self.a.clone(), -&self.b, self.r.clone())
    }

    /// Field norm a² − b²r.
    pub fn norm(&self) -> Q {
        match &self.r {
            None => &self.a * &self.a,
            Some(r) => &self.a * &self.a - &self.b * &self.b * BigRational::from_integer((**r).clone()),
        }
    }
}

impl fmt::Display for ParamScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.r {
            None => write!(f, "{}", self.a),
            Some(r) => {
                if !Zero::is_zero(&self.a) {
                    write!(f, "{}", self.a)?;
                    if self.b.is_negative() {
                        write!(f, " - ")?;
                    } else {
                        write!(f, " + ")?;
                    }
                    write!(f, "{}*sqrt({})", self.b.abs(), r)
                } else {
                    write!(f, "{}*sqrt({})", self.b, r)
                }
            }
        }
    }
}

impl Ring for ParamScalar {
    fn zero() -> Self {
        Self::rational(<Q as Zero>::zero())
    }
    fn one() -> Self {
        Self::rational(<Q as One>::one())
    }
    fn from_i64(v: i64) -> Self {
        Self::rational(Q::from_integer(BigInt::from(v)))
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.a) && Zero::is_zero(&self.b)
    }
    fn add(&self, rhs: &Self) -> Self {
        let (b1, b2, r) = self.align(rhs);
        Self::canon(&self.a + &rhs.a, b1 + b2, r)
    }
    fn sub(&self, rhs: &Self) -> Self {
        let (b1, b2, r) = self.align(rhs);
        Self::canon(&self.a - &rhs.a, b1 - b2, r)
    }
    fn mul(&self, rhs: &Self) -> Self {
        let (b1, b2, r) = self.align(rhs);
        match &r {
            None => Self::rational(&self.a * &rhs.a),
            Some(rr) => {
                let rq = BigRational::from_integer((**rr).clone());
                let a = &self.a * &rhs.a + &b1 * &b2 * rq;
                let b = &self.a * &b2 + &b1 * &rhs.a;
                Self::canon(a, b, r)
            }
        }
    }
    fn neg(&self) -> Self {
        Self::canon(-&self.a, -&self.b, self.r.clone())
    }
    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        Field::div(self, rhs)
    }
}

impl Field for ParamScalar {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        let c = self.conj();
        Some(Self::canon(&c.a / &n, &c.b / &n, c.r))
    }
    fn from_rational(q: &BigRational) -> Self {
        Self::rational(q.clone())
    }
}

impl OrderedField for ParamScalar {
    fn sign(&self) -> Ordering {
        let sa = self.a.sign();
        let sb = self.b.sign();
        if sb == Ordering::Equal {
            return sa;
        }
        if sa == Ordering::Equal || sa == sb {
            return sb;
        }
        // Opposite signs: compare a² with b²r.
        let r = BigRational::from_integer((**self.r.as_ref().expect("canonical form")).clone());
        let lhs = &self.a * &self.a;
        let rhs = &self.b * &self.b * r;
        if lhs > rhs {
            sa
        } else {
            sb
        }
    }
    fn to_f64(&self) -> f64 {
        let a = OrderedField::to_f64(&self.a);
        match &self.r {
            None => a,
            Some(r) => {
                let rf = OrderedField::to_f64(&BigRational::from_integer((**r).clone()));
                a + OrderedField::to_f64(&self.b) * libm::sqrt(rf)
            }
        }
    }
}
