use core::cmp::Ordering;
use core::fmt;

use num_rational::BigRational;

use super::traits::{Field, OrderedField, Ring};

const U: f64 = f64::EPSILON;

/// Double-precision value with a running bound on accumulated rounding
/// error. A value is treated as zero when it cannot be distinguished from
/// zero within that bound; [`Approx::near_zero`] reports the ambiguous case.
#[derive(Clone, Copy, Debug)]
pub struct Approx {
    pub value: f64,
    pub err: f64,
}

impl Approx {
    pub fn new(value: f64) -> Self {
        Approx { value, err: 0.0 }
    }

    pub fn with_err(value: f64, err: f64) -> Self {
        Approx { value, err }
    }

    /// True when the magnitude is within a small multiple of the error bound
    /// but not exactly zero: sign decisions here are not trustworthy.
    pub fn near_zero(&self) -> bool {
        self.value != 0.0 && self.value.abs() <= 8.0 * self.err
    }
}

impl PartialEq for Approx {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value
    }
}

impl fmt::Display for Approx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e}", self.value)
    }
}

impl Ring for Approx {
    fn zero() -> Self {
        Approx::new(0.0)
    }
    fn one() -> Self {
        Approx::new(1.0)
    }
    fn from_i64(v: i64) -> Self {
        let x = v as f64;
        Approx::with_err(x, if x as i64 == v { 0.0 } else { U * x.abs() })
    }
    fn is_zero(&self) -> bool {
        self.value.abs() <= self.err
    }
    fn add(&self, rhs: &Self) -> Self {
        let v = self.value + rhs.value;
        Approx::with_err(v, self.err + rhs.err + U * v.abs())
    }
    fn sub(&self, rhs: &Self) -> Self {
        let v = self.value - rhs.value;
        Approx::with_err(v, self.err + rhs.err + U * v.abs())
    }
    fn mul(&self, rhs: &Self) -> Self {
        let v = self.value * rhs.value;
        let e = self.value.abs() * rhs.err + rhs.value.abs() * self.err + self.err * rhs.err + U * v.abs();
        Approx::with_err(v, e)
    }
    fn neg(&self) -> Self {
        Approx::with_err(-self.value, self.err)
    }
    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        Field::div(self, rhs)
    }
}

impl Field for Approx {
    fn inv(&self) -> Option<Self> {
        let a = self.value.abs();
        if a <= self.err || self.value == 0.0 {
            return None;
        }
        let v = 1.0 / self.value;
        Some(Approx::with_err(v, self.err / (a * (a - self.err)) + U * v.abs()))
    }
    fn from_rational(q: &BigRational) -> Self {
        let v = OrderedField::to_f64(q);
        Approx::with_err(v, U * v.abs())
    }
}

impl OrderedField for Approx {
    fn sign(&self) -> Ordering {
        if self.is_zero() {
            Ordering::Equal
        } else if self.value > 0.0 {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }
    fn to_f64(&self) -> f64 {
        self.value
    }
}
