use core::cmp::Ordering;

use alloc::string::String;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::traits::{Field, OrderedField, Ring};

pub type Q = BigRational;

/// `n / d` as an exact rational. Panics on `d == 0`.
pub fn q(n: i64, d: i64) -> Q {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Q {
    BigRational::from_integer(BigInt::from(n))
}

impl Ring for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(v: i64) -> Self {
        qi(v)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        if Zero::is_zero(rhs) {
            None
        } else {
            Some(self / rhs)
        }
    }
}

impl Field for BigRational {
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn from_rational(q: &BigRational) -> Self {
        q.clone()
    }
}

impl OrderedField for BigRational {
    fn sign(&self) -> Ordering {
        if self.is_positive() {
            Ordering::Greater
        } else if self.is_negative() {
            Ordering::Less
        } else {
            Ordering::Equal
        }
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

/// Exact square root of a non-negative rational, if it is a perfect square.
pub fn rational_sqrt(x: &Q) -> Option<Q> {
    if x.is_negative() {
        return None;
    }
    let (n, d) = (x.numer(), x.denom());
    let rn = n.sqrt();
    let rd = d.sqrt();
    if &(&rn * &rn) == n && &(&rd * &rd) == d {
        Some(BigRational::new(rn, rd))
    } else {
        None
    }
}

/// Splits a positive rational `r` as `c² · m` with `m` an integer whose
/// small square factors have been removed; returns `(c, m)`.
///
/// Only trial division by integers below 10⁴ is attempted, so `m` may keep a
/// large square factor; callers compare radicands through
/// [`rational_sqrt`] of their ratio, which stays correct either way.
pub fn split_square(r: &Q) -> (Q, BigInt) {
    let d = r.denom().clone();
    let mut m: BigInt = r.numer() * &d;
    let mut c = BigInt::one();
    let mut p = BigInt::from(2u32);
    let limit = BigInt::from(10_000u32);
    while p < limit && &p * &p <= m {
        let p2 = &p * &p;
        while (&m).is_multiple_of(&p2) {
            m /= &p2;
            c *= &p;
        }
        p += 1u32;
    }
    (BigRational::new(c, d), m)
}

/// Parses a decimal literal (`"-1.25"`, `"3"`, `"2.5e-3"`) or a fraction
/// (`"3/7"`) into an exact rational.
pub fn parse_rational(s: &str) -> Option<Q> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(BigRational::new(n, d));
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (neg, body) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = match body.split_once('.') {
        Some((a, b)) => (a, b),
        None => (body, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let mut digits = String::with_capacity(int_part.len() + frac_part.len());
    digits.push_str(int_part);
    digits.push_str(frac_part);
    let mut value = BigRational::from_integer(digits.parse::<BigInt>().ok()?);
    let scale = exp - frac_part.len() as i32;
    let ten = BigRational::from_integer(BigInt::from(10u32));
    if scale >= 0 {
        value *= ten.pow(scale);
    } else {
        value /= ten.pow(-scale);
    }
    Some(if neg { -value } else { value })
}

/// Nearest-ish rational to a finite double (exact binary expansion).
pub fn rational_from_f64(x: f64) -> Option<Q> {
    BigRational::from_float(x)
}

pub fn abs(x: &Q) -> Q {
    x.abs()
}
