use core::cmp::Ordering;
use core::fmt::{Debug, Display};

use num_rational::BigRational;

/// Commutative ring with exact (or tolerance-tracked) arithmetic.
///
/// Methods take references so that big-number types are not moved around;
/// generic code in this crate never relies on `std::ops`.
pub trait Ring: Clone + PartialEq + Debug + Display {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Quotient `self / rhs` when it exists in the ring.
    fn div_exact(&self, rhs: &Self) -> Option<Self>;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    fn scale(&self, k: i64) -> Self {
        self.mul(&Self::from_i64(k))
    }
}

pub trait Field: Ring {
    fn inv(&self) -> Option<Self>;
    fn from_rational(q: &BigRational) -> Self;

    fn div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self.mul(&r))
    }
}

/// A field with a computable sign, used by Sturm isolation and bisection.
pub trait OrderedField: Field {
    /// Sign of the element relative to zero.
    fn sign(&self) -> Ordering;
    fn to_f64(&self) -> f64;
}
