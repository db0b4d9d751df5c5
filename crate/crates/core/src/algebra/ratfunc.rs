use core::fmt;

use super::poly::{UniPoly, Var};
use super::traits::{Field, Ring};

/// Quotient of univariate polynomials over a field, kept gcd-reduced with a
/// monic denominator; this is the field ℚ(t) the sweep recurrences run in.
#[derive(Clone, Debug, PartialEq)]
pub struct RatFunc<F: Field> {
    num: UniPoly<F>,
    den: UniPoly<F>,
}

impl<F: Field> RatFunc<F> {
    /// Panics if `den` is the zero polynomial.
    pub fn new(num: UniPoly<F>, den: UniPoly<F>) -> Self {
        assert!(!den.is_zero(), "RatFunc with zero denominator");
        let var = num.var().merge(den.var());
        if num.is_zero() {
            return RatFunc { num: UniPoly::zero_in(var), den: UniPoly::constant(F::one(), var) };
        }
        let g = num.gcd(&den);
        let (mut n, mut d) = if g.is_constant() {
            (num, den)
        } else {
            (num.exact_quo(&g).expect("gcd divides"), den.exact_quo(&g).expect("gcd divides"))
        };
        let inv = d.lc().inv().expect("nonzero leading coefficient");
        if !inv.is_one() {
            n = n.scale(&inv);
            d = d.scale(&inv);
        }
        RatFunc { num: n.with_var(var), den: d.with_var(var) }
    }

    pub fn from_poly(p: UniPoly<F>) -> Self {
        let var = p.var();
        RatFunc { num: p, den: UniPoly::constant(F::one(), var) }
    }

    pub fn constant(c: F, var: Var) -> Self {
        Self::from_poly(UniPoly::constant(c, var))
    }

    /// The sweep variable itself.
    pub fn param(var: Var) -> Self {
        Self::from_poly(UniPoly::x(var))
    }

    pub fn num(&self) -> &UniPoly<F> {
        &self.num
    }

    pub fn den(&self) -> &UniPoly<F> {
        &self.den
    }

    pub fn var(&self) -> Var {
        self.num.var().merge(self.den.var())
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// The polynomial this function equals, if its denominator is constant.
    pub fn as_polynomial(&self) -> Option<UniPoly<F>> {
        if self.den.is_constant() {
            let inv = self.den.lc().inv()?;
            Some(self.num.scale(&inv))
        } else {
            None
        }
    }

    /// Value at `x`; `None` at a pole.
    pub fn eval(&self, x: &F) -> Option<F> {
        self.num.eval(x).div(&self.den.eval(x))
    }

    pub fn eval_with<S: Field>(&self, x: &S, f: impl Fn(&F) -> S + Copy) -> Option<S> {
        self.num.eval_with(x, f).div(&self.den.eval_with(x, f))
    }

    /// Exact vanishing at every root of the squarefree polynomial `d`:
    /// `d` divides the numerator and shares no root with the denominator.
    pub fn vanishes_on(&self, d: &UniPoly<F>) -> bool {
        let num_ok = self.num.is_zero() || self.num.rem(d).map(|r| r.is_zero()).unwrap_or(false);
        num_ok && self.den.gcd(d).is_constant()
    }

    /// Finite (no pole) at every root of `d`.
    pub fn regular_on(&self, d: &UniPoly<F>) -> bool {
        self.den.gcd(d).is_constant()
    }
}

impl<F: Field> fmt::Display for RatFunc<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl<F: Field> Ring for RatFunc<F> {
    fn zero() -> Self {
        Self::constant(F::zero(), Var::Any)
    }
    fn one() -> Self {
        Self::constant(F::one(), Var::Any)
    }
    fn from_i64(v: i64) -> Self {
        Self::constant(F::from_i64(v), Var::Any)
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn add(&self, rhs: &Self) -> Self {
        if self.den == rhs.den {
            return Self::new(self.num.add(&rhs.num), self.den.clone());
        }
        Self::new(self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)), self.den.mul(&rhs.den))
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }
    fn mul(&self, rhs: &Self) -> Self {
        if self.num.is_zero() || rhs.num.is_zero() {
            return Self::constant(F::zero(), self.var().merge(rhs.var()));
        }
        if self.den.is_constant() && rhs.den.is_constant() {
            let var = self.var().merge(rhs.var());
            return RatFunc { num: self.num.mul(&rhs.num), den: UniPoly::constant(F::one(), var) };
        }
        Self::new(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }
    fn neg(&self) -> Self {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }
    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        Field::div(self, rhs)
    }
}

impl<F: Field> Field for RatFunc<F> {
    fn inv(&self) -> Option<Self> {
        if self.num.is_zero() {
            None
        } else {
            Some(Self::new(self.den.clone(), self.num.clone()))
        }
    }
    fn from_rational(q: &num_rational::BigRational) -> Self {
        Self::constant(F::from_rational(q), Var::Any)
    }
}
