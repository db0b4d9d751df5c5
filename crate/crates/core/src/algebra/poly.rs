use core::fmt;

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use super::traits::{Field, Ring};
use super::AlgebraError;

/// Name of the indeterminate a polynomial is written in.
///
/// `Any` marks constants created without context (e.g. through
/// [`Ring::zero`]); it is compatible with every other tag.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    Any,
    /// The ODE variable.
    Z,
    /// The sweep parameter.
    T,
    /// The (free) energy.
    E,
    /// A second model parameter eliminated by a resultant.
    S,
}

impl Var {
    pub fn symbol(self) -> &'static str {
        match self {
            Var::Any | Var::Z => "z",
            Var::T => "t",
            Var::E => "E",
            Var::S => "s",
        }
    }

    /// The common tag of two operands; panics on a genuine mismatch, which
    /// always indicates polynomials in different variables being combined.
    pub fn merge(self, other: Var) -> Var {
        match (self, other) {
            (Var::Any, v) | (v, Var::Any) => v,
            (a, b) if a == b => a,
            (a, b) => panic!("UniPoly: combining polynomials in {a:?} and {b:?}"),
        }
    }
}

/// Dense univariate polynomial, lowest degree first, with no trailing zero
/// coefficients (the zero polynomial has an empty coefficient list).
#[derive(Clone, Debug)]
pub struct UniPoly<R> {
    coeffs: Vec<R>,
    var: Var,
}

impl<R: Ring> PartialEq for UniPoly<R> {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl<R: Ring> UniPoly<R> {
    pub fn new(mut coeffs: Vec<R>, var: Var) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs, var }
    }

    pub fn zero_in(var: Var) -> Self {
        UniPoly { coeffs: Vec::new(), var }
    }

    pub fn constant(c: R, var: Var) -> Self {
        Self::new(vec![c], var)
    }

    /// The indeterminate itself.
    pub fn x(var: Var) -> Self {
        Self::new(vec![R::zero(), R::one()], var)
    }

    /// `c · x^k`.
    pub fn monomial(c: R, k: usize, var: Var) -> Self {
        let mut v = vec![R::zero(); k + 1];
        v[k] = c;
        Self::new(v, var)
    }

    /// Polynomial with roots `roots` and leading coefficient one.
    pub fn from_roots(roots: &[R], var: Var) -> Self {
        let mut p = Self::constant(R::one(), var);
        for r in roots {
            p = p.mul(&Self::new(vec![r.neg(), R::one()], var));
        }
        p
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn with_var(mut self, var: Var) -> Self {
        self.var = var;
        self
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    /// Coefficient of `x^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> R {
        self.coeffs.get(k).cloned().unwrap_or_else(R::zero)
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree as a signed integer with `-1` for the zero polynomial.
    pub fn deg_i(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn lc(&self) -> R {
        self.coeffs.last().cloned().unwrap_or_else(R::zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let v = (0..n).map(|i| self.coeff(i).add(&o.coeff(i))).collect();
        Self::new(v, self.var.merge(o.var))
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let v = (0..n).map(|i| self.coeff(i).sub(&o.coeff(i))).collect();
        Self::new(v, self.var.merge(o.var))
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.neg()).collect(), self.var)
    }

    pub fn mul(&self, o: &Self) -> Self {
        let var = self.var.merge(o.var);
        if self.is_zero() || o.is_zero() {
            return Self::zero_in(var);
        }
        let mut v = vec![R::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] = v[i + j].add(&a.mul(b));
            }
        }
        Self::new(v, var)
    }

    pub fn scale(&self, c: &R) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.mul(c)).collect(), self.var)
    }

    /// Multiplication by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![R::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        Self::new(v, self.var)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(R::one(), self.var);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &R) -> R {
        let mut acc = R::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    /// Evaluation at a point of an extension ring, via a coefficient map.
    pub fn eval_with<S: Ring>(&self, x: &S, f: impl Fn(&R) -> S) -> S {
        let mut acc = S::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(&f(c));
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let v = self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c.scale(i as i64)).collect();
        Self::new(v, self.var)
    }

    /// l-th derivative.
    pub fn derivative_n(&self, l: usize) -> Self {
        let mut p = self.clone();
        for _ in 0..l {
            p = p.derivative();
        }
        p
    }

    /// `self(q(x))`.
    pub fn compose(&self, q: &Self) -> Self {
        let mut acc = Self::zero_in(self.var.merge(q.var));
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(q).add(&Self::constant(c.clone(), q.var));
        }
        acc
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> UniPoly<S> {
        UniPoly::new(self.coeffs.iter().map(f).collect(), self.var)
    }

    /// Long division by a divisor whose leading coefficient divides every
    /// intermediate leading coefficient; `None` if the division is not exact.
    pub fn div_exact_poly(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        let var = self.var.merge(d.var);
        if self.is_zero() {
            return Some(Self::zero_in(var));
        }
        let dd = d.coeffs.len() - 1;
        let lc = d.lc();
        let mut rem = self.coeffs.clone();
        if rem.len() < d.coeffs.len() {
            return None;
        }
        let mut quo = vec![R::zero(); rem.len() - dd];
        for i in (0..quo.len()).rev() {
            let c = rem[i + dd].div_exact(&lc)?;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    rem[i + j] = rem[i + j].sub(&c.mul(dc));
                }
            }
            quo[i] = c;
        }
        if rem.iter().all(|c| c.is_zero()) {
            Some(Self::new(quo, var))
        } else {
            None
        }
    }
}

impl<F: Field> UniPoly<F> {
    /// Euclidean division: `self = q·d + r`, `deg r < deg d`.
    pub fn divrem(&self, d: &Self) -> Result<(Self, Self), AlgebraError> {
        if d.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        let var = self.var.merge(d.var);
        let dd = d.coeffs.len() - 1;
        let inv = d.lc().inv().ok_or(AlgebraError::DivisionByZero)?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero_in(var), Self::new(rem, var)));
        }
        let mut quo = vec![F::zero(); rem.len() - dd];
        for i in (0..quo.len()).rev() {
            let c = rem[i + dd].mul(&inv);
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    rem[i + j] = rem[i + j].sub(&c.mul(dc));
                }
            }
            rem[i + dd] = F::zero();
            quo[i] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(quo, var), Self::new(rem, var)))
    }

    pub fn rem(&self, d: &Self) -> Result<Self, AlgebraError> {
        self.divrem(d).map(|(_, r)| r)
    }

    /// Leading coefficient one (the zero polynomial is returned unchanged).
    pub fn monic(&self) -> Self {
        match self.lc().inv() {
            Some(inv) if !self.is_zero() => self.scale(&inv),
            _ => self.clone(),
        }
    }

    /// Monic greatest common divisor (zero iff both inputs are zero).
    pub fn gcd(&self, o: &Self) -> Self {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn lcm(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero_in(self.var.merge(o.var));
        }
        let g = self.gcd(o);
        self.mul(o).divrem(&g).expect("nonzero gcd").0.monic()
    }

    /// Exact quotient by a divisor known to divide `self`.
    pub fn exact_quo(&self, d: &Self) -> Result<Self, AlgebraError> {
        let (q, r) = self.divrem(d)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(AlgebraError::InexactDivision)
        }
    }

    /// `self / gcd(self, self′)`: same roots, all simple.
    pub fn squarefree_part(&self) -> Self {
        if self.is_constant() {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        self.divrem(&g).expect("nonzero gcd").0
    }

    pub fn is_squarefree(&self) -> bool {
        self.is_constant() || self.gcd(&self.derivative()).is_constant()
    }

    /// Removes from `self` every root shared with `other` (with multiplicity).
    pub fn strip_common(&self, other: &Self) -> Self {
        let mut p = self.clone();
        loop {
            let g = p.gcd(other);
            if g.is_constant() {
                return p;
            }
            p = p.divrem(&g).expect("nonzero gcd").0;
        }
    }
}

impl<R: Ring> fmt::Display for UniPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let x = self.var.symbol();
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let s = c.to_string();
            let (neg, body) = match s.strip_prefix('-') {
                Some(rest) if is_atom(rest) => (true, String::from(rest)),
                _ => (false, s.clone()),
            };
            let body = if is_atom(&body) { body } else { alloc::format!("({body})") };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match k {
                0 => write!(f, "{body}")?,
                _ => {
                    if body != "1" {
                        write!(f, "{body}*")?;
                    }
                    if k == 1 {
                        write!(f, "{x}")?;
                    } else {
                        write!(f, "{x}^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

fn is_atom(s: &str) -> bool {
    !s.is_empty() && !s.contains([' ', '+']) && !s[1..].contains('-') && !s.starts_with('(')
        || (s.starts_with('(') && s.ends_with(')'))
}

impl<R: Ring> Ring for UniPoly<R> {
    fn zero() -> Self {
        Self::zero_in(Var::Any)
    }
    fn one() -> Self {
        Self::constant(R::one(), Var::Any)
    }
    fn from_i64(v: i64) -> Self {
        Self::constant(R::from_i64(v), Var::Any)
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn add(&self, rhs: &Self) -> Self {
        UniPoly::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        UniPoly::sub(self, rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        UniPoly::mul(self, rhs)
    }
    fn neg(&self) -> Self {
        UniPoly::neg(self)
    }
    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        self.div_exact_poly(rhs)
    }
}
