//! Sylvester resultants.
//!
//! Convention: the Sylvester matrix of `p` (degree m) and `q` (degree n) has
//! the n shifted coefficient rows of `p` first, then the m rows of `q`, with
//! coefficients written from the highest degree down. With this convention
//! `res(z − a, z − b) = a − b`.

use alloc::vec;
use alloc::vec::Vec;

use super::poly::UniPoly;
use super::traits::Ring;
use super::AlgebraError;

pub fn sylvester_matrix<R: Ring>(p: &UniPoly<R>, q: &UniPoly<R>) -> Vec<Vec<R>> {
    let m = p.degree().unwrap_or(0);
    let n = q.degree().unwrap_or(0);
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for (src, deg, count) in [(p, m, n), (q, n, m)] {
        for i in 0..count {
            let mut row = vec![R::zero(); size];
            for k in 0..=deg {
                row[i + k] = src.coeff(deg - k);
            }
            rows.push(row);
        }
    }
    rows
}

/// Fraction-free Gaussian elimination (Bareiss); exact over any ring in
/// which the intermediate divisions are exact (integral domains).
pub fn determinant<R: Ring>(mut m: Vec<Vec<R>>) -> R {
    let n = m.len();
    if n == 0 {
        return R::one();
    }
    let mut sign_flip = false;
    let mut prev = R::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign_flip = !sign_flip;
                }
                None => return R::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = v.div_exact(&prev).expect("Bareiss division is exact in an integral domain");
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign_flip {
        d.neg()
    } else {
        d
    }
}

/// Resultant of `p` and `q`: the determinant of their Sylvester matrix.
/// Zero exactly when the two polynomials share a root over the algebraic
/// closure (or both leading coefficients vanish, which trimming excludes).
pub fn resultant<R: Ring>(p: &UniPoly<R>, q: &UniPoly<R>) -> Result<R, AlgebraError> {
    if p.is_zero() || q.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    if p.is_constant() && q.is_constant() {
        return Err(AlgebraError::ConstantResultant);
    }
    Ok(determinant(sylvester_matrix(p, q)))
}
