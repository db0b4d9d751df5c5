use alloc::vec::Vec;

use crate::algebra::Ring;

use super::ModelError;

/// `K_{n0}, …, K_{nn}` by the upward three-term recurrence
///
/// ```text
/// K_{n0} = 1,  K_{n1} = 4κ² + μ² − 1,
/// K_{nl} = (4lκ² + μ² − l²) K_{n,l−1} − 4l(l−1)(n−l+1) κ² K_{n,l−2}.
/// ```
pub fn kus_sequence<R: Ring>(n: usize, kappa: &R, mu: &R) -> Vec<R> {
    let k2 = kappa.mul(kappa);
    let m2 = mu.mul(mu);
    let mut out = Vec::with_capacity(n + 1);
    out.push(R::one());
    if n == 0 {
        return out;
    }
    out.push(k2.scale(4).add(&m2).sub(&R::one()));
    for l in 2..=n {
        let li = l as i64;
        let first = k2.scale(4 * li).add(&m2).sub(&R::from_i64(li * li)).mul(&out[l - 1]);
        let second = k2.scale(4 * li * (li - 1) * (n as i64 - li + 1)).mul(&out[l - 2]);
        out.push(first.sub(&second));
    }
    out
}

/// `K_{nn}(κ, μ)`, whose zeros in `κ = g/ω` are the Juddian points of the
/// Rabi model on the n-th baseline.
pub fn kus_polynomial<R: Ring>(n: usize, kappa: &R, mu: &R) -> R {
    kus_sequence(n, kappa, mu).pop().expect("sequence is never empty")
}

/// Number of real positive zeros of `K_nn` for `k < μ < k+1`: `n − k`,
/// clamped at zero.
pub fn root_count_expectation(n: usize, mu: f64) -> Result<usize, ModelError> {
    if !(mu > 0.0) || !mu.is_finite() {
        return Err(ModelError::InvalidParameter(alloc::format!("μ = {mu} must be positive")));
    }
    if libm::floor(mu) == mu {
        return Err(ModelError::IntegerMu(mu));
    }
    let k = libm::floor(mu) as usize;
    Ok(n.saturating_sub(k))
}
