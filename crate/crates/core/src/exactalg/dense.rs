//! Dense univariate polynomials as coefficient slices, lowest degree first.
//!
//! Used to expand the binomial-type products `(p + q·x)^i (r + s·x)^j` that
//! define the change-of-basis matrices and the group action on forms.

use super::Scalar;

pub fn mul<R: Scalar>(a: &[R], b: &[R]) -> Vec<R> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![R::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].add_ref(&x.mul_ref(y));
        }
    }
    out
}

pub fn pow<R: Scalar>(base: &[R], e: usize) -> Vec<R> {
    let mut out = vec![R::one()];
    for _ in 0..e {
        out = mul(&out, base);
    }
    out
}

pub fn add<R: Scalar>(a: &[R], b: &[R]) -> Vec<R> {
    (0..a.len().max(b.len()))
        .map(|i| coeff(a, i).add_ref(&coeff(b, i)))
        .collect()
}

pub fn scale<R: Scalar>(a: &[R], k: &R) -> Vec<R> {
    a.iter().map(|c| c.mul_ref(k)).collect()
}

/// Coefficient of `x^i`, zero past the end.
pub fn coeff<R: Scalar>(a: &[R], i: usize) -> R {
    a.get(i).cloned().unwrap_or_else(R::zero)
}
