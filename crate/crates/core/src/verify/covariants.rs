//! Invariants and covariants of a binary quartic `(a, b, c, d, e)`.
//!
//! `G`, `H`, `F` are the ternary forms in `x, y, z` with
//! `256·det N^(α) = t^4 - 2G t^2 - 8H t + F` for `α = u + xφ_1 + yφ_2 + zφ_3`
//! and `t` the trace of `α`. Since `N` is linear in the coordinates and
//! `t = 4u - bx - 2cy - 3dz`, the left side is `det N(t + bx + 2cy + 3dz, 4x, 4y, 4z)`.

use serde::Serialize;

use crate::arithmat::arithmetic_matrix;
use crate::error::Error;
use crate::exactalg::{Polynomial, Variable};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Covariants {
    pub i: Polynomial,
    pub j: Polynomial,
    pub g: Polynomial,
    pub h: Polynomial,
    pub f: Polynomial,
}

fn var(name: &str) -> Polynomial {
    Polynomial::var(name)
}

fn int(v: i64) -> Polynomial {
    Polynomial::from_i64(v)
}

fn check_degree(coeffs: &[Polynomial]) -> Result<(), Error> {
    if coeffs.len() != 5 {
        return Err(Error::DegreeMismatch {
            expected: 4,
            found: coeffs.len().saturating_sub(1),
        });
    }
    Ok(())
}

/// `I = 12ae - 3bd + c²`.
pub fn invariant_i(c: &[Polynomial]) -> Polynomial {
    let [a, b, c, d, e] = [&c[0], &c[1], &c[2], &c[3], &c[4]];
    int(12) * a * e - int(3) * b * d + c * c
}

/// `J = 72ace + 9bcd - 27ad² - 27b²e - 2c³`.
pub fn invariant_j(c: &[Polynomial]) -> Polynomial {
    let [a, b, c, d, e] = [&c[0], &c[1], &c[2], &c[3], &c[4]];
    int(72) * a * c * e + int(9) * b * c * d - int(27) * a * d * d - int(27) * b * b * e - int(2) * c * c * c
}

/// The classical quadratic covariant, as a ternary quadratic in `x, y, z`.
pub fn printed_g(c: &[Polynomial]) -> Polynomial {
    let [a, b, c, d, e] = [&c[0], &c[1], &c[2], &c[3], &c[4]];
    let (x, y, z) = (var("x"), var("y"), var("z"));
    (int(3) * b * b - int(8) * a * c) * &x * &x
        + (int(4) * b * c - int(24) * a * d) * &x * &y
        + (int(4) * c * c - int(8) * b * d - int(16) * a * e) * &y * &y
        + (int(2) * b * d - int(32) * a * e) * &x * &z
        + (int(4) * c * d - int(24) * b * e) * &y * &z
        + (int(3) * d * d - int(8) * c * e) * &z * &z
}

/// Expands `256·det N^(α)` in the trace `t` and reads off `G`, `H`, `F`.
///
/// Fails if the `t^3` coefficient is nonzero or the derived `G` differs from
/// the classical one, either of which would mean the normalization is wrong.
pub fn quartic_covariants(coeffs: &[Polynomial]) -> Result<Covariants, Error> {
    check_degree(coeffs)?;
    let [_, b, c, d, _] = [&coeffs[0], &coeffs[1], &coeffs[2], &coeffs[3], &coeffs[4]];
    let (t, x, y, z) = (var("t"), var("x"), var("y"), var("z"));
    let u = &t + b * &x + int(2) * c * &y + int(3) * d * &z;
    let coords = [u, int(4) * &x, int(4) * &y, int(4) * &z];
    let det = arithmetic_matrix(coeffs, &coords).det_cofactor()?;
    let tv = Variable::new("t");
    let lead = det.coefficient(&tv, 4);
    if !lead.is_one() {
        return Err(Error::Covariant(format!("t^4 coefficient is {lead}, expected 1")));
    }
    let cubic = det.coefficient(&tv, 3);
    if !cubic.is_zero() {
        return Err(Error::Covariant(format!("nonzero t^3 coefficient {cubic}")));
    }
    let g = det
        .coefficient(&tv, 2)
        .div_exact(&int(-2))
        .ok_or_else(|| Error::Covariant("t^2 coefficient is not divisible by 2".into()))?;
    let printed = printed_g(coeffs);
    if g != printed {
        return Err(Error::Covariant(format!(
            "derived G differs from the classical covariant by {}",
            g.sub_ref(&printed)
        )));
    }
    let h = det
        .coefficient(&tv, 1)
        .div_exact(&int(-8))
        .ok_or_else(|| Error::Covariant("t coefficient is not divisible by 8".into()))?;
    let f = det.coefficient(&tv, 0);
    Ok(Covariants {
        i: invariant_i(coeffs),
        j: invariant_j(coeffs),
        g,
        h,
        f,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Syzygy {
    Holds,
    Fails { difference: Polynomial },
}

/// `g_4^3 - 48 g_4 I v^2 - 64 J v^3 - 27 g_6^2` as a polynomial in `x`, where
/// `g_4 = G(x², x, 1)`, `g_6 = H(x², x, 1)` and `v = V(x, 1)`.
pub fn syzygy_defect(coeffs: &[Polynomial]) -> Result<Polynomial, Error> {
    let cov = quartic_covariants(coeffs)?;
    let x = var("x");
    let subs = [
        (Variable::new("x"), &x * &x),
        (Variable::new("y"), x.clone()),
        (Variable::new("z"), int(1)),
    ];
    let g4 = cov.g.substitute(&subs);
    let g6 = cov.h.substitute(&subs);
    let v = coeffs
        .iter()
        .enumerate()
        .fold(Polynomial::zero(), |acc, (k, a)| acc + a * &x.pow(4 - k as u32));
    let v2 = &v * &v;
    let lhs = g4.pow(3) - int(48) * &g4 * &cov.i * &v2 - int(64) * &cov.j * &v2 * &v;
    Ok(lhs - int(27) * &g6 * &g6)
}

pub fn syzygy_check(coeffs: &[Polynomial]) -> Result<Syzygy, Error> {
    let d = syzygy_defect(coeffs)?;
    Ok(if d.is_zero() {
        Syzygy::Holds
    } else {
        Syzygy::Fails { difference: d }
    })
}
