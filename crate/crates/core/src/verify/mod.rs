//! Symbolic certification of the parametrization identity
//!
//! ```text
//! a_1^{n-1} A^{-1} Q B T^{-1} = N^{n-1},    N = N^(a_1 p - r φ_1),
//! ```
//!
//! checked in the inversion-free form `S·(Q·B) = N^{n-1}·T` with
//! `S = a_1^{n-1} A^{-1}` computed exactly. Everything lives in
//! `ℤ[a_1, .., a_{n+1}, p, q, r, s]`; `m = ps - qr` is never specialized.

mod covariants;

pub use covariants::{printed_g, quartic_covariants, syzygy_check, syzygy_defect, Covariants, Syzygy};

use std::time::Instant;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::arithmat::arithmetic_matrix;
use crate::error::Error;
use crate::exactalg::{self as ea, Matrix, Polynomial};
use crate::forms::{self, Mat2};
use crate::param::ParamSystem;

/// `N^(a_1 p - r φ_1)` from its closed form.
pub fn special_matrix<R: ea::Scalar>(a: &[R], m: &Mat2<R>) -> Result<Matrix<R>, Error> {
    let n = a.len() - 1;
    if n < 3 {
        return Err(Error::DegreeTooSmall { min: 3, found: n });
    }
    let pa1 = m.p.mul_ref(&a[0]);
    let ra1 = m.r.mul_ref(&a[0]);
    Ok(Matrix::from_fn(n, n, |i, j| {
        if i == j {
            if i == 1 {
                pa1.add_ref(&m.r.mul_ref(&a[1]))
            } else {
                pa1.clone()
            }
        } else if i == 0 && j == n - 1 {
            ra1.mul_ref(&a[n])
        } else if i == 1 && j == 0 {
            m.r.neg_ref()
        } else if i == 1 {
            m.r.mul_ref(&a[j])
        } else if i == j + 1 {
            ra1.neg_ref()
        } else {
            R::zero()
        }
    }))
}

/// `N^(a_1 p - r φ_1)` through the general arithmetic-matrix construction.
pub fn special_matrix_via_arithmat<R: ea::Scalar>(a: &[R], m: &Mat2<R>) -> Matrix<R> {
    let n = a.len() - 1;
    let mut x = vec![R::zero(); n];
    x[0] = a[0].mul_ref(&m.p);
    x[1] = m.r.neg_ref();
    arithmetic_matrix(a, &x)
}

/// Both sides of `S·(Q·B) = N^{n-1}·T` over any scalar ring.
pub fn identity_sides<R: ea::Scalar>(sys: &ParamSystem<R>) -> Result<(Matrix<R>, Matrix<R>), Error> {
    let n = sys.n;
    let scale = sys.a[0].pow(n as u32 - 1);
    let s = sys.big_a.triangular_scaled_inverse(&scale)?;
    let lhs = s.mul(&sys.q.mul(&sys.big_b)?)?;
    let special = special_matrix(&sys.a, &sys.m)?;
    let rhs = special.pow(n as u32 - 1)?.mul(&sys.t)?;
    Ok((lhs, rhs))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Verified,
    Failed,
}

/// The first entry where the two sides differ (1-based) and `LHS - RHS` there.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub row: usize,
    pub col: usize,
    pub difference: Polynomial,
}

/// Timing, kept apart from the deterministic payload.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Meta {
    pub millis: u128,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub n: usize,
    pub status: Status,
    pub lhs_terms: usize,
    pub rhs_terms: usize,
    /// SHA-256 over both canonical serializations.
    pub digest: String,
    pub lhs_digest: String,
    pub rhs_digest: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<Failure>,
    pub meta: Meta,
}

impl Certificate {
    pub fn verified(&self) -> bool {
        self.status == Status::Verified
    }
}

fn sha256_hex(parts: &[&str]) -> String {
    let mut h = Sha256::new();
    for p in parts {
        h.update(p.as_bytes());
    }
    hex::encode(h.finalize())
}

/// Digest of a matrix: SHA-256 of its canonical text.
pub fn matrix_digest(m: &Matrix<Polynomial>) -> String {
    sha256_hex(&[&m.to_canonical_string()])
}

/// Certifies the identity for one `n`. A `Failed` certificate is a result,
/// not an error.
pub fn verify_identity(n: usize) -> Result<Certificate, Error> {
    if n < 3 {
        return Err(Error::DegreeTooSmall { min: 3, found: n });
    }
    let start = Instant::now();
    let sys = ParamSystem::symbolic(n)?;
    let (lhs, rhs) = identity_sides(&sys)?;
    let failure = first_difference(&lhs, &rhs);
    let lhs_text = lhs.to_canonical_string();
    let rhs_text = rhs.to_canonical_string();
    let header = format!("n={n}\n");
    Ok(Certificate {
        n,
        status: if failure.is_none() {
            Status::Verified
        } else {
            Status::Failed
        },
        lhs_terms: lhs.total_terms(),
        rhs_terms: rhs.total_terms(),
        digest: sha256_hex(&[&header, "lhs\n", &lhs_text, "rhs\n", &rhs_text]),
        lhs_digest: sha256_hex(&[&lhs_text]),
        rhs_digest: sha256_hex(&[&rhs_text]),
        failure,
        meta: Meta {
            millis: start.elapsed().as_millis(),
        },
    })
}

fn first_difference(lhs: &Matrix<Polynomial>, rhs: &Matrix<Polynomial>) -> Option<Failure> {
    for i in 0..lhs.rows() {
        for j in 0..lhs.cols() {
            let d = lhs.get(i, j).sub_ref(rhs.get(i, j));
            if !d.is_zero() {
                return Some(Failure {
                    row: i + 1,
                    col: j + 1,
                    difference: d,
                });
            }
        }
    }
    None
}

/// Evaluates the identity at `points` random integer specializations of
/// `a_1, .., a_{n+1}, p, q, r, s` (with `a_1 ≠ 0`), building every matrix
/// directly over ℤ. Returns the first point where the sides differ.
pub fn spot_check(n: usize, points: usize, seed: u64) -> Result<Option<Vec<BigInt>>, Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..points {
        let mut a: Vec<BigInt> = (0..=n).map(|_| BigInt::from(rng.gen_range(-50i64..=50))).collect();
        if a[0] == BigInt::from(0) {
            a[0] = BigInt::from(1);
        }
        let mut draw = || BigInt::from(rng.gen_range(-20i64..=20));
        let m = Mat2 {
            p: draw(),
            q: draw(),
            r: draw(),
            s: draw(),
        };
        let sys = ParamSystem::new(a.clone(), m.clone())?;
        let (lhs, rhs) = identity_sides(&sys)?;
        if lhs != rhs {
            a.extend([m.p, m.q, m.r, m.s]);
            return Ok(Some(a));
        }
    }
    Ok(None)
}

/// `Q·B·T^{-1}` as the exact quotient `A·N^{n-1} / a_1^{n-1}`.
pub fn qbt_inverse(n: usize) -> Result<Matrix<Polynomial>, Error> {
    let sys = ParamSystem::symbolic(n)?;
    let special = special_matrix(&sys.a, &sys.m)?;
    let prod = sys.big_a.mul(&special.pow(n as u32 - 1)?)?;
    prod.div_exact(&sys.a[0].pow(n as u32 - 1))
}

/// `true` when `Z·T = Q·B`, i.e. `Z` really is `Q·B·T^{-1}`.
pub fn is_qbt_inverse(n: usize, z: &Matrix<Polynomial>) -> Result<bool, Error> {
    let sys = ParamSystem::symbolic(n)?;
    Ok(z.mul(&sys.t)? == sys.q.mul(&sys.big_b)?)
}

/// Symbolic coefficients and matrix for degree `n`.
pub fn symbolic_inputs(n: usize) -> (Vec<Polynomial>, Mat2<Polynomial>) {
    (forms::symbolic_coeffs(n), Mat2::symbolic())
}
