//! The matrices relating the ring of a form `B` to the ring of `B∘M`.
//!
//! With `m = det M`:
//! * `P` ((n-1)×(n-1)): entry `(i, j)` is the coefficient of `x^{j-1}` in
//!   `(p + qx)^{n-1-i} (r + sx)^{i-1}`.
//! * `Q` (n×n): entry `(i, j)` is the coefficient of `x^{i-1}` in
//!   `(p - rx)^{n-j} (sx - q)^{j-1}`.
//! * `A`, `B`: `1 ⊕` the upper-triangular Toeplitz matrix with first row
//!   `(a_1, .., a_{n-1})`, respectively `(b_1, .., b_{n-1})` where `b = B∘M`.
//! * `T = [[1, t], [0, m·P]]`, where
//!   `Σ_{j=2}^{n+1} t_{1j} x^{j-2} = -q·B'(p + qx, r + sx) - a_{n+1}·s·(r + sx)^{n-1}`
//!   and `B'` is the degree `n-1` form with coefficients `(a_1, .., a_n)`.
//!   The coefficient `t_{1,n+1}` is dropped.
//!
//! `T` maps coordinates in the ring of `B∘M` to coordinates in the ring of `B`
//! and is a ring isomorphism.

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::arithmat::arithmetic_matrix;
use crate::error::Error;
use crate::exactalg::{self as ea, dense, Matrix, Polynomial};
use crate::forms::{self, BinaryForm, Mat2, UnimodularMatrix};
use crate::serde_int::Int;

fn require_n(n: usize) -> Result<(), Error> {
    if n < 3 {
        return Err(Error::DegreeTooSmall { min: 3, found: n });
    }
    Ok(())
}

pub fn build_p<R: ea::Scalar>(n: usize, m: &Mat2<R>) -> Result<Matrix<R>, Error> {
    require_n(n)?;
    let x_img = [m.p.clone(), m.q.clone()];
    let y_img = [m.r.clone(), m.s.clone()];
    let rows: Vec<Vec<R>> = (1..n)
        .map(|i| {
            let poly = dense::mul(&dense::pow(&x_img, n - 1 - i), &dense::pow(&y_img, i - 1));
            (0..n - 1).map(|j| dense::coeff(&poly, j)).collect()
        })
        .collect();
    Matrix::from_rows(rows)
}

pub fn build_q<R: ea::Scalar>(n: usize, m: &Mat2<R>) -> Result<Matrix<R>, Error> {
    require_n(n)?;
    let u = [m.p.clone(), m.r.neg_ref()];
    let v = [m.q.neg_ref(), m.s.clone()];
    let cols: Vec<Vec<R>> = (1..=n)
        .map(|j| dense::mul(&dense::pow(&u, n - j), &dense::pow(&v, j - 1)))
        .collect();
    Ok(Matrix::from_fn(n, n, |i, j| dense::coeff(&cols[j], i)))
}

/// `1 ⊕ (upper-triangular Toeplitz with first row c_1, .., c_{n-1})`.
pub fn build_toeplitz<R: ea::Scalar>(c: &[R]) -> Matrix<R> {
    let n = c.len() - 1;
    Matrix::from_fn(n, n, |i, j| {
        if i == 0 || j == 0 {
            if i == j {
                R::one()
            } else {
                R::zero()
            }
        } else if j >= i {
            c[j - i].clone()
        } else {
            R::zero()
        }
    })
}

/// `b_i`: the coefficient of `x^{i-1}` in `B(p + qx, r + sx)`.
pub fn build_b_coeffs<R: ea::Scalar>(a: &[R], m: &Mat2<R>) -> Vec<R> {
    forms::act(a, m)
}

/// First row of `T` past the corner: `t_{12}, .., t_{1n}`.
pub fn t_row<R: ea::Scalar>(a: &[R], m: &Mat2<R>) -> Vec<R> {
    let n = a.len() - 1;
    let truncated = forms::act(&a[..n], m);
    let tail = dense::scale(
        &dense::pow(&[m.r.clone(), m.s.clone()], n - 1),
        &a[n].mul_ref(&m.s),
    );
    let gen = dense::add(&dense::scale(&truncated, &m.q.neg_ref()), &dense::scale(&tail, &R::from_i64(-1)));
    (0..n - 1).map(|j| dense::coeff(&gen, j)).collect()
}

pub fn build_t<R: ea::Scalar>(a: &[R], m: &Mat2<R>) -> Result<Matrix<R>, Error> {
    let n = a.len() - 1;
    let p = build_p(n, m)?;
    let det = m.det();
    let row = t_row(a, m);
    Ok(Matrix::from_fn(n, n, |i, j| match (i, j) {
        (0, 0) => R::one(),
        (0, j) => row[j - 1].clone(),
        (_, 0) => R::zero(),
        (i, j) => det.mul_ref(p.get(i - 1, j - 1)),
    }))
}

/// All the matrices for one form and one matrix `M`.
#[derive(Clone, Debug)]
pub struct ParamSystem<R> {
    pub n: usize,
    pub a: Vec<R>,
    pub m: Mat2<R>,
    pub b: Vec<R>,
    pub big_a: Matrix<R>,
    pub big_b: Matrix<R>,
    pub q: Matrix<R>,
    pub p: Matrix<R>,
    pub t: Matrix<R>,
}

impl<R: ea::Scalar> ParamSystem<R> {
    pub fn new(a: Vec<R>, m: Mat2<R>) -> Result<ParamSystem<R>, Error> {
        let n = a.len() - 1;
        require_n(n)?;
        let b = build_b_coeffs(&a, &m);
        Ok(ParamSystem {
            n,
            big_a: build_toeplitz(&a),
            big_b: build_toeplitz(&b),
            q: build_q(n, &m)?,
            p: build_p(n, &m)?,
            t: build_t(&a, &m)?,
            a,
            m,
            b,
        })
    }

    /// `T·coords`.
    pub fn transport(&self, coords: &[R]) -> Result<Vec<R>, Error> {
        self.t.mul_vec(coords)
    }
}

impl ParamSystem<Polynomial> {
    /// Coefficients `a1, .., a_{n+1}` and `M = [[p, q], [r, s]]` all symbolic.
    pub fn symbolic(n: usize) -> Result<ParamSystem<Polynomial>, Error> {
        ParamSystem::new(forms::symbolic_coeffs(n), Mat2::symbolic())
    }
}

impl ParamSystem<BigInt> {
    pub fn from_form(form: &BinaryForm, m: &UnimodularMatrix) -> Result<ParamSystem<BigInt>, Error> {
        ParamSystem::new(form.coeffs().to_vec(), m.to_mat2())
    }
}

/// `λ`: coordinates of an element of the ring of `B∘M` mapped to the ring of `B`.
pub fn transport_element(form: &BinaryForm, m: &UnimodularMatrix, coords: &[BigInt]) -> Result<Vec<BigInt>, Error> {
    if coords.len() != form.degree() {
        return Err(Error::CoordinateCount {
            expected: form.degree(),
            found: coords.len(),
        });
    }
    let t = build_t(form.coeffs(), &m.to_mat2())?;
    t.mul_vec(coords)
}

/// Which law a counterexample violates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Law {
    Additive,
    Multiplicative,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub trial: u64,
    pub law: Law,
    pub alpha: Vec<Int>,
    pub beta: Vec<Int>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsoReport {
    pub n: usize,
    pub trials: u64,
    pub seed: u64,
    pub passed: bool,
    pub transformed: Vec<Int>,
    pub counterexample: Option<Counterexample>,
}

pub const SAMPLE_RANGE: i64 = 1_000_000;

/// Checks on random element pairs that `λ` is additive and multiplicative,
/// multiplying with the arithmetic matrices of `B∘M` and `B` respectively.
///
/// Trial `k` draws from its own ChaCha stream, so the outcome depends only on
/// `seed`, not on scheduling.
pub fn isomorphism_check(form: &BinaryForm, m: &UnimodularMatrix, trials: u64, seed: u64) -> Result<IsoReport, Error> {
    require_n(form.degree())?;
    form.require_nondegenerate()?;
    let transformed = form.act(m);
    if transformed.leading().is_zero() || transformed.trailing().is_zero() {
        return Err(Error::DegenerateForm(format!(
            "B∘M = {transformed} has a vanishing end coefficient; choose a different M"
        )));
    }
    let n = form.degree();
    let t = build_t(form.coeffs(), &m.to_mat2())?;
    let a = form.coeffs();
    let b = transformed.coeffs();

    let run = |k: u64| -> Option<Counterexample> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(k);
        let mut draw = || -> Vec<BigInt> {
            (0..n)
                .map(|_| BigInt::from(rng.gen_range(-SAMPLE_RANGE..=SAMPLE_RANGE)))
                .collect()
        };
        let alpha = draw();
        let beta = draw();
        let fail = |law| {
            Some(Counterexample {
                trial: k,
                law,
                alpha: alpha.iter().cloned().map(Int).collect(),
                beta: beta.iter().cloned().map(Int).collect(),
            })
        };
        let la = t.mul_vec(&alpha).ok()?;
        let lb = t.mul_vec(&beta).ok()?;
        let sum: Vec<BigInt> = alpha.iter().zip(&beta).map(|(x, y)| x + y).collect();
        let lsum: Vec<BigInt> = la.iter().zip(&lb).map(|(x, y)| x + y).collect();
        if t.mul_vec(&sum).ok()? != lsum {
            return fail(Law::Additive);
        }
        let prod = arithmetic_matrix(b, &alpha).mul_vec(&beta).ok()?;
        let lprod = arithmetic_matrix(a, &la).mul_vec(&lb).ok()?;
        if t.mul_vec(&prod).ok()? != lprod {
            return fail(Law::Multiplicative);
        }
        None
    };
    let counterexample = (0..trials).into_par_iter().find_map_first(run);
    Ok(IsoReport {
        n,
        trials,
        seed,
        passed: counterexample.is_none(),
        transformed: transformed.coeffs().iter().cloned().map(Int).collect(),
        counterexample,
    })
}

/// Returns `T·(αβ) - (Tα)(Tβ)` with the form, `M` and both elements fully
/// symbolic (`α = Σ x_i φ_i`, `β = Σ y_i φ_i`), one entry per coordinate.
pub fn symbolic_transport_defect(n: usize) -> Result<Vec<Polynomial>, Error> {
    let sys = ParamSystem::symbolic(n)?;
    let alpha = Polynomial::vars("x", 0, n);
    let beta = Polynomial::vars("y", 0, n);
    let prod = arithmetic_matrix(&sys.b, &alpha).mul_vec(&beta)?;
    let lhs = sys.t.mul_vec(&prod)?;
    let la = sys.t.mul_vec(&alpha)?;
    let lb = sys.t.mul_vec(&beta)?;
    let rhs = arithmetic_matrix(&sys.a, &la).mul_vec(&lb)?;
    Ok(lhs.iter().zip(&rhs).map(|(l, r)| l.sub_ref(r)).collect())
}
