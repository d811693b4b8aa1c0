//! Binary forms, the right action of GL₂(ℤ), discriminants and
//! irreducibility certificates.
//!
//! A form of degree `n` is `B(x, y) = Σ_{k=1}^{n+1} a_k x^{n+1-k} y^{k-1}`;
//! coefficient vectors are always stored as `(a_1, .., a_{n+1})`.

mod modp;

use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::exactalg::{self as ea, dense, IntMatrix, Polynomial};

pub const MAX_DEGREE: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "FormRepr", into = "FormRepr")]
pub struct BinaryForm {
    coeffs: Vec<BigInt>,
}

#[derive(Serialize, Deserialize)]
struct FormRepr {
    degree: usize,
    #[serde(with = "crate::serde_int::vec")]
    coeffs: Vec<BigInt>,
}

impl TryFrom<FormRepr> for BinaryForm {
    type Error = Error;

    fn try_from(r: FormRepr) -> Result<Self, Error> {
        BinaryForm::from_parts(r.degree, r.coeffs)
    }
}

impl From<BinaryForm> for FormRepr {
    fn from(f: BinaryForm) -> FormRepr {
        FormRepr {
            degree: f.degree(),
            coeffs: f.coeffs,
        }
    }
}

impl BinaryForm {
    /// Degree is `coeffs.len() - 1` and must lie in `2..=64`.
    pub fn new(coeffs: Vec<BigInt>) -> Result<BinaryForm, Error> {
        let n = coeffs.len().saturating_sub(1);
        if !(2..=MAX_DEGREE).contains(&n) {
            return Err(Error::DegreeOutOfRange(n));
        }
        Ok(BinaryForm { coeffs })
    }

    /// Like [`BinaryForm::new`], with the degree stated explicitly and checked.
    pub fn from_parts(degree: usize, coeffs: Vec<BigInt>) -> Result<BinaryForm, Error> {
        if coeffs.len() != degree + 1 {
            return Err(Error::CoefficientCount {
                degree,
                expected: degree + 1,
                found: coeffs.len(),
            });
        }
        BinaryForm::new(coeffs)
    }

    pub fn from_i64(coeffs: &[i64]) -> Result<BinaryForm, Error> {
        BinaryForm::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// `a_k`, 1-based.
    pub fn a(&self, k: usize) -> &BigInt {
        &self.coeffs[k - 1]
    }

    pub fn leading(&self) -> &BigInt {
        &self.coeffs[0]
    }

    pub fn trailing(&self) -> &BigInt {
        self.coeffs.last().unwrap()
    }

    /// Rejects forms with `a_1·a_{n+1} = 0`, which do not define an order.
    pub fn require_nondegenerate(&self) -> Result<(), Error> {
        if self.leading().is_zero() || self.trailing().is_zero() {
            return Err(Error::DegenerateForm(format!(
                "a1*a{} = 0 for {self}",
                self.degree() + 1
            )));
        }
        Ok(())
    }

    pub fn evaluate(&self, x: &BigInt, y: &BigInt) -> BigInt {
        evaluate(&self.coeffs, x, y)
    }

    /// Coefficients as constant polynomials.
    pub fn to_poly(&self) -> Vec<Polynomial> {
        self.coeffs.iter().map(Polynomial::constant).collect()
    }

    pub fn act(&self, m: &UnimodularMatrix) -> BinaryForm {
        BinaryForm {
            coeffs: act(&self.coeffs, &m.to_mat2()),
        }
    }

    pub fn discriminant(&self) -> Result<BigInt, Error> {
        discriminant(self)
    }
}

impl fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl fmt::Debug for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryForm{self}")
    }
}

/// Symbolic coefficients `a1, .., a_{n+1}`.
pub fn symbolic_coeffs(n: usize) -> Vec<Polynomial> {
    Polynomial::vars("a", 1, n + 1)
}

/// Symbolic coefficients named `a, b, c, ..` as in the classical cubic and
/// quartic formulas. Only for `n ≤ 6`, so the names never reach `p`.
pub fn letter_coeffs(n: usize) -> Vec<Polynomial> {
    assert!(n <= 6, "letter names only for degree up to 6");
    ["a", "b", "c", "d", "e", "f", "g"][..=n]
        .iter()
        .map(|&v| Polynomial::var(v))
        .collect()
}

/// `B(x, y)` for a coefficient vector over any scalar ring.
pub fn evaluate<R: ea::Scalar>(coeffs: &[R], x: &R, y: &R) -> R {
    let n = coeffs.len() - 1;
    let mut acc = R::zero();
    for (k, a) in coeffs.iter().enumerate() {
        acc = acc.add_ref(&a.mul_ref(&x.pow((n - k) as u32)).mul_ref(&y.pow(k as u32)));
    }
    acc
}

/// A 2×2 matrix `[[p, q], [r, s]]` over a scalar ring.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat2<R> {
    pub p: R,
    pub q: R,
    pub r: R,
    pub s: R,
}

impl<R: ea::Scalar> Mat2<R> {
    pub fn det(&self) -> R {
        self.p.mul_ref(&self.s).sub_ref(&self.q.mul_ref(&self.r))
    }

    pub fn mul(&self, o: &Mat2<R>) -> Mat2<R> {
        Mat2 {
            p: self.p.mul_ref(&o.p).add_ref(&self.q.mul_ref(&o.r)),
            q: self.p.mul_ref(&o.q).add_ref(&self.q.mul_ref(&o.s)),
            r: self.r.mul_ref(&o.p).add_ref(&self.s.mul_ref(&o.r)),
            s: self.r.mul_ref(&o.q).add_ref(&self.s.mul_ref(&o.s)),
        }
    }
}

impl Mat2<Polynomial> {
    /// `[[p, q], [r, s]]` with all four entries indeterminate.
    pub fn symbolic() -> Mat2<Polynomial> {
        Mat2 {
            p: Polynomial::var("p"),
            q: Polynomial::var("q"),
            r: Polynomial::var("r"),
            s: Polynomial::var("s"),
        }
    }
}

/// The right action `(B∘M)(x, y) = B(px + qy, rx + sy)`.
///
/// Computed by expanding `B(p + q·x, r + s·x)`; the coefficient of `x^{i-1}`
/// is `b_i`, the coefficient of `x^{n+1-i} y^{i-1}` in `B∘M`.
pub fn act<R: ea::Scalar>(coeffs: &[R], m: &Mat2<R>) -> Vec<R> {
    let n = coeffs.len() - 1;
    let x_img = [m.p.clone(), m.q.clone()];
    let y_img = [m.r.clone(), m.s.clone()];
    let mut out = vec![R::zero(); n + 1];
    for (k, a) in coeffs.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let term = dense::mul(&dense::pow(&x_img, n - k), &dense::pow(&y_img, k));
        for (i, c) in term.iter().enumerate() {
            out[i] = out[i].add_ref(&a.mul_ref(c));
        }
    }
    out
}

/// An integer 2×2 matrix of determinant ±1.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "MatRepr", into = "MatRepr")]
pub struct UnimodularMatrix {
    p: BigInt,
    q: BigInt,
    r: BigInt,
    s: BigInt,
}

#[derive(Serialize, Deserialize)]
struct MatRepr {
    #[serde(with = "crate::serde_int")]
    p: BigInt,
    #[serde(with = "crate::serde_int")]
    q: BigInt,
    #[serde(with = "crate::serde_int")]
    r: BigInt,
    #[serde(with = "crate::serde_int")]
    s: BigInt,
}

impl TryFrom<MatRepr> for UnimodularMatrix {
    type Error = Error;

    fn try_from(m: MatRepr) -> Result<Self, Error> {
        UnimodularMatrix::new(m.p, m.q, m.r, m.s)
    }
}

impl From<UnimodularMatrix> for MatRepr {
    fn from(m: UnimodularMatrix) -> MatRepr {
        MatRepr {
            p: m.p,
            q: m.q,
            r: m.r,
            s: m.s,
        }
    }
}

impl UnimodularMatrix {
    pub fn new(p: BigInt, q: BigInt, r: BigInt, s: BigInt) -> Result<UnimodularMatrix, Error> {
        let det = &p * &s - &q * &r;
        if det.abs() != BigInt::one() {
            return Err(Error::NotUnimodular(det));
        }
        Ok(UnimodularMatrix { p, q, r, s })
    }

    pub fn from_i64(p: i64, q: i64, r: i64, s: i64) -> Result<UnimodularMatrix, Error> {
        UnimodularMatrix::new(p.into(), q.into(), r.into(), s.into())
    }

    pub fn identity() -> UnimodularMatrix {
        UnimodularMatrix::from_i64(1, 0, 0, 1).unwrap()
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }
    pub fn q(&self) -> &BigInt {
        &self.q
    }
    pub fn r(&self) -> &BigInt {
        &self.r
    }
    pub fn s(&self) -> &BigInt {
        &self.s
    }

    /// `m = ps - qr`, either 1 or -1.
    pub fn det(&self) -> i32 {
        if (&self.p * &self.s - &self.q * &self.r).is_positive() {
            1
        } else {
            -1
        }
    }

    pub fn mul(&self, o: &UnimodularMatrix) -> UnimodularMatrix {
        let m = self.to_mat2().mul(&o.to_mat2());
        UnimodularMatrix {
            p: m.p,
            q: m.q,
            r: m.r,
            s: m.s,
        }
    }

    pub fn inverse(&self) -> UnimodularMatrix {
        let m = BigInt::from(self.det());
        UnimodularMatrix {
            p: &self.s * &m,
            q: -&self.q * &m,
            r: -&self.r * &m,
            s: &self.p * &m,
        }
    }

    pub fn to_mat2(&self) -> Mat2<BigInt> {
        Mat2 {
            p: self.p.clone(),
            q: self.q.clone(),
            r: self.r.clone(),
            s: self.s.clone(),
        }
    }

    pub fn to_poly(&self) -> Mat2<Polynomial> {
        Mat2 {
            p: Polynomial::constant(&self.p),
            q: Polynomial::constant(&self.q),
            r: Polynomial::constant(&self.r),
            s: Polynomial::constant(&self.s),
        }
    }
}

impl fmt::Display for UnimodularMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.p, self.q, self.r, self.s)
    }
}

impl fmt::Debug for UnimodularMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UnimodularMatrix{self}")
    }
}

/// Sylvester matrix of two coefficient vectors given highest degree first.
pub fn sylvester_matrix(f: &[BigInt], g: &[BigInt]) -> IntMatrix {
    let (m, n) = (f.len() - 1, g.len() - 1);
    let size = m + n;
    IntMatrix::from_fn(size, size, |i, j| {
        let (row, shift) = if i < n { (f, i) } else { (g, i - n) };
        j.checked_sub(shift)
            .and_then(|k| row.get(k))
            .cloned()
            .unwrap_or_default()
    })
}

/// Discriminant of `f(x) = B(x, 1)`: `(-1)^{n(n-1)/2} Res(f, f') / a_1`.
pub fn discriminant(form: &BinaryForm) -> Result<BigInt, Error> {
    let n = form.degree();
    if form.leading().is_zero() {
        return Err(Error::ZeroLeadingCoefficient);
    }
    let f = form.coeffs();
    let df: Vec<BigInt> = f[..n]
        .iter()
        .enumerate()
        .map(|(k, a)| a * BigInt::from(n - k))
        .collect();
    let res = sylvester_matrix(f, &df).det_bareiss()?;
    let (d, rem) = res.div_rem(form.leading());
    debug_assert!(rem.is_zero(), "the resultant is divisible by the leading coefficient");
    Ok(if (n * (n - 1) / 2) % 2 == 1 { -d } else { d })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Irreducibility {
    /// `f mod witness` is irreducible of full degree, hence so is `f`.
    Irreducible { witness: u64 },
    /// `f` has this rational root.
    RationalRoot {
        #[serde(serialize_with = "ser_rational")]
        root: BigRational,
    },
    /// Neither a root nor a witness was found within budget.
    Unknown,
}

fn ser_rational<S: serde::Serializer>(v: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// Integers with absolute value above this are not factored when searching
/// for rational roots.
const ROOT_SEARCH_LIMIT: u64 = 1 << 40;
/// At most this many candidate roots are tested.
const ROOT_CANDIDATE_LIMIT: usize = 1 << 20;

/// Looks for a rational root, then for a prime among the first `budget`
/// primes modulo which `B(x, 1)` stays irreducible of degree `n`.
///
/// Forms with `a_{n+1} = 0` are divisible by `y` and report the root 0.
pub fn irreducibility_certificate(form: &BinaryForm, budget: usize) -> Result<Irreducibility, Error> {
    if form.leading().is_zero() {
        return Err(Error::ZeroLeadingCoefficient);
    }
    if form.trailing().is_zero() {
        return Ok(Irreducibility::RationalRoot {
            root: BigRational::zero(),
        });
    }
    if let Some(root) = rational_root(form) {
        return Ok(Irreducibility::RationalRoot { root });
    }
    for p in modp::primes().take(budget) {
        let pb = BigInt::from(p);
        if form.leading().mod_floor(&pb).is_zero() {
            continue;
        }
        let reduced: Vec<u64> = form
            .coeffs()
            .iter()
            .rev()
            .map(|c| c.mod_floor(&pb).to_u64().unwrap())
            .collect();
        if modp::is_irreducible(&reduced, p) {
            return Ok(Irreducibility::Irreducible { witness: p });
        }
    }
    Ok(Irreducibility::Unknown)
}

fn divisors(v: &BigInt) -> Option<Vec<u64>> {
    let v = v.abs().to_u64().filter(|&v| v <= ROOT_SEARCH_LIMIT)?;
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= v {
        if v % d == 0 {
            small.push(d);
            if d * d != v {
                large.push(v / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Some(small)
}

fn rational_root(form: &BinaryForm) -> Option<BigRational> {
    let nums = divisors(form.trailing())?;
    let dens = divisors(form.leading())?;
    if nums.len().saturating_mul(dens.len()) > ROOT_CANDIDATE_LIMIT {
        return None;
    }
    for &u in &nums {
        for &v in &dens {
            if u.gcd(&v) != 1 {
                continue;
            }
            for sign in [Sign::Plus, Sign::Minus] {
                let x = BigInt::from_biguint(sign, u.into());
                let y = BigInt::from(v);
                if form.evaluate(&x, &y).is_zero() {
                    return Some(BigRational::new(x, y));
                }
            }
        }
    }
    None
}
