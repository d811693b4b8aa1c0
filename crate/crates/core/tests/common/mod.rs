//! Independent oracles and hand-transcribed fixtures shared by the
//! integration tests and the acceptance runner.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use ringforge::{IntMatrix, Matrix, PolyMatrix, Polynomial};

pub mod fixtures;

pub fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

pub fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn poly(s: &str) -> Polynomial {
    s.parse().unwrap_or_else(|e| panic!("bad fixture {s:?}: {e}"))
}

/// Reads a matrix written the way it is typeset: cells split by `&`, rows by
/// `\\`, `a_k` for indexed coefficients, `\left`/`\right` around parentheses.
pub fn typeset(src: &str) -> PolyMatrix {
    let cleaned = src.replace("\\left", "").replace("\\right", "").replace("a_", "a");
    let rows: Vec<Vec<Polynomial>> = cleaned
        .split("\\\\")
        .filter(|r| !r.trim().is_empty())
        .map(|r| r.split('&').map(|c| poly(c.trim())).collect())
        .collect();
    Matrix::from_rows(rows).unwrap()
}

/// Column-wise concatenation.
pub fn hcat(blocks: &[PolyMatrix]) -> PolyMatrix {
    let rows = blocks[0].rows();
    let all: Vec<Vec<Polynomial>> = (0..rows)
        .map(|i| blocks.iter().flat_map(|b| b.row(i).to_vec()).collect())
        .collect();
    Matrix::from_rows(all).unwrap()
}

pub fn rat(v: &BigInt) -> BigRational {
    BigRational::from_integer(v.clone())
}

/// Schoolbook product of integer matrices given as rows.
pub fn schoolbook(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let inner = b.len();
    let cols = if inner == 0 { 0 } else { b[0].len() };
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut acc = BigInt::zero();
                    for k in 0..inner {
                        acc += &row[k] * &b[k][j];
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// Determinant by Gaussian elimination over ℚ.
pub fn rational_det(m: &[Vec<BigRational>]) -> BigRational {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = BigRational::one();
    for c in 0..n {
        let Some(piv) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return BigRational::zero();
        };
        if piv != c {
            a.swap(piv, c);
            det = -det;
        }
        det *= &a[c][c];
        for r in c + 1..n {
            let f = &a[r][c] / &a[c][c];
            if f.is_zero() {
                continue;
            }
            for k in c..n {
                let d = &f * &a[c][k];
                a[r][k] -= d;
            }
        }
    }
    det
}

pub fn int_det(m: &IntMatrix) -> BigInt {
    let rows: Vec<Vec<BigRational>> = m.to_rows().iter().map(|r| r.iter().map(rat).collect()).collect();
    let d = rational_det(&rows);
    assert!(d.is_integer());
    d.to_integer()
}

/// Arithmetic in `ℚ[x]/(f)` for `f = Σ a_k x^{n+1-k}`, with elements given in
/// the basis `φ_0 = 1`, `φ_j = Σ_{k≤j} a_k ζ^{j+1-k}`. Serves as an oracle
/// for the arithmetic-matrix code: it never forms `N^(α)`.
pub struct PowerBasis {
    n: usize,
    // monic f, low degree first, without the leading 1
    monic: Vec<BigRational>,
    // column j: φ_j in powers of ζ
    change: Vec<Vec<BigRational>>,
}

impl PowerBasis {
    pub fn new(a: &[BigInt]) -> PowerBasis {
        let n = a.len() - 1;
        assert!(!a[0].is_zero());
        let lead = rat(&a[0]);
        let monic = (0..n).map(|i| rat(&a[n - i]) / &lead).collect();
        let mut change = vec![vec![BigRational::zero(); n]; n];
        change[0][0] = BigRational::one();
        for j in 1..n {
            for k in 1..=j {
                change[j][j + 1 - k] = rat(&a[k - 1]);
            }
        }
        PowerBasis { n, monic, change }
    }

    pub fn to_power(&self, x: &[BigInt]) -> Vec<BigRational> {
        let mut v = vec![BigRational::zero(); self.n];
        for (j, xj) in x.iter().enumerate() {
            for i in 0..self.n {
                v[i] += &self.change[j][i] * rat(xj);
            }
        }
        v
    }

    /// Back-substitution through the upper-triangular change of basis.
    pub fn from_power(&self, v: &[BigRational]) -> Vec<BigRational> {
        let n = self.n;
        let mut x = vec![BigRational::zero(); n];
        for i in (0..n).rev() {
            let mut acc = v[i].clone();
            for j in i + 1..n {
                acc -= &self.change[j][i] * &x[j];
            }
            x[i] = acc / &self.change[i][i];
        }
        x
    }

    pub fn mul_power(&self, u: &[BigRational], v: &[BigRational]) -> Vec<BigRational> {
        let n = self.n;
        let mut prod = vec![BigRational::zero(); 2 * n - 1];
        for (i, ui) in u.iter().enumerate() {
            for (j, vj) in v.iter().enumerate() {
                prod[i + j] += ui * vj;
            }
        }
        for d in (n..2 * n - 1).rev() {
            let c = std::mem::replace(&mut prod[d], BigRational::zero());
            if c.is_zero() {
                continue;
            }
            for i in 0..n {
                prod[d - n + i] -= &c * &self.monic[i];
            }
        }
        prod.truncate(n);
        prod
    }

    /// Product in φ-coordinates; panics if the result is not integral.
    pub fn mul(&self, x: &[BigInt], y: &[BigInt]) -> Vec<BigInt> {
        let p = self.mul_power(&self.to_power(x), &self.to_power(y));
        self.from_power(&p)
            .into_iter()
            .map(|c| {
                assert!(c.is_integer(), "product left the order: {c}");
                c.to_integer()
            })
            .collect()
    }

    /// Matrix of multiplication by `α` on `1, ζ, .., ζ^{n-1}`.
    pub fn regular_rep(&self, x: &[BigInt]) -> Vec<Vec<BigRational>> {
        let n = self.n;
        let alpha = self.to_power(x);
        let cols: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                let mut e = vec![BigRational::zero(); n];
                e[i] = BigRational::one();
                self.mul_power(&alpha, &e)
            })
            .collect();
        (0..n).map(|r| (0..n).map(|c| cols[c][r].clone()).collect()).collect()
    }

    pub fn trace(&self, x: &[BigInt]) -> BigRational {
        let m = self.regular_rep(x);
        (0..self.n).map(|i| m[i][i].clone()).sum()
    }

    pub fn norm(&self, x: &[BigInt]) -> BigRational {
        rational_det(&self.regular_rep(x))
    }
}

/// Polynomials over ℚ, low degree first.
fn trim(p: &mut Vec<BigRational>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn rem(f: &[BigRational], g: &[BigRational]) -> Vec<BigRational> {
    let mut r = f.to_vec();
    trim(&mut r);
    let dg = g.len() - 1;
    while r.len() > dg && !r.is_empty() {
        let shift = r.len() - 1 - dg;
        let c = r.last().unwrap() / g.last().unwrap();
        for (i, gi) in g.iter().enumerate() {
            r[shift + i] -= &c * gi;
        }
        trim(&mut r);
    }
    r
}

/// Resultant by the Euclidean algorithm over ℚ.
pub fn resultant(f: &[BigRational], g: &[BigRational]) -> BigRational {
    let (mut f, mut g) = (f.to_vec(), g.to_vec());
    trim(&mut f);
    trim(&mut g);
    let mut acc = BigRational::one();
    loop {
        if f.is_empty() || g.is_empty() {
            return BigRational::zero();
        }
        let (df, dg) = (f.len() - 1, g.len() - 1);
        if dg == 0 {
            return acc * num_traits::pow(g[0].clone(), df);
        }
        let r = rem(&f, &g);
        if r.is_empty() {
            return BigRational::zero();
        }
        let dr = r.len() - 1;
        // Res(f, g) = (-1)^{df·dg} lc(g)^{df-dr} Res(g, r)
        if (df * dg) % 2 == 1 {
            acc = -acc;
        }
        acc *= num_traits::pow(g[dg].clone(), df - dr);
        f = g;
        g = r;
    }
}

/// `(-1)^{n(n-1)/2} Res(f, f') / a_1` with `f = B(x, 1)`.
pub fn discriminant_oracle(a: &[BigInt]) -> BigInt {
    let n = a.len() - 1;
    let f: Vec<BigRational> = a.iter().rev().map(rat).collect();
    let df: Vec<BigRational> = (1..=n).map(|i| &f[i] * BigRational::from_integer(BigInt::from(i))).collect();
    let mut d = resultant(&f, &df) / rat(&a[0]);
    if (n * (n - 1) / 2) % 2 == 1 {
        d = -d;
    }
    assert!(d.is_integer());
    d.to_integer()
}

/// Closed-form cubic discriminant.
pub fn cubic_discriminant(a: &[BigInt]) -> BigInt {
    let (a, b, c, d) = (&a[0], &a[1], &a[2], &a[3]);
    b * b * c * c - big(4) * a * c * c * c - big(4) * b * b * b * d - big(27) * a * a * d * d + big(18) * a * b * c * d
}

pub fn eval_form(a: &[BigInt], x: &BigInt, y: &BigInt) -> BigInt {
    let n = a.len() - 1;
    a.iter()
        .enumerate()
        .map(|(k, c)| c * num_traits::pow(x.clone(), n - k) * num_traits::pow(y.clone(), k))
        .sum()
}

/// `Σ b_i t^{i-1} = B(p + qt, r + st)` at `n + 2` integer points.
pub fn substitution_agrees(a: &[BigInt], m: [&BigInt; 4], b: &[BigInt]) -> bool {
    let [p, q, r, s] = m;
    (0..a.len() as i64 + 1).map(big).all(|t| {
        let lhs: BigInt = b.iter().enumerate().map(|(i, c)| c * num_traits::pow(t.clone(), i)).sum();
        lhs == eval_form(a, &(p + q * &t), &(r + s * &t))
    })
}

pub fn random_coeffs(rng: &mut impl Rng, n: usize, bound: i64) -> Vec<BigInt> {
    let mut a: Vec<BigInt> = (0..=n).map(|_| big(rng.gen_range(-bound..=bound))).collect();
    for i in [0, n] {
        while a[i].is_zero() {
            a[i] = big(rng.gen_range(-bound..=bound));
        }
    }
    a
}

pub fn random_vec(rng: &mut impl Rng, n: usize, bound: i64) -> Vec<BigInt> {
    (0..n).map(|_| big(rng.gen_range(-bound..=bound))).collect()
}

/// A random element of GL₂(ℤ) as `(p, q, r, s)`, from a product of elementary
/// moves, optionally with determinant −1.
pub fn random_unimodular(rng: &mut impl Rng, steps: usize, negative: bool) -> [i64; 4] {
    let (mut p, mut q, mut r, mut s) = (1i64, 0i64, 0i64, 1i64);
    for _ in 0..steps {
        let k = rng.gen_range(-3..=3);
        if rng.gen_bool(0.5) {
            p += k * r;
            q += k * s;
        } else {
            r += k * p;
            s += k * q;
        }
    }
    if negative {
        q = -q;
        s = -s;
    }
    [p, q, r, s]
}

pub fn abs_max(v: &[BigInt]) -> BigInt {
    v.iter().map(|x| x.abs()).max().unwrap_or_default()
}
