use std::fmt;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use super::{Polynomial, Scalar};
use crate::error::Error;

/// Dense row-major matrix over a [`Scalar`] ring.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<R> {
    rows: usize,
    cols: usize,
    entries: Vec<R>,
}

pub type PolyMatrix = Matrix<Polynomial>;
pub type IntMatrix = Matrix<BigInt>;

impl<R: Scalar> Matrix<R> {
    pub fn new(rows: usize, cols: usize, entries: Vec<R>) -> Result<Self, Error> {
        if entries.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(Matrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn from_rows(rows: Vec<Vec<R>>) -> Result<Self, Error> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Matrix::new(r, c, rows.into_iter().flatten().collect())
    }

    /// Entry `(i, j)` is `f(i, j)`, zero-based.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> R) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Matrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::from_fn(rows, cols, |_, _| R::zero())
    }

    pub fn identity(n: usize) -> Self {
        Matrix::scalar(n, &R::one())
    }

    pub fn scalar(n: usize, s: &R) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { s.clone() } else { R::zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: R) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[R] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[R] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<R> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<R>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn map<S: Scalar>(&self, f: impl Fn(&R) -> S) -> Matrix<S> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn try_map<S: Scalar, E>(&self, f: impl Fn(&R) -> Result<S, E>) -> Result<Matrix<S>, E> {
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect::<Result<_, _>>()?,
        })
    }

    /// Rows `r0..r1`, columns `c0..c1`.
    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Self {
        Matrix::from_fn(r1 - r0, c1 - c0, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    fn check_same_shape(&self, other: &Self, op: &'static str) -> Result<(), Error> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                op,
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, Error> {
        self.check_same_shape(other, "add")?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.add_ref(b))
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, Error> {
        self.check_same_shape(other, "sub")?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.sub_ref(b))
                .collect(),
        })
    }

    pub fn scale(&self, k: &R) -> Self {
        self.map(|e| e.mul_ref(k))
    }

    /// Exact product. Entries of heavy scalar types are computed in parallel;
    /// each entry is still a sequential sum, so results do not depend on the
    /// thread count.
    pub fn mul(&self, other: &Self) -> Result<Self, Error> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                op: "mul",
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        let entry = |idx: usize| {
            let (i, j) = (idx / other.cols, idx % other.cols);
            R::dot((0..self.cols).map(|k| (self.get(i, k), other.get(k, j))))
        };
        let count = self.rows * other.cols;
        let entries = if R::HEAVY && count > 1 {
            (0..count).into_par_iter().map(entry).collect()
        } else {
            (0..count).map(entry).collect()
        };
        Ok(Matrix {
            rows: self.rows,
            cols: other.cols,
            entries,
        })
    }

    pub fn mul_vec(&self, v: &[R]) -> Result<Vec<R>, Error> {
        if self.cols != v.len() {
            return Err(Error::DimensionMismatch {
                op: "mul_vec",
                left: (self.rows, self.cols),
                right: (v.len(), 1),
            });
        }
        Ok((0..self.rows)
            .map(|i| R::dot(self.row(i).iter().zip(v)))
            .collect())
    }

    /// `self^e` by repeated squaring.
    pub fn pow(&self, mut e: u32) -> Result<Self, Error> {
        self.require_square()?;
        let mut base = self.clone();
        let mut out: Option<Self> = None;
        while e > 0 {
            if e & 1 == 1 {
                out = Some(match out {
                    None => base.clone(),
                    Some(acc) => acc.mul(&base)?,
                });
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(out.unwrap_or_else(|| Matrix::identity(self.rows)))
    }

    pub fn trace(&self) -> Result<R, Error> {
        self.require_square()?;
        Ok((0..self.rows).fold(R::zero(), |acc, i| acc.add_ref(self.get(i, i))))
    }

    fn require_square(&self) -> Result<(), Error> {
        if !self.is_square() {
            return Err(Error::NotSquare(self.rows, self.cols));
        }
        Ok(())
    }

    /// Determinant: cofactor expansion up to 4×4, fraction-free elimination above.
    pub fn det(&self) -> Result<R, Error> {
        self.require_square()?;
        if self.rows <= 4 {
            self.det_cofactor()
        } else {
            self.det_bareiss()
        }
    }

    /// Bareiss fraction-free elimination. Every division is exact; a remainder
    /// would mean a bug in the elimination, so it panics.
    pub fn det_bareiss(&self) -> Result<R, Error> {
        self.require_square()?;
        let n = self.rows;
        if n == 0 {
            return Ok(R::one());
        }
        let mut m = self.to_rows();
        let mut negate = false;
        let mut prev = R::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                let Some(swap) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                    return Ok(R::zero());
                };
                m.swap(k, swap);
                negate = !negate;
            }
            let pivot = m[k][k].clone();
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = m[i][j].mul_ref(&pivot).sub_ref(&m[i][k].mul_ref(&m[k][j]));
                    m[i][j] = num
                        .div_exact(&prev)
                        .expect("Bareiss step divides exactly by the previous pivot");
                }
                m[i][k] = R::zero();
            }
            prev = pivot;
        }
        let d = m[n - 1][n - 1].clone();
        Ok(if negate { d.neg_ref() } else { d })
    }

    /// Laplace expansion along the first row. Exponential; small matrices only.
    pub fn det_cofactor(&self) -> Result<R, Error> {
        self.require_square()?;
        let cols: Vec<usize> = (0..self.cols).collect();
        Ok(self.cofactor_rec(0, &cols))
    }

    fn cofactor_rec(&self, row: usize, cols: &[usize]) -> R {
        match cols.len() {
            0 => R::one(),
            1 => self.get(row, cols[0]).clone(),
            2 => self
                .get(row, cols[0])
                .mul_ref(self.get(row + 1, cols[1]))
                .sub_ref(&self.get(row, cols[1]).mul_ref(self.get(row + 1, cols[0]))),
            _ => {
                let mut acc = R::zero();
                for (idx, &c) in cols.iter().enumerate() {
                    let e = self.get(row, c);
                    if e.is_zero() {
                        continue;
                    }
                    let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
                    let term = e.mul_ref(&self.cofactor_rec(row + 1, &rest));
                    acc = if idx % 2 == 0 {
                        acc.add_ref(&term)
                    } else {
                        acc.sub_ref(&term)
                    };
                }
                acc
            }
        }
    }

    /// Determinant of the minor with row `i` and column `j` removed.
    pub fn minor(&self, i: usize, j: usize) -> Result<R, Error> {
        self.require_square()?;
        let m = Matrix::from_fn(self.rows - 1, self.cols - 1, |a, b| {
            let a = if a < i { a } else { a + 1 };
            let b = if b < j { b } else { b + 1 };
            self.get(a, b).clone()
        });
        m.det()
    }

    pub fn is_upper_triangular(&self) -> bool {
        self.first_below_diagonal().is_none()
    }

    fn first_below_diagonal(&self) -> Option<(usize, usize)> {
        (0..self.rows)
            .flat_map(|i| (0..i.min(self.cols)).map(move |j| (i, j)))
            .find(|&(i, j)| !self.get(i, j).is_zero())
    }

    /// `scale · self⁻¹` for an upper-triangular matrix, by back-substitution
    /// with every division checked for exactness.
    ///
    /// The result `S` satisfies `self · S = scale · I`.
    pub fn triangular_scaled_inverse(&self, scale: &R) -> Result<Self, Error> {
        self.require_square()?;
        if let Some((row, col)) = self.first_below_diagonal() {
            return Err(Error::NotTriangular {
                row: row + 1,
                col: col + 1,
            });
        }
        let n = self.rows;
        let mut s = Matrix::zeros(n, n);
        let inexact = |row: usize, col: usize, num: &R, den: &R| Error::InexactDivision {
            row: row + 1,
            col: col + 1,
            detail: format!("({num}) / ({den})"),
        };
        for j in 0..n {
            let d = self.get(j, j);
            let sjj = scale.div_exact(d).ok_or_else(|| inexact(j, j, scale, d))?;
            s.set(j, j, sjj);
            for i in (0..j).rev() {
                let sum = R::dot((i + 1..=j).map(|k| (self.get(i, k), s.get(k, j))));
                let num = sum.neg_ref();
                let d = self.get(i, i);
                let sij = num.div_exact(d).ok_or_else(|| inexact(i, j, &num, d))?;
                s.set(i, j, sij);
            }
        }
        Ok(s)
    }

    /// Exact division of every entry by `d`.
    pub fn div_exact(&self, d: &R) -> Result<Self, Error> {
        let mut out = Vec::with_capacity(self.entries.len());
        for (idx, e) in self.entries.iter().enumerate() {
            let q = e.div_exact(d).ok_or_else(|| Error::InexactDivision {
                row: idx / self.cols + 1,
                col: idx % self.cols + 1,
                detail: format!("({e}) / ({d})"),
            })?;
            out.push(q);
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: out,
        })
    }
}

impl PolyMatrix {
    /// Parses a matrix given as rows of polynomial expressions.
    pub fn parse_rows(rows: &[&[&str]]) -> Result<PolyMatrix, Error> {
        let parsed = rows
            .iter()
            .map(|row| row.iter().map(|s| s.parse()).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        Matrix::from_rows(parsed)
    }

    pub fn total_terms(&self) -> usize {
        self.entries.iter().map(Polynomial::num_terms).sum()
    }

    /// One line per entry, `i,j: poly` (1-based), in row-major order.
    pub fn to_canonical_string(&self) -> String {
        let mut out = String::new();
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.push_str(&format!("{},{}: {}\n", i + 1, j + 1, self.get(i, j)));
            }
        }
        out
    }

    pub fn evaluate<F>(&self, value: F) -> Result<IntMatrix, Error>
    where
        F: Fn(&super::Variable) -> Option<BigInt>,
    {
        self.try_map(|e| e.evaluate(&value))
    }
}

impl IntMatrix {
    pub fn from_i64_rows(rows: &[&[i64]]) -> IntMatrix {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
        .expect("rectangular")
    }

    pub fn to_poly(&self) -> PolyMatrix {
        self.map(Polynomial::constant)
    }
}

impl<R: Scalar> fmt::Display for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|e| e.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl<R: fmt::Debug> fmt::Debug for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.rows, self.cols)?;
        for row in self.entries.chunks(self.cols.max(1)) {
            writeln!(f, "{row:?}")?;
        }
        Ok(())
    }
}

/// Serialized as an array of rows.
impl<R: Scalar + Serialize> Serialize for Matrix<R> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.rows))?;
        for i in 0..self.rows {
            seq.serialize_element(self.row(i))?;
        }
        seq.end()
    }
}
