//! Arithmetic matrices of the order attached to a binary form.
//!
//! For `B = (a_1, .., a_{n+1})` with root `ζ` of `B(x, 1)`, the order has basis
//! `{1, φ_1, .., φ_{n-1}}` with `φ_j = Σ_{k=1}^{j} a_k ζ^{j+1-k}`. The matrix
//! `N^(α)` represents multiplication by `α = Σ x_j φ_j` (with `φ_0 = 1`) in
//! this basis; its first column is the coordinate vector of `α`.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::Error;
use crate::exactalg::{self as ea, IntMatrix, Matrix, Polynomial};
use crate::forms::BinaryForm;
use crate::serde_int::Int;

/// `N^(α)` for form coefficients `a = (a_1, .., a_{n+1})` and coordinates
/// `x = (x_0, .., x_{n-1})`. Works over any scalar ring, so passing
/// indeterminates yields the general matrix.
pub fn arithmetic_matrix<R: ea::Scalar>(a: &[R], x: &[R]) -> Matrix<R> {
    let n = x.len();
    assert_eq!(a.len(), n + 1, "form of degree {n} expected");
    // 1-based accessors; anything out of range is zero
    let ak = |k: usize| (1..=n + 1).contains(&k).then(|| &a[k - 1]);
    let xk = |k: isize| (0..n as isize).contains(&k).then(|| &x[k as usize]);
    let sum = |lo: usize, hi: usize, shift: isize| {
        R::dot((lo..=hi).filter_map(|k| Some((ak(k)?, xk(k as isize + shift)?))))
    };
    Matrix::from_fn(n, n, |i0, j0| {
        let (i, j) = (i0 + 1, j0 + 1);
        let (ii, jj, nn) = (i as isize, j as isize, n as isize);
        if j == 1 {
            x[i - 1].clone()
        } else if i == 1 {
            sum(1, j - 1, nn - jj).mul_ref(&a[n]).neg_ref()
        } else if i > j {
            sum(1, j - 1, ii - jj - 1)
        } else {
            let m = (n - i + j).min(n + 1);
            let s = sum(j, m, ii - jj - 1);
            if i == j {
                x[0].sub_ref(&s)
            } else {
                s.neg_ref()
            }
        }
    })
}

/// Coordinates `x0, .., x_{n-1}` as indeterminates.
pub fn symbolic_coords(n: usize) -> Vec<Polynomial> {
    Polynomial::vars("x", 0, n)
}

/// The order of a nondegenerate binary form, with its fixed basis.
#[derive(Clone, PartialEq, Eq)]
pub struct OrderContext {
    form: BinaryForm,
}

impl OrderContext {
    pub fn new(form: BinaryForm) -> Result<Arc<OrderContext>, Error> {
        form.require_nondegenerate()?;
        Ok(Arc::new(OrderContext { form }))
    }

    pub fn form(&self) -> &BinaryForm {
        &self.form
    }

    /// Rank of the order, the degree of the form.
    pub fn n(&self) -> usize {
        self.form.degree()
    }

    pub fn arithmetic_matrix(&self, coords: &[BigInt]) -> Result<IntMatrix, Error> {
        self.check_len(coords.len())?;
        Ok(arithmetic_matrix(self.form.coeffs(), coords))
    }

    /// `N^(α)` with symbolic coordinates `x0, .., x_{n-1}`.
    pub fn symbolic_matrix(&self) -> Matrix<Polynomial> {
        arithmetic_matrix(&self.form.to_poly(), &symbolic_coords(self.n()))
    }

    fn check_len(&self, len: usize) -> Result<(), Error> {
        if len != self.n() {
            return Err(Error::CoordinateCount {
                expected: self.n(),
                found: len,
            });
        }
        Ok(())
    }

    pub fn element(self: &Arc<Self>, coords: Vec<BigInt>) -> Result<RingElement, Error> {
        RingElement::new(self.clone(), coords)
    }

    pub fn one(self: &Arc<Self>) -> RingElement {
        self.basis(0)
    }

    /// The basis element `φ_j` (`φ_0 = 1`).
    pub fn basis(self: &Arc<Self>, j: usize) -> RingElement {
        let mut coords = vec![BigInt::zero(); self.n()];
        coords[j] = 1.into();
        RingElement {
            ctx: self.clone(),
            coords,
        }
    }

    pub fn multiplication_table(&self) -> StructureConstants<BigInt> {
        multiplication_table(self.form.coeffs())
    }
}

impl fmt::Debug for OrderContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OrderContext{}", self.form)
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct RingElement {
    ctx: Arc<OrderContext>,
    coords: Vec<BigInt>,
}

impl RingElement {
    pub fn new(ctx: Arc<OrderContext>, coords: Vec<BigInt>) -> Result<RingElement, Error> {
        ctx.check_len(coords.len())?;
        Ok(RingElement { ctx, coords })
    }

    pub fn ctx(&self) -> &Arc<OrderContext> {
        &self.ctx
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn matrix(&self) -> IntMatrix {
        arithmetic_matrix(self.ctx.form.coeffs(), &self.coords)
    }

    fn same_ctx(&self, other: &RingElement) -> Result<(), Error> {
        if Arc::ptr_eq(&self.ctx, &other.ctx) || self.ctx == other.ctx {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }
}

impl fmt::Debug for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "RingElement({})", parts.join(", "))
    }
}

/// Serialized as `{"coords": [..]}`; the order is supplied separately.
impl Serialize for RingElement {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("RingElement", 1)?;
        st.serialize_field("coords", &self.coords.iter().cloned().map(Int).collect::<Vec<_>>())?;
        st.end()
    }
}

/// The coordinate payload of a serialized [`RingElement`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ElementCoords {
    #[serde(with = "crate::serde_int::vec")]
    pub coords: Vec<BigInt>,
}

pub fn element_add(a: &RingElement, b: &RingElement) -> Result<RingElement, Error> {
    a.same_ctx(b)?;
    Ok(RingElement {
        ctx: a.ctx.clone(),
        coords: a.coords.iter().zip(&b.coords).map(|(x, y)| x + y).collect(),
    })
}

/// Coordinates of `αβ`: `N^(α)` applied to the coordinate vector of `β`, which
/// is the first column of `N^(α)N^(β)`.
pub fn element_mul(a: &RingElement, b: &RingElement) -> Result<RingElement, Error> {
    a.same_ctx(b)?;
    Ok(RingElement {
        ctx: a.ctx.clone(),
        coords: a.matrix().mul_vec(&b.coords)?,
    })
}

pub fn trace(a: &RingElement) -> BigInt {
    a.matrix().trace().expect("square")
}

pub fn norm(a: &RingElement) -> BigInt {
    a.matrix().det().expect("square")
}

/// `1/α` as an integer vector over a positive denominator, in lowest terms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementInverse {
    #[serde(with = "crate::serde_int::vec")]
    pub coords: Vec<BigInt>,
    #[serde(with = "crate::serde_int")]
    pub denom: BigInt,
}

/// First column of `adj(N^(α)) / det N^(α)`.
pub fn element_inverse(a: &RingElement) -> Result<ElementInverse, Error> {
    let m = a.matrix();
    let det = m.det()?;
    if det.is_zero() {
        return Err(Error::ZeroNorm);
    }
    let mut coords = (0..m.rows())
        .map(|i| {
            let minor = m.minor(0, i)?;
            Ok(if i % 2 == 0 { minor } else { -minor })
        })
        .collect::<Result<Vec<BigInt>, Error>>()?;
    let mut denom = det;
    let g = coords.iter().fold(denom.clone(), |g, c| g.gcd(c));
    for c in &mut coords {
        *c /= &g;
    }
    denom /= &g;
    if denom.is_negative() {
        denom = -denom;
        for c in &mut coords {
            *c = -&*c;
        }
    }
    Ok(ElementInverse { coords, denom })
}

/// Multiplication table of a rank-`n` ring with basis `{1, ω_1, .., ω_{n-1}}`:
/// the coordinates of every product `ω_i ω_j`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StructureConstants<R> {
    n: usize,
    // full symmetric (n-1)×(n-1) grid, row-major, of length-n vectors
    table: Vec<Vec<R>>,
}

impl<R: ea::Scalar> StructureConstants<R> {
    /// Builds a table from the products `ω_i ω_j`, given for `1 ≤ i ≤ j ≤ n-1`
    /// in row order `(1,1), (1,2), .., (1,n-1), (2,2), ..`.
    pub fn from_upper(n: usize, products: Vec<Vec<R>>) -> Result<Self, Error> {
        let k = n.saturating_sub(1);
        if n < 2 || products.len() != k * (k + 1) / 2 {
            return Err(Error::Table(format!(
                "rank {n} needs {} products, got {}",
                k * (k + 1) / 2,
                products.len()
            )));
        }
        if let Some(bad) = products.iter().find(|v| v.len() != n) {
            return Err(Error::Table(format!("product vector of length {}", bad.len())));
        }
        let mut table = vec![Vec::new(); k * k];
        let mut it = products.into_iter();
        for i in 0..k {
            for j in i..k {
                let v = it.next().unwrap();
                table[j * k + i] = v.clone();
                table[i * k + j] = v;
            }
        }
        Ok(StructureConstants { n, table })
    }

    /// Builds a table from the full grid, which must be symmetric.
    pub fn from_grid(grid: Vec<Vec<Vec<R>>>) -> Result<Self, Error> {
        let k = grid.len();
        let n = k + 1;
        for (i, row) in grid.iter().enumerate() {
            if row.len() != k {
                return Err(Error::Table(format!("row {} has {} entries, expected {k}", i + 1, row.len())));
            }
            for (j, v) in row.iter().enumerate() {
                if v.len() != n {
                    return Err(Error::Table(format!("product vector of length {}", v.len())));
                }
                if grid[j][i] != *v {
                    return Err(Error::Table(format!("not symmetric at ({}, {})", i + 1, j + 1)));
                }
            }
        }
        Ok(StructureConstants {
            n,
            table: grid.into_iter().flatten().collect(),
        })
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    /// Coordinates of `ω_i ω_j`, `1 ≤ i, j ≤ n-1`.
    pub fn get(&self, i: usize, j: usize) -> &[R] {
        &self.table[(i - 1) * (self.n - 1) + (j - 1)]
    }

    pub fn grid(&self) -> Vec<Vec<Vec<R>>> {
        let k = self.n - 1;
        (1..=k).map(|i| (1..=k).map(|j| self.get(i, j).to_vec()).collect()).collect()
    }

    /// Product of two coordinate vectors through the table.
    pub fn multiply(&self, x: &[R], y: &[R]) -> Vec<R> {
        let n = self.n;
        let mut out = vec![R::zero(); n];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = xi.mul_ref(yj);
                if i == 0 || j == 0 {
                    let k = i.max(j);
                    out[k] = out[k].add_ref(&c);
                } else {
                    for (k, w) in self.get(i, j).iter().enumerate() {
                        out[k] = out[k].add_ref(&c.mul_ref(w));
                    }
                }
            }
        }
        out
    }

    fn unit(&self, i: usize) -> Vec<R> {
        (0..self.n).map(|k| if k == i { R::one() } else { R::zero() }).collect()
    }

    /// Checks `(ω_i ω_j) ω_k = ω_i (ω_j ω_k)` for all basis triples.
    pub fn check_associative(&self) -> Result<(), Error> {
        let k = self.n - 1;
        for i in 1..=k {
            for j in 1..=k {
                for l in 1..=k {
                    let left = self.multiply(self.get(i, j), &self.unit(l));
                    let right = self.multiply(&self.unit(i), self.get(j, l));
                    if left != right {
                        return Err(Error::NotAssociative(i, j, l));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_associative(&self) -> bool {
        self.check_associative().is_ok()
    }

    /// The table in the basis `{1, ω_1 + c_1, .., ω_{n-1} + c_{n-1}}`.
    pub fn translated(&self, shifts: &[R]) -> Self {
        let k = self.n - 1;
        assert_eq!(shifts.len(), k);
        let mut products = Vec::with_capacity(k * (k + 1) / 2);
        for i in 1..=k {
            for j in i..=k {
                // (ω_i + c_i)(ω_j + c_j) in the ω basis
                let mut w = self.get(i, j).to_vec();
                w[i] = w[i].add_ref(&shifts[j - 1]);
                w[j] = w[j].add_ref(&shifts[i - 1]);
                w[0] = w[0].add_ref(&shifts[i - 1].mul_ref(&shifts[j - 1]));
                // ω_l = ψ_l - c_l
                let mut c0 = w[0].clone();
                for l in 1..=k {
                    c0 = c0.sub_ref(&w[l].mul_ref(&shifts[l - 1]));
                }
                w[0] = c0;
                products.push(w);
            }
        }
        StructureConstants::from_upper(self.n, products).expect("shape preserved")
    }
}

impl Serialize for StructureConstants<BigInt> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let grid: Vec<Vec<Vec<Int>>> = self
            .grid()
            .into_iter()
            .map(|row| row.into_iter().map(|v| v.into_iter().map(Int).collect()).collect())
            .collect();
        let mut st = s.serialize_struct("StructureConstants", 2)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("table", &grid)?;
        st.end()
    }
}

impl Serialize for StructureConstants<Polynomial> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("StructureConstants", 2)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("table", &self.grid())?;
        st.end()
    }
}

#[derive(Deserialize)]
struct TableRepr {
    n: usize,
    table: Vec<Vec<Vec<Int>>>,
}

impl<'de> Deserialize<'de> for StructureConstants<BigInt> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = TableRepr::deserialize(d)?;
        let grid = r
            .table
            .into_iter()
            .map(|row| row.into_iter().map(|v| v.into_iter().map(|x| x.0).collect()).collect())
            .collect();
        let t = StructureConstants::from_grid(grid).map_err(serde::de::Error::custom)?;
        if t.n != r.n {
            return Err(serde::de::Error::custom(format!(
                "table has rank {}, declared {}",
                t.n, r.n
            )));
        }
        Ok(t)
    }
}

/// `ω_i ω_j` is column `j` of `N^(φ_i)`.
pub fn multiplication_table<R: ea::Scalar>(a: &[R]) -> StructureConstants<R> {
    let n = a.len() - 1;
    let mut products = Vec::new();
    for i in 1..n {
        let mut e = vec![R::zero(); n];
        e[i] = R::one();
        let m = arithmetic_matrix(a, &e);
        for j in i..n {
            products.push(m.column(j));
        }
    }
    StructureConstants::from_upper(n, products).expect("well-formed")
}

/// Cubic table in the basis `{1, φ, ψ}` with `φ = φ_1`, `ψ = φ_2 + a_3`, where
/// `φψ` is an integer.
pub fn normalized_cubic_table<R: ea::Scalar>(a: &[R]) -> Result<StructureConstants<R>, Error> {
    if a.len() != 4 {
        return Err(Error::DegreeMismatch {
            expected: 3,
            found: a.len().saturating_sub(1),
        });
    }
    Ok(multiplication_table(a).translated(&[R::zero(), a[2].clone()]))
}

/// Recovers the binary cubic form of a cubic ring from its table in a basis
/// `{1, ω, θ}`.
///
/// The basis is first shifted to `ω' = ω - w_{23}`, `θ' = θ - w_{22}` so that
/// `ω'θ'` is an integer; the coefficients are then read from the ω'² and θ'²
/// rows and the remaining entries are checked.
pub fn cubic_form_from_order<R: ea::Scalar>(table: &StructureConstants<R>) -> Result<Vec<R>, Error> {
    if table.rank() != 3 {
        return Err(Error::DegreeMismatch {
            expected: 3,
            found: table.rank(),
        });
    }
    table.check_associative()?;
    let wt = table.get(1, 2);
    let t = table.translated(&[wt[2].neg_ref(), wt[1].neg_ref()]);
    let (w1, w2, w3) = (t.get(1, 1), t.get(1, 2), t.get(2, 2));
    debug_assert!(w2[1].is_zero() && w2[2].is_zero());
    let a = w1[2].clone();
    let b = w1[1].neg_ref();
    let c = w3[2].clone();
    let d = w3[1].neg_ref();
    let checks = [
        ("w11 = -ac", &w1[0], a.mul_ref(&c).neg_ref()),
        ("w21 = -ad", &w2[0], a.mul_ref(&d).neg_ref()),
        ("w31 = -bd", &w3[0], b.mul_ref(&d).neg_ref()),
    ];
    for (name, got, want) in checks {
        if *got != want {
            return Err(Error::NotCubicRing(format!("{name} fails: {got} != {want}")));
        }
    }
    Ok(vec![a, b, c, d])
}

/// Integer version of [`cubic_form_from_order`].
pub fn cubic_form_from_int_order(table: &StructureConstants<BigInt>) -> Result<BinaryForm, Error> {
    BinaryForm::new(cubic_form_from_order(table)?)
}
