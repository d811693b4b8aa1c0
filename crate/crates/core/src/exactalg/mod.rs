//! Exact arithmetic: integers, sparse multivariate polynomials over ℤ, and
//! dense matrices over either.

mod int;
mod matrix;
mod parse;
mod poly;
mod variable;

pub mod dense;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Zero};

pub use matrix::{IntMatrix, Matrix, PolyMatrix};
pub use poly::Polynomial;
pub use variable::Variable;

/// A commutative ring with exact division, the entry type of [`Matrix`].
///
/// Implemented for [`BigInt`] (concrete computations) and [`Polynomial`]
/// (symbolic ones), so every construction in this crate runs in both modes.
pub trait Scalar: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync {
    /// Entry products are expensive enough to be worth spreading over threads.
    const HEAVY: bool = false;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn from_bigint(v: &BigInt) -> Self;
    fn is_zero(&self) -> bool;
    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    /// `self / divisor` when it is exact.
    fn div_exact(&self, divisor: &Self) -> Option<Self>;

    fn pow(&self, e: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..e {
            out = out.mul_ref(self);
        }
        out
    }

    fn dot<'a, I>(pairs: I) -> Self
    where
        Self: 'a,
        I: IntoIterator<Item = (&'a Self, &'a Self)>,
    {
        pairs
            .into_iter()
            .fold(Self::zero(), |acc, (a, b)| acc.add_ref(&a.mul_ref(b)))
    }
}

impl Scalar for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn from_bigint(v: &BigInt) -> Self {
        v.clone()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn div_exact(&self, divisor: &Self) -> Option<Self> {
        if Zero::is_zero(divisor) {
            return None;
        }
        let (q, r) = self.div_rem(divisor);
        Zero::is_zero(&r).then_some(q)
    }
    fn pow(&self, e: u32) -> Self {
        num_traits::pow(self.clone(), e as usize)
    }
}

impl Scalar for Polynomial {
    const HEAVY: bool = true;

    fn zero() -> Self {
        Polynomial::zero()
    }
    fn one() -> Self {
        Polynomial::one()
    }
    fn from_i64(v: i64) -> Self {
        Polynomial::from_i64(v)
    }
    fn from_bigint(v: &BigInt) -> Self {
        Polynomial::constant(v)
    }
    fn is_zero(&self) -> bool {
        Polynomial::is_zero(self)
    }
    fn add_ref(&self, other: &Self) -> Self {
        Polynomial::add_ref(self, other)
    }
    fn sub_ref(&self, other: &Self) -> Self {
        Polynomial::sub_ref(self, other)
    }
    fn mul_ref(&self, other: &Self) -> Self {
        Polynomial::mul_ref(self, other)
    }
    fn neg_ref(&self) -> Self {
        Polynomial::neg_ref(self)
    }
    fn div_exact(&self, divisor: &Self) -> Option<Self> {
        Polynomial::div_exact(self, divisor)
    }
    fn pow(&self, e: u32) -> Self {
        Polynomial::pow(self, e)
    }
    fn dot<'a, I>(pairs: I) -> Self
    where
        Self: 'a,
        I: IntoIterator<Item = (&'a Self, &'a Self)>,
    {
        Polynomial::sum_of_products(pairs)
    }
}
