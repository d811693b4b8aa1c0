//! Polynomial coefficients: machine words until they overflow, then bignums.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{Signed, ToPrimitive, Zero};

/// Arbitrary-precision integer with an inline fast path.
///
/// Invariant: the `Big` variant never holds a value that fits in an `i64`,
/// so derived equality and hashing are value equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub(crate) enum Coeff {
    Small(i64),
    Big(BigInt),
}

impl Coeff {
    pub const ZERO: Coeff = Coeff::Small(0);
    pub const ONE: Coeff = Coeff::Small(1);

    pub fn from_big(v: BigInt) -> Coeff {
        match v.to_i64() {
            Some(s) => Coeff::Small(s),
            None => Coeff::Big(v),
        }
    }

    pub fn to_big(&self) -> BigInt {
        match self {
            Coeff::Small(s) => BigInt::from(*s),
            Coeff::Big(b) => b.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Coeff::Small(0))
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Coeff::Small(1))
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Coeff::Small(s) => *s < 0,
            Coeff::Big(b) => b.is_negative(),
        }
    }

    pub fn neg(&self) -> Coeff {
        match self {
            Coeff::Small(s) => match s.checked_neg() {
                Some(v) => Coeff::Small(v),
                None => Coeff::from_big(-BigInt::from(*s)),
            },
            Coeff::Big(b) => Coeff::from_big(-b),
        }
    }

    pub fn abs(&self) -> Coeff {
        if self.is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }

    pub fn add(&self, other: &Coeff) -> Coeff {
        if let (Coeff::Small(a), Coeff::Small(b)) = (self, other) {
            if let Some(v) = a.checked_add(*b) {
                return Coeff::Small(v);
            }
        }
        Coeff::from_big(self.to_big() + other.to_big())
    }

    pub fn sub(&self, other: &Coeff) -> Coeff {
        if let (Coeff::Small(a), Coeff::Small(b)) = (self, other) {
            if let Some(v) = a.checked_sub(*b) {
                return Coeff::Small(v);
            }
        }
        Coeff::from_big(self.to_big() - other.to_big())
    }

    pub fn mul(&self, other: &Coeff) -> Coeff {
        if let (Coeff::Small(a), Coeff::Small(b)) = (self, other) {
            if let Some(v) = a.checked_mul(*b) {
                return Coeff::Small(v);
            }
        }
        Coeff::from_big(self.to_big() * other.to_big())
    }

    /// `self += a * b`, the inner step of every polynomial product.
    pub fn add_product(&mut self, a: &Coeff, b: &Coeff) {
        if let (Coeff::Small(acc), Coeff::Small(x), Coeff::Small(y)) = (&mut *self, a, b) {
            if let Some(v) = x.checked_mul(*y).and_then(|p| acc.checked_add(p)) {
                *acc = v;
                return;
            }
        }
        *self = self.add(&a.mul(b));
    }

    /// Exact quotient, or `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Coeff) -> Option<Coeff> {
        if divisor.is_zero() {
            return None;
        }
        if let (Coeff::Small(a), Coeff::Small(b)) = (self, divisor) {
            if let (Some(q), Some(r)) = (a.checked_div(*b), a.checked_rem(*b)) {
                return (r == 0).then_some(Coeff::Small(q));
            }
        }
        let (q, r) = self.to_big().div_rem(&divisor.to_big());
        r.is_zero().then(|| Coeff::from_big(q))
    }
}

impl From<i64> for Coeff {
    fn from(v: i64) -> Self {
        Coeff::Small(v)
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::Small(s) => write!(f, "{s}"),
            Coeff::Big(b) => write!(f, "{b}"),
        }
    }
}

impl fmt::Debug for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
