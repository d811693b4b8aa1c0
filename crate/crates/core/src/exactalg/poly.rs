//! Sparse multivariate polynomials over the integers.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use rustc_hash::FxHashMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use smallvec::SmallVec;

use super::int::Coeff;
use super::variable::Variable;
use crate::error::Error;

/// Exponent vector, one slot per variable of the owning polynomial.
pub(crate) type Exps = SmallVec<[u16; 24]>;

type Term = (Exps, Coeff);

/// A polynomial in ℤ[v₁, .., v_k] kept in canonical form.
///
/// Terms are stored in descending graded-lexicographic order with no zero
/// coefficients, and the variable list holds exactly the variables that
/// occur. Two polynomials are equal iff their representations are equal.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    vars: Arc<[Variable]>,
    terms: Vec<Term>,
}

fn degree(e: &[u16]) -> u32 {
    e.iter().map(|&x| x as u32).sum()
}

/// Graded lexicographic comparison of exponent vectors of equal width.
fn grlex(a: &[u16], b: &[u16]) -> Ordering {
    degree(a).cmp(&degree(b)).then_with(|| a.cmp(b))
}

fn add_exps(a: &[u16], b: &[u16]) -> Exps {
    a.iter()
        .zip(b)
        .map(|(&x, &y)| x.checked_add(y).expect("exponent exceeds u16::MAX"))
        .collect()
}

fn sort_terms(terms: &mut [Term]) {
    terms.sort_unstable_by(|a, b| grlex(&b.0, &a.0));
}

fn empty_vars() -> Arc<[Variable]> {
    Arc::from(Vec::<Variable>::new())
}

fn merge_vars(a: &Arc<[Variable]>, b: &Arc<[Variable]>) -> Arc<[Variable]> {
    if Arc::ptr_eq(a, b) || a[..] == b[..] {
        return a.clone();
    }
    if a.is_empty() {
        return b.clone();
    }
    if b.is_empty() {
        return a.clone();
    }
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Greater => {
                out.push(b[j].clone());
                j += 1;
            }
            Ordering::Equal => {
                out.push(a[i].clone());
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    Arc::from(out)
}

/// Widens exponent vectors from `from` to the superset `to`. Order-preserving.
fn embed(terms: &[Term], from: &[Variable], to: &[Variable]) -> Vec<Term> {
    if from == to {
        return terms.to_vec();
    }
    let slots: Vec<usize> = from
        .iter()
        .map(|v| to.binary_search(v).expect("target variable set is a superset"))
        .collect();
    terms
        .iter()
        .map(|(e, c)| {
            let mut out: Exps = SmallVec::from_elem(0, to.len());
            for (k, &slot) in slots.iter().enumerate() {
                out[slot] = e[k];
            }
            (out, c.clone())
        })
        .collect()
}

impl Polynomial {
    /// Builds the canonical form from an arbitrary term list.
    fn from_terms(vars: Arc<[Variable]>, mut terms: Vec<Term>, sorted: bool) -> Polynomial {
        terms.retain(|(_, c)| !c.is_zero());
        if !sorted {
            sort_terms(&mut terms);
        }
        let width = vars.len();
        let mut used = vec![false; width];
        for (e, _) in &terms {
            for (k, &x) in e.iter().enumerate() {
                used[k] |= x != 0;
            }
        }
        if used.iter().all(|&u| u) {
            return Polynomial { vars, terms };
        }
        let keep: Vec<usize> = (0..width).filter(|&k| used[k]).collect();
        let vars: Arc<[Variable]> = keep.iter().map(|&k| vars[k].clone()).collect();
        let terms = terms
            .into_iter()
            .map(|(e, c)| (keep.iter().map(|&k| e[k]).collect(), c))
            .collect();
        Polynomial { vars, terms }
    }

    pub fn zero() -> Polynomial {
        Polynomial {
            vars: empty_vars(),
            terms: Vec::new(),
        }
    }

    pub fn one() -> Polynomial {
        Polynomial::from_i64(1)
    }

    pub fn from_i64(v: i64) -> Polynomial {
        Polynomial::from_coeff(Coeff::from(v))
    }

    pub fn constant(v: &BigInt) -> Polynomial {
        Polynomial::from_coeff(Coeff::from_big(v.clone()))
    }

    fn from_coeff(c: Coeff) -> Polynomial {
        let terms = if c.is_zero() {
            Vec::new()
        } else {
            vec![(Exps::new(), c)]
        };
        Polynomial {
            vars: empty_vars(),
            terms,
        }
    }

    /// The polynomial consisting of a single variable.
    pub fn var(name: impl Into<Variable>) -> Polynomial {
        let v: Variable = name.into();
        Polynomial {
            vars: Arc::from(vec![v]),
            terms: vec![(SmallVec::from_elem(1, 1), Coeff::ONE)],
        }
    }

    /// `[prefix·start, .., prefix·(start+count-1)]`, e.g. `vars("a", 1, 4)` gives a1..a4.
    pub fn vars(prefix: &str, start: usize, count: usize) -> Vec<Polynomial> {
        (start..start + count)
            .map(|i| Polynomial::var(format!("{prefix}{i}").as_str()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.vars.is_empty() && self.terms.len() == 1 && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.vars.is_empty()
    }

    /// Value of a constant polynomial.
    pub fn as_constant(&self) -> Option<BigInt> {
        if !self.is_constant() {
            return None;
        }
        Some(self.terms.first().map_or_else(BigInt::zero, |(_, c)| c.to_big()))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Variables that occur, in the fixed variable order.
    pub fn variables(&self) -> &[Variable] {
        &self.vars
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.first().map(|(e, _)| degree(e))
    }

    pub fn degree_in(&self, v: &Variable) -> u32 {
        match self.vars.binary_search(v) {
            Ok(k) => self.terms.iter().map(|(e, _)| e[k] as u32).max().unwrap_or(0),
            Err(_) => 0,
        }
    }

    /// Terms as `(coefficient, [(variable, exponent)])`, leading term first.
    pub fn terms(&self) -> impl Iterator<Item = (BigInt, Vec<(Variable, u32)>)> + '_ {
        self.terms.iter().map(|(e, c)| {
            let mono = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x != 0)
                .map(|(k, &x)| (self.vars[k].clone(), x as u32))
                .collect();
            (c.to_big(), mono)
        })
    }

    fn with_vars(&self, vars: &Arc<[Variable]>) -> Vec<Term> {
        embed(&self.terms, &self.vars, vars)
    }

    fn merge(&self, other: &Polynomial, negate_other: bool) -> Polynomial {
        let vars = merge_vars(&self.vars, &other.vars);
        let lhs = if self.vars[..] == vars[..] {
            std::borrow::Cow::Borrowed(&self.terms)
        } else {
            std::borrow::Cow::Owned(self.with_vars(&vars))
        };
        let rhs = if other.vars[..] == vars[..] {
            std::borrow::Cow::Borrowed(&other.terms)
        } else {
            std::borrow::Cow::Owned(other.with_vars(&vars))
        };
        let mut out = Vec::with_capacity(lhs.len() + rhs.len());
        let (mut i, mut j) = (0, 0);
        let take_rhs = |c: &Coeff| if negate_other { c.neg() } else { c.clone() };
        while i < lhs.len() && j < rhs.len() {
            match grlex(&lhs[i].0, &rhs[j].0) {
                Ordering::Greater => {
                    out.push(lhs[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((rhs[j].0.clone(), take_rhs(&rhs[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_other {
                        lhs[i].1.sub(&rhs[j].1)
                    } else {
                        lhs[i].1.add(&rhs[j].1)
                    };
                    if !c.is_zero() {
                        out.push((lhs[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(lhs[i..].iter().cloned());
        out.extend(rhs[j..].iter().map(|(e, c)| (e.clone(), take_rhs(c))));
        Polynomial::from_terms(vars, out, true)
    }

    pub fn add_ref(&self, other: &Polynomial) -> Polynomial {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.clone();
        }
        self.merge(other, false)
    }

    pub fn sub_ref(&self, other: &Polynomial) -> Polynomial {
        if other.is_zero() {
            return self.clone();
        }
        self.merge(other, true)
    }

    pub fn neg_ref(&self) -> Polynomial {
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.neg())).collect(),
        }
    }

    pub fn mul_ref(&self, other: &Polynomial) -> Polynomial {
        Polynomial::sum_of_products([(self, other)])
    }

    /// Multiplies every coefficient by an integer.
    pub fn scale(&self, k: &BigInt) -> Polynomial {
        let k = Coeff::from_big(k.clone());
        let terms = self.terms.iter().map(|(e, c)| (e.clone(), c.mul(&k))).collect();
        Polynomial::from_terms(self.vars.clone(), terms, true)
    }

    /// Σ lhsᵢ·rhsᵢ accumulated in a single pass; the kernel of matrix products.
    pub fn sum_of_products<'a, I>(pairs: I) -> Polynomial
    where
        I: IntoIterator<Item = (&'a Polynomial, &'a Polynomial)>,
    {
        let pairs: Vec<_> = pairs
            .into_iter()
            .filter(|(a, b)| !a.is_zero() && !b.is_zero())
            .collect();
        if pairs.is_empty() {
            return Polynomial::zero();
        }
        let mut vars = pairs[0].0.vars.clone();
        for (a, b) in &pairs {
            vars = merge_vars(&vars, &a.vars);
            vars = merge_vars(&vars, &b.vars);
        }
        // A lone monomial factor keeps the other factor's order: no hashing needed.
        if pairs.len() == 1 && (pairs[0].0.terms.len() == 1 || pairs[0].1.terms.len() == 1) {
            let (a, b) = pairs[0];
            let (mono, poly) = if a.terms.len() == 1 { (a, b) } else { (b, a) };
            let mono = mono.with_vars(&vars).pop().expect("one term");
            let terms = poly
                .with_vars(&vars)
                .into_iter()
                .map(|(e, c)| (add_exps(&e, &mono.0), c.mul(&mono.1)))
                .collect();
            return Polynomial::from_terms(vars, terms, true);
        }
        let capacity = pairs
            .iter()
            .map(|(a, b)| a.terms.len() * b.terms.len())
            .sum::<usize>()
            .min(1 << 20);
        let mut acc: FxHashMap<Exps, Coeff> = FxHashMap::default();
        acc.reserve(capacity);
        for (a, b) in pairs {
            let lhs = a.with_vars(&vars);
            let rhs = b.with_vars(&vars);
            for (ea, ca) in &lhs {
                for (eb, cb) in &rhs {
                    acc.entry(add_exps(ea, eb))
                        .or_insert(Coeff::ZERO)
                        .add_product(ca, cb);
                }
            }
        }
        Polynomial::from_terms(vars, acc.into_iter().collect(), false)
    }

    pub fn pow(&self, mut e: u32) -> Polynomial {
        let mut base = self.clone();
        let mut out = Polynomial::one();
        while e > 0 {
            if e & 1 == 1 {
                out = out.mul_ref(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_ref(&base);
            }
        }
        out
    }

    /// Exact quotient `self / divisor` by multivariate long division.
    ///
    /// Returns `None` when the division leaves a remainder (or the divisor is
    /// zero); never truncates.
    pub fn div_exact(&self, divisor: &Polynomial) -> Option<Polynomial> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Polynomial::zero());
        }
        let vars = merge_vars(&self.vars, &divisor.vars);
        let dividend = self.with_vars(&vars);
        let div = divisor.with_vars(&vars);
        let (lead_e, lead_c) = &div[0];
        let divide_term = |(e, c): &Term| -> Option<Term> {
            let mut q: Exps = SmallVec::with_capacity(e.len());
            for (x, y) in e.iter().zip(lead_e) {
                q.push(x.checked_sub(*y)?);
            }
            Some((q, c.div_exact(lead_c)?))
        };
        if div.len() == 1 {
            let terms = dividend.iter().map(divide_term).collect::<Option<Vec<_>>>()?;
            return Some(Polynomial::from_terms(vars, terms, true));
        }
        let mut quotient = Vec::new();
        let mut rem = dividend;
        while let Some(lead) = rem.first() {
            let (qe, qc) = divide_term(lead)?;
            let shifted: Vec<Term> = div
                .iter()
                .map(|(e, c)| (add_exps(e, &qe), c.mul(&qc)))
                .collect();
            rem = merge_sub(&rem, &shifted);
            quotient.push((qe, qc));
        }
        Some(Polynomial::from_terms(vars, quotient, true))
    }

    /// Evaluates at integer values; every occurring variable must be assigned.
    pub fn evaluate<F>(&self, mut value: F) -> Result<BigInt, Error>
    where
        F: FnMut(&Variable) -> Option<BigInt>,
    {
        let values = self
            .vars
            .iter()
            .map(|v| value(v).ok_or_else(|| Error::UnboundVariable(v.name().to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        let mut total = BigInt::zero();
        for (e, c) in &self.terms {
            let mut t = c.to_big();
            for (k, &x) in e.iter().enumerate() {
                if x != 0 {
                    t *= num_traits::pow(values[k].clone(), x as usize);
                }
            }
            total += t;
        }
        Ok(total)
    }

    /// Evaluates with a name → value map.
    pub fn evaluate_map(&self, values: &HashMap<Variable, BigInt>) -> Result<BigInt, Error> {
        self.evaluate(|v| values.get(v).cloned())
    }

    /// Simultaneous substitution of polynomials for variables.
    pub fn substitute(&self, subs: &[(Variable, Polynomial)]) -> Polynomial {
        let images: Vec<Polynomial> = self
            .vars
            .iter()
            .map(|v| {
                subs.iter()
                    .find(|(w, _)| w == v)
                    .map(|(_, p)| p.clone())
                    .unwrap_or_else(|| Polynomial::var(v.clone()))
            })
            .collect();
        let mut powers: Vec<Vec<Polynomial>> = images.iter().map(|p| vec![Polynomial::one(), p.clone()]).collect();
        let mut parts = Vec::with_capacity(self.terms.len());
        for (e, c) in &self.terms {
            let mut t = Polynomial::from_coeff(c.clone());
            for (k, &x) in e.iter().enumerate() {
                let x = x as usize;
                if x == 0 {
                    continue;
                }
                while powers[k].len() <= x {
                    let next = powers[k].last().unwrap().mul_ref(&images[k]);
                    powers[k].push(next);
                }
                t = t.mul_ref(&powers[k][x]);
            }
            parts.push(t);
        }
        Polynomial::sum(parts.iter())
    }

    /// Coefficient of `v^k`, as a polynomial in the remaining variables.
    pub fn coefficient(&self, v: &Variable, k: u32) -> Polynomial {
        let Ok(slot) = self.vars.binary_search(v) else {
            return if k == 0 { self.clone() } else { Polynomial::zero() };
        };
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| e[slot] as u32 == k)
            .map(|(e, c)| {
                let mut e = e.clone();
                e[slot] = 0;
                (e, c.clone())
            })
            .collect();
        Polynomial::from_terms(self.vars.clone(), terms, false)
    }

    pub fn sum<'a>(items: impl IntoIterator<Item = &'a Polynomial>) -> Polynomial {
        let mut level: Vec<Polynomial> = items.into_iter().filter(|p| !p.is_zero()).cloned().collect();
        // pairwise reduction keeps the merges balanced
        while level.len() > 1 {
            level = level
                .chunks(2)
                .map(|c| if c.len() == 2 { c[0].add_ref(&c[1]) } else { c[0].clone() })
                .collect();
        }
        level.pop().unwrap_or_else(Polynomial::zero)
    }

    /// Canonical text: terms in descending graded-lex order, `coeff*var^e*...`,
    /// joined by ` + ` / ` - `. Unit coefficients and unit exponents are omitted.
    pub fn to_canonical_string(&self) -> String {
        self.to_string()
    }
}

fn merge_sub(a: &[Term], b: &[Term]) -> Vec<Term> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match grlex(&a[i].0, &b[j].0) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push((b[j].0.clone(), b[j].1.neg()));
                j += 1;
            }
            Ordering::Equal => {
                let c = a[i].1.sub(&b[j].1);
                if !c.is_zero() {
                    out.push((a[i].0.clone(), c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend(a[i..].iter().cloned());
    out.extend(b[j..].iter().map(|(e, c)| (e.clone(), c.neg())));
    out
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (idx, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            let mut first = true;
            if !abs.is_one() || e.iter().all(|&x| x == 0) {
                write!(f, "{abs}")?;
                first = false;
            }
            for (k, &x) in e.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                if !first {
                    f.write_str("*")?;
                }
                first = false;
                write!(f, "{}", self.vars[k])?;
                if x > 1 {
                    write!(f, "^{x}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

impl FromStr for Polynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        super::parse::parse_polynomial(s)
    }
}

impl From<i64> for Polynomial {
    fn from(v: i64) -> Self {
        Polynomial::from_i64(v)
    }
}

impl From<&BigInt> for Polynomial {
    fn from(v: &BigInt) -> Self {
        Polynomial::constant(v)
    }
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $inner:ident) => {
        impl $trait<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.$inner(rhs)
            }
        }
        impl $trait<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                self.$inner(&rhs)
            }
        }
        impl $trait<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.$inner(rhs)
            }
        }
        impl $trait<Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                self.$inner(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.neg_ref()
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.neg_ref()
    }
}
