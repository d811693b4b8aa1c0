mod common;

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

use common::{big, rat, PowerBasis};
use ringforge::arithmat::{
    arithmetic_matrix, cubic_form_from_int_order, cubic_form_from_order, element_add, element_inverse, element_mul,
    multiplication_table, normalized_cubic_table, norm, symbolic_coords, trace, OrderContext, StructureConstants,
};
use ringforge::forms::{letter_coeffs, symbolic_coeffs, BinaryForm};
use ringforge::{Error, Polynomial};

fn arb_coeffs(degrees: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Vec<BigInt>> {
    degrees.prop_flat_map(|n| {
        prop::collection::vec(-9i64..=9, n + 1)
            .prop_filter("nondegenerate", |c| c[0] != 0 && *c.last().unwrap() != 0)
            .prop_map(|c| c.into_iter().map(BigInt::from).collect())
    })
}

/// A form with two elements of its order.
fn arb_pair() -> impl Strategy<Value = (Vec<BigInt>, Vec<BigInt>, Vec<BigInt>)> {
    arb_coeffs(3..=7).prop_flat_map(|a| {
        let n = a.len() - 1;
        let el = prop::collection::vec((-50i64..=50).prop_map(BigInt::from), n);
        (Just(a), el.clone(), el)
    })
}

fn ctx(a: &[BigInt]) -> Arc<OrderContext> {
    OrderContext::new(BinaryForm::new(a.to_vec()).unwrap()).unwrap()
}

proptest! {
    #[test]
    fn additive((a, x, y) in arb_pair()) {
        let sum: Vec<BigInt> = x.iter().zip(&y).map(|(u, v)| u + v).collect();
        let lhs = arithmetic_matrix(&a, &x).add(&arithmetic_matrix(&a, &y)).unwrap();
        prop_assert_eq!(lhs, arithmetic_matrix(&a, &sum));
    }

    #[test]
    fn multiplicative_and_commuting((a, x, y) in arb_pair()) {
        let c = ctx(&a);
        let (ex, ey) = (c.element(x.clone()).unwrap(), c.element(y.clone()).unwrap());
        let prod = element_mul(&ex, &ey).unwrap();
        prop_assert_eq!(prod.coords(), &PowerBasis::new(&a).mul(&x, &y)[..]);
        let (nx, ny) = (ex.matrix(), ey.matrix());
        let nxy = nx.mul(&ny).unwrap();
        prop_assert_eq!(&nxy, &ny.mul(&nx).unwrap());
        prop_assert_eq!(nxy, prod.matrix());
        prop_assert_eq!(element_mul(&ey, &ex).unwrap(), prod);
    }

    #[test]
    fn trace_and_norm_match_oracle((a, x, _y) in arb_pair()) {
        let oracle = PowerBasis::new(&a);
        let e = ctx(&a).element(x.clone()).unwrap();
        prop_assert_eq!(rat(&trace(&e)), oracle.trace(&x));
        prop_assert_eq!(rat(&norm(&e)), oracle.norm(&x));
    }

    #[test]
    fn inverse_contract((a, x, _y) in arb_pair()) {
        let c = ctx(&a);
        let e = c.element(x).unwrap();
        match element_inverse(&e) {
            Ok(inv) => {
                prop_assert!(inv.denom > BigInt::zero());
                let g = inv.coords.iter().fold(inv.denom.clone(), |g, v| num_integer::Integer::gcd(&g, v));
                prop_assert!(g.is_one());
                let prod = element_mul(&e, &c.element(inv.coords.clone()).unwrap()).unwrap();
                let mut want = vec![BigInt::zero(); a.len() - 1];
                want[0] = inv.denom.clone();
                prop_assert_eq!(prod.coords(), &want[..]);
            }
            Err(Error::ZeroNorm) => prop_assert!(norm(&e).is_zero()),
            Err(other) => prop_assert!(false, "unexpected {other}"),
        }
    }

    #[test]
    fn tables_are_associative(a in arb_coeffs(3..=7)) {
        let t = multiplication_table(&a);
        prop_assert!(t.is_associative());
        let oracle = PowerBasis::new(&a);
        let n = a.len() - 1;
        for i in 1..n {
            for j in 1..n {
                let mut ei = vec![BigInt::zero(); n];
                let mut ej = vec![BigInt::zero(); n];
                ei[i] = BigInt::one();
                ej[j] = BigInt::one();
                prop_assert_eq!(t.get(i, j), &oracle.mul(&ei, &ej)[..]);
            }
        }
    }

    #[test]
    fn symbolic_matrix_evaluates((a, x, _y) in arb_pair()) {
        let n = a.len() - 1;
        let c = ctx(&a);
        let sym = c.symbolic_matrix();
        let got = sym
            .evaluate(|v| {
                let k: usize = v.name().strip_prefix('x')?.parse().ok()?;
                x.get(k).cloned()
            })
            .unwrap();
        prop_assert_eq!(got.rows(), n);
        prop_assert_eq!(got, c.arithmetic_matrix(&x).unwrap());
    }

    #[test]
    fn cubic_round_trip(a in arb_coeffs(3..=3)) {
        let f = BinaryForm::new(a.clone()).unwrap();
        prop_assert_eq!(cubic_form_from_int_order(&multiplication_table(&a)).unwrap(), f.clone());
        prop_assert_eq!(cubic_form_from_int_order(&normalized_cubic_table(&a).unwrap()).unwrap(), f);
    }

    #[test]
    fn element_sum((a, x, y) in arb_pair()) {
        let c = ctx(&a);
        let s = element_add(&c.element(x.clone()).unwrap(), &c.element(y.clone()).unwrap()).unwrap();
        let want: Vec<BigInt> = x.iter().zip(&y).map(|(u, v)| u + v).collect();
        prop_assert_eq!(s.coords(), &want[..]);
    }
}

#[test]
fn symbolic_multiplicativity() {
    for n in 3..=5 {
        let a = symbolic_coeffs(n);
        let x = symbolic_coords(n);
        let y = Polynomial::vars("y", 0, n);
        let nx = arithmetic_matrix(&a, &x);
        let ny = arithmetic_matrix(&a, &y);
        let xy = nx.mul_vec(&y).unwrap();
        assert_eq!(nx.mul(&ny).unwrap(), arithmetic_matrix(&a, &xy), "n = {n}");
    }
}

#[test]
fn symbolic_associativity() {
    for n in 3..=6 {
        assert!(multiplication_table(&symbolic_coeffs(n)).is_associative(), "n = {n}");
    }
}

#[test]
fn cubic_converse_is_symbolic_identity() {
    let a = letter_coeffs(3);
    assert_eq!(cubic_form_from_order(&multiplication_table(&a)).unwrap(), a);
    assert_eq!(cubic_form_from_order(&normalized_cubic_table(&a).unwrap()).unwrap(), a);
}

#[test]
fn contexts_do_not_mix() {
    let c1 = ctx(&[big(1), big(0), big(0), big(-2)]);
    let c2 = ctx(&[big(1), big(0), big(0), big(-3)]);
    let e1 = c1.one();
    let e2 = c2.one();
    assert!(matches!(element_mul(&e1, &e2), Err(Error::ContextMismatch)));
    assert!(matches!(c1.element(vec![big(1)]), Err(Error::CoordinateCount { expected: 3, found: 1 })));
}

#[test]
fn non_associative_table_is_rejected() {
    let bad = StructureConstants::from_upper(
        3,
        vec![vec![big(0), big(0), big(1)], vec![big(2), big(0), big(0)], vec![big(2), big(0), big(1)]],
    )
    .unwrap();
    assert!(!bad.is_associative());
    assert!(cubic_form_from_int_order(&bad).is_err());
}

#[test]
fn zero_norm_has_no_inverse() {
    // x^3 - x has the zero divisor ζ.
    let c = ctx(&[big(1), big(0), big(-1), big(1)]);
    let oracle = PowerBasis::new(c.form().coeffs());
    for x in [[0i64, 1, 0], [1, 0, 0], [2, 1, 1]] {
        let x: Vec<BigInt> = x.iter().map(|&v| big(v)).collect();
        let e = c.element(x.clone()).unwrap();
        assert_eq!(rat(&norm(&e)), oracle.norm(&x));
    }
    let z = c.element(vec![big(0), big(0), big(0)]).unwrap();
    assert!(matches!(element_inverse(&z), Err(Error::ZeroNorm)));
}
