mod common;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{big, int_det, random_coeffs, random_unimodular, PowerBasis};
use ringforge::forms::{self, BinaryForm, Mat2, UnimodularMatrix};
use ringforge::param::{
    build_p, build_t, isomorphism_check, symbolic_transport_defect, transport_element, ParamSystem,
};
use ringforge::verify::spot_check;
use ringforge::{Error, Polynomial};

fn arb_setup() -> impl Strategy<Value = (Vec<BigInt>, Mat2<BigInt>, Vec<BigInt>, Vec<BigInt>)> {
    (3usize..=7).prop_flat_map(|n| {
        let coeffs = prop::collection::vec(-8i64..=8, n + 1)
            .prop_filter("a1 != 0", |c| c[0] != 0)
            .prop_map(|c| c.into_iter().map(BigInt::from).collect::<Vec<_>>());
        let m = (-3i64..=3, -3i64..=3, -3i64..=3, -3i64..=3).prop_map(|(p, q, r, s)| Mat2 {
            p: big(p),
            q: big(q),
            r: big(r),
            s: big(s),
        });
        let el = prop::collection::vec((-40i64..=40).prop_map(BigInt::from), n);
        (coeffs, m, el.clone(), el)
    })
}

proptest! {
    /// `T(αβ) = T(α)T(β)` for any `M` with `b_1 ≠ 0`, multiplying in
    /// `ℚ[x]/(f)` on both sides rather than with arithmetic matrices.
    #[test]
    fn transport_is_multiplicative((a, m, x, y) in arb_setup()) {
        let b = forms::act(&a, &m);
        prop_assume!(!b[0].is_zero());
        let t = build_t(&a, &m).unwrap();
        let lhs = t.mul_vec(&PowerBasis::new(&b).mul(&x, &y)).unwrap();
        let rhs = PowerBasis::new(&a).mul(&t.mul_vec(&x).unwrap(), &t.mul_vec(&y).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn integer_determinants((a, m, _x, _y) in arb_setup()) {
        let n = a.len() - 1;
        let det = m.det();
        let t = build_t(&a, &m).unwrap();
        let p = build_p(n, &m).unwrap();
        prop_assert_eq!(int_det(&t), num_traits::pow(det.clone(), n * (n - 1) / 2));
        prop_assert_eq!(int_det(&p), num_traits::pow(det, (n - 1) * (n - 2) / 2));
    }

    #[test]
    fn integer_identity((a, m, _x, _y) in arb_setup()) {
        let sys = ParamSystem::new(a, m).unwrap();
        let (lhs, rhs) = ringforge::verify::identity_sides(&sys).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn symbolic_determinant_laws() {
    let m: Polynomial = "p s - q r".parse().unwrap();
    for n in 3..=8 {
        let sys = ParamSystem::symbolic(n).unwrap();
        assert_eq!(sys.t.det().unwrap(), m.pow((n * (n - 1) / 2) as u32), "det T, n = {n}");
        assert_eq!(sys.p.det().unwrap(), m.pow(((n - 1) * (n - 2) / 2) as u32), "det P, n = {n}");
    }
}

/// With `det M = -1` and odd `n(n-1)/2` the change of basis has determinant −1.
#[test]
fn determinant_sign_for_reflections() {
    let reflect = UnimodularMatrix::from_i64(0, 1, 1, 0).unwrap();
    for n in 3..=8usize {
        let mut c = vec![1i64; n + 1];
        c[n] = 2;
        let f = BinaryForm::from_i64(&c).unwrap();
        let t = build_t(f.coeffs(), &reflect.to_mat2()).unwrap();
        let want = if (n * (n - 1) / 2) % 2 == 1 { -1 } else { 1 };
        assert_eq!(int_det(&t), big(want), "n = {n}");
    }
}

#[test]
fn symbolic_transport_is_a_homomorphism() {
    for n in 3..=4 {
        let defect = symbolic_transport_defect(n).unwrap();
        assert_eq!(defect.len(), n);
        assert!(defect.iter().all(Polynomial::is_zero), "n = {n}");
    }
}

#[test]
fn random_isomorphism_checks() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut checked = 0;
    while checked < 12 {
        let n = 3 + checked % 4;
        let a = random_coeffs(&mut rng, n, 9);
        let [p, q, r, s] = random_unimodular(&mut rng, 4, checked % 2 == 1);
        let m = UnimodularMatrix::from_i64(p, q, r, s).unwrap();
        let f = BinaryForm::new(a).unwrap();
        match isomorphism_check(&f, &m, 200, checked as u64) {
            Ok(rep) => {
                assert!(rep.passed, "{f} with {m:?}: {:?}", rep.counterexample);
                assert_eq!(rep.transformed, f.act(&m).coeffs().iter().cloned().map(ringforge::serde_int::Int).collect::<Vec<_>>());
                checked += 1;
            }
            Err(Error::DegenerateForm(_)) => {}
            Err(e) => panic!("{e}"),
        }
    }
}

#[test]
fn check_is_reproducible() {
    let f = BinaryForm::from_i64(&[2, -1, 3, 5]).unwrap();
    let m = UnimodularMatrix::from_i64(2, 1, 1, 1).unwrap();
    let one = isomorphism_check(&f, &m, 300, 9).unwrap();
    let two = isomorphism_check(&f, &m, 300, 9).unwrap();
    assert_eq!(one, two);
}

#[test]
fn transport_element_applies_t() {
    let f = BinaryForm::from_i64(&[1, 2, 3, 4]).unwrap();
    let m = UnimodularMatrix::from_i64(1, 1, 0, 1).unwrap();
    let x = vec![big(5), big(-2), big(7)];
    let t = build_t(f.coeffs(), &m.to_mat2()).unwrap();
    assert_eq!(transport_element(&f, &m, &x).unwrap(), t.mul_vec(&x).unwrap());
    assert!(transport_element(&f, &m, &x[..2]).is_err());
}

#[test]
fn transport_is_bijective_on_lattices() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for k in 0..20 {
        let n = 3 + k % 5;
        let a = random_coeffs(&mut rng, n, 20);
        let [p, q, r, s] = random_unimodular(&mut rng, 6, k % 3 == 0);
        let t = build_t(&a, &Mat2 { p: big(p), q: big(q), r: big(r), s: big(s) }).unwrap();
        assert_eq!(int_det(&t).abs(), big(1));
    }
}

#[test]
fn identity_holds_at_random_points() {
    for n in 3..=9 {
        assert_eq!(spot_check(n, 10, 100 + n as u64).unwrap(), None, "n = {n}");
    }
}

#[test]
fn small_degrees_are_rejected() {
    assert!(matches!(ParamSystem::symbolic(2), Err(Error::DegreeTooSmall { min: 3, found: 2 })));
    let f = BinaryForm::from_i64(&[1, 0, 1]).unwrap();
    assert!(isomorphism_check(&f, &UnimodularMatrix::identity(), 1, 0).is_err());
}
