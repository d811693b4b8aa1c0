//! Matrices and formulas transcribed by hand, in typeset notation.

use ringforge::{PolyMatrix, Polynomial};

use super::{poly, typeset};

/// Expands the shorthand `m` for `det M = ps - qr`.
pub fn with_m(s: &str) -> String {
    s.replace('m', "(p s - q r)")
}

const CUBIC_ARITH: &str = r"
 u & -a d y & -d (a x+b y) \\
 x & u-b x-c y & -c x-d y \\
 y & a x & u-c y \\";

const QUARTIC_ARITH: &str = r"
 u & -a e z & -e (a y+b z) & -e (a x+b y+c z) \\
 x & u-b x-c y-d z & -c x-d y-e z & -d x-e y \\
 y & a x & u-c y-d z & -d y-e z \\
 z & a y & a x+b y & u-d z \\";


/// The change of basis for cubic, quartic and quintic forms.
pub fn change_of_basis(n: usize) -> PolyMatrix {
    let src = match n {
        3 => {
            r"1 & -( a q p^2 + b q r p + c q r^2 + d r^2 s ) & -( 2 a p q^2+b r q^2+b p s q+2 c r s q+2 d r s^2 ) \\
 0 & m p  & m q  \\
 0 & m r  & m s"
        }
        4 => {
            r"1 & -( a p^3 q + b p^2 q r + c p q r^2 + d q r^3 + e r^3 s ) & -( 3 a p^2 q^2 + b p^2 q s + 2 b p q^2 r + 2 c p q r s + c q^2 r^2 + 3 e r^2 s^2 + 3 d q r^2 s ) & -( 3 a p q^3 + b q^3 r + 2 b p q^2 s + 2 c q^2 r s + c p s^2 q + 3 d q r s^2 + 3 e r s^3 ) \\
 0 & m p^2 & 2 m p q & m q^2 \\
 0 & m p r & m (p s + q r) & m q s \\
 0 & m r^2 & 2 m r s & m s^2"
        }
        5 => {
            r"1 & -a q p^4-b q r p^3-c q r^2 p^2-d q r^3 p-e q r^4-f r^4 s & -4 a q^2 p^3-b q s p^3-3 b q^2 r p^2-2 c q r s p^2-2 c q^2 r^2 p-3 d q r^2 s p-d q^2 r^3 -4 f r^3 s^2-4 e q r^3 s & -6 a p^2 q^3-c r^2 q^3-3 b p r q^3-3 b p^2 s q^2-3 d r^2 s q^2-4 c p r s q^2-c p^2 s^2 q -6 e r^2 s^2 q-3 d p r s^2 q-6 f r^2 s^3 & -4 a p q^4-b r q^4-3 b p s q^3-2 c r s q^3-2 c p s^2 q^2-3 d r s^2 q^2-d p s^3 q -4 e r s^3 q-4 f r s^4 \\
 0 & p^3 m & 3 p^2 q m & 3 p q^2 m & q^3 m \\
 0 & p^2 r m & p m (p s + 2 q r) & q m (2 p s + q r) & q^2 s m \\
 0 & p r^2 m & r m (2 p s + q r) & s m (p s + 2 q r) & q s^2 m \\
 0 & r^3 m & 3 r^2 s m & 3 r s^2 m & s^3 m"
        }
        _ => unreachable!(),
    };
    typeset(&with_m(src))
}


pub fn cubic_arithmetic_matrix() -> PolyMatrix {
    typeset(CUBIC_ARITH)
}

pub fn quartic_arithmetic_matrix() -> PolyMatrix {
    typeset(QUARTIC_ARITH)
}

pub type Products = Vec<((usize, usize), Vec<Polynomial>)>;

fn products(rows: &[((usize, usize), &[&str])]) -> Products {
    rows.iter().map(|(k, v)| (*k, v.iter().map(|s| poly(s)).collect())).collect()
}

/// `φ_iφ_j` for the cubic `(a, b, c, d)`.
pub fn cubic_table() -> Products {
    products(&[((1, 1), &["0", "-b", "a"]), ((1, 2), &["-a d", "-c", "0"]), ((2, 2), &["-b d", "-d", "-c"])])
}

/// Products in the basis `{1, φ, ψ}`, `ψ = φ_2 + c`.
pub fn normalized_cubic_table() -> Products {
    products(&[((1, 1), &["-a c", "-b", "a"]), ((1, 2), &["-a d", "0", "0"]), ((2, 2), &["-b d", "-d", "c"])])
}

pub fn quartic_table() -> Products {
    products(&[
        ((1, 1), &["0", "-b", "a", "0"]),
        ((1, 2), &["0", "-c", "0", "a"]),
        ((1, 3), &["-a e", "-d", "0", "0"]),
        ((2, 2), &["-a e", "-d", "-c", "b"]),
        ((2, 3), &["-b e", "-e", "-d", "0"]),
        ((3, 3), &["-c e", "0", "-e", "-d"]),
    ])
}

/// `Q·B·T^{-1}` for `n = 3..6`; the larger ones are printed in column blocks.
pub fn qbt_inverse(n: usize) -> PolyMatrix {
    match n {
        3 => typeset(QBT3),
        4 => typeset(QBT4),
        5 => super::hcat(&[typeset(Z5[0]), typeset(Z5[1])]),
        6 => super::hcat(&[typeset(Z6[0]), typeset(Z6[1]), typeset(Z6[2])]),
        _ => panic!("no transcription for n = {n}"),
    }
}

const QBT3: &str = r"p^2 & - a_4 r^2 & 2 a_4 p r \\
 -2 p r & a_1 p^2 - a_3 r^2 & a_2 p^2 + 2 a_3 p r - a_4 r^2 \\
 r^2 & - r \left( 2 a_1 p + a_2 r \right) & a_1 p^2 - a_3 r^2";

const QBT4: &str = r"p^3 & a_5 r^3 & - 3 a_5 p r^2 & 3 a_5 p^2 r \\
 -3 p^2 r & a_1 p^3 + a_4 r^3 & a_2 p^3 - 3 a_4 p r^2 + a_5 r^3 & p \left( a_3 p^2 + 3 a_4 p r - 3 a_5 r^2 \right) \\
 3 p r^2 & r \left( a_3 r^2 - 3 a_1 p^2 \right) & a_1 p^3 - 3 a_2 p^2 r - 3 a_3 p r^2 + a_4 r^3 & a_2 p^3 - 3 a_4 p r^2 + a_5 r^3 \\
 -r^3 & r^2 \left( 3 a_1 p + a_2 r \right) & r \left( a_3 r^2 - 3 a_1 p^2 \right) & a_1 p^3 + a_4 r^3";

const Z5: [&str; 2] = [
    r"p^4 & - a_6 r^4 & 4 a_6 p r^3 \\
 -4 p^3 r & a_1 p^4 - a_5 r^4 & a_2 p^4 + 4 a_5 p r^3 - a_6 r^4 \\
 6 p^2 r^2 & -r ( 4 a_1 p^3 + a_4 r^3 ) & a_1 p^4 - 4 a_2 p^3 r + 4 a_4 p r^3 - a_5 r^4 \\
 -4 p r^3 & r^2 ( 6 a_1 p^2 - a_3 r^2 ) & - r ( 4 a_1 p^3 - 6 a_2 p^2 r - 4 a_3 p r^2 + a_4 r^3 ) \\
 r^4 & - r^3 ( 4 a_1 p + a_2 r ) & r^2 ( 6 a_1 p^2 - a_3 r^2 )",
    r"- 6 a_6 p^2 r^2 & 4 a_6 p^3 r \\
 p ( a_3 p^3 - 6 a_5 p r^2 + 4 a_6 r^3 ) & - p^2 ( - 4 a_5 p r - a_4 p^2 + 6 a_6 r^2 ) \\
 a_2 p^4 - 4 a_3 p^3 r - 6 a_4 p^2 r^2 + 4 a_5 p r^3 - a_6 r^4 & p ( a_3 p^3 - 6 a_5 p r^2 + 4 a_6 r^3 ) \\
 a_1 p^4 - 4 a_2 p^3 r + 4 a_4 p r^3 - a_5 r^4 & a_2 p^4 + 4 a_5 p r^3 - a_6 r^4  \\
 -r ( 4 a_1 p^3 + a_4 r^3 ) & a_1 p^4 - a_5 r^4",
];

const Z6: [&str; 3] = [
    r"p^5 & a_7 r^5 & - 5 a_7 p r^4  \\
 -5 p^4 r & a_1 p^5 + a_6 r^5 & a_2 p^5 - 5 a_6 p r^4 + a_7 r^5 \\
 10 p^3 r^2 & - r ( 5 a_1 p^4 - a_5 r^4 ) & a_1 p^5 - 5 a_2 p^4 r - 5 a_5 p r^4 + a_6 r^5 \\
 -10 p^2 r^3 & r^2 ( 10 a_1 p^3 + a_4 r^3 ) & - r ( 5 a_1 p^4 - 10 a_2 p^3 r + 5 a_4 p r^3 - a_5 r^4 ) \\
 5 p r^4 & - r^3 ( 10 a_1 p^2 - a_3 r^2 ) & r^2 ( 10 a_1 p^3 - 10 a_2 p^2 r - 5 a_3 p r^2 + a_4 r^3 ) \\
 -r^5 & r^4 ( 5 a_1 p + a_2 r ) & - r^3 ( 10 a_1 p^2 - a_3 r^2 )",
    r"10 a_7 p^2 r^3  \\
 -p ( - 10 a_6 p r^3 - a_3 p^4 + 5 a_7 r^4 ) \\
 a_2 p^5 - 5 a_3 p^4 r + 10 a_5 p^2 r^3 - 5 a_6 p r^4 + a_7 r^5 \\
 a_1 p^5 - 5 a_2 p^4 r + 10 a_3 p^3 r^2 + 10 a_4 p^2 r^3 - 5 a_5 p r^4 + a_6 r^5 \\
 -r ( 5 a_1 p^4 - 10 a_2 p^3 r + 5 a_4 p r^3 - a_5 r^4 ) \\
 r^2 ( 10 a_1 p^3 + a_4 r^3 )",
    r"-10 a_7 p^3 r^2 & 5 a_7 p^4 r \\
 p^2 ( a_4 p^3 - 10 a_6 p r^2 + 10 a_7 r^3 ) & - p^3 ( -5 a_6 p r - a_5 p^2 + 10 a_7 r^2 ) \\
 -p ( 5 a_4 p^3 r + 10 a_5 p^2 r^2 - 10 a_6 p r^3 - a_3 p^4 + 5 a_7 r^4 ) & p^2 ( a_4 p^3 - 10 a_6 p r^2 + 10 a_7 r^3 ) \\
 a_2 p^5 - 5 a_3 p^4 r + 10 a_5 p^2 r^3 - 5 a_6 p r^4 + a_7 r^5 & - p ( -10 a_6 p r^3 - a_3 p^4 + 5 a_7 r^4 ) \\
 a_1 p^5 - 5 a_2 p^4 r - 5 a_5 p r^4 + a_6 r^5 & a_2 p^5 - 5 a_6 p r^4 + a_7 r^5  \\
 -r ( 5 a_1 p^4 - a_5 r^4 ) & a_1 p^5 + a_6 r^5",
];
