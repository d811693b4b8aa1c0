//! Dense polynomials over a prime field `F_p` with `p < 2^63`, just enough for
//! Rabin's irreducibility test.

type Poly = Vec<u64>; // lowest degree first, no trailing zeros

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut out = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            out = mulmod(out, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    out
}

fn inv(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

fn trim(mut f: Poly) -> Poly {
    while f.last() == Some(&0) {
        f.pop();
    }
    f
}

fn sub(a: &[u64], b: &[u64], p: u64) -> Poly {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect(),
    )
}

fn rem(a: &[u64], m: &[u64], p: u64) -> Poly {
    let mut r = trim(a.to_vec());
    let dm = m.len() - 1;
    let lead_inv = inv(m[dm], p);
    while r.len() > dm {
        let k = r.len() - 1 - dm;
        let c = mulmod(*r.last().unwrap(), lead_inv, p);
        for (i, &mi) in m.iter().enumerate() {
            r[k + i] = (r[k + i] + p - mulmod(c, mi, p)) % p;
        }
        r = trim(r);
    }
    r
}

fn mulrem(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mulmod(x, y, p)) % p;
        }
    }
    rem(&out, m, p)
}

fn gcd(a: &[u64], b: &[u64], p: u64) -> Poly {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// `x^(p^k) mod f` by repeated p-th powering.
fn frobenius_power(f: &[u64], k: usize, p: u64) -> Poly {
    let mut acc = rem(&[0, 1], f, p);
    for _ in 0..k {
        acc = powrem(&acc, p, f, p);
    }
    acc
}

fn powrem(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Poly {
    let mut out = rem(&[1], m, p);
    let mut b = base.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            out = mulrem(&out, &b, m, p);
        }
        b = mulrem(&b, &b, m, p);
        e >>= 1;
    }
    out
}

fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rabin's test. `f` must have degree ≥ 1 after reduction mod `p`.
pub(super) fn is_irreducible(f: &[u64], p: u64) -> bool {
    let f = trim(f.iter().map(|c| c % p).collect());
    let n = f.len() - 1;
    if n == 1 {
        return true;
    }
    let x = vec![0, 1];
    for q in prime_factors(n) {
        let h = frobenius_power(&f, n / q, p);
        let g = gcd(&f, &sub(&h, &x, p), p);
        if g.len() != 1 {
            return false;
        }
    }
    let h = frobenius_power(&f, n, p);
    sub(&h, &rem(&x, &f, p), p).is_empty()
}

pub(super) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub(super) fn primes() -> impl Iterator<Item = u64> {
    (2u64..).filter(|&n| is_prime(n))
}
