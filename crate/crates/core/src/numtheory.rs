//! Elementary number theory on machine integers.

use num_integer::Integer as _;

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

/// Prime factorization as `(prime, exponent)` pairs in increasing order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n) == [(n, 1)]
}

/// `Some((p, k))` when `n = p^k` with `k >= 1`.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    match factorize(n).as_slice() {
        [(p, k)] => Some((*p, *k)),
        _ => None,
    }
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n).into_iter().fold(n, |acc, (p, _)| acc / p * (p - 1))
}

pub fn pow_mod(base: u64, mut exp: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let m = modulus as u128;
    let mut b = base as u128 % m;
    let mut acc = 1u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

/// Multiplicative order of `k` modulo `n`; requires `gcd(k, n) = 1`.
pub fn mult_order(k: u64, n: u64) -> u64 {
    if n <= 2 {
        return 1;
    }
    assert_eq!(gcd(k % n, n), 1, "{k} is not a unit mod {n}");
    let mut x = k % n;
    let mut ord = 1;
    while x != 1 {
        x = x * (k % n) % n;
        ord += 1;
    }
    ord
}

/// Inverse of `k` modulo `n`.
pub fn inv_mod(k: i64, n: i64) -> Option<i64> {
    let g = k.rem_euclid(n).extended_gcd(&n);
    (g.gcd == 1).then(|| g.x.rem_euclid(n))
}

/// The units of `Z/nZ` in increasing order (`{0}` when `n = 1`, matching
/// `Z/1Z = {0}`).
pub fn units_mod(n: u64) -> Vec<u64> {
    if n == 1 {
        return vec![0];
    }
    (1..n).filter(|&k| gcd(k, n) == 1).collect()
}

/// The subgroup of `U(Z/nZ)` generated by `gens`, sorted.
pub fn unit_subgroup(gens: &[u64], n: u64) -> Vec<u64> {
    if n == 1 {
        return vec![0];
    }
    let mut seen = std::collections::BTreeSet::new();
    seen.insert(1 % n);
    let mut frontier = vec![1 % n];
    while let Some(x) = frontier.pop() {
        for &g in gens {
            let y = x * (g % n) % n;
            if seen.insert(y) {
                frontier.push(y);
            }
        }
    }
    seen.into_iter().collect()
}

pub fn reduce_signed(x: i64, n: u64) -> u64 {
    x.rem_euclid(n as i64) as u64
}
