//! Arithmetic in `T[x]/(x^n - 1)` and in `T(zeta_n) = T[x]/(Phi_n)`.

use std::collections::HashMap;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::numtheory::{euler_phi, gcd, units_mod};
use crate::scalar::{Field, Scalar};

/// Coefficients of the `n`-th cyclotomic polynomial, constant term first.
pub fn cyclotomic_polynomial(n: u64) -> Vec<i64> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Vec<i64>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    assert!(n >= 1);
    // x^n - 1 divided by Phi_d for every proper divisor d
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            num = div_monic(&num, &cyclotomic_polynomial(d));
        }
    }
    cache.lock().unwrap().insert(n, num.clone());
    num
}

fn div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut q = vec![0i64; rem.len() - dd];
    for i in (0..q.len()).rev() {
        let c = rem[i + dd];
        q[i] = c;
        for (j, &b) in den.iter().enumerate() {
            rem[i + j] -= c * b;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    q
}

/// Element of `T[C_n]`, the group ring of the cyclic group of order `n`,
/// stored as coefficients of `1, x, ..., x^(n-1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CyclicRing<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> CyclicRing<T> {
    pub fn zero(n: usize) -> Self {
        assert!(n >= 1);
        CyclicRing {
            coeffs: vec![T::zero(); n],
        }
    }

    pub fn one(n: usize) -> Self {
        Self::monomial(n, 0)
    }

    /// `x^e`.
    pub fn monomial(n: usize, e: i64) -> Self {
        let mut r = Self::zero(n);
        r.coeffs[e.rem_euclid(n as i64) as usize] = T::one();
        r
    }

    pub fn from_coeffs(coeffs: Vec<T>) -> Self {
        assert!(!coeffs.is_empty());
        CyclicRing { coeffs }
    }

    pub fn n(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &T {
        &self.coeffs[i]
    }

    pub fn is_one(&self) -> bool {
        *self == Self::one(self.n())
    }

    pub fn scale(&self, c: &T) -> Self {
        CyclicRing {
            coeffs: self.coeffs.iter().map(|a| a.clone() * c.clone()).collect(),
        }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.n());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// The ring automorphism `x -> x^r` (requires `gcd(r, n) = 1`).
    pub fn galois(&self, r: i64) -> Self {
        let n = self.n() as i64;
        assert_eq!(gcd(r.rem_euclid(n) as u64, n as u64), 1);
        let mut out = Self::zero(self.n());
        for (i, c) in self.coeffs.iter().enumerate() {
            out.coeffs[(i as i64 * r).rem_euclid(n) as usize] = c.clone();
        }
        out
    }

    /// Image under `x -> zeta_m^e`. This is a ring map whenever `zeta_m^e`
    /// has order dividing `n`.
    pub fn evaluate(&self, m: u64, e: i64) -> Cyclotomic<T> {
        let mut acc = Cyclotomic::zero(m);
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc = &acc + &Cyclotomic::root(m, e * i as i64).scale(c);
            }
        }
        acc
    }
}

impl<T: Field> CyclicRing<T> {
    /// Inverse via Gaussian elimination on the circulant matrix.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.n();
        // Column j of the multiplication matrix is self * x^j, solve M y = e_0.
        let mut m: Vec<Vec<T>> = (0..n)
            .map(|i| {
                let mut row: Vec<T> = (0..n).map(|j| self.coeffs[(i + n - j) % n].clone()).collect();
                row.push(if i == 0 { T::one() } else { T::zero() });
                row
            })
            .collect();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !m[r][col].is_zero()).ok_or(Error::NotInvertible)?;
            m.swap(col, pivot);
            let p = m[col][col].clone();
            for x in m[col].iter_mut() {
                *x = x.clone() / p.clone();
            }
            for r in 0..n {
                if r != col && !m[r][col].is_zero() {
                    let f = m[r][col].clone();
                    for c in col..=n {
                        let v = m[col][c].clone() * f.clone();
                        m[r][c] = m[r][c].clone() - v;
                    }
                }
            }
        }
        Ok(CyclicRing {
            coeffs: m.into_iter().map(|row| row[n].clone()).collect(),
        })
    }
}

impl<T: Scalar> Mul for &CyclicRing<T> {
    type Output = CyclicRing<T>;
    fn mul(self, rhs: Self) -> CyclicRing<T> {
        let n = self.n();
        assert_eq!(n, rhs.n(), "cyclic ring sizes differ");
        let mut out = CyclicRing::<T>::zero(n);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    let k = (i + j) % n;
                    out.coeffs[k] = out.coeffs[k].clone() + a.clone() * b.clone();
                }
            }
        }
        out
    }
}

impl<T: Scalar> Add for &CyclicRing<T> {
    type Output = CyclicRing<T>;
    fn add(self, rhs: Self) -> CyclicRing<T> {
        assert_eq!(self.n(), rhs.n());
        CyclicRing {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }
}

impl<T: Scalar> Sub for &CyclicRing<T> {
    type Output = CyclicRing<T>;
    fn sub(self, rhs: Self) -> CyclicRing<T> {
        assert_eq!(self.n(), rhs.n());
        CyclicRing {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }
}

/// Element of the cyclotomic extension `T(zeta_n)`, stored in the power
/// basis `1, zeta, ..., zeta^(phi(n)-1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Cyclotomic<T> {
    n: u64,
    coeffs: Vec<T>,
}

impl<T: Scalar> Cyclotomic<T> {
    pub fn zero(n: u64) -> Self {
        Cyclotomic {
            n,
            coeffs: vec![T::zero(); euler_phi(n) as usize],
        }
    }

    pub fn one(n: u64) -> Self {
        Self::root(n, 0)
    }

    pub fn from_int(n: u64, c: i64) -> Self {
        Self::one(n).scale(&T::from_int(c))
    }

    /// `zeta_n^e`.
    pub fn root(n: u64, e: i64) -> Self {
        let mut poly = vec![T::zero(); n as usize];
        poly[e.rem_euclid(n as i64) as usize] = T::one();
        Self::reduce(n, poly)
    }

    /// Reduces an arbitrary polynomial in `zeta` modulo `Phi_n`.
    pub fn from_poly(n: u64, poly: Vec<T>) -> Self {
        Self::reduce(n, poly)
    }

    fn reduce(n: u64, mut poly: Vec<T>) -> Self {
        let phi = cyclotomic_polynomial(n);
        let d = phi.len() - 1;
        if poly.len() > d {
            for i in (d..poly.len()).rev() {
                let c = poly[i].clone();
                if c.is_zero() {
                    continue;
                }
                for (j, &b) in phi.iter().enumerate() {
                    if b != 0 {
                        let k = i - d + j;
                        poly[k] = poly[k].clone() - c.clone() * T::from_int(b);
                    }
                }
            }
        }
        poly.resize(d, T::zero());
        Cyclotomic { n, coeffs: poly }
    }

    pub fn conductor(&self) -> u64 {
        self.n
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        *self == Self::one(self.n)
    }

    /// The value as an element of `T` when it lies in the prime field.
    pub fn as_scalar(&self) -> Option<T> {
        if self.coeffs.iter().skip(1).all(|c| c.is_zero()) {
            Some(self.coeffs.first().cloned().unwrap_or_else(T::zero))
        } else {
            None
        }
    }

    pub fn scale(&self, c: &T) -> Self {
        Cyclotomic {
            n: self.n,
            coeffs: self.coeffs.iter().map(|a| a.clone() * c.clone()).collect(),
        }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.n);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `zeta -> zeta^r`.
    pub fn galois(&self, r: i64) -> Self {
        let n = self.n as i64;
        assert_eq!(gcd(r.rem_euclid(n) as u64, n as u64), 1);
        let mut poly = vec![T::zero(); self.n as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            let k = (i as i64 * r).rem_euclid(n) as usize;
            poly[k] = poly[k].clone() + c.clone();
        }
        Self::reduce(self.n, poly)
    }

    /// Product of all Galois conjugates.
    pub fn norm(&self) -> T {
        let mut acc = Self::one(self.n);
        for r in units_mod(self.n) {
            acc = &acc * &self.galois(r as i64);
        }
        acc.as_scalar().expect("norm lies in the base field")
    }

    /// `1 + zeta + ... + zeta^(k-1)`.
    pub fn eta(n: u64, k: u64) -> Self {
        let mut poly = vec![T::zero(); n as usize];
        for i in 0..k {
            let j = (i % n) as usize;
            poly[j] = poly[j].clone() + T::one();
        }
        Self::reduce(n, poly)
    }
}

impl<T: Field> Cyclotomic<T> {
    pub fn inverse(&self) -> Result<Self> {
        let nm = self.norm();
        if nm.is_zero() {
            return Err(Error::NotInvertible);
        }
        let mut acc = Self::one(self.n);
        for r in units_mod(self.n).into_iter().skip(1) {
            acc = &acc * &self.galois(r as i64);
        }
        Ok(acc.scale(&(T::one() / nm)))
    }
}

impl<T: Scalar> Mul for &Cyclotomic<T> {
    type Output = Cyclotomic<T>;
    fn mul(self, rhs: Self) -> Cyclotomic<T> {
        assert_eq!(self.n, rhs.n, "conductors differ");
        let len = (self.coeffs.len() + rhs.coeffs.len()).max(1);
        let mut poly = vec![T::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    poly[i + j] = poly[i + j].clone() + a.clone() * b.clone();
                }
            }
        }
        Cyclotomic::reduce(self.n, poly)
    }
}

impl<T: Scalar> Add for &Cyclotomic<T> {
    type Output = Cyclotomic<T>;
    fn add(self, rhs: Self) -> Cyclotomic<T> {
        assert_eq!(self.n, rhs.n, "conductors differ");
        Cyclotomic {
            n: self.n,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }
}

impl<T: Scalar> Sub for &Cyclotomic<T> {
    type Output = Cyclotomic<T>;
    fn sub(self, rhs: Self) -> Cyclotomic<T> {
        assert_eq!(self.n, rhs.n, "conductors differ");
        Cyclotomic {
            n: self.n,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }
}

impl<T: Scalar> Neg for Cyclotomic<T> {
    type Output = Cyclotomic<T>;
    fn neg(self) -> Cyclotomic<T> {
        Cyclotomic {
            n: self.n,
            coeffs: self.coeffs.into_iter().map(|a| -a).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;
    use num_traits::{One, Signed};

    type Q = Rational;

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(9), vec![1, 0, 0, 1, 0, 0, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(25).len(), 21);
    }

    #[test]
    fn roots_of_unity() {
        for n in [1u64, 2, 3, 5, 8, 9, 25] {
            let z: Cyclotomic<Q> = Cyclotomic::root(n, 1);
            assert!(z.pow(n).is_one());
            let sum = (0..n as i64).fold(Cyclotomic::<Q>::zero(n), |acc, e| &acc + &Cyclotomic::root(n, e));
            if n > 1 {
                assert!(sum.is_zero(), "n = {n}");
            }
        }
    }

    #[test]
    fn norm_of_eta() {
        // eta_k(zeta_p) is a cyclotomic unit for (k, p) = 1.
        let e: Cyclotomic<Q> = Cyclotomic::eta(5, 2);
        assert_eq!(e.norm().abs(), Q::one());
        let inv = e.inverse().unwrap();
        assert!((&e * &inv).is_one());
        // 1 - zeta_5 has norm 5.
        let t = &Cyclotomic::<Q>::one(5) - &Cyclotomic::root(5, 1);
        assert_eq!(t.norm(), Q::from_integer(5.into()));
    }

    #[test]
    fn cyclic_ring_inverse() {
        let u: CyclicRing<Q> = &CyclicRing::one(5) + &CyclicRing::monomial(5, 1);
        let v = u.inverse().unwrap();
        assert!((&u * &v).is_one());
        let sum = (0..5).fold(CyclicRing::<Q>::zero(5), |acc, e| &acc + &CyclicRing::monomial(5, e));
        assert!(matches!(sum.inverse(), Err(Error::NotInvertible)));
    }

    #[test]
    fn evaluation_is_a_homomorphism() {
        let a: CyclicRing<Q> = &CyclicRing::one(9) + &CyclicRing::monomial(9, 4);
        let b: CyclicRing<Q> = &CyclicRing::monomial(9, 2) - &CyclicRing::monomial(9, 7);
        let ab = &a * &b;
        for (m, e) in [(9u64, 1i64), (9, 2), (3, 1), (1, 0)] {
            assert_eq!(ab.evaluate(m, e), &a.evaluate(m, e) * &b.evaluate(m, e));
        }
    }

    #[test]
    fn generic_over_floats() {
        let z: Cyclotomic<f64> = Cyclotomic::root(4, 1);
        assert_eq!((&z * &z).as_scalar(), Some(-1.0));
    }
}
