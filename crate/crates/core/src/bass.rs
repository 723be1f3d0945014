//! Bass cyclic units, generalized Bass units and the virtual basis of the
//! central units of `Z[G]`.
//!
//! A generalized Bass unit `1 - K^ + y K^` of `Q[H]` is determined by the
//! image of `y` in `Q[H/K]`, and `H/K` is cyclic for a strong Shoda pair, so
//! the products below are carried out in `Z[C_q]` and only lifted back to
//! `Z[G]` at the end.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Pow, Signed, Zero};
use rayon::prelude::*;

use crate::cyclotomic::{CyclicRing, Cyclotomic};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};
use crate::numtheory::{gcd, lcm, mult_order, prime_power};
use crate::shoda::{ShodaPairRecord, SspFamily};
use crate::wedderburn::{action_image, i_set};
use crate::{CyclotomicNumber, Integer, QGElement, Rational, ZGElement};

type CyclicZ = CyclicRing<Integer>;

/// `u_{k,m}(x) = (1 + x + ... + x^(k-1))^m + ((1 - k^m)/|x|) (1 + x + ... + x^(|x|-1))`.
pub fn bass_unit(g: &Arc<FiniteGroup>, x: usize, k: u64, m: u64) -> Result<ZGElement> {
    let n = g.element_order(x);
    let u = bass_unit_cyclic(n, 1, k, m)?;
    Ok(ZGElement::from_coeffs(
        g,
        u.coeffs()
            .iter()
            .enumerate()
            .map(|(i, c)| (g.pow(x, i as i64), c.clone())),
    ))
}

/// `u_{k,m}(x^e)` inside `Z[C_n] = Z[<x>]`; the element `x^e` has order
/// `n / gcd(n, e)`.
fn bass_unit_cyclic(n: usize, e: i64, k: u64, m: u64) -> Result<CyclicZ> {
    let d = n as u64 / gcd(e.rem_euclid(n as i64) as u64, n as u64);
    if gcd(k, d) != 1 {
        return Err(Error::BadParameter(format!("k = {k} is not coprime to the order {d}")));
    }
    let km: BigInt = Pow::pow(BigInt::from(k), m);
    if !((&km - 1u32) % d).is_zero() {
        return Err(Error::BadParameter(format!("k^m = {k}^{m} is not 1 modulo {d}")));
    }
    let mut eta = CyclicZ::zero(n);
    for i in 0..k as i64 {
        eta = &eta + &CyclicZ::monomial(n, e * i);
    }
    let mut u = eta.pow(m);
    let c = (BigInt::one() - km) / BigInt::from(d);
    for i in 0..d as i64 {
        u = &u + &CyclicZ::monomial(n, e * i).scale(&c);
    }
    Ok(u)
}

/// `1 - M^ + u_{k,m}(x) M^`.
pub fn gbu_base(g: &Arc<FiniteGroup>, sub_m: &Subgroup, x: usize, k: u64, m: u64) -> Result<QGElement> {
    let u = bass_unit(g, x, k, m)?.to_rational();
    let mh = QGElement::hat(g, sub_m);
    QGElement::one(g).sub(&mh)?.add(&u.mul(&mh)?)
}

/// Default cap on the exponent search, `4|G|`.
pub fn default_ngm_cap(g: &FiniteGroup) -> u64 {
    4 * g.order() as u64
}

/// Least `n` with `(1 - M^ + u_{k,m}(x) M^)^n` integral for every `k` with
/// `1 < k < |x|`, `(k, |x|) = 1` and `m = o_|x|(k)`.
///
/// The power equals `1 + (u^n - 1) M^`, which is integral exactly when the
/// image of `u^n` in `Z[G/M]` is `1` modulo `|M|`. That image lies in the
/// cyclic ring `Z[<xM>]`, so only the orders of `x` and `xM` matter.
pub fn n_gm(g: &FiniteGroup, sub_m: &Subgroup, x: usize, cap: u64) -> Result<u64> {
    let ord = g.element_order(x) as u64;
    let coset = g.order_modulo(x, sub_m) as u64;
    let mut n = 1;
    for k in 2..ord {
        if gcd(k, ord) == 1 {
            let m = mult_order(k, ord);
            let o = modular_order(ord, coset, k, m, sub_m.len() as u64, cap).ok_or_else(|| Error::CapExceeded {
                what: format!("exponent search for g = {}, k = {k}", g.label(x)),
                cap: cap as usize,
            })?;
            n = lcm(n, o);
        }
    }
    Ok(n)
}

/// `n_{G,M}`, with `G` replaced by the subgroup `h` (so `n_{H,K}` is
/// `n_in(g, H, K)`).
pub fn n_in(g: &FiniteGroup, h: &Subgroup, sub_m: &Subgroup, cap: u64) -> Result<u64> {
    if sub_m.is_trivial() || sub_m.len() == h.len() {
        return Ok(1);
    }
    let mut memo: HashMap<(u64, u64), u64> = HashMap::new();
    let mut n = 1;
    for &x in h.members() {
        if sub_m.contains(x) || g.element_order(x) <= 2 {
            continue;
        }
        let key = (g.element_order(x) as u64, g.order_modulo(x, sub_m) as u64);
        if let Some(&v) = memo.get(&key) {
            n = lcm(n, v);
            continue;
        }
        let v = n_gm(g, sub_m, x, cap)?;
        memo.insert(key, v);
        n = lcm(n, v);
    }
    Ok(n)
}

#[allow(non_snake_case)]
pub fn n_GM(g: &FiniteGroup, sub_m: &Subgroup, cap: u64) -> Result<u64> {
    n_in(g, &g.whole(), sub_m, cap)
}

/// `n_{H,K}` of a strong Shoda pair, computed in `Z[H]`.
pub fn n_hk(g: &FiniteGroup, rec: &ShodaPairRecord, cap: u64) -> Result<u64> {
    n_in(g, &rec.h, &rec.k, cap)
}

/// Order of the image of `u_{k,m}(x)` in `(Z/modulus)[C_coset]`, where `x`
/// has order `ord`; `None` past `cap`.
fn modular_order(ord: u64, coset: u64, k: u64, m: u64, modulus: u64, cap: u64) -> Option<u64> {
    let c = coset as usize;
    let md = modulus as i128;
    let mulc = |a: &[i128], b: &[i128]| -> Vec<i128> {
        let mut out = vec![0i128; c];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[(i + j) % c] = (out[(i + j) % c] + x * y) % md;
            }
        }
        out
    };
    let mut eta = vec![0i128; c];
    for i in 0..k as usize {
        eta[i % c] += 1;
    }
    let mut u = vec![0i128; c];
    u[0] = 1 % md;
    for _ in 0..m {
        u = mulc(&u, &eta);
    }
    // (1 - k^m)/ord times (|x|/|xM|) copies of the coset sum
    let km: BigInt = Pow::pow(BigInt::from(k), m);
    let corr = ((BigInt::one() - km) / BigInt::from(ord)) * BigInt::from(ord / coset);
    let corr = i128::try_from(corr.mod_floor_i(md)).expect("reduced");
    for x in u.iter_mut() {
        *x = (*x + corr).rem_euclid(md);
    }
    let mut one = vec![0i128; c];
    one[0] = 1 % md;
    let mut p = u.clone();
    for n in 1..=cap {
        if p == one {
            return Some(n);
        }
        p = mulc(&p, &u);
    }
    None
}

trait ModFloor {
    fn mod_floor_i(&self, m: i128) -> BigInt;
}

impl ModFloor for BigInt {
    fn mod_floor_i(&self, m: i128) -> BigInt {
        let m = BigInt::from(m);
        ((self % &m) + &m) % &m
    }
}

/// `eta_k(zeta_n^j) = 1 + zeta_n^j + ... + zeta_n^(j(k-1))`, and `1` when `n = 1`.
pub fn cyclotomic_eta(k: u64, n: u64, j: i64) -> CyclotomicNumber {
    if n == 1 {
        return Cyclotomic::one(1);
    }
    let mut acc = Cyclotomic::zero(n);
    for i in 0..k as i64 {
        acc = &acc + &Cyclotomic::root(n, i * j);
    }
    acc
}

/// Workspace for the units of one strong Shoda pair, with `[H:K] = p^n`.
pub struct BassContext<'a> {
    g: &'a Arc<FiniteGroup>,
    rec: &'a ShodaPairRecord,
    p: u64,
    n: u32,
    q: u64,
    pub n_hk: u64,
    memo: HashMap<(u32, u32, u64, u64), CyclicZ>,
}

impl<'a> BassContext<'a> {
    pub fn new(g: &'a Arc<FiniteGroup>, rec: &'a ShodaPairRecord, cap: u64) -> Result<Self> {
        let (p, n) = if rec.q == 1 {
            (1, 0)
        } else {
            prime_power(rec.q).ok_or(Error::PrimePowerRequired(rec.q))?
        };
        Ok(BassContext {
            g,
            rec,
            p,
            n,
            q: rec.q,
            n_hk: n_hk(g, rec, cap)?,
            memo: HashMap::new(),
        })
    }

    /// Image in `Z[H/K] = Z[C_q]` of the generalized Bass unit based on
    /// `g^e` and `K` with parameters `k`, `o_q(k)`.
    fn gbu_image(&self, k: u64, e: i64) -> Result<CyclicZ> {
        let m = mult_order(k, self.q) * self.n_hk;
        bass_unit_cyclic(self.q as usize, e, k, m)
    }

    /// `c_j^s(H, K, k, r)` in `Z[C_q]`.
    pub fn c_cyclic(&mut self, j: u32, s: u32, k: u64, r: i64) -> Result<CyclicZ> {
        if j > s || s > self.n {
            return Err(Error::BadParameter(format!(
                "need 0 <= j <= s <= {}, got j = {j}, s = {s}",
                self.n
            )));
        }
        if gcd(k, self.p) != 1 {
            return Err(Error::BadParameter(format!("k = {k} is not coprime to {}", self.p)));
        }
        let q = self.q as i64;
        let key = (j, s, k, r.rem_euclid(q) as u64);
        if let Some(v) = self.memo.get(&key) {
            return Ok(v.clone());
        }
        let value = if j == s {
            CyclicZ::one(self.q as usize)
        } else {
            let p = self.p as i64;
            let base_exp = r * p.pow(self.n - s);
            let step = p.pow(self.n - j);
            // one h per coset of K in L_j = <g^(p^(n-j)), K>
            let mut prod = CyclicZ::one(self.q as usize);
            for t in 0..p.pow(j) {
                prod = &prod * &self.gbu_image(k, base_exp + t * step)?;
            }
            let mut v = prod.pow(self.p.pow(s - j - 1));
            for l in j + 1..s {
                let c = self.c_cyclic(l, s, k, r)?;
                v = &v * &invert(&c)?;
            }
            for l in 0..j {
                let c = self.c_cyclic(l, s + l - j, k, r)?;
                v = &v * &invert(&c)?;
            }
            v
        };
        self.memo.insert(key, value.clone());
        Ok(value)
    }

    /// `c_j^s(H, K, k, r)` as an element of `Z[G]` supported on `H`.
    pub fn c_unit(&mut self, j: u32, s: u32, k: u64, r: i64) -> Result<ZGElement> {
        let y = self.c_cyclic(j, s, k, r)?;
        lift(self.g, self.rec, &y)
    }

    /// `B(H, K)`: for each `k` in `I \ {1}` the product over the action
    /// residues `x` of `c_0^n(H, K, k, x)`.
    pub fn b_set_cyclic(&mut self) -> Result<Vec<(u64, CyclicZ)>> {
        let action = action_image(self.g, self.rec)?;
        let mut out = Vec::new();
        for k in i_set(&action).into_iter().filter(|&k| k != 1) {
            let mut prod = CyclicZ::one(self.q as usize);
            for &x in &action.residues {
                prod = &prod * &self.c_cyclic(0, self.n, k, x as i64)?;
            }
            out.push((k, prod));
        }
        Ok(out)
    }
}

fn invert(y: &CyclicZ) -> Result<CyclicZ> {
    let yq = CyclicRing::from_coeffs(y.coeffs().iter().map(|c| Rational::from_integer(c.clone())).collect());
    let inv = yq.inverse()?;
    let coeffs = inv
        .coeffs()
        .iter()
        .map(|c| c.is_integer().then(|| c.to_integer()))
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::NotIntegral("inverse of a cyclic unit".into()))?;
    Ok(CyclicRing::from_coeffs(coeffs))
}

/// `1 - K^ + y~ K^` where `y~` lifts `y` along `g^t K <- x^t`.
pub fn lift(g: &Arc<FiniteGroup>, rec: &ShodaPairRecord, y: &CyclicZ) -> Result<ZGElement> {
    let kl = Rational::from_integer(BigInt::from(rec.k.len()));
    let mut coeffs: Vec<(usize, Rational)> = Vec::new();
    let mut coset = g.identity();
    for t in 0..rec.q as usize {
        for &kk in rec.k.members() {
            let x = g.mul(coset, kk);
            let mut c = Rational::from_integer(y.coeff(t).clone()) / &kl;
            if t == 0 {
                c -= Rational::one() / &kl;
            }
            if x == g.identity() {
                c += Rational::one();
            }
            coeffs.push((x, c));
        }
        coset = g.mul(coset, rec.generator);
    }
    let q = QGElement::from_coeffs(g, coeffs);
    ZGElement::from_rational(&q).ok_or_else(|| Error::NotIntegral("lifted generalized Bass unit".into()))
}

pub fn b_set(g: &Arc<FiniteGroup>, rec: &ShodaPairRecord, cap: u64) -> Result<Vec<ZGElement>> {
    let mut ctx = BassContext::new(g, rec, cap)?;
    ctx.b_set_cyclic()?.into_iter().map(|(_, y)| lift(g, rec, &y)).collect()
}

/// `{prod_{t in T} u^t : u in B(H, K)}` for the canonical right transversal
/// `T` of `N_G(K)` in `G`.
pub fn script_b_set(g: &Arc<FiniteGroup>, rec: &ShodaPairRecord, cap: u64) -> Result<Vec<ZGElement>> {
    let transversal = g.right_transversal(&rec.n);
    b_set(g, rec, cap)?
        .into_iter()
        .map(|u| {
            let mut acc = ZGElement::one(g);
            for &t in &transversal {
                acc = acc.mul(&u.conjugate(t))?;
            }
            Ok(acc)
        })
        .collect()
}

/// One entry of the virtual basis together with where it came from.
#[derive(Clone, Debug)]
pub struct BasisElement {
    pub record: usize,
    pub k: u64,
    pub unit: ZGElement,
}

/// Union of the `B(H_i, K_i)`.
pub fn virtual_basis(fam: &SspFamily, cap: u64) -> Result<Vec<BasisElement>> {
    let g = &fam.group;
    let per: Vec<Vec<BasisElement>> = fam
        .records
        .par_iter()
        .enumerate()
        .map(|(i, rec)| {
            let mut ctx = BassContext::new(g, rec, cap)?;
            ctx.b_set_cyclic()?
                .into_iter()
                .map(|(k, y)| {
                    Ok(BasisElement {
                        record: i,
                        k,
                        unit: lift(g, rec, &y)?,
                    })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(per.into_iter().flatten().collect())
}

/// `n_{H,K}` for every record.
pub fn n_values(fam: &SspFamily, cap: u64) -> Result<Vec<u64>> {
    fam.records.par_iter().map(|r| n_hk(&fam.group, r, cap)).collect()
}

/// The image of a central unit `u` of `Q(1 - e) + Q[N] e` in `Q(zeta_q)`:
/// `u epsilon` is rewritten in the powers of `gK` and evaluated at
/// `zeta_q`.
pub fn project_central_unit(g: &Arc<FiniteGroup>, rec: &ShodaPairRecord, u: &QGElement) -> Result<CyclotomicNumber> {
    for &t in rec.n.generators() {
        let b = QGElement::basis(g, t);
        if u.mul(&b)? != b.mul(u)? {
            return Err(Error::NotCentral(format!("does not commute with {}", g.label(t))));
        }
    }
    let v = u.mul(&rec.epsilon)?;
    let q = rec.q;
    let mut residue = vec![usize::MAX; g.order()];
    let mut coset = g.identity();
    for t in 0..q as usize {
        for &kk in rec.k.members() {
            residue[g.mul(coset, kk)] = t;
        }
        coset = g.mul(coset, rec.generator);
    }
    let mut acc = Cyclotomic::zero(q.max(1));
    for (x, c) in v.terms() {
        if residue[x] == usize::MAX {
            return Err(Error::NotCentral(format!(
                "u epsilon is supported outside H at {}",
                g.label(x)
            )));
        }
        acc = &acc + &Cyclotomic::root(q.max(1), residue[x] as i64).scale(c);
    }
    Ok(acc)
}

/// Exact inverse of `u` in `Z[G]`. An inverse of an element of `Q[S]`, `S`
/// the subgroup generated by the support, lies in `Q[S]`, so `u v = 1` is
/// solved there: modulo word-sized primes with CRT until the lift is stable
/// and multiplies back to 1, falling back to an exact rational solve.
pub fn inverse(u: &ZGElement) -> Result<ZGElement> {
    let g = u.parent().clone();
    let support = g.subgroup_generated(&u.support());
    let elems = support.members();
    let pos: HashMap<usize, usize> = elems.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let n = elems.len();
    // column j holds u * elems[j]
    let mut m: Vec<Vec<Integer>> = vec![vec![Integer::zero(); n]; n];
    for (j, &y) in elems.iter().enumerate() {
        for (x, c) in u.terms() {
            m[pos[&g.mul(x, y)]][j] += c;
        }
    }
    let target = pos[&g.identity()];
    let build = |xs: &[Integer]| ZGElement::from_coeffs(&g, elems.iter().zip(xs).map(|(&y, c)| (y, c.clone())));

    let mut acc: Option<(Vec<Integer>, Integer)> = None;
    let mut previous: Option<Vec<Integer>> = None;
    let mut singular = 0;
    for p in primes_below(1 << 31).take(MODULAR_PRIMES) {
        let Some(xp) = solve_mod(&m, target, p) else {
            singular += 1;
            if singular > 3 {
                break;
            }
            continue;
        };
        let (xs, modulus) = match acc.take() {
            None => (
                xp.iter().map(|&v| Integer::from(v)).collect::<Vec<_>>(),
                Integer::from(p),
            ),
            Some((xs, md)) => {
                let inv = mod_inverse_big(&md, p);
                let pb = Integer::from(p);
                let xs = xs
                    .iter()
                    .zip(&xp)
                    .map(|(a, &b)| {
                        let diff = (Integer::from(b) - a % &pb) * &inv;
                        let t = ((diff % &pb) + &pb) % &pb;
                        a + &md * t
                    })
                    .collect();
                (xs, md * pb)
            }
        };
        let half: Integer = &modulus / 2;
        let lifted: Vec<Integer> = xs
            .iter()
            .map(|x| if x > &half { x - &modulus } else { x.clone() })
            .collect();
        if previous.as_ref() == Some(&lifted) {
            let v = build(&lifted);
            if u.mul(&v)?.is_one() {
                return Ok(v);
            }
        }
        previous = Some(lifted);
        acc = Some((xs, modulus));
    }
    rational_inverse(&m, target, &build)
}

const MODULAR_PRIMES: usize = 400;

fn primes_below(start: u64) -> impl Iterator<Item = u64> {
    (3..start).rev().step_by(2).filter(|&x| crate::numtheory::is_prime(x))
}

fn mod_inverse_big(a: &Integer, p: u64) -> Integer {
    let r = (a % Integer::from(p)).to_u64_digits().1.first().copied().unwrap_or(0);
    Integer::from(crate::numtheory::pow_mod(r, p - 2, p))
}

/// Solution of `m x = e_target` modulo the prime `p`, `None` if singular.
fn solve_mod(m: &[Vec<Integer>], target: usize, p: u64) -> Option<Vec<u64>> {
    let n = m.len();
    let pb = Integer::from(p);
    let red = |c: &Integer| -> u64 {
        let r = ((c % &pb) + &pb) % &pb;
        r.to_u64_digits().1.first().copied().unwrap_or(0)
    };
    let mut a: Vec<Vec<u64>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<u64> = row.iter().map(red).collect();
            r.push(u64::from(i == target));
            r
        })
        .collect();
    let mulm = |x: u64, y: u64| ((x as u128 * y as u128) % p as u128) as u64;
    for col in 0..n {
        let pivot = (col..n).find(|&r| a[r][col] != 0)?;
        a.swap(col, pivot);
        let inv = crate::numtheory::pow_mod(a[col][col], p - 2, p);
        for x in a[col].iter_mut() {
            *x = mulm(*x, inv);
        }
        let pivot_row = a[col].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r != col && row[col] != 0 {
                let f = row[col];
                for c in col..=n {
                    row[c] = (row[c] + p - mulm(f, pivot_row[c])) % p;
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[n]).collect())
}

fn rational_inverse(m: &[Vec<Integer>], target: usize, build: &dyn Fn(&[Integer]) -> ZGElement) -> Result<ZGElement> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<Rational> = row.iter().map(|c| Rational::from_integer(c.clone())).collect();
            r.push(if i == target { Rational::one() } else { Rational::zero() });
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero()).ok_or(Error::NotInvertible)?;
        a.swap(col, pivot);
        let pv = a[col][col].clone();
        for x in a[col].iter_mut() {
            *x /= &pv;
        }
        let pivot_row = a[col].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r != col && !row[col].is_zero() {
                let f = row[col].clone();
                for c in col..=n {
                    if !pivot_row[c].is_zero() {
                        row[c] -= &f * &pivot_row[c];
                    }
                }
            }
        }
    }
    let xs = a
        .iter()
        .map(|row| row[n].is_integer().then(|| row[n].to_integer()))
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::NotIntegral("inverse".into()))?;
    Ok(build(&xs))
}

/// All coefficients integral.
pub fn is_integral(x: &QGElement) -> bool {
    x.terms().all(|(_, c)| c.is_integer())
}

/// Augmentation is `+1` or `-1`.
pub fn has_unit_augmentation(x: &ZGElement) -> bool {
    x.augmentation().abs().is_one()
}

/// Expected image of an element of `B(H, K)` with parameter `k`: the product
/// over the action image of `sigma(eta_k(zeta_q)^(o_q(k) p^(n-1) n_{H,K}))`.
pub fn expected_projection(g: &Arc<FiniteGroup>, rec: &ShodaPairRecord, k: u64, n_hk: u64) -> Result<CyclotomicNumber> {
    let q = rec.q;
    let (p, n) = prime_power(q).ok_or(Error::PrimePowerRequired(q))?;
    let e = mult_order(k, q) * p.pow(n - 1) * n_hk;
    let base = cyclotomic_eta(k, q, 1).pow(e);
    let mut acc = Cyclotomic::one(q);
    for &r in &action_image(g, rec)?.residues {
        acc = &acc * &base.galois(r as i64);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{build, CatalogEntry, Family};

    fn cyclic(n: usize) -> Arc<FiniteGroup> {
        let table: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Arc::new(FiniteGroup::from_cayley_table(&table).unwrap())
    }

    #[test]
    fn bass_unit_examples() {
        let g = cyclic(5);
        let u = bass_unit(&g, 1, 2, 4).unwrap();
        let coeffs: Vec<i64> = (0..5).map(|i| i64::try_from(u.coeff(i)).unwrap()).collect();
        assert_eq!(coeffs, vec![-2, 1, 3, 1, -2]);
        assert!(bass_unit(&g, 1, 1, 3).unwrap().is_one());
        assert!(bass_unit(&g, 0, 3, 2).unwrap().is_one());
        assert!(matches!(bass_unit(&g, 1, 2, 3), Err(Error::BadParameter(_))));
        assert!(matches!(bass_unit(&g, 1, 5, 1), Err(Error::BadParameter(_))));
        let inv = inverse(&u).unwrap();
        assert!(u.mul(&inv).unwrap().is_one());
    }

    #[test]
    fn inverse_failures() {
        let g = cyclic(2);
        let two = ZGElement::one(&g).scale(&Integer::from(2));
        assert!(matches!(inverse(&two), Err(Error::NotIntegral(_))));
        let one_plus_g = ZGElement::from_coeffs(&g, [(0, Integer::one()), (1, Integer::one())]);
        assert_eq!(inverse(&one_plus_g), Err(Error::NotInvertible));
        let minus_g = ZGElement::from_coeffs(&g, [(1, -Integer::one())]);
        assert_eq!(inverse(&minus_g).unwrap(), minus_g);
    }

    #[test]
    fn gbu_base_examples() {
        let g = cyclic(10);
        let triv = g.trivial_subgroup();
        let a = gbu_base(&g, &triv, 2, 3, 4).unwrap();
        assert_eq!(a, bass_unit(&g, 2, 3, 4).unwrap().to_rational());
        let whole = gbu_base(&g, &g.whole(), 2, 3, 4).unwrap();
        // u has augmentation 1, so the G^ block is unchanged
        assert!(whole.is_one());
    }

    #[test]
    fn eta_values() {
        assert!(cyclotomic_eta(3, 1, 1).is_one());
        assert!(cyclotomic_eta(1, 7, 1).is_one());
        let e2 = cyclotomic_eta(2, 5, 1);
        assert_eq!(e2.norm().abs(), Rational::one());
        let e3 = cyclotomic_eta(3, 5, 1);
        assert_eq!((&e2 * &e3).norm().abs(), Rational::one());
    }

    #[test]
    fn trivial_m_gives_one() {
        let g = Arc::new(build(&CatalogEntry::with_p(Family::ScriptG1, 3)).unwrap());
        assert_eq!(n_GM(&g, &g.trivial_subgroup(), 1000).unwrap(), 1);
        assert_eq!(n_GM(&g, &g.whole(), 1000).unwrap(), 1);
    }

    #[test]
    fn elementary_two_quotient_gives_one() {
        // In C2 x C2 every element outside M has order 2.
        let g = Arc::new(build(&CatalogEntry::abelian(&[2, 2])).unwrap());
        let m = g.subgroup_generated(&[g.generators()[0]]);
        assert_eq!(n_GM(&g, &m, 100).unwrap(), 1);
    }

    #[test]
    fn cap_is_reported() {
        let g = Arc::new(build(&CatalogEntry::with_p(Family::ScriptG1, 5)).unwrap());
        let a = crate::catalog::word(&g, "a").unwrap();
        let m = g.subgroup_generated(&[crate::catalog::word(&g, "a^5").unwrap()]);
        match n_GM(&g, &m, 1) {
            Err(Error::CapExceeded { what, .. }) => assert!(what.contains("k =")),
            other => panic!("{other:?}"),
        }
        assert!(n_gm(&g, &m, a, 1000).unwrap() > 1);
    }

    #[test]
    fn recursion_base_cases() {
        let g = Arc::new(build(&CatalogEntry::new(Family::H1)).unwrap());
        let fam = crate::shoda::compute_ssp_family(&g).unwrap();
        let rec = fam.records.iter().find(|r| r.q == 8).unwrap();
        let mut ctx = BassContext::new(&g, rec, 100).unwrap();
        assert!(ctx.c_unit(2, 2, 3, 1).unwrap().is_one());
        assert!(ctx.c_cyclic(0, 4, 3, 1).is_err());
        assert!(ctx.c_cyclic(0, 1, 2, 1).is_err());
        let c01 = ctx.c_cyclic(0, 1, 3, 1).unwrap();
        // s = 1, j = 0: a single generalized Bass unit based on g^(r p^(n-1))
        assert_eq!(c01, ctx.gbu_image(3, 4).unwrap());
        let unit = ctx.c_unit(0, 3, 3, 1).unwrap();
        assert!(has_unit_augmentation(&unit));
        assert!(unit.mul(&inverse(&unit).unwrap()).unwrap().is_one());
    }
}
