//! Strong Shoda pairs and the complete irredundant family of a normally
//! monomial group.

use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::group::{FiniteGroup, Subgroup, DEFAULT_SUBGROUP_CAP};
use crate::group_ring::{distinct_conjugates, e_idempotent, epsilon};
use crate::numtheory::{euler_phi, factorize};
use crate::QGElement;

/// A strong Shoda pair `(H, K)` with the data derived from it.
#[derive(Clone, Debug)]
pub struct ShodaPairRecord {
    pub h: Subgroup,
    pub k: Subgroup,
    /// `N_G(K)`.
    pub n: Subgroup,
    /// `[H:K]`.
    pub q: u64,
    pub q_factorization: Vec<(u64, u32)>,
    /// An element of `H` whose coset generates `H/K`.
    pub generator: usize,
    pub epsilon: QGElement,
    pub e: QGElement,
    /// `[G:N]`.
    pub m: u64,
}

#[derive(Clone, Debug)]
pub struct SspFamily {
    pub group: Arc<FiniteGroup>,
    /// `records[0]` is `(G, G)`.
    pub records: Vec<ShodaPairRecord>,
    /// Order-sum certificate, pairwise distinct idempotents and `sum e = 1`.
    pub complete: bool,
    /// The order sum equals `|G|`.
    pub normally_monomial: bool,
    pub certificate_sum: u64,
}

/// The first condition of the strong Shoda pair definition that fails.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SspCondition {
    /// `K` normal in `H` and `H` normal in `N_G(K)`.
    Nested,
    /// `H/K` cyclic.
    Cyclic,
    /// `H/K` maximal abelian in `N_G(K)/K`.
    MaximalAbelian,
    /// The distinct conjugates of `epsilon(H, K)` are mutually orthogonal.
    Orthogonal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SspVerdict {
    pub holds: bool,
    pub failing: Option<SspCondition>,
}

impl SspVerdict {
    fn fail(c: SspCondition) -> Self {
        SspVerdict {
            holds: false,
            failing: Some(c),
        }
    }
}

pub fn is_strong_shoda_pair(g: &Arc<FiniteGroup>, h: &Subgroup, k: &Subgroup) -> SspVerdict {
    let n = g.normalizer(k);
    if !g.is_normal_in(k, h) || !g.is_normal_in(h, &n) {
        return SspVerdict::fail(SspCondition::Nested);
    }
    let gen = match g.cyclic_generator_mod(h, k) {
        Some(x) => x,
        None => return SspVerdict::fail(SspCondition::Cyclic),
    };
    if !quotient_self_centralizing(g, &n, h, k, gen) {
        return SspVerdict::fail(SspCondition::MaximalAbelian);
    }
    let conj: Vec<QGElement> = match distinct_conjugates(g, h, k) {
        Ok(c) => c,
        Err(_) => return SspVerdict::fail(SspCondition::Nested),
    };
    // conjugation carries eps^s eps^t to eps eps^(t s^-1), so pairs with eps suffice
    for c in &conj[1..] {
        if !conj[0].are_orthogonal(c).unwrap_or(false) {
            return SspVerdict::fail(SspCondition::Orthogonal);
        }
    }
    SspVerdict {
        holds: true,
        failing: None,
    }
}

/// `{x in N : [x, gen] in K} = H`, i.e. the cyclic `H/K = <gen K>` is its
/// own centralizer in `N/K`.
fn quotient_self_centralizing(g: &FiniteGroup, n: &Subgroup, h: &Subgroup, k: &Subgroup, gen: usize) -> bool {
    n.members()
        .iter()
        .filter(|&&x| k.contains(g.commutator(x, gen)))
        .count()
        == h.len()
}

/// Normal subgroups `A >= N` with `A/N` abelian, of maximal order; the
/// first in canonical order is returned.
pub fn a_n(g: &FiniteGroup, normals: &[Subgroup], n: &Subgroup) -> Subgroup {
    let mut best: Option<&Subgroup> = None;
    for a in normals {
        if n.is_subset(a) && g.is_abelian_section(a, n) && best.is_none_or(|b| a.len() > b.len()) {
            best = Some(a);
        }
    }
    best.expect("N itself qualifies").clone()
}

/// `D` with `N <= D <= A`, `core(D) = N`, `A/D` cyclic and maximal abelian
/// in `N_G(D)/D`.
pub fn d_n(g: &FiniteGroup, subgroups: &[Subgroup], n: &Subgroup, a: &Subgroup) -> Vec<Subgroup> {
    subgroups
        .iter()
        .filter(|d| n.is_subset(d) && d.is_subset(a))
        .filter(|d| {
            let Some(gen) = g.cyclic_generator_mod(a, d) else {
                return false;
            };
            if g.core_of(d) != *n {
                return false;
            }
            let nd = g.normalizer(d);
            quotient_self_centralizing(g, &nd, a, d, gen)
        })
        .cloned()
        .collect()
}

/// Least subgroup in canonical order among the `G`-conjugates of `d`.
pub fn canonical_conjugate(g: &FiniteGroup, d: &Subgroup) -> Subgroup {
    g.right_transversal(&g.normalizer(d))
        .into_iter()
        .map(|t| g.conjugate_subgroup(d, t))
        .min()
        .expect("nonempty transversal")
}

/// One canonical-least representative per conjugacy class, sorted.
pub fn t_n(g: &FiniteGroup, ds: &[Subgroup]) -> Vec<Subgroup> {
    let mut reps: Vec<Subgroup> = ds.iter().map(|d| canonical_conjugate(g, d)).collect();
    reps.sort();
    reps.dedup();
    reps
}

pub fn compute_ssp_family(g: &Arc<FiniteGroup>) -> Result<SspFamily> {
    compute_ssp_family_with_cap(g, DEFAULT_SUBGROUP_CAP)
}

pub fn compute_ssp_family_with_cap(g: &Arc<FiniteGroup>, cap: usize) -> Result<SspFamily> {
    let subgroups = g.all_subgroups(cap)?;
    let normals: Vec<Subgroup> = subgroups.iter().filter(|s| g.is_normal(s)).cloned().collect();
    let order = g.order() as u64;

    let per_n: Vec<(u64, Vec<(Subgroup, Subgroup)>)> = normals
        .par_iter()
        .map(|n| {
            let a = a_n(g, &normals, n);
            let ds = d_n(g, &subgroups, n, &a);
            let index = order / a.len() as u64;
            let sum: u64 = ds.iter().map(|d| index * euler_phi((a.len() / d.len()) as u64)).sum();
            let pairs = t_n(g, &ds).into_iter().map(|d| (a.clone(), d)).collect();
            (sum, pairs)
        })
        .collect();

    let certificate_sum: u64 = per_n.iter().map(|(s, _)| s).sum();
    let mut pairs: Vec<(Subgroup, Subgroup)> = per_n.into_iter().flat_map(|(_, p)| p).collect();
    let whole = g.whole();
    if let Some(i) = pairs.iter().position(|(h, k)| *h == whole && *k == whole) {
        let top = pairs.remove(i);
        pairs.insert(0, top);
    }
    let records = pairs
        .par_iter()
        .map(|(h, k)| make_record(g, h, k))
        .collect::<Result<Vec<_>>>()?;

    Ok(finish(g, records, certificate_sum))
}

fn finish(g: &Arc<FiniteGroup>, records: Vec<ShodaPairRecord>, certificate_sum: u64) -> SspFamily {
    let normally_monomial = certificate_sum == g.order() as u64;
    let mut distinct = true;
    'outer: for (i, r) in records.iter().enumerate() {
        for s in &records[i + 1..] {
            if r.e == s.e {
                distinct = false;
                break 'outer;
            }
        }
    }
    let mut total = QGElement::zero(g);
    for r in &records {
        total = total.add(&r.e).expect("same parent");
    }
    let complete = normally_monomial && distinct && total.is_one();
    SspFamily {
        group: g.clone(),
        records,
        complete,
        normally_monomial,
        certificate_sum,
    }
}

/// Family from explicitly given pairs, e.g. a published list. Every pair
/// is checked to be a strong Shoda pair and `(G, G)` is moved to the front.
/// `certificate_sum` is `sum [G:N] [G:H] phi([H:K])`, which equals `|G|`
/// exactly when the pairs account for every conjugate of every `K`.
pub fn family_from_pairs(g: &Arc<FiniteGroup>, pairs: &[(Subgroup, Subgroup)]) -> Result<SspFamily> {
    let whole = g.whole();
    let mut pairs = pairs.to_vec();
    let top = pairs
        .iter()
        .position(|(h, k)| *h == whole && *k == whole)
        .ok_or_else(|| crate::Error::BadParameter("the pair (G, G) is missing".into()))?;
    let first = pairs.remove(top);
    pairs.insert(0, first);
    for (h, k) in &pairs {
        let v = is_strong_shoda_pair(g, h, k);
        if !v.holds {
            return Err(crate::Error::BadParameter(format!(
                "({}, {}) is not a strong Shoda pair: {:?}",
                g.subgroup_name(h),
                g.subgroup_name(k),
                v.failing
            )));
        }
    }
    let records = pairs
        .par_iter()
        .map(|(h, k)| make_record(g, h, k))
        .collect::<Result<Vec<_>>>()?;
    let order = g.order() as u64;
    let certificate_sum: u64 = records
        .iter()
        .map(|r| r.m * (order / r.h.len() as u64) * euler_phi(r.q))
        .sum();
    Ok(finish(g, records, certificate_sum))
}

/// Record for a pair already known to be a strong Shoda pair.
pub fn make_record(g: &Arc<FiniteGroup>, h: &Subgroup, k: &Subgroup) -> Result<ShodaPairRecord> {
    let n = g.normalizer(k);
    let q = (h.len() / k.len()) as u64;
    let generator = g
        .cyclic_generator_mod(h, k)
        .ok_or_else(|| crate::Error::BadParameter("H/K is not cyclic".into()))?;
    Ok(ShodaPairRecord {
        h: h.clone(),
        k: k.clone(),
        m: (g.order() / n.len()) as u64,
        n,
        q,
        q_factorization: factorize(q),
        generator,
        epsilon: epsilon(g, h, k)?,
        e: e_idempotent(g, h, k)?,
    })
}

pub fn are_equivalent(
    g: &Arc<FiniteGroup>,
    pair1: (&Subgroup, &Subgroup),
    pair2: (&Subgroup, &Subgroup),
) -> Result<bool> {
    let e1: QGElement = e_idempotent(g, pair1.0, pair1.1)?;
    let e2: QGElement = e_idempotent(g, pair2.0, pair2.1)?;
    Ok(e1 == e2)
}

impl SspFamily {
    /// Pairwise orthogonality of the idempotents (quadratic in the family size).
    pub fn is_orthogonal(&self) -> bool {
        self.records.iter().enumerate().all(|(i, r)| {
            self.records[i + 1..]
                .iter()
                .all(|s| r.e.are_orthogonal(&s.e).unwrap_or(false))
        })
    }
}

/// Outcome of the idempotent checks on a family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct IdempotentReport {
    pub central: bool,
    pub idempotent: bool,
    pub orthogonal: bool,
    pub sum_is_one: bool,
}

impl IdempotentReport {
    pub fn holds(&self) -> bool {
        self.central && self.idempotent && self.orthogonal && self.sum_is_one
    }
}

/// Checks that every `e_i` is a central idempotent, that they are pairwise
/// orthogonal and that they sum to one.
///
/// For central idempotents `e, f` the product `ef` is again an idempotent,
/// and an idempotent of `Q[G]` vanishes iff its coefficient at the
/// identity (its normalized trace) does, so orthogonality only needs that
/// coefficient. Otherwise the products are formed in full.
pub fn idempotent_suite(fam: &SspFamily) -> IdempotentReport {
    let g = &fam.group;
    let central = fam.records.par_iter().all(|r| r.e.is_central());
    let idempotent = fam.records.par_iter().all(|r| r.e.is_idempotent());
    let orthogonal = if central && idempotent {
        let n = fam.records.len();
        (0..n).into_par_iter().all(|i| {
            fam.records[i + 1..].iter().all(|s| {
                let mut t = crate::Rational::from_integer(0.into());
                for (x, c) in fam.records[i].e.terms() {
                    t += c * s.e.coeff(g.inv(x));
                }
                t == crate::Rational::from_integer(0.into())
            })
        })
    } else {
        fam.is_orthogonal()
    };
    let mut sum = QGElement::zero(g);
    for r in &fam.records {
        sum = sum.add(&r.e).expect("same parent");
    }
    IdempotentReport {
        central,
        idempotent,
        orthogonal,
        sum_is_one: sum.is_one(),
    }
}
