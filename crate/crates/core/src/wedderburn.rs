//! Simple components of `Q[G]` attached to strong Shoda pairs.
//!
//! For a strong Shoda pair `(H, K)` with `N = N_G(K)` and `[H:K] = q` the
//! component `Q[G] e(G, H, K)` is `M_[G:N]` of the crossed product
//! `Q(zeta_q) * N/H`, where `N/H` acts on `zeta_q` through conjugation of a
//! generator of `H/K` and the twisting is read off from coset
//! representatives.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::numtheory::{euler_phi, gcd, mult_order, unit_subgroup, units_mod};
use crate::shoda::{ShodaPairRecord, SspFamily};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ActionStructure {
    Trivial,
    /// `<r>`.
    Cyclic,
    /// `<r> x <-1>`.
    CyclicTimesMinusOne,
    /// Any other abelian shape (only possible when `q` is not a prime power).
    Other,
}

/// The image of `N/H` in `U(Z/qZ)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ActionImage {
    pub q: u64,
    /// Generators: `[r]` for cyclic, `[r, q - 1]` for `<r> x <-1>`.
    pub gens: Vec<u64>,
    /// `|N/H|`.
    pub order: u64,
    pub structure: ActionStructure,
    /// Every residue of the image, sorted.
    pub residues: Vec<u64>,
    /// For each residue, the least element `n` of `N` representing it.
    pub representatives: Vec<(u64, usize)>,
}

impl ActionImage {
    pub fn contains(&self, r: u64) -> bool {
        self.residues.binary_search(&(r % self.q.max(1))).is_ok()
    }
}

/// The subfield of `Q(zeta_q)` fixed by a subgroup `A` of `U(Z/qZ)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixedFieldDescriptor {
    pub q: u64,
    pub subgroup: Vec<u64>,
    pub degree: u64,
    /// `q'` when the fixed field is `Q(zeta_q')`, the least such.
    pub recognized: Option<u64>,
}

impl FixedFieldDescriptor {
    pub fn new(q: u64, subgroup: Vec<u64>) -> Self {
        let degree = euler_phi(q) / subgroup.len() as u64;
        let recognized = (1..=q).filter(|d| q.is_multiple_of(*d)).find(|&d| {
            let kernel: Vec<u64> = units_mod(q).into_iter().filter(|&x| x % d == 1 % d).collect();
            kernel == subgroup
        });
        FixedFieldDescriptor {
            q,
            subgroup,
            degree,
            recognized,
        }
    }
}

impl fmt::Display for FixedFieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.recognized {
            Some(1) | Some(2) => write!(f, "Q"),
            Some(r) => write!(f, "Q(z{r})"),
            None => {
                let gens = minimal_generators(&self.subgroup, self.q);
                let list: Vec<String> = gens.iter().map(u64::to_string).collect();
                write!(f, "Q(z{})^<{}>", self.q, list.join(","))
            }
        }
    }
}

/// A greedy generating set of a subgroup of `U(Z/qZ)`.
fn minimal_generators(sub: &[u64], q: u64) -> Vec<u64> {
    let mut gens = Vec::new();
    let mut span = unit_subgroup(&[], q);
    let mut by_order: Vec<u64> = sub.to_vec();
    by_order.sort_by_key(|&x| (std::cmp::Reverse(mult_order(x, q)), x));
    for x in by_order {
        if span.len() == sub.len() {
            break;
        }
        if span.binary_search(&x).is_err() {
            gens.push(x);
            span = unit_subgroup(&gens, q);
        }
    }
    gens
}

/// Split form `M_n(F)` of a component.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Simplified {
    pub degree: u64,
    pub field: FixedFieldDescriptor,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentDescriptor {
    pub ssp_index: usize,
    /// `[G:N]`.
    pub outer_degree: u64,
    pub q: u64,
    pub action: ActionImage,
    /// `(r, s, t)` with `n_r n_s = n_(rs) g^t k`.
    pub cocycle: Vec<(u64, u64, u64)>,
    /// Centre of the component.
    pub center: FixedFieldDescriptor,
    pub simplified: Option<Simplified>,
}

impl ComponentDescriptor {
    /// `dim_Q` of the component.
    pub fn dimension(&self) -> u64 {
        self.outer_degree.pow(2) * self.action.order * euler_phi(self.q)
    }

    pub fn display(&self) -> String {
        match &self.simplified {
            Some(s) if s.degree == 1 => s.field.to_string(),
            Some(s) => format!("M{}({})", s.degree, s.field),
            None => {
                let gens: Vec<String> = self.action.gens.iter().map(u64::to_string).collect();
                let cp = format!("Q(z{})*<{}>", self.q, gens.join(","));
                if self.outer_degree == 1 {
                    format!("({cp})")
                } else {
                    format!("M{}({cp})", self.outer_degree)
                }
            }
        }
    }
}

/// Residue `j` with `x K = g^j K`, if any.
fn residue_in(g: &FiniteGroup, rec: &ShodaPairRecord, x: usize) -> Option<u64> {
    let gi = g.inv(rec.generator);
    let mut y = x;
    for j in 0..rec.q {
        if rec.k.contains(y) {
            return Some(j);
        }
        y = g.mul(gi, y);
    }
    None
}

pub fn action_image(g: &FiniteGroup, rec: &ShodaPairRecord) -> Result<ActionImage> {
    let q = rec.q;
    let mut reps: BTreeMap<u64, usize> = BTreeMap::new();
    for n in g.right_transversal(&rec.h).into_iter().filter(|&n| rec.n.contains(n)) {
        let y = g.conj(rec.generator, n);
        let j = residue_in(g, rec, y).ok_or_else(|| Error::ActionNotFaithful(pair_name(g, rec)))?;
        reps.entry(j).or_insert(n);
    }
    // right_transversal above ranges over cosets of H in G, so count cosets inside N
    let cosets = (rec.n.len() / rec.h.len()) as u64;
    if reps.len() as u64 != cosets {
        return Err(Error::ActionNotFaithful(pair_name(g, rec)));
    }
    let residues: Vec<u64> = reps.keys().copied().collect();
    let one = 1 % q;
    let (structure, gens) = if residues == [one] {
        (ActionStructure::Trivial, vec![])
    } else if let Some(&r) = residues.iter().find(|&&r| mult_order(r, q) == cosets) {
        (ActionStructure::Cyclic, vec![r])
    } else {
        let minus = q - 1;
        let split = residues
            .iter()
            .copied()
            .filter(|&r| 2 * mult_order(r, q) == cosets)
            .find(|&r| residues.contains(&minus) && !unit_subgroup(&[r], q).contains(&minus));
        match split {
            Some(r) => (ActionStructure::CyclicTimesMinusOne, vec![r, minus]),
            None => (ActionStructure::Other, minimal_generators(&residues, q)),
        }
    };
    Ok(ActionImage {
        q,
        gens,
        order: cosets,
        structure,
        residues,
        representatives: reps.into_iter().collect(),
    })
}

fn pair_name(g: &FiniteGroup, rec: &ShodaPairRecord) -> String {
    format!("({}, {})", g.subgroup_name(&rec.h), g.subgroup_name(&rec.k))
}

/// Least representatives in `[1, q/2]` of `U(Z/qZ) / <A, -1>`, starting with 1.
pub fn i_set(action: &ActionImage) -> Vec<u64> {
    let q = action.q;
    if q <= 2 {
        return vec![1];
    }
    let mut gens = action.residues.clone();
    gens.push(q - 1);
    let big = unit_subgroup(&gens, q);
    let mut covered = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for k in 1..=q / 2 {
        if gcd(k, q) != 1 || covered.contains(&k) {
            continue;
        }
        out.push(k);
        for &a in &big {
            covered.insert(k * a % q);
        }
    }
    out
}

pub fn rank_central_units(fam: &SspFamily) -> Result<u64> {
    if !fam.complete {
        return Err(Error::IncompleteFamily);
    }
    let mut rank = 0;
    for rec in &fam.records {
        let a = action_image(&fam.group, rec)?;
        rank += i_set(&a).len() as u64 - 1;
    }
    Ok(rank)
}

pub fn component(g: &FiniteGroup, index: usize, rec: &ShodaPairRecord) -> Result<ComponentDescriptor> {
    let action = action_image(g, rec)?;
    let q = rec.q;
    let rep_of: BTreeMap<u64, usize> = action.representatives.iter().copied().collect();
    let mut cocycle = Vec::new();
    for (&r, &nr) in &rep_of {
        for (&s, &ns) in &rep_of {
            let rs = r * s % q.max(1);
            let z = g.mul(g.inv(rep_of[&rs]), g.mul(nr, ns));
            let t = residue_in(g, rec, z).ok_or_else(|| Error::ActionNotFaithful(pair_name(g, rec)))?;
            cocycle.push((r, s, t));
        }
    }
    let center = FixedFieldDescriptor::new(q, action.residues.clone());
    let outer = rec.m;
    let split = match action.structure {
        ActionStructure::Trivial => true,
        ActionStructure::Cyclic => {
            let m = action.order as i64;
            preimages(g, rec, &action, None).any(|n| rec.k.contains(g.pow(n, m)))
        }
        ActionStructure::CyclicTimesMinusOne => {
            let r = action.gens[0];
            let m1 = mult_order(r, q) as i64;
            let n1s: Vec<usize> = preimages(g, rec, &action, Some(r))
                .filter(|&n| rec.k.contains(g.pow(n, m1)))
                .collect();
            let n2s: Vec<usize> = preimages(g, rec, &action, Some(q - 1))
                .filter(|&n| rec.k.contains(g.pow(n, 2)))
                .collect();
            n1s.iter()
                .any(|&a| n2s.iter().any(|&b| rec.k.contains(g.commutator(a, b))))
        }
        ActionStructure::Other => false,
    };
    let simplified = split.then(|| Simplified {
        degree: outer * action.order,
        field: center.clone(),
    });
    Ok(ComponentDescriptor {
        ssp_index: index,
        outer_degree: outer,
        q,
        action,
        cocycle,
        center,
        simplified,
    })
}

/// Elements of `N` acting by `r`, or by any generator of the cyclic image
/// when `r` is `None`.
fn preimages<'a>(
    g: &'a FiniteGroup,
    rec: &'a ShodaPairRecord,
    action: &'a ActionImage,
    r: Option<u64>,
) -> impl Iterator<Item = usize> + 'a {
    let q = action.q;
    rec.n.members().iter().copied().filter(move |&n| {
        let Some(j) = residue_in(g, rec, g.conj(rec.generator, n)) else {
            return false;
        };
        match r {
            Some(r) => j == r,
            None => mult_order(j, q) == action.order,
        }
    })
}

/// Components of every record plus the global dimension audit.
#[derive(Clone, Debug, Serialize)]
pub struct Decomposition {
    pub components: Vec<ComponentDescriptor>,
    pub total_dimension: u64,
}

impl Decomposition {
    /// `display -> multiplicity`, in a stable order: by matrix degree, then
    /// centre degree, then name.
    pub fn multiset(&self) -> Vec<(String, usize)> {
        let mut counts: BTreeMap<(u64, u64, String), usize> = BTreeMap::new();
        for c in &self.components {
            let deg = c.simplified.as_ref().map_or(c.outer_degree, |s| s.degree);
            *counts.entry((deg, c.center.degree, c.display())).or_insert(0) += 1;
        }
        counts.into_iter().map(|((_, _, s), n)| (s, n)).collect()
    }
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .multiset()
            .into_iter()
            .map(|(s, n)| if n == 1 { s } else { format!("{s}^{n}") })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

pub fn decomposition(fam: &SspFamily) -> Result<Decomposition> {
    if !fam.complete {
        return Err(Error::IncompleteFamily);
    }
    let g = &*fam.group;
    let components = fam
        .records
        .par_iter()
        .enumerate()
        .map(|(i, r)| component(g, i, r))
        .collect::<Result<Vec<_>>>()?;
    let total: u64 = components.iter().map(ComponentDescriptor::dimension).sum();
    if total != g.order() as u64 {
        return Err(Error::DimensionMismatch {
            got: total,
            expected: g.order() as u64,
        });
    }
    Ok(Decomposition {
        components,
        total_dimension: total,
    })
}
