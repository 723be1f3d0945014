//! Finite groups stored as full Cayley tables, and their subgroup lattices.
//!
//! Elements are dense indices `0..order`. Products are looked up in a
//! row-major table, so every operation here is a table walk; groups up to a
//! few thousand elements are comfortable.

use std::cmp::Ordering;
use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::hash::{Hash, Hasher};

use fixedbitset::FixedBitSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Groups up to this order have associativity checked on every triple.
pub const FULL_ASSOCIATIVITY_LIMIT: usize = 256;
/// Random triples checked above [`FULL_ASSOCIATIVITY_LIMIT`].
pub const ASSOCIATIVITY_SAMPLES: usize = 1_000_000;
/// Seed of the deterministic triple schedule.
pub const ASSOCIATIVITY_SEED: u64 = 0x5353_5053_4348_4b31;
/// Default cap on the closure size in [`FiniteGroup::from_generators`].
pub const DEFAULT_CLOSURE_CAP: usize = 2048;
/// Default cap on the order for full subgroup enumeration.
pub const DEFAULT_SUBGROUP_CAP: usize = 1296;

#[derive(Clone)]
pub struct FiniteGroup {
    order: usize,
    mult: Vec<u32>,
    inv: Vec<u32>,
    identity: usize,
    labels: Option<Vec<String>>,
    generators: Vec<usize>,
    orders: Vec<u32>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("order", &self.order)
            .field("identity", &self.identity)
            .field("generators", &self.generators)
            .finish()
    }
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.mult == other.mult
    }
}

impl Eq for FiniteGroup {}

impl FiniteGroup {
    /// Validates a Cayley table. The identity is detected, it need not be
    /// element 0.
    pub fn from_cayley_table(table: &[Vec<usize>]) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return not_a_group("empty table", vec![]);
        }
        let mut mult = Vec::with_capacity(n * n);
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return not_a_group("table is not square", vec![i]);
            }
            for &x in row {
                if x >= n {
                    return not_a_group("entry out of range", vec![i, x]);
                }
                mult.push(x as u32);
            }
        }
        Self::from_parts(n, mult, None, None)
    }

    /// Builds a validated group from a flat row-major table.
    ///
    /// When `generators` is given, associativity above
    /// [`FULL_ASSOCIATIVITY_LIMIT`] is established from the identities
    /// `(xy)g = x(yg)` for all `x, y` and generators `g`, which imply full
    /// associativity by induction on word length, plus a sampled check.
    pub(crate) fn from_parts(
        n: usize,
        mult: Vec<u32>,
        labels: Option<Vec<String>>,
        generators: Option<Vec<usize>>,
    ) -> Result<Self> {
        let at = |a: usize, b: usize| mult[a * n + b] as usize;
        let mut seen = FixedBitSet::with_capacity(n);
        for a in 0..n {
            seen.clear();
            for b in 0..n {
                let x = at(a, b);
                if seen.put(x) {
                    return not_a_group("row is not a permutation", vec![a]);
                }
            }
        }
        for b in 0..n {
            seen.clear();
            for a in 0..n {
                if seen.put(at(a, b)) {
                    return not_a_group("column is not a permutation", vec![b]);
                }
            }
        }
        let identity = match (0..n).find(|&e| (0..n).all(|x| at(e, x) == x && at(x, e) == x)) {
            Some(e) => e,
            None => return not_a_group("no identity", vec![]),
        };
        let mut inv = vec![0u32; n];
        for a in 0..n {
            match (0..n).find(|&b| at(a, b) == identity) {
                Some(b) => inv[a] = b as u32,
                None => return not_a_group("missing inverse", vec![a]),
            }
        }
        if n <= FULL_ASSOCIATIVITY_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    let ab = at(a, b);
                    for c in 0..n {
                        if at(ab, c) != at(a, at(b, c)) {
                            return not_a_group("associativity fails", vec![a, b, c]);
                        }
                    }
                }
            }
        } else {
            if let Some(gens) = &generators {
                for &g in gens {
                    for a in 0..n {
                        for b in 0..n {
                            if at(at(a, b), g) != at(a, at(b, g)) {
                                return not_a_group("associativity fails", vec![a, b, g]);
                            }
                        }
                    }
                }
            }
            let mut rng = ChaCha8Rng::seed_from_u64(ASSOCIATIVITY_SEED);
            for _ in 0..ASSOCIATIVITY_SAMPLES {
                let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                if at(at(a, b), c) != at(a, at(b, c)) {
                    return not_a_group("associativity fails", vec![a, b, c]);
                }
            }
        }
        let mut group = FiniteGroup {
            order: n,
            mult,
            inv,
            identity,
            labels,
            generators: Vec::new(),
            orders: Vec::new(),
        };
        group.orders = (0..n).map(|x| group.compute_order(x)).collect();
        group.generators = match generators {
            Some(gens) if group.subgroup_generated(&gens).len() == n => gens,
            Some(_) => return not_a_group("declared generators do not generate", vec![]),
            None => group.greedy_generators(),
        };
        Ok(group)
    }

    /// Closure of a set of permutations of `0..degree` under composition.
    ///
    /// Products compose left to right: `(s * t)(x) = t(s(x))`. Element 0 of
    /// the result is the identity permutation and `generators` records the
    /// (distinct, non-identity) inputs.
    pub fn from_generators(perms: &[Vec<usize>], cap: usize) -> Result<Self> {
        let degree = perms.first().map_or(0, Vec::len);
        for p in perms {
            let mut seen = FixedBitSet::with_capacity(degree);
            if p.len() != degree || p.iter().any(|&x| x >= degree || seen.put(x)) {
                return Err(Error::Input("generators must be permutations of one set".into()));
            }
        }
        let compose = |s: &[usize], t: &[usize]| -> Vec<usize> { s.iter().map(|&x| t[x]).collect() };
        let identity: Vec<usize> = (0..degree).collect();
        let mut elements = vec![identity.clone()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
        index.insert(identity, 0);
        let mut gen_ids = Vec::new();
        for p in perms {
            if !index.contains_key(p) {
                index.insert(p.clone(), elements.len());
                elements.push(p.clone());
            }
            let id = index[p];
            if id != 0 && !gen_ids.contains(&id) {
                gen_ids.push(id);
            }
        }
        let mut i = 0;
        while i < elements.len() {
            for &g in &gen_ids {
                let y = compose(&elements[i], &elements[g]);
                if !index.contains_key(&y) {
                    if elements.len() >= cap {
                        return Err(Error::CapExceeded {
                            what: "permutation closure".into(),
                            cap,
                        });
                    }
                    index.insert(y.clone(), elements.len());
                    elements.push(y);
                }
            }
            i += 1;
        }
        let n = elements.len();
        let mut mult = Vec::with_capacity(n * n);
        for a in &elements {
            for b in &elements {
                mult.push(index[&compose(a, b)] as u32);
            }
        }
        Self::from_parts(n, mult, None, Some(gen_ids))
    }

    pub fn trivial() -> Self {
        Self::from_parts(1, vec![0], None, Some(vec![])).expect("trivial group")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    /// `t^-1 g t`.
    #[inline]
    pub fn conj(&self, g: usize, t: usize) -> usize {
        self.mul(self.mul(self.inv(t), g), t)
    }

    /// `a^-1 b^-1 a b`.
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn pow(&self, a: usize, e: i64) -> usize {
        let ord = self.orders[a] as i64;
        let e = e.rem_euclid(ord);
        let mut acc = self.identity;
        for _ in 0..e {
            acc = self.mul(acc, a);
        }
        acc
    }

    pub fn element_order(&self, a: usize) -> usize {
        self.orders[a] as usize
    }

    pub fn exponent(&self) -> usize {
        self.orders
            .iter()
            .fold(1u64, |acc, &o| crate::numtheory::lcm(acc, o as u64)) as usize
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.generators;
        g.iter().all(|&a| g.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn label(&self, a: usize) -> String {
        match &self.labels {
            Some(l) => l[a].clone(),
            None => format!("g{a}"),
        }
    }

    /// `<x,y,...>` from the stored generators of `s`; `<1>` when trivial.
    pub fn subgroup_name(&self, s: &Subgroup) -> String {
        if s.is_trivial() {
            return "<1>".into();
        }
        let gens: Vec<String> = s.generators().iter().map(|&x| self.label(x)).collect();
        format!("<{}>", gens.join(","))
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn element_by_label(&self, label: &str) -> Option<usize> {
        self.labels.as_ref()?.iter().position(|l| l == label)
    }

    /// Row `a` of the Cayley table.
    pub fn row(&self, a: usize) -> &[u32] {
        &self.mult[a * self.order..(a + 1) * self.order]
    }

    pub fn cayley_table(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|a| self.row(a).iter().map(|&x| x as usize).collect())
            .collect()
    }

    fn compute_order(&self, a: usize) -> u32 {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    fn greedy_generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut current = self.trivial_subgroup();
        // largest orders first keeps the list short
        let mut candidates: Vec<usize> = self.elements().collect();
        candidates.sort_by_key(|&x| std::cmp::Reverse(self.orders[x]));
        for x in candidates {
            if current.len() == self.order {
                break;
            }
            if !current.contains(x) {
                current = self.join_element(&current, x);
                gens.push(x);
            }
        }
        gens
    }

    // ---- subgroups -------------------------------------------------------

    pub fn trivial_subgroup(&self) -> Subgroup {
        let mut mask = FixedBitSet::with_capacity(self.order);
        mask.insert(self.identity);
        Subgroup {
            members: vec![self.identity],
            mask,
            gens: vec![],
        }
    }

    pub fn whole(&self) -> Subgroup {
        let mut mask = FixedBitSet::with_capacity(self.order);
        mask.insert_range(..);
        Subgroup {
            members: self.elements().collect(),
            mask,
            gens: self.generators.clone(),
        }
    }

    /// Wraps a member set, checking closure and Lagrange.
    pub fn subgroup_from_members(&self, members: &[usize]) -> Result<Subgroup> {
        let mut mask = FixedBitSet::with_capacity(self.order);
        for &m in members {
            if m >= self.order {
                return Err(Error::Input(format!("element {m} out of range")));
            }
            mask.insert(m);
        }
        if !mask.contains(self.identity) {
            return Err(Error::Input("subset does not contain the identity".into()));
        }
        for a in mask.ones() {
            if !mask.contains(self.inv(a)) || mask.ones().any(|b| !mask.contains(self.mul(a, b))) {
                return Err(Error::Input("subset is not closed".into()));
            }
        }
        let s = self.subgroup_generated(&mask.ones().collect::<Vec<_>>());
        assert_eq!(self.order % s.len(), 0, "Lagrange");
        Ok(s)
    }

    /// Smallest subgroup containing `seed`.
    pub fn subgroup_generated(&self, seed: &[usize]) -> Subgroup {
        let mut s = self.trivial_subgroup();
        for &x in seed {
            if !s.contains(x) {
                s = self.join_element(&s, x);
            }
        }
        s
    }

    /// `<base, x>` by adjoining right cosets of `base`.
    pub fn join_element(&self, base: &Subgroup, x: usize) -> Subgroup {
        if base.contains(x) {
            return base.clone();
        }
        let mut gens = base.gens.clone();
        gens.push(x);
        let mut mask = base.mask.clone();
        let mut members = base.members.clone();
        let mut reps = vec![self.identity];
        let mut i = 0;
        while i < reps.len() {
            let r = reps[i];
            for &s in &gens {
                let y = self.mul(r, s);
                if !mask.contains(y) {
                    reps.push(y);
                    for &h in &base.members {
                        let z = self.mul(h, y);
                        mask.insert(z);
                        members.push(z);
                    }
                }
            }
            i += 1;
        }
        members.sort_unstable();
        Subgroup { members, mask, gens }
    }

    pub fn join(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        b.gens.iter().fold(a.clone(), |acc, &x| self.join_element(&acc, x))
    }

    pub fn intersection(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let mut mask = a.mask.clone();
        mask.intersect_with(&b.mask);
        let members: Vec<usize> = mask.ones().collect();
        self.subgroup_generated(&members)
    }

    /// `{t^-1 k t : k in K}`.
    pub fn conjugate_subgroup(&self, k: &Subgroup, t: usize) -> Subgroup {
        let mut mask = FixedBitSet::with_capacity(self.order);
        let mut members: Vec<usize> = k.members.iter().map(|&x| self.conj(x, t)).collect();
        for &m in &members {
            mask.insert(m);
        }
        members.sort_unstable();
        let gens = k.gens.iter().map(|&x| self.conj(x, t)).collect();
        Subgroup { members, mask, gens }
    }

    /// `{g : K^g = K}`.
    pub fn normalizer(&self, k: &Subgroup) -> Subgroup {
        let members: Vec<usize> = self
            .elements()
            .filter(|&g| k.gens.iter().all(|&x| k.contains(self.conj(x, g))))
            .collect();
        self.subgroup_generated(&members)
    }

    pub fn centralizer(&self, k: &Subgroup) -> Subgroup {
        let members: Vec<usize> = self
            .elements()
            .filter(|&g| k.gens.iter().all(|&x| self.mul(x, g) == self.mul(g, x)))
            .collect();
        self.subgroup_generated(&members)
    }

    pub fn center(&self) -> Subgroup {
        self.centralizer(&self.whole())
    }

    pub fn is_normal(&self, k: &Subgroup) -> bool {
        self.generators
            .iter()
            .all(|&t| k.gens.iter().all(|&x| k.contains(self.conj(x, t))))
    }

    /// `K` normal in the subgroup `h` (requires `K <= H`).
    pub fn is_normal_in(&self, k: &Subgroup, h: &Subgroup) -> bool {
        k.is_subset(h)
            && h.gens
                .iter()
                .all(|&t| k.gens.iter().all(|&x| k.contains(self.conj(x, t))))
    }

    /// Smallest subgroup containing `seed` and normalized by `h`.
    pub fn normal_closure_in(&self, seed: &Subgroup, h: &Subgroup) -> Subgroup {
        let mut s = seed.clone();
        loop {
            let extra = h
                .gens
                .iter()
                .flat_map(|&t| s.gens.iter().map(move |&x| (x, t)))
                .map(|(x, t)| self.conj(x, t))
                .find(|&y| !s.contains(y));
            match extra {
                Some(y) => s = self.join_element(&s, y),
                None => return s,
            }
        }
    }

    /// Largest normal subgroup of `G` inside `K`.
    pub fn core_of(&self, k: &Subgroup) -> Subgroup {
        let mut mask = k.mask.clone();
        for t in self.right_transversal(&self.normalizer(k)) {
            let c = self.conjugate_subgroup(k, t);
            mask.intersect_with(&c.mask);
        }
        self.subgroup_generated(&mask.ones().collect::<Vec<_>>())
    }

    pub fn is_abelian_subgroup(&self, s: &Subgroup) -> bool {
        s.gens
            .iter()
            .all(|&a| s.gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// `H/K` is abelian (requires `K` normal in `H`).
    pub fn is_abelian_section(&self, h: &Subgroup, k: &Subgroup) -> bool {
        h.gens
            .iter()
            .all(|&a| h.gens.iter().all(|&b| k.contains(self.commutator(a, b))))
    }

    /// Smallest `t >= 1` with `x^t in K`.
    pub fn order_modulo(&self, x: usize, k: &Subgroup) -> usize {
        let mut y = x;
        let mut t = 1;
        while !k.contains(y) {
            y = self.mul(y, x);
            t += 1;
        }
        t
    }

    /// When `H/K` is cyclic (with `K` normal in `H`), the least element index
    /// whose coset generates it.
    pub fn cyclic_generator_mod(&self, h: &Subgroup, k: &Subgroup) -> Option<usize> {
        let index = h.len() / k.len();
        h.members.iter().copied().find(|&x| self.order_modulo(x, k) == index)
    }

    /// Generator of `S` with least element index, when `S` is cyclic.
    pub fn is_cyclic(&self, s: &Subgroup) -> Option<usize> {
        s.members.iter().copied().find(|&x| self.element_order(x) == s.len())
    }

    /// Right coset representatives of `S` (cosets `S t`), the identity for
    /// `S` itself and the least element index otherwise, sorted.
    pub fn right_transversal(&self, s: &Subgroup) -> Vec<usize> {
        let mut covered = FixedBitSet::with_capacity(self.order);
        let mut reps = Vec::new();
        for t in std::iter::once(self.identity).chain(self.elements()) {
            if covered.contains(t) {
                continue;
            }
            reps.push(t);
            for &h in &s.members {
                covered.insert(self.mul(h, t));
            }
        }
        reps.sort_unstable();
        reps
    }

    /// Every subgroup, built by iterated joins with cyclic subgroups, sorted
    /// by `(size, members)`.
    pub fn all_subgroups(&self, cap: usize) -> Result<Vec<Subgroup>> {
        if self.order > cap {
            return Err(Error::CapExceeded {
                what: format!("subgroup enumeration of order {}", self.order),
                cap,
            });
        }
        let mut index: HashMap<FixedBitSet, usize> = HashMap::new();
        let mut all: Vec<Subgroup> = Vec::new();
        let mut cyclic_gens: Vec<usize> = Vec::new();
        let push = |s: Subgroup, all: &mut Vec<Subgroup>, index: &mut HashMap<FixedBitSet, usize>| {
            if !index.contains_key(&s.mask) {
                index.insert(s.mask.clone(), all.len());
                all.push(s);
                true
            } else {
                false
            }
        };
        push(self.trivial_subgroup(), &mut all, &mut index);
        for x in self.elements() {
            if x == self.identity {
                continue;
            }
            let c = self.join_element(&self.trivial_subgroup(), x);
            if push(c, &mut all, &mut index) {
                cyclic_gens.push(x);
            }
        }
        let mut queue: VecDeque<usize> = (1..all.len()).collect();
        while let Some(i) = queue.pop_front() {
            for &x in &cyclic_gens {
                if all[i].contains(x) {
                    continue;
                }
                let j = self.join_element(&all[i], x);
                if push(j, &mut all, &mut index) {
                    queue.push_back(all.len() - 1);
                }
            }
        }
        all.sort();
        Ok(all)
    }

    pub fn all_normal_subgroups(&self, cap: usize) -> Result<Vec<Subgroup>> {
        Ok(self
            .all_subgroups(cap)?
            .into_iter()
            .filter(|s| self.is_normal(s))
            .collect())
    }

    pub fn quotient(&self, n: &Subgroup) -> Result<QuotientMap> {
        if !self.is_normal(n) {
            return Err(Error::NotNormal(format!("subgroup of order {}", n.len())));
        }
        let mut projection = vec![usize::MAX; self.order];
        let mut section = Vec::new();
        for t in self.right_transversal(n) {
            let q = section.len();
            section.push(t);
            for &h in &n.members {
                projection[self.mul(h, t)] = q;
            }
        }
        let m = section.len();
        let mut mult = Vec::with_capacity(m * m);
        for &a in &section {
            for &b in &section {
                mult.push(projection[self.mul(a, b)] as u32);
            }
        }
        let gens: Vec<usize> = self.generators.iter().map(|&g| projection[g]).collect();
        let quotient = FiniteGroup::from_parts(m, mult, None, Some(gens))?;
        Ok(QuotientMap {
            kernel: n.clone(),
            quotient,
            projection,
            section,
        })
    }

    /// `C` is an abelian subgroup of `self` contained in no larger abelian
    /// subgroup, i.e. it is its own centralizer.
    pub fn maximal_abelian_in(&self, c: &Subgroup) -> Result<bool> {
        if !self.is_abelian_subgroup(c) {
            return Err(Error::NotAbelian);
        }
        Ok(self.centralizer(c).len() == c.len())
    }
}

fn not_a_group<T>(reason: &str, witness: Vec<usize>) -> Result<T> {
    Err(Error::NotAGroup {
        reason: reason.into(),
        witness,
    })
}

/// A subgroup of some [`FiniteGroup`], stored as its sorted member list plus
/// a membership mask and a small generating set. The parent group is passed
/// alongside at every use.
#[derive(Clone, Debug)]
pub struct Subgroup {
    members: Vec<usize>,
    mask: FixedBitSet,
    gens: Vec<usize>,
}

impl Subgroup {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn generators(&self) -> &[usize] {
        &self.gens
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.mask.contains(x)
    }

    pub fn is_subset(&self, other: &Subgroup) -> bool {
        self.mask.is_subset(&other.mask)
    }

    pub fn mask(&self) -> &FixedBitSet {
        &self.mask
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}

impl Eq for Subgroup {}

impl Hash for Subgroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.members.hash(state);
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.members.len(), &self.members).cmp(&(other.members.len(), &other.members))
    }
}

/// Canonical projection `G -> G/N`.
#[derive(Clone, Debug)]
pub struct QuotientMap {
    pub kernel: Subgroup,
    pub quotient: FiniteGroup,
    /// Source element to quotient element.
    pub projection: Vec<usize>,
    /// One coset representative per quotient element.
    pub section: Vec<usize>,
}

impl QuotientMap {
    pub fn project(&self, x: usize) -> usize {
        self.projection[x]
    }

    pub fn lift(&self, q: usize) -> usize {
        self.section[q]
    }

    /// A source element whose image generates the quotient, if it is cyclic.
    pub fn cyclic_generator(&self) -> Option<usize> {
        let q = &self.quotient;
        q.is_cyclic(&q.whole()).map(|g| self.section[g])
    }
}
