//! Sparse elements of the group ring `T[G]` and the idempotents built from
//! subgroup averages.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};
use crate::numtheory::prime_power;
use crate::scalar::{ExactRational, Field, Scalar};
use crate::Rational;

/// An element `sum c_g g` of `T[G]`. Zero coefficients are never stored.
#[derive(Clone, Debug)]
pub struct GroupRingElement<T> {
    parent: Arc<FiniteGroup>,
    coeffs: BTreeMap<usize, T>,
}

impl<T: Scalar> PartialEq for GroupRingElement<T> {
    fn eq(&self, other: &Self) -> bool {
        same_parent(&self.parent, &other.parent) && self.coeffs == other.coeffs
    }
}

fn same_parent(a: &Arc<FiniteGroup>, b: &Arc<FiniteGroup>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl<T: Scalar> GroupRingElement<T> {
    pub fn zero(parent: &Arc<FiniteGroup>) -> Self {
        GroupRingElement {
            parent: parent.clone(),
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(parent: &Arc<FiniteGroup>) -> Self {
        Self::basis(parent, parent.identity())
    }

    /// The group element `g` itself.
    pub fn basis(parent: &Arc<FiniteGroup>, g: usize) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(g, T::one());
        GroupRingElement {
            parent: parent.clone(),
            coeffs,
        }
    }

    pub fn from_coeffs(parent: &Arc<FiniteGroup>, pairs: impl IntoIterator<Item = (usize, T)>) -> Self {
        let mut x = Self::zero(parent);
        for (g, c) in pairs {
            assert!(g < parent.order(), "element {g} out of range");
            x.add_term(g, c);
        }
        x
    }

    /// The sum of the elements of `s`.
    pub fn subgroup_sum(parent: &Arc<FiniteGroup>, s: &Subgroup) -> Self {
        Self::from_coeffs(parent, s.members().iter().map(|&g| (g, T::one())))
    }

    fn add_term(&mut self, g: usize, c: T) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.get_mut(&g) {
            Some(v) => {
                let s = v.clone() + c;
                if s.is_zero() {
                    self.coeffs.remove(&g);
                } else {
                    *v = s;
                }
            }
            None => {
                self.coeffs.insert(g, c);
            }
        }
    }

    pub fn parent(&self) -> &Arc<FiniteGroup> {
        &self.parent
    }

    pub fn coeff(&self, g: usize) -> T {
        self.coeffs.get(&g).cloned().unwrap_or_else(T::zero)
    }

    /// `(element, coefficient)` pairs in index order.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &T)> {
        self.coeffs.iter().map(|(&g, c)| (g, c))
    }

    pub fn support(&self) -> Vec<usize> {
        self.coeffs.keys().copied().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        *self == Self::one(&self.parent)
    }

    /// Sum of the coefficients.
    pub fn augmentation(&self) -> T {
        self.coeffs.values().fold(T::zero(), |a, c| a + c.clone())
    }

    fn check_parent(&self, other: &Self) -> Result<()> {
        if same_parent(&self.parent, &other.parent) {
            Ok(())
        } else {
            Err(Error::ParentMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_parent(other)?;
        let mut out = self.clone();
        for (&g, c) in &other.coeffs {
            out.add_term(g, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-T::one())
    }

    pub fn scale(&self, c: &T) -> Self {
        if c.is_zero() {
            return Self::zero(&self.parent);
        }
        GroupRingElement {
            parent: self.parent.clone(),
            coeffs: self.coeffs.iter().map(|(&g, v)| (g, v.clone() * c.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_parent(other)?;
        let g = &self.parent;
        let mut acc: Vec<Option<T>> = vec![None; g.order()];
        for (&a, ca) in &self.coeffs {
            let row = g.row(a);
            for (&b, cb) in &other.coeffs {
                let slot = &mut acc[row[b] as usize];
                let term = ca.clone() * cb.clone();
                *slot = Some(match slot.take() {
                    Some(v) => v + term,
                    None => term,
                });
            }
        }
        let coeffs = acc
            .into_iter()
            .enumerate()
            .filter_map(|(i, c)| c.filter(|c| !c.is_zero()).map(|c| (i, c)))
            .collect();
        Ok(GroupRingElement {
            parent: self.parent.clone(),
            coeffs,
        })
    }

    /// `t^-1 x t`: the coefficient of `g` moves to `t^-1 g t`.
    pub fn conjugate(&self, t: usize) -> Self {
        let g = &self.parent;
        GroupRingElement {
            parent: self.parent.clone(),
            coeffs: self.coeffs.iter().map(|(&x, c)| (g.conj(x, t), c.clone())).collect(),
        }
    }

    pub fn is_idempotent(&self) -> bool {
        self.mul(self).map(|sq| sq == *self).unwrap_or(false)
    }

    /// Commutes with every generator of the parent group.
    pub fn is_central(&self) -> bool {
        self.parent.generators().iter().all(|&t| self.conjugate(t) == *self)
    }

    pub fn are_orthogonal(&self, other: &Self) -> Result<bool> {
        Ok(self.mul(other)?.is_zero() && other.mul(self)?.is_zero())
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.parent);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same parent");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("same parent");
            }
        }
        acc
    }
}

impl<T: Field> GroupRingElement<T> {
    /// `(1/|K|) sum_{k in K} k`.
    pub fn hat(parent: &Arc<FiniteGroup>, k: &Subgroup) -> Self {
        let c = T::one() / T::from_int(k.len() as i64);
        Self::from_coeffs(parent, k.members().iter().map(|&g| (g, c.clone())))
    }
}

impl<T: ExactRational> GroupRingElement<T> {
    /// The same element with rational coefficients.
    pub fn to_rational(&self) -> GroupRingElement<Rational> {
        GroupRingElement {
            parent: self.parent.clone(),
            coeffs: self
                .coeffs
                .iter()
                .map(|(&g, c)| (g, c.to_rational().expect("exact")))
                .collect(),
        }
    }

    /// Converts coefficients, failing if one is not representable in `T`.
    pub fn from_rational(x: &GroupRingElement<Rational>) -> Option<Self> {
        let mut coeffs = BTreeMap::new();
        for (&g, c) in &x.coeffs {
            coeffs.insert(g, T::from_rational(c)?);
        }
        Some(GroupRingElement {
            parent: x.parent.clone(),
            coeffs,
        })
    }

    /// `[{"element": label, "coeff": "num/den"}, ...]` in index order.
    pub fn to_json(&self) -> Value {
        let g = &self.parent;
        Value::Array(
            self.coeffs
                .iter()
                .map(|(&x, c)| {
                    let r = c.to_rational().expect("exact");
                    let element = match g.labels() {
                        Some(l) => json!(l[x]),
                        None => json!(x),
                    };
                    json!({"element": element, "coeff": format!("{}/{}", r.numer(), r.denom())})
                })
                .collect(),
        )
    }

    /// Inverse of [`GroupRingElement::to_json`]; elements may be labels or
    /// indices and coefficients `"n"` or `"n/d"`.
    pub fn from_json(parent: &Arc<FiniteGroup>, v: &Value) -> Result<Self> {
        let arr = v
            .as_array()
            .ok_or_else(|| Error::Input("group ring element must be a list".into()))?;
        let mut x = Self::zero(parent);
        for item in arr {
            let g = match &item["element"] {
                Value::Number(n) => n.as_u64().map(|n| n as usize),
                Value::String(s) => parent.element_by_label(s).or_else(|| s.parse().ok()),
                _ => None,
            }
            .filter(|&g| g < parent.order())
            .ok_or_else(|| Error::Input(format!("unknown element {}", item["element"])))?;
            let c = match &item["coeff"] {
                Value::String(s) => parse_rational(s),
                Value::Number(n) => n.as_i64().map(|n| Rational::from_integer(n.into())),
                _ => None,
            }
            .ok_or_else(|| Error::Input(format!("bad coefficient {}", item["coeff"])))?;
            let c = T::from_rational(&c).ok_or_else(|| Error::Input(format!("coefficient {c} not representable")))?;
            x.add_term(g, c);
        }
        Ok(x)
    }
}

fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let d: crate::Integer = d.trim().parse().ok()?;
            if d == 0.into() {
                return None;
            }
            Some(Rational::new(n.trim().parse().ok()?, d))
        }
        None => Some(Rational::from_integer(s.parse().ok()?)),
    }
}

/// Minimal members of `{M : K < M, M normal in H}`.
pub fn minimal_normals_above(g: &FiniteGroup, h: &Subgroup, k: &Subgroup) -> Result<Vec<Subgroup>> {
    if !g.is_normal_in(k, h) {
        return Err(Error::NotNormal("K is not normal in H".into()));
    }
    if h.len() == k.len() {
        return Ok(vec![]);
    }
    let index = (h.len() / k.len()) as u64;
    let mut found: Vec<Subgroup> = Vec::new();
    if let Some((l, _)) = prime_power(index) {
        // In a p-group every minimal normal subgroup is central of order p.
        let mut covered = k.mask().clone();
        for &x in h.members() {
            if covered.contains(x) || !k.contains(g.pow(x, l as i64)) {
                continue;
            }
            if h.generators().iter().all(|&t| k.contains(g.commutator(x, t))) {
                let m = g.join_element(k, x);
                covered.union_with(m.mask());
                found.push(m);
            }
        }
    } else {
        let mut candidates: Vec<Subgroup> = Vec::new();
        for &x in h.members() {
            if k.contains(x) {
                continue;
            }
            let m = g.normal_closure_in(&g.join_element(k, x), h);
            if !candidates.contains(&m) {
                candidates.push(m);
            }
        }
        for c in &candidates {
            if !candidates.iter().any(|d| d.len() < c.len() && d.is_subset(c)) {
                found.push(c.clone());
            }
        }
    }
    found.sort();
    Ok(found)
}

/// `epsilon(H, K)` as a combination `sum c_L L^` of subgroup averages.
///
/// Distinct `M` normal in `H` above `K` satisfy `M^ L^ = (ML)^`, so the
/// product over minimal normal subgroups expands without touching group ring
/// multiplication.
pub fn epsilon_terms(g: &FiniteGroup, h: &Subgroup, k: &Subgroup) -> Result<Vec<(Subgroup, i64)>> {
    if h.len() == k.len() {
        if !g.is_normal_in(k, h) {
            return Err(Error::NotNormal("K is not normal in H".into()));
        }
        return Ok(vec![(h.clone(), 1)]);
    }
    let minimal = minimal_normals_above(g, h, k)?;
    let mut terms: BTreeMap<Subgroup, i64> = BTreeMap::new();
    terms.insert(k.clone(), 1);
    for m in &minimal {
        let mut next: BTreeMap<Subgroup, i64> = BTreeMap::new();
        for (l, c) in terms {
            *next.entry(l.clone()).or_insert(0) += c;
            *next.entry(g.join(&l, m)).or_insert(0) -= c;
        }
        next.retain(|_, c| *c != 0);
        terms = next;
    }
    Ok(terms.into_iter().collect())
}

pub fn epsilon<T: Field>(parent: &Arc<FiniteGroup>, h: &Subgroup, k: &Subgroup) -> Result<GroupRingElement<T>> {
    let mut acc = GroupRingElement::zero(parent);
    for (l, c) in epsilon_terms(parent, h, k)? {
        acc = acc.add(&GroupRingElement::hat(parent, &l).scale(&T::from_int(c)))?;
    }
    Ok(acc)
}

/// The distinct `G`-conjugates of `epsilon(H, K)`.
pub fn distinct_conjugates<T: Field>(
    parent: &Arc<FiniteGroup>,
    h: &Subgroup,
    k: &Subgroup,
) -> Result<Vec<GroupRingElement<T>>> {
    let g = &**parent;
    let eps: GroupRingElement<T> = epsilon(parent, h, k)?;
    let stab = g.intersection(&g.normalizer(h), &g.normalizer(k));
    let mut out: Vec<GroupRingElement<T>> = Vec::new();
    for t in g.right_transversal(&stab) {
        let c = eps.conjugate(t);
        if !out.contains(&c) {
            out.push(c);
        }
    }
    Ok(out)
}

/// `e(G, H, K)`, the sum of the distinct `G`-conjugates of `epsilon(H, K)`.
pub fn e_idempotent<T: Field>(parent: &Arc<FiniteGroup>, h: &Subgroup, k: &Subgroup) -> Result<GroupRingElement<T>> {
    let mut acc = GroupRingElement::zero(parent);
    for c in distinct_conjugates(parent, h, k)? {
        acc = acc.add(&c)?;
    }
    Ok(acc)
}
