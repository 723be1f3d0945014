//! Upper bound on the index of the subgroup generated by the virtual basis in
//! the group of central units of `Z[G]`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;

use crate::bass::{default_ngm_cap, n_GM, n_hk};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::numtheory::{factorize, gcd, lcm, mult_order, prime_power};
use crate::shoda::{ShodaPairRecord, SspFamily};
use crate::wedderburn::{action_image, i_set, ActionImage, ActionStructure};
use crate::Integer;

/// Conductors whose maximal real cyclotomic subfield has class number one.
pub const CLASS_NUMBER_ONE: [u64; 20] = [
    1, 2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 32, 49, 64, 81, 121, 125, 128,
];

/// `h^+` lookup: the built-in table plus user supplied values.
#[derive(Clone, Debug, Default)]
pub struct ClassNumbers {
    overrides: BTreeMap<u64, u64>,
}

impl ClassNumbers {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_overrides(overrides: impl IntoIterator<Item = (u64, u64)>) -> Self {
        ClassNumbers {
            overrides: overrides.into_iter().collect(),
        }
    }

    pub fn set(&mut self, q: u64, h: u64) {
        self.overrides.insert(q, h);
    }

    pub fn h_plus(&self, q: u64) -> Result<u64> {
        if let Some(&h) = self.overrides.get(&q) {
            return Ok(h);
        }
        if CLASS_NUMBER_ONE.contains(&q) {
            Ok(1)
        } else {
            Err(Error::UnknownClassNumber(q))
        }
    }
}

/// Product of small factors, kept both as a big integer and factorized.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize)]
pub struct Factored {
    #[serde(serialize_with = "as_string")]
    pub value: Integer,
    pub factors: BTreeMap<u64, u32>,
}

fn as_string<S: serde::Serializer>(v: &Integer, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

impl Factored {
    pub fn one() -> Self {
        Factored {
            value: BigInt::one(),
            factors: BTreeMap::new(),
        }
    }

    pub fn from_u64(n: u64) -> Self {
        let mut f = Factored::one();
        f.mul_u64(n);
        f
    }

    pub fn mul_u64(&mut self, n: u64) {
        self.value *= n;
        for (p, e) in factorize(n) {
            *self.factors.entry(p).or_default() += e;
        }
    }

    pub fn mul(&mut self, other: &Factored) {
        self.value *= &other.value;
        for (&p, &e) in &other.factors {
            *self.factors.entry(p).or_default() += e;
        }
    }

    pub fn pow(&self, e: u32) -> Factored {
        Factored {
            value: num_traits::pow(self.value.clone(), e as usize),
            factors: self.factors.iter().map(|(&p, &k)| (p, k * e)).collect(),
        }
    }
}

impl fmt::Display for Factored {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(p, e)| if *e == 1 { p.to_string() } else { format!("{p}^{e}") })
            .collect();
        write!(f, "{}", parts.join(" * "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundRow {
    pub ssp_index: usize,
    pub q: u64,
    pub p: u64,
    pub n: u32,
    pub i_size: usize,
    pub d: u32,
    pub o: u64,
    pub l: u64,
    pub n_hk: u64,
    pub frak_o: Factored,
    pub h_plus: u64,
    pub action_order: u64,
    pub factor: Factored,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub rows: Vec<BoundRow>,
    pub total: Factored,
}

impl BoundReport {
    /// The total rebuilt from the rows.
    pub fn recompute(&self) -> Factored {
        let mut t = Factored::from_u64(2);
        for r in &self.rows {
            t.mul(&r.factor);
        }
        t
    }
}

/// `1` if `-1` lies in the cyclic part `<r>` of the action, `2` otherwise.
pub fn d_value(action: &ActionImage) -> u32 {
    let q = action.q;
    if q <= 2 {
        return 1;
    }
    match action.structure {
        ActionStructure::Cyclic if action.contains(q - 1) => 1,
        _ => 2,
    }
}

/// The torsion order attached to a record with `|I| = 1`.
pub fn o_value(action: &ActionImage) -> u64 {
    let Some((p, n)) = prime_power(action.q) else { return 2 };
    let cyclic = matches!(action.structure, ActionStructure::Trivial | ActionStructure::Cyclic);
    // a cyclic image lies in the kernel of reduction mod m iff its generator does
    let all_one_mod = |m: u64| action.residues.iter().all(|r| r % m == 1);
    if p == 2 && cyclic && n >= 2 && all_one_mod(4) {
        4
    } else if p == 3 && cyclic && all_one_mod(3) {
        6
    } else {
        2
    }
}

/// `prod_{1 < k < q/2, (k, p) = 1} o_q(k) p^(n-1) n_{H,K}`.
pub fn frak_o(q: u64, n_hk: u64) -> Factored {
    let mut out = Factored::one();
    let Some((p, n)) = prime_power(q) else { return out };
    for k in (2..).take_while(|&k| 2 * k < q).filter(|&k| gcd(k, p) == 1) {
        out.mul_u64(mult_order(k, q));
        out.mul_u64(p.pow(n - 1));
        out.mul_u64(n_hk);
    }
    out
}

fn row(g: &FiniteGroup, index: usize, rec: &ShodaPairRecord, h: &ClassNumbers, cap: u64) -> Result<BoundRow> {
    let q = rec.q;
    let (p, n) = prime_power(q).ok_or(Error::PrimePowerRequired(q))?;
    let action = action_image(g, rec)?;
    let i_size = i_set(&action).len();
    let d = d_value(&action);
    let o = o_value(&action);
    let l = lcm(2, p);
    let action_order = action.order;
    let (n_hk, frak, h_plus, factor) = if i_size == 1 {
        (None, Factored::one(), None, Factored::from_u64(o))
    } else {
        let nv = n_hk(g, rec, cap)?;
        let hp = h.h_plus(q)?;
        let frak = frak_o(q, nv);
        let mut f = Factored::from_u64(hp);
        f.mul_u64(l);
        f.mul_u64(p.pow(n - 1));
        f.mul(&frak);
        let mut inner = Factored::from_u64(l.pow(d - 1));
        inner.mul_u64(action_order);
        f.mul(&inner.pow(i_size as u32 - 1));
        (Some(nv), frak, Some(hp), f)
    };
    Ok(BoundRow {
        ssp_index: index,
        q,
        p,
        n,
        i_size,
        d,
        o,
        l,
        n_hk: n_hk.unwrap_or(0),
        frak_o: frak,
        h_plus: h_plus.unwrap_or(0),
        action_order,
        factor,
    })
}

/// The bound for a complete family whose every `[H:K]` is a prime power.
/// Rows cover the records after the leading `(G, G)`; `n_hk` and `h_plus`
/// are reported as 0 where they do not enter.
pub fn index_bound(fam: &SspFamily, h: &ClassNumbers) -> Result<BoundReport> {
    index_bound_with_cap(fam, h, default_ngm_cap(&fam.group))
}

pub fn index_bound_with_cap(fam: &SspFamily, h: &ClassNumbers, cap: u64) -> Result<BoundReport> {
    if !fam.complete {
        return Err(Error::IncompleteFamily);
    }
    let g = &fam.group;
    if let Some(r) = fam.records.iter().find(|r| r.q > 1 && prime_power(r.q).is_none()) {
        return Err(Error::PrimePowerRequired(r.q));
    }
    let rows = fam
        .records
        .par_iter()
        .enumerate()
        .skip(1)
        .map(|(i, rec)| row(g, i, rec, h, cap))
        .collect::<Result<Vec<_>>>()?;
    let mut report = BoundReport {
        rows,
        total: Factored::one(),
    };
    report.total = report.recompute();
    Ok(report)
}

/// Whether the central units are only `+-Z(G)`, i.e. every `|I| = 1`.
pub fn trivial_central_units(fam: &SspFamily) -> Result<bool> {
    for rec in &fam.records {
        if i_set(&action_image(&fam.group, rec)?).len() != 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// One factor per subgroup `K` with cyclic quotient.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbelianRow {
    pub k_order: usize,
    pub q: u64,
    pub n_gk: u64,
    pub h_plus: u64,
    pub factor: Factored,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbelianBound {
    pub p: u64,
    pub rank_zero: bool,
    pub rows: Vec<AbelianRow>,
    pub total: Factored,
}

/// The index bound for the full unit group of `Z[G]`, `G` an abelian
/// `p`-group.
pub fn abelian_bound(g: &FiniteGroup, h: &ClassNumbers) -> Result<AbelianBound> {
    if !g.is_abelian() {
        return Err(Error::NotAbelian);
    }
    if g.order() == 1 {
        return Ok(AbelianBound {
            p: 1,
            rank_zero: true,
            rows: vec![],
            total: Factored::one(),
        });
    }
    let (p, _) = prime_power(g.order() as u64).ok_or(Error::PrimePowerRequired(g.order() as u64))?;
    let cap = default_ngm_cap(g);
    let subgroups = g.all_subgroups(crate::group::DEFAULT_SUBGROUP_CAP.max(g.order()))?;
    let cyclic_quotient: Vec<_> = subgroups
        .into_iter()
        .filter(|k| {
            let q = g.order() / k.len();
            g.elements().any(|x| g.order_modulo(x, k) == q)
        })
        .collect();
    let rows = cyclic_quotient
        .par_iter()
        .map(|k| {
            let q = (g.order() / k.len()) as u64;
            let n_gk = n_GM(g, k, cap)?;
            let hp = h.h_plus(q)?;
            let mut f = Factored::one();
            // the odd case carries an extra 2 in each outer and inner factor
            let lead = if p == 2 { 1 } else { 2 };
            f.mul_u64(lead * q);
            f.mul_u64(hp);
            let limit = if p == 2 { q / 2 } else { q.div_ceil(2) };
            for kk in (2..limit).filter(|&kk| gcd(kk, p) == 1) {
                f.mul_u64(lead * q);
                f.mul_u64(mult_order(kk, q));
                f.mul_u64(n_gk);
            }
            Ok(AbelianRow {
                k_order: k.len(),
                q,
                n_gk,
                h_plus: hp,
                factor: f,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut total = if p == 2 { Factored::from_u64(2) } else { Factored::one() };
    for r in &rows {
        total.mul(&r.factor);
    }
    Ok(AbelianBound {
        p,
        rank_zero: !rows.iter().any(|r| r.q >= 5),
        rows,
        total,
    })
}
