//! Reference values for the catalog families: complete irredundant sets of
//! strong Shoda pairs as printed in the literature, ranks of the central
//! unit groups, Wedderburn components, exponents `n_{H,K}` and index bounds.
//! `verify` and the test suite compare computed results against these.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::bound::Factored;
use crate::catalog::{word, CatalogEntry, Family};
use crate::error::Result;
use crate::group::{FiniteGroup, Subgroup};
use crate::group_ring::e_idempotent;
use crate::shoda::SspFamily;
use crate::QGElement;

/// A pair given by generator words; `None` for `H` is the whole group and an
/// empty `K` list is the trivial subgroup.
pub type WordPair = (Option<Vec<String>>, Vec<String>);

/// The printed pair list, when there is one for this entry.
pub fn published_pairs(entry: &CatalogEntry) -> Option<Vec<WordPair>> {
    let p = entry.p.unwrap_or(2);
    let out = pairs_for(entry.family, p, entry.d.unwrap_or(2));
    (!out.is_empty()).then_some(out)
}

/// Resolve a word pair inside `g`.
pub fn resolve(g: &FiniteGroup, pair: &WordPair) -> Result<(Subgroup, Subgroup)> {
    let sub = |ws: &[String]| -> Result<Subgroup> {
        let gens = ws.iter().map(|x| word(g, x)).collect::<Result<Vec<_>>>()?;
        Ok(g.subgroup_generated(&gens))
    };
    let h = match &pair.0 {
        Some(ws) => sub(ws)?,
        None => g.whole(),
    };
    Ok((h, sub(&pair.1)?))
}

fn w(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

fn top(k: &[&str]) -> WordPair {
    (None, w(k))
}

fn pair(h: &[&str], k: &[&str]) -> WordPair {
    (Some(w(h)), w(k))
}

fn pairs_for(f: Family, p: u64, d: u64) -> Vec<WordPair> {
    let all = |name: &str| -> Vec<&str> {
        match name {
            "abc" => vec!["a", "b", "c"],
            "abcd" => vec!["a", "b", "c", "d"],
            _ => vec!["a", "b"],
        }
    };
    let range = 0..p;
    let mut out = Vec::new();
    match f {
        Family::G1 => {
            out.push(pair(&["a"], &[]));
            out.push(top(&["a"]));
            out.push(top(&all("ab")));
            for i in range {
                out.push(top(&[&format!("a^{}", p * p), &format!("a^{}b", p * i)]));
                out.push(top(&[&format!("a^{p}"), &format!("a^{i}b")]));
            }
        }
        Family::G2 => {
            out.push(pair(&["a", "b"], &["b"]));
            out.push(top(&["a", "b"]));
            out.push(top(&all("abc")));
            for i in range.clone() {
                out.push(top(&["a", &format!("b^{i}c")]));
                for j in range.clone() {
                    out.push(top(&[&format!("a^{i}b"), &format!("a^{j}c")]));
                }
            }
        }
        Family::G3 => {
            out.push(top(&["a", &format!("b^{p}")]));
            out.push(top(&["a"]));
            out.push(top(&all("ab")));
            for i in range {
                out.push(pair(&["a", &format!("b^{p}")], &[&format!("a^{}b^{p}", p * i)]));
                out.push(top(&[&format!("a^{p}"), &format!("a^{i}b")]));
            }
            for k in 1..p {
                out.push(top(&[&format!("a^{p}"), &format!("a^{k}b^{p}")]));
            }
        }
        Family::G4 => {
            out.push(top(&["a", "b"]));
            out.push(top(&all("abc")));
            for i in range.clone() {
                out.push(pair(&["a", "b"], &[&format!("a^{}b", p * i)]));
                out.push(top(&["a", &format!("b^{i}c")]));
                for j in range.clone() {
                    out.push(top(&[&format!("a^{p}"), &format!("a^{i}b"), &format!("a^{j}c")]));
                }
            }
        }
        Family::G5 => {
            out.push(pair(&["a", "b"], &["a"]));
            out.push(top(&[&format!("a^{p}"), "b", "c"]));
            out.push(top(&["a", "b"]));
            out.push(top(&all("abc")));
            for i in range {
                out.push(top(&["b", &format!("a^{}c", p * i)]));
            }
            for k in 1..p {
                out.push(pair(&["a", "b"], &[&format!("a^{p}b^{k}")]));
                out.push(top(&["b", &format!("a^{k}c")]));
            }
        }
        Family::G6 => {
            let h = [format!("a^{p}"), s("b"), s("c")];
            let h: Vec<&str> = h.iter().map(String::as_str).collect();
            out.push(pair(&h, &[&format!("a^{p}"), "c"]));
            out.push(top(&["a", "b"]));
            out.push(top(&h));
            out.push(top(&all("abc")));
            for i in range {
                out.push(pair(&h, &["b", &format!("a^{}c", p * i)]));
            }
            for k in 1..p {
                out.push(top(&["b", &format!("a^{k}c")]));
            }
        }
        Family::G7 | Family::G8 if p == 3 => {
            out.push(pair(&["b", "c"], &["b"]));
            out.push(pair(&["b", "c"], &["c"]));
            out.push(top(&["a", "b"]));
            out.push(top(&all("abc")));
            for i in range {
                out.push(top(&["b", &format!("a^{i}c")]));
            }
        }
        Family::G7 | Family::G8 => {
            let x = if f == Family::G7 { s("ac") } else { format!("a^{d}c") };
            out.push(pair(&["b", &x], &["b"]));
            out.push(pair(&["b", &x], &[&x]));
            out.push(top(&["a", "b"]));
            out.push(top(&all("abc")));
            for i in range {
                out.push(top(&["b", &format!("a^{i}c")]));
            }
        }
        Family::G9 => {
            out.push(top(&["a", "b", "d"]));
            out.push(top(&all("abcd")));
            for i in range.clone() {
                out.push(pair(&["a", "b", "d"], &["d", &format!("a^{i}b")]));
                out.push(top(&["a", "b", &format!("cd^{i}")]));
                for j in range.clone() {
                    out.push(top(&["a", &format!("b^{i}c"), &format!("b^{j}d")]));
                }
            }
        }
        Family::G10 if p == 3 => {
            out.push(pair(&["a", "b"], &["a"]));
            out.push(pair(&["a", "b"], &["b"]));
            out.push(top(&["a", "b"]));
            out.push(top(&all("abc")));
            for i in range {
                out.push(top(&["b", &format!("a^{i}c")]));
            }
        }
        Family::G10 => {
            out.push(pair(&["a", "b", "c"], &["a", "c"]));
            out.push(top(&["a", "b", "d"]));
            out.push(top(&all("abcd")));
            for i in range {
                out.push(pair(&["a", "b", "c"], &[&format!("a^{i}c"), "b"]));
                out.push(top(&["a", "b", &format!("cd^{i}")]));
            }
        }
        Family::ScriptG1 => {
            out.push(top(&["a", "b"]));
            out.push(pair(&[&format!("a^{p}"), "b"], &["b"]));
            out.push(top(&["a"]));
            out.push(top(&[&format!("a^{p}"), "b"]));
            for i in 1..p {
                out.push(top(&[&format!("a^{i}b")]));
            }
        }
        Family::ScriptG2 => {
            out.push(top(&["a", "b", "c"]));
            out.push(pair(&["a", "c"], &["a"]));
            out.push(top(&["b", "c"]));
            out.push(top(&["a", "c"]));
            for i in 1..p {
                out.push(top(&[&format!("a^{i}b"), "c"]));
            }
        }
        Family::H1 | Family::H2 => {
            out.push(pair(&["a"], &[]));
            out.push(pair(&["a"], &["a^4"]));
            out.push(top(&["a"]));
            out.push(top(&["a^2", "b"]));
            out.push(top(&["a^2", "ab"]));
            out.push(top(&["a", "b"]));
        }
        _ => {}
    }
    out
}

fn s(x: &str) -> String {
    x.to_string()
}

fn shape_counts(pairs: impl IntoIterator<Item = (usize, usize)>) -> BTreeMap<(usize, usize), usize> {
    let mut m = BTreeMap::new();
    for s in pairs {
        *m.entry(s).or_default() += 1;
    }
    m
}

/// A computed family set against a reference list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyComparison {
    /// Equal record counts for every `(|H|, |K|)`.
    pub same_shapes: bool,
    /// The reference pairs and the records match one to one by idempotent.
    pub all_equivalent: bool,
    /// Indices of reference pairs with no matching record.
    pub unmatched: Vec<usize>,
    pub computed_shapes: Vec<((usize, usize), usize)>,
    pub reference_shapes: Vec<((usize, usize), usize)>,
}

pub fn compare_family(fam: &SspFamily, reference: &[WordPair]) -> Result<FamilyComparison> {
    let g = &fam.group;
    let pairs = reference.iter().map(|x| resolve(g, x)).collect::<Result<Vec<_>>>()?;
    let ours = shape_counts(fam.records.iter().map(|r| (r.h.len(), r.k.len())));
    let theirs = shape_counts(pairs.iter().map(|(h, k)| (h.len(), k.len())));
    let mut unmatched = Vec::new();
    let mut used = vec![false; fam.records.len()];
    for (idx, (h, k)) in pairs.iter().enumerate() {
        let e: QGElement = e_idempotent(g, h, k)?;
        match fam.records.iter().enumerate().find(|(i, r)| !used[*i] && r.e == e) {
            Some((i, _)) => used[i] = true,
            None => unmatched.push(idx),
        }
    }
    Ok(FamilyComparison {
        same_shapes: ours == theirs,
        all_equivalent: unmatched.is_empty() && used.iter().all(|&u| u),
        unmatched,
        computed_shapes: ours.into_iter().collect(),
        reference_shapes: theirs.into_iter().collect(),
    })
}

/// Rank of the group of central units of `Z[G]`.
pub fn expected_rank(entry: &CatalogEntry) -> Option<u64> {
    let p = entry.p.map(|p| p as i64);
    let r = match (entry.family, p) {
        (Family::G1, Some(p)) => (p + 1) * (p * p - 5) / 2,
        (Family::G2, Some(p)) => (p * p * p - p * p - 3 * p - 5) / 2,
        (Family::G3 | Family::G5, Some(p)) => (p * p * p + p * p - 7 * p - 3) / 2,
        (Family::G4 | Family::G9, Some(p)) => (p - 3) * (p + 1) * (p + 1) / 2,
        (Family::G6, Some(p)) => (p - 3) * (p + 1),
        (Family::G7 | Family::G8, Some(p)) => p * p - p - 4,
        (Family::G10, Some(3)) => 2,
        (Family::G10, Some(p)) => (p - 3) * (p + 1),
        (Family::ScriptG1 | Family::ScriptG2, Some(p)) => (p - 3) * (p + 2) / 2,
        (Family::H1 | Family::H2, _) => 1,
        (f, _) if Family::ORDER_16_OTHERS.contains(&f) || matches!(f, Family::D4 | Family::Q8) => 0,
        _ => return None,
    };
    Some(r as u64)
}

/// Components of `Q[G]` as `(display, multiplicity)`, sorted.
pub fn expected_decomposition(entry: &CatalogEntry) -> Option<Vec<(String, usize)>> {
    let p = entry.p?;
    let pu = p as usize;
    let q = "Q".to_string();
    let zp = format!("Q(z{p})");
    let zp2 = format!("Q(z{})", p * p);
    let m = |s: &str| format!("M{p}({s})");
    let mut rows = match entry.family {
        Family::G1 => vec![(q, 1), (zp.clone(), 1 + pu), (zp2.clone(), pu), (m(&zp2), 1)],
        Family::G2 => vec![(q, 1), (zp.clone(), 1 + pu + pu * pu), (m(&zp2), 1)],
        Family::G3 | Family::G5 => vec![(q, 1), (zp.clone(), 1 + pu), (zp2, pu), (m(&zp), pu)],
        Family::G4 | Family::G9 => vec![(q, 1), (zp.clone(), 1 + pu + pu * pu), (m(&zp), pu)],
        Family::G6 => vec![(q, 1), (zp.clone(), 1 + pu), (m(&zp), 1 + pu)],
        Family::G10 if p > 3 => vec![(q, 1), (zp.clone(), 1 + pu), (m(&zp), 1 + pu)],
        Family::G7 | Family::G8 | Family::G10 => vec![(q, 1), (zp.clone(), 1 + pu), (m(&zp), 1), (m(&zp2), 1)],
        _ => return None,
    };
    rows.sort();
    Some(rows)
}

/// `n_{H,K}` for each printed pair, in the order of [`published_pairs`].
pub fn expected_n_values(entry: &CatalogEntry) -> Option<Vec<u64>> {
    match (entry.family, entry.p) {
        (Family::ScriptG1 | Family::ScriptG2, Some(5)) => Some(vec![1, 5, 25, 25, 25, 25, 25, 25]),
        _ => None,
    }
}

/// Index bound for the printed pair list.
pub fn expected_bound(entry: &CatalogEntry) -> Option<Factored> {
    let mut f = Factored::one();
    match (entry.family, entry.p) {
        (Family::ScriptG1 | Family::ScriptG2, Some(5)) => {
            f.mul(&Factored::from_u64(2).pow(29));
            f.mul(&Factored::from_u64(5).pow(27));
        }
        (Family::H1 | Family::H2, _) => f.mul(&Factored::from_u64(2).pow(12)),
        _ => return None,
    }
    Some(f)
}
