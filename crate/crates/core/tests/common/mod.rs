#![allow(dead_code, unused_imports)]

use std::sync::Arc;

use central_units::catalog::{build, word, CatalogEntry, Family};
use central_units::shoda::compute_ssp_family;
use central_units::{FiniteGroup, SspFamily, Subgroup};

pub use central_units::known::WordPair;

pub fn published_pairs(f: Family, p: u64, d: u64) -> Vec<WordPair> {
    let mut e = entry(f, p);
    e.d = Some(d);
    central_units::known::published_pairs(&e).expect("published list")
}

pub fn subgroup(g: &FiniteGroup, words: &[String]) -> Subgroup {
    let gens: Vec<usize> = words.iter().map(|x| word(g, x).unwrap()).collect();
    g.subgroup_generated(&gens)
}

pub fn resolve(g: &FiniteGroup, p: &WordPair) -> (Subgroup, Subgroup) {
    let h = p.0.as_ref().map(|x| subgroup(g, x)).unwrap_or_else(|| g.whole());
    (h, subgroup(g, &p.1))
}

pub fn entry(f: Family, p: u64) -> CatalogEntry {
    if f.needs_p() {
        CatalogEntry::with_p(f, p)
    } else {
        CatalogEntry::new(f)
    }
}

pub fn family(e: &CatalogEntry) -> SspFamily {
    let g = Arc::new(build(e).unwrap());
    compute_ssp_family(&g).unwrap()
}

pub use central_units::known::compare_family;

/// Expected components of `Q[G_i]` as `(display, multiplicity)`.
pub fn expected(f: Family, p: u64) -> Vec<(String, usize)> {
    let p_ = p as usize;
    let zp = format!("Q(z{p})");
    let zp2 = format!("Q(z{})", p * p);
    let m = |s: &str| format!("M{p}({s})");
    let rows: Vec<(String, usize)> = match f {
        Family::G1 => vec![(s("Q"), 1), (zp.clone(), 1 + p_), (zp2.clone(), p_), (m(&zp2), 1)],
        Family::G2 => vec![(s("Q"), 1), (zp.clone(), 1 + p_ + p_ * p_), (m(&zp2), 1)],
        Family::G3 | Family::G5 => vec![(s("Q"), 1), (zp.clone(), 1 + p_), (zp2.clone(), p_), (m(&zp), p_)],
        Family::G4 | Family::G9 => vec![(s("Q"), 1), (zp.clone(), 1 + p_ + p_ * p_), (m(&zp), p_)],
        Family::G6 => vec![(s("Q"), 1), (zp.clone(), 1 + p_), (m(&zp), 1 + p_)],
        Family::G10 if p > 3 => return expected(Family::G6, p),
        Family::G7 | Family::G8 | Family::G10 => {
            vec![(s("Q"), 1), (zp.clone(), 1 + p_), (m(&zp), 1), (m(&zp2), 1)]
        }
        _ => unreachable!(),
    };
    let mut rows = rows;
    rows.sort();
    rows
}

pub fn s(x: &str) -> String {
    x.to_string()
}

pub fn expected_rank(f: Family, p: i64) -> i64 {
    match f {
        Family::G1 => (p + 1) * (p * p - 5) / 2,
        Family::G2 => (p * p * p - p * p - 3 * p - 5) / 2,
        Family::G3 | Family::G5 => (p * p * p + p * p - 7 * p - 3) / 2,
        Family::G4 | Family::G9 => (p - 3) * (p + 1) * (p + 1) / 2,
        Family::G6 => (p - 3) * (p + 1),
        Family::G7 | Family::G8 => p * p - p - 4,
        Family::G10 if p == 3 => 2,
        Family::G10 => (p - 3) * (p + 1),
        Family::ScriptG1 | Family::ScriptG2 => (p - 3) * (p + 2) / 2,
        _ => unreachable!(),
    }
}
