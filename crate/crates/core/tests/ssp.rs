use std::sync::Arc;

use central_units::catalog::{build, CatalogEntry, Family};
use central_units::shoda::{compute_ssp_family, is_strong_shoda_pair};

fn entries() -> Vec<CatalogEntry> {
    let mut out = Vec::new();
    for p in [3u64, 5] {
        for f in Family::ALL.into_iter().filter(|f| f.needs_p()) {
            out.push(CatalogEntry::with_p(f, p));
        }
    }
    for f in Family::ALL
        .into_iter()
        .filter(|f| !f.needs_p() && *f != Family::AbelianP)
    {
        out.push(CatalogEntry::new(f));
    }
    out.push(CatalogEntry::abelian(&[9, 3]));
    out.push(CatalogEntry::abelian(&[4, 2, 2]));
    out
}

#[test]
fn certificate_equals_group_order_for_every_catalog_group() {
    for e in entries() {
        let g = Arc::new(build(&e).unwrap());
        let fam = compute_ssp_family(&g).unwrap();
        assert_eq!(fam.certificate_sum, g.order() as u64, "{}", e.display_name());
        assert!(fam.normally_monomial && fam.complete, "{}", e.display_name());
        assert_eq!(fam.records[0].h, g.whole());
        assert_eq!(fam.records[0].k, g.whole());
    }
}

#[test]
fn every_record_is_a_strong_shoda_pair() {
    for e in entries().into_iter().filter(|e| e.p != Some(5)) {
        let g = Arc::new(build(&e).unwrap());
        let fam = compute_ssp_family(&g).unwrap();
        for r in &fam.records {
            assert!(is_strong_shoda_pair(&g, &r.h, &r.k).holds, "{}", e.display_name());
        }
    }
}

mod common;

#[test]
fn published_lists_match_up_to_equivalence() {
    let mut cases: Vec<(Family, u64)> = Vec::new();
    for p in [3u64, 5] {
        for f in [
            Family::G1,
            Family::G2,
            Family::G3,
            Family::G4,
            Family::G5,
            Family::G6,
            Family::G7,
            Family::G8,
            Family::G9,
            Family::G10,
            Family::ScriptG1,
            Family::ScriptG2,
        ] {
            cases.push((f, p));
        }
    }
    cases.push((Family::H1, 2));
    cases.push((Family::H2, 2));
    let mut bad = Vec::new();
    for (f, p) in cases {
        let e = common::entry(f, p);
        let fam = common::family(&e);
        let c = common::compare_family(&fam, &common::published_pairs(f, p, e.d.unwrap_or(2))).unwrap();
        if !c.all_equivalent || (!c.same_shapes && f != Family::ScriptG1) {
            bad.push(format!("{} {c:?}", e.display_name()));
        }
    }
    assert!(bad.is_empty(), "{}", bad.join("\n"));
}
