use std::sync::Arc;

use central_units::catalog::{build, CatalogEntry, Family};
use central_units::shoda::compute_ssp_family;
use central_units::wedderburn::{action_image, decomposition, i_set, rank_central_units, ActionStructure};
use central_units::FiniteGroup;

mod common;
use common::{expected, expected_rank};

fn family(e: &CatalogEntry) -> central_units::SspFamily {
    let g = Arc::new(build(e).unwrap());
    compute_ssp_family(&g).unwrap()
}

const G_FAMILIES: [Family; 10] = [
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
];

#[test]
fn decompositions_match_the_table() {
    for p in [3u64, 5] {
        for f in G_FAMILIES {
            let fam = family(&CatalogEntry::with_p(f, p));
            let d = decomposition(&fam).unwrap();
            let mut got = d.multiset();
            got.sort();
            assert_eq!(got, expected(f, p), "{f} p={p}: {d}");
            assert!(d.components.iter().all(|c| c.simplified.is_some()));
        }
    }
}

#[test]
fn g4_at_three_reads_as_in_the_table() {
    let d = decomposition(&family(&CatalogEntry::with_p(Family::G4, 3))).unwrap();
    assert_eq!(d.to_string(), "Q + Q(z3)^13 + M3(Q(z3))^3");
    let d = decomposition(&family(&CatalogEntry::with_p(Family::G10, 3))).unwrap();
    assert_eq!(d.to_string(), "Q + Q(z3)^4 + M3(Q(z3)) + M3(Q(z9))");
}

#[test]
fn ranks_match_the_table() {
    for p in [3u64, 5] {
        for f in G_FAMILIES {
            let fam = family(&CatalogEntry::with_p(f, p));
            assert_eq!(
                rank_central_units(&fam).unwrap() as i64,
                expected_rank(f, p as i64),
                "{f} p={p}"
            );
        }
    }
    for p in [3u64, 5, 7] {
        for f in [Family::ScriptG1, Family::ScriptG2] {
            let fam = family(&CatalogEntry::with_p(f, p));
            assert_eq!(
                rank_central_units(&fam).unwrap() as i64,
                expected_rank(f, p as i64),
                "{f} p={p}"
            );
        }
    }
    for f in [Family::H1, Family::H2] {
        assert_eq!(rank_central_units(&family(&CatalogEntry::new(f))).unwrap(), 1);
    }
}

#[test]
fn g7_and_g8_agree() {
    for p in [3u64, 5] {
        let a = decomposition(&family(&CatalogEntry::with_p(Family::G7, p))).unwrap();
        let b = decomposition(&family(&CatalogEntry::with_p(Family::G8, p))).unwrap();
        assert_eq!(a.to_string(), b.to_string());
    }
}

#[test]
fn dimension_audit_for_every_catalog_group() {
    let mut entries: Vec<CatalogEntry> = Vec::new();
    for p in [3u64, 5] {
        entries.extend(
            Family::ALL
                .into_iter()
                .filter(|f| f.needs_p())
                .map(|f| CatalogEntry::with_p(f, p)),
        );
    }
    entries.extend(
        Family::ALL
            .into_iter()
            .filter(|f| !f.needs_p() && *f != Family::AbelianP)
            .map(CatalogEntry::new),
    );
    entries.push(CatalogEntry::abelian(&[25, 5]));
    for e in entries {
        let fam = family(&e);
        let d = decomposition(&fam).unwrap();
        assert_eq!(d.total_dimension, fam.group.order() as u64, "{}", e.display_name());
        for (c, r) in d.components.iter().zip(&fam.records) {
            assert_eq!(c.action.order as usize, r.n.len() / r.h.len());
            if c.q > 2 {
                let a = action_image(&fam.group, r).unwrap();
                let mut with_minus = a.residues.clone();
                with_minus.push(c.q - 1);
                let big = central_units::numtheory::unit_subgroup(&with_minus, c.q);
                assert_eq!(
                    i_set(&a).len() * big.len(),
                    central_units::numtheory::euler_phi(c.q) as usize
                );
            }
            if let Some(s) = &c.simplified {
                if let Some(q2) = s.field.recognized {
                    assert_eq!(s.field.degree, central_units::numtheory::euler_phi(q2));
                }
            }
        }
    }
}

#[test]
fn abelian_components_are_fields() {
    let fam = family(&CatalogEntry::abelian(&[9, 3]));
    let d = decomposition(&fam).unwrap();
    assert!(d
        .components
        .iter()
        .all(|c| c.outer_degree == 1 && c.action.structure == ActionStructure::Trivial));
    let sum: u64 = d
        .components
        .iter()
        .map(|c| central_units::numtheory::euler_phi(c.q))
        .sum();
    assert_eq!(sum, 27);
}

#[test]
fn action_examples() {
    let g1 = Arc::new(build(&CatalogEntry::with_p(Family::G1, 5)).unwrap());
    let fam = compute_ssp_family(&g1).unwrap();
    let a = central_units::catalog::word(&g1, "a").unwrap();
    let rec = fam.records.iter().find(|r| r.k.is_trivial()).unwrap();
    assert_eq!(rec.h, g1.subgroup_generated(&[a]));
    let img = action_image(&g1, rec).unwrap();
    assert_eq!(img.residues, central_units::numtheory::unit_subgroup(&[26], 125));
    assert_eq!(img.order, 5);

    let h1: Arc<FiniteGroup> = Arc::new(build(&CatalogEntry::new(Family::H1)).unwrap());
    let fam = compute_ssp_family(&h1).unwrap();
    let rec = fam.records.iter().find(|r| r.q == 8).unwrap();
    let img = action_image(&h1, rec).unwrap();
    assert_eq!(img.residues, vec![1, 7]);
    assert_eq!(i_set(&img), vec![1, 3]);
    let top = action_image(&h1, &fam.records[0]).unwrap();
    assert_eq!(top.structure, ActionStructure::Trivial);
}
