use central_units::catalog::{build, build_with_audit, CatalogEntry, Family};
use central_units::FiniteGroup;

const P_FAMILIES: [Family; 10] = [
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

/// Isomorphism invariant: sorted element orders, centre size and exponent,
/// derived subgroup size and the number of normal subgroups.
fn fingerprint(g: &FiniteGroup) -> (Vec<usize>, usize, usize, usize, usize) {
    let mut orders: Vec<usize> = g.elements().map(|x| g.element_order(x)).collect();
    orders.sort_unstable();
    let comms: Vec<usize> = g
        .elements()
        .flat_map(|x| g.elements().map(move |y| (x, y)))
        .map(|(x, y)| g.commutator(x, y))
        .collect();
    let z = g.center();
    let z_exp = z.members().iter().map(|&x| g.element_order(x)).max().unwrap();
    let normals = g.all_normal_subgroups(1296).unwrap().len();
    (orders, z.len(), z_exp, g.subgroup_generated(&comms).len(), normals)
}

#[test]
fn p_families_have_order_p4_and_satisfy_relations() {
    for p in [3u64, 5] {
        let mut prints = Vec::new();
        for f in P_FAMILIES {
            let built = build_with_audit(&CatalogEntry::with_p(f, p)).unwrap();
            let g = &built.group;
            assert_eq!(g.order() as u64, p.pow(4), "{f} p={p}");
            assert!(built.audit.iter().all(|r| r.holds), "{f} p={p}: {:?}", built.audit);
            assert!(!g.is_abelian());
            assert!(g.center().len() < g.order());
            prints.push((f, fingerprint(g)));
        }
        for (i, (f, a)) in prints.iter().enumerate() {
            for (h, b) in &prints[i + 1..] {
                // these three are only told apart by finer invariants
                let close = [Family::G6, Family::G7, Family::G8];
                if !(close.contains(f) && close.contains(h)) {
                    assert_ne!(a, b, "{f} and {h} look isomorphic at p={p}");
                }
            }
        }
    }
}

#[test]
fn script_families() {
    for p in [3u64, 5, 7] {
        for f in [Family::ScriptG1, Family::ScriptG2] {
            let built = build_with_audit(&CatalogEntry::with_p(f, p)).unwrap();
            assert_eq!(built.group.order() as u64, p.pow(3));
            assert!(built.audit.iter().all(|r| r.holds));
        }
        let g2 = build(&CatalogEntry::with_p(Family::ScriptG2, p)).unwrap();
        let c = central_units::catalog::word(&g2, "c").unwrap();
        let brute: Vec<usize> = g2
            .elements()
            .filter(|&z| g2.elements().all(|x| g2.mul(x, z) == g2.mul(z, x)))
            .collect();
        assert_eq!(brute.len() as u64, p);
        assert!(brute.contains(&c));
    }
}

#[test]
fn order_16_groups_are_distinct() {
    let mut fams = vec![Family::H1, Family::H2];
    fams.extend(Family::ORDER_16_OTHERS);
    let prints: Vec<_> = fams
        .iter()
        .map(|&f| {
            let built = build_with_audit(&CatalogEntry::new(f)).unwrap();
            assert!(built.audit.iter().all(|r| r.holds), "{f}");
            assert_eq!(built.group.order(), 16);
            assert!(!built.group.is_abelian());
            fingerprint(&built.group)
        })
        .collect();
    for i in 0..prints.len() {
        for j in i + 1..prints.len() {
            // C2xQ8 and C4sC4 share element orders; the subgroup count separates them.
            if prints[i] == prints[j] {
                let a = build(&CatalogEntry::new(fams[i])).unwrap();
                let b = build(&CatalogEntry::new(fams[j])).unwrap();
                let na = a.all_subgroups(1296).unwrap().len();
                let nb = b.all_subgroups(1296).unwrap().len();
                assert_ne!(na, nb, "{} vs {}", fams[i], fams[j]);
            }
        }
    }
}

#[test]
fn g8_d_parameter() {
    let mut e = CatalogEntry::with_p(Family::G8, 5);
    for d in [2u64, 3, 4] {
        e.d = Some(d);
        assert_eq!(build(&e).unwrap().order(), 625);
    }
}
