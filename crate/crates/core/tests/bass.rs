use std::sync::Arc;

use central_units::bass::{
    default_ngm_cap, expected_projection, gbu_base, has_unit_augmentation, inverse, is_integral, n_gm, n_hk, n_in,
    n_values, project_central_unit, script_b_set, virtual_basis, BassContext,
};
use central_units::catalog::{build, word, CatalogEntry, Family};
use central_units::cyclotomic::Cyclotomic;
use central_units::numtheory::{gcd, mult_order};
use central_units::shoda::{compute_ssp_family, family_from_pairs, make_record};
use central_units::{FiniteGroup, QGElement, Subgroup};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

mod common;

/// `(H, K, n)` with `None` for the whole group.
type Row = (Option<Vec<&'static str>>, Vec<&'static str>, u64);

fn group(f: Family, p: u64) -> Arc<FiniteGroup> {
    Arc::new(build(&CatalogEntry::with_p(f, p)).unwrap())
}

fn sub(g: &FiniteGroup, words: &[&str]) -> Subgroup {
    let gens: Vec<usize> = words.iter().map(|w| word(g, w).unwrap()).collect();
    g.subgroup_generated(&gens)
}

/// Pairs of the two tables as `(H, K, n)`; `None` for `H` means the whole group.
fn table(f: Family) -> Vec<Row> {
    match f {
        Family::ScriptG1 => vec![
            (None, vec!["a", "b"], 1),
            (Some(vec!["a^5", "b"]), vec!["b"], 5),
            (None, vec!["a"], 25),
            (None, vec!["a^5", "b"], 25),
            (None, vec!["ab"], 25),
            (None, vec!["a^2b"], 25),
            (None, vec!["a^3b"], 25),
            (None, vec!["a^4b"], 25),
        ],
        Family::ScriptG2 => vec![
            (None, vec!["a", "b", "c"], 1),
            (Some(vec!["a", "c"]), vec!["a"], 5),
            (None, vec!["b", "c"], 25),
            (None, vec!["a", "c"], 25),
            (None, vec!["ab", "c"], 25),
            (None, vec!["a^2b", "c"], 25),
            (None, vec!["a^3b", "c"], 25),
            (None, vec!["a^4b", "c"], 25),
        ],
        _ => unreachable!(),
    }
}

/// Least `n` with `(1 - M^ + u_{k,m}(x) M^)^n` integral for all admissible
/// `k`, found by powering in `Q[G]`.
fn oracle_n(g: &Arc<FiniteGroup>, m: &Subgroup, x: usize, cap: u64) -> u64 {
    let ord = g.element_order(x) as u64;
    let mut n = 1u64;
    for k in (2..ord).filter(|&k| gcd(k, ord) == 1) {
        let base = gbu_base(g, m, x, k, mult_order(k, ord)).unwrap();
        let mut acc = base.clone();
        let mut e = 1;
        while !is_integral(&acc) {
            acc = acc.mul(&base).unwrap();
            e += 1;
            assert!(e <= cap, "oracle cap");
        }
        n = central_units::numtheory::lcm(n, e);
    }
    n
}

#[test]
fn tables_at_five() {
    for f in [Family::ScriptG1, Family::ScriptG2] {
        let g = group(f, 5);
        let cap = default_ngm_cap(&g);
        let mut want = Vec::new();
        for (h, k, n) in table(f) {
            let h = h.map(|w| sub(&g, &w)).unwrap_or_else(|| g.whole());
            let k = sub(&g, &k);
            assert!(g.is_normal_in(&k, &h));
            assert_eq!(n_in(&g, &h, &k, cap).unwrap(), n, "{f} K of order {}", k.len());
            want.push(n);
        }
        // the published family carries exactly these values
        let pairs: Vec<_> = common::published_pairs(f, 5, 2)
            .iter()
            .map(|x| common::resolve(&g, x))
            .collect();
        let fam = family_from_pairs(&g, &pairs).unwrap();
        let mut got = n_values(&fam, cap).unwrap();
        got.sort();
        want.sort();
        assert_eq!(got, want, "{f}");
    }
}

#[test]
fn modular_search_agrees_with_powering() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for f in [Family::ScriptG1, Family::ScriptG2] {
        let g = group(f, 5);
        for (h, k, _) in table(f).into_iter().skip(1) {
            let h = h.map(|w| sub(&g, &w)).unwrap_or_else(|| g.whole());
            let k = sub(&g, &k);
            let mut outside: Vec<usize> = h
                .members()
                .iter()
                .copied()
                .filter(|&x| !k.contains(x) && g.element_order(x) > 2)
                .collect();
            outside.shuffle(&mut rng);
            for &x in outside.iter().take(3) {
                assert_eq!(
                    n_gm(&g, &k, x, 500).unwrap(),
                    oracle_n(&g, &k, x, 500),
                    "{f} {}",
                    g.label(x)
                );
            }
        }
    }
}

#[test]
fn exponents_are_minimal_on_small_groups() {
    for (f, p) in [(Family::D4, 0), (Family::Q8, 0), (Family::G1, 3), (Family::ScriptG2, 3)] {
        let g = if p == 0 {
            Arc::new(build(&CatalogEntry::new(f)).unwrap())
        } else {
            group(f, p)
        };
        for m in g.all_normal_subgroups(1296).unwrap() {
            let n = n_in(&g, &g.whole(), &m, 1000).unwrap();
            let mut oracle = 1;
            for x in g.elements().filter(|&x| !m.contains(x) && g.element_order(x) > 2) {
                oracle = central_units::numtheory::lcm(oracle, oracle_n(&g, &m, x, 1000));
            }
            assert_eq!(n, oracle, "{f} |M| = {}", m.len());
        }
    }
}

#[test]
fn projection_of_the_order_five_record() {
    let g = group(Family::ScriptG1, 5);
    let fam = compute_ssp_family(&g).unwrap();
    let h = sub(&g, &["a^5", "b"]);
    let k = sub(&g, &["b"]);
    let rec = make_record(&g, &h, &k).unwrap();
    assert_eq!(rec.n, rec.h);
    let nhk = n_hk(&g, &rec, 500).unwrap();
    let mut ctx = BassContext::new(&g, &rec, 500).unwrap();
    let b = ctx.b_set_cyclic().unwrap();
    assert_eq!(b.len(), 1);
    assert_eq!(b[0].0, 2);
    let unit = central_units::bass::lift(&g, &rec, &b[0].1).unwrap();
    let image = project_central_unit(&g, &rec, &unit.to_rational()).unwrap();
    let mut eta = Cyclotomic::zero(5);
    for i in 0..2 {
        eta = &eta + &Cyclotomic::root(5, i);
    }
    assert_eq!(image, eta.pow(4 * nhk));
    assert_eq!(image, expected_projection(&g, &rec, 2, nhk).unwrap());
    // the same pair appears in the computed family up to equivalence
    assert!(fam
        .records
        .iter()
        .any(|r| central_units::shoda::are_equivalent(&g, (&r.h, &r.k), (&h, &k)).unwrap()));
}

#[test]
fn projections_match_for_every_record() {
    let cases = [
        Arc::new(build(&CatalogEntry::new(Family::H1)).unwrap()),
        Arc::new(build(&CatalogEntry::new(Family::H2)).unwrap()),
        group(Family::ScriptG1, 5),
        group(Family::G1, 3),
    ];
    for g in cases {
        let fam = compute_ssp_family(&g).unwrap();
        for rec in &fam.records {
            let mut ctx = BassContext::new(&g, rec, 1000).unwrap();
            let nhk = ctx.n_hk;
            for (k, y) in ctx.b_set_cyclic().unwrap() {
                let u = central_units::bass::lift(&g, rec, &y).unwrap().to_rational();
                let got = project_central_unit(&g, rec, &u).unwrap();
                assert_eq!(
                    got,
                    expected_projection(&g, rec, k, nhk).unwrap(),
                    "q = {} k = {k}",
                    rec.q
                );
            }
        }
    }
}

#[test]
fn projection_is_multiplicative() {
    let g = Arc::new(build(&CatalogEntry::new(Family::H1)).unwrap());
    let fam = compute_ssp_family(&g).unwrap();
    let rec = fam.records.iter().find(|r| r.q == 8).unwrap();
    let mut ctx = BassContext::new(&g, rec, 100).unwrap();
    let units: Vec<QGElement> = [(0, 3, 3, 1), (1, 3, 3, 1), (0, 2, 5, 3), (0, 1, 3, 2)]
        .iter()
        .map(|&(j, s, k, r)| ctx.c_unit(j, s, k, r).unwrap().to_rational())
        .collect();
    // sums over N-orbits are central in the block
    let central: Vec<QGElement> = units
        .iter()
        .map(|u| {
            let mut t: Vec<usize> = Vec::new();
            for &x in rec.n.members() {
                if !t.iter().any(|&y| rec.h.contains(g.mul(x, g.inv(y)))) {
                    t.push(x);
                }
            }
            let mut acc = QGElement::one(&g);
            for &x in &t {
                acc = acc.mul(&u.conjugate(x)).unwrap();
            }
            acc
        })
        .collect();
    for a in &central {
        for b in &central {
            let ab = project_central_unit(&g, rec, &a.mul(b).unwrap()).unwrap();
            let pa = project_central_unit(&g, rec, a).unwrap();
            let pb = project_central_unit(&g, rec, b).unwrap();
            assert_eq!(ab, &pa * &pb);
        }
    }
}

#[test]
fn projection_examples() {
    let g = group(Family::ScriptG1, 5);
    let rec = make_record(&g, &sub(&g, &["a^5", "b"]), &sub(&g, &["b"])).unwrap();
    assert!(project_central_unit(&g, &rec, &QGElement::one(&g)).unwrap().is_one());
    let z = QGElement::basis(&g, word(&g, "a^5").unwrap());
    assert_eq!(project_central_unit(&g, &rec, &z).unwrap(), Cyclotomic::root(5, 1));
    let a = QGElement::basis(&g, word(&g, "a").unwrap());
    assert!(matches!(
        project_central_unit(&g, &rec, &a),
        Err(central_units::Error::NotCentral(_))
    ));
}

#[test]
fn virtual_basis_units() {
    for (g, rank) in [
        (group(Family::ScriptG1, 5), 7),
        (Arc::new(build(&CatalogEntry::new(Family::H1)).unwrap()), 1),
        (Arc::new(build(&CatalogEntry::new(Family::H2)).unwrap()), 1),
    ] {
        let fam = compute_ssp_family(&g).unwrap();
        let basis = virtual_basis(&fam, default_ngm_cap(&g)).unwrap();
        assert_eq!(basis.len(), rank);
        for b in &basis {
            assert!(has_unit_augmentation(&b.unit));
            let inv = inverse(&b.unit).unwrap();
            assert!(b.unit.mul(&inv).unwrap().is_one());
        }
        for rec in &fam.records {
            for u in script_b_set(&g, rec, default_ngm_cap(&g)).unwrap() {
                assert!(u.is_central() && has_unit_augmentation(&u));
            }
        }
    }
}
