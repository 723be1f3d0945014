use std::sync::Arc;

use central_units::bound::{abelian_bound, index_bound, trivial_central_units, ClassNumbers, Factored};
use central_units::catalog::{build, CatalogEntry, Family};
use central_units::shoda::{compute_ssp_family, family_from_pairs};
use central_units::wedderburn::rank_central_units;
use central_units::Error;
use num_bigint::BigInt;

mod common;

fn published_family(f: Family, p: u64) -> central_units::SspFamily {
    let e = common::entry(f, p);
    let g = Arc::new(build(&e).unwrap());
    let pairs: Vec<_> = common::published_pairs(f, p, 2)
        .iter()
        .map(|x| common::resolve(&g, x))
        .collect();
    family_from_pairs(&g, &pairs).unwrap()
}

fn two_five(a: u32, b: u32) -> BigInt {
    num_traits::pow(BigInt::from(2), a as usize) * num_traits::pow(BigInt::from(5), b as usize)
}

#[test]
fn published_totals() {
    let h = ClassNumbers::new();
    for f in [Family::ScriptG1, Family::ScriptG2] {
        let fam = published_family(f, 5);
        assert!(fam.complete);
        let r = index_bound(&fam, &h).unwrap();
        assert_eq!(r.total.value, two_five(29, 27), "{f}");
        assert_eq!(r.total.to_string(), "2^29 * 5^27");
        let mut factors: Vec<BigInt> = r.rows.iter().map(|x| x.factor.value.clone()).collect();
        factors.sort();
        let mut want = vec![BigInt::from(2000)];
        want.extend(std::iter::repeat_n(BigInt::from(10_000), 6));
        assert_eq!(factors, want);
    }
    for f in [Family::H1, Family::H2] {
        let g = Arc::new(build(&CatalogEntry::new(f)).unwrap());
        let r = index_bound(&compute_ssp_family(&g).unwrap(), &h).unwrap();
        assert_eq!(r.total.value, BigInt::from(1 << 12));
        assert_eq!(r.total, r.recompute());
        let r = index_bound(&published_family(f, 2), &h).unwrap();
        assert_eq!(r.total.value, BigInt::from(1 << 12));
    }
    let g = Arc::new(build(&CatalogEntry::with_p(Family::ScriptG2, 5)).unwrap());
    assert_eq!(
        index_bound(&compute_ssp_family(&g).unwrap(), &h).unwrap().total.value,
        two_five(29, 27)
    );
}

#[test]
fn total_depends_on_the_representatives() {
    // (<a>, 1) and (<a^5, b>, <b>) give the same idempotent but different rows
    let g = Arc::new(build(&CatalogEntry::with_p(Family::ScriptG1, 5)).unwrap());
    let r = index_bound(&compute_ssp_family(&g).unwrap(), &ClassNumbers::new()).unwrap();
    assert_eq!(r.total.value, two_five(39, 45));
}

#[test]
fn reordering_and_recompute() {
    let fam = published_family(Family::ScriptG2, 5);
    let base = index_bound(&fam, &ClassNumbers::new()).unwrap();
    let mut shuffled = fam.clone();
    shuffled.records[1..].reverse();
    let other = index_bound(&shuffled, &ClassNumbers::new()).unwrap();
    assert_eq!(base.total, other.total);
    assert_eq!(base.total, base.recompute());
    let mut product = Factored::from_u64(2);
    for r in &base.rows {
        let mut f = Factored::from_u64(r.h_plus.max(1));
        if r.i_size == 1 {
            f = Factored::from_u64(r.o);
        } else {
            f.mul_u64(r.l);
            f.mul_u64(r.p.pow(r.n - 1));
            f.mul(&r.frak_o);
            f.mul(&Factored::from_u64(r.l.pow(r.d - 1) * r.action_order).pow(r.i_size as u32 - 1));
        }
        product.mul(&f);
    }
    assert_eq!(product, base.total);
}

#[test]
fn unknown_class_number() {
    let g = Arc::new(build(&CatalogEntry::abelian(&[23])).unwrap());
    let fam = compute_ssp_family(&g).unwrap();
    assert_eq!(
        index_bound(&fam, &ClassNumbers::new()),
        Err(Error::UnknownClassNumber(23))
    );
    let r = index_bound(&fam, &ClassNumbers::with_overrides([(23, 1)])).unwrap();
    assert_eq!(r.total, r.recompute());
}

#[test]
fn rank_zero_iff_trivial_central_units() {
    let mut entries = Vec::new();
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
    entries.push(CatalogEntry::abelian(&[4, 2]));
    entries.push(CatalogEntry::abelian(&[5]));
    for e in entries {
        let fam = common::family(&e);
        let rank = rank_central_units(&fam).unwrap();
        assert_eq!(rank == 0, trivial_central_units(&fam).unwrap(), "{}", e.display_name());
    }
}

#[test]
fn abelian_examples() {
    let h = ClassNumbers::new();
    let c2c4 = build(&CatalogEntry::abelian(&[4, 2])).unwrap();
    let b = abelian_bound(&c2c4, &h).unwrap();
    assert!(b.rank_zero);
    assert!(
        abelian_bound(&central_units::FiniteGroup::trivial(), &h)
            .unwrap()
            .total
            .value
            == BigInt::from(1)
    );

    let c5 = build(&CatalogEntry::abelian(&[5])).unwrap();
    let b = abelian_bound(&c5, &h).unwrap();
    assert!(!b.rank_zero);
    // K = C5 contributes 2 * 1 * h(1); K = 1 contributes 2*5*h(5) * (2*5*o_5(2)*n)
    let k1 = b.rows.iter().find(|r| r.q == 5).unwrap();
    assert_eq!(k1.n_gk, 1);
    assert_eq!(k1.factor.value, BigInt::from(2 * 5 * (2 * 5 * 4)));
    assert_eq!(b.total.value, BigInt::from(2 * 400));

    assert_eq!(
        abelian_bound(&build(&CatalogEntry::new(Family::D4)).unwrap(), &h),
        Err(Error::NotAbelian)
    );
}
