use std::sync::Arc;

use central_units::bass::{bass_unit, inverse};
use central_units::bound::Factored;
use central_units::catalog::{build, CatalogEntry, Family};
use central_units::cyclotomic::Cyclotomic;
use central_units::numtheory::{gcd, mult_order, pow_mod};
use central_units::{CyclotomicNumber, FiniteGroup, Integer, QGElement, Rational};
use num_bigint::BigInt;
use proptest::prelude::*;

fn cyclic(n: usize) -> Arc<FiniteGroup> {
    let table: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
    Arc::new(FiniteGroup::from_cayley_table(&table).unwrap())
}

/// Direct product of cyclic groups, any orders.
fn product(inv: &[usize]) -> FiniteGroup {
    let n: usize = inv.iter().product();
    let digits = |mut x: usize| -> Vec<usize> {
        inv.iter()
            .map(|&m| {
                let d = x % m;
                x /= m;
                d
            })
            .collect()
    };
    let join = |d: &[usize]| d.iter().zip(inv).rev().fold(0, |acc, (&x, &m)| acc * m + x);
    let table: Vec<Vec<usize>> = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| {
                    let s: Vec<usize> = digits(a)
                        .iter()
                        .zip(digits(b))
                        .zip(inv)
                        .map(|((x, y), m)| (x + y) % m)
                        .collect();
                    join(&s)
                })
                .collect()
        })
        .collect();
    FiniteGroup::from_cayley_table(&table).unwrap()
}

fn cyclo(n: u64, coeffs: &[i64]) -> CyclotomicNumber {
    let mut acc = Cyclotomic::zero(n);
    for (i, &c) in coeffs.iter().enumerate() {
        acc = &acc + &Cyclotomic::root(n, i as i64).scale(&Rational::from_integer(BigInt::from(c)));
    }
    acc
}

fn element(g: &Arc<FiniteGroup>, coeffs: &[i64]) -> QGElement {
    QGElement::from_coeffs(
        g,
        coeffs.iter().enumerate().map(|(i, &c)| {
            (
                i % g.order(),
                Rational::new(BigInt::from(c), BigInt::from(1 + i as i64 % 3)),
            )
        }),
    )
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn bass_units_are_units(n in 3usize..16, k in 2u64..16) {
        prop_assume!(gcd(k, n as u64) == 1 && k < n as u64);
        let g = cyclic(n);
        let m = mult_order(k, n as u64);
        let u = bass_unit(&g, 1, k, m).unwrap();
        prop_assert_eq!(u.augmentation(), Integer::from(1));
        let v = inverse(&u).unwrap();
        prop_assert!(u.mul(&v).unwrap().is_one());
    }

    #[test]
    fn galois_action_is_a_ring_map(n in 3u64..20, a in prop::collection::vec(-5i64..5, 1..8),
                                   b in prop::collection::vec(-5i64..5, 1..8), r in 1u64..40) {
        prop_assume!(gcd(r, n) == 1);
        let (x, y) = (cyclo(n, &a), cyclo(n, &b));
        prop_assert_eq!((&x * &y).galois(r as i64), &x.galois(r as i64) * &y.galois(r as i64));
        prop_assert_eq!((&x + &y).galois(r as i64), &x.galois(r as i64) + &y.galois(r as i64));
        prop_assert_eq!((&x * &y).norm(), x.norm() * y.norm());
    }

    #[test]
    fn group_ring_product_is_associative(a in prop::collection::vec(-4i64..4, 1..10),
                                         b in prop::collection::vec(-4i64..4, 1..10),
                                         c in prop::collection::vec(-4i64..4, 1..10)) {
        let g = Arc::new(build(&CatalogEntry::new(Family::Q8)).unwrap());
        let (x, y, z) = (element(&g, &a), element(&g, &b), element(&g, &c));
        let left = x.mul(&y).unwrap().mul(&z).unwrap();
        let right = x.mul(&y.mul(&z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        prop_assert_eq!(x.mul(&y).unwrap().augmentation(), x.augmentation() * y.augmentation());
    }

    #[test]
    fn quotient_orders_multiply(inv in prop::collection::vec(prop::sample::select(vec![2usize, 3, 4, 9]), 1..3), pick in 0usize..64) {
        let g = product(&inv);
        let normals = g.all_normal_subgroups(4096).unwrap();
        let n = &normals[pick % normals.len()];
        let q = g.quotient(n).unwrap();
        prop_assert_eq!(q.quotient.order() * n.len(), g.order());
        for x in g.elements() {
            prop_assert_eq!(g.exponent() % g.element_order(x), 0);
        }
    }

    #[test]
    fn multiplicative_order_is_minimal(n in 3u64..200, k in 2u64..200) {
        prop_assume!(gcd(k, n) == 1);
        let o = mult_order(k, n);
        prop_assert_eq!(pow_mod(k, o, n), 1);
        for e in 1..o {
            prop_assert_ne!(pow_mod(k, e, n), 1);
        }
    }

    #[test]
    fn factored_matches_value(xs in prop::collection::vec(1u64..5000, 0..6), e in 0u32..4) {
        let mut f = Factored::one();
        let mut want = BigInt::from(1);
        for &x in &xs {
            f.mul_u64(x);
            want *= x;
        }
        let f = f.pow(e);
        let want = num_traits::pow(want, e as usize);
        prop_assert_eq!(&f.value, &want);
        let rebuilt = f.factors.iter().fold(BigInt::from(1), |acc, (&p, &k)| acc * num_traits::pow(BigInt::from(p), k as usize));
        prop_assert_eq!(rebuilt, want);
    }
}
