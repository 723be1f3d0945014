use std::fmt::Write as _;

use central_units::bass::{has_unit_augmentation, inverse, n_values, virtual_basis};
use central_units::bound::{index_bound_with_cap, trivial_central_units};
use central_units::catalog::Family;
use central_units::known::{
    compare_family, expected_bound, expected_decomposition, expected_n_values, expected_rank, published_pairs, resolve,
};
use central_units::shoda::{family_from_pairs, idempotent_suite, is_strong_shoda_pair};
use central_units::wedderburn::{decomposition, rank_central_units};
use central_units::{Error, Result};
use serde_json::{json, Value};

use crate::commands::{Context, Report};

/// Groups up to this order also get the virtual basis unit checks.
const BASIS_CHECK_LIMIT: usize = 128;

struct Check {
    name: &'static str,
    pass: bool,
    detail: String,
}

#[derive(Default)]
struct Checks(Vec<Check>);

impl Checks {
    fn add(&mut self, name: &'static str, pass: bool, detail: impl Into<String>) {
        self.0.push(Check {
            name,
            pass,
            detail: detail.into(),
        });
    }

    /// Records a failed computation as a failed check instead of aborting.
    fn try_add(&mut self, name: &'static str, f: impl FnOnce() -> Result<(bool, String)>) {
        match f() {
            Ok((pass, detail)) => self.add(name, pass, detail),
            Err(e) => self.add(name, false, format!("{}: {e}", e.kind())),
        }
    }
}

pub fn verify(cx: &Context) -> Result<Report> {
    let g = cx.group;
    let mut c = Checks::default();
    if !cx.input.audit.is_empty() {
        let bad: Vec<&str> = cx
            .input
            .audit
            .iter()
            .filter(|r| !r.holds)
            .map(|r| r.relation.as_str())
            .collect();
        c.add(
            "relations",
            bad.is_empty(),
            if bad.is_empty() {
                "all hold".to_string()
            } else {
                bad.join("; ")
            },
        );
    }
    let fam = cx.family()?;
    let bad: Vec<String> = fam
        .records
        .iter()
        .filter(|r| !is_strong_shoda_pair(g, &r.h, &r.k).holds)
        .map(|r| cx.pair(r))
        .collect();
    c.add(
        "strong_shoda_pairs",
        bad.is_empty(),
        format!("{} records, {} failing", fam.records.len(), bad.len()),
    );
    c.add(
        "certificate",
        fam.certificate_sum == g.order() as u64,
        format!("{} against |G| = {}", fam.certificate_sum, g.order()),
    );
    c.add("complete", fam.complete, "");
    let suite = idempotent_suite(&fam);
    c.add(
        "idempotents",
        suite.holds(),
        format!(
            "central {}, idempotent {}, orthogonal {}, sum {}",
            suite.central, suite.idempotent, suite.orthogonal, suite.sum_is_one
        ),
    );
    let dec = decomposition(&fam);
    c.add(
        "dimension_audit",
        dec.is_ok(),
        match &dec {
            Ok(d) => format!("{} = |G|", d.total_dimension),
            Err(e) => e.to_string(),
        },
    );
    let rank = rank_central_units(&fam);
    c.try_add("rank_zero_iff_trivial", || {
        let r = rank.clone()?;
        let t = trivial_central_units(&fam)?;
        Ok(((r == 0) == t, format!("rank {r}, trivial {t}")))
    });

    if let Some(entry) = &cx.input.entry {
        if let Some(want) = expected_rank(entry) {
            c.try_add("rank_formula", || {
                let r = rank.clone()?;
                Ok((r == want, format!("{r}, expected {want}")))
            });
        }
        if let (Some(mut want), Ok(d)) = (expected_decomposition(entry), &dec) {
            let mut got = d.multiset();
            got.sort();
            want.sort();
            c.add("decomposition_table", got == want, d.to_string());
        }
        if let Some(reference) = published_pairs(entry) {
            c.try_add("published_pairs", || {
                let cmp = compare_family(&fam, &reference)?;
                Ok((
                    cmp.all_equivalent,
                    format!("equivalent {}, same shapes {}", cmp.all_equivalent, cmp.same_shapes),
                ))
            });
            let want_n = expected_n_values(entry);
            let want_bound = expected_bound(entry);
            if want_n.is_some() || want_bound.is_some() {
                let published = reference
                    .iter()
                    .map(|x| resolve(g, x))
                    .collect::<Result<Vec<_>>>()
                    .and_then(|pairs| family_from_pairs(g, &pairs));
                if let Some(want) = want_n {
                    c.try_add("exponent_table", || {
                        let got = n_values(published.as_ref().map_err(Clone::clone)?, cx.ngm_cap())?;
                        Ok((got == want, format!("{got:?}")))
                    });
                }
                if let Some(want) = want_bound {
                    c.try_add("index_bound", || {
                        let fam = published.as_ref().map_err(Clone::clone)?;
                        let r = index_bound_with_cap(fam, &cx.class_numbers(), cx.ngm_cap())?;
                        Ok((r.total == want && r.total == r.recompute(), r.total.to_string()))
                    });
                }
            }
        }
        if matches!(entry.family, Family::D4 | Family::Q8) || Family::ORDER_16_OTHERS.contains(&entry.family) {
            c.try_add("trivial_central_units", || {
                Ok((trivial_central_units(&fam)?, String::new()))
            });
        }
    }

    if g.order() <= BASIS_CHECK_LIMIT {
        c.try_add("basis_units", || {
            let basis = virtual_basis(&fam, cx.ngm_cap())?;
            for b in &basis {
                if !has_unit_augmentation(&b.unit) {
                    return Ok((
                        false,
                        format!(
                            "record {} k = {}: augmentation {}",
                            b.record,
                            b.k,
                            b.unit.augmentation()
                        ),
                    ));
                }
                let inv = inverse(&b.unit)?;
                if !b.unit.mul(&inv)?.is_one() {
                    return Err(Error::NotInvertible);
                }
            }
            let rank = rank.clone()?;
            Ok((
                basis.len() as u64 == rank,
                format!("{} units, rank {rank}", basis.len()),
            ))
        });
    }

    let ok = c.0.iter().all(|x| x.pass);
    let rows: Vec<Value> =
        c.0.iter()
            .map(|x| json!({"check": x.name, "pass": x.pass, "detail": x.detail}))
            .collect();
    let mut v = json!({"group": cx.input.name, "order": g.order(), "checks": rows, "pass": ok});
    v["failed"] = json!(c.0.iter().filter(|x| !x.pass).count());
    let mut t = String::new();
    for x in &c.0 {
        writeln!(
            t,
            "{} {:<22} {}",
            if x.pass { "PASS" } else { "FAIL" },
            x.name,
            x.detail
        )
        .unwrap();
    }
    writeln!(
        t,
        "{}: {}",
        cx.input.name,
        if ok { "all checks pass" } else { "FAILED" }
    )
    .unwrap();
    Ok(Report { json: v, text: t, ok })
}
