use std::fmt::Write as _;
use std::sync::Arc;

use central_units::bass::{default_ngm_cap, n_values, project_central_unit, virtual_basis};
use central_units::bound::{abelian_bound, index_bound_with_cap, trivial_central_units, ClassNumbers};
use central_units::known::resolve;
use central_units::numtheory::prime_power;
use central_units::shoda::{compute_ssp_family_with_cap, family_from_pairs, idempotent_suite};
use central_units::wedderburn::{decomposition, rank_central_units};
use central_units::{CyclotomicNumber, FiniteGroup, Rational, Result, ShodaPairRecord, SspFamily};
use serde_json::{json, Value};

use crate::input::Input;
use crate::{Command, RunConfig};

/// What a command produced. `ok` is false only when `verify` found a failure.
pub struct Report {
    pub json: Value,
    pub text: String,
    pub ok: bool,
}

impl Report {
    fn new(json: Value, text: String) -> Self {
        Report { json, text, ok: true }
    }
}

/// Shared state of one run.
pub struct Context<'a> {
    pub cfg: &'a RunConfig,
    pub input: &'a Input,
    pub group: &'a Arc<FiniteGroup>,
}

impl Context<'_> {
    pub fn family(&self) -> Result<SspFamily> {
        match &self.input.pairs {
            Some(pairs) => {
                let pairs = pairs
                    .iter()
                    .map(|x| resolve(self.group, x))
                    .collect::<Result<Vec<_>>>()?;
                family_from_pairs(self.group, &pairs)
            }
            None => compute_ssp_family_with_cap(self.group, self.cfg.cap_subgroups as usize),
        }
    }

    pub fn ngm_cap(&self) -> u64 {
        self.cfg.cap_ngm.unwrap_or_else(|| default_ngm_cap(self.group))
    }

    pub fn class_numbers(&self) -> ClassNumbers {
        ClassNumbers::with_overrides(self.cfg.h_plus.iter().map(|h| (h.0, h.1)))
    }

    pub fn pair(&self, r: &ShodaPairRecord) -> String {
        format!(
            "({}, {})",
            self.group.subgroup_name(&r.h),
            self.group.subgroup_name(&r.k)
        )
    }

    fn base(&self) -> Value {
        json!({"group": self.input.name, "order": self.group.order()})
    }
}

pub fn dispatch(cfg: &RunConfig, input: &Input) -> Result<Report> {
    let cx = Context {
        cfg,
        input,
        group: &input.group,
    };
    match cfg.command {
        Command::Info => info(&cx),
        Command::Ssp => ssp(&cx),
        Command::Idempotents => idempotents(&cx),
        Command::Wedderburn => wedderburn(&cx),
        Command::Rank => rank(&cx),
        Command::BassN => bass_n(&cx),
        Command::Basis => basis(&cx),
        Command::Bound => bound(&cx),
        Command::Verify => crate::verify::verify(&cx),
    }
}

pub fn rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn cyclotomic_json(x: &CyclotomicNumber) -> Value {
    json!({"conductor": x.conductor(), "coeffs": x.coeffs().iter().map(rational).collect::<Vec<_>>()})
}

/// `c0 + c1 z + ...` with `z` a primitive root of unity.
fn cyclotomic_text(x: &CyclotomicNumber) -> String {
    let terms: Vec<String> = x
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
        .map(|(i, c)| match i {
            0 => c.to_string(),
            1 => format!("{c}*z"),
            _ => format!("{c}*z^{i}"),
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        format!("{} (z = zeta_{})", terms.join(" + "), x.conductor())
    }
}

fn info(cx: &Context) -> Result<Report> {
    let g = cx.group;
    let gens: Vec<String> = g.generators().iter().map(|&x| g.label(x)).collect();
    let audit: Vec<Value> = cx
        .input
        .audit
        .iter()
        .map(|r| json!({"relation": r.relation, "holds": r.holds}))
        .collect();
    let mut v = cx.base();
    v["exponent"] = json!(g.exponent());
    v["abelian"] = json!(g.is_abelian());
    v["center_order"] = json!(g.center().len());
    v["generators"] = json!(gens);
    v["relations"] = json!(audit);
    let mut t = format!(
        "{}: order {}, exponent {}, center of order {}{}\n",
        cx.input.name,
        g.order(),
        g.exponent(),
        g.center().len(),
        if g.is_abelian() { ", abelian" } else { "" }
    );
    writeln!(t, "generators: {}", gens.join(", ")).unwrap();
    for r in &cx.input.audit {
        writeln!(t, "  {} {}", if r.holds { "ok  " } else { "FAIL" }, r.relation).unwrap();
    }
    Ok(Report::new(v, t))
}

pub fn records_json(cx: &Context, fam: &SspFamily) -> Value {
    let g = cx.group;
    let rows: Vec<Value> = fam
        .records
        .iter()
        .enumerate()
        .map(|(i, r)| {
            json!({
                "index": i,
                "h": g.subgroup_name(&r.h),
                "k": g.subgroup_name(&r.k),
                "h_order": r.h.len(),
                "k_order": r.k.len(),
                "normalizer_order": r.n.len(),
                "q": r.q,
                "normalizer_index": r.m,
            })
        })
        .collect();
    json!(rows)
}

fn ssp(cx: &Context) -> Result<Report> {
    let fam = cx.family()?;
    let mut v = cx.base();
    v["records"] = records_json(cx, &fam);
    v["certificate_sum"] = json!(fam.certificate_sum);
    v["normally_monomial"] = json!(fam.normally_monomial);
    v["complete"] = json!(fam.complete);
    let mut t = format!(
        "{} strong Shoda pairs, certificate {} (|G| = {}), complete: {}\n",
        fam.records.len(),
        fam.certificate_sum,
        cx.group.order(),
        fam.complete
    );
    for (i, r) in fam.records.iter().enumerate() {
        writeln!(t, "{i:>3} {}  q = {}  [G:N] = {}", cx.pair(r), r.q, r.m).unwrap();
    }
    Ok(Report::new(v, t))
}

fn idempotents(cx: &Context) -> Result<Report> {
    let fam = cx.family()?;
    let suite = idempotent_suite(&fam);
    let rows: Vec<Value> = fam
        .records
        .iter()
        .enumerate()
        .map(|(i, r)| json!({"index": i, "pair": cx.pair(r), "e": r.e.to_json()}))
        .collect();
    let mut v = cx.base();
    v["idempotents"] = json!(rows);
    v["checks"] = serde_json::to_value(suite).expect("serializable");
    let mut t = String::new();
    for (i, r) in fam.records.iter().enumerate() {
        writeln!(t, "e{i} from {}: {} terms", cx.pair(r), r.e.support().len()).unwrap();
    }
    writeln!(
        t,
        "central: {}, idempotent: {}, orthogonal: {}, sum is 1: {}",
        suite.central, suite.idempotent, suite.orthogonal, suite.sum_is_one
    )
    .unwrap();
    Ok(Report::new(v, t))
}

fn wedderburn(cx: &Context) -> Result<Report> {
    let fam = cx.family()?;
    let d = decomposition(&fam)?;
    let multiset: Vec<Value> = d
        .multiset()
        .into_iter()
        .map(|(s, n)| json!({"component": s, "multiplicity": n}))
        .collect();
    let comps: Vec<Value> = d
        .components
        .iter()
        .map(|c| {
            let mut x = serde_json::to_value(c).expect("serializable");
            x["display"] = json!(c.display());
            x["dimension"] = json!(c.dimension());
            x
        })
        .collect();
    let mut v = cx.base();
    v["components"] = json!(comps);
    v["multiset"] = json!(multiset);
    v["total_dimension"] = json!(d.total_dimension);
    let t = format!("Q[G] = {d}\ndimension {}\n", d.total_dimension);
    Ok(Report::new(v, t))
}

fn rank(cx: &Context) -> Result<Report> {
    let fam = cx.family()?;
    let r = rank_central_units(&fam)?;
    let mut v = cx.base();
    v["rank"] = json!(r);
    let mut t = format!("{r}\n");
    if r == 0 {
        v["note"] = json!("trivial central units");
        t.push_str("trivial central units\n");
    }
    Ok(Report::new(v, t))
}

fn bass_n(cx: &Context) -> Result<Report> {
    let fam = cx.family()?;
    let ns = n_values(&fam, cx.ngm_cap())?;
    let rows: Vec<Value> = fam
        .records
        .iter()
        .zip(&ns)
        .enumerate()
        .map(|(i, (r, n))| json!({"index": i, "pair": cx.pair(r), "q": r.q, "n": n}))
        .collect();
    let mut v = cx.base();
    v["exponents"] = json!(rows);
    let mut t = String::new();
    for (i, (r, n)) in fam.records.iter().zip(&ns).enumerate() {
        writeln!(t, "{i:>3} {}  n = {n}", cx.pair(r)).unwrap();
    }
    Ok(Report::new(v, t))
}

fn basis(cx: &Context) -> Result<Report> {
    let fam = cx.family()?;
    let basis = virtual_basis(&fam, cx.ngm_cap())?;
    let mut rows = Vec::new();
    let mut t = format!("{} units\n", basis.len());
    for b in &basis {
        let rec = &fam.records[b.record];
        let image = project_central_unit(cx.group, rec, &b.unit.to_rational())?;
        rows.push(json!({
            "record": b.record,
            "pair": cx.pair(rec),
            "k": b.k,
            "augmentation": b.unit.augmentation().to_string(),
            "unit": b.unit.to_json(),
            "projection": cyclotomic_json(&image),
        }));
        writeln!(
            t,
            "record {} {} k = {}: {} terms, projection {}",
            b.record,
            cx.pair(rec),
            b.k,
            b.unit.support().len(),
            cyclotomic_text(&image)
        )
        .unwrap();
    }
    let mut v = cx.base();
    v["rank"] = json!(basis.len());
    v["basis"] = json!(rows);
    Ok(Report::new(v, t))
}

fn bound(cx: &Context) -> Result<Report> {
    let fam = cx.family()?;
    let h = cx.class_numbers();
    let report = index_bound_with_cap(&fam, &h, cx.ngm_cap())?;
    let mut v = cx.base();
    v["rows"] = serde_json::to_value(&report.rows).expect("serializable");
    v["total"] = json!({"value": report.total.value.to_string(), "factored": report.total.to_string()});
    v["trivial_central_units"] = json!(trivial_central_units(&fam)?);
    let mut t = format!("{}\n", report.total);
    for r in &report.rows {
        writeln!(
            t,
            "  record {} (q = {}, |I| = {}): {}",
            r.ssp_index, r.q, r.i_size, r.factor
        )
        .unwrap();
    }
    let g = cx.group;
    if g.is_abelian() && g.order() > 1 && prime_power(g.order() as u64).is_some() {
        let a = abelian_bound(g, &h)?;
        v["abelian"] = serde_json::to_value(&a).expect("serializable");
        writeln!(t, "full unit group bound: {}", a.total).unwrap();
    }
    Ok(Report::new(v, t))
}
