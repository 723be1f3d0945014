use std::path::Path;
use std::sync::Arc;

use central_units::catalog::{build_with_audit, CatalogEntry, Family, RelationCheck};
use central_units::group::DEFAULT_CLOSURE_CAP;
use central_units::known::WordPair;
use central_units::numtheory::is_prime;
use central_units::{Error, FiniteGroup};
use serde::Deserialize;

/// The group a command runs on, with whatever is known about where it came from.
pub struct Input {
    pub group: Arc<FiniteGroup>,
    pub name: String,
    pub entry: Option<CatalogEntry>,
    pub audit: Vec<RelationCheck>,
    /// Explicit strong Shoda pairs to use instead of the computed family.
    pub pairs: Option<Vec<WordPair>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupFile {
    cayley: Option<Vec<Vec<usize>>>,
    permutations: Option<Vec<Vec<usize>>>,
    catalog: Option<String>,
    p: Option<u64>,
    d: Option<u64>,
    #[serde(default)]
    invariants: Vec<u64>,
    pairs: Option<Vec<PairSpec>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PairSpec {
    h: Option<Vec<String>>,
    k: Vec<String>,
}

/// Catalog entry from a name and parameters; `p` is checked here so that
/// nothing downstream sees a bad prime.
pub fn catalog_entry(name: &str, p: Option<u64>, d: Option<u64>, invariants: &[u64]) -> Result<CatalogEntry, Error> {
    let family = Family::from_name(name).ok_or_else(|| Error::Input(format!("unknown catalog group {name:?}")))?;
    if family == Family::AbelianP {
        if invariants.is_empty() {
            return Err(Error::Input("AbelianP needs --invariants".into()));
        }
        return Ok(CatalogEntry::abelian(invariants));
    }
    let mut entry = CatalogEntry::new(family);
    if family.needs_p() {
        let p = p.ok_or_else(|| Error::Input(format!("{family} needs --p")))?;
        if p < 3 || !is_prime(p) {
            return Err(Error::Input(format!("--p must be an odd prime, got {p}")));
        }
        entry.p = Some(p);
        if family == Family::G8 && p > 3 {
            entry.d = d;
        }
    }
    Ok(entry)
}

pub fn from_catalog(entry: CatalogEntry) -> Result<Input, Error> {
    let built = build_with_audit(&entry)?;
    Ok(Input {
        group: Arc::new(built.group),
        name: entry.display_name(),
        entry: Some(entry),
        audit: built.audit,
        pairs: None,
    })
}

pub fn from_file(path: &Path) -> Result<Input, Error> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
    let spec: GroupFile = serde_json::from_str(&text).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
    let given = [
        spec.cayley.is_some(),
        spec.permutations.is_some(),
        spec.catalog.is_some(),
    ];
    if given.iter().filter(|&&x| x).count() != 1 {
        return Err(Error::Input(
            "group file needs exactly one of cayley, permutations, catalog".into(),
        ));
    }
    let mut input = if let Some(table) = &spec.cayley {
        let g = FiniteGroup::from_cayley_table(table)?;
        plain(g, format!("cayley({})", table.len()))
    } else if let Some(perms) = &spec.permutations {
        let g = FiniteGroup::from_generators(perms, DEFAULT_CLOSURE_CAP)?;
        let degree = perms.first().map_or(0, Vec::len);
        plain(g, format!("permutations(degree {degree})"))
    } else {
        let name = spec.catalog.as_deref().unwrap_or_default();
        from_catalog(catalog_entry(name, spec.p, spec.d, &spec.invariants)?)?
    };
    input.pairs = spec.pairs.map(|ps| ps.into_iter().map(|x| (x.h, x.k)).collect());
    Ok(input)
}

fn plain(g: FiniteGroup, name: String) -> Input {
    Input {
        group: Arc::new(g),
        name,
        entry: None,
        audit: vec![],
        pairs: None,
    }
}
