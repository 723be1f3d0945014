//! Named groups built from their presentations.
//!
//! Every presentation here is a tower of cyclic extensions: each new
//! generator `g` has a relative order `o`, a power `g^o` lying in the group
//! built so far, and acts on the earlier generators by conjugation. The
//! builder derives the whole Cayley table from that data, checks that the
//! action really is an automorphism compatible with the power relation, and
//! afterwards audits the literal defining relations in the finished group.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::numtheory::{is_prime, prime_power};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    G1,
    G2,
    G3,
    G4,
    G5,
    G6,
    G7,
    G8,
    G9,
    G10,
    H1,
    H2,
    ScriptG1,
    ScriptG2,
    D4,
    Q8,
    AbelianP,
    /// Semidihedral group of order 16.
    SD16,
    /// Modular group `<a, b : a^8 = b^2 = 1, bab^-1 = a^5>`.
    M16,
    C2xD4,
    C2xQ8,
    /// `C4 : C4` with `bab^-1 = a^-1`.
    C4sC4,
    /// Central product of `C4` and `D4`.
    C4oD4,
    /// `(C2 x C2) : C4`.
    C2C2sC4,
}

impl Family {
    pub const ALL: [Family; 24] = [
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
        Family::H1,
        Family::H2,
        Family::ScriptG1,
        Family::ScriptG2,
        Family::D4,
        Family::Q8,
        Family::AbelianP,
        Family::SD16,
        Family::M16,
        Family::C2xD4,
        Family::C2xQ8,
        Family::C4sC4,
        Family::C4oD4,
        Family::C2C2sC4,
    ];

    /// The non-abelian groups of order 16 other than `H1` and `H2`.
    pub const ORDER_16_OTHERS: [Family; 7] = [
        Family::SD16,
        Family::M16,
        Family::C2xD4,
        Family::C2xQ8,
        Family::C4sC4,
        Family::C4oD4,
        Family::C2C2sC4,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::G1 => "G1",
            Family::G2 => "G2",
            Family::G3 => "G3",
            Family::G4 => "G4",
            Family::G5 => "G5",
            Family::G6 => "G6",
            Family::G7 => "G7",
            Family::G8 => "G8",
            Family::G9 => "G9",
            Family::G10 => "G10",
            Family::H1 => "H1",
            Family::H2 => "H2",
            Family::ScriptG1 => "ScriptG1",
            Family::ScriptG2 => "ScriptG2",
            Family::D4 => "D4",
            Family::Q8 => "Q8",
            Family::AbelianP => "AbelianP",
            Family::SD16 => "SD16",
            Family::M16 => "M16",
            Family::C2xD4 => "C2xD4",
            Family::C2xQ8 => "C2xQ8",
            Family::C4sC4 => "C4sC4",
            Family::C4oD4 => "C4oD4",
            Family::C2C2sC4 => "C2C2sC4",
        }
    }

    pub fn from_name(s: &str) -> Option<Family> {
        Family::ALL.into_iter().find(|f| f.name().eq_ignore_ascii_case(s))
    }

    /// Whether the family takes an odd prime `p`.
    pub fn needs_p(self) -> bool {
        matches!(
            self,
            Family::G1
                | Family::G2
                | Family::G3
                | Family::G4
                | Family::G5
                | Family::G6
                | Family::G7
                | Family::G8
                | Family::G9
                | Family::G10
                | Family::ScriptG1
                | Family::ScriptG2
        )
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub family: Family,
    pub p: Option<u64>,
    /// Only used by `G8` for `p > 3`.
    pub d: Option<u64>,
    /// Cyclic factor orders for `AbelianP`.
    pub invariants: Vec<u64>,
}

impl CatalogEntry {
    pub fn new(family: Family) -> Self {
        CatalogEntry {
            family,
            p: None,
            d: None,
            invariants: vec![],
        }
    }

    pub fn with_p(family: Family, p: u64) -> Self {
        CatalogEntry {
            family,
            p: Some(p),
            d: None,
            invariants: vec![],
        }
    }

    pub fn abelian(invariants: &[u64]) -> Self {
        CatalogEntry {
            family: Family::AbelianP,
            p: None,
            d: None,
            invariants: invariants.to_vec(),
        }
    }

    /// Short human readable name such as `G3(p=5)`.
    pub fn display_name(&self) -> String {
        match (self.family, self.p) {
            (Family::AbelianP, _) => format!("AbelianP{:?}", self.invariants),
            (Family::G8, Some(p)) if p > 3 => format!("G8(p={p},d={})", self.d.unwrap_or(2)),
            (f, Some(p)) if f.needs_p() => format!("{f}(p={p})"),
            (f, _) => f.name().to_string(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CatalogDescriptor {
    pub name: &'static str,
    pub parameters: &'static str,
    pub order: &'static str,
    pub note: &'static str,
}

pub fn list_catalog() -> Vec<CatalogDescriptor> {
    let d = |name, parameters, order, note| CatalogDescriptor {
        name,
        parameters,
        order,
        note,
    };
    vec![
        d("G1", "p odd prime", "p^4", ""),
        d("G2", "p odd prime", "p^4", ""),
        d("G3", "p odd prime", "p^4", ""),
        d("G4", "p odd prime", "p^4", ""),
        d("G5", "p odd prime", "p^4", ""),
        d("G6", "p odd prime", "p^4", ""),
        d("G7", "p odd prime", "p^4", "p=3 presentation differs"),
        d(
            "G8",
            "p odd prime; d with d != 0,1 mod p when p>3 (default 2)",
            "p^4",
            "p=3 presentation differs",
        ),
        d("G9", "p odd prime", "p^4", ""),
        d("G10", "p odd prime", "p^4", "p=3 presentation differs"),
        d("H1", "", "16", "dihedral"),
        d("H2", "", "16", "generalized quaternion"),
        d("ScriptG1", "p odd prime", "p^3", ""),
        d("ScriptG2", "p odd prime", "p^3", ""),
        d("D4", "", "8", ""),
        d("Q8", "", "8", ""),
        d(
            "AbelianP",
            "invariants: prime powers of one prime",
            "product of invariants",
            "abelian p-group",
        ),
        d("SD16", "", "16", "semidihedral"),
        d("M16", "", "16", "modular"),
        d("C2xD4", "", "16", ""),
        d("C2xQ8", "", "16", ""),
        d("C4sC4", "", "16", "semidirect product C4 : C4"),
        d("C4oD4", "", "16", "central product"),
        d("C2C2sC4", "", "16", "semidirect product (C2 x C2) : C4"),
    ]
}

/// One defining relation of a presentation and whether it holds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationCheck {
    pub relation: String,
    pub holds: bool,
}

/// A built group together with its relation audit.
#[derive(Clone, Debug)]
pub struct Built {
    pub group: FiniteGroup,
    pub audit: Vec<RelationCheck>,
}

/// Builds the group and fails unless every defining relation holds.
pub fn build(entry: &CatalogEntry) -> Result<FiniteGroup> {
    let built = build_with_audit(entry)?;
    if let Some(bad) = built.audit.iter().find(|r| !r.holds) {
        return Err(Error::BadParameter(format!(
            "{}: relation {} fails in the built group",
            entry.display_name(),
            bad.relation
        )));
    }
    Ok(built.group)
}

pub fn build_with_audit(entry: &CatalogEntry) -> Result<Built> {
    let (levels, relations) = presentation(entry)?;
    let group = build_tower(&levels)?;
    let audit = relations
        .into_iter()
        .map(|(lhs, rhs)| {
            let holds = word(&group, &lhs)? == word(&group, &rhs)?;
            Ok(RelationCheck {
                relation: format!("{lhs} = {rhs}"),
                holds,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Built { group, audit })
}

/// How one new generator acts on the earlier ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Side {
    /// `g x g^-1 = image`.
    Forward,
    /// `g^-1 x g = image`.
    Backward,
}

#[derive(Clone, Debug)]
struct Level {
    name: char,
    order: usize,
    /// `g^order`, a word in the earlier generators.
    power: String,
    /// Image of each earlier generator, in order.
    images: Vec<String>,
    side: Side,
}

fn level(name: char, order: u64, power: &str, images: &[String], side: Side) -> Level {
    Level {
        name,
        order: order as usize,
        power: power.to_string(),
        images: images.to_vec(),
        side,
    }
}

fn s(x: &str) -> String {
    x.to_string()
}

type Levels = Vec<Level>;
type Relations = Vec<(String, String)>;

fn odd_prime(entry: &CatalogEntry) -> Result<u64> {
    match entry.p {
        Some(p) if p > 2 && is_prime(p) => Ok(p),
        Some(p) => Err(Error::BadParameter(format!(
            "{}: p = {p} is not an odd prime",
            entry.family
        ))),
        None => Err(Error::BadParameter(format!("{} needs an odd prime p", entry.family))),
    }
}

fn rel(l: &str, r: &str) -> (String, String) {
    (l.to_string(), r.to_string())
}

fn presentation(entry: &CatalogEntry) -> Result<(Levels, Relations)> {
    use Family::*;
    use Side::*;
    let f = entry.family;
    if f.needs_p() {
        let p = odd_prime(entry)?;
        let p2 = p * p;
        return Ok(match f {
            ScriptG1 => (
                vec![
                    level('a', p2, "", &[], Forward),
                    level('b', p, "", &[format!("a^{}", p + 1)], Backward),
                ],
                vec![
                    rel(&format!("a^{p2}"), ""),
                    rel(&format!("b^{p}"), ""),
                    rel("ab", &format!("ba^{}", p + 1)),
                ],
            ),
            ScriptG2 => (
                vec![
                    level('c', p, "", &[], Forward),
                    level('a', p, "", &[s("c")], Forward),
                    level('b', p, "", &[s("c"), s("ac")], Backward),
                ],
                vec![
                    rel(&format!("a^{p}"), ""),
                    rel(&format!("b^{p}"), ""),
                    rel(&format!("c^{p}"), ""),
                    rel("ab", "bac"),
                    rel("ac", "ca"),
                    rel("bc", "cb"),
                ],
            ),
            G1 => (
                vec![
                    level('a', p2 * p, "", &[], Forward),
                    level('b', p, "", &[format!("a^{}", 1 + p2)], Forward),
                ],
                vec![
                    rel(&format!("a^{}", p2 * p), ""),
                    rel(&format!("b^{p}"), ""),
                    rel("ba", &format!("a^{}b", 1 + p2)),
                ],
            ),
            G2 => (
                vec![
                    level('a', p2, "", &[], Forward),
                    level('b', p, "", &[s("a")], Forward),
                    level('c', p, "", &[s("a"), format!("a^{p}b")], Forward),
                ],
                vec![
                    rel(&format!("a^{p2}"), ""),
                    rel(&format!("b^{p}"), ""),
                    rel(&format!("c^{p}"), ""),
                    rel("cb", &format!("a^{p}bc")),
                    rel("ab", "ba"),
                    rel("ac", "ca"),
                ],
            ),
            G3 => (
                vec![
                    level('a', p2, "", &[], Forward),
                    level('b', p2, "", &[format!("a^{}", 1 + p)], Forward),
                ],
                vec![
                    rel(&format!("a^{p2}"), ""),
                    rel(&format!("b^{p2}"), ""),
                    rel("ba", &format!("a^{}b", 1 + p)),
                ],
            ),
            G4 => (
                vec![
                    level('a', p2, "", &[], Forward),
                    level('b', p, "", &[s("a")], Forward),
                    level('c', p, "", &[format!("a^{}", 1 + p), s("b")], Forward),
                ],
                vec![
                    rel(&format!("a^{p2}"), ""),
                    rel(&format!("b^{p}"), ""),
                    rel(&format!("c^{p}"), ""),
                    rel("ca", &format!("a^{}c", 1 + p)),
                    rel("ba", "ab"),
                    rel("cb", "bc"),
                ],
            ),
            G5 => (
                vec![
                    level('a', p2, "", &[], Forward),
                    level('b', p, "", &[s("a")], Forward),
                    level('c', p, "", &[s("ab"), s("b")], Forward),
                ],
                vec![
                    rel(&format!("a^{p2}"), ""),
                    rel(&format!("b^{p}"), ""),
                    rel(&format!("c^{p}"), ""),
                    rel("ca", "abc"),
                    rel("ab", "ba"),
                    rel("bc", "cb"),
                ],
            ),
            G6 => (
                vec![
                    level('a', p2, "", &[], Forward),
                    level('b', p, "", &[format!("a^{}", 1 + p)], Forward),
                    level('c', p, "", &[s("ab"), s("b")], Forward),
                ],
                vec![
                    rel(&format!("a^{p2}"), ""),
                    rel(&format!("b^{p}"), ""),
                    rel(&format!("c^{p}"), ""),
                    rel("ba", &format!("a^{}b", 1 + p)),
                    rel("ca", "abc"),
                    rel("cb", "bc"),
                ],
            ),
            G7 | G8 if p == 3 => {
                let cp = if f == G7 { format!("a^{p}") } else { format!("a^-{p}") };
                (
                    vec![
                        level('a', p2, "", &[], Forward),
                        level('b', p, "", &[format!("a^{}", 1 + p)], Backward),
                        level('c', p, &cp, &[s("ab^-1"), s("b")], Backward),
                    ],
                    vec![
                        rel(&format!("a^{p2}"), ""),
                        rel(&format!("b^{p}"), ""),
                        rel(&format!("c^{p}"), &cp),
                        rel("ab", &format!("ba^{}", 1 + p)),
                        rel("ac", "cab^-1"),
                        rel("cb", "bc"),
                    ],
                )
            }
            G7 | G8 => {
                let d = if f == G7 {
                    1
                } else {
                    let d = entry.d.unwrap_or(2);
                    if d.is_multiple_of(p) || d % p == 1 {
                        return Err(Error::BadParameter(format!(
                            "G8: d = {d} must satisfy d != 0, 1 mod {p}"
                        )));
                    }
                    d % p
                };
                let a1 = format!("a^{}b", 1 + d * p);
                let a2 = format!("a^{}b", d * p);
                (
                    vec![
                        level('a', p2, "", &[], Forward),
                        level('b', p, "", &[format!("a^{}", 1 + p)], Forward),
                        level('c', p, "", &[a1.clone(), a2.clone()], Forward),
                    ],
                    vec![
                        rel(&format!("a^{p2}"), ""),
                        rel(&format!("b^{p}"), ""),
                        rel(&format!("c^{p}"), ""),
                        rel("ba", &format!("a^{}b", 1 + p)),
                        rel("ca", &format!("{a1}c")),
                        rel("cb", &format!("{a2}c")),
                    ],
                )
            }
            G9 => (
                vec![
                    level('a', p, "", &[], Forward),
                    level('b', p, "", &[s("a")], Forward),
                    level('c', p, "", &[s("a"), s("b")], Forward),
                    level('d', p, "", &[s("a"), s("b"), s("ac")], Forward),
                ],
                vec![
                    rel(&format!("a^{p}"), ""),
                    rel(&format!("b^{p}"), ""),
                    rel(&format!("c^{p}"), ""),
                    rel(&format!("d^{p}"), ""),
                    rel("dc", "acd"),
                    rel("bd", "db"),
                    rel("ad", "da"),
                    rel("bc", "cb"),
                    rel("ac", "ca"),
                    rel("ab", "ba"),
                ],
            ),
            G10 if p == 3 => (
                vec![
                    level('a', p2, "", &[], Forward),
                    level('b', p, "", &[s("a")], Forward),
                    level('c', p, "", &[s("ab"), format!("a^-{p}b")], Backward),
                ],
                vec![
                    rel(&format!("a^{p2}"), ""),
                    rel(&format!("b^{p}"), ""),
                    rel(&format!("c^{p}"), ""),
                    rel("ab", "ba"),
                    rel("ac", "cab"),
                    rel("bc", &format!("ca^-{p}b")),
                ],
            ),
            G10 => (
                vec![
                    level('a', p, "", &[], Forward),
                    level('b', p, "", &[s("a")], Forward),
                    level('c', p, "", &[s("a"), s("b")], Forward),
                    level('d', p, "", &[s("a"), s("ab"), s("bc")], Forward),
                ],
                vec![
                    rel(&format!("a^{p}"), ""),
                    rel(&format!("b^{p}"), ""),
                    rel(&format!("c^{p}"), ""),
                    rel(&format!("d^{p}"), ""),
                    rel("dc", "bcd"),
                    rel("db", "abd"),
                    rel("ad", "da"),
                    rel("bc", "cb"),
                    rel("ac", "ca"),
                    rel("ab", "ba"),
                ],
            ),
            _ => unreachable!(),
        });
    }
    Ok(match f {
        H1 => (
            vec![level('a', 8, "", &[], Forward), level('b', 2, "", &[s("a^7")], Forward)],
            vec![rel("a^8", ""), rel("b^2", ""), rel("ba", "a^7b")],
        ),
        H2 => (
            vec![
                level('a', 8, "", &[], Forward),
                level('b', 2, "a^4", &[s("a^7")], Forward),
            ],
            vec![rel("a^8", ""), rel("b^4", ""), rel("ba", "a^7b"), rel("a^4", "b^2")],
        ),
        D4 => (
            vec![level('a', 4, "", &[], Forward), level('b', 2, "", &[s("a^3")], Forward)],
            vec![rel("a^4", ""), rel("b^2", ""), rel("ba", "a^3b")],
        ),
        Q8 => (
            vec![
                level('a', 4, "", &[], Forward),
                level('b', 2, "a^2", &[s("a^3")], Forward),
            ],
            vec![rel("a^4", ""), rel("b^2", "a^2"), rel("ba", "a^3b")],
        ),
        SD16 => (
            vec![level('a', 8, "", &[], Forward), level('b', 2, "", &[s("a^3")], Forward)],
            vec![rel("a^8", ""), rel("b^2", ""), rel("ba", "a^3b")],
        ),
        M16 => (
            vec![level('a', 8, "", &[], Forward), level('b', 2, "", &[s("a^5")], Forward)],
            vec![rel("a^8", ""), rel("b^2", ""), rel("ba", "a^5b")],
        ),
        C2xD4 => (
            vec![
                level('a', 4, "", &[], Forward),
                level('b', 2, "", &[s("a^3")], Forward),
                level('c', 2, "", &[s("a"), s("b")], Forward),
            ],
            vec![
                rel("a^4", ""),
                rel("b^2", ""),
                rel("c^2", ""),
                rel("ba", "a^3b"),
                rel("ca", "ac"),
                rel("cb", "bc"),
            ],
        ),
        C2xQ8 => (
            vec![
                level('a', 4, "", &[], Forward),
                level('b', 2, "a^2", &[s("a^3")], Forward),
                level('c', 2, "", &[s("a"), s("b")], Forward),
            ],
            vec![
                rel("a^4", ""),
                rel("b^2", "a^2"),
                rel("c^2", ""),
                rel("ba", "a^3b"),
                rel("ca", "ac"),
                rel("cb", "bc"),
            ],
        ),
        C4sC4 => (
            vec![level('a', 4, "", &[], Forward), level('b', 4, "", &[s("a^3")], Forward)],
            vec![rel("a^4", ""), rel("b^4", ""), rel("ba", "a^3b")],
        ),
        C4oD4 => (
            vec![
                level('a', 4, "", &[], Forward),
                level('b', 2, "", &[s("a^3")], Forward),
                level('c', 2, "a^2", &[s("a"), s("b")], Forward),
            ],
            vec![
                rel("a^4", ""),
                rel("b^2", ""),
                rel("c^2", "a^2"),
                rel("ba", "a^3b"),
                rel("ca", "ac"),
                rel("cb", "bc"),
            ],
        ),
        C2C2sC4 => (
            vec![
                level('a', 4, "", &[], Forward),
                level('b', 2, "", &[s("a")], Forward),
                level('c', 2, "", &[s("ab"), s("b")], Forward),
            ],
            vec![
                rel("a^4", ""),
                rel("b^2", ""),
                rel("c^2", ""),
                rel("ab", "ba"),
                rel("ca", "abc"),
                rel("cb", "bc"),
            ],
        ),
        AbelianP => {
            let inv = &entry.invariants;
            if inv.len() > 26 {
                return Err(Error::BadParameter("at most 26 cyclic factors".into()));
            }
            let mut prime = None;
            for &q in inv {
                match prime_power(q) {
                    Some((p, _)) if prime.is_none() || prime == Some(p) => prime = Some(p),
                    _ => {
                        return Err(Error::BadParameter(format!(
                            "AbelianP invariants must be powers of a single prime, got {inv:?}"
                        )))
                    }
                }
            }
            let names: Vec<char> = ('a'..='z').take(inv.len()).collect();
            let mut levels = Vec::new();
            let mut relations = Vec::new();
            for (i, &q) in inv.iter().enumerate() {
                let images: Vec<String> = names[..i].iter().map(|c| c.to_string()).collect();
                levels.push(level(names[i], q, "", &images, Forward));
                relations.push(rel(&format!("{}^{q}", names[i]), ""));
                for c in &names[..i] {
                    relations.push(rel(&format!("{}{c}", names[i]), &format!("{c}{}", names[i])));
                }
            }
            (levels, relations)
        }
        _ => unreachable!(),
    })
}

/// Parses words such as `a^5b^-1c` into `(generator, exponent)` pairs. The
/// empty word is the identity.
fn parse_word(w: &str) -> Result<Vec<(char, i64)>> {
    let chars: Vec<char> = w.chars().filter(|c| !c.is_whitespace()).collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c == '1' && chars.len() == 1 {
            break;
        }
        if !c.is_ascii_lowercase() {
            return Err(Error::Input(format!("bad word {w:?}")));
        }
        i += 1;
        let mut e = 1i64;
        if i < chars.len() && chars[i] == '^' {
            i += 1;
            let start = i;
            if i < chars.len() && chars[i] == '-' {
                i += 1;
            }
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            e = text
                .parse()
                .map_err(|_| Error::Input(format!("bad exponent in {w:?}")))?;
        }
        out.push((c, e));
    }
    Ok(out)
}

/// Evaluates a word in the single-letter generators of a catalog group.
pub fn word(g: &FiniteGroup, w: &str) -> Result<usize> {
    let mut acc = g.identity();
    for (c, e) in parse_word(w)? {
        let x = g
            .element_by_label(&c.to_string())
            .ok_or_else(|| Error::Input(format!("no generator named {c}")))?;
        acc = g.mul(acc, g.pow(x, e));
    }
    Ok(acc)
}

/// Partially built tower: a group table plus normal-form exponent vectors.
struct Tower {
    n: usize,
    mult: Vec<u32>,
    names: Vec<char>,
    gens: Vec<usize>,
    orders: Vec<usize>,
    exps: Vec<Vec<usize>>,
}

impl Tower {
    fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a * self.n + b] as usize
    }

    fn pow(&self, a: usize, e: i64) -> usize {
        // order of a divides n
        let e = e.rem_euclid(self.n as i64);
        (0..e).fold(0, |acc, _| self.mul(acc, a))
    }

    fn eval(&self, w: &str) -> Result<usize> {
        let mut acc = 0;
        for (c, e) in parse_word(w)? {
            let i = self
                .names
                .iter()
                .position(|&x| x == c)
                .ok_or_else(|| Error::BadParameter(format!("generator {c} used before it is defined")))?;
            acc = self.mul(acc, self.pow(self.gens[i], e));
        }
        Ok(acc)
    }
}

fn build_tower(levels: &[Level]) -> Result<FiniteGroup> {
    let mut t = Tower {
        n: 1,
        mult: vec![0],
        names: vec![],
        gens: vec![],
        orders: vec![],
        exps: vec![vec![]],
    };
    for lv in levels {
        extend(&mut t, lv)?;
    }
    let labels = t
        .exps
        .iter()
        .map(|ex| {
            let mut s = String::new();
            for (i, &e) in ex.iter().enumerate() {
                match e {
                    0 => {}
                    1 => s.push(t.names[i]),
                    _ => s.push_str(&format!("{}^{e}", t.names[i])),
                }
            }
            if s.is_empty() {
                s.push('1');
            }
            s
        })
        .collect();
    FiniteGroup::from_parts(t.n, t.mult, Some(labels), Some(t.gens))
}

fn extend(t: &mut Tower, lv: &Level) -> Result<()> {
    let n = t.n;
    let o = lv.order;
    let bad = |msg: String| Err(Error::BadParameter(format!("generator {}: {msg}", lv.name)));
    if o < 2 {
        return bad("relative order must be at least 2".into());
    }
    if lv.images.len() != t.gens.len() {
        return bad("one image per earlier generator is required".into());
    }
    let w = t.eval(&lv.power)?;
    let images = lv.images.iter().map(|s| t.eval(s)).collect::<Result<Vec<_>>>()?;

    // extend generator images to a map on all of G_j
    let mut map = vec![usize::MAX; n];
    map[0] = 0;
    let mut queue = vec![0];
    let mut i = 0;
    while i < queue.len() {
        let x = queue[i];
        for (&g, &img) in t.gens.iter().zip(&images) {
            let y = t.mul(x, g);
            let fy = t.mul(map[x], img);
            if map[y] == usize::MAX {
                map[y] = fy;
                queue.push(y);
            } else if map[y] != fy {
                return bad("conjugation images do not define a homomorphism".into());
            }
        }
        i += 1;
    }
    let mut phi = vec![usize::MAX; n];
    for (x, &y) in map.iter().enumerate() {
        if phi[y] != usize::MAX {
            return bad("conjugation images do not define an automorphism".into());
        }
        phi[y] = x;
    }
    if lv.side == Side::Forward {
        phi = map;
    }
    if phi[w] != w {
        return bad("the power relation is not centralized".into());
    }
    let mut powers = vec![(0..n).collect::<Vec<usize>>()];
    for e in 1..=o {
        let prev = &powers[e - 1];
        powers.push(prev.iter().map(|&x| phi[x]).collect());
    }
    let w_inv = (0..n).find(|&y| t.mul(w, y) == 0).expect("inverse");
    if (0..n).any(|x| powers[o][x] != t.mul(t.mul(w, x), w_inv)) {
        return bad("the action and the power relation are incompatible".into());
    }

    let big = n * o;
    let mut mult = vec![0u32; big * big];
    for e in 0..o {
        for x in 0..n {
            let a = x + e * n;
            for f in 0..o {
                for y in 0..n {
                    let mut z = t.mul(x, powers[e][y]);
                    let mut s = e + f;
                    if s >= o {
                        z = t.mul(z, w);
                        s -= o;
                    }
                    mult[a * big + y + f * n] = (z + s * n) as u32;
                }
            }
        }
    }
    let mut exps = Vec::with_capacity(big);
    for e in 0..o {
        for x in 0..n {
            let mut v = t.exps[x].clone();
            v.push(e);
            exps.push(v);
        }
    }
    t.n = big;
    t.mult = mult;
    t.names.push(lv.name);
    t.gens.push(n);
    t.orders.push(o);
    t.exps = exps;
    Ok(())
}
