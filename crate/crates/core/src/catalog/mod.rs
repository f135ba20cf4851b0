//! Machine-readable classification lists and an automated verifier.
//!
//! The shipped data lives in `data/catalog.json` (triplet entries) and `data/gl2_lsa.json`
//! (the left-symmetric algebras on `gl(2)`). Both are embedded at compile time.
//!
//! # Triplet entry schema
//!
//! ```text
//! id             unique string "<list>:<item>[-<instance>]"
//! sources        [{ "list": <list name>, "item": <item label> }]
//! descriptor     descriptor text (see the castling module)
//! twist          optional list of per-summand twist blocks; default twist when absent
//! twist_printed  whether the twist matrices were transcribed rather than chosen
//! claims         { is_pv, is_cuspidal, isotropy_dim, generic_isotropy }, all optional
//! instantiable   optional; derived from the descriptor when absent
//! provisional    optional, default false
//! generic_point  optional point tried before random search: a dense list of values or
//!                { "dim": n, "nonzero": [[index, value], ...] }
//! note           optional free text
//! ```
//!
//! List names: `irreducible-simple`, `gl-n`, `main-result`, `simple-multicenter`,
//! `two-simple-multicenter`, `reduced-cuspidal`, `isotropy-lemmas`, `non-pv`, and `gl2-lsa`
//! for the left-symmetric algebra table.

pub mod expr;
mod filter;
mod lsa_table;
mod verify;

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

pub use filter::Filter;
pub use lsa_table::{Gl2Instance, Gl2Table, IsoClaim};
pub use verify::{
    verify_all, verify_entry, verify_lsa_instance, verify_iso_claim, Check, Outcome, Status, Summary,
    VerificationReport, VerifyConfig,
};

use crate::castling::{Family, Label, TripletDescriptor, TwistSpec};
use crate::error::{Error, Result};
use crate::linalg::Rational;

const CATALOG_JSON: &str = include_str!("../../data/catalog.json");
const GL2_LSA_JSON: &str = include_str!("../../data/gl2_lsa.json");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Source {
    pub list: String,
    pub item: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claims {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub is_pv: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub is_cuspidal: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub isotropy_dim: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generic_isotropy: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GenericPoint {
    Dense(Vec<Rational>),
    Sparse { dim: usize, nonzero: Vec<(usize, Rational)> },
}

impl GenericPoint {
    pub fn len(&self) -> usize {
        match self {
            GenericPoint::Dense(v) => v.len(),
            GenericPoint::Sparse { dim, .. } => *dim,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn to_vec(&self) -> Result<Vec<Rational>> {
        match self {
            GenericPoint::Dense(v) => Ok(v.clone()),
            GenericPoint::Sparse { dim, nonzero } => {
                let mut v = vec![Rational::zero(); *dim];
                for (i, x) in nonzero {
                    if *i >= *dim {
                        return Err(Error::Catalog(format!("point index {i} out of range {dim}")));
                    }
                    v[*i] = x.clone();
                }
                Ok(v)
            }
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
struct RawEntry {
    id: String,
    sources: Vec<Source>,
    descriptor: String,
    #[serde(default)]
    twist: Option<TwistSpec>,
    #[serde(default)]
    twist_printed: bool,
    #[serde(default)]
    claims: Claims,
    #[serde(default)]
    instantiable: Option<bool>,
    #[serde(default)]
    provisional: bool,
    #[serde(default)]
    generic_point: Option<GenericPoint>,
    #[serde(default)]
    note: Option<String>,
}

#[derive(Clone, Debug, Deserialize)]
struct RawCatalog {
    version: u32,
    entries: Vec<RawEntry>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CatalogEntry {
    pub id: String,
    pub sources: Vec<Source>,
    pub descriptor: TripletDescriptor,
    pub twist: Option<TwistSpec>,
    pub twist_printed: bool,
    pub claims: Claims,
    pub instantiable: bool,
    pub provisional: bool,
    pub generic_point: Option<GenericPoint>,
    pub note: Option<String>,
}

impl CatalogEntry {
    pub fn in_list(&self, list: &str) -> bool {
        self.sources.iter().any(|s| s.list == list)
    }
}

/// Whether the descriptor uses a construction the verifier does not attempt: spin or
/// exceptional factors, or a third exterior power of a linear group of rank at least 6.
pub fn out_of_scope(t: &TripletDescriptor) -> bool {
    if t.has_spin() || t.has_exceptional() {
        return true;
    }
    t.summands.iter().any(|s| {
        s.labels.iter().zip(&t.factors).any(|(l, f)| {
            matches!(f.family, Family::Gl | Family::Sl)
                && f.rank >= 6
                && matches!(l, Label::Alt { k, .. } if *k >= 3)
        })
    })
}

/// Dimension of a named algebra such as `so(3)`, `sp(2)`, `g2 x g2` or `1` (the zero algebra).
pub fn named_algebra_dim(name: &str) -> Option<u64> {
    name.split(" x ").map(|part| simple_named_dim(part.trim())).sum()
}

fn simple_named_dim(name: &str) -> Option<u64> {
    match name {
        "1" => return Some(0),
        "g2" => return Some(14),
        "f4" => return Some(52),
        "e6" => return Some(78),
        "e7" => return Some(133),
        "e8" => return Some(248),
        _ => {}
    }
    let (family, rest) = name.split_once('(')?;
    let n: u64 = rest.strip_suffix(')')?.parse().ok()?;
    match family {
        "gl" => Some(n * n),
        "sl" => Some((n * n).checked_sub(1)?),
        "so" | "spin" => Some(n * n.saturating_sub(1) / 2),
        "sp" => Some(n * (2 * n + 1)),
        _ => None,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Catalog {
    pub entries: Vec<CatalogEntry>,
    pub lsa_table: Gl2Table,
}

impl Catalog {
    pub fn get(&self, id: &str) -> Option<&CatalogEntry> {
        self.entries.iter().find(|e| e.id == id)
    }

    pub fn list(&self, name: &str) -> Vec<&CatalogEntry> {
        self.entries.iter().filter(|e| e.in_list(name)).collect()
    }

    /// Parses both data documents and re-derives every symbolic claim.
    pub fn from_json(catalog: &str, lsa_table: &str) -> Result<Catalog> {
        let raw: RawCatalog =
            serde_json::from_str(catalog).map_err(|e| Error::Catalog(format!("catalog data: {e}")))?;
        if raw.version != 1 {
            return Err(Error::Catalog(format!("unsupported catalog version {}", raw.version)));
        }
        let mut seen = HashSet::new();
        let mut entries = Vec::with_capacity(raw.entries.len());
        for r in raw.entries {
            if !seen.insert(r.id.clone()) {
                return Err(Error::Catalog(format!("duplicate entry id {}", r.id)));
            }
            entries.push(check_entry(r)?);
        }
        let lsa_table = Gl2Table::from_json(lsa_table)?;
        Ok(Catalog { entries, lsa_table })
    }
}

fn check_entry(r: RawEntry) -> Result<CatalogEntry> {
    let fail = |m: String| Error::Catalog(format!("entry {}: {m}", r.id));
    let t = crate::castling::parse(&r.descriptor).map_err(|e| fail(e.to_string()))?;
    if r.sources.is_empty() {
        return Err(fail("no source".into()));
    }
    let (g, v) = (t.algebra_dim(), t.space_dim());
    let c = &r.claims;
    if c.is_cuspidal == Some(true) {
        if g != v {
            return Err(fail(format!("claimed cuspidal but dim G = {g} and dim V = {v}")));
        }
        if c.is_pv == Some(false) {
            return Err(fail("claimed cuspidal but not PV".into()));
        }
        if c.isotropy_dim.is_some_and(|n| n != 0) {
            return Err(fail("claimed cuspidal with nonzero isotropy".into()));
        }
    }
    if c.is_pv == Some(true) {
        if g < v {
            return Err(fail(format!("claimed PV but dim G = {g} < dim V = {v}")));
        }
        if c.isotropy_dim.is_some_and(|n| n != g - v) {
            return Err(fail(format!("isotropy dimension claim differs from dim G - dim V = {}", g - v)));
        }
    }
    if let Some(name) = &c.generic_isotropy {
        let Some(nd) = named_algebra_dim(name) else {
            return Err(fail(format!("unknown isotropy name {name}")));
        };
        if c.isotropy_dim.is_some_and(|n| n != nd) {
            return Err(fail(format!("{name} has dimension {nd}, not the claimed isotropy dimension")));
        }
        if c.is_pv == Some(true) && nd != g - v {
            return Err(fail(format!("{name} has dimension {nd} but dim G - dim V = {}", g - v)));
        }
    }
    if let Some(tw) = &r.twist {
        if tw.blocks.len() != t.summands.len() {
            return Err(fail("twist block count differs from summand count".into()));
        }
        if tw.center_count(&t) != t.center {
            return Err(fail(format!("twist generates {} centers, descriptor has {}", tw.center_count(&t), t.center)));
        }
    }
    if let Some(p) = &r.generic_point {
        if p.len() as u64 != v {
            return Err(fail(format!("generic point has length {}, dim V = {v}", p.len())));
        }
        p.to_vec().map_err(|e| fail(e.to_string()))?;
    }
    let derived = t.is_instantiable() && !out_of_scope(&t);
    let instantiable = match r.instantiable {
        Some(true) if !derived => return Err(fail("marked instantiable but out of scope".into())),
        Some(x) => x,
        None => derived,
    };
    Ok(CatalogEntry {
        id: r.id,
        sources: r.sources,
        descriptor: t,
        twist: r.twist,
        twist_printed: r.twist_printed,
        claims: r.claims,
        instantiable,
        provisional: r.provisional,
        generic_point: r.generic_point,
        note: r.note,
    })
}

/// The shipped catalog.
pub fn load_catalog() -> Result<Catalog> {
    Catalog::from_json(CATALOG_JSON, GL2_LSA_JSON)
}
