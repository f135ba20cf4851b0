use super::{out_of_scope, CatalogEntry};
use crate::error::{Error, Result};

pub(super) const LISTS: &[&str] = &[
    "irreducible-simple",
    "gl-n",
    "main-result",
    "simple-multicenter",
    "two-simple-multicenter",
    "reduced-cuspidal",
    "isotropy-lemmas",
    "non-pv",
    "gl2-lsa",
];

#[derive(Clone, Debug, PartialEq, Eq)]
enum Term {
    List(String),
    Classical,
    Spin,
    Exceptional,
    Provisional,
    Instantiable,
    Cuspidal,
    MaxDim(u64),
    IdPrefix(String),
}

/// Conjunction of terms separated by whitespace or commas; a leading `!` negates a term.
///
/// Terms: a list name (`table-1`, `table1` and `gl2` alias `gl2-lsa`), `classical`, `spin`,
/// `exceptional`, `provisional`, `instantiable`, `cuspidal`, `dim<=N`, `id:PREFIX`.
/// The empty filter matches everything.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Filter {
    terms: Vec<(bool, Term)>,
    text: String,
}

/// What a filter can see of a report target.
struct Facts<'a> {
    id: &'a str,
    lists: Vec<&'a str>,
    spin: bool,
    exceptional: bool,
    classical: bool,
    provisional: bool,
    instantiable: bool,
    cuspidal: bool,
    dim: u64,
}

impl Filter {
    pub fn parse(text: &str) -> Result<Filter> {
        let mut norm = text.replace('≤', "<=");
        while norm.contains(" <=") || norm.contains("<= ") {
            norm = norm.replace(" <=", "<=").replace("<= ", "<=");
        }
        let mut terms = Vec::new();
        for raw in norm.split(|c: char| c.is_whitespace() || c == ',').filter(|s| !s.is_empty()) {
            let (neg, word) = match raw.strip_prefix('!') {
                Some(w) => (true, w),
                None => (false, raw),
            };
            let bad = || Error::Parse {
                position: norm.find(raw).unwrap_or(0),
                message: format!("unknown filter term '{raw}'"),
            };
            let term = if let Some(p) = word.strip_prefix("id:") {
                Term::IdPrefix(p.to_string())
            } else if let Some(n) = word.strip_prefix("dim<=") {
                Term::MaxDim(n.parse().map_err(|_| bad())?)
            } else {
                match word {
                    "classical" => Term::Classical,
                    "spin" => Term::Spin,
                    "exceptional" => Term::Exceptional,
                    "provisional" => Term::Provisional,
                    "instantiable" => Term::Instantiable,
                    "cuspidal" => Term::Cuspidal,
                    "table-1" | "table1" | "gl2" => Term::List("gl2-lsa".into()),
                    w if LISTS.contains(&w) => Term::List(w.to_string()),
                    _ => return Err(bad()),
                }
            };
            terms.push((neg, term));
        }
        Ok(Filter {
            terms,
            text: text.trim().to_string(),
        })
    }

    pub fn text(&self) -> &str {
        &self.text
    }

    fn matches(&self, f: &Facts<'_>) -> bool {
        self.terms.iter().all(|(neg, t)| {
            let hit = match t {
                Term::List(l) => f.lists.contains(&l.as_str()),
                Term::Classical => f.classical,
                Term::Spin => f.spin,
                Term::Exceptional => f.exceptional,
                Term::Provisional => f.provisional,
                Term::Instantiable => f.instantiable,
                Term::Cuspidal => f.cuspidal,
                Term::MaxDim(n) => f.dim <= *n,
                Term::IdPrefix(p) => f.id.starts_with(p.as_str()),
            };
            hit != *neg
        })
    }

    pub fn matches_entry(&self, e: &CatalogEntry) -> bool {
        let t = &e.descriptor;
        self.matches(&Facts {
            id: &e.id,
            lists: e.sources.iter().map(|s| s.list.as_str()).collect(),
            spin: t.has_spin(),
            exceptional: t.has_exceptional(),
            classical: !out_of_scope(t),
            provisional: e.provisional,
            instantiable: e.instantiable,
            cuspidal: e.claims.is_cuspidal == Some(true),
            dim: t.space_dim(),
        })
    }

    /// Items of the `gl(2)` table: 4-dimensional, classical and instantiable.
    pub fn matches_table_item(&self, id: &str) -> bool {
        self.matches(&Facts {
            id,
            lists: vec!["gl2-lsa"],
            spin: false,
            exceptional: false,
            classical: true,
            provisional: false,
            instantiable: true,
            cuspidal: true,
            dim: 4,
        })
    }
}
