use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::expr::evaluate;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Rational};
use crate::lsa::Lsa;

#[derive(Clone, Debug, PartialEq, Deserialize)]
struct RawAlgebra {
    name: String,
    #[serde(default)]
    parameter: Option<String>,
    #[serde(default)]
    excluded: Vec<Rational>,
    #[serde(default)]
    instances: Vec<Rational>,
    left: HashMap<String, Vec<Vec<String>>>,
    right_identity: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
struct RawTable {
    version: u32,
    basis: Vec<String>,
    algebras: Vec<RawAlgebra>,
    #[serde(default)]
    isomorphic: Vec<(String, String)>,
    #[serde(default)]
    non_isomorphic: Vec<(String, String)>,
}

/// A pair of table instances claimed isomorphic or not isomorphic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsoClaim {
    pub a: String,
    pub b: String,
    pub isomorphic: bool,
}

/// The left-symmetric algebras on `gl(2)` as symbolic left-multiplication matrices.
#[derive(Clone, Debug, PartialEq)]
pub struct Gl2Table {
    basis: Vec<String>,
    algebras: Vec<RawAlgebra>,
    pub iso_claims: Vec<IsoClaim>,
}

/// One concrete algebra with its claimed right identity.
#[derive(Clone, Debug, PartialEq)]
pub struct Gl2Instance {
    pub id: String,
    pub lsa: Lsa,
    pub right_identity: Vec<Rational>,
}

impl Gl2Table {
    pub fn from_json(text: &str) -> Result<Gl2Table> {
        let raw: RawTable =
            serde_json::from_str(text).map_err(|e| Error::Catalog(format!("gl(2) table data: {e}")))?;
        if raw.version != 1 {
            return Err(Error::Catalog(format!("unsupported table version {}", raw.version)));
        }
        let table = Gl2Table {
            basis: raw.basis,
            algebras: raw.algebras,
            iso_claims: raw
                .isomorphic
                .into_iter()
                .map(|(a, b)| IsoClaim { a, b, isomorphic: true })
                .chain(raw.non_isomorphic.into_iter().map(|(a, b)| IsoClaim { a, b, isomorphic: false }))
                .collect(),
        };
        // every listed instance and every claim must evaluate
        table.instances()?;
        for c in &table.iso_claims {
            table.lookup(&c.a)?;
            table.lookup(&c.b)?;
        }
        Ok(table)
    }

    pub fn names(&self) -> Vec<&str> {
        self.algebras.iter().map(|a| a.name.as_str()).collect()
    }

    fn algebra(&self, name: &str) -> Result<&RawAlgebra> {
        self.algebras
            .iter()
            .find(|a| a.name == name)
            .ok_or_else(|| Error::Catalog(format!("no algebra {name} in the gl(2) table")))
    }

    /// Instance `name` at parameter value `value` (required exactly for parametrized rows).
    pub fn instantiate(&self, name: &str, value: Option<&Rational>) -> Result<Gl2Instance> {
        let a = self.algebra(name)?;
        let mut vars = HashMap::new();
        let id = match (&a.parameter, value) {
            (Some(p), Some(v)) => {
                if a.excluded.contains(v) {
                    return Err(Error::Catalog(format!("{name} is not defined at {p} = {v}")));
                }
                vars.insert(p.clone(), v.clone());
                format!("{name}({v})")
            }
            (None, None) => name.to_string(),
            (Some(p), None) => return Err(Error::Catalog(format!("{name} needs a value for {p}"))),
            (None, Some(_)) => return Err(Error::Catalog(format!("{name} takes no parameter"))),
        };
        let n = self.basis.len();
        let eval = |s: &str| evaluate(s, &vars).map_err(|e| Error::Catalog(format!("{id}: {s}: {e}")));
        let mut ls = Vec::with_capacity(n);
        for b in &self.basis {
            let rows = a
                .left
                .get(b)
                .ok_or_else(|| Error::Catalog(format!("{name} has no matrix for {b}")))?;
            if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                return Err(Error::Catalog(format!("{name}: L_{b} is not {n}x{n}")));
            }
            let vals: Vec<Vec<Rational>> = rows
                .iter()
                .map(|r| r.iter().map(|s| eval(s)).collect::<Result<_>>())
                .collect::<Result<_>>()?;
            ls.push(Matrix::from_rows(vals));
        }
        let right_identity = a.right_identity.iter().map(|s| eval(s)).collect::<Result<Vec<_>>>()?;
        Ok(Gl2Instance {
            lsa: Lsa::from_left_matrices(id.clone(), &ls)?,
            id,
            right_identity,
        })
    }

    /// Every listed instance, in table order.
    pub fn instances(&self) -> Result<Vec<Gl2Instance>> {
        let mut out = Vec::new();
        for a in &self.algebras {
            if a.parameter.is_some() {
                for v in &a.instances {
                    out.push(self.instantiate(&a.name, Some(v))?);
                }
            } else {
                out.push(self.instantiate(&a.name, None)?);
            }
        }
        Ok(out)
    }

    /// Accepts `A1`, `A3(2)` or `A3 lambda=1/2`.
    pub fn lookup(&self, label: &str) -> Result<Gl2Instance> {
        let label = label.trim();
        if let Some((name, rest)) = label.split_once('(') {
            let v = rest
                .strip_suffix(')')
                .and_then(|s| s.trim().parse::<Rational>().ok())
                .ok_or_else(|| Error::Catalog(format!("bad parameter in {label}")))?;
            return self.instantiate(name.trim(), Some(&v));
        }
        let mut parts = label.split_whitespace();
        let name = parts.next().unwrap_or_default();
        match parts.next() {
            None => self.instantiate(name, None),
            Some(assign) => {
                let a = self.algebra(name)?;
                let (p, v) = assign
                    .split_once('=')
                    .ok_or_else(|| Error::Catalog(format!("expected name=value in {label}")))?;
                if a.parameter.as_deref() != Some(p) {
                    return Err(Error::Catalog(format!("{name} has no parameter {p}")));
                }
                let v: Rational = v
                    .parse()
                    .map_err(|_| Error::Catalog(format!("bad value {v} in {label}")))?;
                self.instantiate(name, Some(&v))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;

    #[test]
    fn shipped_table() {
        let t = Gl2Table::from_json(super::super::GL2_LSA_JSON).unwrap();
        assert_eq!(t.names(), vec!["A1", "A2", "A3"]);
        let ids: Vec<String> = t.instances().unwrap().into_iter().map(|i| i.id).collect();
        assert_eq!(ids, vec!["A1", "A2", "A3(2)", "A3(1/2)", "A3(3)"]);
        let a = t.lookup("A3 lambda=1/2").unwrap();
        assert_eq!(a.id, "A3(1/2)");
        assert_eq!(a.right_identity, vec![q(1, 3), q(0, 1), q(0, 1), q(-4, 3)]);
        assert!(t.lookup("A3(-1)").is_err());
        assert!(t.lookup("A3").is_err());
        assert!(t.lookup("A1 lambda=2").is_err());
        assert!(t.lookup("A9").is_err());
    }
}
