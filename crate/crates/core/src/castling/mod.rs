//! Symbolic triplet descriptors, castling transforms between them, and reduction to a
//! minimum-dimension member of a castling class.
//!
//! # Descriptor grammar
//!
//! ```text
//! descriptor := [ "GL(1)^" int "x" ] factor { "x" factor } ":" summand { "+" summand }
//! factor     := ("GL" | "SL" | "SO" | "Sp" | "Spin") "(" int ")" | "G2" | "E6" | "E7"
//! summand    := label { "@" label } [ "@tau(" int ")" ]
//! label      := "1" | [ int ] "L" int [ "*" ] | "spin" [ "*" ]
//! ```
//!
//! A summand carries one label per factor, in factor order. `Lk` is the k-th exterior
//! power of the defining representation and `kL1` its k-th symmetric power; a trailing `*`
//! dualizes. `Sp(n)` acts on a space of dimension `2n` and its `Lk` for `k >= 2` is the
//! primitive part of the exterior power. For `G2` the 7-dimensional representation is
//! written `L2`.
//!
//! The optional `tau(d)` slot tensors the summand with a `d`-dimensional space on which
//! only the center `GL(1)^k` acts; see [`TwistSpec`].

mod instantiate;
mod moves;
mod parse;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub use instantiate::{default_twist, instantiate, TwistBlock, TwistSpec};
pub use moves::{
    castle, check_move, legal_moves, pv_transport_check, reduce, CastlingMove, MoveInfo, Reduction,
    ReduceBudget, TransportReport,
};
pub use parse::parse;

use crate::error::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Gl,
    Sl,
    So,
    Sp,
    Spin,
    G2,
    E6,
    E7,
}

impl Family {
    pub fn is_exceptional(self) -> bool {
        matches!(self, Family::G2 | Family::E6 | Family::E7)
    }

    fn keyword(self) -> &'static str {
        match self {
            Family::Gl => "GL",
            Family::Sl => "SL",
            Family::So => "SO",
            Family::Sp => "Sp",
            Family::Spin => "Spin",
            Family::G2 => "G2",
            Family::E6 => "E6",
            Family::E7 => "E7",
        }
    }
}

/// A simple or general linear factor. `rank` is the parenthesized parameter; exceptional
/// factors store 2, 6 or 7.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Factor {
    pub family: Family,
    pub rank: usize,
}

impl Factor {
    pub fn new(family: Family, rank: usize) -> Factor {
        Factor { family, rank }
    }

    pub fn gl(n: usize) -> Factor {
        Factor::new(Family::Gl, n)
    }

    pub fn sl(n: usize) -> Factor {
        Factor::new(Family::Sl, n)
    }

    pub fn algebra_dim(&self) -> u64 {
        let n = self.rank as u64;
        match self.family {
            Family::Gl => n * n,
            Family::Sl => (n * n).saturating_sub(1),
            Family::So | Family::Spin => n * n.saturating_sub(1) / 2,
            Family::Sp => n * (2 * n + 1),
            Family::G2 => 14,
            Family::E6 => 78,
            Family::E7 => 133,
        }
    }

    /// Dimension of the defining representation; `None` for exceptional factors.
    pub fn defining_dim(&self) -> Option<u64> {
        match self.family {
            Family::Gl | Family::Sl | Family::So | Family::Spin => Some(self.rank as u64),
            Family::Sp => Some(2 * self.rank as u64),
            _ => None,
        }
    }

    /// Dimension of `label` for this factor, or the reason it is not a valid label.
    pub fn label_dim(&self, label: &Label) -> Result<u64, String> {
        let n = self.rank as u64;
        let bad = || Err(format!("label {label} is invalid for {self}"));
        match (*label, self.family) {
            (Label::Trivial, _) => Ok(1),
            (Label::Spin { .. }, Family::Spin) => Ok(if n % 2 == 1 {
                1 << ((n - 1) / 2)
            } else {
                1 << (n / 2).saturating_sub(1)
            }),
            (Label::Spin { .. }, _) => bad(),
            (Label::Alt { k, .. }, Family::Gl | Family::Sl | Family::So) => {
                if (k as u64) <= n {
                    Ok(binom(n, k as u64))
                } else {
                    bad()
                }
            }
            (Label::Alt { k, .. }, Family::Sp) => {
                let k = k as u64;
                if k == 1 {
                    Ok(2 * n)
                } else if k <= n {
                    Ok(binom(2 * n, k) - binom(2 * n, k - 2))
                } else {
                    bad()
                }
            }
            (Label::Alt { k: 1, .. }, Family::Spin) => Ok(n),
            (Label::Alt { k: 2, .. }, Family::G2) => Ok(7),
            (Label::Alt { k: 1, .. }, Family::E6) => Ok(27),
            (Label::Alt { k: 1, .. }, Family::E7) => Ok(56),
            (Label::Alt { .. }, _) => bad(),
            (Label::Sym { k, .. }, Family::Gl | Family::Sl | Family::Sp) => {
                let d = self.defining_dim().expect("classical");
                Ok(binom(d + k as u64 - 1, k as u64))
            }
            (Label::Sym { .. }, _) => bad(),
        }
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.family.is_exceptional() {
            f.write_str(self.family.keyword())
        } else {
            write!(f, "{}({})", self.family.keyword(), self.rank)
        }
    }
}

/// A per-factor label. `Alt { k: 1 }` is the defining representation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Trivial,
    Alt { k: usize, dual: bool },
    /// `k >= 2`.
    Sym { k: usize, dual: bool },
    Spin { dual: bool },
}

impl Label {
    pub const STD: Label = Label::Alt { k: 1, dual: false };

    pub fn is_trivial(&self) -> bool {
        matches!(self, Label::Trivial)
    }

    /// Whether this is `L1` or `L1*`.
    pub fn is_defining(&self) -> bool {
        matches!(self, Label::Alt { k: 1, .. })
    }

    pub fn dualized(&self) -> Label {
        match *self {
            Label::Trivial => Label::Trivial,
            Label::Alt { k, dual } => Label::Alt { k, dual: !dual },
            Label::Sym { k, dual } => Label::Sym { k, dual: !dual },
            Label::Spin { dual } => Label::Spin { dual: !dual },
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let star = |d: bool| if d { "*" } else { "" };
        match *self {
            Label::Trivial => f.write_str("1"),
            Label::Alt { k, dual } => write!(f, "L{k}{}", star(dual)),
            Label::Sym { k, dual } => write!(f, "{k}L1{}", star(dual)),
            Label::Spin { dual } => write!(f, "spin{}", star(dual)),
        }
    }
}

/// One irreducible-looking summand: an outer tensor product of labels, times `tau`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Summand {
    pub labels: Vec<Label>,
    /// Dimension of the center-only slot; 1 when absent.
    pub tau: usize,
}

impl Summand {
    pub fn new(labels: Vec<Label>) -> Summand {
        Summand { labels, tau: 1 }
    }

    pub fn with_tau(mut self, tau: usize) -> Summand {
        self.tau = tau;
        self
    }
}

impl fmt::Display for Summand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.labels.iter().enumerate() {
            if i > 0 {
                f.write_str("@")?;
            }
            write!(f, "{l}")?;
        }
        if self.tau > 1 {
            write!(f, "@tau({})", self.tau)?;
        }
        Ok(())
    }
}

/// `(GL(1)^center x factors, sum of summands)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TripletDescriptor {
    pub center: usize,
    pub factors: Vec<Factor>,
    pub summands: Vec<Summand>,
}

impl TripletDescriptor {
    /// Checks label counts and label validity; the parser only returns validated values.
    pub fn validate(&self) -> Result<(), String> {
        if self.factors.is_empty() {
            return Err("at least one non-central factor is required".into());
        }
        if self.summands.is_empty() {
            return Err("at least one summand is required".into());
        }
        for f in &self.factors {
            if f.rank == 0 {
                return Err(format!("{f} has rank zero"));
            }
        }
        for (s, sm) in self.summands.iter().enumerate() {
            if sm.labels.len() != self.factors.len() {
                return Err(format!(
                    "summand {s} has {} labels for {} factors",
                    sm.labels.len(),
                    self.factors.len()
                ));
            }
            if sm.tau == 0 {
                return Err(format!("summand {s} has tau(0)"));
            }
            for (f, l) in self.factors.iter().zip(&sm.labels) {
                f.label_dim(l)?;
            }
        }
        Ok(())
    }

    /// Per-factor label dimensions of summand `s`.
    pub fn label_dims(&self, s: usize) -> Vec<u64> {
        self.factors
            .iter()
            .zip(&self.summands[s].labels)
            .map(|(f, l)| f.label_dim(l).expect("validated descriptor"))
            .collect()
    }

    pub fn summand_dim(&self, s: usize) -> u64 {
        self.label_dims(s).iter().product::<u64>() * self.summands[s].tau as u64
    }

    pub fn summand_dims(&self) -> Vec<u64> {
        (0..self.summands.len()).map(|s| self.summand_dim(s)).collect()
    }

    pub fn space_dim(&self) -> u64 {
        self.summand_dims().iter().sum()
    }

    pub fn algebra_dim(&self) -> u64 {
        self.center as u64 + self.factors.iter().map(Factor::algebra_dim).sum::<u64>()
    }

    /// Whether `dim G = dim V`, the symbolic half of cuspidality.
    pub fn dims_balanced(&self) -> bool {
        self.algebra_dim() == self.space_dim()
    }

    /// `Ok` when every factor and label can be built as explicit matrices.
    pub fn instantiable(&self) -> Result<(), String> {
        for f in &self.factors {
            if !matches!(f.family, Family::Gl | Family::Sl | Family::So | Family::Sp) {
                return Err(format!("factor {f} is not constructed"));
            }
        }
        for sm in &self.summands {
            if let Some(l) = sm.labels.iter().find(|l| matches!(l, Label::Spin { .. })) {
                return Err(format!("label {l} is not constructed"));
            }
        }
        Ok(())
    }

    pub fn is_instantiable(&self) -> bool {
        self.instantiable().is_ok()
    }

    pub fn has_spin(&self) -> bool {
        self.factors.iter().any(|f| f.family == Family::Spin)
            || self
                .summands
                .iter()
                .any(|s| s.labels.iter().any(|l| matches!(l, Label::Spin { .. })))
    }

    pub fn has_exceptional(&self) -> bool {
        self.factors.iter().any(|f| f.family.is_exceptional())
    }

    pub fn render(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for TripletDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.center > 0 {
            write!(f, "GL(1)^{} x ", self.center)?;
        }
        for (i, x) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str(" x ")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(" : ")?;
        for (i, s) in self.summands.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl FromStr for TripletDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<TripletDescriptor, Error> {
        parse(s)
    }
}

impl Serialize for TripletDescriptor {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.render())
    }
}

impl<'de> Deserialize<'de> for TripletDescriptor {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        parse(&s).map_err(serde::de::Error::custom)
    }
}

pub(crate) fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}
