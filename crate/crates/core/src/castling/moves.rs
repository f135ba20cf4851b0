use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use super::{default_twist, instantiate, Factor, Family, TripletDescriptor};
use crate::error::{Error, Result};
use crate::prehom::{decide_pv, PvPolicy, PvVerdict};

/// Castle summand `summand` along the general or special linear factor `factor`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CastlingMove {
    pub summand: usize,
    pub factor: usize,
}

impl CastlingMove {
    pub fn new(summand: usize, factor: usize) -> CastlingMove {
        CastlingMove { summand, factor }
    }
}

/// The decomposition `rho (x) L1` with `rho` of dimension `m` and the linear factor of rank `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MoveInfo {
    pub n: usize,
    pub m: usize,
    /// Whether the distinguished factor is `SL` rather than `GL`.
    pub special: bool,
}

fn illegal<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::IllegalMove(msg.into()))
}

pub fn check_move(t: &TripletDescriptor, mv: CastlingMove) -> Result<MoveInfo> {
    let CastlingMove { summand: s, factor: f } = mv;
    if s >= t.summands.len() {
        return illegal(format!("summand index {s} out of range"));
    }
    if f >= t.factors.len() {
        return illegal(format!("factor index {f} out of range"));
    }
    let fac = t.factors[f];
    if !matches!(fac.family, Family::Gl | Family::Sl) {
        return illegal(format!("factor {f} is {fac}, not GL or SL"));
    }
    let sm = &t.summands[s];
    if !sm.labels[f].is_defining() {
        return illegal(format!("factor {f} acts on summand {s} by {}, not L1", sm.labels[f]));
    }
    if sm.tau > 1 {
        return illegal(format!("summand {s} carries tau({})", sm.tau));
    }
    if let Some(o) = (0..t.summands.len()).find(|&o| o != s && !t.summands[o].labels[f].is_trivial()) {
        return illegal(format!("factor {f} also acts on summand {o}"));
    }
    let m: u64 = t
        .label_dims(s)
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != f)
        .map(|(_, d)| *d)
        .product();
    let n = fac.rank;
    if m <= n as u64 {
        return illegal(format!("m = {m} is not larger than n = {n}"));
    }
    Ok(MoveInfo {
        n,
        m: m as usize,
        special: fac.family == Family::Sl,
    })
}

/// Replaces the rank `n` of the distinguished factor by `m - n` and dualizes the other
/// labels of the summand. Applying the same move again undoes it.
pub fn castle(t: &TripletDescriptor, mv: CastlingMove) -> Result<TripletDescriptor> {
    let info = check_move(t, mv)?;
    let mut out = t.clone();
    out.factors[mv.factor] = Factor::new(t.factors[mv.factor].family, info.m - info.n);
    for (i, l) in out.summands[mv.summand].labels.iter_mut().enumerate() {
        if i != mv.factor {
            *l = l.dualized();
        }
    }
    debug_assert!(out.validate().is_ok());
    Ok(out)
}

pub fn legal_moves(t: &TripletDescriptor) -> Vec<CastlingMove> {
    let mut out = Vec::new();
    for s in 0..t.summands.len() {
        for f in 0..t.factors.len() {
            let mv = CastlingMove::new(s, f);
            if check_move(t, mv).is_ok() {
                out.push(mv);
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ReduceBudget {
    /// Descriptors with a larger space dimension are not entered.
    pub max_dim: u64,
    /// Maximum number of descriptors expanded.
    pub max_nodes: usize,
}

impl Default for ReduceBudget {
    fn default() -> ReduceBudget {
        ReduceBudget {
            max_dim: 10_000,
            max_nodes: 10_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Reduction {
    pub start: TripletDescriptor,
    pub descriptor: TripletDescriptor,
    pub space_dim: u64,
    pub path: Vec<CastlingMove>,
    pub explored: usize,
    /// Neighbors skipped because they exceed `max_dim`.
    pub pruned: usize,
    /// False when the node budget ran out before the frontier was empty.
    pub complete: bool,
}

/// Breadth-first search of the castling class within the budget. The minimum of
/// `(space_dim, rendering)` is returned, so ties resolve deterministically.
pub fn reduce(t: &TripletDescriptor, budget: ReduceBudget) -> Reduction {
    let key = |d: &TripletDescriptor| (d.space_dim(), d.render());
    let mut parent: HashMap<String, Option<(String, CastlingMove)>> = HashMap::new();
    let mut queue = VecDeque::new();
    let start_key = key(t);
    parent.insert(start_key.1.clone(), None);
    queue.push_back(t.clone());
    let mut best = (start_key, t.clone());
    let mut explored = 0;
    let mut pruned = 0;
    let mut complete = true;
    while let Some(cur) = queue.pop_front() {
        if explored == budget.max_nodes {
            complete = false;
            break;
        }
        explored += 1;
        let cur_key = cur.render();
        for mv in legal_moves(&cur) {
            let next = castle(&cur, mv).expect("legal move");
            let k = key(&next);
            if parent.contains_key(&k.1) {
                continue;
            }
            if k.0 > budget.max_dim {
                pruned += 1;
                continue;
            }
            parent.insert(k.1.clone(), Some((cur_key.clone(), mv)));
            if k < best.0 {
                best = (k, next.clone());
            }
            queue.push_back(next);
        }
    }
    let mut path = Vec::new();
    let mut at = best.0 .1.clone();
    while let Some(Some((prev, mv))) = parent.get(&at) {
        path.push(*mv);
        at = prev.clone();
    }
    path.reverse();
    Reduction {
        start: t.clone(),
        space_dim: best.0 .0,
        descriptor: best.1,
        path,
        explored,
        pruned,
        complete,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransportReport {
    pub before: TripletDescriptor,
    pub after: TripletDescriptor,
    #[serde(rename = "move")]
    pub mv: CastlingMove,
    pub skipped: Option<String>,
    pub before_verdict: Option<PvVerdict>,
    pub after_verdict: Option<PvVerdict>,
    pub verdicts_agree: bool,
    pub isotropy_agree: bool,
}

impl TransportReport {
    pub fn ok(&self) -> bool {
        self.skipped.is_none() && self.verdicts_agree && self.isotropy_agree
    }
}

/// Instantiates both sides of a legal move with the default twist and compares their
/// verdicts and generic isotropy dimensions. Cases that cannot be built, or whose space
/// exceeds `max_dim`, are skipped with a reason.
pub fn pv_transport_check(
    t: &TripletDescriptor,
    mv: CastlingMove,
    policy: &PvPolicy,
    max_dim: u64,
) -> Result<TransportReport> {
    let after = castle(t, mv)?;
    let mut report = TransportReport {
        before: t.clone(),
        after: after.clone(),
        mv,
        skipped: None,
        before_verdict: None,
        after_verdict: None,
        verdicts_agree: false,
        isotropy_agree: false,
    };
    let skip_reason = [t, &after].iter().find_map(|d| {
        if let Err(e) = d.instantiable() {
            Some(format!("not instantiable: {e}"))
        } else if d.space_dim() > max_dim {
            Some(format!("space dimension {} exceeds {max_dim}", d.space_dim()))
        } else {
            default_twist(d).err().map(|e| e.to_string())
        }
    });
    if let Some(reason) = skip_reason {
        report.skipped = Some(reason);
        return Ok(report);
    }
    let verdict = |d: &TripletDescriptor| -> Result<PvVerdict> {
        let r = instantiate(d, &default_twist(d)?)?;
        decide_pv(&r, policy)
    };
    let b = verdict(t)?;
    let a = verdict(&after)?;
    report.verdicts_agree = b.is_pv() == a.is_pv();
    report.isotropy_agree = b.isotropy_dim() == a.isotropy_dim();
    report.before_verdict = Some(b);
    report.after_verdict = Some(a);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::castling::parse;

    #[test]
    fn castles_the_reference_pairs() {
        let t = parse("SL(5) x GL(3) : L2@L1").unwrap();
        let c = castle(&t, CastlingMove::new(0, 1)).unwrap();
        assert_eq!(c.render(), "SL(5) x GL(7) : L2*@L1");
        assert_eq!(castle(&c, CastlingMove::new(0, 1)).unwrap(), t);
        let t = parse("SL(3) x GL(2) : 2L1@L1").unwrap();
        assert_eq!(castle(&t, CastlingMove::new(0, 1)).unwrap().render(), "SL(3) x GL(4) : 2L1*@L1");
    }

    #[test]
    fn rejects_illegal_moves() {
        let t = parse("SL(5) x GL(3) : L2@L1").unwrap();
        for (mv, needle) in [
            (CastlingMove::new(0, 0), "not L1"),
            (CastlingMove::new(1, 1), "out of range"),
            (CastlingMove::new(0, 2), "out of range"),
        ] {
            match castle(&t, mv) {
                Err(Error::IllegalMove(m)) => assert!(m.contains(needle), "{m}"),
                other => panic!("{other:?}"),
            }
        }
        let t = parse("SL(2) x GL(3) : L1@L1").unwrap();
        assert!(castle(&t, CastlingMove::new(0, 1)).is_err());
        let t = parse("GL(1)^2 x SL(2) x GL(3) : L1@L1 + 1@L1").unwrap();
        assert!(check_move(&t, CastlingMove::new(0, 1)).unwrap_err().to_string().contains("also acts"));
    }

    #[test]
    fn reduces() {
        let r = reduce(&parse("SL(5) x GL(7) : L2*@L1").unwrap(), ReduceBudget::default());
        assert_eq!(r.descriptor.render(), "SL(5) x GL(3) : L2@L1");
        assert_eq!(r.space_dim, 30);
        assert_eq!(r.path, vec![CastlingMove::new(0, 1)]);
        assert!(r.complete);
        let again = reduce(&r.descriptor, ReduceBudget::default());
        assert_eq!(again.descriptor, r.descriptor);
        assert!(again.path.is_empty());
        let r = reduce(&parse("SL(2) x GL(1) : 2L1@L1").unwrap(), ReduceBudget::default());
        assert_eq!(r.space_dim, 3);
        assert!(r.path.is_empty());
    }
}
