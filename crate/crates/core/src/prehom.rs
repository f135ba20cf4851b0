//! Generic points, isotropy subalgebras and prehomogeneity verdicts.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, rank, Matrix, Rational};
use crate::repr::{direct_sum_rep, restrict, Representation};

/// Exact witness of the orbit dimension at a point.
///
/// `isotropy_dim + orbit_dim = algebra_dim`; every basis vector kills `point`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsotropyCertificate {
    pub point: Vec<Rational>,
    pub algebra_dim: usize,
    pub space_dim: usize,
    pub orbit_dim: usize,
    pub isotropy_dim: usize,
    pub isotropy_basis: Vec<Vec<Rational>>,
    /// `(i, tr drho(e_i))` for every central basis vector `e_i`.
    pub center_traces: Vec<(usize, Rational)>,
}

impl IsotropyCertificate {
    pub fn is_generic(&self) -> bool {
        self.orbit_dim == self.space_dim
    }

    /// Recomputes the certificate at the stored point and checks that it agrees.
    pub fn replay(&self, r: &Representation) -> Result<bool> {
        let fresh = isotropy_at(r, &self.point)?;
        let kills = self
            .isotropy_basis
            .iter()
            .all(|x| linalg::is_zero_vec(&r.act(x).mul_vec(&self.point)));
        let independent = self.isotropy_basis.is_empty()
            || rank(&Matrix::from_columns(r.algebra().dim(), &self.isotropy_basis)) == self.isotropy_basis.len();
        Ok(kills
            && independent
            && fresh.isotropy_dim == self.isotropy_dim
            && fresh.orbit_dim == self.orbit_dim
            && self.isotropy_basis.len() == self.isotropy_dim)
    }
}

/// The `d x n` matrix whose column `i` is `drho(e_i) v`.
fn orbit_matrix(r: &Representation, v: &[Rational]) -> Result<Matrix> {
    if v.len() != r.space_dim() {
        return Err(Error::DimensionMismatch(format!(
            "point has length {}, representation space has dimension {}",
            v.len(),
            r.space_dim()
        )));
    }
    let cols: Vec<Vec<Rational>> = r.action().iter().map(|a| a.mul_vec(v)).collect();
    Ok(Matrix::from_columns(r.space_dim(), &cols))
}

pub fn orbit_dim_at(r: &Representation, v: &[Rational]) -> Result<usize> {
    Ok(rank(&orbit_matrix(r, v)?))
}

pub fn center_traces(r: &Representation) -> Vec<(usize, Rational)> {
    let g = r.algebra();
    (0..g.dim())
        .filter(|&i| g.is_central_basis_vector(i))
        .map(|i| (i, r.action()[i].trace()))
        .collect()
}

pub fn isotropy_at(r: &Representation, v: &[Rational]) -> Result<IsotropyCertificate> {
    let m = orbit_matrix(r, v)?;
    let n = r.algebra().dim();
    let basis = if n == 0 { Vec::new() } else { linalg::nullspace(&m) };
    Ok(IsotropyCertificate {
        point: v.to_vec(),
        algebra_dim: n,
        space_dim: r.space_dim(),
        orbit_dim: n - basis.len(),
        isotropy_dim: basis.len(),
        isotropy_basis: basis,
        center_traces: center_traces(r),
    })
}

/// Search parameters; structured `candidates` are tried before any random point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PvPolicy {
    pub seed: u64,
    pub max_trials: usize,
    pub candidates: Vec<Vec<Rational>>,
}

impl Default for PvPolicy {
    fn default() -> PvPolicy {
        PvPolicy {
            seed: 0,
            max_trials: 64,
            candidates: Vec::new(),
        }
    }
}

impl PvPolicy {
    pub fn with_seed(seed: u64) -> PvPolicy {
        PvPolicy {
            seed,
            ..PvPolicy::default()
        }
    }

    pub fn with_candidates(mut self, candidates: Vec<Vec<Rational>>) -> PvPolicy {
        self.candidates = candidates;
        self
    }
}

/// Outcome of a point search: the first point reaching `target` when one was found,
/// otherwise the best point seen.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenericSearch {
    pub target: usize,
    pub trials: usize,
    pub best: IsotropyCertificate,
    pub reached: bool,
}

/// Entry range for random trial `t`: `[-3, 3]`, doubling every 8 trials.
fn trial_range(t: usize) -> i64 {
    3i64 << (t / 8).min(40)
}

pub fn search_generic_point(r: &Representation, policy: &PvPolicy) -> Result<GenericSearch> {
    let d = r.space_dim();
    let target = r.algebra().dim().min(d);
    let mut best: Option<(usize, Vec<Rational>)> = None;
    let consider =|v: Vec<Rational>, best: &mut Option<(usize, Vec<Rational>)>| -> Result<bool> {
        let o = orbit_dim_at(r, &v)?;
        if best.as_ref().is_none_or(|(b, _)| o > *b) {
            *best = Some((o, v));
        }
        Ok(o == target)
    };
    let mut trials = 0;
    let mut reached = false;
    for c in &policy.candidates {
        if consider(c.clone(), &mut best)? {
            reached = true;
            break;
        }
    }
    if !reached {
        let mut rng = ChaCha8Rng::seed_from_u64(policy.seed);
        while trials < policy.max_trials {
            let range = trial_range(trials);
            let v: Vec<Rational> = (0..d).map(|_| Rational::from(rng.gen_range(-range..=range))).collect();
            trials += 1;
            if consider(v, &mut best)? {
                reached = true;
                break;
            }
        }
    }
    let point = best.map_or_else(|| vec![Rational::zero(); d], |(_, v)| v);
    Ok(GenericSearch {
        target,
        trials,
        best: isotropy_at(r, &point)?,
        reached,
    })
}

/// First sampled point whose orbit dimension is `min(dim g, dim V)`.
pub fn find_generic_point(r: &Representation, seed: u64, max_trials: usize) -> Option<(Vec<Rational>, IsotropyCertificate)> {
    let policy = PvPolicy {
        seed,
        max_trials,
        candidates: Vec::new(),
    };
    let s = search_generic_point(r, &policy).ok()?;
    s.reached.then(|| (s.best.point.clone(), s.best))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum PvStatus {
    /// Proof: the certificate has `orbit_dim = space_dim`.
    IsPv { certificate: IsotropyCertificate },
    /// Proof: `dim V > dim g` leaves no room for an open orbit.
    NotPvByDimension { algebra_dim: usize, space_dim: usize },
    /// Heuristic: no sampled point had a full-dimensional orbit.
    ProbablyNotPv { trials: usize, best_orbit_dim: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PvVerdict {
    #[serde(flatten)]
    pub status: PvStatus,
    pub cuspidal: bool,
    pub algebra_dim: usize,
    pub space_dim: usize,
}

impl PvVerdict {
    pub fn is_pv(&self) -> bool {
        matches!(self.status, PvStatus::IsPv { .. })
    }

    pub fn certificate(&self) -> Option<&IsotropyCertificate> {
        match &self.status {
            PvStatus::IsPv { certificate } => Some(certificate),
            _ => None,
        }
    }

    pub fn isotropy_dim(&self) -> Option<usize> {
        self.certificate().map(|c| c.isotropy_dim)
    }

    pub fn label(&self) -> &'static str {
        match self.status {
            PvStatus::IsPv { .. } => "IsPV",
            PvStatus::NotPvByDimension { .. } => "NotPV",
            PvStatus::ProbablyNotPv { .. } => "ProbablyNotPV",
        }
    }
}

pub fn decide_pv(r: &Representation, policy: &PvPolicy) -> Result<PvVerdict> {
    let n = r.algebra().dim();
    let d = r.space_dim();
    if d > n {
        return Ok(PvVerdict {
            status: PvStatus::NotPvByDimension {
                algebra_dim: n,
                space_dim: d,
            },
            cuspidal: false,
            algebra_dim: n,
            space_dim: d,
        });
    }
    let search = search_generic_point(r, policy)?;
    let status = if search.best.orbit_dim == d {
        PvStatus::IsPv {
            certificate: search.best,
        }
    } else {
        PvStatus::ProbablyNotPv {
            trials: search.trials,
            best_orbit_dim: search.best.orbit_dim,
        }
    };
    let cuspidal = matches!(status, PvStatus::IsPv { .. }) && n == d;
    Ok(PvVerdict {
        status,
        cuspidal,
        algebra_dim: n,
        space_dim: d,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CuspidalReport {
    pub cuspidal: bool,
    pub verdict: PvVerdict,
}

pub fn cuspidal_check(r: &Representation, policy: &PvPolicy) -> Result<CuspidalReport> {
    let verdict = decide_pv(r, policy)?;
    Ok(CuspidalReport {
        cuspidal: verdict.cuspidal,
        verdict,
    })
}

/// Verdicts for `rho1 (+) rho2`, for `rho1`, and for `rho2` restricted to the generic
/// isotropy subalgebra of `rho1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplitReport {
    pub combined: PvVerdict,
    pub first: PvVerdict,
    pub restricted: Option<PvVerdict>,
    pub agree: bool,
}

/// Candidates in `policy` are points of `V1 (+) V2`; their two halves seed the
/// searches for `rho1` and for the restriction.
pub fn split_check(r1: &Representation, r2: &Representation, policy: &PvPolicy) -> Result<SplitReport> {
    let combined_rep = direct_sum_rep(r1, r2)?;
    let combined = decide_pv(&combined_rep, policy)?;
    let d1 = r1.space_dim();
    let halves = |lo: usize, hi: usize| PvPolicy {
        seed: policy.seed,
        max_trials: policy.max_trials,
        candidates: policy.candidates.iter().map(|c| c[lo..hi].to_vec()).collect(),
    };
    let first = decide_pv(r1, &halves(0, d1))?;
    let restricted = match first.certificate() {
        Some(cert) => {
            let h = restrict(r2, "isotropy", &cert.isotropy_basis)?;
            Some(decide_pv(&h, &halves(d1, d1 + r2.space_dim()))?)
        }
        None => None,
    };
    let split_pv = restricted.as_ref().is_some_and(PvVerdict::is_pv);
    let dims_match = match (&combined.status, restricted.as_ref().map(|v| &v.status)) {
        (PvStatus::IsPv { certificate: a }, Some(PvStatus::IsPv { certificate: b })) => a.isotropy_dim == b.isotropy_dim,
        _ => true,
    };
    let agree = combined.is_pv() == split_pv && dims_match;
    Ok(SplitReport {
        combined,
        first,
        restricted,
        agree,
    })
}
