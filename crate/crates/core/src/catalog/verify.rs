use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use super::{named_algebra_dim, Catalog, CatalogEntry, Filter, Gl2Instance, Gl2Table, IsoClaim};
use crate::castling::{default_twist, instantiate};
use crate::error::{Error, Result};
use crate::lsa::{
    gl2_hxyc, left_regular_rep, lsa_from_cuspidal, lsa_isomorphic, right_identities, validate_lsa,
    IsoFamily,
};
use crate::prehom::{decide_pv, isotropy_at, PvPolicy, PvStatus, PvVerdict};
use crate::symplectic::frobenius_iff_right_identity;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Pass,
    Fail,
    Skip,
}

pub type Status = Outcome;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub outcome: Outcome,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub id: String,
    pub kind: &'static str,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub descriptor: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub twist: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<PvVerdict>,
    pub checks: Vec<Check>,
    /// Replayable data behind the passing checks.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<serde_json::Value>,
}

impl VerificationReport {
    fn new(id: &str, kind: &'static str) -> VerificationReport {
        VerificationReport {
            id: id.to_string(),
            kind,
            status: Outcome::Skip,
            descriptor: None,
            twist: None,
            verdict: None,
            checks: Vec::new(),
            certificate: None,
        }
    }

    fn check(&mut self, name: &str, ok: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.to_string(),
            outcome: if ok { Outcome::Pass } else { Outcome::Fail },
            detail: detail.into(),
        });
    }

    fn skip(&mut self, name: &str, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.to_string(),
            outcome: Outcome::Skip,
            detail: detail.into(),
        });
    }

    /// Fail on any failed check, pass when some non-symbolic check passed, otherwise skip.
    fn finish(mut self) -> VerificationReport {
        self.status = if self.checks.iter().any(|c| c.outcome == Outcome::Fail) {
            Outcome::Fail
        } else if self
            .checks
            .iter()
            .any(|c| c.outcome == Outcome::Pass && c.name != "symbolic")
        {
            Outcome::Pass
        } else {
            Outcome::Skip
        };
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyConfig {
    pub seed: u64,
    pub max_trials: usize,
    /// Entries whose space dimension exceeds this are skipped.
    pub max_dim: u64,
    /// Worker threads; 0 uses the rayon default.
    #[serde(skip)]
    pub jobs: usize,
}

impl Default for VerifyConfig {
    fn default() -> VerifyConfig {
        VerifyConfig {
            seed: 0,
            max_trials: 64,
            max_dim: 100,
            jobs: 0,
        }
    }
}

pub fn verify_entry(e: &CatalogEntry, cfg: &VerifyConfig) -> VerificationReport {
    let mut rep = VerificationReport::new(&e.id, "triplet");
    let t = &e.descriptor;
    rep.descriptor = Some(t.render());
    let (g, v) = (t.algebra_dim(), t.space_dim());
    rep.check("symbolic", true, format!("dim G = {g}, dim V = {v}"));
    if !e.instantiable {
        let why = t.instantiable().err().unwrap_or_else(|| "outside the constructed labels".into());
        rep.skip("instantiate", format!("not instantiable: {why}"));
        return rep.finish();
    }
    if v > cfg.max_dim {
        rep.skip("instantiate", format!("space dimension {v} exceeds the budget {}", cfg.max_dim));
        return rep.finish();
    }
    let twist = match &e.twist {
        Some(tw) => {
            rep.twist = Some(if e.twist_printed { "catalog, transcribed" } else { "catalog, chosen" }.into());
            tw.clone()
        }
        None => match default_twist(t) {
            Ok(tw) => {
                rep.twist = Some("default".into());
                tw
            }
            Err(err) => {
                rep.check("instantiate", false, err.to_string());
                return rep.finish();
            }
        },
    };
    let r = match instantiate(t, &twist) {
        Ok(r) => r,
        Err(err) => {
            rep.check("instantiate", false, err.to_string());
            return rep.finish();
        }
    };
    let mut policy = PvPolicy {
        seed: cfg.seed,
        max_trials: cfg.max_trials,
        candidates: Vec::new(),
    };
    if let Some(p) = &e.generic_point {
        let point = p.to_vec().expect("checked at load");
        match isotropy_at(&r, &point) {
            Ok(c) => {
                let generic = c.orbit_dim as u64 == v;
                let claim_ok = e.claims.isotropy_dim.is_none_or(|n| n == c.isotropy_dim as u64);
                rep.check(
                    "generic_point",
                    generic && claim_ok,
                    format!("orbit dimension {} and isotropy dimension {} at the stored point", c.orbit_dim, c.isotropy_dim),
                );
            }
            Err(err) => rep.check("generic_point", false, err.to_string()),
        }
        policy.candidates.push(point);
    }
    let verdict = match decide_pv(&r, &policy) {
        Ok(v) => v,
        Err(err) => {
            rep.check("decide_pv", false, err.to_string());
            return rep.finish();
        }
    };
    let c = &e.claims;
    if let Some(claim) = c.is_pv {
        let detail = match &verdict.status {
            PvStatus::IsPv { .. } => "open orbit certified".to_string(),
            PvStatus::NotPvByDimension { .. } => "dim V > dim G".to_string(),
            PvStatus::ProbablyNotPv { trials, best_orbit_dim } => {
                format!("heuristic: best orbit dimension {best_orbit_dim} after {trials} trials")
            }
        };
        rep.check("is_pv", verdict.is_pv() == claim, detail);
    }
    if let Some(claim) = c.is_cuspidal {
        rep.check("is_cuspidal", verdict.cuspidal == claim, format!("dim G = {g}, dim V = {v}"));
    }
    if let Some(n) = c.isotropy_dim {
        let got = verdict.isotropy_dim();
        rep.check("isotropy_dim", got == Some(n as usize), format!("computed {got:?}, claimed {n}"));
    }
    if let Some(name) = &c.generic_isotropy {
        let nd = named_algebra_dim(name).expect("checked at load");
        let got = verdict.isotropy_dim();
        rep.check(
            "generic_isotropy",
            got == Some(nd as usize),
            format!("dim {name} = {nd}, computed {got:?}"),
        );
    }
    if let Some(cert) = verdict.certificate() {
        match cert.replay(&r) {
            Ok(ok) => rep.check("replay", ok, "isotropy recomputed at the certificate point"),
            Err(err) => rep.check("replay", false, err.to_string()),
        }
        rep.certificate = Some(serde_json::to_value(cert).expect("serializable"));
    }
    rep.verdict = Some(verdict);
    rep.finish()
}

pub fn verify_lsa_instance(inst: &Gl2Instance) -> VerificationReport {
    let mut rep = VerificationReport::new(&format!("gl2-lsa:{}", inst.id), "lsa");
    let a = &inst.lsa;
    let violations = validate_lsa(a);
    rep.check(
        "left_symmetric",
        violations.is_empty(),
        format!("{} violations over basis triples", violations.len()),
    );
    rep.check("adjacent_gl2", *a.adjacent() == gl2_hxyc(), "commutator brackets against gl(2) in (H, X, Y, C)");
    let g = a.adjacent();
    rep.check(
        "unimodular",
        (0..g.dim()).all(|i| g.ad(i).trace().is_zero()),
        "tr ad x = 0 on the basis",
    );
    if !violations.is_empty() {
        return rep.finish();
    }
    let ids = right_identities(a);
    let unique = ids.as_ref().is_some_and(|s| s.is_unique());
    rep.check("right_identity_unique", unique, format!("{:?}", ids.as_ref().map(|s| s.kernel.len())));
    let e = ids.map(|s| s.particular);
    rep.check(
        "right_identity_value",
        e.as_deref() == Some(&inst.right_identity[..]),
        "solved right identity against the tabulated one",
    );
    match frobenius_iff_right_identity(a) {
        Ok(f) => {
            rep.check("frobenius", f.agree && f.is_frobenius, "double is Frobenius exactly when a right identity exists");
            rep.certificate = Some(json!({
                "right_identity": e,
                "frobenius_functional": f.explicit_functional,
            }));
        }
        Err(err) => rep.check("frobenius", false, err.to_string()),
    }
    if let Some(e) = &e {
        let back = left_regular_rep(a).and_then(|r| lsa_from_cuspidal(&r, e));
        match back {
            Ok((b, _)) => rep.check("round_trip", b == *a, "product rebuilt from the left-regular representation"),
            Err(err) => rep.check("round_trip", false, err.to_string()),
        }
    }
    rep.finish()
}

pub fn verify_iso_claim(table: &Gl2Table, claim: &IsoClaim) -> VerificationReport {
    let rel = if claim.isomorphic { "~" } else { "!~" };
    let mut rep = VerificationReport::new(&format!("gl2-lsa:{}{rel}{}", claim.a, claim.b), "isomorphism");
    let pair = table.lookup(&claim.a).and_then(|a| Ok((a, table.lookup(&claim.b)?)));
    let (a, b) = match pair {
        Ok(p) => p,
        Err(err) => {
            rep.check("lookup", false, err.to_string());
            return rep.finish();
        }
    };
    let witness = lsa_isomorphic(&a.lsa, &b.lsa, &IsoFamily::default_for(&a.lsa));
    if claim.isomorphic {
        rep.check("witness", witness.is_some(), "linear map carrying one product to the other");
    } else {
        rep.check("no_witness", witness.is_none(), "searched the default candidate family");
    }
    rep.certificate = witness.map(|w| json!({ "witness": w }));
    rep.finish()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub filter: String,
    pub config: VerifyConfig,
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub reports: Vec<VerificationReport>,
}

impl Summary {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}

enum Job<'a> {
    Entry(&'a CatalogEntry),
    Lsa(Gl2Instance),
    Iso(&'a IsoClaim),
}

/// Verifies every matching item in catalog order, then the `gl(2)` table; the output
/// order does not depend on scheduling.
pub fn verify_all(catalog: &Catalog, filter: &Filter, cfg: &VerifyConfig) -> Result<Summary> {
    let mut jobs: Vec<Job<'_>> = catalog
        .entries
        .iter()
        .filter(|e| filter.matches_entry(e))
        .map(Job::Entry)
        .collect();
    for inst in catalog.lsa_table.instances()? {
        if filter.matches_table_item(&format!("gl2-lsa:{}", inst.id)) {
            jobs.push(Job::Lsa(inst));
        }
    }
    for c in &catalog.lsa_table.iso_claims {
        if filter.matches_table_item(&format!("gl2-lsa:{}", c.a)) {
            jobs.push(Job::Iso(c));
        }
    }
    let run = |job: &Job<'_>| match job {
        Job::Entry(e) => verify_entry(e, cfg),
        Job::Lsa(i) => verify_lsa_instance(i),
        Job::Iso(c) => verify_iso_claim(&catalog.lsa_table, c),
    };
    let reports: Vec<VerificationReport> = if cfg.jobs == 1 {
        jobs.iter().map(run).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.jobs)
            .build()
            .map_err(|e| Error::Contract(format!("thread pool: {e}")))?;
        pool.install(|| jobs.par_iter().map(run).collect())
    };
    let count = |s: Status| reports.iter().filter(|r| r.status == s).count();
    Ok(Summary {
        filter: filter.text().to_string(),
        config: *cfg,
        total: reports.len(),
        passed: count(Outcome::Pass),
        failed: count(Outcome::Fail),
        skipped: count(Outcome::Skip),
        reports,
    })
}
