//! Acceptance checks. Every comparison is exact rational arithmetic; there are no
//! floating-point tolerances anywhere in this target.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cuspidal_core::castling::{
    castle, default_twist, instantiate, legal_moves, parse, pv_transport_check, CastlingMove, TripletDescriptor,
    TwistSpec,
};
use cuspidal_core::catalog::{load_catalog, verify_all, Catalog, Filter, VerifyConfig};
use cuspidal_core::liealg::LieAlgebra;
use cuspidal_core::linalg::qi;
use cuspidal_core::lsa::{
    gl2_hxyc, left_regular_rep, lsa_from_cuspidal, lsa_isomorphic, right_identities, validate_lsa, IsoFamily, Lsa,
};
use cuspidal_core::prehom::{decide_pv, isotropy_at, PvPolicy, PvVerdict};
use cuspidal_core::repr::{coadjoint, quotient_rep, subrepresentation, Representation};
use cuspidal_core::symplectic::{chu_lsa, double, frobenius_iff_right_identity, restrict_to_first_block};
use cuspidal_core::Rational;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn policy() -> PvPolicy {
    PvPolicy::with_seed(0)
}

fn build(text: &str, twist: Option<&TwistSpec>) -> Result<(TripletDescriptor, Representation), String> {
    let t = parse(text).map_err(|e| e.to_string())?;
    let tw = match twist {
        Some(tw) => tw.clone(),
        None => default_twist(&t).map_err(|e| e.to_string())?,
    };
    let r = instantiate(&t, &tw).map_err(|e| e.to_string())?;
    Ok((t, r))
}

fn verdict(r: &Representation) -> Result<PvVerdict, String> {
    decide_pv(r, &policy()).map_err(|e| e.to_string())
}

fn catalog() -> Catalog {
    load_catalog().expect("shipped catalog loads")
}

/// The five tabulated `gl(2)` algebras followed by `M(2)` and `M(3)`.
fn lsas_with_identity(cat: &Catalog) -> Vec<(String, Lsa)> {
    let mut out: Vec<(String, Lsa)> = cat
        .lsa_table
        .instances()
        .expect("table instances")
        .into_iter()
        .map(|i| (i.id, i.lsa))
        .collect();
    out.push(("M(2)".into(), Lsa::matrix_algebra(2)));
    out.push(("M(3)".into(), Lsa::matrix_algebra(3)));
    out
}

/// `x x = -x`, `y x = -y`: right identities `-x + k y`.
fn non_unique_example() -> Lsa {
    let z = Rational::zero;
    Lsa::from_products("two-dim", 2, &[(0, 0, vec![qi(-1), z()]), (1, 0, vec![z(), qi(-1)])]).expect("sizes")
}

fn table_reproduction() -> Outcome {
    let cat = catalog();
    let table = &cat.lsa_table;
    let insts = table.instances().map_err(|e| e.to_string())?;
    ensure(insts.len() == 5, "expected A1, A2 and A3 at three parameters")?;
    for inst in &insts {
        let a = &inst.lsa;
        ensure(validate_lsa(a).is_empty(), format!("{} is not left-symmetric", inst.id))?;
        ensure(*a.adjacent() == gl2_hxyc(), format!("{} adjacent bracket is not gl(2)", inst.id))?;
        let ids = right_identities(a).ok_or(format!("{} has no right identity", inst.id))?;
        ensure(ids.is_unique(), format!("{} right identity not unique", inst.id))?;
        ensure(ids.particular == inst.right_identity, format!("{} right identity differs", inst.id))?;
    }
    let look = |s: &str| table.lookup(s).map(|i| i.lsa).map_err(|e| e.to_string());
    let (a, b) = (look("A3(2)")?, look("A3(1/2)")?);
    ensure(lsa_isomorphic(&a, &b, &IsoFamily::default_for(&a)).is_some(), "no witness for A3(2) ~ A3(1/2)")?;
    let (a1, a2) = (look("A1")?, look("A2")?);
    ensure(lsa_isomorphic(&a1, &a2, &IsoFamily::default_for(&a1)).is_none(), "witness found for A1 ~ A2")?;
    Ok("5 algebras valid with unique right identity; A3(2)~A3(1/2) witnessed; A1 vs A2 none".into())
}

fn round_trip() -> Outcome {
    let all = lsas_with_identity(&catalog());
    for (name, a) in &all {
        let e = right_identities(a).ok_or(format!("{name} has no right identity"))?.particular;
        let r = left_regular_rep(a).map_err(|e| e.to_string())?;
        let (b, e2) = lsa_from_cuspidal(&r, &e).map_err(|e| format!("{name}: {e}"))?;
        ensure(b == *a, format!("{name}: product differs after the round trip"))?;
        ensure(e2.coords == e, format!("{name}: right identity moved"))?;
    }
    Ok(format!("{} algebras recovered exactly", all.len()))
}

fn symplectic_invariants() -> Outcome {
    let all = lsas_with_identity(&catalog());
    for (name, a) in &all {
        let s = double(a).map_err(|e| e.to_string())?;
        ensure(s.violations().is_empty(), format!("{name}: d omega != 0"))?;
        let chu = chu_lsa(&s).map_err(|e| e.to_string())?;
        let back = restrict_to_first_block(&chu, a.dim()).map_err(|e| e.to_string())?;
        ensure(back == *a, format!("{name}: induced product differs on the first block"))?;
    }
    Ok(format!("{} doubles closed over all basis triples; first block recovered", all.len()))
}

fn frobenius_agreement() -> Outcome {
    let mut all = lsas_with_identity(&catalog());
    all.push(("two-dim".into(), non_unique_example()));
    all.push(("zero(1)".into(), Lsa::zero(1)));
    for (name, a) in &all {
        let r = frobenius_iff_right_identity(a).map_err(|e| e.to_string())?;
        ensure(r.agree, format!("{name}: Frobenius and right identity disagree"))?;
    }
    let ex = frobenius_iff_right_identity(&non_unique_example()).map_err(|e| e.to_string())?;
    let ids = right_identities(&non_unique_example()).ok_or("two-dim example lost its identities")?;
    ensure(ex.is_frobenius && ids.kernel.len() == 1, "two-dim example should be Frobenius with a line of identities")?;
    let z = frobenius_iff_right_identity(&Lsa::zero(1)).map_err(|e| e.to_string())?;
    ensure(!z.is_frobenius && !z.has_right_identity, "zero(1) should have neither")?;
    Ok(format!("{} algebras agree, including a non-unique and a missing identity", all.len()))
}

fn main_theorem_cuspidality() -> Outcome {
    let cat = catalog();
    let ids = ["main-result:1-n2", "main-result:1-n3", "main-result:2", "main-result:3", "main-result:4"];
    let mut seen = Vec::new();
    for id in ids {
        let e = cat.get(id).ok_or(format!("missing {id}"))?;
        let (_, r) = build(&e.descriptor.render(), e.twist.as_ref())?;
        let v = verdict(&r)?;
        let cert = v.certificate().ok_or(format!("{id}: not PV"))?;
        ensure(v.algebra_dim == v.space_dim, format!("{id}: dim G != dim V"))?;
        ensure(cert.isotropy_dim == 0, format!("{id}: isotropy {}", cert.isotropy_dim))?;
        ensure(cert.replay(&r).map_err(|e| e.to_string())?, format!("{id}: certificate does not replay"))?;
        seen.push(format!("{}={}", e.descriptor, v.space_dim));
    }
    Ok(format!("IsPV, isotropy 0, replayed: {}", seen.join("; ")))
}

fn generic_isotropy() -> Outcome {
    let mut seen = Vec::new();
    for (text, want) in [("GL(3) : 2L1", 3), ("GL(6) : L2", 21)] {
        let (_, r) = build(text, None)?;
        let got = verdict(&r)?.isotropy_dim();
        ensure(got == Some(want), format!("{text}: isotropy {got:?}, expected {want}"))?;
        seen.push(format!("{text} -> {want}"));
    }
    let cat = catalog();
    for (id, want) in [("isotropy-lemmas:sp-m2", 10), ("isotropy-lemmas:odd-sl-m2", 5)] {
        let e = cat.get(id).ok_or(format!("missing {id}"))?;
        let (_, r) = build(&e.descriptor.render(), e.twist.as_ref())?;
        let p = e.generic_point.as_ref().ok_or(format!("{id}: no stored point"))?;
        let p = p.to_vec().map_err(|e| e.to_string())?;
        let c = isotropy_at(&r, &p).map_err(|e| e.to_string())?;
        ensure(c.is_generic(), format!("{id}: stored point is not generic"))?;
        ensure(c.isotropy_dim == want, format!("{id}: isotropy {}, expected {want}", c.isotropy_dim))?;
        seen.push(format!("{} -> {want} at the stored point", e.descriptor));
    }
    Ok(seen.join("; "))
}

/// A random descriptor `H x GL(n) : rho@L1` with a legal move on the last factor.
fn random_castlable(rng: &mut ChaCha8Rng) -> TripletDescriptor {
    let labels = ["L1", "L1*", "L2", "L2*", "2L1", "2L1*"];
    loop {
        let a = rng.gen_range(2..=6);
        let two = rng.gen_bool(0.4);
        let lab = labels[rng.gen_range(0..labels.len())];
        let text = if two {
            let b = rng.gen_range(2..=3);
            format!("SL({a}) x SL({b}) x GL(1) : {lab}@L1@L1")
        } else {
            format!("SL({a}) x GL(1) : {lab}@L1")
        };
        let t = parse(&text).expect("grammar");
        let m = t.label_dims(0).iter().take(t.factors.len() - 1).product::<u64>();
        if m < 2 {
            continue;
        }
        let n = rng.gen_range(1..m) as usize;
        let text = text.replace("GL(1) :", &format!("GL({n}) :"));
        let t = parse(&text).expect("grammar");
        if !legal_moves(&t).is_empty() {
            return t;
        }
    }
}

fn castling_transport() -> Outcome {
    let mut seen = Vec::new();
    for text in ["SL(3) x GL(2) : 2L1@L1", "SL(5) x GL(3) : L2@L1"] {
        let t = parse(text).map_err(|e| e.to_string())?;
        let mv = CastlingMove::new(0, 1);
        let other = castle(&t, mv).map_err(|e| e.to_string())?;
        for (from, label) in [(&t, "forward"), (&other, "backward")] {
            let rep = pv_transport_check(from, mv, &policy(), 100).map_err(|e| e.to_string())?;
            ensure(rep.skipped.is_none(), format!("{text} {label}: skipped {:?}", rep.skipped))?;
            ensure(rep.verdicts_agree && rep.isotropy_agree, format!("{text} {label}: invariants differ"))?;
        }
        seen.push(format!("{t} <-> {other}"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for _ in 0..100 {
        let t = random_castlable(&mut rng);
        for mv in legal_moves(&t) {
            let back = castle(&castle(&t, mv).map_err(|e| e.to_string())?, mv).map_err(|e| e.to_string())?;
            ensure(back == t, format!("castle is not an involution on {t}"))?;
        }
    }
    Ok(format!("{}; involution on 100 random descriptors", seen.join("; ")))
}

fn unimodularity() -> Outcome {
    let cat = catalog();
    let mut all = lsas_with_identity(&cat);
    all.push(("two-dim".into(), non_unique_example()));
    for (name, a) in all.clone() {
        let s = double(&a).map_err(|e| e.to_string())?;
        all.push((format!("chu({name})"), chu_lsa(&s).map_err(|e| e.to_string())?));
    }
    for e in &cat.entries {
        if !e.instantiable || e.claims.is_cuspidal != Some(true) || e.descriptor.space_dim() > 30 {
            continue;
        }
        let (_, r) = build(&e.descriptor.render(), e.twist.as_ref())?;
        let v = verdict(&r)?;
        if let Some(c) = v.certificate() {
            let (a, _) = lsa_from_cuspidal(&r, &c.point).map_err(|err| format!("{}: {err}", e.id))?;
            all.push((e.id.clone(), a));
        }
    }
    for (name, a) in &all {
        let d = a.adjacent().derived_subalgebra_dim();
        ensure(d < a.dim(), format!("{name}: [g, g] = g (dim {d})"))?;
    }
    Ok(format!("[g, g] is proper for all {} algebras built", all.len()))
}

fn sp_so_reductions() -> Outcome {
    let pairs = [
        ("Sp(2) x GL(2) : L1@L1", "GL(2) : L2", true),
        ("Sp(2) x SL(2) : L1@L1", "SL(2) : L2", false),
        ("SO(3) x GL(2) : L1@L1", "GL(2) : 2L1", true),
        ("SO(3) x SL(2) : L1@L1", "SL(2) : 2L1", false),
    ];
    let mut seen = Vec::new();
    for (big, small, want) in pairs {
        let vb = verdict(&build(big, None)?.1)?;
        let vs = verdict(&build(small, None)?.1)?;
        ensure(vb.is_pv() == vs.is_pv(), format!("{big} and {small} disagree"))?;
        ensure(vb.is_pv() == want, format!("{big}: expected is_pv = {want}"))?;
        seen.push(format!("{big} ~ {small}: {}", vb.label()));
    }
    Ok(seen.join("; "))
}

fn quotient_pv() -> Outcome {
    let (_, r) = build("GL(1)^2 x SL(2) : 2L1 + L1", None)?;
    let v = verdict(&r)?;
    ensure(v.cuspidal, "GL(1)^2 x SL(2) : 2L1 + L1 should be cuspidal")?;
    let sub: Vec<Vec<Rational>> = (0..3).map(|i| cuspidal_core::linalg::unit_vector(5, i)).collect();
    let q = quotient_rep(&r, &sub).map_err(|e| e.to_string())?;
    let vq = verdict(&q)?;
    ensure(vq.is_pv(), "quotient is not PV")?;
    ensure(vq.isotropy_dim() == Some(3), format!("quotient isotropy {:?}, expected 0 + 3", vq.isotropy_dim()))?;

    // [x, y] = y; the coadjoint module has an open orbit
    let mut c = vec![qi(0); 8];
    c[3] = qi(1);
    c[5] = qi(-1);
    let g = Arc::new(LieAlgebra::from_tensor("aff(1)", 2, c).map_err(|e| e.to_string())?);
    let co = coadjoint(&g);
    ensure(verdict(&co)?.is_pv(), "coadjoint of aff(1) should be PV")?;
    let xstar = subrepresentation(&co, &[vec![qi(1), qi(0)]]).map_err(|e| e.to_string())?;
    ensure(!verdict(&xstar)?.is_pv(), "<x*> accepted as PV")?;
    let ystar = subrepresentation(&co, &[vec![qi(0), qi(1)]]);
    ensure(ystar.is_err(), "<y*> accepted as a submodule")?;
    Ok("quotient by 2L1 is PV with isotropy 3; <x*> rejected as not PV; <y*> rejected as not invariant".into())
}

fn determinism() -> Outcome {
    let cat = catalog();
    let cfg = VerifyConfig::default();
    let run = |jobs| {
        let s = verify_all(&cat, &Filter::default(), &VerifyConfig { jobs, ..cfg }).map_err(|e| e.to_string())?;
        serde_json::to_string(&s).map_err(|e| e.to_string())
    };
    let a = run(0)?;
    let b = run(0)?;
    let c = run(1)?;
    ensure(a == b, "two runs differ")?;
    ensure(a == c, "single-threaded run differs")?;
    Ok(format!("{} bytes identical across three runs", a.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("gl(2) table reproduction", table_reproduction),
        ("correspondence round trip", round_trip),
        ("symplectic invariants of the double", symplectic_invariants),
        ("Frobenius iff right identity", frobenius_agreement),
        ("cuspidality of the main classical entries", main_theorem_cuspidality),
        ("generic isotropy dimensions", generic_isotropy),
        ("castling transport", castling_transport),
        ("unimodularity", unimodularity),
        ("Sp and SO reductions", sp_so_reductions),
        ("quotient PV", quotient_pv),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
