use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use cuspidal_core::castling::{
    castle, check_move, default_twist, instantiate, legal_moves, parse, pv_transport_check, reduce,
    ReduceBudget, TripletDescriptor, TwistSpec,
};
use cuspidal_core::catalog::{load_catalog, verify_all, Filter, Outcome, Summary, VerifyConfig};
use cuspidal_core::linalg::Rational;
use cuspidal_core::lsa::{lsa_from_cuspidal, right_identities, validate_lsa, Lsa};
use cuspidal_core::prehom::{decide_pv, PvPolicy, PvStatus, PvVerdict};
use cuspidal_core::symplectic::frobenius_iff_right_identity;

/// Exact verification of prehomogeneous triplets, left-symmetric algebras and castling classes.
#[derive(Parser, Debug)]
#[command(name = "cuspidal", version)]
struct Cli {
    #[command(flatten)]
    run: RunConfig,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct RunConfig {
    /// Seed for generic-point sampling.
    #[arg(long, global = true, env = "CUSPIDAL_SEED", default_value_t = 0)]
    seed: u64,
    /// Random points tried before a triplet is reported as probably not PV.
    #[arg(long, global = true, env = "CUSPIDAL_MAX_TRIALS", default_value_t = 64)]
    max_trials: usize,
    /// Largest space dimension that is instantiated, or entered by the reduce search.
    #[arg(long, global = true, env = "CUSPIDAL_MAX_DIM")]
    max_dim: Option<u64>,
    /// Machine-readable output on stdout.
    #[arg(long, global = true, env = "CUSPIDAL_JSON")]
    json: bool,
    /// Directory receiving certificates and reports.
    #[arg(long, global = true, env = "CUSPIDAL_OUT", default_value = "cuspidal-out")]
    out: PathBuf,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether a triplet is prehomogeneous and write its certificate.
    CheckPv {
        descriptor: String,
        /// Center action as JSON, one block per summand; the default twist otherwise.
        #[arg(long)]
        twist: Option<String>,
    },
    /// Build the left-symmetric algebra of a cuspidal triplet, or load one from the gl(2) table.
    Lsa {
        /// A descriptor, or `table1:NAME` such as `table1:A3 lambda=2`.
        input: String,
        #[arg(long)]
        twist: Option<String>,
    },
    /// List the legal castling moves, or apply the one with the given index.
    Castle {
        descriptor: String,
        #[arg(long = "move")]
        index: Option<usize>,
        /// Compare PV verdicts and isotropy dimensions on both sides of the move.
        #[arg(long, requires = "index")]
        transport: bool,
    },
    /// Find the smallest descriptor in the castling class.
    Reduce {
        descriptor: String,
        #[arg(long, default_value_t = ReduceBudget::default().max_nodes)]
        max_nodes: usize,
    },
    /// Verify every catalog entry matching the filter.
    VerifyCatalog {
        #[arg(long, env = "CUSPIDAL_FILTER", default_value = "")]
        filter: String,
        /// Worker threads; 0 uses one per core.
        #[arg(long, env = "CUSPIDAL_JOBS", default_value_t = 0)]
        jobs: usize,
    },
}

/// Exit statuses: 0 success, 1 a verification failed, 2 bad usage or input.
enum Failure {
    Verification(String),
    Input(String),
}

impl From<cuspidal_core::error::Error> for Failure {
    fn from(e: cuspidal_core::error::Error) -> Failure {
        Failure::Input(e.to_string())
    }
}

type CmdResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::CheckPv { descriptor, twist } => check_pv(&cli.run, &descriptor, twist.as_deref()),
        Command::Lsa { input, twist } => lsa(&cli.run, &input, twist.as_deref()),
        Command::Castle {
            descriptor,
            index,
            transport,
        } => castle_cmd(&cli.run, &descriptor, index, transport),
        Command::Reduce { descriptor, max_nodes } => reduce_cmd(&cli.run, &descriptor, max_nodes),
        Command::VerifyCatalog { filter, jobs } => verify_catalog(&cli.run, &filter, jobs),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

impl RunConfig {
    fn policy(&self) -> PvPolicy {
        PvPolicy {
            seed: self.seed,
            max_trials: self.max_trials,
            candidates: Vec::new(),
        }
    }

    fn instantiate_dim(&self) -> u64 {
        self.max_dim.unwrap_or(VerifyConfig::default().max_dim)
    }

    fn write(&self, name: &str, value: &Value) -> Result<PathBuf, Failure> {
        let io = |e: std::io::Error| Failure::Input(format!("{}: {e}", self.out.display()));
        fs::create_dir_all(&self.out).map_err(io)?;
        let path = self.out.join(name);
        fs::write(&path, pretty(value)).map_err(io)?;
        Ok(path)
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

/// File-name stem from free text: alphanumerics kept, runs of anything else become `_`.
fn slug(text: &str) -> String {
    let mut out = String::new();
    for c in text.chars() {
        if c.is_ascii_alphanumeric() {
            out.push(c);
        } else if c == '*' {
            out.push('s');
        } else if !out.ends_with('_') {
            out.push('_');
        }
    }
    out.trim_matches('_').to_string()
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

fn show(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

fn parse_twist(t: &TripletDescriptor, twist: Option<&str>) -> Result<TwistSpec, Failure> {
    match twist {
        Some(text) => serde_json::from_str(text).map_err(|e| Failure::Input(format!("--twist: {e}"))),
        None => Ok(default_twist(t)?),
    }
}

/// Parses, instantiates within the dimension budget and decides.
fn decide(
    run: &RunConfig,
    text: &str,
    twist: Option<&str>,
) -> Result<(TripletDescriptor, cuspidal_core::repr::Representation, PvVerdict), Failure> {
    let t = parse(text)?;
    t.instantiable().map_err(|e| Failure::Input(format!("not instantiable: {e}")))?;
    let limit = run.instantiate_dim();
    if t.space_dim() > limit {
        return Err(Failure::Input(format!(
            "space dimension {} exceeds --max-dim {limit}",
            t.space_dim()
        )));
    }
    let spec = parse_twist(&t, twist)?;
    let r = instantiate(&t, &spec)?;
    let verdict = decide_pv(&r, &run.policy())?;
    Ok((t, r, verdict))
}

fn check_pv(run: &RunConfig, text: &str, twist: Option<&str>) -> CmdResult {
    let (t, _, verdict) = decide(run, text, twist)?;
    let report = json!({
        "descriptor": t.render(),
        "seed": run.seed,
        "max_trials": run.max_trials,
        "verdict": to_json(&verdict),
    });
    let path = run.write(&format!("check-pv-{}.json", slug(&t.render())), &report)?;
    if run.json {
        print!("{}", pretty(&json!({ "report": report, "certificate_path": path })));
        return Ok(());
    }
    println!("descriptor: {t}");
    println!("dim G = {}, dim V = {}", verdict.algebra_dim, verdict.space_dim);
    println!("verdict: {}", verdict.label());
    match &verdict.status {
        PvStatus::IsPv { certificate } => {
            println!("cuspidal: {}", verdict.cuspidal);
            println!("isotropy dim: {}", certificate.isotropy_dim);
        }
        PvStatus::NotPvByDimension { .. } => println!("reason: dim V > dim G"),
        PvStatus::ProbablyNotPv {
            trials,
            best_orbit_dim,
        } => println!("best orbit dim {best_orbit_dim} < dim V after {trials} trials"),
    }
    println!("certificate: {}", path.display());
    Ok(())
}

fn lsa_report(a: &Lsa, source: Value) -> Result<Value, Failure> {
    let violations = validate_lsa(a);
    if !violations.is_empty() {
        return Err(Failure::Verification(format!(
            "{} is not left-symmetric ({} violations)",
            a.name(),
            violations.len()
        )));
    }
    let ids = right_identities(a);
    let frob = frobenius_iff_right_identity(a)?;
    let g = a.adjacent();
    Ok(json!({
        "source": source,
        "lsa": a.to_json(),
        "left_symmetric": true,
        "right_identities": to_json(&ids),
        "derived_subalgebra_dim": g.derived_subalgebra_dim(),
        "frobenius": to_json(&frob),
    }))
}

fn lsa(run: &RunConfig, input: &str, twist: Option<&str>) -> CmdResult {
    let table_ref = ["table1:", "table-1:", "gl2:"]
        .iter()
        .find_map(|p| input.strip_prefix(p));
    let (a, tabulated, source, stem) = match table_ref {
        Some(label) => {
            let cat = load_catalog()?;
            let inst = cat.lsa_table.lookup(label)?;
            let source = json!({ "table": "gl2-lsa", "id": inst.id, "tabulated_right_identity": inst.right_identity });
            let stem = format!("lsa-gl2-{}", slug(&inst.id));
            (inst.lsa, Some(inst.right_identity), source, stem)
        }
        None => {
            let (t, r, verdict) = decide(run, input, twist)?;
            if !verdict.cuspidal {
                return Err(Failure::Input(format!(
                    "{t} is not cuspidal (dim G = {}, dim V = {}, {})",
                    verdict.algebra_dim,
                    verdict.space_dim,
                    verdict.label()
                )));
            }
            let point = verdict.certificate().expect("cuspidal verdicts carry a certificate").point.clone();
            let (a, _) = lsa_from_cuspidal(&r, &point)?;
            let source = json!({ "descriptor": t.render(), "generic_point": point });
            (a, None, source, format!("lsa-{}", slug(&t.render())))
        }
    };
    let report = lsa_report(&a, source)?;
    let path = run.write(&format!("{stem}.json"), &report)?;
    if let Some(tab) = tabulated {
        if !right_identities(&a).is_some_and(|s| s.is_unique() && s.particular == tab) {
            return Err(Failure::Verification("right identity differs from the table".into()));
        }
    }
    if run.json {
        print!("{}", pretty(&json!({ "report": report, "certificate_path": path })));
        return Ok(());
    }
    println!("algebra: {} (dim {})", a.name(), a.dim());
    println!("left-symmetric: yes");
    let n = a.dim();
    for i in 0..n {
        for j in 0..n {
            let p = a.product_basis(i, j);
            if p.iter().any(|x| !x.is_zero()) {
                println!("  e{i} * e{j} = {}", show(p));
            }
        }
    }
    match right_identities(&a) {
        Some(s) if s.is_unique() => println!("right identity: {} (unique)", show(&s.particular)),
        Some(s) => println!(
            "right identity: {} + span of {} kernel vectors",
            show(&s.particular),
            s.kernel.len()
        ),
        None => println!("right identity: none"),
    }
    let frob = frobenius_iff_right_identity(&a)?;
    match &frob.explicit_functional {
        Some(f) => println!("double is Frobenius, df = omega for f = {}", show(f)),
        None => println!("double is Frobenius: {}", frob.is_frobenius),
    }
    println!("report: {}", path.display());
    Ok(())
}

fn castle_cmd(run: &RunConfig, text: &str, index: Option<usize>, transport: bool) -> CmdResult {
    let t = parse(text)?;
    let moves = legal_moves(&t);
    let Some(i) = index else {
        let listed: Vec<Value> = moves
            .iter()
            .enumerate()
            .map(|(i, mv)| {
                let info = check_move(&t, *mv).expect("legal move");
                let next = castle(&t, *mv).expect("legal move");
                json!({ "index": i, "move": to_json(mv), "n": info.n, "m": info.m, "result": next.render() })
            })
            .collect();
        if run.json {
            print!("{}", pretty(&json!({ "descriptor": t.render(), "moves": listed })));
        } else if moves.is_empty() {
            println!("{t}: no legal castling move");
        } else {
            for m in &listed {
                println!("[{}] {}", m["index"], m["result"].as_str().unwrap_or_default());
            }
        }
        return Ok(());
    };
    let Some(mv) = moves.get(i).copied() else {
        return Err(Failure::Input(format!(
            "move index {i} out of range; {t} has {} legal moves",
            moves.len()
        )));
    };
    let next = castle(&t, mv)?;
    if !transport {
        if run.json {
            print!("{}", pretty(&json!({ "before": t.render(), "move": to_json(&mv), "after": next.render() })));
        } else {
            println!("{next}");
        }
        return Ok(());
    }
    let report = pv_transport_check(&t, mv, &run.policy(), run.instantiate_dim())?;
    let value = to_json(&report);
    let path = run.write(&format!("castle-{}-{i}.json", slug(&t.render())), &value)?;
    if run.json {
        print!("{}", pretty(&json!({ "report": value, "certificate_path": path })));
    } else {
        println!("{t}  ->  {next}");
        match &report.skipped {
            Some(why) => println!("transport check skipped: {why}"),
            None => println!(
                "verdicts agree: {}, isotropy agrees: {}",
                report.verdicts_agree, report.isotropy_agree
            ),
        }
        println!("report: {}", path.display());
    }
    if report.skipped.is_none() && !report.ok() {
        return Err(Failure::Verification("invariants differ across the move".into()));
    }
    Ok(())
}

fn reduce_cmd(run: &RunConfig, text: &str, max_nodes: usize) -> CmdResult {
    let t = parse(text)?;
    let budget = ReduceBudget {
        max_dim: run.max_dim.unwrap_or(ReduceBudget::default().max_dim),
        max_nodes,
    };
    let red = reduce(&t, budget);
    if run.json {
        print!("{}", pretty(&to_json(&red)));
        return Ok(());
    }
    println!("{}", red.descriptor);
    println!(
        "dim V: {} -> {} in {} moves ({} explored, {} pruned{})",
        t.space_dim(),
        red.space_dim,
        red.path.len(),
        red.explored,
        red.pruned,
        if red.complete { "" } else { ", node budget exhausted" }
    );
    Ok(())
}

fn print_summary(s: &Summary, path: &Path) {
    for r in &s.reports {
        let tag = match r.status {
            Outcome::Pass => "PASS",
            Outcome::Fail => "FAIL",
            Outcome::Skip => "SKIP",
        };
        let what = r.descriptor.as_deref().unwrap_or("");
        println!("{tag} {} {what}", r.id);
        for c in r.checks.iter().filter(|c| c.outcome != Outcome::Pass) {
            println!("     {} {:?}: {}", c.name, c.outcome, c.detail);
        }
    }
    println!(
        "{} checked: {} passed, {} failed, {} skipped",
        s.total, s.passed, s.failed, s.skipped
    );
    println!("report: {}", path.display());
}

fn verify_catalog(run: &RunConfig, filter: &str, jobs: usize) -> CmdResult {
    let cat = load_catalog()?;
    let filter = Filter::parse(filter)?;
    let cfg = VerifyConfig {
        seed: run.seed,
        max_trials: run.max_trials,
        max_dim: run.instantiate_dim(),
        jobs,
    };
    let summary = verify_all(&cat, &filter, &cfg)?;
    let value = to_json(&summary);
    let path = run.write("verify-catalog.json", &value)?;
    if run.json {
        print!("{}", pretty(&value));
    } else {
        print_summary(&summary, &path);
    }
    if summary.failed > 0 {
        return Err(Failure::Verification(format!("{} of {} entries failed", summary.failed, summary.total)));
    }
    Ok(())
}
