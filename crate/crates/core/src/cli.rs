//! Command-line front end.
//!
//! Exit codes: 0 success, 1 verification failure or computation error,
//! 2 usage error, 3 resource cap hit.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use crate::hurwitz::{
    connect_search, orbit_explore_threads, standard_tuple, ConnectResult, ReflTuple,
};
use crate::interval::{build_poset, ExportFormat};
use crate::rootsys::{elliptic_diagram, finite_type_data, root_system, Kind};
use crate::verify::{run_all_checks, CheckConfig, Status};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TypeArg {
    One(Kind),
    All,
}

impl FromStr for TypeArg {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.eq_ignore_ascii_case("all") {
            return Ok(TypeArg::All);
        }
        s.to_ascii_uppercase().parse::<Kind>().map(TypeArg::One).map_err(|e| e.to_string())
    }
}

impl TypeArg {
    fn kinds(self) -> Vec<Kind> {
        match self {
            TypeArg::One(k) => vec![k],
            TypeArg::All => Kind::ALL.to_vec(),
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "ellweyl", version, about = "Tubular elliptic Weyl groups, their hyperbolic covers and Hurwitz orbits")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Root system data and elliptic Dynkin diagram.
    Roots(RootsArgs),
    /// Run the verification suite.
    Verify(VerifyArgs),
    /// Explore the Hurwitz orbit of the standard factorization.
    Hurwitz(HurwitzArgs),
    /// Build and export the discovered interval poset.
    Poset(PosetArgs),
}

#[derive(Args, Debug)]
struct Common {
    /// D4, E6, E7, E8 or all.
    #[arg(long = "type", value_name = "TYPE")]
    kind: TypeArg,
    /// Print tables instead of JSON.
    #[arg(long)]
    human: bool,
    /// Seed for sampling-based checks.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args, Debug)]
struct RootsArgs {
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[command(flatten)]
    common: Common,
    /// Run the full item suite.
    #[arg(long)]
    paper: bool,
    #[arg(long, default_value_t = 10_000)]
    normal_form_pairs: usize,
    #[arg(long, default_value_t = 10_000)]
    braid_words: usize,
    #[arg(long, default_value_t = 1_000)]
    central_samples: usize,
    #[arg(long, default_value_t = 100)]
    connect_samples: usize,
    #[arg(long, default_value_t = 1_000_000)]
    max_states: usize,
    /// Only run the listed item ids (comma separated).
    #[arg(long, value_delimiter = ',')]
    only: Vec<String>,
    /// Negative control: perturb the Gram matrix.
    #[arg(long, hide = true)]
    sabotage_gram: bool,
}

#[derive(Args, Debug)]
struct HurwitzArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, default_value_t = 1)]
    bound: i64,
    #[arg(long, default_value_t = 1_000_000)]
    max_states: usize,
    #[arg(long, env = "ELLWEYL_THREADS")]
    threads: Option<usize>,
    /// Census output (JSON lines).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Search a braid word between two tuples given as JSON files.
    #[arg(long, num_args = 2, value_names = ["FROM", "TO"])]
    connect: Option<Vec<PathBuf>>,
}

#[derive(Args, Debug)]
struct PosetArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, default_value_t = 0)]
    bound: i64,
    #[arg(long, default_value_t = 1_000_000)]
    max_states: usize,
    #[arg(long, default_value = "json")]
    format: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Recorded in every output for reproducibility.
#[derive(Serialize, Debug)]
struct RunConfig<'a> {
    kind: String,
    coeff_bound: Option<i64>,
    max_states: Option<usize>,
    out: Option<&'a Path>,
    format: Option<&'a str>,
    seed: u64,
}

pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_USAGE
                }
            };
        }
    };
    let result = match cli.command {
        Command::Roots(a) => cmd_roots(&a, out),
        Command::Verify(a) => cmd_verify(&a, out),
        Command::Hurwitz(a) => cmd_hurwitz(&a, out),
        Command::Poset(a) => cmd_poset(&a, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            if let Some(u) = e.downcast_ref::<UsageError>() {
                let _ = writeln!(err, "error: {}", u.0);
                EXIT_USAGE
            } else {
                let _ = writeln!(err, "error: {e:#}");
                EXIT_FAIL
            }
        }
    }
}

#[derive(Debug)]
struct UsageError(String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    anyhow::Error::new(UsageError(msg.into()))
}

fn single(kind: TypeArg) -> anyhow::Result<Kind> {
    match kind {
        TypeArg::One(k) => Ok(k),
        TypeArg::All => Err(usage("this command needs a single --type")),
    }
}

fn type_label(kind: TypeArg) -> String {
    match kind {
        TypeArg::One(k) => k.to_string(),
        TypeArg::All => "all".into(),
    }
}

fn print_json(out: &mut dyn Write, v: &serde_json::Value) -> anyhow::Result<()> {
    serde_json::to_writer_pretty(&mut *out, v)?;
    writeln!(out)?;
    Ok(())
}

fn cmd_roots(a: &RootsArgs, out: &mut dyn Write) -> anyhow::Result<i32> {
    let mut reports = Vec::new();
    for kind in a.common.kind.kinds() {
        let ty = finite_type_data(kind);
        let rs = root_system(kind);
        let diagram = elliptic_diagram(kind);
        if a.common.human {
            writeln!(out, "{kind}: n={} t={} m_t={} marks={:?}", ty.n, ty.t, ty.m_t, ty.marks)?;
            writeln!(out, "  finite roots: {} ({} positive)", rs.roots().len(), rs.positive_roots().len())?;
            writeln!(out, "  highest root neighbour: alpha_{}", ty.affine_neighbor)?;
            writeln!(out, "  elliptic diagram:")?;
            for e in &diagram {
                let style = match e.edge {
                    crate::rootsys::EdgeKind::Single => "---",
                    crate::rootsys::EdgeKind::DottedDouble => "===",
                };
                writeln!(out, "    {} {style} {}", e.from, e.to)?;
            }
        } else {
            reports.push(json!({
                "kind": kind,
                "n": ty.n,
                "t": ty.t,
                "m_t": ty.m_t,
                "marks": ty.marks,
                "dynkin_edges": ty.edges,
                "affine_neighbor": ty.affine_neighbor,
                "finite_roots": rs.roots().len(),
                "positive_roots": rs.positive_roots().len(),
                "elliptic_diagram": diagram,
            }));
        }
    }
    if !a.common.human {
        let v = if reports.len() == 1 { reports.remove(0) } else { json!(reports) };
        print_json(out, &v)?;
    }
    Ok(EXIT_OK)
}

fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write) -> anyhow::Result<i32> {
    if !a.paper {
        return Err(usage("verify needs --paper"));
    }
    let cfg = CheckConfig {
        seed: a.common.seed,
        normal_form_pairs: a.normal_form_pairs,
        braid_words: a.braid_words,
        central_samples: a.central_samples,
        census_states: a.max_states,
        connect_samples: a.connect_samples,
        sabotage_gram: a.sabotage_gram,
    };
    for id in &a.only {
        if !crate::verify::CHECK_IDS.contains(&id.as_str()) {
            return Err(usage(format!("unknown item id `{id}`")));
        }
    }
    let mut results = Vec::new();
    for kind in a.common.kind.kinds() {
        let items = if a.only.is_empty() {
            run_all_checks(kind, &cfg)
        } else {
            a.only.iter().filter_map(|id| crate::verify::run_check(id, kind, &cfg)).collect()
        };
        for r in items {
            if a.common.human {
                let tag = match r.status {
                    Status::Pass => "PASS",
                    Status::Fail => "FAIL",
                    Status::Skip => "SKIP",
                };
                writeln!(out, "{tag} {:<3} {:<19} {} ({} ms)", r.kind, r.id, r.detail, r.millis)?;
            }
            results.push(r);
        }
    }
    let passed = results.iter().all(|r| r.passed());
    if a.common.human {
        let failed: Vec<String> =
            results.iter().filter(|r| !r.passed()).map(|r| format!("{}:{}", r.kind, r.id)).collect();
        if failed.is_empty() {
            writeln!(out, "all items passed")?;
        } else {
            writeln!(out, "failed items: {}", failed.join(", "))?;
        }
    } else {
        let config = RunConfig {
            kind: type_label(a.common.kind),
            coeff_bound: None,
            max_states: Some(a.max_states),
            out: None,
            format: None,
            seed: a.common.seed,
        };
        print_json(out, &json!({ "config": config, "passed": passed, "results": results }))?;
    }
    Ok(if passed { EXIT_OK } else { EXIT_FAIL })
}

fn read_tuple(path: &Path) -> anyhow::Result<ReflTuple> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn cmd_hurwitz(a: &HurwitzArgs, out: &mut dyn Write) -> anyhow::Result<i32> {
    let kind = single(a.common.kind)?;
    if a.bound < 0 || a.max_states == 0 {
        return Err(usage("--bound must be >= 0 and --max-states positive"));
    }
    let threads = a.threads.unwrap_or(1).max(1);
    let config = RunConfig {
        kind: kind.to_string(),
        coeff_bound: Some(a.bound),
        max_states: Some(a.max_states),
        out: a.out.as_deref(),
        format: None,
        seed: a.common.seed,
    };
    if let Some(paths) = &a.connect {
        let from = read_tuple(&paths[0])?;
        let to = read_tuple(&paths[1])?;
        if from.kind() != kind || to.kind() != kind {
            return Err(usage("tuple files do not match --type"));
        }
        let res = connect_search(&from, &to, a.bound, a.max_states).map_err(|e| anyhow!(e))?;
        let (v, code) = match res {
            ConnectResult::Found(w) => (json!({ "result": "found", "word": w }), EXIT_OK),
            ConnectResult::Inconclusive { explored } => {
                let code = if explored >= a.max_states { EXIT_CAP } else { EXIT_OK };
                (json!({ "result": "inconclusive", "explored": explored }), code)
            }
        };
        if a.common.human {
            match &v["word"] {
                serde_json::Value::Null => writeln!(out, "inconclusive")?,
                w => writeln!(out, "word: {w}")?,
            }
        } else {
            print_json(out, &json!({ "config": config, "connect": v }))?;
        }
        return Ok(code);
    }
    let census = orbit_explore_threads(&standard_tuple(kind), a.bound, a.max_states, threads);
    if let Some(path) = &a.out {
        let f = fs::File::create(path).with_context(|| format!("creating {}", path.display()))?;
        let mut w = std::io::BufWriter::new(f);
        census.write_jsonl(&mut w)?;
        w.flush()?;
    }
    let summary = census.summary();
    if a.common.human {
        writeln!(
            out,
            "{kind} bound {} (effective {}): {} states, {} truncations, depth {}{}",
            summary.bound,
            summary.effective_bound,
            summary.states,
            summary.truncations,
            summary.max_depth,
            if summary.complete { "" } else { ", stopped at --max-states" }
        )?;
    } else {
        print_json(out, &json!({ "config": config, "summary": summary }))?;
    }
    Ok(if census.is_complete() { EXIT_OK } else { EXIT_CAP })
}

fn cmd_poset(a: &PosetArgs, out: &mut dyn Write) -> anyhow::Result<i32> {
    let kind = single(a.common.kind)?;
    let format: ExportFormat = a.format.parse().map_err(|e| usage(format!("{e}")))?;
    if a.bound < 0 || a.max_states == 0 {
        return Err(usage("--bound must be >= 0 and --max-states positive"));
    }
    let census = crate::hurwitz::orbit_explore(&standard_tuple(kind), a.bound, a.max_states);
    let poset = build_poset(&census).map_err(|e| anyhow!(e))?;
    if a.common.human {
        let st = poset.stats();
        writeln!(out, "{kind} bound {}: {} nodes, {} covers", a.bound, st.nodes, st.covers)?;
        for (len, count) in poset.levels() {
            writeln!(out, "  length {len}: {count}")?;
        }
    }
    let bytes = poset.export(format);
    match &a.out {
        Some(path) => fs::write(path, &bytes).with_context(|| format!("writing {}", path.display()))?,
        None if a.common.human => {}
        None => out.write_all(&bytes)?,
    }
    Ok(if census.is_complete() { EXIT_OK } else { EXIT_CAP })
}
