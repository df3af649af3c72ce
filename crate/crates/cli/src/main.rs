use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use inertia_core::error::InertiaError;
use inertia_core::groupkit::GroupSpec;
use inertia_core::hondatate::{
    good_embedding, is_weil_number, parse_algebra, tate_report, EmbedOptions, IntPoly, WeilNumber,
};
use inertia_core::inertial::{is_pta_inertial, symplectic_realizations, MAX_REALIZATIONS};
use inertia_core::report::{AnalysisReport, ReportOptions, VERSION};

const EXIT_PRECONDITION: u8 = 2;
const EXIT_INTERNAL: u8 = 1;
const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(name = "inertia", version, about = "Rational group algebras and inertial profiles of ramification groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GroupArgs {
    /// Group description in JSON.
    #[arg(long)]
    group: PathBuf,
    /// Residue characteristic, or 0.
    #[arg(long)]
    prime: u64,
    /// Seed for the character-table splitting.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Full report: decomposition, factors, profile, embeddings.
    Analyze {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, conflicts_with = "table")]
        json: bool,
        #[arg(long)]
        table: bool,
        /// Add wall-clock timing to the report.
        #[arg(long)]
        timing: bool,
    },
    /// Inertial profile, or membership of a single (t, a).
    Inertial {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, requires = "a")]
        t: Option<u64>,
        #[arg(long, requires = "t")]
        a: Option<u64>,
    },
    /// Multiplicity vectors realizing Sp_2a.
    Realizations {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        a: u64,
        /// Keep only realizations with trivial joint kernel.
        #[arg(long)]
        faithful: bool,
    },
    /// Weil test and endomorphism algebra data for a minimal polynomial.
    Weil {
        /// "x^2-x+5" or a coefficient list "[1,-1,5]", leading first.
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: u32,
    },
    /// Good-embedding decision for a simple algebra.
    Embed {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        prime: u64,
        /// Also reject type IV invariants 1/2 at self-conjugate places over p.
        #[arg(long)]
        type_iv_evenness: bool,
    },
    /// Regression suite over the worked examples.
    Selftest,
}

enum Failure {
    Precondition(String),
    Internal(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        match e.downcast_ref::<InertiaError>() {
            Some(ie) if ie.is_precondition() => Failure::Precondition(ie.to_string()),
            _ => Failure::Internal(e),
        }
    }
}

impl From<InertiaError> for Failure {
    fn from(e: InertiaError) -> Self {
        Failure::from(anyhow::Error::new(e))
    }
}

fn read_json(path: &Path) -> Result<Value, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Precondition(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Precondition(format!("{} is not JSON: {e}", path.display())))
}

fn read_group(path: &Path) -> Result<GroupSpec, Failure> {
    serde_json::from_value(read_json(path)?)
        .map_err(|e| Failure::Precondition(format!("bad group description in {}: {e}", path.display())))
}

/// Writes to stdout, treating a closed pipe as success.
fn emit(text: &str) -> Result<(), Failure> {
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
            Err(Failure::Internal(anyhow::Error::new(e).context("writing output")))
        }
        _ => Ok(()),
    }
}

fn print_json(v: &Value) -> Result<(), Failure> {
    let s = serde_json::to_string_pretty(v).context("serializing output").map_err(Failure::Internal)?;
    emit(&format!("{s}\n"))
}

fn run(command: Command) -> Result<u8, Failure> {
    match command {
        Command::Analyze { group, json: _, table, timing } => {
            let spec = read_group(&group.group)?;
            let report = AnalysisReport::build(&spec, group.prime, ReportOptions { seed: group.seed, timing })?;
            if table {
                emit(&report.to_table())?;
            } else {
                print_json(&report.to_json())?;
            }
        }
        Command::Inertial { group, t, a } => {
            let spec = read_group(&group.group)?;
            let report = AnalysisReport::build(&spec, group.prime, ReportOptions { seed: group.seed, timing: false })?;
            let mut v =
                serde_json::to_value(&report.profile).context("serializing profile").map_err(Failure::Internal)?;
            if let (Some(t), Some(a)) = (t, a) {
                v["query"] = json!({"t": t, "a": a, "inertial": is_pta_inertial(&report.profile, t, a)});
            }
            print_json(&v)?;
        }
        Command::Realizations { group, a, faithful } => {
            let spec = read_group(&group.group)?;
            let report = AnalysisReport::build(&spec, group.prime, ReportOptions { seed: group.seed, timing: false })?;
            let factors = &report.profile.factors;
            let (rs, truncated) =
                symplectic_realizations(report.analysis.group_order, group.prime, factors, a, faithful);
            print_json(&json!({
                "p": group.prime,
                "a": a,
                "faithful_only": faithful,
                "count": rs.len(),
                "truncated": truncated,
                "limit": MAX_REALIZATIONS,
                "realizations": rs.iter().map(|r| r.to_json(factors)).collect::<Vec<_>>(),
            }))?;
        }
        Command::Weil { poly, p, n } => {
            let f = IntPoly::parse(&poly)?;
            let check = is_weil_number(&f, p, n)?;
            let report = if check.weil { Some(tate_report(&WeilNumber::new(f.clone(), p, n)?)) } else { None };
            print_json(&json!({
                "weil": check.weil,
                "poly": f.to_string(),
                "p": p,
                "n": n,
                "q": format!("{p}^{n}"),
                "certificate": check.certificate,
                "end_algebra": report,
            }))?;
        }
        Command::Embed { algebra, prime, type_iv_evenness } => {
            let (e, ty) = parse_algebra(&read_json(&algebra)?)?;
            let decision = good_embedding(&e, ty, prime, EmbedOptions { type_iv_evenness })?;
            let mut v = serde_json::to_value(&decision).context("serializing decision").map_err(Failure::Internal)?;
            v["algebra"] = json!(e.describe());
            v["p"] = json!(prime);
            print_json(&v)?;
        }
        Command::Selftest => {
            let cases = inertia_core::selftest::run();
            let failed = cases.iter().filter(|c| !c.passed).count();
            let mut text = String::new();
            for c in &cases {
                let mark = if c.passed { "ok  " } else { "FAIL" };
                if c.detail.is_empty() {
                    text.push_str(&format!("{mark} {}\n", c.name));
                } else {
                    text.push_str(&format!("{mark} {} ({})\n", c.name, c.detail));
                }
            }
            text.push_str(&format!("{} passed, {failed} failed\n", cases.len() - failed));
            emit(&text)?;
            return Ok(if failed == 0 { 0 } else { EXIT_INTERNAL });
        }
    }
    Ok(0)
}

fn error_object(kind: &str, message: &str) -> String {
    let v = json!({"error": {"kind": kind, "message": message}, "tool": "inertia", "version": VERSION});
    serde_json::to_string_pretty(&v).unwrap_or_else(|_| message.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Precondition(msg)) => {
            let _ = emit(&format!("{}\n", error_object("precondition", &msg)));
            ExitCode::from(EXIT_PRECONDITION)
        }
        Err(Failure::Internal(e)) => {
            let _ = emit(&format!("{}\n", error_object("internal", &format!("{e:#}"))));
            ExitCode::from(EXIT_INTERNAL)
        }
    }
}
