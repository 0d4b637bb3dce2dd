mod file;
mod literal;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use unitforce::cayley_menger::forcing_identities_with;
use unitforce::complex::build_complex;
use unitforce::exec::Execution;
use unitforce::field::rational::format_rational;
use unitforce::replay::derive_certificate;
use unitforce::witness::{build_rational_sq, plan_derivation, BuildOptions, PlanOptions, DEFAULT_BUDGET};

use file::{AnyGraph, WitnessFile};

/// Exact unit-distance witness sets and their forcing certificates.
#[derive(Parser, Debug)]
#[command(name = "unitforce", version)]
struct Cli {
    /// Run every stage sequentially.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a witness and its certificate.
    Build {
        /// Target squared distance `p/q` in the real plane.
        #[arg(long, conflicts_with_all = ["from", "to"], required_unless_present = "to")]
        dsq: Option<String>,
        /// First complex target point, e.g. `0,0`.
        #[arg(long, requires = "to", allow_hyphen_values = true)]
        from: Option<String>,
        /// Second complex target point, e.g. `1,i`.
        #[arg(long, requires = "from", allow_hyphen_values = true)]
        to: Option<String>,
        #[command(flatten)]
        plan: PlanArgs,
        /// Write here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Add non-authoritative decimal coordinates.
        #[arg(long)]
        approx: bool,
    },
    /// Exact verification of a witness file.
    Verify { file: PathBuf },
    /// Check the certificate stored in a witness file.
    Replay { file: PathBuf },
    /// Expand the five forcing identities symbolically.
    Identities,
    /// Flattened size estimates for a list of squared distances.
    Stats {
        /// Comma-separated `p/q` values.
        #[arg(long, value_delimiter = ',', required = true)]
        dsq_list: Vec<String>,
        /// Only report the unoptimised chain.
        #[arg(long)]
        paper_chain: bool,
    },
    /// Re-emit a witness file as JSON or Graphviz source.
    Export {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(clap::Args, Debug)]
struct PlanArgs {
    /// Use the unoptimised ascend-then-descend chain.
    #[arg(long)]
    paper_chain: bool,
    /// Largest admissible estimated edge count.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u128,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Dot,
}

/// Exit 1 for failures, 2 for usage errors; always reported as JSON.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Failure { kind: &'static str, message: String },
}

impl CliError {
    pub fn failure(kind: &'static str, message: impl Into<String>) -> Self {
        CliError::Failure { kind, message: message.into() }
    }

    pub fn io(path: &Path, e: std::io::Error) -> Self {
        Self::failure("io", format!("{}: {e}", path.display()))
    }

    fn report(&self) -> (Value, u8) {
        match self {
            CliError::Usage(m) => (json!({"error": "usage", "message": m}), 2),
            CliError::Failure { kind, message } => (json!({"error": kind, "message": message}), 1),
        }
    }
}

type Outcome = Result<bool, CliError>;

fn emit(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::io(p, e)),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).map_err(|e| CliError::failure("io", e.to_string()))
        }
    }
}

fn pretty(v: &impl serde::Serialize) -> Result<String, CliError> {
    serde_json::to_string_pretty(v).map(|s| s + "\n").map_err(|e| CliError::failure("serialize", e.to_string()))
}

fn build_cmd(
    dsq: Option<String>,
    pair: Option<(String, String)>,
    plan: PlanArgs,
    out: Option<PathBuf>,
    approx: bool,
    exec: Execution,
) -> Outcome {
    let opts = BuildOptions {
        plan: PlanOptions { paper_chain: plan.paper_chain, budget: plan.budget, ..PlanOptions::default() },
        exec,
    };
    let graph = match (dsq, pair) {
        (Some(d), _) => {
            let (p, q) = literal::positive_dsq(&d).map_err(CliError::Usage)?;
            AnyGraph::Real(build_rational_sq(p, q, None, &opts).map_err(|e| CliError::failure("build", e.to_string()))?)
        }
        (None, Some((a, b))) => {
            let x = literal::point(&a).map_err(CliError::Usage)?;
            let y = literal::point(&b).map_err(CliError::Usage)?;
            AnyGraph::Complex(build_complex(&x, &y, &opts).map_err(|e| CliError::failure("build", e.to_string()))?)
        }
        (None, None) => return Err(CliError::Usage("give --dsq or --from/--to".into())),
    };
    let report = graph.verify(exec);
    let certificate = match &graph {
        AnyGraph::Real(g) => derive_certificate(g),
        AnyGraph::Complex(g) => derive_certificate(g),
    }
    .map_err(|e| CliError::failure("certificate", e.to_string()))?;
    let file = WitnessFile { graph, certificate: Some(certificate) };
    let mut value = serde_json::to_value(&file).map_err(|e| CliError::failure("serialize", e.to_string()))?;
    if approx {
        value["approx"] = json!({"note": "decimal rendering, not authoritative", "points": file.graph.approx_points()});
    }
    emit(&pretty(&value)?, out.as_deref())?;
    if !report.passed() {
        eprintln!("{}", json!({"error": "verification", "violations": report.violations}));
    }
    Ok(report.passed())
}

fn verify_cmd(path: &Path, exec: Execution) -> Outcome {
    let f = file::load(path)?;
    let report = f.graph.verify(exec);
    emit(&pretty(&json!({"passed": report.passed(), "violations": report.violations}))?, None)?;
    Ok(report.passed())
}

fn replay_cmd(path: &Path, exec: Execution) -> Outcome {
    let f = file::load(path)?;
    let cert = f.certificate.ok_or_else(|| CliError::failure("certificate", format!("{} has no certificate", path.display())))?;
    let report = f.graph.check(&cert, exec);
    emit(&pretty(&report)?, None)?;
    Ok(report.passed)
}

fn identities_cmd(exec: Execution) -> Outcome {
    let mut all = true;
    let mut text = String::new();
    for c in forcing_identities_with(exec) {
        let ok = c.holds();
        all &= ok;
        text += &format!("{} {:<16} {}\n", if ok { "PASS" } else { "FAIL" }, c.name, c.display);
    }
    emit(&text, None)?;
    Ok(all)
}

/// Estimates saturate at `u128::MAX`.
fn count(n: u128) -> String {
    if n == u128::MAX {
        "overflow".into()
    } else {
        n.to_string()
    }
}

fn stats_cmd(list: &[String], chain_only: bool) -> Outcome {
    let unbounded = PlanOptions { budget: u128::MAX, ..PlanOptions::default() };
    let chain_opts = PlanOptions { paper_chain: true, ..unbounded };
    let mut text = if chain_only {
        format!("{:<10} {:>14} {:>14}\n", "dsq", "chain_points", "chain_edges")
    } else {
        format!("{:<10} {:>14} {:>14} {:>14} {:>14}\n", "dsq", "planner_points", "planner_edges", "chain_points", "chain_edges")
    };
    for d in list {
        let (p, q) = literal::positive_dsq(d).map_err(CliError::Usage)?;
        let plan = |o: &PlanOptions| plan_derivation(p, q, o).map_err(|e| CliError::failure("plan", e.to_string()));
        let chain = plan(&chain_opts)?;
        let name = format_rational(chain.dsq());
        if chain_only {
            text += &format!("{name:<10} {:>14} {:>14}\n", count(chain.estimate_points()), count(chain.estimate_edges()));
        } else {
            let best = plan(&unbounded)?;
            text += &format!(
                "{name:<10} {:>14} {:>14} {:>14} {:>14}\n",
                count(best.estimate_points()),
                count(best.estimate_edges()),
                count(chain.estimate_points()),
                count(chain.estimate_edges())
            );
        }
    }
    emit(&text, None)?;
    Ok(true)
}

fn export_cmd(path: &Path, format: Format, out: Option<&Path>) -> Outcome {
    let f = file::load(path)?;
    let text = match format {
        Format::Json => pretty(&f)?,
        Format::Dot => f.graph.to_dot(),
    };
    emit(&text, out)?;
    Ok(true)
}

fn run(cli: Cli) -> Outcome {
    let exec = if cli.sequential { Execution::Sequential } else { Execution::Parallel };
    match cli.command {
        Command::Build { dsq, from, to, plan, out, approx } => build_cmd(dsq, from.zip(to), plan, out, approx, exec),
        Command::Verify { file } => verify_cmd(&file, exec),
        Command::Replay { file } => replay_cmd(&file, exec),
        Command::Identities => identities_cmd(exec),
        Command::Stats { dsq_list, paper_chain } => stats_cmd(&dsq_list, paper_chain),
        Command::Export { file, format, out } => export_cmd(&file, format, out.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprintln!("{}", json!({"error": "usage", "message": e.to_string().trim_end()}));
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            let (v, code) = e.report();
            eprintln!("{v}");
            ExitCode::from(code)
        }
    }
}
