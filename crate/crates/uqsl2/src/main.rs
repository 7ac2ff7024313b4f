use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use uqsl2::format::{alg_to_json, cyc_to_json, report_to_json, report_to_text, tensor_to_json};
use uqsl2::runner::{run_suites, Suite};
use uqsl2::{calc, export};
use uqsl2_core::{hopf, Uq};

/// Above this p the pairwise symmetry checks dominate and runs get long.
const SOFT_P_LIMIT: u32 = 8;

#[derive(Parser)]
#[command(name = "uqsl2", version, about = "Exact verification of the restricted quantum group at q = exp(πi/p)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum What {
    Idempotents,
    SlfBasis,
    Coefficients,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Op {
    Value,
    Coproduct,
    Antipode,
    Counit,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites and report every check.
    Verify {
        #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
        p: u32,
        /// Comma-separated suites: arithmetic, algebra, hopf, integrals,
        /// casimir, idempotents, tables, slf, decomposition, trig, or all.
        #[arg(long, default_value = "all")]
        suite: Vec<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads; 0 uses one per core.
        #[arg(long, env = "UQSL2_JOBS", default_value_t = 0)]
        jobs: usize,
        /// Include per-check elapsed times (makes output run-dependent).
        #[arg(long)]
        timings: bool,
    },
    /// Multiplication table of the block Q_s.
    Tables {
        #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
        p: u32,
        #[arg(long)]
        s: u32,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Export idempotents, the symmetric-function basis or the coefficients
    /// of the twisted integral as JSON.
    Export {
        #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
        p: u32,
        #[arg(long, value_enum)]
        what: What,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate an expression in E, F, K, q, C and [n].
    Calc {
        #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
        p: u32,
        #[arg(long)]
        expr: String,
        #[arg(long, value_enum, default_value = "value")]
        op: Op,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

fn emit(out: Option<&PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn warn_large(p: u32) {
    if p > SOFT_P_LIMIT {
        eprintln!("warning: p = {p} is above {SOFT_P_LIMIT}; pairwise checks grow like p^6 and may take a long time");
    }
}

/// `Ok(true)` when everything passed.
fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Verify { p, suite, format, out, jobs, timings } => {
            warn_large(p);
            let suites = Suite::parse_list(&suite).map_err(Usage)?;
            let run = run_suites(p, &suites, jobs)?;
            let text = match format {
                Format::Text => {
                    let mut s: String = run.reports.iter().map(|r| report_to_text(r, timings)).collect::<Vec<_>>().join("\n");
                    s.push_str(&format!("\ntotal: {} checks, {} failed\n", run.total(), run.failed_count()));
                    s
                }
                Format::Json => pretty(&json!({
                    "p": p,
                    "passed": run.passed(),
                    "total": run.total(),
                    "failed": run.failed_count(),
                    "reports": run.reports.iter().map(|r| report_to_json(r, timings)).collect::<Vec<_>>(),
                })),
            };
            emit(out.as_ref(), &text)?;
            Ok(run.passed())
        }
        Command::Tables { p, s, format, out } => {
            warn_large(p);
            if s > p {
                return Err(Usage(anyhow::anyhow!("--s must lie in 0..={p}, got {s}")).into());
            }
            let uq = Uq::new(p)?;
            let table = export::table_json(&uq, s)?;
            let text = match format {
                Format::Json => pretty(&table),
                Format::Text => table_text(&table),
            };
            emit(out.as_ref(), &text)?;
            Ok(true)
        }
        Command::Export { p, what, out } => {
            warn_large(p);
            let uq = Uq::new(p)?;
            let v = match what {
                What::Idempotents => export::idempotents_json(&uq)?,
                What::SlfBasis => export::slf_basis_json(&uq)?,
                What::Coefficients => export::coefficients_json(&uq)?,
            };
            emit(out.as_ref(), &pretty(&v))?;
            Ok(true)
        }
        Command::Calc { p, expr, op, format } => {
            let uq = Uq::new(p)?;
            let x = calc::eval(&uq, &expr).map_err(Usage)?;
            let (text, v) = match op {
                Op::Value => (x.to_string(), alg_to_json(&x)),
                Op::Antipode => {
                    let y = hopf::antipode(&x);
                    (y.to_string(), alg_to_json(&y))
                }
                Op::Coproduct => {
                    let t = hopf::coproduct(&x);
                    (t.to_string(), tensor_to_json(&t))
                }
                Op::Counit => {
                    let c = hopf::counit(&x);
                    (c.to_string(), json!({"p": p, "value": cyc_to_json(&c)}))
                }
            };
            let s = match format {
                Format::Text => format!("{text}\n"),
                Format::Json => pretty(&v),
            };
            emit(None, &s)?;
            Ok(true)
        }
    }
}

fn table_text(table: &Value) -> String {
    let mut out = format!("Q_{} at p = {}\n", table["s"], table["p"]);
    for row in table["cells"].as_array().into_iter().flatten() {
        for cell in row.as_array().into_iter().flatten() {
            out.push_str(&format!(
                "{} · {} = {}\n",
                cell["row"].as_str().unwrap_or(""),
                cell["col"].as_str().unwrap_or(""),
                cell["result"].as_str().unwrap_or("")
            ));
        }
    }
    out
}

/// Errors caused by the command line rather than the computation.
#[derive(Debug)]
struct Usage(anyhow::Error);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

impl std::error::Error for Usage {}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<Usage>().is_some() || e.downcast_ref::<uqsl2_core::Error>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
