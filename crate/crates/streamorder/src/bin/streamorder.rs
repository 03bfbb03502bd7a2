//! Command-line front end: compare two streams, audit a comparator against
//! the axiom system, search for a single counterexample, list evaluators.
//!
//! Exit codes: 0 = success / no violation, 1 = violation found, 2 = usage
//! or input error.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};

use streamorder::audit::{run_audit, AuditOptions, CheckId, CheckStatus, UniverseBound};
use streamorder::domain::{DomainSpec, Sequence};
use streamorder::error::Error;
use streamorder::evaluators::{make_comparator, EvaluatorSpec};
use streamorder::lifting::{EqualLengthComparator, LiftedComparator, Strategy, TableComparator};

#[derive(Parser)]
#[command(name = "streamorder", version, about = "Order finite utility streams and audit comparators")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ComparatorArgs {
    /// Domain file (JSON with an "elements" list)
    #[arg(long)]
    domain: Option<PathBuf>,
    /// Evaluator spec: mean|sum|min|leximin|discounted_mean:num/den
    #[arg(long)]
    evaluator: Option<String>,
    /// Table comparator file (JSON); carries its own domain
    #[arg(long, conflicts_with = "evaluator")]
    table: Option<PathBuf>,
}

#[derive(Args)]
struct OutputArgs {
    /// Output format
    #[arg(long, default_value = "text", value_parser = ["text", "json"])]
    format: String,
    /// Write the report to a file instead of standard output
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct BoundArgs {
    /// Longest enumerated sequence
    #[arg(long, default_value_t = 3)]
    max_len: usize,
    /// Longest intermediate sequence (default: 4 * max_len)
    #[arg(long)]
    closure_len: Option<usize>,
    /// Worker threads (0 = machine parallelism)
    #[arg(long, default_value_t = 0)]
    workers: usize,
    /// Include elapsed time in the report
    #[arg(long)]
    timing: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Compare two streams and print the replication certificate
    Compare {
        #[command(flatten)]
        comparator: ComparatorArgs,
        /// Left stream, comma-separated labels (e.g. "a,b")
        left: String,
        /// Right stream
        right: String,
        #[arg(long, default_value = "lcm", value_parser = ["lcm", "product"])]
        strategy: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run the axiom audit over a bounded universe
    Audit {
        #[command(flatten)]
        comparator: ComparatorArgs,
        #[command(flatten)]
        bound: BoundArgs,
        /// Comma-separated check ids (default: all)
        #[arg(long)]
        checks: Option<String>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Search for the first counterexample to a single check
    Search {
        /// Check id, e.g. A2_2
        check: String,
        #[command(flatten)]
        comparator: ComparatorArgs,
        #[command(flatten)]
        bound: BoundArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// List the evaluator specs understood by --evaluator
    ListEvaluators,
}

fn load_comparator(
    args: &ComparatorArgs,
) -> Result<(Arc<DomainSpec>, Arc<dyn EqualLengthComparator>), Error> {
    if let Some(path) = &args.table {
        let text = fs::read_to_string(path)?;
        let table = TableComparator::from_json_str(&text)?;
        let table_domain = table.domain().clone();
        if let Some(domain_path) = &args.domain {
            let domain = DomainSpec::from_json_str(&fs::read_to_string(domain_path)?)?;
            if domain != table_domain {
                return Err(Error::DomainMismatch);
            }
        }
        return Ok((table_domain, Arc::new(table)));
    }
    let domain_path = args.domain.as_ref().ok_or_else(|| Error::InvalidBound {
        reason: "--domain is required unless --table is given".to_string(),
    })?;
    let domain = DomainSpec::from_json_str(&fs::read_to_string(domain_path)?)?;
    let spec: EvaluatorSpec = args
        .evaluator
        .as_deref()
        .ok_or_else(|| Error::InvalidBound {
            reason: "--evaluator or --table is required".to_string(),
        })?
        .parse()?;
    Ok((domain, make_comparator(&spec)?))
}

fn emit(output: &OutputArgs, text: String) -> Result<(), Error> {
    match &output.output {
        Some(path) => fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn parse_checks(arg: Option<&str>) -> Result<Vec<CheckId>, Error> {
    match arg {
        None => Ok(CheckId::all().to_vec()),
        Some(text) => text
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<CheckId>().map_err(|_| {
                    let valid = CheckId::all()
                        .iter()
                        .map(|id| id.as_str())
                        .collect::<Vec<_>>()
                        .join(", ");
                    Error::UnknownCheck {
                        id: format!("{t} (valid ids: {valid})"),
                    }
                })
            })
            .collect(),
    }
}

fn build_bound(domain: Arc<DomainSpec>, args: &BoundArgs) -> Result<UniverseBound, Error> {
    match args.closure_len {
        Some(closure) => UniverseBound::with_closure(domain, args.max_len, closure),
        None => UniverseBound::new(domain, args.max_len),
    }
}

fn run() -> Result<u8, Error> {
    let cli = Cli::parse();
    match cli.command {
        Command::Compare {
            comparator,
            left,
            right,
            strategy,
            output,
        } => {
            let (domain, cmp) = load_comparator(&comparator)?;
            let strategy: Strategy = strategy.parse()?;
            let s = Sequence::parse(domain.clone(), &left)?;
            let t = Sequence::parse(domain, &right)?;
            let lifted = LiftedComparator::new(cmp, strategy);
            let cert = lifted.certificate(&s, &t)?;
            let text = if output.format == "json" {
                format!("{}\n", serde_json::to_string_pretty(&cert)?)
            } else {
                cert.render_text()
            };
            emit(&output, text)?;
            Ok(0)
        }
        Command::Audit {
            comparator,
            bound,
            checks,
            output,
        } => {
            let (domain, cmp) = load_comparator(&comparator)?;
            let universe = build_bound(domain, &bound)?;
            let opts = AuditOptions {
                checks: parse_checks(checks.as_deref())?,
                workers: bound.workers,
                timing: bound.timing,
            };
            let report = run_audit(&cmp, &universe, &opts)?;
            let text = if output.format == "json" {
                format!("{}\n", report.to_json())
            } else {
                report.render_text()
            };
            emit(&output, text)?;
            Ok(if report.any_violation() { 1 } else { 0 })
        }
        Command::Search {
            check,
            comparator,
            bound,
            output,
        } => {
            let check: CheckId = check.parse().map_err(|_| {
                let valid = CheckId::all()
                    .iter()
                    .map(|id| id.as_str())
                    .collect::<Vec<_>>()
                    .join(", ");
                Error::UnknownCheck {
                    id: format!("{check} (valid ids: {valid})"),
                }
            })?;
            let (domain, cmp) = load_comparator(&comparator)?;
            let universe = build_bound(domain, &bound)?;
            let opts = AuditOptions {
                checks: vec![check],
                workers: bound.workers,
                timing: bound.timing,
            };
            let report = run_audit(&cmp, &universe, &opts)?;
            let outcome = report
                .outcome(check)
                .expect("requested check is in the report");
            let violated = outcome.status == CheckStatus::Violated;
            let text = if output.format == "json" {
                format!("{}\n", serde_json::to_string_pretty(outcome)?)
            } else if let Some(w) = &outcome.witness {
                format!("{}\n", w_render(check, w))
            } else {
                "none within bound\n".to_string()
            };
            emit(&output, text)?;
            Ok(if violated { 1 } else { 0 })
        }
        Command::ListEvaluators => {
            println!("mean");
            println!("sum");
            println!("min");
            println!("leximin");
            println!("discounted_mean:num/den  (0 < num/den < 1, e.g. discounted_mean:1/2)");
            Ok(0)
        }
    }
}

fn w_render(check: CheckId, w: &streamorder::audit::Witness) -> String {
    let mut parts = vec![format!("{check} violated:")];
    if let Some(s) = &w.sigma {
        parts.push(format!("sigma={s}"));
    }
    if let Some(s) = &w.sigma_prime {
        parts.push(format!("sigma_prime={s}"));
    }
    if let Some(s) = &w.sigma_dprime {
        parts.push(format!("sigma_dprime={s}"));
    }
    if let Some(p) = &w.positions {
        parts.push(format!(
            "positions={}",
            p.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
        ));
    }
    if let Some(f) = &w.factor {
        parts.push(format!("factor={f}"));
    }
    if let Some(d) = &w.detail {
        parts.push(format!("detail={d}"));
    }
    parts.push(format!("observed={}", w.observed.join(",")));
    if let Some(s) = &w.scores {
        parts.push(format!("scores={}", s.join(",")));
    }
    parts.join(" ")
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}
