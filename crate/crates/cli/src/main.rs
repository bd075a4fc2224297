use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::Rational64;
use serde_json::{json, Value};

use stringy_core::catalog::{catalog, verify_tower, TowerSpec};
use stringy_core::dcc::{enumerate_space, verify_dcc_on_enumeration};
use stringy_core::dualgraph::{discrepancies_from_weights, gorenstein_index, is_negative_definite, ResolutionGraph};
use stringy_core::equivariant::{GraphAction, QuotientGraph};
use stringy_core::laurent::{expand, parse_motive, poincare};
use stringy_core::stringy::{quotient_motive, truncation_report};
use stringy_core::{Error, MotiveValue};

/// Exact stringy motives of surface singularities with group actions.
#[derive(Parser)]
#[command(name = "stringy", version)]
struct Cli {
    /// Output rendering.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Machine,
}

#[derive(Subcommand)]
enum Command {
    /// Stringy motive of a resolution graph under the trivial action.
    Compute { file: PathBuf },
    /// Quotient stringy motive under a group action.
    Quotient {
        file: PathBuf,
        #[arg(long)]
        action: PathBuf,
    },
    /// Log discrepancies from self-intersection weights.
    Discrepancies { file: PathBuf },
    /// Compare two motives in the expansion order.
    Compare { f: String, g: String },
    /// Laurent expansion at L -> infinity down to a cutoff exponent.
    Expand {
        f: String,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        cutoff: String,
        /// Print the Poincaré series in T = L^(1/2) instead.
        #[arg(long)]
        poincare: bool,
    },
    /// Quotient motives along a tower of covers and a strict descent check.
    Tower {
        #[arg(required = true)]
        names: Vec<String>,
    },
    /// All abstract quotient data up to a bound.
    Enumerate {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        max_vertices: usize,
        /// Print the finiteness report instead of the data.
        #[arg(long)]
        verify_dcc: bool,
    },
    /// The built-in catalog.
    Catalog {
        #[command(subcommand)]
        command: CatalogCommand,
    },
}

#[derive(Subcommand)]
enum CatalogCommand {
    /// One line per entry: name, vertex count, known actions.
    List,
}

enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_parse() {
            Failure::Usage(e.to_string())
        } else {
            Failure::Domain(e)
        }
    }
}

type Outcome = Result<(), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

/// Inline expression, or the contents of a file when `arg` names one.
fn motive_arg(arg: &str) -> Result<MotiveValue, Failure> {
    let path = Path::new(arg);
    let text = if path.is_file() { read(path)? } else { arg.to_string() };
    Ok(parse_motive(text.trim())?)
}

fn load_graph(path: &Path) -> Result<ResolutionGraph, Failure> {
    let g = ResolutionGraph::from_json(&read(path)?)?;
    if g.discrepancies().is_none() && g.weights().is_some() {
        return Ok(discrepancies_from_weights(&g)?);
    }
    Ok(g)
}

fn quotient_json(q: &QuotientGraph) -> Value {
    json!({
        "vertices": q.vertices().iter().map(|v| json!({
            "id": v.id,
            "members": v.members,
            "a": v.a.to_string(),
            "m": v.m,
            "special": v.special,
        })).collect::<Vec<_>>(),
        "edges": q.edges().iter().map(|&(i, j)| [i, j]).collect::<Vec<_>>(),
    })
}

fn motive_record(value: &MotiveValue) -> Result<Value, Failure> {
    let report = truncation_report(value)?;
    Ok(json!({
        "motive": value.to_string(),
        "N": report.n().to_string(),
        "C": report.c().to_string().parse::<i64>().map_or_else(|_| json!(report.c().to_string()), |c| json!(c)),
    }))
}

fn print_motive(out: &mut impl Write, fmt: Format, value: &MotiveValue, extra: Option<(&str, Value)>) -> Outcome {
    let report = truncation_report(value)?;
    match fmt {
        Format::Text => {
            writeln!(out, "{value}").ok();
            writeln!(out, "{report}").ok();
        }
        Format::Machine => {
            let mut rec = motive_record(value)?;
            if let Some((k, v)) = extra {
                rec[k] = v;
            }
            writeln!(out, "{rec}").ok();
        }
    }
    Ok(())
}

fn run(cli: Cli, out: &mut impl Write) -> Outcome {
    let fmt = cli.format;
    match cli.command {
        Command::Compute { file } => {
            let g = load_graph(&file)?;
            let (_, value) = quotient_motive(&g, &GraphAction::trivial(&g))?;
            print_motive(out, fmt, &value, None)
        }
        Command::Quotient { file, action } => {
            let g = load_graph(&file)?;
            let act = GraphAction::from_json(&g, &read(&action)?)?;
            let (q, value) = quotient_motive(&g, &act)?;
            print_motive(out, fmt, &value, Some(("quotient", quotient_json(&q))))
        }
        Command::Discrepancies { file } => {
            let g = ResolutionGraph::from_json(&read(&file)?)?;
            let solved = discrepancies_from_weights(&g)?;
            if !is_negative_definite(&g)? {
                eprintln!("warning: intersection matrix is not negative definite");
            }
            let a: Vec<Rational64> = solved.discrepancies().unwrap_or_default();
            let r = gorenstein_index(&solved)?;
            let shown: Vec<String> = a.iter().map(|x| x.to_string()).collect();
            match fmt {
                Format::Text => writeln!(out, "a = [{}], index r = {r}", shown.join(", ")).ok(),
                Format::Machine => writeln!(out, "{}", json!({"a": shown, "r": r})).ok(),
            };
            Ok(())
        }
        Command::Compare { f, g } => {
            let verdict = match motive_arg(&f)?.compare(&motive_arg(&g)?) {
                std::cmp::Ordering::Greater => "GREATER",
                std::cmp::Ordering::Equal => "EQUAL",
                std::cmp::Ordering::Less => "LESS",
            };
            match fmt {
                Format::Text => writeln!(out, "{verdict}").ok(),
                Format::Machine => writeln!(out, "{}", json!({"verdict": verdict})).ok(),
            };
            Ok(())
        }
        Command::Expand { f, cutoff, poincare: as_poincare } => {
            let cutoff: Rational64 = cutoff
                .trim()
                .parse()
                .map_err(|e| Failure::Usage(format!("bad cutoff `{cutoff}`: {e}")))?;
            let value = motive_arg(&f)?;
            let (variable, text, terms) = if as_poincare {
                let s = poincare(&value, cutoff);
                ("T", s.to_string(), s.terms().to_vec())
            } else {
                let s = expand(&value, cutoff);
                ("L", s.to_string(), s.terms().to_vec())
            };
            match fmt {
                Format::Text => writeln!(out, "{text}").ok(),
                Format::Machine => {
                    let terms: Vec<Value> = terms
                        .iter()
                        .map(|(e, c)| json!({"exponent": e.to_string(), "coefficient": c.to_string()}))
                        .collect();
                    writeln!(out, "{}", json!({"variable": variable, "terms": terms, "cutoff": cutoff.to_string()})).ok()
                }
            };
            Ok(())
        }
        Command::Tower { names } => {
            let (chain, report) = verify_tower(&TowerSpec::parse(&names))?;
            for (label, value) in &chain.entries {
                match fmt {
                    Format::Text => writeln!(out, "{label}: {value}").ok(),
                    Format::Machine => writeln!(out, "{}", json!({"label": label, "motive": value.to_string()})).ok(),
                };
            }
            match fmt {
                Format::Text => writeln!(out, "{report}").ok(),
                Format::Machine => writeln!(
                    out,
                    "{}",
                    json!({"descent": if report.passed() { "PASS" } else { "FAIL" }, "strict": true, "first_violation": report.first_violation})
                )
                .ok(),
            };
            Ok(())
        }
        Command::Enumerate { r, max_vertices, verify_dcc } => {
            if verify_dcc {
                let report = verify_dcc_on_enumeration(r, max_vertices)?;
                match fmt {
                    Format::Text => writeln!(out, "{report}").ok(),
                    Format::Machine => writeln!(
                        out,
                        "{}",
                        json!({
                            "label": "combinatorial DCC",
                            "r": report.r,
                            "max_vertices": report.max_vertices,
                            "data": report.data,
                            "distinct_values": report.distinct_values,
                            "fibers": report.fibers,
                            "largest_fiber": report.largest_fiber,
                            "violations": report.violations,
                            "passed": report.passed(),
                        })
                    )
                    .ok(),
                };
                return Ok(());
            }
            for (datum, value) in enumerate_space(r, max_vertices)? {
                let report = truncation_report(&value)?;
                match fmt {
                    Format::Text => {
                        let a: Vec<String> = datum.a.iter().map(|x| x.to_string()).collect();
                        writeln!(out, "{} [{}]: {value}; {report}", datum.shape.name(), a.join(", ")).ok()
                    }
                    Format::Machine => writeln!(out, "{}", datum.record(&value, &report)).ok(),
                };
            }
            Ok(())
        }
        Command::Catalog { command: CatalogCommand::List } => {
            for entry in catalog() {
                let keys: Vec<&str> = entry.known_actions.iter().map(|(_, k)| k.as_str()).collect();
                match fmt {
                    Format::Text => writeln!(out, "{}\t{}\t{}", entry.name, entry.graph.len(), keys.join(", ")).ok(),
                    Format::Machine => writeln!(
                        out,
                        "{}",
                        json!({"name": entry.name, "vertices": entry.graph.len(), "actions": keys})
                    )
                    .ok(),
                };
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            e.print().ok();
            return ExitCode::from(code);
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(cli, &mut out) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(e)) => {
            eprintln!("error: {}: {e}", e.code());
            ExitCode::from(1)
        }
    }
}
