//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 on domain errors (malformed input, out-of-
//! range arguments, unreadable files), 2 on internal invariant failures
//! (two computation methods disagreeing).

use crate::asym::relative_error_table;
use crate::decimal::format_decimal;
use crate::dissection::{count_dissections_closed_form, enumerate_dissections};
use crate::implicit::{
    dd_direct, dd_explicit, dd_first_order, dd_recurrence, ImplicitProblem, ImplicitRelation,
};
use crate::rational::{parse_rational, BigRational};
use crate::seq::{
    a_binomial_transform, a_gf, a_hypergeometric, a_linear, a_quadratic, AllMethods,
    IntegerSequence,
};
use crate::terms::count_terms_by_composition_dp;
use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use std::io::Write;
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "impdiff",
    version,
    about = "Exact implicit divided differences, polygon dissections, and the term-count sequence of their explicit formula",
    disable_help_subcommand = true
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Plain)]
    format: OutputFormat,
    /// Write output to this file instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Plain,
    Csv,
    Json,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum SequenceName {
    /// The term-count sequence a_n.
    A,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum SeqMethod {
    /// Quadratic recurrence.
    Quad,
    /// Linear recurrence.
    Lin,
    /// Generating-function expansion.
    Gf,
    /// Terminating hypergeometric sum.
    Hyp,
    /// Binomial transform of doubled Catalan numbers.
    Binom,
    /// Direct enumeration over dissections.
    Enum,
    /// Every formula method side by side, cross-verified.
    All,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum ImplicitMethod {
    /// Divided difference of the sampled ordinates.
    Direct,
    /// Recurrence through bivariate divided differences of g.
    Rec,
    /// Dissection-sum formula.
    Explicit,
    /// All applicable methods, cross-verified.
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Print a sequence prefix.
    Seq {
        #[arg(value_enum)]
        sequence: SequenceName,
        /// Highest index to print.
        #[arg(long)]
        n_max: usize,
        #[arg(long, value_enum, default_value_t = SeqMethod::All)]
        method: SeqMethod,
    },
    /// Enumerate or count dissections of the polygon on vertices 0..n.
    Dissect {
        #[arg(long)]
        n: usize,
        /// Print only the dissection count (little Schroeder closed form).
        #[arg(long)]
        count_only: bool,
    },
    /// Term count of the explicit implicit-function formula at order n.
    Terms {
        #[arg(long)]
        n: usize,
    },
    /// Divided difference of an implicitly defined function.
    Implicit {
        /// JSON file with the relation coefficients a_num, a_den, b_num,
        /// b_den (ascending degree, integers or "p/q" strings).
        #[arg(long)]
        relation: PathBuf,
        /// Comma-separated abscissas, each `p` or `p/q`.
        #[arg(long)]
        points: String,
        #[arg(long, value_enum, default_value_t = ImplicitMethod::All)]
        method: ImplicitMethod,
    },
    /// Relative error of the asymptotic estimate C(n) 9^n, as CSV.
    Asym {
        #[arg(long)]
        n_max: usize,
        /// Row stride; defaults to every n up to 100 and every tenth after.
        #[arg(long)]
        stride: Option<usize>,
        /// Working precision and displayed significant digits.
        #[arg(long, default_value_t = 50)]
        digits: usize,
    },
    /// The table of a_0..a_11, cross-verified across all formula methods.
    Table1,
}

enum CliError {
    Domain(String),
    Internal(String),
}

impl CliError {
    fn domain(e: impl std::fmt::Display) -> Self {
        CliError::Domain(e.to_string())
    }
}

/// Runs the CLI against the given arguments (the first one is the program
/// name), writing program output to `out` and diagnostics to standard
/// error. Returns the process exit code.
pub fn run<W: Write>(args: &[String], out: &mut W) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = write!(out, "{e}");
            return 0;
        }
        Err(e) => {
            eprint!("{e}");
            return 1;
        }
    };
    let output_path = cli.output.clone();
    match execute(cli) {
        Ok(text) => {
            let result = match output_path {
                Some(path) => std::fs::write(&path, text)
                    .map_err(|e| format!("cannot write {}: {e}", path.display())),
                None => write!(out, "{text}").map_err(|e| e.to_string()),
            };
            match result {
                Ok(()) => 0,
                Err(msg) => {
                    eprintln!("error: {msg}");
                    1
                }
            }
        }
        Err(CliError::Domain(msg)) => {
            eprintln!("error: {msg}");
            1
        }
        Err(CliError::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            2
        }
    }
}

fn execute(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Seq {
            sequence: SequenceName::A,
            n_max,
            method,
        } => run_seq(n_max, method, cli.format),
        Command::Dissect { n, count_only } => run_dissect(n, count_only, cli.format),
        Command::Terms { n } => run_terms(n, cli.format),
        Command::Implicit {
            relation,
            points,
            method,
        } => run_implicit(&relation, &points, method, cli.format),
        Command::Asym {
            n_max,
            stride,
            digits,
        } => run_asym(n_max, stride, digits, cli.format),
        Command::Table1 => run_table1(cli.format),
    }
}

fn sequence_by_enumeration(n_max: usize) -> Result<IntegerSequence, CliError> {
    let values = (0..=n_max)
        .map(|n| {
            if n < 2 {
                Ok(BigInt::from(1))
            } else {
                count_terms_by_composition_dp(n).map_err(CliError::domain)
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(IntegerSequence::new(values))
}

fn run_seq(n_max: usize, method: SeqMethod, format: OutputFormat) -> Result<String, CliError> {
    if method == SeqMethod::All {
        let all = AllMethods::compute(n_max);
        let agree = all.agree();
        let columns = [
            ("quad", &all.quadratic),
            ("lin", &all.linear),
            ("gf", &all.generating_function),
            ("hyp", &all.hypergeometric),
            ("binom", &all.binomial),
        ];
        let text = match format {
            OutputFormat::Plain => {
                let mut text = String::from("n\tquad\tlin\tgf\thyp\tbinom\n");
                for n in 0..=n_max {
                    text.push_str(&n.to_string());
                    for (_, seq) in &columns {
                        text.push('\t');
                        text.push_str(&seq[n].to_string());
                    }
                    text.push('\n');
                }
                text.push_str(&format!("agree: {agree}\n"));
                text
            }
            OutputFormat::Csv => {
                let mut text = String::from("n,quad,lin,gf,hyp,binom\n");
                for n in 0..=n_max {
                    let row: Vec<String> = std::iter::once(n.to_string())
                        .chain(columns.iter().map(|(_, seq)| seq[n].to_string()))
                        .collect();
                    text.push_str(&row.join(","));
                    text.push('\n');
                }
                text
            }
            OutputFormat::Json => {
                let methods: serde_json::Map<String, serde_json::Value> = columns
                    .iter()
                    .map(|(name, seq)| ((*name).to_string(), sequence_json(seq)))
                    .collect();
                let value = serde_json::json!({ "methods": methods, "agree": agree });
                format!("{value:#}\n")
            }
        };
        if !agree {
            return Err(CliError::Internal(
                "sequence methods disagree; output suppressed".into(),
            ));
        }
        return Ok(text);
    }

    let seq = match method {
        SeqMethod::Quad => a_quadratic(n_max),
        SeqMethod::Lin => a_linear(n_max),
        SeqMethod::Gf => a_gf(n_max),
        SeqMethod::Hyp => a_hypergeometric(n_max),
        SeqMethod::Binom => a_binomial_transform(n_max),
        SeqMethod::Enum => sequence_by_enumeration(n_max)?,
        SeqMethod::All => unreachable!(),
    };
    Ok(match format {
        OutputFormat::Plain => {
            let mut text = String::new();
            for v in seq.values() {
                text.push_str(&v.to_string());
                text.push('\n');
            }
            text
        }
        OutputFormat::Csv => {
            let mut text = String::from("n,a_n\n");
            for (n, v) in seq.values().iter().enumerate() {
                text.push_str(&format!("{n},{v}\n"));
            }
            text
        }
        OutputFormat::Json => {
            let value = serde_json::json!({ "sequence": "a", "values": sequence_json(&seq) });
            format!("{value:#}\n")
        }
    })
}

fn sequence_json(seq: &IntegerSequence) -> serde_json::Value {
    serde_json::Value::Array(
        seq.values()
            .iter()
            .map(|v| serde_json::Value::String(v.to_string()))
            .collect(),
    )
}

fn run_dissect(n: usize, count_only: bool, format: OutputFormat) -> Result<String, CliError> {
    if count_only {
        let count = count_dissections_closed_form(n).map_err(CliError::domain)?;
        return Ok(match format {
            OutputFormat::Json => format!(
                "{}\n",
                serde_json::json!({ "n": n, "count": count.to_string() })
            ),
            _ => format!("{count}\n"),
        });
    }
    let dissections = enumerate_dissections(n).map_err(CliError::domain)?;
    match format {
        OutputFormat::Plain => {
            let mut text = String::new();
            for d in &dissections {
                text.push_str(&serde_json::to_string(d).expect("serialization is infallible"));
                text.push('\n');
            }
            Ok(text)
        }
        OutputFormat::Json => {
            let value = serde_json::to_value(&dissections).expect("serialization is infallible");
            Ok(format!("{value:#}\n"))
        }
        OutputFormat::Csv => Err(CliError::Domain(
            "csv output is not defined for dissections; use plain or json".into(),
        )),
    }
}

fn run_terms(n: usize, format: OutputFormat) -> Result<String, CliError> {
    let count = count_terms_by_composition_dp(n).map_err(CliError::domain)?;
    Ok(match format {
        OutputFormat::Json => format!(
            "{}\n",
            serde_json::json!({ "n": n, "terms": count.to_string() })
        ),
        _ => format!("{count}\n"),
    })
}

fn parse_points(points: &str) -> Result<Vec<BigRational>, CliError> {
    points
        .split(',')
        .map(|p| parse_rational(p).map_err(CliError::domain))
        .collect()
}

fn run_implicit(
    relation_path: &PathBuf,
    points: &str,
    method: ImplicitMethod,
    format: OutputFormat,
) -> Result<String, CliError> {
    if format == OutputFormat::Csv {
        return Err(CliError::Domain(
            "csv output is not defined for implicit divided differences; use plain or json".into(),
        ));
    }
    let text = std::fs::read_to_string(relation_path)
        .map_err(|e| CliError::Domain(format!("cannot read {}: {e}", relation_path.display())))?;
    let relation = ImplicitRelation::from_json(&text).map_err(CliError::domain)?;
    let problem =
        ImplicitProblem::new(relation, parse_points(points)?).map_err(CliError::domain)?;
    let n = problem.order();

    let single = |label: &str, value: BigRational| -> String {
        match format {
            OutputFormat::Json => format!(
                "{}\n",
                serde_json::json!({ "n": n, "method": label, "value": value.to_string() })
            ),
            _ => format!("{value}\n"),
        }
    };
    match method {
        ImplicitMethod::Direct => Ok(single("direct", dd_direct(&problem))),
        ImplicitMethod::Rec => {
            let v = if n == 1 {
                dd_first_order(&problem)
            } else {
                dd_recurrence(&problem)
            }
            .map_err(CliError::domain)?;
            Ok(single("rec", v))
        }
        ImplicitMethod::Explicit => {
            let v = dd_explicit(&problem).map_err(CliError::domain)?;
            Ok(single("explicit", v))
        }
        ImplicitMethod::All => {
            let direct = dd_direct(&problem);
            let mut rows = vec![("direct".to_string(), direct.clone())];
            if n >= 1 {
                rows.push((
                    "recurrence".to_string(),
                    dd_recurrence(&problem).map_err(CliError::domain)?,
                ));
            }
            if n >= 2 {
                rows.push((
                    "explicit".to_string(),
                    dd_explicit(&problem).map_err(CliError::domain)?,
                ));
            }
            let agree = rows.iter().all(|(_, v)| v == &direct);
            if !agree {
                let detail: Vec<String> = rows.iter().map(|(k, v)| format!("{k} = {v}")).collect();
                return Err(CliError::Internal(format!(
                    "divided-difference methods disagree: {}",
                    detail.join(", ")
                )));
            }
            Ok(match format {
                OutputFormat::Json => {
                    let map: serde_json::Map<String, serde_json::Value> = rows
                        .iter()
                        .map(|(k, v)| (k.clone(), serde_json::Value::String(v.to_string())))
                        .collect();
                    format!(
                        "{}\n",
                        serde_json::json!({ "n": n, "methods": map, "agree": true })
                    )
                }
                _ => {
                    let mut text = String::new();
                    for (k, v) in &rows {
                        text.push_str(&format!("{k}: {v}\n"));
                    }
                    text.push_str("agree: true\n");
                    text
                }
            })
        }
    }
}

fn run_asym(
    n_max: usize,
    stride: Option<usize>,
    digits: usize,
    format: OutputFormat,
) -> Result<String, CliError> {
    let report = relative_error_table(n_max, stride, digits).map_err(CliError::domain)?;
    Ok(match format {
        OutputFormat::Json => {
            let rows: Vec<serde_json::Value> = report
                .rows
                .iter()
                .map(|r| {
                    serde_json::json!({
                        "n": r.n,
                        "a_n_digits": r.a_n_digits,
                        "rel_err": format_decimal(&r.rel_err, digits),
                    })
                })
                .collect();
            format!("{}\n", serde_json::json!({ "rows": rows }))
        }
        _ => report.to_csv(digits),
    })
}

fn run_table1(format: OutputFormat) -> Result<String, CliError> {
    let all = AllMethods::compute(11);
    if !all.agree() {
        return Err(CliError::Internal(
            "sequence methods disagree on the first twelve values".into(),
        ));
    }
    let values = all.quadratic.values();
    Ok(match format {
        OutputFormat::Plain => {
            let ns: Vec<String> = (0..values.len()).map(|n| n.to_string()).collect();
            let vs: Vec<String> = values.iter().map(|v| v.to_string()).collect();
            format!("n: {}\na_n: {}\n", ns.join(" "), vs.join(" "))
        }
        OutputFormat::Csv => {
            let mut text = String::from("n,a_n\n");
            for (n, v) in values.iter().enumerate() {
                text.push_str(&format!("{n},{v}\n"));
            }
            text
        }
        OutputFormat::Json => {
            let vs: Vec<serde_json::Value> = values
                .iter()
                .map(|v| serde_json::Value::String(v.to_string()))
                .collect();
            format!("{}\n", serde_json::json!({ "a_n": vs }))
        }
    })
}
