use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use rx3_core::search::{
    beta, brute_force_rx3, max_acceptable, max_isolated_rooks, Rx3Search, SearchOptions, SearchOutcome,
    SearchRecord, DEFAULT_BUDGET,
};
use rx3_core::{construct_coloring, rx3_interval, rx3_value, to_dot, BipartiteColoring, Color, Error};

#[derive(Parser)]
#[command(name = "rx3", version, about = "3-rainbow colorings of K_{2,t}")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print rx3(K_{2,t})
    Value {
        #[arg(long)]
        t: usize,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Print the range of t with rx3(K_{2,t}) = k
    Interval {
        #[arg(long)]
        k: Color,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Emit an optimal 3-rainbow coloring of K_{2,t}
    Construct {
        #[arg(long)]
        t: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Check that a coloring is 3-rainbow
    Verify {
        #[arg(long, conflicts_with = "stdin", required_unless_present = "stdin")]
        file: Option<PathBuf>,
        #[arg(long)]
        stdin: bool,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Smallest palette admitting a 3-rainbow coloring, by exhaustive search
    Oracle {
        #[arg(long)]
        t: usize,
        #[arg(long, default_value_t = 5)]
        k_max: Color,
        #[command(flatten)]
        search: SearchFlags,
    },
    /// Most codes from a b-color subset in an acceptable multiset
    Beta {
        #[arg(long)]
        b: usize,
        /// Palette the rest of the multiset may draw from
        #[arg(long, default_value_t = 4)]
        k_ambient: Color,
        #[command(flatten)]
        search: SearchFlags,
    },
    /// Largest acceptable multiset of codes over k colors
    Maxset {
        #[arg(long)]
        k: Color,
        /// Only sets of distinct codes
        #[arg(long)]
        distinct: bool,
        /// Largest size tried [default: k(k-1)+1]
        #[arg(long)]
        t_cap: Option<usize>,
        #[command(flatten)]
        search: SearchFlags,
    },
    /// Most isolated rooks on an n x n board
    Rooks {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Construct and verify every t in a range
    Table {
        #[arg(long, default_value_t = 1)]
        t_min: usize,
        #[arg(long)]
        t_max: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
}

#[derive(Args)]
struct SearchFlags {
    /// Refuse searches with more raw candidates than this
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Report progress on stderr
    #[arg(long)]
    progress: bool,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

impl SearchFlags {
    fn options(&self) -> SearchOptions {
        SearchOptions { budget: self.budget, jobs: self.jobs.max(1), progress: self.progress }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Table,
}

enum Failure {
    /// Ran fine, but the answer is negative.
    NotMet,
    Invalid(String),
    Budget(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded { .. } => Failure::Budget(e.to_string()),
            _ => Failure::Invalid(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Invalid(e.to_string())
    }
}

type Run = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = io::stdout().lock();
    match run(cli.command, &mut out) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::NotMet) => ExitCode::from(1),
        Err(Failure::Invalid(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Budget(msg)) => {
            eprintln!("refused: {msg} (raise --budget to run it anyway)");
            ExitCode::from(3)
        }
    }
}

fn unsupported(format: Format, what: &str) -> Failure {
    let name = match format {
        Format::Json => "json",
        Format::Dot => "dot",
        Format::Table => "table",
    };
    Failure::Invalid(format!("{what} has no {name} output"))
}

fn print_json(out: &mut impl Write, value: &impl Serialize) -> Run {
    let text = serde_json::to_string(value).map_err(|e| Failure::Invalid(e.to_string()))?;
    writeln!(out, "{text}")?;
    Ok(())
}

fn run(command: Command, out: &mut impl Write) -> Run {
    match command {
        Command::Value { t, format } => {
            let k = rx3_value(t)?;
            match format {
                Format::Table => writeln!(out, "{k}")?,
                Format::Json => print_json(out, &json!({ "t": t, "k": k }))?,
                Format::Dot => return Err(unsupported(format, "value")),
            }
        }
        Command::Interval { k, format } => {
            let iv = rx3_interval(k)?;
            match format {
                Format::Table => writeln!(out, "{} {}", iv.t_min, iv.t_max)?,
                Format::Json => print_json(out, &iv)?,
                Format::Dot => return Err(unsupported(format, "interval")),
            }
        }
        Command::Construct { t, format } => {
            let c = construct_coloring(t)?;
            match format {
                Format::Json => writeln!(out, "{}", c.to_json())?,
                Format::Dot => write!(out, "{}", to_dot(&c))?,
                Format::Table => {
                    for (i, code) in c.codes().iter().enumerate() {
                        writeln!(out, "w{} {} {}", i + 1, code.a1, code.a2)?;
                    }
                }
            }
        }
        Command::Verify { file, stdin: _, jobs, format } => {
            let text = match file {
                Some(path) => std::fs::read_to_string(&path)
                    .map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))?,
                None => {
                    let mut s = String::new();
                    io::stdin().read_to_string(&mut s)?;
                    s
                }
            };
            let coloring = BipartiteColoring::from_json(&text)?;
            let report = rx3_core::verify_3rainbow_parallel(&coloring, jobs)?;
            match format {
                Format::Json => writeln!(out, "{}", report.to_json())?,
                Format::Table => match &report.failing_triple {
                    None => writeln!(out, "pass ({} triples)", report.triples_checked)?,
                    Some(s) => writeln!(out, "fail at {s} (triple {})", report.triples_checked)?,
                },
                Format::Dot => return Err(unsupported(format, "verify")),
            }
            if !report.passed() {
                return Err(Failure::NotMet);
            }
        }
        Command::Oracle { t, k_max, search } => {
            let params = json!({ "t": t, "k_max": k_max });
            let found =
                emit(out, "oracle", params, &search, || brute_force_rx3(t, k_max, &search.options()))?;
            if found == Rx3Search::ExceedsKMax {
                return Err(Failure::NotMet);
            }
        }
        Command::Beta { b, k_ambient, search } => {
            let params = json!({ "b": b, "k_ambient": k_ambient });
            emit(out, "beta", params, &search, || beta(b, k_ambient, &search.options()))?;
        }
        Command::Maxset { k, distinct, t_cap, search } => {
            let t_cap = t_cap.unwrap_or((k as usize) * (k as usize).saturating_sub(1) + 1);
            let params = json!({ "k": k, "distinct_only": distinct, "t_cap": t_cap });
            let found = emit(out, "maxset", params, &search, || {
                max_acceptable(k, distinct, t_cap, &search.options())
            })?;
            if found.reached_cap {
                return Err(Failure::NotMet);
            }
        }
        Command::Rooks { n, format } => {
            let flags = SearchFlags { budget: u64::MAX, jobs: 1, progress: false, format };
            emit(out, "rooks", json!({ "n": n }), &flags, || max_isolated_rooks(n))?;
        }
        Command::Table { t_min, t_max, jobs, format } => {
            if t_min == 0 || t_min > t_max {
                return Err(Failure::Invalid(format!("empty or invalid range {t_min}..={t_max}")));
            }
            let mut rows = Vec::new();
            for t in t_min..=t_max {
                let c = construct_coloring(t)?;
                let verified = rx3_core::verify_3rainbow_parallel(&c, jobs)?.passed();
                rows.push(Row { t, k: rx3_value(t)?, verified });
            }
            match format {
                Format::Table => {
                    writeln!(out, "t\tk\tverified")?;
                    for r in &rows {
                        writeln!(out, "{}\t{}\t{}", r.t, r.k, if r.verified { "yes" } else { "no" })?;
                    }
                }
                Format::Json => print_json(out, &rows)?,
                Format::Dot => return Err(unsupported(format, "table")),
            }
            if rows.iter().any(|r| !r.verified) {
                return Err(Failure::NotMet);
            }
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct Row {
    t: usize,
    k: Color,
    verified: bool,
}

/// Runs a search and prints its record; the elapsed time goes to stderr so
/// that stdout is reproducible.
fn emit<T: Serialize + Clone>(
    out: &mut impl Write,
    op: &str,
    params: serde_json::Value,
    flags: &SearchFlags,
    search: impl FnOnce() -> rx3_core::Result<SearchOutcome<T>>,
) -> Result<T, Failure> {
    if flags.format == Format::Dot {
        return Err(unsupported(flags.format, op));
    }
    let start = Instant::now();
    let outcome = search()?;
    eprintln!("{op}: {} candidates in {} ms", outcome.candidates_examined, start.elapsed().as_millis());
    let result = serde_json::to_value(&outcome.result).map_err(|e| Failure::Invalid(e.to_string()))?;
    match flags.format {
        Format::Table => writeln!(out, "{}", table_cell(&result))?,
        _ => {
            let record = SearchRecord {
                op: op.to_string(),
                params,
                result,
                candidates_examined: outcome.candidates_examined,
                elapsed_ms: None,
            };
            print_json(out, &record)?;
        }
    }
    Ok(outcome.result)
}

/// The headline number of a search result.
fn table_cell(result: &serde_json::Value) -> String {
    match result {
        serde_json::Value::Object(map) => {
            map.get("found").or_else(|| map.get("size")).map_or_else(|| result.to_string(), |v| v.to_string())
        }
        serde_json::Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
