//! Command-line front end. [`run`] parses arguments, executes one
//! subcommand and writes a JSON (or text) report.
//!
//! Exit codes: 0 all checks passed, 1 a mathematical check failed,
//! 2 usage or parse error, 3 search budget exceeded.

mod render;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use drcayley::cayley::{build_cayley, graph_report, CayleyGraph, DEFAULT_TOLERANCE};
use drcayley::diffset::{search_difference_sets, DifferenceSetDocument, SearchError, SearchOptions, DEFAULT_BUDGET};
use drcayley::group::spec::parse_group_spec;
use drcayley::harness::{classification_document, equivalence_document, plane_document, HarnessError};
use drcayley::{DifferenceSet, FiniteGroup, Params};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "drcayley", version, about = "Bipartite distance-regular Cayley graphs, difference sets and symmetric designs")]
struct Cli {
    /// Output format; text is rendered from the JSON document.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Tolerance for quotient-eigenvalue containment.
    #[arg(long, global = true, default_value_t = DEFAULT_TOLERANCE)]
    tolerance: f64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct SetArgs {
    /// Comma-separated element names, e.g. "1c,2c,4c".
    #[arg(long)]
    set: Option<String>,
    /// File with one element name per line.
    #[arg(long)]
    set_file: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Order, commutativity, involutions and index-2 subgroups.
    Group {
        /// Group spec, e.g. Z7, D8, Z4xZ4, Dih(Z7) or table:path
        spec: String,
    },
    /// Graph report for Cay(G, S).
    Cayley {
        spec: String,
        #[command(flatten)]
        set: SetArgs,
    },
    /// Exhaustive difference-set search.
    DsSearch {
        /// Group spec for H
        spec: String,
        /// Set size
        #[arg(long)]
        k: usize,
        /// Required multiplicity of each non-identity difference
        #[arg(long)]
        mu: usize,
        /// Keep only the least set of each translate orbit.
        #[arg(long)]
        dedup: bool,
        /// Maximum visited search nodes.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        /// Stop after this many sets.
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Development of a difference set and its incidence graph.
    Develop {
        spec: String,
        #[command(flatten)]
        set: SetArgs,
    },
    /// Graph/difference-set correspondence in both directions.
    Equiv {
        spec: String,
        #[command(flatten)]
        set: SetArgs,
    },
    /// Case classification with witness.
    Classify {
        spec: String,
        #[command(flatten)]
        set: SetArgs,
    },
    /// Projective-plane check for girth-6 instances.
    PlaneCheck {
        spec: String,
        #[command(flatten)]
        set: SetArgs,
    },
}

/// A failed command: exit code plus diagnosis for standard error.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl ToString) -> Self {
        Self { code: EXIT_USAGE, message: message.to_string() }
    }

    fn check(message: impl ToString) -> Self {
        Self { code: EXIT_CHECK_FAILED, message: message.to_string() }
    }
}

/// A report plus whether its checks passed.
struct Outcome {
    document: Value,
    passed: bool,
}

impl Outcome {
    fn new(document: impl Serialize, passed: bool) -> Self {
        Self { document: serde_json::to_value(document).expect("documents serialize"), passed }
    }
}

/// Runs the CLI on `args` (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let result = match cli.jobs {
        Some(0) => Err(Failure::usage("--jobs must be positive")),
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| execute(&cli)),
            Err(e) => Err(Failure::usage(e)),
        },
        None => execute(&cli),
    };
    match result {
        Ok(outcome) => {
            let text = match cli.format {
                Format::Json => serde_json::to_string_pretty(&outcome.document).expect("valid JSON"),
                Format::Text => render::text(&outcome.document),
            };
            let _ = writeln!(out, "{text}");
            if outcome.passed {
                EXIT_OK
            } else {
                let _ = writeln!(err, "error: some checks failed");
                EXIT_CHECK_FAILED
            }
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn group_of(spec: &str) -> Result<FiniteGroup, Failure> {
    parse_group_spec(spec).map_err(Failure::usage)
}

fn elements_of(g: &FiniteGroup, set: &SetArgs) -> Result<Vec<usize>, Failure> {
    let list = match (&set.set, &set.set_file) {
        (Some(s), _) => s.clone(),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
            text.lines()
                .map(str::trim)
                .filter(|l| !l.is_empty() && !l.starts_with('#'))
                .collect::<Vec<_>>()
                .join(",")
        }
        (None, None) => return Err(Failure::usage("one of --set or --set-file is required")),
    };
    if list.trim().is_empty() {
        return Ok(Vec::new());
    }
    g.parse_elements(&list).map_err(Failure::usage)
}

fn cayley_of(spec: &str, set: &SetArgs) -> Result<CayleyGraph, Failure> {
    let g = group_of(spec)?;
    let s = elements_of(&g, set)?;
    build_cayley(&g, &s).map_err(Failure::usage)
}

fn harness_failure(e: HarnessError) -> Failure {
    match e {
        HarnessError::Cayley(_) | HarnessError::Group(_) => Failure::usage(e),
        other => Failure::check(other),
    }
}

fn execute(cli: &Cli) -> Result<Outcome, Failure> {
    let tol = cli.tolerance;
    match &cli.command {
        Command::Group { spec } => {
            let g = group_of(spec)?;
            let index_two: Vec<Vec<String>> =
                g.index_two_subgroups().iter().map(|h| g.names_of(h.members())).collect();
            Ok(Outcome::new(
                json!({
                    "group_spec": spec,
                    "order": g.order(),
                    "abelian": g.is_abelian(),
                    "identity": g.name(g.identity()),
                    "involutions": g.names_of(&g.involutions()),
                    "index_two_subgroups": index_two,
                }),
                true,
            ))
        }
        Command::Cayley { spec, set } => {
            let c = cayley_of(spec, set)?;
            Ok(Outcome::new(graph_report(c.graph()), true))
        }
        Command::DsSearch { spec, k, mu, dedup, budget, limit } => {
            let h = group_of(spec)?;
            let options = SearchOptions { dedup_translates: *dedup, limit: *limit, budget: *budget };
            let outcome = search_difference_sets(&h, *k, *mu, &options).map_err(|e| match e {
                SearchError::BudgetExceeded { .. } | SearchError::GroupTooLarge(_) => {
                    Failure { code: EXIT_BUDGET, message: e.to_string() }
                }
                SearchError::InvalidK { .. } => Failure::usage(e),
                SearchError::Unverified(_) => Failure::check(e),
            })?;
            let doc = DifferenceSetDocument::new(spec, Params::new(h.order(), *k, *mu), *dedup, &outcome);
            Ok(Outcome::new(doc, true))
        }
        Command::Develop { spec, set } => {
            let h = group_of(spec)?;
            let d = elements_of(&h, set)?;
            let ds = DifferenceSet::certify(&h, &d).map_err(Failure::check)?;
            let design = ds.development().map_err(Failure::check)?;
            Ok(Outcome::new(
                json!({
                    "difference_set": {"members": ds.names(), "params": ds.params(), "trivial": ds.is_trivial()},
                    "design": design.document(),
                    "incidence_graph": graph_report(&design.incidence_graph()),
                }),
                true,
            ))
        }
        Command::Equiv { spec, set } => {
            let doc = equivalence_document(&cayley_of(spec, set)?, tol).map_err(harness_failure)?;
            let passed = doc.all_checks_pass();
            Ok(Outcome::new(doc, passed))
        }
        Command::Classify { spec, set } => {
            let doc = classification_document(&cayley_of(spec, set)?, tol).map_err(harness_failure)?;
            let passed = doc.all_checks_pass();
            Ok(Outcome::new(doc, passed))
        }
        Command::PlaneCheck { spec, set } => {
            let doc = plane_document(&cayley_of(spec, set)?, tol).map_err(harness_failure)?;
            let passed = doc.all_checks_pass();
            Ok(Outcome::new(doc, passed))
        }
    }
}

/// Runs the CLI and returns `(exit code, stdout, stderr)`.
pub fn run_captured(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("drcayley").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8_lossy(&out).into_owned(), String::from_utf8_lossy(&err).into_owned())
}
