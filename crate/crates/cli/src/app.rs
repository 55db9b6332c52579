//! Argument handling and command dispatch.
//!
//! Exit codes: 0 when a computation decides (equation or none) or a corpus
//! run matches every expectation, 2 when the answer is "unknown", 1 on usage,
//! parse or field errors, 3 when corpus expectations are not met.

use std::fs;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use first_integrals::builders::{CofactorMode, IntegralClass};
use first_integrals::driver::{compute_first_integral, Query};
use first_integrals::extactic::KernelMode;
use first_integrals::flow::BasePoint;
use rayon::prelude::*;

use crate::bench::{scan, write_csv, Family};
use crate::corpus::{cases, parse_point};
use crate::field::{FieldSpec, Provenance};
use crate::report::Report;

/// Environment variable holding the worker-thread count (0 or unset: one per core).
pub const THREADS_ENV: &str = "FIRST_INTEGRALS_THREADS";

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_UNKNOWN: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "first-integrals",
    version,
    about = "Rational, Darbouxian, Liouvillian and Riccati first integrals of planar polynomial vector fields"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Search one class of first integrals up to a degree bound.
    Compute(ComputeArgs),
    /// Bundled reference systems.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
    /// Minimal-degree scans over case families.
    Bench {
        #[command(subcommand)]
        action: BenchAction,
    },
}

#[derive(Subcommand, Debug)]
enum CorpusAction {
    /// Run the corpus and compare with the expected outcomes.
    Run {
        /// Only run cases whose id contains this text.
        #[arg(long)]
        filter: Option<String>,
        /// Print the case ids without running them.
        #[arg(long)]
        list: bool,
    },
}

#[derive(Subcommand, Debug)]
enum BenchAction {
    /// For each case, the smallest N at which the class pipeline finds an equation.
    Scan {
        #[arg(long)]
        class: ClassName,
        #[arg(short = 'k', default_value_t = 1)]
        k: u32,
        #[arg(long)]
        family: String,
        #[arg(long = "n-max")]
        n_max: u32,
        /// Output file (standard output when absent).
        #[arg(long)]
        csv: Option<String>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ClassName {
    Rational,
    Darboux,
    Liouville,
    Riccati,
}

#[derive(Clone, Copy, Debug, Default, ValueEnum)]
enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, Default, ValueEnum)]
enum KernelArg {
    #[default]
    Dense,
    Structured,
}

#[derive(Clone, Copy, Debug, Default, ValueEnum)]
enum CofactorArg {
    #[default]
    Dense,
    Slices,
}

#[derive(Args, Debug)]
struct ComputeArgs {
    #[arg(long)]
    class: ClassName,
    /// Exponent of a k-Darbouxian first integral.
    #[arg(short = 'k', default_value_t = 1)]
    k: u32,
    /// Degree bound.
    #[arg(short = 'N')]
    n: u32,
    /// Vector field as "A=...; B=...".
    #[arg(long, group = "source")]
    field: Option<String>,
    /// File containing "A=...; B=..." (one component per line allowed).
    #[arg(long = "field-file", group = "source")]
    field_file: Option<String>,
    /// Use the field of a corpus case.
    #[arg(long = "case", group = "source")]
    case: Option<String>,
    /// Base point "X,Y" (integers or p/q).
    #[arg(long, allow_hyphen_values = true, conflicts_with = "seed")]
    point: Option<String>,
    /// Seed of the random base point.
    #[arg(long)]
    seed: Option<u64>,
    /// Scan base points until the answer is certain.
    #[arg(long)]
    deterministic: bool,
    /// Sample base points from a box larger than the bad-point bound.
    #[arg(long)]
    strict: bool,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
    #[arg(long, value_enum, default_value_t)]
    kernel: KernelArg,
    #[arg(long, value_enum, default_value_t)]
    cofactor: CofactorArg,
}

fn class_of(name: ClassName, k: u32) -> Result<IntegralClass, String> {
    let name = match name {
        ClassName::Rational => "rational",
        ClassName::Darboux => "darboux",
        ClassName::Liouville => "liouville",
        ClassName::Riccati => "riccati",
    };
    IntegralClass::parse(name, k).ok_or_else(|| format!("invalid exponent k = {k} (must be at least 1)"))
}

fn thread_pool() -> Result<rayon::ThreadPool, String> {
    let threads = match std::env::var(THREADS_ENV) {
        Ok(v) => v.trim().parse::<usize>().map_err(|_| format!("{THREADS_ENV} must be a nonnegative integer, got {v:?}"))?,
        Err(_) => 0,
    };
    rayon::ThreadPoolBuilder::new().num_threads(threads).build().map_err(|e| e.to_string())
}

/// Runs the command line `args` (including the program name), writing
/// results to `out` and diagnostics to `err`; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return code;
        }
    };
    let result = match cli.command {
        Command::Compute(args) => compute(args, out),
        Command::Corpus { action: CorpusAction::Run { filter, list } } => corpus_run(filter.as_deref(), list, out),
        Command::Bench { action: BenchAction::Scan { class, k, family, n_max, csv } } => {
            bench_scan(class, k, &family, n_max, csv.as_deref(), out)
        }
    };
    match result {
        Ok(code) => code,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}

fn compute(args: ComputeArgs, out: &mut dyn Write) -> Result<i32, String> {
    let class = class_of(args.class, args.k)?;
    if args.n == 0 {
        return Err("the degree bound N must be at least 1".into());
    }
    let spec = match (&args.field, &args.field_file, &args.case) {
        (Some(text), _, _) => FieldSpec::parse(text, Provenance::Inline).map_err(|e| e.to_string())?,
        (_, Some(path), _) => {
            let text = fs::read_to_string(path).map_err(|e| format!("cannot read {path}: {e}"))?;
            FieldSpec::parse(&text, Provenance::File(path.clone())).map_err(|e| e.to_string())?
        }
        (_, _, Some(id)) => {
            let case = cases().into_iter().find(|c| &c.id == id).ok_or_else(|| format!("no corpus case {id:?}"))?;
            let vf = case.field().map_err(|e| e.to_string())?;
            FieldSpec { a_src: case.a, b_src: case.b, vf, provenance: Provenance::Corpus(id.clone()) }
        }
        _ => return Err("one of --field, --field-file or --case is required".into()),
    };
    let base: Option<BasePoint> = match &args.point {
        Some(p) => Some(parse_point(p).ok_or_else(|| format!("invalid point {p:?} (expected X,Y)"))?),
        None => None,
    };
    let mut q = Query::new(spec.vf, args.n, class);
    q.seed = if base.is_some() { None } else { Some(args.seed.unwrap_or(0)) };
    q.base = base;
    q.deterministic = args.deterministic;
    q.strict = args.strict;
    q.kernel_mode = match args.kernel {
        KernelArg::Dense => KernelMode::Dense,
        KernelArg::Structured => KernelMode::Structured,
    };
    q.cofactor_mode = match args.cofactor {
        CofactorArg::Dense => CofactorMode::Dense,
        CofactorArg::Slices => CofactorMode::Slices,
    };
    let run = compute_first_integral(&q).map_err(|e| e.to_string())?;
    let report = Report::new(class, args.n, q.seed.filter(|_| !q.deterministic), &run);
    let text = match args.format {
        Format::Text => report.to_text(),
        Format::Json => report.to_json() + "\n",
    };
    out.write_all(text.as_bytes()).map_err(|e| e.to_string())?;
    Ok(report.exit_code())
}

fn corpus_run(filter: Option<&str>, list: bool, out: &mut dyn Write) -> Result<i32, String> {
    let mut selected: Vec<_> = cases().into_iter().filter(|c| filter.is_none_or(|f| c.id.contains(f))).collect();
    // Output is ordered by case id; the parallel map preserves this order.
    selected.sort_by(|a, b| a.id.cmp(&b.id));
    if selected.is_empty() {
        return Err(format!("no corpus case matches {:?}", filter.unwrap_or("")));
    }
    if list {
        for c in &selected {
            writeln!(out, "{}", c.id).map_err(|e| e.to_string())?;
        }
        return Ok(EXIT_OK);
    }
    let pool = thread_pool()?;
    let results: Vec<_> = pool.install(|| selected.par_iter().map(|c| c.run()).collect());
    let mut failed = 0;
    for r in &results {
        let tag = if r.passed { "PASS" } else { "FAIL" };
        failed += usize::from(!r.passed);
        writeln!(out, "{tag} {:<44} {} [{:.1} ms]", r.id, r.detail, r.time_ms).map_err(|e| e.to_string())?;
    }
    writeln!(out, "{} passed, {failed} failed", results.len() - failed).map_err(|e| e.to_string())?;
    Ok(if failed == 0 { EXIT_OK } else { EXIT_MISMATCH })
}

fn bench_scan(class: ClassName, k: u32, family: &str, n_max: u32, csv: Option<&str>, out: &mut dyn Write) -> Result<i32, String> {
    let class = class_of(class, k)?;
    let family: Family = family.parse()?;
    if n_max == 0 {
        return Err("--n-max must be at least 1".into());
    }
    let pool = thread_pool()?;
    let rows = pool.install(|| scan(family, class, n_max));
    match csv {
        Some(path) => {
            let file = fs::File::create(path).map_err(|e| format!("cannot create {path}: {e}"))?;
            write_csv(&rows, file).map_err(|e| e.to_string())?;
            writeln!(out, "wrote {} rows to {path}", rows.len()).map_err(|e| e.to_string())?;
        }
        None => write_csv(&rows, out).map_err(|e| e.to_string())?,
    }
    Ok(EXIT_OK)
}
