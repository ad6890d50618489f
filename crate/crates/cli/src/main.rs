//! `skeinlab`: knot polynomials, annulus doubles and verification batches
//! from the command line.
//!
//! Exit codes: 0 success, 1 a check failed, 2 invalid input, 3 resource
//! limit reached.

mod cache;

use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use skeinlab::corpus::{self, TableEntry};
use skeinlab::kauffman::KauffmanEvaluator;
use skeinlab::rudolph::RudolphEvaluator;
use skeinlab::satellite::{double, whitehead_double};
use skeinlab::skein::{SkeinEvaluator, DEFAULT_SUBLINK_BOUND};
use skeinlab::store::SharedStore;
use skeinlab::verify::{self, Check, Report, Status, Subject, Verifier};
use skeinlab::{BiLaurent, Diagram, DiagramError, EngineError, Framing, DEFAULT_BUDGET};

use crate::cache::{FileCache, CACHE_ENV};

#[derive(Parser)]
#[command(name = "skeinlab", version, about = "Two-variable knot polynomials and their congruences")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute one polynomial of a diagram.
    Invariant {
        kind: Kind,
        #[command(flatten)]
        input: Input,
        /// Framing per component, comma separated; defaults to the
        /// blackboard framing.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        framing: Option<Vec<i64>>,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        run: RunOptions,
    },
    /// Print the PD code of the annulus double or a Whitehead double.
    Double {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        framing: Option<Vec<i64>>,
        /// Build the Whitehead double with this many full twists instead.
        #[arg(long, allow_negative_numbers = true)]
        whitehead: Option<i64>,
        #[arg(long, requires = "whitehead")]
        negative_clasp: bool,
    },
    /// Run checks over a table and write a JSON report.
    Verify {
        check: CheckArg,
        /// JSON table; the built-in corpus when omitted.
        table: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Print cache hit and miss counts to stderr.
        #[arg(long)]
        stats: bool,
        /// Recompute a random tenth of the cache records afterwards.
        #[arg(long)]
        verify_cache: bool,
        #[command(flatten)]
        run: RunOptions,
    },
    /// Print the built-in corpus table.
    Corpus,
}

#[derive(clap::Args)]
struct Input {
    /// PD text file, `-` for standard input.
    #[arg(long, conflicts_with = "entry")]
    pd: Option<PathBuf>,
    /// Name of a built-in corpus entry.
    #[arg(long)]
    entry: Option<String>,
}

#[derive(clap::Args)]
struct RunOptions {
    /// Cache directory; overrides the SKEINLAB_CACHE environment variable.
    #[arg(long)]
    cache_dir: Option<PathBuf>,
    #[arg(long)]
    no_cache: bool,
    /// Distinct diagrams the skein recursion may expand per evaluation.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Homfly,
    Kauffman,
    Dubrovnik,
    #[value(name = "F")]
    F,
    #[value(name = "U")]
    U,
    Bracket,
    Rudolph,
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckArg {
    Congruence,
    Morton,
    Kidwell,
    Conjecture2,
    Whitehead,
    Jones,
    Doubling,
    Xleading,
    All,
}

impl CheckArg {
    fn checks(self) -> Vec<Check> {
        let one = match self {
            CheckArg::All => return Check::ALL.to_vec(),
            CheckArg::Congruence => Check::Congruence,
            CheckArg::Morton => Check::Morton,
            CheckArg::Kidwell => Check::Kidwell,
            CheckArg::Conjecture2 => Check::Conjecture2,
            CheckArg::Whitehead => Check::Whitehead,
            CheckArg::Jones => Check::Jones,
            CheckArg::Doubling => Check::Doubling,
            CheckArg::Xleading => Check::XLeading,
        };
        vec![one]
    }
}

#[derive(Debug)]
enum Failure {
    Checks,
    Input(String),
    Resource(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Checks => 1,
            Failure::Input(_) => 2,
            Failure::Resource(_) => 3,
        }
    }
}

impl From<DiagramError> for Failure {
    fn from(e: DiagramError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<EngineError> for Failure {
    fn from(e: EngineError) -> Self {
        match e {
            EngineError::Diagram(d) => d.into(),
            EngineError::Poly(p) => Failure::Input(p.to_string()),
            other => Failure::Resource(other.to_string()),
        }
    }
}

fn io_error(path: &Path, e: std::io::Error) -> Failure {
    Failure::Input(format!("{}: {e}", path.display()))
}

fn read_diagram(input: &Input) -> Result<Diagram, Failure> {
    if let Some(name) = &input.entry {
        let e = corpus::entry(name).ok_or_else(|| Failure::Input(format!("no built-in entry {name:?}")))?;
        return Ok(e.diagram()?);
    }
    let Some(path) = &input.pd else {
        return Err(Failure::Input("give --pd FILE or --entry NAME".into()));
    };
    let mut text = String::new();
    if path.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut text).map_err(|e| io_error(path, e))?;
    } else {
        text = std::fs::read_to_string(path).map_err(|e| io_error(path, e))?;
    }
    Ok(Diagram::parse_pd(&text)?)
}

fn framing_for(d: &Diagram, f: &Option<Vec<i64>>) -> Result<Framing, Failure> {
    match f {
        None => Ok(d.blackboard_framing()),
        Some(v) if v.len() == d.component_count() => Ok(Framing(v.clone())),
        Some(v) => Err(Failure::Input(format!(
            "{} framing values for {} components",
            v.len(),
            d.component_count()
        ))),
    }
}

fn open_cache(run: &RunOptions) -> Result<Option<Arc<FileCache>>, Failure> {
    if run.no_cache {
        return Ok(None);
    }
    let dir = run.cache_dir.clone().or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from));
    dir.map(|d| FileCache::open(&d).map(Arc::new).map_err(|e| io_error(&d, e))).transpose()
}

fn shared(cache: &Option<Arc<FileCache>>) -> Option<SharedStore> {
    cache.clone().map(|c| c as SharedStore)
}

#[derive(Serialize)]
struct InvariantOutput {
    kind: &'static str,
    polynomial: String,
    degrees: std::collections::BTreeMap<String, Option<i32>>,
}

fn degrees(p: &BiLaurent) -> std::collections::BTreeMap<String, Option<i32>> {
    let vars = p.vars();
    let mut out = std::collections::BTreeMap::new();
    for v in [vars.0, vars.1] {
        out.insert(format!("min_{v}"), p.min_deg(v).ok().and_then(|d| d.finite()));
        out.insert(format!("max_{v}"), p.max_deg(v).ok().and_then(|d| d.finite()));
    }
    out
}

fn cmd_invariant(kind: Kind, input: &Input, framing: &Option<Vec<i64>>, json: bool, run: &RunOptions) -> Result<(), Failure> {
    let d = read_diagram(input)?;
    let cache = open_cache(run)?;
    let mut skein = SkeinEvaluator::new(run.budget);
    let mut kauffman = KauffmanEvaluator::new(run.budget);
    if let Some(s) = shared(&cache) {
        skein = skein.with_store(s.clone());
        kauffman = kauffman.with_store(s);
    }
    let rudolph = RudolphEvaluator::new(skein.clone(), DEFAULT_SUBLINK_BOUND);
    let (name, p) = match kind {
        Kind::Homfly => ("homfly", skein.homfly(&d)?),
        Kind::Kauffman => ("kauffman", kauffman.framed_kauffman(&d)?),
        Kind::Dubrovnik => ("dubrovnik", kauffman.dubrovnik(&d)?),
        Kind::F => ("F", kauffman.normalize_f(&d)?),
        Kind::U => ("U", kauffman.normalize_u(&d)?),
        Kind::Bracket => ("bracket", rudolph.bracket(&d, &framing_for(&d, framing)?)?),
        Kind::Rudolph => match framing {
            None => ("rudolph", rudolph.rudolph_invariant(&d)?),
            Some(_) => ("rudolph", rudolph.rudolph_framed(&d, &framing_for(&d, framing)?)?),
        },
    };
    if json {
        let out = InvariantOutput { kind: name, polynomial: p.to_string(), degrees: degrees(&p) };
        println!("{}", serde_json::to_string_pretty(&out).expect("serializable"));
    } else {
        println!("{p}");
        let summary: Vec<String> = degrees(&p)
            .iter()
            .map(|(k, v)| format!("{k}={}", v.map_or("-inf".to_string(), |x| x.to_string())))
            .collect();
        println!("{}", summary.join(" "));
    }
    Ok(())
}

fn cmd_double(input: &Input, framing: &Option<Vec<i64>>, whitehead: Option<i64>, negative_clasp: bool) -> Result<(), Failure> {
    let d = read_diagram(input)?;
    let out = match whitehead {
        Some(n) => whitehead_double(&d, n, !negative_clasp)?,
        None => double(&d, &framing_for(&d, framing)?)?.diagram,
    };
    print!("{}", out.to_pd_text());
    Ok(())
}

fn load_table(path: &Option<PathBuf>) -> Result<Vec<Subject>, Failure> {
    let entries: Vec<TableEntry> = match path {
        None => corpus::builtin(),
        Some(p) => corpus::parse_table(&std::fs::read_to_string(p).map_err(|e| io_error(p, e))?)?,
    };
    let mut subjects = Vec::with_capacity(entries.len());
    for e in &entries {
        let s = Subject::from_entry(e).map_err(|err| Failure::Input(format!("{}: {err}", e.name)))?;
        let mismatched = e.flag_mismatches(&s.diagram);
        if !mismatched.is_empty() {
            log::warn!("{}: table flags disagree with the diagram: {}", e.name, mismatched.join(", "));
        }
        subjects.push(s);
    }
    Ok(subjects)
}

/// Runs every (subject, check) pair on `jobs` threads and sorts the reports
/// into canonical order.
fn run_parallel(v: &Verifier, checks: &[Check], subjects: &[Subject], jobs: usize) -> Result<Vec<Report>, Failure> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Failure::Input(e.to_string()))?;
    let pairs: Vec<(&Subject, Check)> =
        subjects.iter().flat_map(|s| checks.iter().map(move |&c| (s, c))).collect();
    let mut reports: Vec<Report> = pool.install(|| pairs.par_iter().flat_map_iter(|&(s, c)| v.run(c, s)).collect());
    verify::sort_reports(&mut reports);
    Ok(reports)
}

#[allow(clippy::too_many_arguments)]
fn cmd_verify(
    check: CheckArg,
    table: &Option<PathBuf>,
    out: &Option<PathBuf>,
    jobs: usize,
    stats: bool,
    verify_cache: bool,
    run: &RunOptions,
) -> Result<(), Failure> {
    let subjects = load_table(table)?;
    let cache = open_cache(run)?;
    let verifier = Verifier::new(run.budget, shared(&cache));
    let reports = run_parallel(&verifier, &check.checks(), &subjects, jobs)?;
    let mut text = serde_json::to_string_pretty(&reports).expect("reports serialize");
    text.push('\n');
    match out {
        Some(p) => std::fs::write(p, &text).map_err(|e| io_error(p, e))?,
        None => print!("{text}"),
    }
    let count = |st: Status| reports.iter().filter(|r| r.status == st).count();
    eprintln!(
        "{} reports: {} pass, {} fail, {} skipped, {} internal error",
        reports.len(),
        count(Status::Pass),
        count(Status::Fail),
        count(Status::Skipped),
        count(Status::InternalError)
    );
    let mut ok = verify::all_ok(&reports);
    if let Some(c) = &cache {
        if stats {
            let s = c.stats();
            eprintln!("cache: hits={} misses={} writes={} corrupt={}", s.hits, s.misses, s.writes, s.corrupt);
        }
        if verify_cache {
            let audit = c.audit(0x5eed).map_err(|e| Failure::Input(e.to_string()))?;
            eprintln!("cache audit: {} records recomputed, {} mismatches", audit.checked, audit.mismatches.len());
            for p in &audit.mismatches {
                eprintln!("cache mismatch: {}", p.display());
            }
            ok &= audit.mismatches.is_empty();
        }
    } else if verify_cache {
        return Err(Failure::Input("--verify-cache needs a cache directory".into()));
    }
    if ok {
        Ok(())
    } else {
        Err(Failure::Checks)
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Invariant { kind, input, framing, json, run } => cmd_invariant(*kind, input, framing, *json, run),
        Command::Double { input, framing, whitehead, negative_clasp } => {
            cmd_double(input, framing, *whitehead, *negative_clasp)
        }
        Command::Verify { check, table, out, jobs, stats, verify_cache, run } => {
            cmd_verify(*check, table, out, *jobs, *stats, *verify_cache, run)
        }
        Command::Corpus => {
            print!("{}", corpus::builtin_text());
            Ok(())
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Checks => {}
                Failure::Input(m) => eprintln!("error: {m}"),
                Failure::Resource(m) => eprintln!("resource limit: {m}"),
            }
            ExitCode::from(f.code())
        }
    }
}
