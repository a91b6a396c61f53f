//! `fatpoint`: Hilbert functions, Betti numbers and Horace certificates
//! for general unions of simple, double and triple points in the plane.

mod ledger;
mod output;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use fatpoint_core::betti_engine::{analyze, verify_expected, TrialOutcome, VerificationReport};
use fatpoint_core::field_linalg::{PrimeField, DEFAULT_PRIME};
use fatpoint_core::numerics::{expected_hilbert, expected_resolution, scheme_length, v_of};
use fatpoint_core::scheme_model::{hilbert_function, random_scheme, FatPointSpec, SupportedScheme};

use output::{degree_map, Format, Sink};

#[derive(Debug, Parser)]
#[command(name = "fatpoint", version, about)]
struct Cli {
    /// Prime characteristic, greater than 3 and below 2^31.
    #[arg(long, global = true, default_value_t = DEFAULT_PRIME)]
    prime: u64,
    /// Seeds as a comma list with optional ranges, e.g. `1-5` or `3,7,10-12`.
    #[arg(long, global = true, default_value = "1-5")]
    seeds: SeedList,
    /// Worker threads (defaults to the number of cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[arg(long, global = true, value_enum, default_value = "table")]
    format: Format,
    /// Write output to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Serialize)]
#[serde(transparent)]
struct SeedList(Vec<u64>);

impl FromStr for SeedList {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let mut seeds = Vec::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let span: Span = part.parse()?;
            seeds.extend(span.lo..=span.hi);
        }
        if seeds.is_empty() {
            return Err("at least one seed is required".into());
        }
        Ok(SeedList(seeds))
    }
}

/// Inclusive range written `N` or `LO-HI`; `LO > HI` is empty.
#[derive(Debug, Clone, Copy, Serialize)]
struct Span {
    lo: u64,
    hi: u64,
}

impl FromStr for Span {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let num = |x: &str| x.trim().parse::<u64>().map_err(|_| format!("bad number in {s:?}"));
        match s.split_once('-') {
            Some((lo, hi)) => Ok(Span { lo: num(lo)?, hi: num(hi)? }),
            None => {
                let n = num(s)?;
                Ok(Span { lo: n, hi: n })
            }
        }
    }
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "snake_case", tag = "name")]
enum Command {
    /// h0 of the ideal in degrees 0..=K_MAX against the expected values.
    Hilbert {
        #[arg(required_unless_present = "scheme")]
        a: Option<u64>,
        #[arg(required_unless_present = "scheme")]
        b: Option<u64>,
        #[arg(required_unless_present = "scheme")]
        c: Option<u64>,
        #[arg(long)]
        k_max: Option<u32>,
        /// Scheme file with one `m:x:y` line per point.
        #[arg(long, conflicts_with_all = ["a", "b", "c"])]
        scheme: Option<PathBuf>,
    },
    /// Minimal generators (and syzygies) per degree against the expected
    /// resolution.
    Betti {
        #[arg(required_unless_present = "scheme")]
        a: Option<u64>,
        #[arg(required_unless_present = "scheme")]
        b: Option<u64>,
        #[arg(required_unless_present = "scheme")]
        c: Option<u64>,
        #[arg(long)]
        syzygies: bool,
        #[arg(long, conflicts_with_all = ["a", "b", "c"])]
        scheme: Option<PathBuf>,
    },
    /// One row per (a, b, c) in the ranges with 1 <= length <= max-length.
    Sweep {
        #[arg(long, default_value = "0")]
        a: Span,
        #[arg(long, default_value = "0")]
        b: Span,
        #[arg(long, default_value = "0")]
        c: Span,
        #[arg(long)]
        max_length: Option<u64>,
    },
    /// Certificate replay and checks.
    Ledger {
        #[command(subcommand)]
        command: ledger::LedgerCommand,
    },
}

pub enum Outcome {
    Pass,
    Mismatch,
}

/// Bad input that clap could not catch.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Mismatch) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

fn run(cli: &Cli) -> Result<Outcome> {
    if let Some(n) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .context("cannot start the worker pool")?;
    }
    let field = PrimeField::new(cli.prime).map_err(|e| usage(format!("--prime {}: {e}", cli.prime)))?;
    let config = json!({
        "prime": cli.prime,
        "seeds": cli.seeds,
        "jobs": cli.jobs,
        "format": cli.format,
        "command": cli.command,
    });
    let sink = Sink::new(cli.out.as_deref(), cli.format, config)?;
    let seeds = &cli.seeds.0;
    match &cli.command {
        Command::Hilbert { a, b, c, k_max, scheme } => {
            let schemes = match scheme {
                Some(path) => vec![load_scheme(path, field)?],
                None => {
                    let spec = spec_of(a.unwrap(), b.unwrap(), c.unwrap())?;
                    seeds.iter().map(|&s| random_scheme(&spec, s, field)).collect()
                }
            };
            hilbert(&schemes, *k_max, sink)
        }
        Command::Betti { a, b, c, syzygies, scheme } => match scheme {
            Some(path) => {
                let s = load_scheme(path, field)?;
                let report = analyze(&s, *syzygies).map_err(|e| usage(e.to_string()))?;
                let row = betti_row("file", Some(&report));
                let ok = report.as_flagged();
                sink.emit("report", &report, &BETTI_HEADER, vec![row])?;
                Ok(if ok { Outcome::Pass } else { Outcome::Mismatch })
            }
            None => {
                let (a, b, c) = (a.unwrap(), b.unwrap(), c.unwrap());
                spec_of(a, b, c)?;
                let report = verify_expected(a, b, c, seeds, field, *syzygies).map_err(|e| usage(e.to_string()))?;
                betti(&report, sink)
            }
        },
        Command::Sweep { a, b, c, max_length } => sweep(*a, *b, *c, *max_length, seeds, field, sink),
        Command::Ledger { command } => ledger::run(command, sink),
    }
}

fn spec_of(a: u64, b: u64, c: u64) -> Result<FatPointSpec> {
    FatPointSpec::from_counts(a, b, c).map_err(|e| usage(format!("({a},{b},{c}): {e}")))
}

fn load_scheme(path: &PathBuf, field: PrimeField) -> Result<SupportedScheme> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    SupportedScheme::parse(&text, field).map_err(|e| usage(format!("{}: {e}", path.display())))
}

#[derive(Serialize)]
struct HilbertRow {
    seed: Option<u64>,
    k: u32,
    computed: u64,
    expected: u64,
}

#[derive(Serialize)]
struct HilbertTrial {
    scheme: fatpoint_core::scheme_model::SchemeRecord,
    maximal: bool,
    rows: Vec<HilbertRow>,
}

fn hilbert(schemes: &[SupportedScheme], k_max: Option<u32>, sink: Sink) -> Result<Outcome> {
    let length = schemes[0].length();
    let k_max = match k_max {
        Some(k) => k,
        None => v_of(length).map_err(|e| usage(e.to_string()))? + 1,
    };
    let trials: Vec<HilbertTrial> = schemes
        .par_iter()
        .map(|s| {
            let rows: Vec<HilbertRow> = (0..=k_max)
                .map(|k| HilbertRow {
                    seed: s.seed(),
                    k,
                    computed: hilbert_function(s, k),
                    expected: expected_hilbert(length, k),
                })
                .collect();
            HilbertTrial {
                scheme: s.record(),
                maximal: rows.iter().all(|r| r.computed == r.expected),
                rows,
            }
        })
        .collect();
    let hf_exception = schemes[0]
        .spec()
        .counts()
        .and_then(|(a, b, c)| expected_resolution(a, b, c).ok())
        .is_some_and(|e| e.hf_exception);
    let as_expected = trials.iter().all(|t| t.maximal != hf_exception);
    let rows = trials
        .iter()
        .flat_map(|t| {
            t.rows.iter().map(move |r| {
                vec![
                    r.seed.map(|s| s.to_string()).unwrap_or_else(|| "file".into()),
                    r.k.to_string(),
                    r.computed.to_string(),
                    r.expected.to_string(),
                    if r.computed == r.expected { "maximal" } else { "NOT maximal" }.to_string(),
                ]
            })
        })
        .collect();
    let report = json!({ "length": length, "k_max": k_max, "hf_exception": hf_exception, "trials": trials });
    sink.emit("report", &report, &["seed", "k", "computed", "expected", "verdict"], rows)?;
    Ok(if as_expected { Outcome::Pass } else { Outcome::Mismatch })
}

const BETTI_HEADER: [&str; 10] = [
    "seed",
    "status",
    "length",
    "v",
    "expected_generators",
    "generators",
    "syzygies",
    "hf_maximal",
    "matches_expected",
    "as_flagged",
];

fn expected_map(e: &fatpoint_core::numerics::ExpectedResolution) -> BTreeMap<u32, u64> {
    [(e.v, e.gens_v), (e.v + 1, e.gens_v1)]
        .into_iter()
        .filter(|&(_, n)| n > 0)
        .collect()
}

fn betti_row(seed: &str, r: Option<&fatpoint_core::betti_engine::BettiReport>) -> Vec<String> {
    match r {
        Some(r) => vec![
            seed.to_string(),
            "completed".into(),
            r.expected.length.to_string(),
            r.expected.v.to_string(),
            degree_map(&expected_map(&r.expected)),
            degree_map(&r.generators),
            r.syzygies.as_ref().map(degree_map).unwrap_or_default(),
            r.hf_maximal.to_string(),
            r.matches_expected.to_string(),
            r.as_flagged().to_string(),
        ],
        None => vec![seed.to_string(), "degenerate".into()]
            .into_iter()
            .chain(std::iter::repeat_n(String::new(), 8))
            .collect(),
    }
}

fn betti(report: &VerificationReport, sink: Sink) -> Result<Outcome> {
    let mut rows: Vec<Vec<String>> = report
        .trials
        .iter()
        .map(|t| match t {
            TrialOutcome::Completed(r) => betti_row(&r.scheme.seed.unwrap_or_default().to_string(), Some(r)),
            TrialOutcome::Degenerate { seed, .. } => betti_row(&seed.to_string(), None),
        })
        .collect();
    rows.push(vec![
        "majority".into(),
        format!("{}/{} match", report.match_count, report.seeds.len()),
        report.expected.length.to_string(),
        report.expected.v.to_string(),
        degree_map(&expected_map(&report.expected)),
        report.majority_generators.as_ref().map(degree_map).unwrap_or_default(),
        String::new(),
        report.hf_maximal.to_string(),
        report.matches_expected.to_string(),
        report.as_flagged.to_string(),
    ]);
    let ok = report.as_flagged && report.completed().next().is_some();
    sink.emit("report", report, &BETTI_HEADER, rows)?;
    Ok(if ok { Outcome::Pass } else { Outcome::Mismatch })
}

#[derive(Serialize)]
struct SweepRow {
    a: u64,
    b: u64,
    c: u64,
    length: u64,
    v: u32,
    expected_generators: BTreeMap<u32, u64>,
    computed_generators: Option<BTreeMap<u32, u64>>,
    matches_expected: bool,
    exception: bool,
    as_flagged: bool,
    match_count: usize,
    seeds: usize,
}

fn sweep(a: Span, b: Span, c: Span, max_length: Option<u64>, seeds: &[u64], field: PrimeField, sink: Sink) -> Result<Outcome> {
    let mut triples = Vec::new();
    for x in a.lo..=a.hi {
        for y in b.lo..=b.hi {
            for z in c.lo..=c.hi {
                let len = scheme_length(x, y, z).map_err(|e| usage(e.to_string()))?;
                if len >= 1 && max_length.is_none_or(|m| len <= m) {
                    triples.push((x, y, z));
                }
            }
        }
    }
    let reports: Vec<VerificationReport> = triples
        .par_iter()
        .map(|&(x, y, z)| verify_expected(x, y, z, seeds, field, false))
        .collect::<Result<_, _>>()
        .map_err(|e| anyhow::anyhow!(e))?;
    let rows: Vec<SweepRow> = reports
        .iter()
        .map(|r| SweepRow {
            a: r.counts.0,
            b: r.counts.1,
            c: r.counts.2,
            length: r.expected.length,
            v: r.expected.v,
            expected_generators: expected_map(&r.expected),
            computed_generators: r.majority_generators.clone(),
            matches_expected: r.matches_expected,
            exception: r.expected.res_exception,
            as_flagged: r.as_flagged,
            match_count: r.match_count,
            seeds: r.seeds.len(),
        })
        .collect();
    let ok = rows.iter().all(|r| r.as_flagged);
    let table = rows
        .iter()
        .map(|r| {
            vec![
                r.a.to_string(),
                r.b.to_string(),
                r.c.to_string(),
                r.length.to_string(),
                r.v.to_string(),
                degree_map(&r.expected_generators),
                r.computed_generators.as_ref().map(degree_map).unwrap_or_default(),
                r.matches_expected.to_string(),
                r.exception.to_string(),
                r.as_flagged.to_string(),
            ]
        })
        .collect();
    sink.emit(
        "rows",
        &rows,
        &[
            "a",
            "b",
            "c",
            "length",
            "v",
            "expected_generators",
            "computed_generators",
            "match",
            "exception",
            "as_flagged",
        ],
        table,
    )?;
    Ok(if ok { Outcome::Pass } else { Outcome::Mismatch })
}
