use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use relgw::counts::{enumerative_report, reports_to_csv, reports_to_json, tsn_report, CountReport};
use relgw::gathmann::{load_cache, save_cache, Engine, InvariantKey, MemoTable};
use relgw::interp::{fit_and_verify, min_sample_degree};
use relgw::qrationals::format_rational;
use relgw::sweep::{self, parse_range};
use relgw::{verify, Error};

#[derive(Parser)]
#[command(name = "relgw", version, about = "Exact relative Gromov-Witten invariants of P^s and maximal-contact counts")]
struct Cli {
    /// Memo cache file; created or updated by query commands.
    #[arg(long, global = true, env = "RELGW_CACHE")]
    cache: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// One relative invariant ∫ ev*(Y)^k ψ^j over the contact-order-m space.
    Invariant {
        #[arg(long)]
        s: u32,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        j: u32,
        #[arg(long, value_enum, default_value_t = ValueFormat::Json)]
        format: ValueFormat,
    },
    /// The virtual count T_{s,n}(d).
    Tsn {
        #[arg(long)]
        s: u32,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        d: u32,
        #[arg(long, value_enum, default_value_t = ValueFormat::Json)]
        format: ValueFormat,
    },
    /// One row per d of a virtual or enumerative count.
    Table {
        #[arg(value_enum)]
        count: CountName,
        #[arg(long)]
        s: Option<u32>,
        #[arg(long)]
        n: Option<u32>,
        /// Inclusive range a..b, or a single value.
        #[arg(long)]
        d: String,
        #[arg(long, value_enum, default_value_t = TableFormat::Json)]
        format: TableFormat,
    },
    /// Fit T_{s,n} as a polynomial in d and check it at extra points.
    Interpolate {
        #[arg(long)]
        s: u32,
        #[arg(long)]
        n: u32,
        /// Sample degrees (a..b or comma list); defaults to the s smallest admissible.
        #[arg(long)]
        samples: Option<String>,
        /// Degrees at which the fit is compared with the engine.
        #[arg(long)]
        check: Option<String>,
        #[arg(long, value_enum, default_value_t = ValueFormat::Json)]
        format: ValueFormat,
    },
    /// Run the regression suite.
    Verify {
        /// Only run one group of checks.
        #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(verify::GROUPS))]
        only: Option<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ValueFormat {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CountName {
    /// Virtual count T_{s,n}(d).
    Tsn,
    /// Lines with maximal contact to a hypersurface of P^s.
    Lines,
    /// Conics with contact order 6 to a plane curve.
    Sextactic,
    /// Rational cubics with contact order 9 to a plane curve (conjectural).
    CubicConjectural,
    /// Any (s, n) with known corrections; refuses n >= 4.
    Enumerative,
}

#[derive(Serialize)]
struct InvariantOutput {
    s: u32,
    d: u32,
    m: u32,
    n: u32,
    k: u32,
    j: u32,
    value: String,
}

#[derive(Serialize)]
struct TsnOutput {
    s: u32,
    n: u32,
    d: u32,
    value: String,
}

enum Failure {
    Usage(String),
    Compute(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidArgument(_)
            | Error::Parse(_)
            | Error::Unsupported(_)
            | Error::SampleCount { .. }
            | Error::DuplicateSample(_)
            | Error::SampleBelowBound { .. } => Failure::Usage(e.to_string()),
            _ => Failure::Compute(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Compute(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    if let Command::Verify { only } = &cli.command {
        return run_verify(cli.cache.as_deref(), only.as_deref());
    }
    let engine = Engine::with_memo(open_cache(cli.cache.as_deref())?);
    let output = match cli.command {
        Command::Invariant { s, d, m, n, k, j, format } => {
            let key = InvariantKey::new(s, d, m, n, k, j);
            let value = engine.relative_invariant(key)?;
            match format {
                ValueFormat::Json => json(&InvariantOutput { s, d, m, n, k, j, value: format_rational(&value) }),
                ValueFormat::Text => format_rational(&value),
            }
        }
        Command::Tsn { s, n, d, format } => {
            let value = engine.virtual_count(s, n, d)?;
            match format {
                ValueFormat::Json => json(&TsnOutput { s, n, d, value: format_rational(&value) }),
                ValueFormat::Text => format_rational(&value),
            }
        }
        Command::Table { count, s, n, d, format } => {
            let ds = parse_range(&d)?;
            let reports = table(&engine, count, s, n, &ds)?;
            match format {
                TableFormat::Json => reports_to_json(&reports),
                TableFormat::Csv => reports_to_csv(&reports)?.trim_end().to_string(),
            }
        }
        Command::Interpolate { s, n, samples, check, format } => {
            let sample_ds = match samples {
                Some(text) => parse_list(&text)?,
                None => (min_sample_degree(s)..min_sample_degree(s) + s).collect(),
            };
            let check_ds = match check {
                Some(text) => parse_list(&text)?,
                None => Vec::new(),
            };
            let poly = fit_and_verify(&engine, s, n, &sample_ds, &check_ds)?;
            match format {
                ValueFormat::Json => poly.to_json(),
                ValueFormat::Text => poly.to_string(),
            }
        }
        Command::Verify { .. } => unreachable!("handled above"),
    };
    println!("{output}");
    if let Some(path) = cli.cache.as_deref() {
        save_cache(path, engine.memo())?;
    }
    Ok(())
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("output structs always serialize")
}

/// `a..b` or a comma-separated list.
fn parse_list(text: &str) -> Result<Vec<u32>, Failure> {
    if text.contains("..") {
        return Ok(parse_range(text)?);
    }
    text.split(',')
        .map(|t| t.trim().parse::<u32>().map_err(|_| Failure::Usage(format!("bad degree list {text:?}"))))
        .collect()
}

fn open_cache(path: Option<&Path>) -> Result<MemoTable, Failure> {
    match path {
        Some(p) if p.exists() => Ok(load_cache(p)?),
        _ => Ok(MemoTable::new()),
    }
}

fn table(
    engine: &Engine,
    count: CountName,
    s: Option<u32>,
    n: Option<u32>,
    ds: &[u32],
) -> Result<Vec<CountReport>, Failure> {
    let fixed = |name: &str, want_s: u32, want_n: u32| -> Result<(u32, u32), Failure> {
        match (s, n) {
            (Some(v), _) if v != want_s => Err(Failure::Usage(format!("{name} is defined for s = {want_s} only"))),
            (_, Some(v)) if v != want_n => Err(Failure::Usage(format!("{name} is defined for n = {want_n} only"))),
            _ => Ok((want_s, want_n)),
        }
    };
    let require = |flag: Option<u32>, name: &str| {
        flag.ok_or_else(|| Failure::Usage(format!("--{name} is required for this table")))
    };
    let reports = match count {
        CountName::Tsn => {
            let (s, n) = (require(s, "s")?, require(n, "n")?);
            sweep::evaluate(ds, |d| tsn_report(engine, s, n, d))?
        }
        CountName::Lines => {
            let s = s.unwrap_or(2);
            if n.is_some_and(|v| v != 1) {
                return Err(Failure::Usage("lines are degree 1 curves; drop --n".into()));
            }
            sweep::evaluate(ds, |d| enumerative_report(engine, s, 1, d))?
        }
        CountName::Sextactic => {
            let (s, n) = fixed("sextactic", 2, 2)?;
            sweep::evaluate(ds, |d| enumerative_report(engine, s, n, d))?
        }
        CountName::CubicConjectural => {
            let (s, n) = fixed("cubic-conjectural", 2, 3)?;
            sweep::evaluate(ds, |d| enumerative_report(engine, s, n, d))?
        }
        CountName::Enumerative => {
            let (s, n) = (require(s, "s")?, require(n, "n")?);
            sweep::evaluate(ds, |d| enumerative_report(engine, s, n, d))?
        }
    };
    Ok(reports)
}

fn run_verify(cache: Option<&Path>, only: Option<&str>) -> Result<(), Failure> {
    // load first so a broken cache fails fast, but run the suite cold
    let cached = match cache {
        Some(p) if p.exists() => Some(load_cache(p)?),
        _ => None,
    };
    let results = verify::run(only);
    let mut total = results.len();
    let mut passed = results.iter().filter(|r| r.passed()).count();
    let mut first_failure = None;
    for r in &results {
        match &r.failure {
            None => println!("PASS  [{}] {}", r.group, r.name),
            Some(detail) => {
                println!("FAIL  [{}] {}: {detail}", r.group, r.name);
                first_failure.get_or_insert_with(|| format!("{}/{}", r.group, r.name));
            }
        }
    }
    if let (Some(table), None) = (cached, only) {
        let cold = Engine::new();
        let entries = table.entries();
        let mut mismatch = None;
        for (key, stored) in &entries {
            let fresh = cold.relative_invariant(*key)?;
            if fresh != *stored {
                mismatch = Some(format!("{key}: cached {stored}, recomputed {fresh}"));
                break;
            }
        }
        total += 1;
        match mismatch {
            None => {
                passed += 1;
                println!("PASS  [cache] {} cached entries match cold evaluation", entries.len());
            }
            Some(detail) => {
                println!("FAIL  [cache] cached entries match cold evaluation: {detail}");
                first_failure.get_or_insert_with(|| "cache/consistency".into());
            }
        }
    }
    println!("{passed}/{total} checks passed");
    match first_failure {
        None => Ok(()),
        Some(name) => Err(Failure::Compute(format!("verification failed at {name}"))),
    }
}
