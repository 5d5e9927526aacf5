//! `minpoly`: decide, construct and verify members of S_N with prescribed
//! divisors.
//!
//! Exit codes: 0 success (or the criterion holds), 1 mathematical negative,
//! 2 usage error, 3 internal invariant violation.

mod cache;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use minpoly::appendix::{replicate_appendix_with, AppendixOutcome};
use minpoly::criterion::{decide_by_gcd, decide_by_primes, CriterionReport, DivisorQuery};
use minpoly::numth::lcm_range;
use minpoly::theorems::{census_csv, census_records, gsn_inequality_check, verify_main_theorem, CENSUS_CSV_HEADER};
use minpoly::witness::enumerate_family;
use minpoly::{CensusRecord, Error};

use crate::cache::CensusCache;

const OK: u8 = 0;
const NEGATIVE: u8 = 1;
const USAGE: u8 = 2;
const INTERNAL: u8 = 3;

/// Largest appendix range allowed without `--long`.
const QUICK_APPENDIX_MAX: u64 = 200;

#[derive(Parser)]
#[command(name = "minpoly", version, about = "Integer polynomials of minimal positive integral over [0, 1]")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether some P in S_N is divisible by x^a (1-x)^b
    Criterion {
        #[arg(value_name = "N")]
        n: u64,
        a: u64,
        b: u64,
        /// Cross-check against the gcd of the Bezout coefficients
        #[arg(long)]
        verify: bool,
        #[arg(long)]
        json: bool,
    },
    /// Build certified members of S_N divisible by x^a (1-x)^b, as JSON lines
    Construct {
        #[arg(value_name = "N")]
        n: u64,
        a: u64,
        b: u64,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the (x^3 (1-x)^2)^floor(N/6) construction for a range of N
    VerifyMain {
        #[arg(long)]
        from: u64,
        #[arg(long)]
        to: u64,
    },
    /// Largest a + b admitting a divisor x^a (1-x)^b, per N
    Census {
        #[arg(long)]
        from: u64,
        #[arg(long)]
        to: u64,
        /// Cache file (default: $MINPOLY_CACHE or the user cache directory)
        #[arg(long)]
        cache: Option<PathBuf>,
        #[arg(long, conflicts_with = "cache")]
        no_cache: bool,
        /// Also write the CSV to this file
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Check the x^(N/2) (1-x)^(N/3) (1-x-x^2)^(N/19) family for 3 <= N <= nmax
    Appendix {
        #[arg(long, default_value_t = QUICK_APPENDIX_MAX)]
        nmax: u64,
        /// Allow nmax above 200 and report progress
        #[arg(long)]
        long: bool,
        /// Directory for one witness file per N
        #[arg(long)]
        witnesses: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Check l_N >= 4^floor((N-1)/2) exactly
    GsnCheck {
        #[arg(value_name = "N")]
        n: u64,
    },
    /// Prime-power factorization of lcm(1, ..., N)
    PsiFactors {
        #[arg(value_name = "N")]
        n: u64,
        #[arg(long)]
        json: bool,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::CriterionFails(_) | Error::FamilyExhausted { .. } => NEGATIVE,
            e if e.is_internal() => INTERNAL,
            _ => USAGE,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure { code: INTERNAL, message: format!("I/O error: {e}") }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: USAGE, message: message.into() }
}

type Outcome = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Criterion { n, a, b, verify, json } => cmd_criterion(n, a, b, verify, json),
        Command::Construct { n, a, b, count, out } => cmd_construct(n, a, b, count, out.as_deref()),
        Command::VerifyMain { from, to } => cmd_verify_main(from, to),
        Command::Census { from, to, cache, no_cache, csv } => {
            let cache = if no_cache { None } else { Some(cache.unwrap_or_else(cache::default_path)) };
            cmd_census(from, to, cache.as_deref(), csv.as_deref())
        }
        Command::Appendix { nmax, long, witnesses, json } => cmd_appendix(nmax, long, witnesses.as_deref(), json),
        Command::GsnCheck { n } => cmd_gsn(n),
        Command::PsiFactors { n, json } => cmd_psi_factors(n, json),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("minpoly: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn print_report(out: &mut impl Write, rep: &CriterionReport) -> io::Result<()> {
    let verdict = if rep.holds { "holds" } else { "fails" };
    writeln!(out, "N={} a={} b={}: {verdict} (gcd {})", rep.n, rep.a, rep.b, rep.gcd)?;
    writeln!(out, "{:>8} {:>8} {:>8} {:>8}", "p", "required", "n_p", "achieved")?;
    for e in &rep.primes {
        let np = e.n_p.map_or_else(|| "-".to_string(), |v| v.to_string());
        writeln!(out, "{:>8} {:>8} {:>8} {:>8}", e.p, e.required, np, e.achieved)?;
    }
    Ok(())
}

fn cmd_criterion(n: u64, a: u64, b: u64, verify: bool, json: bool) -> Outcome {
    let q = DivisorQuery::new(n, a, b)?;
    let rep = decide_by_primes(&q);
    let mut out = io::stdout().lock();
    if json {
        writeln!(out, "{}", rep.to_json())?;
    } else {
        print_report(&mut out, &rep)?;
    }
    if verify {
        let (holds, gcd) = decide_by_gcd(&q)?;
        if holds != rep.holds || (!holds && gcd != rep.gcd) {
            return Err(Failure {
                code: INTERNAL,
                message: format!("gcd route disagrees: holds={holds}, gcd={gcd}"),
            });
        }
        eprintln!("verify: gcd route agrees (gcd {gcd})");
    }
    Ok(if rep.holds { OK } else { NEGATIVE })
}

fn cmd_construct(n: u64, a: u64, b: u64, count: usize, out: Option<&Path>) -> Outcome {
    if count == 0 {
        return Err(usage("--count must be positive"));
    }
    let q = DivisorQuery::new(n, a, b)?;
    let (witnesses, code) = match enumerate_family(&q, count) {
        Ok(ws) => (ws, OK),
        Err(Error::FamilyExhausted { unique }) => {
            eprintln!("only one witness exists in the (1-x)^n tail basis (N - a - b = 1)");
            (vec![*unique], NEGATIVE)
        }
        Err(Error::CriterionFails(rep)) => {
            print_report(&mut io::stderr().lock(), &rep)?;
            return Ok(NEGATIVE);
        }
        Err(e) => return Err(e.into()),
    };
    let mut text = String::new();
    for w in &witnesses {
        text.push_str(&w.to_json());
        text.push('\n');
    }
    match out {
        Some(path) => fs::write(path, text)?,
        None => io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(code)
}

fn cmd_verify_main(from: u64, to: u64) -> Outcome {
    if from == 0 || from > to {
        return Err(usage(format!("need 1 <= --from <= --to, got {from}..{to}")));
    }
    let mut out = io::stdout().lock();
    let mut worst = OK;
    for n in from..=to {
        match verify_main_theorem(n) {
            Ok(w) => writeln!(
                out,
                "N={n} OK a={} b={} deg={} I={}",
                w.query.a(),
                w.query.b(),
                w.expanded.degree().unwrap_or(0),
                w.integral
            )?,
            Err(e) => {
                writeln!(out, "N={n} FAIL {e}")?;
                worst = worst.max(Failure::from(e).code);
            }
        }
    }
    Ok(worst)
}

fn cmd_census(from: u64, to: u64, cache_path: Option<&Path>, csv: Option<&Path>) -> Outcome {
    if from == 0 || from > to {
        return Err(usage(format!("need 1 <= --from <= --to, got {from}..{to}")));
    }
    let mut cache = match cache_path {
        Some(p) => Some(CensusCache::open(p)?),
        None => None,
    };
    if cache.as_ref().is_some_and(CensusCache::was_corrupt) {
        eprintln!("census: cache invalid, rebuilding");
    }
    let missing: Vec<u64> = (from..=to)
        .filter(|&n| cache.as_ref().and_then(|c| c.get(n)).is_none())
        .collect();
    let computed = census_records(&missing);
    if let Some(c) = cache.as_mut() {
        c.insert_all(&computed)?;
    }
    let mut fresh = computed.into_iter().peekable();
    let records: Vec<CensusRecord> = (from..=to)
        .map(|n| match fresh.next_if(|r| r.n == n) {
            Some(r) => r,
            None => cache.as_ref().and_then(|c| c.get(n)).cloned().expect("cached"),
        })
        .collect();
    eprintln!(
        "census: {} computed, {} from cache",
        missing.len(),
        records.len() - missing.len()
    );

    let text = census_csv(&records);
    debug_assert!(text.starts_with(CENSUS_CSV_HEADER));
    io::stdout().lock().write_all(text.as_bytes())?;
    if let Some(path) = csv {
        fs::write(path, &text)?;
    }
    Ok(OK)
}

fn cmd_appendix(nmax: u64, long: bool, witnesses: Option<&Path>, json: bool) -> Outcome {
    if nmax < 3 {
        return Err(usage("--nmax must be at least 3 (the family starts at N = 3)"));
    }
    if nmax > QUICK_APPENDIX_MAX && !long {
        return Err(usage(format!("--nmax above {QUICK_APPENDIX_MAX} needs --long")));
    }
    if let Some(dir) = witnesses {
        fs::create_dir_all(dir)?;
    }
    let done = std::sync::atomic::AtomicU64::new(0);
    let write_errors = std::sync::Mutex::new(Vec::new());
    let mut report = replicate_appendix_with(nmax, |outcome| {
        if let (Some(dir), AppendixOutcome::Solved(w)) = (witnesses, outcome) {
            let path = dir.join(format!("{}.json", w.query.n()));
            if let Err(e) = fs::write(&path, format!("{}\n", w.to_json())) {
                write_errors.lock().unwrap().push(e);
            }
        }
        let k = done.fetch_add(1, std::sync::atomic::Ordering::Relaxed) + 1;
        if long && k.is_multiple_of(50) {
            eprintln!("appendix: {k}/{} done", nmax - 2);
        }
    })?;
    if let Some(e) = write_errors.into_inner().unwrap().pop() {
        return Err(e.into());
    }
    report.witnesses_path = witnesses.map(|d| d.display().to_string());

    let mut out = io::stdout().lock();
    if json {
        writeln!(out, "{}", serde_json::to_string(&report).expect("report serializes"))?;
    } else if report.exceptions.is_empty() {
        writeln!(out, "no exceptions up to {nmax}")?;
    } else {
        writeln!(out, "exceptions: {:?}", report.exceptions)?;
    }
    Ok(if report.exceptions.is_empty() { OK } else { NEGATIVE })
}

fn cmd_gsn(n: u64) -> Outcome {
    if n == 0 {
        return Err(usage("N must be positive"));
    }
    let holds = gsn_inequality_check(n);
    let k = (n - 1) / 2;
    let bits = lcm_range(n).value().bits();
    println!("N={n}: l_N >= 4^{k} is {holds} (l_N has {bits} bits, 4^{k} has {} bits)", 2 * k + 1);
    Ok(if holds { OK } else { NEGATIVE })
}

fn cmd_psi_factors(n: u64, json: bool) -> Outcome {
    if n == 0 {
        return Err(usage("N must be positive"));
    }
    let f = lcm_range(n);
    let value = f.value();
    if json {
        let factors: Vec<serde_json::Value> = f
            .factors()
            .iter()
            .map(|(p, e)| serde_json::json!({ "p": p, "e": e }))
            .collect();
        let doc = serde_json::json!({ "N": n, "factors": factors, "value": value.to_string() });
        println!("{doc}");
    } else {
        let parts: Vec<String> = f
            .factors()
            .iter()
            .map(|(p, e)| if *e == 1 { p.to_string() } else { format!("{p}^{e}") })
            .collect();
        let shown = if parts.is_empty() { "1".to_string() } else { parts.join(" * ") };
        println!("l_{n} = {shown}");
        println!("l_{n} = {value}");
    }
    Ok(OK)
}
