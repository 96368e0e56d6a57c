use std::io::Write;

use num_bigint::BigInt;
use serde::Serialize;

use pcore::bounds::{
    mcdowell_upper, mcspirit_ono_bound, ratio_24size_p6, theorem_interval_check, totient_sum_check,
};
use pcore::modarith::{is_prime, primes_between};
use pcore::oracle::{exhaustive_partition_search, longest_walk_dp, max_size_walk};
use pcore::residue_walk::{
    lambda_profile, profile_to_partition, validate_walk, walk_vertices, LambdaProfile,
    DEFAULT_MAX_PARTS,
};
use pcore::sweep;
use pcore::verify::{verify_prime, CheckGroup, PrimeReport};

use crate::{
    CliError, Emit, Format, LambdaArgs, OracleArgs, OracleMode, Outcome, TableArgs, TotientArgs,
    VerifyArgs,
};

const PARTS_MAX_PRIME: u64 = 300;
const WALK_MAX_PRIME: u64 = 10_000;
/// Primes handed to the worker pool per batch before their rows are written.
const BATCH: usize = 64;

pub const TABLE_HEADER: [&str; 8] = [
    "p",
    "size",
    "c",
    "mcdowell_upper",
    "mcspirit_ono",
    "theorem_lower_ok",
    "theorem_upper_ok",
    "ratio_24size_p6",
];

fn joined(values: &[u64]) -> String {
    values
        .iter()
        .map(u64::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

fn odd_prime(p: u64) -> Result<(), CliError> {
    if p >= 3 && is_prime(p) {
        Ok(())
    } else {
        Err(CliError::Usage(format!("{p} is not an odd prime")))
    }
}

#[derive(Serialize)]
struct LambdaJson {
    p: u64,
    size: String,
    c: u64,
    ratio_24size_p6: String,
    walk_valid: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    m: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    b: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    parts: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    walk: Option<Vec<u64>>,
}

pub fn run_lambda(args: &LambdaArgs, out: &mut dyn Write) -> Result<Outcome, CliError> {
    let p = args.p;
    odd_prime(p)?;
    if args.format == Format::Csv {
        return Err(CliError::Usage(
            "lambda supports text and json output".into(),
        ));
    }
    let wants = |e: Emit| args.emit.contains(&e);
    if wants(Emit::Parts) && p > PARTS_MAX_PRIME {
        return Err(CliError::Usage(format!(
            "explicit parts are only printed for p <= {PARTS_MAX_PRIME}"
        )));
    }
    if wants(Emit::Walk) && p > WALK_MAX_PRIME {
        return Err(CliError::Usage(format!(
            "the walk is only printed for p <= {WALK_MAX_PRIME}"
        )));
    }

    let profile = lambda_profile(p)?;
    let walk_valid = validate_walk(&profile).passed;
    let parts = if wants(Emit::Parts) {
        Some(
            profile_to_partition(&profile, DEFAULT_MAX_PARTS)?
                .parts()
                .to_vec(),
        )
    } else {
        None
    };
    let report = LambdaJson {
        p,
        size: profile.size.to_string(),
        c: profile.c,
        ratio_24size_p6: ratio_24size_p6(p, &profile.size),
        walk_valid,
        m: wants(Emit::M).then(|| profile.m.clone()),
        b: wants(Emit::B).then(|| profile.b.clone()),
        parts,
        walk: wants(Emit::Walk).then(|| walk_vertices(&profile)),
    };

    match args.format {
        Format::Json => {
            serde_json::to_writer(&mut *out, &report)?;
            writeln!(out)?;
        }
        _ => {
            writeln!(out, "p = {}", report.p)?;
            writeln!(out, "size = {}", report.size)?;
            writeln!(out, "c = {}", report.c)?;
            writeln!(out, "ratio_24size_p6 = {}", report.ratio_24size_p6)?;
            writeln!(out, "walk_valid = {}", report.walk_valid)?;
            for (name, values) in [
                ("m", &report.m),
                ("b", &report.b),
                ("parts", &report.parts),
                ("walk", &report.walk),
            ] {
                if let Some(values) = values {
                    writeln!(out, "{name} = {}", joined(values))?;
                }
            }
        }
    }
    Ok(Outcome::from_pass(walk_valid))
}

#[derive(Serialize)]
struct OutcomeJson {
    group: &'static str,
    name: &'static str,
    holds: bool,
    applicability: &'static str,
    margin: String,
}

#[derive(Serialize)]
struct VerifyRowJson {
    p: u64,
    size: String,
    c: u64,
    passed: bool,
    outcomes: Vec<OutcomeJson>,
    notes: Vec<String>,
}

impl From<&PrimeReport> for VerifyRowJson {
    fn from(report: &PrimeReport) -> Self {
        VerifyRowJson {
            p: report.p,
            size: report.size.to_string(),
            c: report.c,
            passed: report.passed(),
            outcomes: report
                .outcomes
                .iter()
                .map(|o| OutcomeJson {
                    group: o.group.as_str(),
                    name: o.name,
                    holds: o.verdict.holds,
                    applicability: o.verdict.applicability.as_str(),
                    margin: o.verdict.margin.to_string(),
                })
                .collect(),
            notes: report.notes.clone(),
        }
    }
}

#[derive(Serialize)]
struct Meta<'a> {
    range: [u64; 2],
    version: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    checks: Option<Vec<&'a str>>,
}

/// Computes `f` over `primes` in ordered batches and hands each result to
/// `emit` in increasing `p`.
fn for_each_ordered<R, F, E>(
    primes: &[u64],
    workers: usize,
    f: F,
    mut emit: E,
) -> Result<(), CliError>
where
    R: Send,
    F: Fn(u64) -> Result<R, pcore::Error> + Sync + Send,
    E: FnMut(R) -> Result<(), CliError>,
{
    for batch in primes.chunks(BATCH) {
        for result in sweep::map_ordered(batch, workers, |&p| f(p)) {
            emit(result?)?;
        }
    }
    Ok(())
}

pub fn run_verify(args: &VerifyArgs, out: &mut dyn Write) -> Result<Outcome, CliError> {
    args.range.validate()?;
    let groups: Vec<CheckGroup> = if args.checks.is_empty() {
        CheckGroup::ALL.to_vec()
    } else {
        args.checks.clone()
    };
    let primes: Vec<u64> = primes_between(args.range.min.max(3), args.range.max);
    let workers = args.range.workers();
    let mut all_pass = true;
    let mut failed_primes = 0u64;

    match args.format {
        Format::Json => {
            let meta = Meta {
                range: [args.range.min, args.range.max],
                version: env!("CARGO_PKG_VERSION"),
                checks: Some(groups.iter().map(|g| g.as_str()).collect()),
            };
            write!(
                out,
                "{{\"meta\":{},\"rows\":[",
                serde_json::to_string(&meta)?
            )?;
        }
        Format::Csv => {
            out.write_all(&csv_line([
                "p",
                "size",
                "c",
                "passed",
                "failed_checks",
                "not_asserted",
            ])?)?;
        }
        Format::Text => {}
    }

    let mut first = true;
    for_each_ordered(
        &primes,
        workers,
        |p| verify_prime(p, &groups),
        |report| {
            let passed = report.passed();
            all_pass &= passed;
            failed_primes += u64::from(!passed);
            let failures: Vec<&str> = report.failures().map(|o| o.name).collect();
            let not_asserted: Vec<String> = report
                .outcomes
                .iter()
                .filter(|o| o.verdict.applicability != pcore::bounds::Applicability::Asserted)
                .map(|o| format!("{}:{}", o.name, o.verdict.applicability.as_str()))
                .collect();
            match args.format {
                Format::Json => {
                    if !first {
                        out.write_all(b",")?;
                    }
                    serde_json::to_writer(&mut *out, &VerifyRowJson::from(&report))?;
                }
                Format::Csv => {
                    out.write_all(&csv_line([
                        report.p.to_string(),
                        report.size.to_string(),
                        report.c.to_string(),
                        passed.to_string(),
                        failures.join(";"),
                        not_asserted.join(";"),
                    ])?)?;
                }
                Format::Text => {
                    let status = if passed { "pass" } else { "FAIL" };
                    write!(
                        out,
                        "p={} size={} c={} {status}",
                        report.p, report.size, report.c
                    )?;
                    if !failures.is_empty() {
                        write!(out, " failed={}", failures.join(","))?;
                    }
                    writeln!(out)?;
                }
            }
            first = false;
            Ok(())
        },
    )?;

    match args.format {
        Format::Json => writeln!(out, "]}}")?,
        Format::Text => writeln!(
            out,
            "checked {} primes, {} failed",
            primes.len(),
            failed_primes
        )?,
        Format::Csv => {}
    }
    out.flush()?;
    Ok(Outcome::from_pass(all_pass))
}

pub fn run_oracle(args: &OracleArgs, out: &mut dyn Write) -> Result<Outcome, CliError> {
    let p = args.p;
    odd_prime(p)?;
    let profile = lambda_profile(p)?;
    let agree = match args.mode {
        OracleMode::Walks => {
            let best = max_size_walk(p)?;
            let agree = best.m == profile.m && BigInt::from(best.size) == profile.size;
            writeln!(
                out,
                "oracle walks: m = {}, size = {}",
                joined(&best.m),
                best.size
            )?;
            agree
        }
        OracleMode::LongestDp => {
            let longest = longest_walk_dp(p)?;
            let agree = longest.witness == profile.m && longest.length == profile.walk_length();
            writeln!(
                out,
                "oracle longest-dp: length = {}, count = {}, m = {}",
                longest.length,
                longest.count,
                joined(&longest.witness)
            )?;
            agree
        }
        OracleMode::Partitions => {
            let cap = match args.size_cap {
                Some(cap) => cap,
                None => u64::try_from(mcspirit_ono_bound(p)).map_err(|_| {
                    CliError::Usage(format!("default size cap for p = {p} does not fit in u64"))
                })?,
            };
            let search = exhaustive_partition_search(p, cap)?;
            let expected = profile_to_partition(&profile, DEFAULT_MAX_PARTS)?;
            writeln!(
                out,
                "oracle partitions: best = ({}), size = {}, examined = {}",
                search.best,
                search.best.size(),
                search.examined
            )?;
            search.best == expected
        }
    };
    writeln!(
        out,
        "lambda: m = {}, size = {}",
        joined(&profile.m),
        profile.size
    )?;
    writeln!(out, "{}", if agree { "agree" } else { "DISAGREE" })?;
    Ok(Outcome::from_pass(agree))
}

#[derive(Serialize)]
struct TableRow {
    p: u64,
    size: String,
    c: u64,
    mcdowell_upper: String,
    mcspirit_ono: String,
    theorem_lower_ok: bool,
    theorem_upper_ok: bool,
    ratio_24size_p6: String,
}

impl TableRow {
    fn new(profile: &LambdaProfile) -> Self {
        let p = profile.p;
        let theorem = theorem_interval_check(p, &profile.size);
        TableRow {
            p,
            size: profile.size.to_string(),
            c: profile.c,
            mcdowell_upper: mcdowell_upper(p).to_string(),
            mcspirit_ono: mcspirit_ono_bound(p).to_string(),
            theorem_lower_ok: theorem.lower.holds,
            theorem_upper_ok: theorem.upper.holds,
            ratio_24size_p6: ratio_24size_p6(p, &profile.size),
        }
    }

    fn record(&self) -> [String; 8] {
        [
            self.p.to_string(),
            self.size.clone(),
            self.c.to_string(),
            self.mcdowell_upper.clone(),
            self.mcspirit_ono.clone(),
            self.theorem_lower_ok.to_string(),
            self.theorem_upper_ok.to_string(),
            self.ratio_24size_p6.clone(),
        ]
    }
}

fn csv_builder() -> csv::WriterBuilder {
    let mut builder = csv::WriterBuilder::new();
    builder.terminator(csv::Terminator::Any(b'\n'));
    builder
}

/// One CSV record, quoted as needed and terminated by `\n`.
fn csv_line<I, T>(record: I) -> Result<Vec<u8>, CliError>
where
    I: IntoIterator<Item = T>,
    T: AsRef<[u8]>,
{
    let mut w = csv_builder().from_writer(Vec::new());
    w.write_record(record)?;
    w.into_inner()
        .map_err(|e| CliError::Io(std::io::Error::other(e.to_string())))
}

pub fn run_table(args: &TableArgs, out: &mut dyn Write) -> Result<Outcome, CliError> {
    args.range.validate()?;
    let primes = primes_between(args.range.min.max(3), args.range.max);
    let workers = args.range.workers();
    let row = |p| lambda_profile(p).map(|profile| TableRow::new(&profile));

    match args.format {
        Format::Csv => {
            out.write_all(&csv_line(TABLE_HEADER)?)?;
            for_each_ordered(&primes, workers, row, |r| {
                out.write_all(&csv_line(r.record())?)?;
                Ok(())
            })?;
        }
        Format::Json => {
            let meta = Meta {
                range: [args.range.min, args.range.max],
                version: env!("CARGO_PKG_VERSION"),
                checks: None,
            };
            write!(
                out,
                "{{\"meta\":{},\"rows\":[",
                serde_json::to_string(&meta)?
            )?;
            let mut first = true;
            for_each_ordered(&primes, workers, row, |r| {
                if !first {
                    out.write_all(b",")?;
                }
                first = false;
                serde_json::to_writer(&mut *out, &r)?;
                Ok(())
            })?;
            writeln!(out, "]}}")?;
        }
        Format::Text => {
            return Err(CliError::Usage("table supports csv and json output".into()));
        }
    }
    out.flush()?;
    Ok(Outcome::Pass)
}

pub fn run_totient_check(args: &TotientArgs, out: &mut dyn Write) -> Result<Outcome, CliError> {
    if args.n_max == 0 {
        return Err(CliError::Usage("--n-max must be at least 1".into()));
    }
    let report = totient_sum_check(args.n_max)?;
    match report.first_violation {
        None => writeln!(out, "pass: n_max = {}", report.n_max)?,
        Some(n) => writeln!(out, "FAIL: first violation at n = {n}")?,
    }
    writeln!(
        out,
        "min slack = {} at n = {}",
        report.min_slack, report.argmin
    )?;
    Ok(Outcome::from_pass(report.passed()))
}
