//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::process::Command;
use std::time::{Duration, Instant};

use pcore::bounds::{c_bounds_check, totient_partial_sum, totient_sum_check, Applicability};
use pcore::modarith::{primes_after, primes_between};
use pcore::oracle::{exhaustive_partition_search, longest_walk_dp, max_size_walk};
use pcore::residue_walk::{construct, lambda_profile, validate_walk, walk_vertices};
use pcore::verify::{direct_mismatches, evaluate, partition_structure_holds, CheckGroup};

type Check = Result<String, String>;
type Criterion = (u32, &'static str, Duration, fn() -> Check);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn pcore_bin(args: &[&str]) -> Result<(i32, String), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_pcore"))
        .args(args)
        .output()
        .map_err(|e| format!("cannot run pcore: {e}"))?;
    let code = out.status.code().unwrap_or(-1);
    Ok((code, String::from_utf8_lossy(&out.stdout).into_owned()))
}

fn lambda_three() -> Check {
    let (code, text) = pcore_bin(&["lambda", "-p", "3", "--emit", "parts,walk"])?;
    ensure(code == 0, || format!("exit code {code}"))?;
    for line in [
        "size = 10",
        "parts = 4,2,2,1,1",
        "walk = 0,1,2,1",
        "walk_valid = true",
    ] {
        ensure(text.lines().any(|l| l == line), || {
            format!("missing {line:?}")
        })?;
    }
    let profile = lambda_profile(3).map_err(|e| e.to_string())?;
    ensure(validate_walk(&profile).passed, || "walk rejected".into())?;
    ensure(walk_vertices(&profile) == [0, 1, 2, 1], || {
        "walk vertices".into()
    })?;
    let search = exhaustive_partition_search(3, 16).map_err(|e| e.to_string())?;
    ensure(search.best.parts() == [4, 2, 2, 1, 1], || {
        format!("partition search found {}", search.best)
    })?;
    let walk = max_size_walk(3).map_err(|e| e.to_string())?;
    ensure(walk.m == profile.m && walk.size == 10, || {
        format!("walk oracle found {:?}", walk.m)
    })?;
    Ok("Λ_3 = (4,2,2,1,1), size 10, walk 0,1,2,1".into())
}

fn small_oracles() -> Check {
    for p in [3u64, 5, 7] {
        let profile = lambda_profile(p).map_err(|e| e.to_string())?;
        let best = max_size_walk(p).map_err(|e| format!("p = {p}: {e}"))?;
        ensure(best.m == profile.m, || format!("p = {p}: m differs"))?;
        ensure(best.size.to_string() == profile.size.to_string(), || {
            format!("p = {p}: size differs")
        })?;
    }
    let five = lambda_profile(5).map_err(|e| e.to_string())?;
    ensure(
        five.m == [4, 2, 2, 3] && five.size.to_string() == "198",
        || "Λ_5 mismatch".into(),
    )?;
    let primes = primes_between(3, 200);
    for &p in &primes {
        let dp = longest_walk_dp(p).map_err(|e| format!("p = {p}: {e}"))?;
        let profile = lambda_profile(p).map_err(|e| e.to_string())?;
        ensure(dp.witness == profile.m, || {
            format!("p = {p}: dp witness differs")
        })?;
    }
    Ok(format!(
        "walk oracle for 3, 5, 7; unique longest walk for {} primes ≤ 200",
        primes.len()
    ))
}

fn fast_path() -> Check {
    let primes = primes_between(3, 2000);
    let mut residues = 0u64;
    for &p in &primes {
        let construction = construct(p).map_err(|e| format!("p = {p}: {e}"))?;
        let bad = direct_mismatches(&construction);
        ensure(bad == 0, || format!("p = {p}: {bad} fast pairs differ"))?;
        residues += p - 2;
    }
    Ok(format!("{residues} residues over {} primes", primes.len()))
}

fn lemma_sweep() -> Check {
    let groups = [
        CheckGroup::Lemmas,
        CheckGroup::Symmetry,
        CheckGroup::Identity,
    ];
    let primes = primes_between(3, 2000);
    let mut remark_misses = 0u64;
    for &p in &primes {
        let construction = construct(p).map_err(|e| format!("p = {p}: {e}"))?;
        let report = evaluate(&construction, &groups);
        let failures: Vec<_> = report.failures().map(|o| o.name).collect();
        ensure(failures.is_empty(), || format!("p = {p}: {failures:?}"))?;
        remark_misses += report
            .outcomes
            .iter()
            .filter(|o| o.verdict.applicability == Applicability::ReportOnly && !o.verdict.holds)
            .count() as u64;
    }
    Ok(format!(
        "{} primes, {remark_misses} remark misses",
        primes.len()
    ))
}

fn c_bounds() -> Check {
    let primes = primes_between(17, 10_000);
    let mut c18_checked = 0;
    for &p in &primes {
        let profile = lambda_profile(p).map_err(|e| e.to_string())?;
        let verdicts = c_bounds_check(&profile);
        ensure(
            verdicts.upper.applicability == Applicability::Asserted && verdicts.upper.holds,
            || format!("p = {p}: c upper bound"),
        )?;
        if p >= 257 {
            ensure(
                verdicts.c18.applicability == Applicability::Asserted && verdicts.c18.holds,
                || format!("p = {p}: c_(p/18) bound"),
            )?;
            c18_checked += 1;
        }
    }
    Ok(format!(
        "c bound on {} primes, c_(p/18) bound on {c18_checked}",
        primes.len()
    ))
}

fn main_theorem() -> Check {
    let primes = primes_after(1_000_000, 20);
    let groups = [CheckGroup::Theorem, CheckGroup::Eq1];
    for &p in &primes {
        let construction = construct(p).map_err(|e| format!("p = {p}: {e}"))?;
        let report = evaluate(&construction, &groups);
        for name in [
            "theorem_lower",
            "theorem_upper",
            "eq1_upper",
            "eq1_below_mcspirit_ono",
        ] {
            let verdict = &report
                .outcome(name)
                .ok_or(format!("{name} missing"))?
                .verdict;
            ensure(
                verdict.applicability == Applicability::Asserted && verdict.holds,
                || format!("p = {p}: {name}"),
            )?;
        }
    }
    Ok(format!(
        "primes {}..={}",
        primes[0],
        primes[primes.len() - 1]
    ))
}

fn totient() -> Check {
    ensure(totient_partial_sum(10).to_string() == "1307/210", || {
        format!("partial sum at 10 is {}", totient_partial_sum(10))
    })?;
    let report = totient_sum_check(100_000).map_err(|e| e.to_string())?;
    ensure(report.passed(), || {
        format!("violated at n = {:?}", report.first_violation)
    })?;
    Ok(format!("n ≤ 100000, min slack at n = {}", report.argmin))
}

fn structure() -> Check {
    for p in [3u64, 5, 7, 11, 13] {
        let construction = construct(p).map_err(|e| e.to_string())?;
        ensure(partition_structure_holds(&construction), || {
            format!("p = {p}: partition structure")
        })?;
    }
    Ok("p ∈ {3, 5, 7, 11, 13}".into())
}

fn determinism() -> Check {
    let reference = pcore_bin(&["table", "--min", "3", "--max", "100", "--workers", "1"])?;
    ensure(reference.0 == 0, || format!("exit code {}", reference.0))?;
    for workers in ["1", "4", "8"] {
        for format in ["csv", "json"] {
            let first = pcore_bin(&[
                "table",
                "--min",
                "3",
                "--max",
                "100",
                "--workers",
                workers,
                "--format",
                format,
            ])?;
            let second = pcore_bin(&[
                "table",
                "--min",
                "3",
                "--max",
                "100",
                "--workers",
                workers,
                "--format",
                format,
            ])?;
            ensure(first == second, || {
                format!("{format} differs between runs at {workers} workers")
            })?;
            if format == "csv" {
                ensure(first == reference, || {
                    format!("csv differs at {workers} workers")
                })?;
            }
        }
    }
    let rows = reference.1.lines().count() - 1;
    Ok(format!("{rows} rows identical for workers 1, 4, 8"))
}

fn main() {
    let criteria: [Criterion; 9] = [
        (1, "Λ_3 example", Duration::from_secs(1), lambda_three),
        (
            2,
            "oracle equivalence",
            Duration::from_secs(60),
            small_oracles,
        ),
        (
            3,
            "fast path matches direct scan",
            Duration::from_secs(300),
            fast_path,
        ),
        (
            4,
            "pair lemmas and identities",
            Duration::from_secs(300),
            lemma_sweep,
        ),
        (5, "c bounds", Duration::from_secs(300), c_bounds),
        (
            6,
            "size interval above 10^6",
            Duration::from_secs(60),
            main_theorem,
        ),
        (7, "totient partial sums", Duration::from_secs(10), totient),
        (
            8,
            "explicit partition structure",
            Duration::from_secs(10),
            structure,
        ),
        (
            9,
            "table determinism",
            Duration::from_secs(120),
            determinism,
        ),
    ];
    let mut failed = 0;
    for (id, title, budget, check) in criteria {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let result = match result {
            Ok(detail) if elapsed > budget => {
                Err(format!("{detail}; took {elapsed:.2?}, budget {budget:?}"))
            }
            other => other,
        };
        match result {
            Ok(detail) => println!("criterion {id} PASS [{elapsed:.2?}] {title}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("criterion {id} FAIL [{elapsed:.2?}] {title}: {why}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all 9 criteria passed");
}
