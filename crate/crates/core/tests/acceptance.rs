//! Acceptance suite: one pass/fail line per criterion, nonzero exit on any
//! failure. Runs as a plain binary (`harness = false`).

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use fock_leray::bases::{dim_report, omega_images, omega_set};
use fock_leray::linalg::span_rank;
use fock_leray::verify::{
    check_burnside, check_chebyshev, check_direct_sum, check_radial, check_stein, run_checks, Check, CheckReport,
};
use serde_json::json;

type Outcome = Result<String, String>;

/// Number, title, runtime budget in seconds, body.
type Criterion = (u32, &'static str, Option<u64>, fn() -> Outcome);

fn all_pass(checks: Vec<Check>) -> Result<Vec<CheckReport>, String> {
    let reports = run_checks(&checks).map_err(|e| e.to_string())?;
    if let Some(bad) = reports.iter().find(|r| !r.passed) {
        return Err(format!("{} failed: {}", bad.label(), serde_json::Value::Object(bad.details.clone())));
    }
    Ok(reports)
}

fn single(report: fock_leray::Result<CheckReport>) -> Result<CheckReport, String> {
    let r = report.map_err(|e| e.to_string())?;
    if r.passed {
        Ok(r)
    } else {
        Err(format!("{} failed: {}", r.label(), serde_json::Value::Object(r.details.clone())))
    }
}

fn expect(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn find(reports: &[CheckReport], n: usize, k: usize) -> &CheckReport {
    reports
        .iter()
        .find(|r| r.params["n"] == json!(n) && r.params["k"] == json!(k))
        .expect("report present")
}

fn dimension_table() -> Outcome {
    let checks = [2, 3].iter().flat_map(|&n| (0..=6).map(move |k| Check::Dimension { n, k })).collect();
    let reports = all_pass(checks)?;
    for (n, k, want) in [(2, 1, 1), (2, 2, 4), (2, 3, 10), (3, 2, 16)] {
        let got = &find(&reports, n, k).details["rank"];
        expect(*got == json!(want), format!("dim X^({n})_{k}: rank {got}, expected {want}"))?;
    }
    Ok(format!("{} ranks match; spot values 1, 4, 10, 16", reports.len()))
}

fn burnside() -> Outcome {
    let mut count = 0;
    for n in 1..=4 {
        for k in 1..=10 {
            single(check_burnside(n, k))?;
            count += 1;
        }
    }
    Ok(format!("{count} (n, k) pairs agree with brute force"))
}

fn orthogonal_basis() -> Outcome {
    let checks = [2, 3].iter().flat_map(|&n| (0..=5).map(move |k| Check::OrthogonalBasis { n, k })).collect();
    let reports = all_pass(checks)?;
    Ok(format!("{} Gram matrices exactly diagonal with entries m^2 p", reports.len()))
}

fn projection_formula() -> Outcome {
    let checks = (1..=3)
        .flat_map(|n| (0..=5).map(move |k| Check::ProjectionFormula { n, k, trials: 100, seed: 0 }))
        .collect();
    let reports = all_pass(checks)?;
    Ok(format!("{} fields checked", reports.len() * 100))
}

fn kernel_lemma() -> Outcome {
    let checks = (1..=3).flat_map(|n| (1..=5).map(move |k| Check::KernelLemma { n, k })).collect();
    let reports = all_pass(checks)?;
    Ok(format!("{} kernel pairs coincide", reports.len()))
}

fn direct_sum() -> Outcome {
    let checks = [2, 3].iter().flat_map(|&n| (0..=6).map(move |k| Check::DirectSum { n, k })).collect();
    let reports = all_pass(checks)?;
    let spot = single(check_direct_sum(3, 2))?;
    expect(
        spot.details["rank_cyclic"] == json!(11) && spot.details["rank_divfree"] == json!(16),
        format!("(3, 2) split {} + {}", spot.details["rank_cyclic"], spot.details["rank_divfree"]),
    )?;
    Ok(format!("{} decompositions; 11 + 16 = 27 at (3, 2)", reports.len()))
}

fn divfree_basis() -> Outcome {
    let checks = (1..=3).flat_map(|n| (0..=5).map(move |k| Check::DivfreeBasis { n, k })).collect();
    let reports = all_pass(checks)?;
    Ok(format!("{} bases independent and matching the closed form", reports.len()))
}

fn omega() -> Outcome {
    let set = omega_set(2, 2).map_err(|e| e.to_string())?;
    let images = omega_images(2, 2).map_err(|e| e.to_string())?;
    let rank = span_rank(&images);
    let dim = dim_report(2, 2).map_err(|e| e.to_string())?.dim_divfree;
    expect(set.len() == 3, format!("|Omega| = {}", set.len()))?;
    expect(rank <= 3 && (rank as u128) < dim && dim == 4, format!("rank {rank}, dim {dim}"))?;
    let checks = (1..=3).flat_map(|n| (0..=5).map(move |k| Check::OmegaDeficiency { n, k })).collect();
    all_pass(checks)?;
    Ok(format!("|Omega| = 3, rank {rank} < 4"))
}

fn zeta() -> Outcome {
    let checks = (1..=3).flat_map(|n| (0..=4).map(move |k| Check::ZetaBasis { n, k })).collect();
    let reports = all_pass(checks)?;
    let worst = reports
        .iter()
        .map(|r| r.details["max_relative_residual"].as_f64().unwrap_or(f64::INFINITY))
        .fold(0.0f64, f64::max);
    Ok(format!("{} bases full rank; worst relative residual {worst:.2e}", reports.len()))
}

fn radial() -> Outcome {
    for m in 1..=3 {
        single(check_radial(m))?;
    }
    let first = single(check_radial(1))?;
    expect(first.details["matches_literal"] == json!(true), "m = 1 field differs from 2 e_2 f_1 - 2 e_1 f_2")?;
    Ok("m = 1, 2, 3 have zero cyclic-gradient projection".into())
}

fn stein() -> Outcome {
    single(check_stein(2, 200, 6, 0))?;
    Ok("200 polynomials, both generators".into())
}

fn chebyshev() -> Outcome {
    let mut words = 0;
    for n in 1..=3 {
        words += single(check_chebyshev(n, 8))?.details["words_checked"].as_u64().unwrap_or(0);
    }
    Ok(format!("{words} words reproduced"))
}

fn range_equality() -> Outcome {
    let reports = all_pass((1..=4).map(|d| Check::RangeEquality { n: 2, d }).collect())?;
    let ranks: Vec<String> = reports.iter().map(|r| r.details["rank_union"].to_string()).collect();
    Ok(format!("filtered ranks {}", ranks.join(", ")))
}

fn cli_end_to_end() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_fock-leray");
    let status = Command::new(bin)
        .args(["verify", "--all", "--n", "2", "--max-degree", "4"])
        .output()
        .map_err(|e| e.to_string())?;
    expect(status.status.code() == Some(0), format!("verify exited with {:?}", status.status.code()))?;
    let dims = Command::new(bin)
        .args(["dims", "--n", "2", "--max-degree", "3", "--format", "csv"])
        .output()
        .map_err(|e| e.to_string())?;
    let golden = std::fs::read(concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures/dims_n2_k3.csv"))
        .map_err(|e| e.to_string())?;
    expect(dims.status.success(), "dims failed")?;
    expect(dims.stdout == golden, format!("dims output differs:\n{}", String::from_utf8_lossy(&dims.stdout)))?;
    Ok("verify exits 0; dims CSV matches golden fixture".into())
}

fn main() -> ExitCode {
    let criteria: Vec<Criterion> = vec![
        (1, "dimension table", Some(60), dimension_table),
        (2, "Burnside necklace count", Some(30), burnside),
        (3, "orthogonal gradient basis", Some(60), orthogonal_basis),
        (4, "projection formula", None, projection_formula),
        (5, "kernel lemma", None, kernel_lemma),
        (6, "direct sum", None, direct_sum),
        (7, "divergence-free basis", None, divfree_basis),
        (8, "Omega deficiency", None, omega),
        (9, "roots-of-unity basis", None, zeta),
        (10, "radial fields", Some(10), radial),
        (11, "Stein identity", Some(30), stein),
        (12, "Chebyshev products", None, chebyshev),
        (13, "range equality", None, range_equality),
        (14, "CLI end to end", None, cli_end_to_end),
    ];
    let mut failures = 0;
    for (id, title, budget, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match (outcome, budget) {
            (Ok(_), Some(b)) if elapsed > Duration::from_secs(b) => {
                Err(format!("took {:.1}s, budget {b}s", elapsed.as_secs_f64()))
            }
            (o, _) => o,
        };
        match outcome {
            Ok(msg) => println!("[PASS] criterion {id:>2} {title}: {msg} ({:.2}s)", elapsed.as_secs_f64()),
            Err(msg) => {
                failures += 1;
                println!("[FAIL] criterion {id:>2} {title}: {msg} ({:.2}s)", elapsed.as_secs_f64());
            }
        }
    }
    if failures == 0 {
        println!("acceptance: all 14 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failures} criteria failed");
        ExitCode::FAILURE
    }
}
