//! Acceptance criteria, one line each. Runs without the libtest harness so
//! the report reads top to bottom; exits nonzero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use stirling_core::catalog::{compare_poly, find, PolyVerdict};
use stirling_core::certify::{
    certify_bound, derive_difference, eventual_sign_threshold, ratio_monotone_check, CertifyOptions,
};
use stirling_core::exact::{int, rat};
use stirling_core::expr::parse_ratfunc;
use stirling_core::precision::{
    const_enclosure, strict_compare, stirling_ratio, Constant, Interval, Verdict,
    DEFAULT_CEILING,
};
use stirling_core::series::{envelope_check_adaptive, stirling_coeff};
use stirling_core::wallis::{
    wallis_closed_form, wallis_integral, wallis_monotone_check, wallis_sandwich_check,
};
use stirling_core::Direction;

type Check = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn opts() -> CertifyOptions {
    CertifyOptions::default()
}

fn series_fidelity() -> Check {
    let expected = [
        (1, 12), (-1, 12), (3, 40), (-1, 15), (5, 84), (-3, 56),
        (7, 144), (-2, 45), (9, 220), (-5, 132), (11, 312),
    ];
    for (k, (p, q)) in (2..=12).zip(expected) {
        let c = stirling_coeff(k).map_err(|e| e.to_string())?;
        ensure(c == rat(p, q), || format!("c_{k} = {c}, expected {p}/{q}"))?;
    }
    Ok(())
}

fn polynomial_reproduction() -> Check {
    let cases = [
        ("c103_upper", "-3600n^7-1687578n^5+30717978n^4+58917996n^3+49497870n^2+16976975n+11683805", 14),
        ("c102_lower", "600n^8-46338n^6+46338n^5-782124n^4-1506090n^3-1253245n^2-429471n-293216", 10),
    ];
    let mut problems = Vec::new();
    for (name, printed, threshold) in cases {
        let spec = find(name).ok_or("missing catalogue entry")?.spec;
        let d = derive_difference(&spec).map_err(|e| e.to_string())?;
        let printed = parse_ratfunc(printed).map_err(|e| e.to_string())?.num().clone();
        if compare_poly(&d.poly, &printed) == PolyVerdict::Mismatch {
            problems.push(format!("{name}: derived {} differs from printed", d.poly));
        }
        let t = eventual_sign_threshold(&d.poly, d.required_sign, spec.claim_from(), 1_000_000)
            .map_err(|e| e.to_string())?;
        if t.threshold != threshold {
            problems.push(format!(
                "{name}: threshold {} (expected {threshold}; p({}) = {})",
                t.threshold,
                t.threshold - 1,
                d.poly.eval(&int(t.threshold as i64 - 1))
            ));
        }
    }
    ensure(problems.is_empty(), || problems.join("; "))
}

fn table_thresholds() -> Check {
    for (name, r, expected) in [
        ("t944_upper", 5, 33),
        ("t945_lower", 6, 5),
        ("t2376_upper", 6, 8),
        ("t2375_lower", 7, 58),
    ] {
        let spec = find(name).ok_or("missing catalogue entry")?.spec;
        ensure(spec.r() == r, || format!("{name}: r = {}", spec.r()))?;
        let d = derive_difference(&spec).map_err(|e| e.to_string())?;
        let t = eventual_sign_threshold(&d.poly, d.required_sign, spec.claim_from(), 1_000_000)
            .map_err(|e| e.to_string())?;
        ensure(t.threshold == expected, || format!("{name}: threshold {}", t.threshold))?;
    }
    Ok(())
}

fn end_to_end() -> Check {
    for (name, from) in [
        ("c103_upper", 1),
        ("c102_lower", 8),
        ("t944_upper", 26),
        ("t945_lower", 1),
        ("t2376_upper", 1),
        ("t2375_lower", 53),
        ("five_n_lower", 3),
        ("five_n_upper", 3),
    ] {
        let spec = find(name).ok_or("missing catalogue entry")?.spec;
        let cert = certify_bound(&spec, &opts()).map_err(|e| format!("{name}: {e}"))?;
        ensure(cert.valid_from == from, || format!("{name}: valid from {}", cert.valid_from))?;
    }
    Ok(())
}

fn holds(n: u64, name: &str) -> Check {
    let spec = find(name).ok_or("missing catalogue entry")?.spec;
    let d = strict_compare(n, spec.a(), spec.direction(), DEFAULT_CEILING)
        .map_err(|e| format!("{name} at n = {n}: {e}"))?;
    ensure(d.holds, || format!("{name} fails at n = {n}"))
}

fn sandwich_soundness() -> Check {
    for n in (8..=1000).chain([10_000, 100_000]) {
        holds(n, "c102_lower")?;
        holds(n, "c103_upper")?;
    }
    // relative width e^{a_U − a_L} − 1 at n = 100
    let x = int(100);
    let lo = find("c102_lower").unwrap().spec.a().eval(&x).unwrap();
    let up = find("c103_upper").unwrap().spec.a().eval(&x).unwrap();
    let width = &Interval::from_rat(&(up - lo), 128).exp().unwrap() - &Interval::one(128);
    ensure(width.hi_rat() < rat(1, 1_000_000_000_000_000), || format!("relative width {width}"))
}

fn robbins_maria() -> Check {
    for name in ["robbins_lower", "robbins_upper", "maria_lower"] {
        for n in 1..=1000 {
            holds(n, name)?;
        }
    }
    for (text, dir) in [
        ("0", Direction::Lower),
        ("1/n", Direction::Upper),
        ("1/(12n)", Direction::Upper),
        ("1/(12n+1)", Direction::Lower),
    ] {
        let a = parse_ratfunc(text).map_err(|e| e.to_string())?;
        let v = ratio_monotone_check(&a, dir, (1, 101), DEFAULT_CEILING).map_err(|e| e.to_string())?;
        ensure(v == Verdict::Holds, || format!("a = {text}: {v:?}"))?;
    }
    Ok(())
}

fn wallis_suite() -> Check {
    for n in 0..=300 {
        ensure(wallis_integral(n) == wallis_closed_form(n), || format!("I_{n}"))?;
    }
    for n in 1..=300 {
        let v = wallis_monotone_check(n, DEFAULT_CEILING).map_err(|e| e.to_string())?;
        ensure(v == Verdict::Holds, || format!("I_{n} < I_{} not shown", n - 1))?;
    }
    for n in 1..=1000 {
        let v = wallis_sandwich_check(n, DEFAULT_CEILING).map_err(|e| e.to_string())?;
        ensure(v == Verdict::Holds, || format!("sandwich at n = {n}"))?;
    }
    let r = stirling_ratio(1_000_000, 64);
    let gap = (&r - &const_enclosure(Constant::Sqrt2Pi, 80)).abs();
    ensure(gap.hi_rat() < rat(22, 100_000_000), || format!("|ratio − √(2π)| ≤ {gap}"))
}

fn envelope() -> Check {
    let mut violations = Vec::new();
    for n in 2..=200 {
        for r in 2..=6 {
            let (v, _) = envelope_check_adaptive(n, r, DEFAULT_CEILING);
            if v != Verdict::Holds {
                violations.push(format!("(n={n}, r={r}): {v:?}"));
            }
        }
    }
    ensure(violations.is_empty(), || violations.join(", "))
}

fn stirling(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_stirling"))
        .args(args)
        .env_remove("STIRLING_PREC_CEILING")
        .output()
        .expect("binary runs")
}

fn negative_control() -> Check {
    let out = stirling(&["certify", "--an", "1/(13n)", "--direction", "upper", "--r", "2", "--from", "1"]);
    ensure(out.status.code() == Some(2), || format!("exit status {:?}", out.status.code()))?;
    let report: serde_json::Value =
        serde_json::from_slice(&out.stdout).map_err(|e| format!("stdout is not JSON: {e}"))?;
    let n: u64 = report["counterexample"]
        .as_str()
        .and_then(|s| s.parse().ok())
        .ok_or("no counterexample reported")?;
    // the reported n must really violate the bound
    let a = parse_ratfunc("1/(13n)").unwrap();
    let d = strict_compare(n, &a, Direction::Upper, DEFAULT_CEILING).map_err(|e| e.to_string())?;
    ensure(!d.holds, || format!("n = {n} is not a counterexample"))
}

fn determinism() -> Check {
    let a = stirling(&["reproduce", "--format", "json"]);
    let b = stirling(&["reproduce", "--format", "json"]);
    ensure(a.status.success() && b.status.success(), || "reproduce failed".into())?;
    ensure(a.stdout == b.stdout, || "outputs differ".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, u64, fn() -> Check); 10] = [
        ("series fidelity", 1, series_fidelity),
        ("polynomial reproduction", 5, polynomial_reproduction),
        ("table thresholds", 10, table_thresholds),
        ("end-to-end certificates", 60, end_to_end),
        ("sandwich soundness", 120, sandwich_soundness),
        ("robbins/maria", 60, robbins_maria),
        ("wallis suite", 120, wallis_suite),
        ("envelope property", 60, envelope),
        ("negative control", 10, negative_control),
        ("determinism", 600, determinism),
    ];
    let mut failed = 0;
    for (i, (name, limit, check)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check))
            .unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let result = result.and_then(|()| {
            ensure(elapsed <= Duration::from_secs(limit), || {
                format!("took {:.1}s, limit {limit}s", elapsed.as_secs_f64())
            })
        });
        let secs = elapsed.as_secs_f64();
        match result {
            Ok(()) => println!("criterion {:>2} PASS  {name} ({secs:.2}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name} ({secs:.2}s): {why}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criterion(s) failed");
        ExitCode::FAILURE
    }
}
