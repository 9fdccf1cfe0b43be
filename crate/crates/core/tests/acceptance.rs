//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

mod support;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use moran_core::experiments::{
    definiteness_threshold, table1, REFERENCE_TABLE1, TABLE1_NS, TABLE1_QS,
};
use moran_core::inference::{
    exact_null_moments, permutation_test, permutation_test_ranked, Alternative, RankBy,
};
use moran_core::linalg::{gram_schmidt_basis, helmert_basis, reduce, symmetric_eigen};
use moran_core::moran::{
    bounds, definiteness, extremal_observations, moran_alternative, morans_i, reduced,
    Definiteness, Extreme,
};
use moran_core::Matrix;
use moran_core::Weights;
use support::*;

type Check = std::result::Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ac1_table1() -> Check {
    let start = Instant::now();
    let table = table1(&TABLE1_NS, &TABLE1_QS).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let mut worst: f64 = 0.0;
    for &(n, q, lower, upper) in &REFERENCE_TABLE1 {
        let row = table.get(n, q).ok_or(format!("missing row ({n},{q})"))?;
        let dl = (row.lower - lower).abs();
        let du = (row.upper - upper).abs();
        worst = worst.max(dl).max(du);
        ensure(dl <= 5e-4 && du <= 5e-4, || {
            format!(
                "({n},{q}): got ({:.5}, {:.5}), want ({lower}, {upper})",
                row.lower, row.upper
            )
        })?;
    }
    ensure(elapsed < Duration::from_secs(5), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!(
        "15 pairs, max deviation {worst:.2e}, {elapsed:.2?}"
    ))
}

fn ac2_trace() -> Check {
    let mut worst: f64 = 0.0;
    for k in 0..100u64 {
        let n = 3 + (k as usize * 7) % 58;
        let w = random_weights(n, k);
        let tr = reduced(&w).map_err(|e| e.to_string())?.trace();
        worst = worst.max((tr + 1.0).abs());
    }
    ensure(worst <= 1e-9, || format!("max |tr + 1| = {worst:e}"))?;
    Ok(format!(
        "100 matrices n in 3..=60, max |tr + 1| = {worst:.1e}"
    ))
}

fn ac3_attainment() -> Check {
    let mut worst: f64 = 0.0;
    for &(n, q, _, _) in &REFERENCE_TABLE1 {
        let w = Weights::line_decay(n, q).map_err(|e| e.to_string())?;
        let b = bounds(&w).map_err(|e| e.to_string())?;
        for (which, target) in [
            (Extreme::Lower, b.lambda_min),
            (Extreme::Upper, b.lambda_max),
        ] {
            let y = extremal_observations(&w, which, 0.0, 1.0).map_err(|e| e.to_string())?;
            let i = morans_i(&y, &w).map_err(|e| e.to_string())?;
            worst = worst.max((i - target).abs());
        }
    }
    ensure(worst <= 1e-9, || format!("max |I - bound| = {worst:e}"))?;
    Ok(format!(
        "30 extremal vectors, max |I - bound| = {worst:.1e}"
    ))
}

fn ac4_complete() -> Check {
    for n in [3usize, 10, 25] {
        let w = Weights::complete(n).map_err(|e| e.to_string())?;
        let target = -1.0 / (n as f64 - 1.0);
        let r = reduced(&w).map_err(|e| e.to_string())?;
        let dev = r
            .matrix()
            .max_abs_diff(&Matrix::identity(n - 1).scale(target));
        ensure(dev <= 1e-10, || {
            format!("n={n}: reduced deviates by {dev:e}")
        })?;
        let d = definiteness(&w).map_err(|e| e.to_string())?;
        ensure(d == Definiteness::NegativeDefinite, || {
            format!("n={n}: {d:?}")
        })?;
        for k in 0..100 {
            let y = random_y(n, 1000 * n as u64 + k);
            let i = morans_i(&y, &w).map_err(|e| e.to_string())?;
            ensure((i - target).abs() <= 1e-12, || format!("n={n}: I = {i}"))?;
        }
    }
    Ok("n = 3, 10, 25: reduced = -I/(n-1), negative definite, I constant over 100 y".into())
}

fn ac5_alternative_range() -> Check {
    let mut lo: f64 = 0.0;
    let mut hi: f64 = 0.0;
    for k in 0..1000u64 {
        let n = 3 + (k as usize) % 28;
        let w = if k % 5 == 0 {
            Weights::random_uniform(n, 0.05 + 0.9 * ((k % 17) as f64 / 17.0), k).unwrap()
        } else {
            random_weights(n, k)
        };
        let y = random_y(n, k);
        let b = bounds(&w).map_err(|e| e.to_string())?;
        let i = morans_i(&y, &w).map_err(|e| e.to_string())?;
        let im = moran_alternative(i, &b, n).map_err(|e| e.to_string())?;
        lo = lo.min(im);
        hi = hi.max(im);
        ensure((-1.0..=1.0).contains(&im), || format!("k={k}: I_M = {im}"))?;
        let at_min = moran_alternative(b.lambda_min, &b, n).map_err(|e| e.to_string())?;
        let at_max = moran_alternative(b.lambda_max, &b, n).map_err(|e| e.to_string())?;
        ensure(at_min == -1.0 && at_max == 1.0, || {
            format!("k={k}: endpoints {at_min}, {at_max}")
        })?;
        let at_null =
            moran_alternative(-1.0 / (n as f64 - 1.0), &b, n).map_err(|e| e.to_string())?;
        ensure(at_null.abs() <= 1e-12, || {
            format!("k={k}: I_M(-1/(n-1)) = {at_null}")
        })?;
    }
    Ok(format!(
        "1000 (y, W): I_M in [{lo:.3}, {hi:.3}], endpoints exact, null maps to 0"
    ))
}

fn ac6_rank_equivalence() -> Check {
    for k in 0..50u64 {
        let n = 5 + (k as usize) % 26;
        let w = random_weights(n, 500 + k);
        let y = random_y(n, 900 + k);
        for alt in [Alternative::Greater, Alternative::Less] {
            let by_i = permutation_test_ranked(&y, &w, 999, k, alt, RankBy::MoranI)
                .map_err(|e| e.to_string())?;
            let by_m = permutation_test_ranked(&y, &w, 999, k, alt, RankBy::Alternative)
                .map_err(|e| e.to_string())?;
            ensure(by_i.p_value == by_m.p_value, || {
                format!("k={k} {alt:?}: {} vs {}", by_i.p_value, by_m.p_value)
            })?;
        }
    }
    Ok("50 triples x {greater, less}: identical p-values".into())
}

fn ac7_null_mean() -> Check {
    let mut worst: f64 = 0.0;
    for wk in 0..10u64 {
        let w = random_weights(5, 70 + wk);
        for yk in 0..10u64 {
            let y = random_y(5, 100 * wk + yk);
            let (mean, count) = exact_null_moments(&y, &w).map_err(|e| e.to_string())?;
            ensure(count == 120, || format!("count {count}"))?;
            worst = worst.max((mean + 0.25).abs());
        }
    }
    ensure(worst <= 1e-10, || format!("exact mean off by {worst:e}"))?;
    let w = random_weights(10, 4242);
    let y = random_y(10, 4242);
    let r =
        permutation_test(&y, &w, 100_000, 1, Alternative::Greater).map_err(|e| e.to_string())?;
    let mc = (r.null_mean + 1.0 / 9.0).abs();
    ensure(mc < 0.01, || {
        format!("Monte Carlo mean {} vs -1/9", r.null_mean)
    })?;
    Ok(format!(
        "exact max dev {worst:.1e}; Monte Carlo mean {:.5} (dev {mc:.1e})",
        r.null_mean
    ))
}

fn ac8_threshold() -> Check {
    let mut notes = Vec::new();
    for (n, lo, hi) in [
        (25usize, 0.25, 0.35),
        (50, 0.15, 0.25),
        (75, 0.10, 0.18),
        (100, 0.08, 0.16),
    ] {
        let start = Instant::now();
        let est = definiteness_threshold(n, 200, 0.02, 42).map_err(|e| e.to_string())?;
        let elapsed = start.elapsed();
        ensure(est.a_star >= lo && est.a_star <= hi, || {
            format!("n={n}: a* = {:.4} outside [{lo}, {hi}]", est.a_star)
        })?;
        if n == 100 {
            ensure(elapsed < Duration::from_secs(180), || {
                format!("n=100 took {elapsed:?}")
            })?;
        }
        notes.push(format!("n={n}: {:.3} ({elapsed:.1?})", est.a_star));
    }
    Ok(notes.join(", "))
}

fn ac9_basis_independence() -> Check {
    let mut worst: f64 = 0.0;
    for k in 0..20u64 {
        let n = 3 + (k as usize * 5) % 40;
        let w = random_weights(n, 300 + k);
        let eh = reduce(&w, &helmert_basis(n).unwrap())
            .and_then(|r| r.eigen())
            .map_err(|e| e.to_string())?;
        let eg = reduce(&w, &gram_schmidt_basis(n).unwrap())
            .and_then(|r| r.eigen())
            .map_err(|e| e.to_string())?;
        worst = worst.max(max_abs_diff(&eh.values, &eg.values));
    }
    ensure(worst <= 1e-8, || {
        format!("max spectrum difference {worst:e}")
    })?;
    Ok(format!("20 matrices, max spectrum difference {worst:.1e}"))
}

fn ac10_sturm_oracle() -> Check {
    let mut worst: f64 = 0.0;
    for k in 0..50u64 {
        let a = random_symmetric(5, k);
        let want = sturm_eigenvalues(&a);
        let got = symmetric_eigen(&to_matrix(&a))
            .map_err(|e| e.to_string())?
            .values;
        worst = worst.max(max_abs_diff(&got, &want));
    }
    ensure(worst <= 1e-8, || format!("max difference {worst:e}"))?;
    Ok(format!("50 random 5x5, max difference {worst:.1e}"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("AC1  Table 1 reproduction", ac1_table1),
        ("AC2  trace identity", ac2_trace),
        ("AC3  bound attainment", ac3_attainment),
        ("AC4  complete graph", ac4_complete),
        ("AC5  I_M range and endpoints", ac5_alternative_range),
        ("AC6  monotone-transform p-values", ac6_rank_equivalence),
        ("AC7  null expectation", ac7_null_mean),
        ("AC8  definiteness threshold", ac8_threshold),
        ("AC9  basis independence", ac9_basis_independence),
        ("AC10 eigensolver vs Sturm oracle", ac10_sturm_oracle),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {name}: {detail}");
            }
        }
    }
    println!("{} of {} criteria passed", 10 - failed, 10);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
