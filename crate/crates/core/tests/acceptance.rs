//! Acceptance gate: one PASS/FAIL line per criterion, non-zero exit if any fail.
//!
//! Run with `cargo test -p coprime-spectra --test acceptance` (add `--release`
//! for realistic runtimes).

#![allow(clippy::needless_range_loop)]

mod common;

use std::f64::consts::TAU;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use coprime_spectra::bench::{run_sweep, BenchConfig};
use coprime_spectra::{
    acquire, build_matrices, coverage_ok, esprit, estimate_covariance, estimate_pipeline,
    min_snapshots, random_spec, verify_decomposition, Complex64, SamplingScheme,
};

struct Verdict {
    pass: bool,
    detail: String,
}

impl Verdict {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Self {
            pass,
            detail: detail.into(),
        }
    }
}

fn within(elapsed: Duration, limit: Duration) -> (bool, String) {
    (elapsed < limit, format!("{:.2?} (limit {:.0?})", elapsed, limit))
}

fn timed(limit: Duration, body: impl FnOnce() -> Verdict) -> Verdict {
    let start = Instant::now();
    let v = body();
    let (fast, timing) = within(start.elapsed(), limit);
    Verdict::new(v.pass && fast, format!("{}; runtime {timing}", v.detail))
}

// 1. Exhaustive Bezout decomposition for coprime pairs 2 <= a < b <= 12.
fn decomposition_exhaustive() -> Verdict {
    timed(Duration::from_secs(1), || {
        let pairs = common::coprime_pairs(12);
        let failing: Vec<_> = pairs
            .iter()
            .filter(|&&(a, b)| verify_decomposition(a, b) != Ok(true))
            .collect();
        Verdict::new(
            failing.is_empty(),
            format!("{} pairs checked, failing {failing:?}", pairs.len()),
        )
    })
}

// 2. Coverage with L = ab for pairs and L = min pair product for triples, ratios <= 7.
fn coverage_constructive() -> Verdict {
    timed(Duration::from_secs(10), || {
        let mut checked = 0;
        let mut failing = Vec::new();
        for (a, b) in common::coprime_pairs(7) {
            let scheme = SamplingScheme::new(&[a, b]).unwrap();
            let l = (a * b) as usize;
            for m in 1..=l {
                checked += 1;
                if !coverage_ok(&scheme, m, l) {
                    failing.push(format!("{scheme} M={m}"));
                }
            }
        }
        for (a, b, c) in common::coprime_triples(7) {
            let scheme = SamplingScheme::new(&[a, b, c]).unwrap();
            let l = min_snapshots(&scheme).unwrap();
            for m in 1..=l {
                checked += 1;
                if !coverage_ok(&scheme, m, l) {
                    failing.push(format!("{scheme} M={m}"));
                }
            }
        }
        Verdict::new(failing.is_empty(), format!("{checked} masks checked, failing {failing:?}"))
    })
}

// 3. Masked covariance equals the brute-force average within 1e-13 relative; exactly Hermitian.
fn covariance_oracle() -> Verdict {
    let mut rng = common::rng(3);
    let mut worst: f64 = 0.0;
    let mut hermitian = true;
    for _ in 0..200 {
        let (stream, m, l) = common::random_instance(&mut rng);
        let cov = estimate_covariance(&build_matrices(&stream, m, l).unwrap()).unwrap();
        let oracle = common::masked_average_oracle(&stream, m, l);
        for u in 0..m {
            for v in 0..m {
                let want = oracle[u][v].unwrap();
                let rel = (cov.r()[(u, v)] - want).norm() / want.norm().max(f64::MIN_POSITIVE);
                worst = worst.max(rel);
                hermitian &= cov.r()[(u, v)] == cov.r()[(v, u)].conj();
            }
        }
    }
    Verdict::new(
        worst <= 1e-13 && hermitian,
        format!("200 instances, max relative error {worst:.2e}, exactly Hermitian: {hermitian}"),
    )
}

// 4. Position matrix and zero pattern of the {3,4,5}, M=5, L=6 fixture.
fn fixture() -> Verdict {
    const G: [[u8; 6]; 5] = [
        [0, 0, 1, 1, 1, 1],
        [0, 1, 1, 1, 1, 0],
        [1, 1, 1, 1, 0, 1],
        [1, 1, 1, 0, 1, 1],
        [1, 1, 0, 1, 1, 1],
    ];
    let scheme = SamplingScheme::new(&[3, 4, 5]).unwrap();
    let spec = random_spec(2, 0.01, (0.5, 1.0), 1).unwrap().with_snr_db(10.0).unwrap();
    let stream = acquire(&spec, &scheme, 10, 1).unwrap();
    let dm = build_matrices(&stream, 5, 6).unwrap();
    let mut g_ok = true;
    let mut x_ok = true;
    for u in 0..5 {
        for v in 0..6 {
            g_ok &= dm.g()[(u, v)] == G[u][v];
            let t = u + v + 1;
            let expect = stream.get(t).unwrap_or(Complex64::ZERO);
            x_ok &= dm.x()[(u, v)] == expect && ((expect == Complex64::ZERO) == (G[u][v] == 0));
        }
    }
    Verdict::new(g_ok && x_ok, format!("G bit-exact: {g_ok}, X zero pattern: {x_ok}"))
}

// 5. Noiseless recovery through {3,4,5}, M=12, L=60, K in {1,2,3}: max error < 1e-6.
fn noiseless_recovery() -> Verdict {
    timed(Duration::from_secs(30), || {
        let scheme = SamplingScheme::new(&[3, 4, 5]).unwrap();
        let mut parts = Vec::new();
        let mut pass = true;
        for k in 1..=3 {
            let mut worst: f64 = 0.0;
            for seed in 0..100 {
                let spec = random_spec(k, 0.01, (0.5, 1.0), seed).unwrap();
                let stream = acquire(&spec, &scheme, 71, seed).unwrap();
                let err = match estimate_pipeline(&stream, 12, 60, k) {
                    Ok(est) => common::max_matched_error(est.freqs(), &spec.freqs()),
                    Err(_) => f64::INFINITY,
                };
                worst = worst.max(err);
            }
            pass &= worst < 1e-6;
            parts.push(format!("K={k} max error {worst:.2e}"));
        }
        Verdict::new(pass, parts.join(", "))
    })
}

fn cell_rmse(report: &coprime_spectra::bench::BenchReport, k: usize, snr: f64) -> f64 {
    report.cell(k, snr).and_then(|c| c.rmse).unwrap_or(f64::NAN)
}

// 6. RMSE grows with the number of tones at 20 dB.
fn k_trend() -> Verdict {
    timed(Duration::from_secs(300), || {
        let mut cfg = BenchConfig::k_sweep();
        cfg.master_seed = 6;
        let report = run_sweep(&cfg).unwrap();
        let (r1, r6) = (cell_rmse(&report, 1, 20.0), cell_rmse(&report, 6, 20.0));
        let all: Vec<String> = report
            .cells
            .iter()
            .map(|c| format!("K={}:{:.2e}", c.k, c.rmse.unwrap_or(f64::NAN)))
            .collect();
        Verdict::new(r6 > r1, format!("500 trials/cell, {}", all.join(" ")))
    })
}

// 7. With K=3, RMSE at 0 dB is at least twice RMSE at 30 dB.
fn snr_trend() -> Verdict {
    timed(Duration::from_secs(300), || {
        let mut cfg = BenchConfig::baseline(vec![3], (0..=6).map(|i| 5.0 * i as f64).collect());
        cfg.master_seed = 7;
        let report = run_sweep(&cfg).unwrap();
        let (low, high) = (cell_rmse(&report, 3, 0.0), cell_rmse(&report, 3, 30.0));
        Verdict::new(
            low >= 2.0 * high,
            format!("RMSE(0 dB) = {low:.3e}, RMSE(30 dB) = {high:.3e}, ratio {:.2}", low / high),
        )
    })
}

// 8. Same master seed, any thread count: byte-identical CSV.
fn determinism() -> Verdict {
    let mut cfg = BenchConfig::baseline(vec![1, 3, 5], vec![0.0, 20.0, f64::INFINITY]);
    cfg.trials = 60;
    cfg.master_seed = 8;
    let csv_with = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| run_sweep(&cfg).unwrap().to_csv())
    };
    let reference = csv_with(1);
    let same = [2, 3, 8].iter().all(|&n| csv_with(n) == reference);
    Verdict::new(same, format!("thread counts 1,2,3,8; {} bytes", reference.len()))
}

// 9. Scale invariance, frequency-shift covariance (1e-8) and conjugate mirroring.
fn invariances() -> Verdict {
    let scheme = SamplingScheme::new(&[3, 4, 5]).unwrap();
    let mut scale_err: f64 = 0.0;
    let mut shift_err: f64 = 0.0;
    let mut conj_err: f64 = 0.0;
    for seed in 0..50 {
        let spec = random_spec(3, 0.01, (0.5, 1.0), seed).unwrap();
        let stream = acquire(&spec, &scheme, 71, seed).unwrap();
        let cov = estimate_covariance(&build_matrices(&stream, 12, 60).unwrap()).unwrap();
        let base = esprit(&cov, 3).unwrap();
        for c in [0.5, 3.0, 1e4] {
            let scaled = esprit(&cov.scaled(c), 3).unwrap();
            scale_err = scale_err.max(common::max_matched_error(scaled.freqs(), base.freqs()));
        }

        let g = 0.05 + 0.017 * seed as f64;
        let shifted = stream.map(|t, x| x * Complex64::from_polar(1.0, TAU * g * t as f64));
        let moved = estimate_pipeline(&shifted, 12, 60, 3).unwrap();
        let want: Vec<f64> = base.freqs().iter().map(|f| (f + g).rem_euclid(1.0)).collect();
        shift_err = shift_err.max(common::max_matched_error(moved.freqs(), &want));

        let mirrored = estimate_pipeline(&stream.map(|_, x| x.conj()), 12, 60, 3).unwrap();
        let want: Vec<f64> = base.freqs().iter().map(|f| (1.0 - f).rem_euclid(1.0)).collect();
        conj_err = conj_err.max(common::max_matched_error(mirrored.freqs(), &want));
    }
    Verdict::new(
        scale_err < 1e-12 && shift_err < 1e-8 && conj_err < 1e-8,
        format!("scale {scale_err:.1e}, shift {shift_err:.1e}, conjugate {conj_err:.1e}"),
    )
}

type Criterion = (&'static str, fn() -> Verdict);

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("exhaustive lag decomposition", decomposition_exhaustive),
        ("constructive snapshot coverage", coverage_constructive),
        ("covariance brute-force oracle", covariance_oracle),
        ("position matrix fixture", fixture),
        ("noiseless exact recovery", noiseless_recovery),
        ("RMSE increases with K", k_trend),
        ("RMSE decreases with SNR", snr_trend),
        ("bench determinism across threads", determinism),
        ("subspace invariances", invariances),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let v = run();
        println!(
            "[{}] criterion {}: {name}: {}",
            if v.pass { "PASS" } else { "FAIL" },
            i + 1,
            v.detail
        );
        if !v.pass {
            failed += 1;
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
