#![allow(dead_code)]

use std::collections::BTreeMap;

use coprime_spectra::lattice::gcd;
use coprime_spectra::{
    circular_distance, coverage_ok, generate_indices, Complex64, SampleStream, SamplingScheme,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Mean of `x(t+u) conj(x(t+v))` over window starts `t = 1..=l` where both
/// indices were observed, straight from the stream (no matrices).
pub fn masked_average_oracle(stream: &SampleStream, m: usize, l: usize) -> Vec<Vec<Option<Complex64>>> {
    (0..m)
        .map(|u| {
            (0..m)
                .map(|v| {
                    let mut sum = Complex64::ZERO;
                    let mut count = 0usize;
                    for t in 1..=l {
                        if let (Some(a), Some(b)) = (stream.get(t + u), stream.get(t + v)) {
                            sum += a * b.conj();
                            count += 1;
                        }
                    }
                    (count > 0).then(|| sum / count as f64)
                })
                .collect()
        })
        .collect()
}

/// All pairwise-coprime ratio sets with entries `2..=max` and 2 or 3 members.
pub fn coprime_pairs(max: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    for a in 2..=max {
        for b in a + 1..=max {
            if gcd(a, b) == 1 {
                out.push((a, b));
            }
        }
    }
    out
}

pub fn coprime_triples(max: u64) -> Vec<(u64, u64, u64)> {
    let mut out = Vec::new();
    for (a, b) in coprime_pairs(max) {
        for c in b + 1..=max {
            if gcd(a, c) == 1 && gcd(b, c) == 1 {
                out.push((a, b, c));
            }
        }
    }
    out
}

const SMALL_SCHEMES: &[&[u64]] = &[
    &[1],
    &[2, 3],
    &[3, 4],
    &[2, 5],
    &[4, 5],
    &[3, 4, 5],
    &[2, 3, 5],
    &[3, 5, 7],
    &[1, 4],
    &[2, 3, 5, 7],
];

/// Random covered instance: scheme, M <= 8, L <= 30, i.i.d. complex samples.
pub fn random_instance(rng: &mut ChaCha8Rng) -> (SampleStream, usize, usize) {
    loop {
        let scheme = SamplingScheme::new(SMALL_SCHEMES[rng.random_range(0..SMALL_SCHEMES.len())]).unwrap();
        let m = rng.random_range(1..=8);
        let l = rng.random_range(1..=30);
        if !coverage_ok(&scheme, m, l) {
            continue;
        }
        let horizon = m + l - 1 + rng.random_range(0..5);
        let samples: BTreeMap<usize, Complex64> = generate_indices(&scheme, horizon)
            .into_iter()
            .map(|t| {
                let re: f64 = rng.random_range(-3.0..3.0);
                let im: f64 = rng.random_range(-3.0..3.0);
                (t, Complex64::new(re, im))
            })
            .collect();
        return (SampleStream::new(scheme, horizon, samples).unwrap(), m, l);
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Largest circular error after pairing each truth with its nearest estimate
/// over all permutations (tiny K only).
pub fn max_matched_error(estimates: &[f64], truths: &[f64]) -> f64 {
    fn go(est: &[f64], truths: &[f64], used: &mut Vec<bool>, i: usize, worst: f64, best: &mut f64) {
        if i == est.len() {
            *best = best.min(worst);
            return;
        }
        for j in 0..truths.len() {
            if !used[j] {
                used[j] = true;
                go(est, truths, used, i + 1, worst.max(circular_distance(est[i], truths[j])), best);
                used[j] = false;
            }
        }
    }
    assert_eq!(estimates.len(), truths.len());
    let mut best = f64::INFINITY;
    go(estimates, truths, &mut vec![false; truths.len()], 0, 0.0, &mut best);
    best
}
