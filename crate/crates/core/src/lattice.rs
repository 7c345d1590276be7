//! Integer machinery for coprime sampling.
//!
//! A channel with undersampling ratio `r` observes the Nyquist-grid indices
//! `r, 2r, 3r, ...`. The union over all channels of a [`SamplingScheme`] is the
//! sampling lattice. Pairwise coprimality of the ratios is what lets the
//! differences of lattice points cover every lag, which in turn keeps every
//! entry of the covariance count matrix non-zero once enough snapshots are
//! taken (see [`min_snapshots`]).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

/// Pairwise-coprime undersampling ratios, stored sorted ascending.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawScheme")]
pub struct SamplingScheme {
    ratios: Vec<u64>,
    nyquist_rate: f64,
}

#[derive(Deserialize)]
struct RawScheme {
    ratios: Vec<u64>,
    #[serde(default = "default_rate")]
    nyquist_rate: f64,
}

fn default_rate() -> f64 {
    1.0
}

impl TryFrom<RawScheme> for SamplingScheme {
    type Error = Error;

    fn try_from(raw: RawScheme) -> Result<Self> {
        Self::new(&raw.ratios)?.with_nyquist_rate(raw.nyquist_rate)
    }
}

impl SamplingScheme {
    /// Validates and normalizes a list of ratios. Duplicate 1s collapse into one
    /// channel; any other repeated value is reported as a non-coprime pair.
    pub fn new(ratios: &[u64]) -> Result<Self> {
        if ratios.is_empty() {
            return Err(Error::EmptyScheme);
        }
        if let Some(&bad) = ratios.iter().find(|&&r| r == 0) {
            return Err(Error::NonPositive(bad));
        }
        for (i, &a) in ratios.iter().enumerate() {
            for &b in &ratios[i + 1..] {
                let g = gcd(a, b);
                if g > 1 {
                    return Err(Error::NotCoprime(a, b, g));
                }
            }
        }
        let mut sorted = ratios.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        Ok(Self {
            ratios: sorted,
            nyquist_rate: 1.0,
        })
    }

    /// Attaches the Nyquist-grid rate `F_H` (samples/second). Metadata only.
    pub fn with_nyquist_rate(mut self, rate: f64) -> Result<Self> {
        if !(rate.is_finite() && rate > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "nyquist rate must be positive and finite (got {rate})"
            )));
        }
        self.nyquist_rate = rate;
        Ok(self)
    }

    pub fn ratios(&self) -> &[u64] {
        &self.ratios
    }

    pub fn nyquist_rate(&self) -> f64 {
        self.nyquist_rate
    }

    /// Per-channel ADC rates `F_H / r`.
    pub fn channel_rates(&self) -> Vec<f64> {
        self.ratios
            .iter()
            .map(|&r| self.nyquist_rate / r as f64)
            .collect()
    }

    pub fn num_channels(&self) -> usize {
        self.ratios.len()
    }

    /// Period of the sampling lattice.
    pub fn period(&self) -> u64 {
        self.ratios.iter().fold(1, |acc, &r| lcm(acc, r))
    }

    pub fn is_sampled(&self, t: usize) -> bool {
        t >= 1 && self.ratios.iter().any(|&r| (t as u64).is_multiple_of(r))
    }

    /// First lattice index strictly greater than `t`.
    pub fn next_index_after(&self, t: usize) -> usize {
        self.ratios
            .iter()
            .map(|&r| ((t as u64 / r + 1) * r) as usize)
            .min()
            .expect("scheme is non-empty")
    }
}

impl std::fmt::Display for SamplingScheme {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.ratios.iter().map(u64::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Shorthand for [`SamplingScheme::new`].
pub fn validate_coprime(ratios: &[u64]) -> Result<SamplingScheme> {
    SamplingScheme::new(ratios)
}

/// Lattice indices in `[1, horizon]`, ascending.
pub fn generate_indices(scheme: &SamplingScheme, horizon: usize) -> Vec<usize> {
    let mut seen = vec![false; horizon + 1];
    for &r in scheme.ratios() {
        let r = r as usize;
        let mut t = r;
        while t <= horizon {
            seen[t] = true;
            t += r;
        }
    }
    seen.iter()
        .enumerate()
        .skip(1)
        .filter_map(|(t, &hit)| hit.then_some(t))
        .collect()
}

/// Inverse of `a` modulo `b` via the extended Euclidean algorithm.
fn mod_inverse(a: u64, b: u64) -> Option<u64> {
    if b == 1 {
        return Some(0);
    }
    let (mut old_r, mut r) = (a as i128, b as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    (old_r == 1).then(|| old_s.rem_euclid(b as i128) as u64)
}

/// Writes `m = a*n1 - b*n2` with `0 <= n1 <= 2b-1` and `0 <= n2 <= a-1`.
///
/// `n1` is pinned modulo `b` to `m * a^-1`, so only two candidates lie in the
/// allowed range; the smaller one that yields an in-range `n2` is returned.
pub fn bezout_decompose(a: u64, b: u64, m: u64) -> Result<(u64, u64)> {
    if a == 0 {
        return Err(Error::NonPositive(a));
    }
    if b == 0 {
        return Err(Error::NonPositive(b));
    }
    let g = gcd(a, b);
    if g != 1 {
        return Err(Error::NotCoprime(a, b, g));
    }
    let max = a * b - 1;
    if m > max {
        return Err(Error::OutOfRange { m, max });
    }
    let inv = mod_inverse(a % b, b).expect("coprime inputs have an inverse");
    let base = (m % b) * inv % b;
    for n1 in [base, base + b] {
        let lhs = (a * n1) as i128 - m as i128;
        if lhs < 0 {
            continue;
        }
        let n2 = (lhs / b as i128) as u64;
        if n2 < a {
            return Ok((n1, n2));
        }
    }
    unreachable!("no decomposition for a={a}, b={b}, m={m}")
}

/// Checks the decomposition for every `m` in `[0, ab-1]`.
pub fn verify_decomposition(a: u64, b: u64) -> Result<bool> {
    let g = gcd(a, b);
    if g != 1 {
        return Err(Error::NotCoprime(a, b, g));
    }
    Ok((0..a * b).all(|m| match bezout_decompose(a, b, m) {
        Ok((n1, n2)) => n1 < 2 * b && n2 < a && (a * n1) as i128 - (b * n2) as i128 == m as i128,
        Err(_) => false,
    }))
}

/// Sufficient snapshot count for a fully populated count matrix: 1 for a
/// full-rate channel, otherwise the smallest pairwise ratio product.
pub fn min_snapshots(scheme: &SamplingScheme) -> Result<usize> {
    let r = scheme.ratios();
    if r[0] == 1 {
        return Ok(1);
    }
    if r.len() < 2 {
        return Err(Error::InsufficientChannels(r[0]));
    }
    // sorted ascending, so the two smallest ratios give the minimum product
    Ok((r[0] * r[1]) as usize)
}
