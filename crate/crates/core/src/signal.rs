//! Multi-sinusoid signal model and coprime acquisition.
//!
//! `x(t) = sum_k A_k exp(j(2 pi f_k t + phi_k)) + w(t)` evaluated at integer
//! Nyquist-grid indices `t >= 1`, with `w` circularly-symmetric complex white
//! Gaussian noise. Frequencies are normalized to the Nyquist grid, so they are
//! only identifiable modulo 1.

use std::collections::BTreeMap;
use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{generate_indices, SamplingScheme};

/// Default number of whole-set redraws in [`random_spec`].
pub const DEFAULT_REDRAW_BUDGET: usize = 10_000;

/// `min(|x - y| mod 1, 1 - |x - y| mod 1)`.
pub fn circular_distance(x: f64, y: f64) -> f64 {
    let d = (x - y).rem_euclid(1.0);
    d.min(1.0 - d)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SinusoidParams {
    freq: f64,
    amplitude: f64,
    phase: f64,
}

impl SinusoidParams {
    pub fn new(freq: f64, amplitude: f64, phase: f64) -> Result<Self> {
        if !(freq > 0.0 && freq <= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "frequency {freq} outside (0, 1]"
            )));
        }
        if !(amplitude >= 0.0 && amplitude.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "amplitude {amplitude} must be finite and non-negative"
            )));
        }
        if !(0.0..TAU).contains(&phase) {
            return Err(Error::InvalidParameter(format!(
                "phase {phase} outside [0, 2pi)"
            )));
        }
        Ok(Self {
            freq,
            amplitude,
            phase,
        })
    }

    pub fn freq(&self) -> f64 {
        self.freq
    }

    pub fn amplitude(&self) -> f64 {
        self.amplitude
    }

    pub fn phase(&self) -> f64 {
        self.phase
    }

    pub fn angular_freq(&self) -> f64 {
        TAU * self.freq
    }

    pub fn complex_amplitude(&self) -> Complex64 {
        Complex64::from_polar(self.amplitude, self.phase)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SignalSpec {
    components: Vec<SinusoidParams>,
    noise_variance: f64,
}

impl SignalSpec {
    pub fn new(components: Vec<SinusoidParams>, noise_variance: f64) -> Result<Self> {
        if !(noise_variance >= 0.0 && noise_variance.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "noise variance {noise_variance} must be finite and non-negative"
            )));
        }
        for (i, a) in components.iter().enumerate() {
            for b in &components[i + 1..] {
                if circular_distance(a.freq, b.freq) == 0.0 {
                    return Err(Error::InvalidParameter(format!(
                        "frequencies {} and {} coincide modulo 1",
                        a.freq, b.freq
                    )));
                }
            }
        }
        Ok(Self {
            components,
            noise_variance,
        })
    }

    /// Same components with noise set from an SNR in dB, using total signal
    /// power `sum A_k^2`. `+inf` gives a noiseless spec.
    pub fn with_snr_db(self, snr_db: f64) -> Result<Self> {
        let variance = noise_variance_for_snr(self.signal_power(), snr_db)?;
        Self::new(self.components, variance)
    }

    pub fn components(&self) -> &[SinusoidParams] {
        &self.components
    }

    pub fn noise_variance(&self) -> f64 {
        self.noise_variance
    }

    pub fn num_components(&self) -> usize {
        self.components.len()
    }

    pub fn freqs(&self) -> Vec<f64> {
        self.components.iter().map(|c| c.freq).collect()
    }

    pub fn signal_power(&self) -> f64 {
        self.components.iter().map(|c| c.amplitude * c.amplitude).sum()
    }
}

/// `P_signal / 10^(snr_db / 10)`; `+inf` dB maps to zero noise.
pub fn noise_variance_for_snr(signal_power: f64, snr_db: f64) -> Result<f64> {
    if snr_db.is_nan() || snr_db == f64::NEG_INFINITY {
        return Err(Error::InvalidParameter(format!("invalid SNR {snr_db} dB")));
    }
    if snr_db == f64::INFINITY {
        return Ok(0.0);
    }
    Ok(signal_power / 10f64.powf(snr_db / 10.0))
}

/// Noiseless signal plus a caller-supplied noise sample at index `t`.
pub fn evaluate_signal(spec: &SignalSpec, t: usize, noise_sample: Complex64) -> Complex64 {
    let t = t as f64;
    spec.components
        .iter()
        .map(|c| Complex64::from_polar(c.amplitude, c.angular_freq() * t + c.phase))
        .sum::<Complex64>()
        + noise_sample
}

/// `count` i.i.d. draws of CN(0, variance): real and imaginary parts are each
/// N(0, variance / 2). Real then imaginary part per draw, from a ChaCha8
/// stream seeded by `seed`.
pub fn draw_noise(variance: f64, count: usize, seed: u64) -> Vec<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let scale = (variance / 2.0).sqrt();
    (0..count)
        .map(|_| {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            Complex64::new(scale * re, scale * im)
        })
        .collect()
}

/// Samples observed through a coprime scheme on `[1, horizon]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleStream {
    scheme: SamplingScheme,
    horizon: usize,
    samples: BTreeMap<usize, Complex64>,
}

impl SampleStream {
    /// Fails unless the key set is exactly the lattice of `scheme` on `[1, horizon]`.
    pub fn new(
        scheme: SamplingScheme,
        horizon: usize,
        samples: BTreeMap<usize, Complex64>,
    ) -> Result<Self> {
        if horizon == 0 {
            return Err(Error::InvalidParameter("horizon must be at least 1".into()));
        }
        let expected = generate_indices(&scheme, horizon);
        if !samples.keys().copied().eq(expected.iter().copied()) {
            let missing = expected.iter().find(|t| !samples.contains_key(t));
            let extra = samples.keys().find(|&&t| !scheme.is_sampled(t) || t > horizon);
            let detail = match (missing, extra) {
                (Some(t), _) => format!("index {t} missing for scheme {scheme}"),
                (None, Some(t)) => format!("index {t} is not on the lattice of {scheme} within horizon {horizon}"),
                (None, None) => "unknown".into(),
            };
            return Err(Error::IndexSetMismatch(detail));
        }
        Ok(Self {
            scheme,
            horizon,
            samples,
        })
    }

    pub fn scheme(&self) -> &SamplingScheme {
        &self.scheme
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    pub fn samples(&self) -> &BTreeMap<usize, Complex64> {
        &self.samples
    }

    pub fn get(&self, t: usize) -> Option<Complex64> {
        self.samples.get(&t).copied()
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Applies `f(t, x)` to every sample, keeping the index set.
    pub fn map(&self, mut f: impl FnMut(usize, Complex64) -> Complex64) -> Self {
        Self {
            scheme: self.scheme.clone(),
            horizon: self.horizon,
            samples: self.samples.iter().map(|(&t, &x)| (t, f(t, x))).collect(),
        }
    }
}

/// Runs every channel of `scheme` over `[1, horizon]`. One noise draw per
/// observed index, in ascending index order.
pub fn acquire(
    spec: &SignalSpec,
    scheme: &SamplingScheme,
    horizon: usize,
    seed: u64,
) -> Result<SampleStream> {
    if horizon == 0 {
        return Err(Error::InvalidParameter("horizon must be at least 1".into()));
    }
    let indices = generate_indices(scheme, horizon);
    let noise = draw_noise(spec.noise_variance, indices.len(), seed);
    let samples = indices
        .iter()
        .zip(noise)
        .map(|(&t, w)| (t, evaluate_signal(spec, t, w)))
        .collect();
    SampleStream::new(scheme.clone(), horizon, samples)
}

/// Random `k`-tone spec with pairwise circular frequency gaps above `min_gap`.
/// Frequencies are uniform on (0, 1], amplitudes uniform on `amp_range`,
/// phases uniform on [0, 2pi). Noise variance is zero; see
/// [`SignalSpec::with_snr_db`].
pub fn random_spec(k: usize, min_gap: f64, amp_range: (f64, f64), seed: u64) -> Result<SignalSpec> {
    random_spec_with_budget(k, min_gap, amp_range, seed, DEFAULT_REDRAW_BUDGET)
}

pub fn random_spec_with_budget(
    k: usize,
    min_gap: f64,
    amp_range: (f64, f64),
    seed: u64,
    max_redraws: usize,
) -> Result<SignalSpec> {
    let (lo, hi) = amp_range;
    if !(min_gap >= 0.0 && min_gap.is_finite()) {
        return Err(Error::InvalidParameter(format!("min gap {min_gap} must be non-negative")));
    }
    if !(lo >= 0.0 && lo <= hi && hi.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "amplitude range [{lo}, {hi}] is invalid"
        )));
    }
    if k as f64 * min_gap >= 1.0 {
        return Err(Error::PackingInfeasible { k, min_gap });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut freqs = Vec::with_capacity(k);
    let mut attempts = 0;
    loop {
        if attempts > max_redraws {
            return Err(Error::RejectionBudgetExceeded(max_redraws));
        }
        attempts += 1;
        freqs.clear();
        // 1 - U[0,1) is uniform on (0, 1]
        freqs.extend((0..k).map(|_| 1.0 - rng.random::<f64>()));
        let separated = freqs.iter().enumerate().all(|(i, &a)| {
            freqs[i + 1..]
                .iter()
                .all(|&b| circular_distance(a, b) > min_gap)
        });
        if separated {
            break;
        }
    }
    let components = freqs
        .iter()
        .map(|&f| {
            let amp = if hi > lo { rng.random_range(lo..=hi) } else { lo };
            let phase = rng.random_range(0.0..TAU);
            SinusoidParams::new(f, amp, phase)
        })
        .collect::<Result<Vec<_>>>()?;
    SignalSpec::new(components, 0.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tone(f: f64, a: f64, p: f64) -> SinusoidParams {
        SinusoidParams::new(f, a, p).unwrap()
    }

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() < tol
    }

    #[test]
    fn params_validation() {
        assert!(SinusoidParams::new(0.0, 1.0, 0.0).is_err());
        assert!(SinusoidParams::new(1.0, 1.0, 0.0).is_ok());
        assert!(SinusoidParams::new(0.5, -1.0, 0.0).is_err());
        assert!(SinusoidParams::new(0.5, 1.0, TAU).is_err());
        assert!(SignalSpec::new(vec![tone(0.2, 1.0, 0.0), tone(0.2, 0.5, 1.0)], 0.0).is_err());
        assert!(SignalSpec::new(vec![], -1.0).is_err());
    }

    #[test]
    fn evaluate_examples() {
        let empty = SignalSpec::new(vec![], 0.0).unwrap();
        assert_eq!(evaluate_signal(&empty, 5, Complex64::ZERO), Complex64::ZERO);

        let half = SignalSpec::new(vec![tone(0.5, 1.0, 0.0)], 0.0).unwrap();
        assert!(close(evaluate_signal(&half, 2, Complex64::ZERO), Complex64::ONE, 1e-15));

        let two = SignalSpec::new(vec![tone(0.25, 1.0, 0.0), tone(0.5, 1.0, 0.0)], 0.0).unwrap();
        assert!(close(
            evaluate_signal(&two, 3, Complex64::ZERO),
            Complex64::new(-1.0, -1.0),
            1e-14
        ));

        let w = Complex64::new(0.25, -2.0);
        assert_eq!(evaluate_signal(&empty, 1, w), w);
    }

    #[test]
    fn noise_statistics() {
        assert_eq!(draw_noise(0.0, 3, 99), vec![Complex64::ZERO; 3]);

        let n = 100_000;
        for (var, tol) in [(1.0, 0.03), (4.0, 0.12)] {
            let w = draw_noise(var, n, 7);
            let mean = w.iter().sum::<Complex64>() / n as f64;
            let power = w.iter().map(|z| (z - mean).norm_sqr()).sum::<f64>() / (n - 1) as f64;
            assert!(mean.norm() < 0.02 * var.sqrt(), "mean {mean}");
            assert!((power - var).abs() < tol, "variance {power}");
        }
    }

    #[test]
    fn noise_is_seed_stable_across_counts() {
        let short = draw_noise(1.0, 10, 3);
        let long = draw_noise(1.0, 50, 3);
        assert_eq!(short[..], long[..10]);
        assert_ne!(draw_noise(1.0, 10, 4), short);
    }

    #[test]
    fn acquire_examples() {
        let scheme = SamplingScheme::new(&[3, 4, 5]).unwrap();
        let empty = SignalSpec::new(vec![], 0.0).unwrap();
        let s = acquire(&empty, &scheme, 12, 1).unwrap();
        assert_eq!(s.samples().keys().copied().collect::<Vec<_>>(), vec![3, 4, 5, 6, 8, 9, 10, 12]);
        assert!(s.samples().values().all(|v| *v == Complex64::ZERO));

        let full = SamplingScheme::new(&[1]).unwrap();
        let half = SignalSpec::new(vec![tone(0.5, 1.0, 0.0)], 0.0).unwrap();
        let s = acquire(&half, &full, 4, 0).unwrap();
        for (t, want) in [(1, -1.0), (2, 1.0), (3, -1.0), (4, 1.0)] {
            assert!(close(s.get(t).unwrap(), Complex64::new(want, 0.0), 1e-15));
        }

        assert!(acquire(&half, &full, 0, 0).is_err());
    }

    #[test]
    fn stream_rejects_off_lattice_keys() {
        let scheme = SamplingScheme::new(&[3, 4]).unwrap();
        let mut samples: BTreeMap<usize, Complex64> =
            generate_indices(&scheme, 12).into_iter().map(|t| (t, Complex64::ZERO)).collect();
        assert!(SampleStream::new(scheme.clone(), 12, samples.clone()).is_ok());
        samples.insert(7, Complex64::ZERO);
        assert!(matches!(
            SampleStream::new(scheme.clone(), 12, samples.clone()),
            Err(Error::IndexSetMismatch(_))
        ));
        samples.remove(&7);
        samples.remove(&8);
        assert!(SampleStream::new(scheme, 12, samples).is_err());
    }

    #[test]
    fn random_spec_examples() {
        let one = random_spec(1, 0.01, (0.5, 1.0), 5).unwrap();
        let c = one.components()[0];
        assert!((0.5..=1.0).contains(&c.amplitude()));
        assert!(c.freq() > 0.0 && c.freq() <= 1.0);

        for seed in 0..50 {
            let three = random_spec(3, 0.01, (0.5, 1.0), seed).unwrap();
            let f = three.freqs();
            for i in 0..3 {
                for j in i + 1..3 {
                    assert!(circular_distance(f[i], f[j]) > 0.01);
                }
            }
        }

        assert_eq!(
            random_spec(200, 0.01, (0.5, 1.0), 0),
            Err(Error::PackingInfeasible { k: 200, min_gap: 0.01 })
        );
        assert_eq!(
            random_spec_with_budget(45, 0.02, (0.5, 1.0), 0, 10),
            Err(Error::RejectionBudgetExceeded(10))
        );
        assert_eq!(random_spec(3, 0.01, (0.5, 1.0), 9), random_spec(3, 0.01, (0.5, 1.0), 9));
    }

    #[test]
    fn snr_to_noise() {
        assert_eq!(noise_variance_for_snr(2.0, f64::INFINITY), Ok(0.0));
        assert!((noise_variance_for_snr(2.0, 20.0).unwrap() - 0.02).abs() < 1e-15);
        assert!(noise_variance_for_snr(2.0, f64::NAN).is_err());
        let spec = SignalSpec::new(vec![tone(0.1, 1.0, 0.0), tone(0.3, 1.0, 0.0)], 0.0)
            .unwrap()
            .with_snr_db(0.0)
            .unwrap();
        assert!((spec.noise_variance() - 2.0).abs() < 1e-15);
    }

    #[test]
    fn circular_distance_wraps() {
        assert!((circular_distance(0.99, 0.01) - 0.02).abs() < 1e-12);
        assert_eq!(circular_distance(1.0, 0.0), 0.0);
        assert!((circular_distance(0.1, 0.6) - 0.5).abs() < 1e-15);
    }
}
