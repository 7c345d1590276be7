//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Each exported operation has a plain Rust counterpart returning
//! `coprime_spectra::Result`, so the logic can be tested on the host; the
//! `#[wasm_bindgen]` wrappers only convert errors to `JsError`.

use coprime_spectra::bench::{circular_match, rmse, run_sweep, BenchConfig};
use coprime_spectra::{
    acquire, build_matrices, coverage_counts, esprit, estimate_covariance, generate_indices,
    min_snapshots, music_peaks, music_pseudospectrum, Error, Result, SamplingScheme, SignalSpec,
    SinusoidParams,
};
use wasm_bindgen::prelude::*;

fn scheme_from(ratios: &[u32]) -> Result<SamplingScheme> {
    let ratios: Vec<u64> = ratios.iter().map(|&r| u64::from(r)).collect();
    SamplingScheme::new(&ratios)
}

/// Position counts of the masked covariance for one scheme and window.
#[wasm_bindgen]
#[derive(Debug, Clone)]
pub struct CoverageView {
    m: usize,
    counts: Vec<u32>,
    indices: Vec<u32>,
    min_snapshots: Option<usize>,
}

#[wasm_bindgen]
impl CoverageView {
    #[wasm_bindgen(getter)]
    pub fn m(&self) -> usize {
        self.m
    }

    /// Row-major `M x M` counts.
    #[wasm_bindgen(getter)]
    pub fn counts(&self) -> Vec<u32> {
        self.counts.clone()
    }

    /// Observed grid indices in `[1, M + L - 1]`.
    #[wasm_bindgen(getter)]
    pub fn indices(&self) -> Vec<u32> {
        self.indices.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn zero_entries(&self) -> usize {
        self.counts.iter().filter(|&&c| c == 0).count()
    }

    /// Snapshot count that guarantees full coverage, or 0 when none does.
    #[wasm_bindgen(getter)]
    pub fn min_snapshots(&self) -> usize {
        self.min_snapshots.unwrap_or(0)
    }
}

pub fn coverage_view(ratios: &[u32], m: usize, l: usize) -> Result<CoverageView> {
    let scheme = scheme_from(ratios)?;
    if m == 0 || l == 0 {
        return Err(Error::InvalidParameter("M and L must be positive".into()));
    }
    let p = coverage_counts(&scheme, m, l);
    Ok(CoverageView {
        m,
        counts: p.transpose().iter().copied().collect(),
        indices: generate_indices(&scheme, m + l - 1).into_iter().map(|t| t as u32).collect(),
        min_snapshots: min_snapshots(&scheme).ok(),
    })
}

#[wasm_bindgen]
pub fn coverage(ratios: &[u32], m: usize, l: usize) -> std::result::Result<CoverageView, JsError> {
    coverage_view(ratios, m, l).map_err(|e| JsError::new(&e.to_string()))
}

/// One simulated acquisition with its ESPRIT estimate and MUSIC pseudospectrum.
#[wasm_bindgen]
#[derive(Debug, Clone)]
pub struct EstimateView {
    grid: Vec<f64>,
    spectrum_db: Vec<f64>,
    esprit: Vec<f64>,
    music: Vec<f64>,
    truths: Vec<f64>,
    rmse: f64,
    samples: usize,
}

#[wasm_bindgen]
impl EstimateView {
    #[wasm_bindgen(getter)]
    pub fn grid(&self) -> Vec<f64> {
        self.grid.clone()
    }

    /// Pseudospectrum in dB relative to its maximum.
    #[wasm_bindgen(getter)]
    pub fn spectrum_db(&self) -> Vec<f64> {
        self.spectrum_db.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn esprit(&self) -> Vec<f64> {
        self.esprit.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn music(&self) -> Vec<f64> {
        self.music.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn truths(&self) -> Vec<f64> {
        self.truths.clone()
    }

    /// ESPRIT RMSE against the true frequencies under circular matching.
    #[wasm_bindgen(getter)]
    pub fn rmse(&self) -> f64 {
        self.rmse
    }

    #[wasm_bindgen(getter)]
    pub fn samples(&self) -> usize {
        self.samples
    }
}

/// Tones get phases `0, 1, 2, ...` radians. A non-finite `snr_db` means no noise.
#[allow(clippy::too_many_arguments)]
pub fn estimate_view(
    ratios: &[u32],
    m: usize,
    l: usize,
    freqs: &[f64],
    amps: &[f64],
    snr_db: f64,
    seed: u32,
    grid_size: usize,
) -> Result<EstimateView> {
    let scheme = scheme_from(ratios)?;
    if freqs.is_empty() {
        return Err(Error::InvalidParameter("at least one tone is required".into()));
    }
    if amps.len() != freqs.len() {
        return Err(Error::LengthMismatch(amps.len(), freqs.len()));
    }
    let tones = freqs
        .iter()
        .zip(amps)
        .enumerate()
        .map(|(i, (&f, &a))| SinusoidParams::new(f, a, i as f64))
        .collect::<Result<Vec<_>>>()?;
    let mut spec = SignalSpec::new(tones, 0.0)?;
    if snr_db.is_finite() {
        spec = spec.with_snr_db(snr_db)?;
    }
    let k = spec.num_components();
    let stream = acquire(&spec, &scheme, m + l - 1, u64::from(seed))?;
    let cov = estimate_covariance(&build_matrices(&stream, m, l)?)?;
    let est = esprit(&cov, k)?;
    let spectrum = music_pseudospectrum(&cov, k, grid_size)?;
    let peak = spectrum.iter().map(|&(_, p)| p).fold(f64::MIN_POSITIVE, f64::max);
    let truths = spec.freqs().iter().map(|f| f.rem_euclid(1.0)).collect::<Vec<_>>();
    Ok(EstimateView {
        grid: spectrum.iter().map(|&(f, _)| f).collect(),
        spectrum_db: spectrum.iter().map(|&(_, p)| 10.0 * (p / peak).log10()).collect(),
        music: music_peaks(&spectrum, k),
        rmse: rmse(&circular_match(est.freqs(), &truths)?)?,
        esprit: est.freqs().to_vec(),
        truths,
        samples: stream.len(),
    })
}

#[wasm_bindgen]
#[allow(clippy::too_many_arguments)]
pub fn estimate(
    ratios: &[u32],
    m: usize,
    l: usize,
    freqs: &[f64],
    amps: &[f64],
    snr_db: f64,
    seed: u32,
    grid_size: usize,
) -> std::result::Result<EstimateView, JsError> {
    estimate_view(ratios, m, l, freqs, amps, snr_db, seed, grid_size)
        .map_err(|e| JsError::new(&e.to_string()))
}

/// Monte Carlo RMSE at each SNR for `k` random tones; `NaN` where every trial failed.
pub fn rmse_curve(
    ratios: &[u32],
    m: usize,
    l: usize,
    k: usize,
    snr_values: &[f64],
    trials: usize,
    seed: u32,
) -> Result<Vec<f64>> {
    let mut config = BenchConfig::baseline(vec![k], snr_values.to_vec());
    config.scheme = scheme_from(ratios)?;
    config.m = m;
    config.l = l;
    config.trials = trials;
    config.master_seed = u64::from(seed);
    let report = run_sweep(&config)?;
    Ok(report.cells.iter().map(|c| c.rmse.unwrap_or(f64::NAN)).collect())
}

#[wasm_bindgen]
pub fn rmse_vs_snr(
    ratios: &[u32],
    m: usize,
    l: usize,
    k: usize,
    snr_values: &[f64],
    trials: usize,
    seed: u32,
) -> std::result::Result<Vec<f64>, JsError> {
    rmse_curve(ratios, m, l, k, snr_values, trials, seed).map_err(|e| JsError::new(&e.to_string()))
}
