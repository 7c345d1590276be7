//! Subspace frequency estimators operating on a [`CovarianceEstimate`].
//!
//! ESPRIT exploits the shift structure of the signal subspace: for a
//! Vandermonde steering matrix `A`, dropping the last row and dropping the
//! first row differ by the diagonal rotation `diag(exp(j 2 pi f_k))`. The
//! rotation is recovered by least squares and its eigenvalue phases are the
//! frequencies. MUSIC is provided as an independent cross-check.

use std::f64::consts::TAU;

use nalgebra::{DMatrix, DVector, Schur, SymmetricEigen};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::covariance::{build_matrices, estimate_covariance, CovarianceEstimate};
use crate::error::{Error, Result};
use crate::lattice::min_snapshots;
use crate::signal::SampleStream;

/// Relative singular-value floor below which the shifted subspace is rejected.
pub const DEGENERACY_TOLERANCE: f64 = 1e-10;

const SCHUR_MAX_ITERATIONS: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrequencyEstimate {
    freqs: Vec<f64>,
}

impl FrequencyEstimate {
    /// Reduces every value into [0, 1) and sorts ascending.
    pub fn new(freqs: Vec<f64>) -> Result<Self> {
        if freqs.is_empty() {
            return Err(Error::ZeroOrder);
        }
        if let Some(bad) = freqs.iter().find(|f| !f.is_finite()) {
            return Err(Error::InvalidParameter(format!("non-finite frequency {bad}")));
        }
        let mut freqs: Vec<f64> = freqs.into_iter().map(wrap_unit).collect();
        freqs.sort_by(f64::total_cmp);
        Ok(Self { freqs })
    }

    pub fn freqs(&self) -> &[f64] {
        &self.freqs
    }

    pub fn k(&self) -> usize {
        self.freqs.len()
    }
}

fn wrap_unit(f: f64) -> f64 {
    let w = f.rem_euclid(1.0);
    // rem_euclid can round up to exactly 1.0 for tiny negative inputs
    if w >= 1.0 {
        0.0
    } else {
        w
    }
}

fn check_order(k: usize, m: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::ZeroOrder);
    }
    if k >= m {
        return Err(Error::OrderTooLarge { k, m });
    }
    Ok(())
}

/// Eigenpairs of a Hermitian matrix, ordered by descending eigenvalue with
/// ties broken by ascending solver index.
fn sorted_eigenpairs(r: &DMatrix<Complex64>) -> (Vec<f64>, DMatrix<Complex64>) {
    let eig = SymmetricEigen::new(r.clone());
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = DMatrix::from_fn(r.nrows(), order.len(), |row, col| {
        eig.eigenvectors[(row, order[col])]
    });
    (values, vectors)
}

/// LS-ESPRIT on a covariance estimate; returns `k` frequencies in [0, 1).
pub fn esprit(cov: &CovarianceEstimate, k: usize) -> Result<FrequencyEstimate> {
    let m = cov.dim();
    check_order(k, m)?;
    let (_, vectors) = sorted_eigenpairs(cov.r());
    let signal = vectors.columns(0, k);
    let upper = signal.rows(0, m - 1).into_owned();
    let lower = signal.rows(1, m - 1).into_owned();

    let svd = upper.svd(true, true);
    let s_max = svd.singular_values.max();
    let s_min = svd.singular_values.min();
    let ratio = if s_max > 0.0 { s_min / s_max } else { 0.0 };
    if ratio.is_nan() || ratio < DEGENERACY_TOLERANCE {
        return Err(Error::DegenerateSubspace(ratio));
    }
    let rotation = svd
        .solve(&lower, 0.0)
        .map_err(|_| Error::DegenerateSubspace(ratio))?;

    let eigenvalues = rotation_eigenvalues(rotation)?;
    FrequencyEstimate::new(eigenvalues.iter().map(|z| z.arg() / TAU).collect())
}

fn rotation_eigenvalues(rotation: DMatrix<Complex64>) -> Result<DVector<Complex64>> {
    if rotation.nrows() == 1 {
        return Ok(DVector::from_element(1, rotation[(0, 0)]));
    }
    Schur::try_new(rotation, f64::EPSILON, SCHUR_MAX_ITERATIONS)
        .and_then(|schur| schur.eigenvalues())
        .ok_or(Error::EigenFailure)
}

/// Steering vector `exp(j 2 pi f n)`, `n = 0 .. m-1`.
pub fn steering_vector(freq: f64, m: usize) -> DVector<Complex64> {
    DVector::from_fn(m, |n, _| Complex64::from_polar(1.0, TAU * freq * n as f64))
}

/// MUSIC pseudospectrum `1 / |E_n^H v(f)|^2` on the grid `f = i / grid_size`.
pub fn music_pseudospectrum(
    cov: &CovarianceEstimate,
    k: usize,
    grid_size: usize,
) -> Result<Vec<(f64, f64)>> {
    let m = cov.dim();
    check_order(k, m)?;
    if grid_size < 2 * k {
        return Err(Error::InvalidParameter(format!(
            "grid size {grid_size} must be at least 2k = {}",
            2 * k
        )));
    }
    let (_, vectors) = sorted_eigenpairs(cov.r());
    let noise = vectors.columns(k, m - k);
    Ok((0..grid_size)
        .map(|i| {
            let f = i as f64 / grid_size as f64;
            let v = steering_vector(f, m);
            let proj = noise.ad_mul(&v);
            (f, 1.0 / proj.norm_squared())
        })
        .collect())
}

/// Frequencies of the `k` largest circular local maxima of a pseudospectrum,
/// sorted ascending. Plateaus count once, at their first grid point.
pub fn music_peaks(spectrum: &[(f64, f64)], k: usize) -> Vec<f64> {
    let n = spectrum.len();
    if n < 3 {
        return spectrum.iter().take(k).map(|&(f, _)| f).collect();
    }
    let mut peaks: Vec<(f64, f64)> = (0..n)
        .filter(|&i| {
            let prev = spectrum[(i + n - 1) % n].1;
            let next = spectrum[(i + 1) % n].1;
            let here = spectrum[i].1;
            here > prev && here >= next
        })
        .map(|i| spectrum[i])
        .collect();
    peaks.sort_by(|a, b| b.1.total_cmp(&a.1));
    let mut freqs: Vec<f64> = peaks.into_iter().take(k).map(|(f, _)| f).collect();
    freqs.sort_by(f64::total_cmp);
    freqs
}

/// Data matrix, masked covariance and ESPRIT in one call.
pub fn estimate_pipeline(
    stream: &SampleStream,
    m: usize,
    l: usize,
    k: usize,
) -> Result<FrequencyEstimate> {
    check_order(k, m)?;
    let dm = build_matrices(stream, m, l)?;
    let cov = estimate_covariance(&dm).map_err(|e| match e {
        Error::ZeroCoverage { row, col, .. } => Error::ZeroCoverage {
            row,
            col,
            min_snapshots: min_snapshots(stream.scheme()).ok(),
        },
        other => other,
    })?;
    esprit(&cov, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::SamplingScheme;
    use crate::signal::{acquire, circular_distance, SignalSpec, SinusoidParams};

    fn rank_one_plus_identity(f: f64, amp: f64, m: usize) -> CovarianceEstimate {
        let v = steering_vector(f, m);
        let r = DMatrix::identity(m, m) + &v * v.adjoint() * Complex64::from(amp * amp);
        CovarianceEstimate::from_matrix(r).unwrap()
    }

    #[test]
    fn single_tone_full_rate() {
        let spec = SignalSpec::new(vec![SinusoidParams::new(0.25, 1.0, 0.0).unwrap()], 0.0).unwrap();
        let s = SamplingScheme::new(&[1]).unwrap();
        let stream = acquire(&spec, &s, 8 + 32 - 1, 0).unwrap();
        let est = estimate_pipeline(&stream, 8, 32, 1).unwrap();
        assert!(circular_distance(est.freqs()[0], 0.25) < 1e-9);
    }

    #[test]
    fn rank_one_grid_recovery() {
        for i in 0..100 {
            let f = i as f64 / 100.0;
            let est = esprit(&rank_one_plus_identity(f, 1.3, 6), 1).unwrap();
            assert!(circular_distance(est.freqs()[0], f) < 1e-9, "f={f} got {:?}", est.freqs());
        }
    }

    #[test]
    fn order_checks() {
        let cov = rank_one_plus_identity(0.1, 1.0, 4);
        assert_eq!(esprit(&cov, 0), Err(Error::ZeroOrder));
        assert_eq!(esprit(&cov, 4), Err(Error::OrderTooLarge { k: 4, m: 4 }));
        assert!(esprit(&cov, 3).is_ok());
        assert!(music_pseudospectrum(&cov, 4, 64).is_err());
        assert!(music_pseudospectrum(&cov, 2, 3).is_err());
    }

    #[test]
    fn subspace_on_last_row_is_degenerate() {
        // top eigenvector is e_4, so dropping the last row leaves nothing
        let mut r = DMatrix::zeros(4, 4);
        r[(3, 3)] = Complex64::ONE;
        let cov = CovarianceEstimate::from_matrix(r).unwrap();
        assert!(matches!(esprit(&cov, 1), Err(Error::DegenerateSubspace(_))));
    }

    #[test]
    fn music_peak_at_tone() {
        let cov = rank_one_plus_identity(0.25, 1.0, 8);
        let spec = music_pseudospectrum(&cov, 1, 1024).unwrap();
        let (argmax, _) = spec.iter().copied().max_by(|a, b| a.1.total_cmp(&b.1)).unwrap();
        assert_eq!(argmax, 0.25);
        assert_eq!(music_peaks(&spec, 1), vec![0.25]);
    }

    #[test]
    fn music_full_order_is_finite() {
        let cov = rank_one_plus_identity(0.1, 1.0, 5);
        let spec = music_pseudospectrum(&cov, 4, 64).unwrap();
        assert!(spec.iter().all(|&(_, p)| p.is_finite() && p > 0.0));
    }

    #[test]
    fn music_scale_invariant() {
        let cov = rank_one_plus_identity(0.37, 0.8, 6);
        let a = music_pseudospectrum(&cov, 1, 256).unwrap();
        let b = music_pseudospectrum(&cov.scaled(17.5), 1, 256).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert!((x.1 - y.1).abs() <= 1e-8 * x.1.abs(), "{x:?} {y:?}");
        }
    }

    #[test]
    fn pipeline_errors() {
        let s = SamplingScheme::new(&[3, 4, 5]).unwrap();
        let stream = acquire(&SignalSpec::new(vec![], 0.0).unwrap(), &s, 20, 0).unwrap();
        assert_eq!(estimate_pipeline(&stream, 12, 60, 0), Err(Error::ZeroOrder));
        assert_eq!(
            estimate_pipeline(&stream, 12, 60, 3),
            Err(Error::HorizonTooShort { horizon: 20, required: 71 })
        );
        match estimate_pipeline(&stream, 12, 4, 3) {
            Err(e @ Error::ZeroCoverage { min_snapshots: Some(12), .. }) => {
                assert!(e.to_string().contains("L >= 12"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn wrap_unit_range() {
        assert_eq!(wrap_unit(-1e-18), 0.0);
        assert_eq!(wrap_unit(1.0), 0.0);
        assert!((wrap_unit(-0.25) - 0.75).abs() < 1e-15);
    }
}
