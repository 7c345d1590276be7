//! Frequency estimation of complex sinusoids from multi-channel coprime
//! sub-Nyquist sampling.
//!
//! Each channel samples the Nyquist grid at an integer undersampling ratio;
//! with pairwise-coprime ratios the union of the channels observes every lag
//! often enough to estimate a full autocorrelation matrix by averaging only
//! the observed products. A subspace method (ESPRIT, with MUSIC as a
//! cross-check) then extracts the frequencies.
//!
//! ```
//! use coprime_spectra::{acquire, estimate_pipeline, SamplingScheme, SignalSpec, SinusoidParams};
//!
//! let scheme = SamplingScheme::new(&[3, 4, 5]).unwrap();
//! let tone = SinusoidParams::new(0.4321, 1.0, 0.0).unwrap();
//! let spec = SignalSpec::new(vec![tone], 0.0).unwrap();
//! let stream = acquire(&spec, &scheme, 12 + 60 - 1, 7).unwrap();
//! let est = estimate_pipeline(&stream, 12, 60, 1).unwrap();
//! assert!((est.freqs()[0] - 0.4321).abs() < 1e-9);
//! ```

pub mod bench;
pub mod covariance;
mod error;
pub mod io;
pub mod lattice;
pub mod signal;
pub mod subspace;

pub use covariance::{
    build_matrices, coverage_counts, coverage_ok, estimate_covariance, CovarianceEstimate,
    MaskedDataMatrix,
};
pub use error::{Error, Result};
pub use lattice::{
    bezout_decompose, generate_indices, min_snapshots, validate_coprime, verify_decomposition,
    SamplingScheme,
};
pub use num_complex::Complex64;
pub use signal::{
    acquire, circular_distance, draw_noise, evaluate_signal, random_spec, SampleStream,
    SignalSpec, SinusoidParams,
};
pub use subspace::{esprit, estimate_pipeline, music_peaks, music_pseudospectrum, FrequencyEstimate};
