//! Subcommand parameter bundles. Every field can come from a flag or from a
//! JSON config file (`--config`); flags win.

use std::path::{Path, PathBuf};

use clap::Args;
use serde::Deserialize;

use crate::CliError;

/// Fills every `None` field of `self` from `file`.
pub trait Merge: Sized {
    fn merge(self, file: Self) -> Self;
}

macro_rules! merge_fields {
    ($ty:ident { $($field:ident),* $(,)? }) => {
        impl Merge for $ty {
            fn merge(self, file: Self) -> Self {
                Self {
                    config: self.config,
                    $($field: self.$field.or(file.$field),)*
                }
            }
        }
    };
}

pub fn load<T: Merge + for<'de> Deserialize<'de>>(args: T, path: Option<&Path>) -> Result<T, CliError> {
    let Some(path) = path else {
        return Ok(args);
    };
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::validation(format!("cannot read config {}: {e}", path.display())))?;
    let file: T = serde_json::from_str(&text)
        .map_err(|e| CliError::validation(format!("invalid config {}: {e}", path.display())))?;
    Ok(args.merge(file))
}

#[derive(Debug, Default, Args, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SimulateArgs {
    /// JSON file with default values for any of these options
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
    /// Pairwise-coprime undersampling ratios
    #[arg(long, value_delimiter = ',')]
    pub ratios: Option<Vec<u64>>,
    /// Last Nyquist-grid index to sample
    #[arg(long)]
    pub horizon: Option<usize>,
    /// Normalized tone frequencies in (0, 1]
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub freqs: Option<Vec<f64>>,
    /// Tone amplitudes (default 1 for every tone)
    #[arg(long, value_delimiter = ',')]
    pub amps: Option<Vec<f64>>,
    /// Tone phases in radians (default 0)
    #[arg(long, value_delimiter = ',')]
    pub phases: Option<Vec<f64>>,
    /// Draw this many random tones instead of --freqs
    #[arg(long)]
    pub random_k: Option<usize>,
    /// Minimum circular gap for random tones
    #[arg(long)]
    pub min_gap: Option<f64>,
    /// Total complex noise variance
    #[arg(long)]
    pub noise: Option<f64>,
    /// SNR in dB relative to total tone power; overrides --noise
    #[arg(long, allow_negative_numbers = true)]
    pub snr_db: Option<f64>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Output CSV (`t,re,im`)
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

merge_fields!(SimulateArgs {
    ratios, horizon, freqs, amps, phases, random_k, min_gap, noise, snr_db, seed, output
});

#[derive(Debug, Default, Args, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EstimateArgs {
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
    /// Sample CSV (`t,re,im`)
    #[arg(short, long)]
    pub input: Option<PathBuf>,
    /// Ratios of the sampling scheme; inferred from the indices when omitted
    #[arg(long, value_delimiter = ',')]
    pub ratios: Option<Vec<u64>>,
    /// Sampling horizon; defaults to the largest one consistent with the file
    #[arg(long)]
    pub horizon: Option<usize>,
    /// Window length M
    #[arg(long)]
    pub m: Option<usize>,
    /// Snapshot count L
    #[arg(long)]
    pub l: Option<usize>,
    /// Number of tones K
    #[arg(long)]
    pub k: Option<usize>,
    /// Output CSV (`k,freq`)
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    /// Also write `<prefix>_r.csv` and `<prefix>_p.csv`
    #[arg(long)]
    pub covariance: Option<PathBuf>,
}

merge_fields!(EstimateArgs { input, ratios, horizon, m, l, k, output, covariance });

#[derive(Debug, Default, Args, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct VerifyArgs {
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
    /// Check the decomposition for all coprime pairs up to this ratio
    #[arg(long)]
    pub max_ratio: Option<u64>,
    /// Check coverage for all coprime pairs and triples up to this ratio
    #[arg(long)]
    pub coverage_max: Option<u64>,
    /// Check coverage for a single scheme (requires --m and --l)
    #[arg(long, value_delimiter = ',')]
    pub scheme: Option<Vec<u64>>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub l: Option<usize>,
}

merge_fields!(VerifyArgs { max_ratio, coverage_max, scheme, m, l });

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BenchMode {
    /// K = 1..6 at 20 dB
    KSweep,
    /// K = 3 at 0, 4, ..., 32 dB
    SnrSweep,
    /// --k-values x --snr-values
    Custom,
}

#[derive(Debug, Default, Args, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BenchArgs {
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub mode: Option<BenchMode>,
    #[arg(long)]
    pub trials: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, value_delimiter = ',')]
    pub ratios: Option<Vec<u64>>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub l: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    pub k_values: Option<Vec<usize>>,
    /// SNR values in dB; `inf` runs noiseless
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub snr_values: Option<Vec<f64>>,
    #[arg(long)]
    pub min_gap: Option<f64>,
    /// Amplitude interval as `lo,hi`
    #[arg(long, value_delimiter = ',', num_args = 2)]
    pub amp_range: Option<Vec<f64>>,
    /// Report CSV; printed to stdout when omitted
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    /// Metadata JSON; defaults to the report path with a .json extension
    #[arg(long)]
    pub meta: Option<PathBuf>,
    /// Directory for per-axis gnuplot data files
    #[arg(long)]
    pub gnuplot: Option<PathBuf>,
    /// Also run this scheme under the same sample budget and compare
    #[arg(long, value_delimiter = ',')]
    pub compare: Option<Vec<u64>>,
}

merge_fields!(BenchArgs {
    mode, trials, seed, ratios, m, l, k_values, snr_values, min_gap, amp_range, output, meta,
    gnuplot, compare
});
