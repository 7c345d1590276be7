//! Monte Carlo RMSE harness.
//!
//! Every trial draws a fresh random spec, acquires it through the configured
//! scheme and runs the estimation pipeline. Per-trial seeds are a pure
//! function of `(master_seed, k, snr_db, trial_index)`, and the per-cell
//! reduction runs in ascending trial order, so reports are bitwise identical
//! regardless of how trials are scheduled.

use std::fmt::Write as _;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::lattice::{generate_indices, min_snapshots, SamplingScheme};
use crate::signal::{acquire, circular_distance, random_spec};
use crate::subspace::estimate_pipeline;

pub const SNR_CONVENTION: &str =
    "SNR(dB) = 10*log10(sum_k A_k^2 / noise_variance); noise is total complex variance";
pub const AGGREGATION: &str =
    "cell RMSE = sqrt(mean over successful trials of per-trial squared RMSE)";
pub const MATCHING: &str = "per-trial estimates paired to truths by minimum-cost circular assignment";

// ---------------------------------------------------------------------------
// Matching and error metric

/// Minimum-cost perfect assignment (Hungarian algorithm, O(n^3)).
/// Returns `assignment[row] = col`.
fn assign(cost: &[Vec<f64>]) -> Vec<usize> {
    let n = cost.len();
    let mut u = vec![0.0; n + 1];
    let mut v = vec![0.0; n + 1];
    let mut p = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];

    for i in 1..=n {
        p[0] = i;
        let mut j0 = 0;
        let mut minv = vec![f64::INFINITY; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta = f64::INFINITY;
            let mut j1 = 0;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }

    let mut assignment = vec![0; n];
    for j in 1..=n {
        if p[j] != 0 {
            assignment[p[j] - 1] = j - 1;
        }
    }
    assignment
}

/// Pairs each estimate with a truth so the total circular distance is minimal.
/// Output is `(estimate, truth)` in estimate order.
pub fn circular_match(estimates: &[f64], truths: &[f64]) -> Result<Vec<(f64, f64)>> {
    if estimates.len() != truths.len() {
        return Err(Error::LengthMismatch(estimates.len(), truths.len()));
    }
    let cost: Vec<Vec<f64>> = estimates
        .iter()
        .map(|&e| truths.iter().map(|&t| circular_distance(e, t)).collect())
        .collect();
    Ok(assign(&cost)
        .into_iter()
        .zip(estimates)
        .map(|(j, &e)| (e, truths[j]))
        .collect())
}

/// Root mean square circular error over matched pairs.
pub fn rmse(pairs: &[(f64, f64)]) -> Result<f64> {
    if pairs.is_empty() {
        return Err(Error::EmptyInput);
    }
    let sum: f64 = pairs
        .iter()
        .map(|&(e, t)| circular_distance(e, t).powi(2))
        .sum();
    Ok((sum / pairs.len() as f64).sqrt())
}

// ---------------------------------------------------------------------------
// Configuration

fn serialize_snr_list<S: Serializer>(values: &[f64], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(values.len()))?;
    for v in values {
        if v.is_finite() {
            seq.serialize_element(v)?;
        } else {
            seq.serialize_element(&format_snr(*v))?;
        }
    }
    seq.end()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchConfig {
    pub scheme: SamplingScheme,
    pub m: usize,
    pub l: usize,
    pub k_values: Vec<usize>,
    #[serde(serialize_with = "serialize_snr_list")]
    pub snr_db_values: Vec<f64>,
    pub trials: usize,
    pub master_seed: u64,
    pub min_gap: f64,
    pub amp_range: (f64, f64),
}

impl BenchConfig {
    pub const DEFAULT_TRIALS: usize = 500;
    pub const DEFAULT_SNAPSHOTS: usize = 60;

    /// Scheme {3,4,5}, M = 12, L = 60, minimum gap 0.01, amplitudes in [0.5, 1].
    pub fn baseline(k_values: Vec<usize>, snr_db_values: Vec<f64>) -> Self {
        Self {
            scheme: SamplingScheme::new(&[3, 4, 5]).expect("3,4,5 are coprime"),
            m: 12,
            l: Self::DEFAULT_SNAPSHOTS,
            k_values,
            snr_db_values,
            trials: Self::DEFAULT_TRIALS,
            master_seed: 0,
            min_gap: 0.01,
            amp_range: (0.5, 1.0),
        }
    }

    /// K = 1..6 at 20 dB.
    pub fn k_sweep() -> Self {
        Self::baseline((1..=6).collect(), vec![20.0])
    }

    /// K = 3 at 0, 4, ..., 32 dB.
    pub fn snr_sweep() -> Self {
        Self::baseline(vec![3], (0..=8).map(|i| 4.0 * i as f64).collect())
    }

    pub fn validate(&self) -> Result<()> {
        let invalid = |msg: String| Err(Error::InvalidParameter(msg));
        if self.trials == 0 {
            return invalid("trials must be at least 1".into());
        }
        if self.m < 2 || self.l == 0 {
            return invalid(format!("need M >= 2 and L >= 1 (M = {}, L = {})", self.m, self.l));
        }
        if self.k_values.is_empty() || self.snr_db_values.is_empty() {
            return invalid("k_values and snr_db_values must be non-empty".into());
        }
        if let Some(&k) = self.k_values.iter().find(|&&k| k == 0 || k >= self.m) {
            return invalid(format!("k = {k} must lie in [1, M - 1 = {}]", self.m - 1));
        }
        if let Some(s) = self.snr_db_values.iter().find(|s| s.is_nan() || **s == f64::NEG_INFINITY) {
            return invalid(format!("invalid SNR {s}"));
        }
        let (lo, hi) = self.amp_range;
        if !(lo >= 0.0 && lo <= hi && hi.is_finite()) {
            return invalid(format!("amplitude range [{lo}, {hi}] is invalid"));
        }
        if let Some(&k) = self.k_values.iter().find(|&&k| k as f64 * self.min_gap >= 1.0) {
            return Err(Error::PackingInfeasible { k, min_gap: self.min_gap });
        }
        Ok(())
    }

    pub fn horizon(&self) -> usize {
        self.m + self.l - 1
    }
}

// ---------------------------------------------------------------------------
// Trials

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn trial_seed(master_seed: u64, k: usize, snr_db: f64, trial_index: usize) -> u64 {
    [k as u64, snr_db.to_bits(), trial_index as u64]
        .into_iter()
        .fold(splitmix64(master_seed), |h, x| splitmix64(h ^ x))
}

#[derive(Debug, Clone, PartialEq)]
pub enum TrialOutcome {
    Rmse(f64),
    Failed(Error),
}

pub fn run_trial(k: usize, snr_db: f64, trial_index: usize, config: &BenchConfig) -> TrialOutcome {
    let seed = trial_seed(config.master_seed, k, snr_db, trial_index);
    let attempt = || -> Result<f64> {
        let spec = random_spec(k, config.min_gap, config.amp_range, seed)?.with_snr_db(snr_db)?;
        let stream = acquire(&spec, &config.scheme, config.horizon(), splitmix64(seed ^ 0x006e_6f69_7365))?;
        let est = estimate_pipeline(&stream, config.m, config.l, k)?;
        rmse(&circular_match(est.freqs(), &spec.freqs())?)
    };
    match attempt() {
        Ok(v) => TrialOutcome::Rmse(v),
        Err(e) => TrialOutcome::Failed(e),
    }
}

fn cell_outcomes(k: usize, snr_db: f64, config: &BenchConfig) -> Vec<TrialOutcome> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..config.trials)
            .into_par_iter()
            .map(|t| run_trial(k, snr_db, t, config))
            .collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..config.trials)
            .map(|t| run_trial(k, snr_db, t, config))
            .collect()
    }
}

// ---------------------------------------------------------------------------
// Reports

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CellResult {
    pub k: usize,
    pub snr_db: f64,
    /// `None` when every trial failed.
    pub rmse: Option<f64>,
    pub trials: usize,
    pub failures: usize,
    /// Successful trials whose RMSE exceeded the configured minimum gap.
    pub outliers: usize,
}

impl CellResult {
    fn from_outcomes(k: usize, snr_db: f64, outcomes: &[TrialOutcome], outlier_threshold: f64) -> Self {
        let mut sum_sq = 0.0;
        let mut ok = 0usize;
        let mut outliers = 0usize;
        for o in outcomes {
            if let TrialOutcome::Rmse(v) = o {
                sum_sq += v * v;
                ok += 1;
                if *v > outlier_threshold {
                    outliers += 1;
                }
            }
        }
        Self {
            k,
            snr_db,
            rmse: (ok > 0).then(|| (sum_sq / ok as f64).sqrt()),
            trials: outcomes.len(),
            failures: outcomes.len() - ok,
            outliers,
        }
    }

    /// Failed plus outlying trials as a fraction of all trials.
    pub fn bad_rate(&self) -> f64 {
        (self.failures + self.outliers) as f64 / self.trials as f64
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportMetadata {
    pub config: BenchConfig,
    pub horizon: usize,
    pub samples_per_trial: usize,
    pub snr_convention: &'static str,
    pub aggregation: &'static str,
    pub matching: &'static str,
    pub version: &'static str,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchReport {
    pub cells: Vec<CellResult>,
    pub metadata: ReportMetadata,
}

pub fn format_snr(snr_db: f64) -> String {
    if snr_db == f64::INFINITY {
        "inf".to_string()
    } else {
        format!("{snr_db}")
    }
}

fn format_rmse(rmse: Option<f64>) -> String {
    rmse.map_or_else(|| "nan".to_string(), |v| format!("{v:e}"))
}

impl BenchReport {
    pub fn cell(&self, k: usize, snr_db: f64) -> Option<&CellResult> {
        self.cells.iter().find(|c| c.k == k && c.snr_db == snr_db)
    }

    /// `k,snr_db,rmse,trials,failures`, one row per cell in sweep order.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("k,snr_db,rmse,trials,failures\n");
        for c in &self.cells {
            let _ = writeln!(
                out,
                "{},{},{},{},{}",
                c.k,
                format_snr(c.snr_db),
                format_rmse(c.rmse),
                c.trials,
                c.failures
            );
        }
        out
    }

    /// Whitespace-separated tables for plotting, one per sweep axis:
    /// RMSE vs K for each SNR when several K were run, and RMSE vs SNR for
    /// each K when several SNRs were run.
    pub fn gnuplot_tables(&self) -> Vec<(String, String)> {
        let cfg = &self.metadata.config;
        let mut files = Vec::new();
        if cfg.k_values.len() > 1 {
            for &snr in &cfg.snr_db_values {
                let mut body = format!("# rmse vs k at snr {} dB\n# k rmse failures\n", format_snr(snr));
                for c in self.cells.iter().filter(|c| c.snr_db == snr) {
                    let _ = writeln!(body, "{} {} {}", c.k, format_rmse(c.rmse), c.failures);
                }
                files.push((format!("rmse_vs_k_snr{}.dat", format_snr(snr)), body));
            }
        }
        if cfg.snr_db_values.len() > 1 {
            for &k in &cfg.k_values {
                let mut body = format!("# rmse vs snr at k = {k}\n# snr_db rmse failures\n");
                for c in self.cells.iter().filter(|c| c.k == k) {
                    let _ = writeln!(body, "{} {} {}", format_snr(c.snr_db), format_rmse(c.rmse), c.failures);
                }
                files.push((format!("rmse_vs_snr_k{k}.dat"), body));
            }
        }
        files
    }
}

/// Runs the full `k_values x snr_db_values` grid.
pub fn run_sweep(config: &BenchConfig) -> Result<BenchReport> {
    config.validate()?;
    let mut cells = Vec::with_capacity(config.k_values.len() * config.snr_db_values.len());
    for &k in &config.k_values {
        for &snr in &config.snr_db_values {
            let outcomes = cell_outcomes(k, snr, config);
            cells.push(CellResult::from_outcomes(k, snr, &outcomes, config.min_gap));
        }
    }
    Ok(BenchReport {
        cells,
        metadata: ReportMetadata {
            config: config.clone(),
            horizon: config.horizon(),
            samples_per_trial: generate_indices(&config.scheme, config.horizon()).len(),
            snr_convention: SNR_CONVENTION,
            aggregation: AGGREGATION,
            matching: MATCHING,
            version: env!("CARGO_PKG_VERSION"),
        },
    })
}

// ---------------------------------------------------------------------------
// Equal-budget scheme comparison

/// Smallest horizon at which `scheme` has collected at least `budget` samples.
pub fn horizon_for_budget(scheme: &SamplingScheme, budget: usize) -> usize {
    let mut count = 0;
    let mut t = 0;
    while count < budget {
        t += 1;
        if scheme.is_sampled(t) {
            count += 1;
        }
    }
    t
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SchemeComparison {
    pub budget: usize,
    pub reference: BenchReport,
    pub alternative: BenchReport,
}

impl SchemeComparison {
    /// True when the alternative scheme fails or misattributes at least as
    /// often as the reference in every cell.
    pub fn alternative_no_better(&self) -> bool {
        self.reference
            .cells
            .iter()
            .zip(&self.alternative.cells)
            .all(|(r, a)| a.bad_rate() >= r.bad_rate())
    }
}

/// Runs `config` and the same sweep through `alternative`, with the
/// alternative's snapshot count chosen so both schemes consume the same
/// number of samples per trial. Trial seeds are shared, so both schemes see
/// the same random signals.
pub fn compare_schemes(config: &BenchConfig, alternative: &SamplingScheme) -> Result<SchemeComparison> {
    config.validate()?;
    let budget = generate_indices(&config.scheme, config.horizon()).len();
    let horizon = horizon_for_budget(alternative, budget).max(config.m);
    let l = horizon + 1 - config.m;
    let needed = min_snapshots(alternative)?;
    if l < needed {
        return Err(Error::InvalidParameter(format!(
            "sample budget {budget} gives L = {l} for {alternative}, below the coverage bound {needed}"
        )));
    }
    let alt_config = BenchConfig {
        scheme: alternative.clone(),
        l,
        ..config.clone()
    };
    Ok(SchemeComparison {
        budget,
        reference: run_sweep(config)?,
        alternative: run_sweep(&alt_config)?,
    })
}
