use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use coprime_spectra::bench::{compare_schemes, run_sweep, BenchConfig, BenchReport};
use coprime_spectra::io::{
    read_samples_csv, stream_from_samples, write_covariance_csv, write_frequencies_csv,
    write_samples_csv,
};
use coprime_spectra::lattice::gcd;
use coprime_spectra::{
    acquire, build_matrices, coverage_ok, estimate_covariance, esprit, min_snapshots, random_spec,
    verify_decomposition, SamplingScheme, SignalSpec, SinusoidParams,
};
use serde::Serialize;

use crate::config::{self, BenchArgs, BenchMode, EstimateArgs, SimulateArgs, VerifyArgs};
use crate::CliError;

pub const THREADS_ENV: &str = "COPRIME_SPECTRA_THREADS";

type CmdResult = Result<u8, CliError>;

fn required<T>(value: Option<T>, flag: &str) -> Result<T, CliError> {
    value.ok_or_else(|| CliError::validation(format!("missing required option --{flag}")))
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents)
        .map_err(|e| CliError::validation(format!("cannot write {}: {e}", path.display())))
}

fn summarize_indices(indices: &[usize]) -> String {
    const SHOWN: usize = 16;
    let head: Vec<String> = indices.iter().take(SHOWN).map(usize::to_string).collect();
    if indices.len() > SHOWN {
        format!("{}, ... ({} total)", head.join(","), indices.len())
    } else {
        head.join(",")
    }
}

pub fn simulate(args: SimulateArgs) -> CmdResult {
    let config = args.config.clone();
    let args = config::load(args, config.as_deref())?;
    let scheme = SamplingScheme::new(&required(args.ratios, "ratios")?)?;
    let horizon = required(args.horizon, "horizon")?;
    if horizon == 0 {
        return Err(CliError::validation("horizon must be at least 1"));
    }
    let seed = args.seed.unwrap_or(0);

    let spec = match (args.freqs, args.random_k) {
        (Some(_), Some(_)) => {
            return Err(CliError::validation("--freqs and --random-k are mutually exclusive"))
        }
        (None, Some(k)) => random_spec(k, args.min_gap.unwrap_or(0.01), (0.5, 1.0), seed ^ 0x5eed)?,
        (freqs, None) => {
            let freqs = freqs.unwrap_or_default();
            let n = freqs.len();
            let amps = args.amps.unwrap_or_else(|| vec![1.0; n]);
            let phases = args.phases.unwrap_or_else(|| vec![0.0; n]);
            if amps.len() != n || phases.len() != n {
                return Err(CliError::validation(format!(
                    "{n} frequencies but {} amplitudes and {} phases",
                    amps.len(),
                    phases.len()
                )));
            }
            let tones = freqs
                .iter()
                .zip(&amps)
                .zip(&phases)
                .map(|((&f, &a), &p)| SinusoidParams::new(f, a, p))
                .collect::<Result<Vec<_>, _>>()?;
            SignalSpec::new(tones, 0.0)?
        }
    };
    let spec = match (args.snr_db, args.noise) {
        (Some(snr), _) => spec.with_snr_db(snr)?,
        (None, Some(var)) => SignalSpec::new(spec.components().to_vec(), var)?,
        (None, None) => spec,
    };

    let stream = acquire(&spec, &scheme, horizon, seed)?;
    let csv = write_samples_csv(&stream);
    let indices: Vec<usize> = stream.samples().keys().copied().collect();
    let summary = format!(
        "scheme {scheme}, horizon {horizon}: {} samples at indices {}\ntones: {}, noise variance {:.6e}",
        indices.len(),
        summarize_indices(&indices),
        spec.freqs()
            .iter()
            .map(|f| format!("{f}"))
            .collect::<Vec<_>>()
            .join(","),
        spec.noise_variance()
    );
    match args.output {
        Some(path) => {
            write_file(&path, &csv)?;
            println!("{summary}\nwrote {}", path.display());
        }
        None => {
            print!("{csv}");
            eprintln!("{summary}");
        }
    }
    Ok(0)
}

pub fn estimate(args: EstimateArgs) -> CmdResult {
    let config = args.config.clone();
    let args = config::load(args, config.as_deref())?;
    let input = required(args.input, "input")?;
    let text = fs::read_to_string(&input)
        .map_err(|e| CliError::validation(format!("cannot read {}: {e}", input.display())))?;
    let samples = read_samples_csv(&text)?;
    let scheme = args.ratios.as_deref().map(SamplingScheme::new).transpose()?;
    let stream = stream_from_samples(samples, scheme, args.horizon)?;

    let m = args.m.unwrap_or(12);
    let k = required(args.k, "k")?;
    if m == 0 || stream.horizon() < m {
        return Err(CliError::validation(format!(
            "window length M = {m} does not fit in horizon {}",
            stream.horizon()
        )));
    }
    let l = args.l.unwrap_or(stream.horizon() + 1 - m);
    if k == 0 || k >= m {
        return Err(CliError::validation(format!("k = {k} must lie in [1, M - 1 = {}]", m - 1)));
    }

    let dm = build_matrices(&stream, m, l)?;
    let cov = estimate_covariance(&dm).map_err(|e| match e {
        coprime_spectra::Error::ZeroCoverage { row, col, .. } => coprime_spectra::Error::ZeroCoverage {
            row,
            col,
            min_snapshots: min_snapshots(stream.scheme()).ok(),
        },
        other => other,
    })?;
    if let Some(prefix) = &args.covariance {
        let (r, p) = write_covariance_csv(&cov);
        write_file(&suffixed(prefix, "_r.csv"), &r)?;
        write_file(&suffixed(prefix, "_p.csv"), &p)?;
    }
    let est = esprit(&cov, k)?;

    println!(
        "scheme {}, horizon {}, M = {m}, L = {l}, {} samples",
        stream.scheme(),
        stream.horizon(),
        stream.len()
    );
    println!("{:>3}  {:>22}", "k", "freq");
    for (i, f) in est.freqs().iter().enumerate() {
        println!("{:>3}  {:>22.17}", i + 1, f);
    }
    if let Some(path) = &args.output {
        write_file(path, &write_frequencies_csv(&est))?;
    }
    Ok(0)
}

fn suffixed(prefix: &Path, suffix: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

pub fn verify(args: VerifyArgs) -> CmdResult {
    let config = args.config.clone();
    let args = config::load(args, config.as_deref())?;
    let mut failures = 0usize;
    let mut report = |ok: bool, line: String| {
        println!("{} {line}", if ok { "PASS" } else { "FAIL" });
        if !ok {
            failures += 1;
        }
    };

    if let Some(ratios) = args.scheme {
        let scheme = SamplingScheme::new(&ratios)?;
        let m = required(args.m, "m")?;
        let l = required(args.l, "l")?;
        let bound = min_snapshots(&scheme)
            .map(|b| format!("sufficient L = {b}"))
            .unwrap_or_else(|e| e.to_string());
        report(coverage_ok(&scheme, m, l), format!("coverage {scheme} M={m} L={l} ({bound})"));
    } else {
        let max_ratio = args.max_ratio.unwrap_or(12);
        for a in 2..=max_ratio {
            for b in a + 1..=max_ratio {
                if gcd(a, b) == 1 {
                    report(verify_decomposition(a, b)? , format!("decomposition a={a} b={b}"));
                }
            }
        }
        let coverage_max = args.coverage_max.unwrap_or(7);
        for scheme in coprime_sets(coverage_max) {
            let l = min_snapshots(&scheme)?;
            let ok = (1..=l).all(|m| coverage_ok(&scheme, m, l));
            report(ok, format!("coverage {scheme} L={l} for all M in [1, {l}]"));
        }
    }
    Ok(if failures == 0 { 0 } else { 1 })
}

/// Coprime pairs and triples with ratios in `2..=max`.
fn coprime_sets(max: u64) -> Vec<SamplingScheme> {
    let mut out = Vec::new();
    for a in 2..=max {
        for b in a + 1..=max {
            if gcd(a, b) != 1 {
                continue;
            }
            out.push(SamplingScheme::new(&[a, b]).expect("coprime"));
            for c in b + 1..=max {
                if gcd(a, c) == 1 && gcd(b, c) == 1 {
                    out.push(SamplingScheme::new(&[a, b, c]).expect("coprime"));
                }
            }
        }
    }
    out
}

#[derive(Serialize)]
struct BenchMetadata<'a> {
    #[serde(flatten)]
    report: &'a coprime_spectra::bench::ReportMetadata,
    threads: usize,
    comparison: Option<ComparisonSummary>,
}

#[derive(Serialize)]
struct ComparisonSummary {
    sample_budget: usize,
    reference: BenchReport,
    alternative: BenchReport,
    alternative_no_better: bool,
}

fn bench_config(args: &BenchArgs) -> Result<BenchConfig, CliError> {
    let mode = args.mode.unwrap_or(BenchMode::KSweep);
    let mut cfg = match mode {
        BenchMode::KSweep => BenchConfig::k_sweep(),
        BenchMode::SnrSweep => BenchConfig::snr_sweep(),
        BenchMode::Custom => BenchConfig::baseline(
            required(args.k_values.clone(), "k-values")?,
            required(args.snr_values.clone(), "snr-values")?,
        ),
    };
    if let Some(r) = &args.ratios {
        cfg.scheme = SamplingScheme::new(r)?;
    }
    if let Some(k) = &args.k_values {
        cfg.k_values = k.clone();
    }
    if let Some(s) = &args.snr_values {
        cfg.snr_db_values = s.clone();
    }
    if let Some(amp) = &args.amp_range {
        if amp.len() != 2 {
            return Err(CliError::validation("--amp-range takes exactly two values"));
        }
        cfg.amp_range = (amp[0], amp[1]);
    }
    cfg.m = args.m.unwrap_or(cfg.m);
    cfg.l = args.l.unwrap_or(cfg.l);
    cfg.trials = args.trials.unwrap_or(cfg.trials);
    cfg.master_seed = args.seed.unwrap_or(cfg.master_seed);
    cfg.min_gap = args.min_gap.unwrap_or(cfg.min_gap);
    cfg.validate()?;
    Ok(cfg)
}

fn thread_count() -> Result<usize, CliError> {
    match std::env::var(THREADS_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::validation(format!("{THREADS_ENV} must be a non-negative integer"))),
        Err(_) => Ok(0),
    }
}

pub fn bench(args: BenchArgs) -> CmdResult {
    let config = args.config.clone();
    let args = config::load(args, config.as_deref())?;
    let cfg = bench_config(&args)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(thread_count()?)
        .build()
        .map_err(|e| CliError::validation(format!("cannot start thread pool: {e}")))?;

    let (report, comparison) = match &args.compare {
        Some(ratios) => {
            let alt = SamplingScheme::new(ratios)?;
            let cmp = pool.install(|| compare_schemes(&cfg, &alt))?;
            let summary = ComparisonSummary {
                sample_budget: cmp.budget,
                alternative_no_better: cmp.alternative_no_better(),
                reference: cmp.reference.clone(),
                alternative: cmp.alternative,
            };
            (cmp.reference, Some(summary))
        }
        None => (pool.install(|| run_sweep(&cfg))?, None),
    };

    let csv = report.to_csv();
    match &args.output {
        Some(path) => write_file(path, &csv)?,
        None => print!("{csv}"),
    }
    if let Some(cmp) = &comparison {
        let mut err = std::io::stderr().lock();
        let _ = writeln!(
            err,
            "equal budget of {} samples: {} (L = {}) vs {} (L = {})",
            cmp.sample_budget,
            cmp.reference.metadata.config.scheme,
            cmp.reference.metadata.config.l,
            cmp.alternative.metadata.config.scheme,
            cmp.alternative.metadata.config.l
        );
        for (r, a) in cmp.reference.cells.iter().zip(&cmp.alternative.cells) {
            let _ = writeln!(
                err,
                "  k={} snr={}: failure+outlier rate {:.3} vs {:.3}",
                r.k,
                coprime_spectra::bench::format_snr(r.snr_db),
                r.bad_rate(),
                a.bad_rate()
            );
        }
    }

    let meta_path = args
        .meta
        .clone()
        .or_else(|| args.output.as_ref().map(|p| p.with_extension("json")));
    if let Some(path) = meta_path {
        let meta = BenchMetadata {
            report: &report.metadata,
            threads: pool.current_num_threads(),
            comparison,
        };
        let json = serde_json::to_string_pretty(&meta)
            .map_err(|e| CliError::validation(format!("cannot encode metadata: {e}")))?;
        write_file(&path, &(json + "\n"))?;
    }
    if let Some(dir) = &args.gnuplot {
        fs::create_dir_all(dir)
            .map_err(|e| CliError::validation(format!("cannot create {}: {e}", dir.display())))?;
        for (name, body) in report.gnuplot_tables() {
            write_file(&dir.join(name), &body)?;
        }
    }
    Ok(0)
}
