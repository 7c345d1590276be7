//! Plain-text CSV formats.
//!
//! * sample streams: `t,re,im`, rows sorted by `t`
//! * covariance: `row,col,re,im` for `R` and `row,col,count` for `P`
//! * frequency estimates: `k,freq`
//!
//! Matrix rows/columns and component numbers are 1-based, like sample
//! indices. Floats are written with 17 significant digits, which round-trips
//! every `f64` exactly.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_complex::Complex64;

use crate::covariance::CovarianceEstimate;
use crate::error::{Error, Result};
use crate::lattice::{gcd, SamplingScheme};
use crate::signal::SampleStream;
use crate::subspace::FrequencyEstimate;

fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn write_samples_csv(stream: &SampleStream) -> String {
    let mut out = String::from("t,re,im\n");
    for (t, x) in stream.samples() {
        let _ = writeln!(out, "{t},{},{}", fmt_f64(x.re), fmt_f64(x.im));
    }
    out
}

fn data_rows<'a>(text: &'a str, header: &str) -> Result<impl Iterator<Item = (usize, Vec<&'a str>)>> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    match lines.next() {
        Some((_, h)) if h.trim() == header => {}
        Some((_, h)) => {
            return Err(Error::Parse(format!("expected header `{header}`, found `{}`", h.trim())))
        }
        None => return Err(Error::Parse("empty file".into())),
    }
    let width = header.split(',').count();
    Ok(lines.map(move |(n, l)| {
        let fields: Vec<&str> = l.split(',').map(str::trim).collect();
        debug_assert!(width > 0);
        (n + 1, fields)
    }))
}

fn parse_field<T: std::str::FromStr>(field: &str, line: usize, what: &str) -> Result<T> {
    field
        .parse()
        .map_err(|_| Error::Parse(format!("line {line}: invalid {what} `{field}`")))
}

/// Parses `t,re,im` rows into an ordered map; duplicate or zero indices are errors.
pub fn read_samples_csv(text: &str) -> Result<BTreeMap<usize, Complex64>> {
    let mut samples = BTreeMap::new();
    for (line, fields) in data_rows(text, "t,re,im")? {
        if fields.len() != 3 {
            return Err(Error::Parse(format!("line {line}: expected 3 fields, found {}", fields.len())));
        }
        let t: usize = parse_field(fields[0], line, "index")?;
        if t == 0 {
            return Err(Error::Parse(format!("line {line}: sample indices start at 1")));
        }
        let re: f64 = parse_field(fields[1], line, "real part")?;
        let im: f64 = parse_field(fields[2], line, "imaginary part")?;
        if samples.insert(t, Complex64::new(re, im)).is_some() {
            return Err(Error::Parse(format!("line {line}: duplicate index {t}")));
        }
    }
    Ok(samples)
}

/// Recovers the ratios that generate an index set: the indices not divisible
/// by any smaller index in the set.
pub fn infer_scheme(indices: &[usize]) -> Result<SamplingScheme> {
    let mut generators: Vec<u64> = Vec::new();
    let mut sorted = indices.to_vec();
    sorted.sort_unstable();
    for &t in &sorted {
        let t = t as u64;
        if generators.iter().all(|&g| !t.is_multiple_of(g)) {
            // a new generator sharing a factor with an old one is not a coprime lattice
            if let Some(&g) = generators.iter().find(|&&g| gcd(g, t) > 1) {
                return Err(Error::NotCoprime(g, t, gcd(g, t)));
            }
            generators.push(t);
        }
    }
    SamplingScheme::new(&generators)
}

/// Builds a stream from parsed samples. Without an explicit horizon, the
/// largest horizon consistent with the data is used (one before the next
/// lattice index after the last sample).
pub fn stream_from_samples(
    samples: BTreeMap<usize, Complex64>,
    scheme: Option<SamplingScheme>,
    horizon: Option<usize>,
) -> Result<SampleStream> {
    let scheme = match scheme {
        Some(s) => s,
        None => {
            let keys: Vec<usize> = samples.keys().copied().collect();
            if keys.is_empty() {
                return Err(Error::Parse("no samples to infer a scheme from".into()));
            }
            infer_scheme(&keys)?
        }
    };
    let last = samples.keys().next_back().copied().unwrap_or(0);
    let horizon = horizon.unwrap_or_else(|| scheme.next_index_after(last) - 1);
    SampleStream::new(scheme, horizon, samples)
}

pub fn write_covariance_csv(cov: &CovarianceEstimate) -> (String, String) {
    let n = cov.dim();
    let mut r = String::from("row,col,re,im\n");
    let mut p = String::from("row,col,count\n");
    for u in 0..n {
        for v in 0..n {
            let z = cov.r()[(u, v)];
            let _ = writeln!(r, "{},{},{},{}", u + 1, v + 1, fmt_f64(z.re), fmt_f64(z.im));
            let _ = writeln!(p, "{},{},{}", u + 1, v + 1, cov.p()[(u, v)]);
        }
    }
    (r, p)
}

pub fn write_frequencies_csv(est: &FrequencyEstimate) -> String {
    let mut out = String::from("k,freq\n");
    for (i, f) in est.freqs().iter().enumerate() {
        let _ = writeln!(out, "{},{}", i + 1, fmt_f64(*f));
    }
    out
}

pub fn read_frequencies_csv(text: &str) -> Result<FrequencyEstimate> {
    let mut freqs = Vec::new();
    for (line, fields) in data_rows(text, "k,freq")? {
        if fields.len() != 2 {
            return Err(Error::Parse(format!("line {line}: expected 2 fields, found {}", fields.len())));
        }
        freqs.push(parse_field::<f64>(fields[1], line, "frequency")?);
    }
    FrequencyEstimate::new(freqs)
}
