//! Autocorrelation estimation from a sparse (masked) sample stream.
//!
//! Samples are arranged into an `M x L` matrix of overlapping windows, column
//! `v` (1-based) covering indices `v .. v+M-1`; unobserved positions hold zero
//! and are flagged off in a binary position mask `G`. The estimate is the
//! entrywise quotient `R = (X X^H) / (G G^T)`, i.e. every entry is the mean of
//! the lag products that were actually observed.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::lattice::SamplingScheme;
use crate::signal::SampleStream;

#[derive(Debug, Clone, PartialEq)]
pub struct MaskedDataMatrix {
    x: DMatrix<Complex64>,
    g: DMatrix<u8>,
}

impl MaskedDataMatrix {
    pub fn x(&self) -> &DMatrix<Complex64> {
        &self.x
    }

    pub fn g(&self) -> &DMatrix<u8> {
        &self.g
    }

    /// Window length `M`.
    pub fn m(&self) -> usize {
        self.x.nrows()
    }

    /// Snapshot count `L`.
    pub fn l(&self) -> usize {
        self.x.ncols()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CovarianceEstimate {
    r: DMatrix<Complex64>,
    p: DMatrix<u32>,
}

impl CovarianceEstimate {
    /// Wraps an externally built Hermitian matrix with uniform unit counts.
    /// Useful for feeding synthetic covariances to the subspace estimators.
    pub fn from_matrix(r: DMatrix<Complex64>) -> Result<Self> {
        if !r.is_square() || r.nrows() == 0 {
            return Err(Error::InvalidParameter("covariance must be square and non-empty".into()));
        }
        let n = r.nrows();
        Ok(Self {
            r: hermitian_part(&r),
            p: DMatrix::from_element(n, n, 1),
        })
    }

    pub fn r(&self) -> &DMatrix<Complex64> {
        &self.r
    }

    pub fn p(&self) -> &DMatrix<u32> {
        &self.p
    }

    pub fn dim(&self) -> usize {
        self.r.nrows()
    }

    /// Same counts, `r` multiplied by `c`.
    pub fn scaled(&self, c: f64) -> Self {
        Self {
            r: self.r.map(|z| z * c),
            p: self.p.clone(),
        }
    }
}

fn mask_matrix(scheme: &SamplingScheme, m: usize, l: usize) -> DMatrix<u8> {
    DMatrix::from_fn(m, l, |u, v| u8::from(scheme.is_sampled(u + v + 1)))
}

/// `P = G G^T` as exact integer counts.
fn count_matrix(g: &DMatrix<u8>) -> DMatrix<u32> {
    let m = g.nrows();
    DMatrix::from_fn(m, m, |u, v| {
        g.row(u)
            .iter()
            .zip(g.row(v).iter())
            .map(|(&a, &b)| u32::from(a & b))
            .sum()
    })
}

fn hermitian_part(r: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let n = r.nrows();
    DMatrix::from_fn(n, n, |u, v| (r[(u, v)] + r[(v, u)].conj()) * 0.5)
}

pub fn build_matrices(stream: &SampleStream, m: usize, l: usize) -> Result<MaskedDataMatrix> {
    if m == 0 || l == 0 {
        return Err(Error::InvalidParameter(format!(
            "window length and snapshot count must be positive (M = {m}, L = {l})"
        )));
    }
    let required = m + l - 1;
    if stream.horizon() < required {
        return Err(Error::HorizonTooShort {
            horizon: stream.horizon(),
            required,
        });
    }
    let x = DMatrix::from_fn(m, l, |u, v| stream.get(u + v + 1).unwrap_or(Complex64::ZERO));
    let g = mask_matrix(stream.scheme(), m, l);
    Ok(MaskedDataMatrix { x, g })
}

/// `R = (X X^H) / P` entrywise, then Hermitian-symmetrized. Each entry is
/// reduced over snapshots in ascending column order.
pub fn estimate_covariance(dm: &MaskedDataMatrix) -> Result<CovarianceEstimate> {
    let p = count_matrix(&dm.g);
    if let Some((idx, _)) = p.iter().enumerate().find(|(_, &c)| c == 0) {
        // column-major storage
        let (row, col) = (idx % p.nrows(), idx / p.nrows());
        return Err(Error::ZeroCoverage {
            row,
            col,
            min_snapshots: None,
        });
    }
    let m = dm.m();
    let q = DMatrix::from_fn(m, m, |u, v| {
        dm.x.row(u)
            .iter()
            .zip(dm.x.row(v).iter())
            .fold(Complex64::ZERO, |acc, (&a, &b)| acc + a * b.conj())
    });
    let r = q.zip_map(&p, |qv, pv| qv / pv as f64);
    Ok(CovarianceEstimate {
        r: hermitian_part(&r),
        p,
    })
}

/// Direct check that every entry of `P` is positive for this scheme and shape.
pub fn coverage_ok(scheme: &SamplingScheme, m: usize, l: usize) -> bool {
    if m == 0 || l == 0 {
        return false;
    }
    count_matrix(&mask_matrix(scheme, m, l)).iter().all(|&c| c > 0)
}

/// `P = G G^T` for a scheme without building the data matrix.
pub fn coverage_counts(scheme: &SamplingScheme, m: usize, l: usize) -> DMatrix<u32> {
    count_matrix(&mask_matrix(scheme, m, l))
}
