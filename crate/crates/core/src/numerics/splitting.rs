//! Leading Puiseux-exponent estimation from eigenvalue splitting.
//!
//! Near an order-N degeneracy the level splitting scales as `v^(1/N)`; a
//! log-log least-squares fit of the maximum pairwise splitting over several
//! decades recovers the exponent while staying robust to the next Puiseux
//! term. The decade range is kept above 1e-9 so QR roundoff never competes
//! with the signal.

use crate::charpoly::{eval_matrix, ParametricMatrix};
use crate::numerics::eigen::eigenvalues;
use crate::numerics::NumericsError;
use num_complex::Complex64;

/// Decade range spec: samples are taken at `v = 10^-k` for
/// `k = min..=max`. Default 3..=9.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DecadeRange {
    pub min: u32,
    pub max: u32,
}

impl Default for DecadeRange {
    fn default() -> Self {
        Self { min: 3, max: 9 }
    }
}

impl DecadeRange {
    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        (self.min..=self.max).map(|k| 10f64.powi(-(k as i32)))
    }
}

/// Result of the log-log fit.
#[derive(Debug, Clone)]
pub struct SplittingFit {
    /// Fitted slope of `log(splitting)` against `log(v)`.
    pub exponent: f64,
    /// Standard error of the slope from the fit residuals.
    pub stderr: f64,
    /// `(v, max pairwise splitting)` samples, ascending in `v`.
    pub samples: Vec<(f64, f64)>,
}

/// Maximum pairwise distance within a set of eigenvalues.
fn max_pairwise(eigs: &[Complex64]) -> f64 {
    let mut best = 0.0f64;
    for i in 0..eigs.len() {
        for j in i + 1..eigs.len() {
            best = best.max((eigs[i] - eigs[j]).norm());
        }
    }
    best
}

/// Fit the splitting exponent of a matrix family with a degeneracy at
/// `v = 0`. Errors when the spectrum shows no `v` dependence (splitting
/// below 1e-12 at every sample).
pub fn splitting_exponent(
    m: &ParametricMatrix,
    decades: DecadeRange,
) -> Result<SplittingFit, NumericsError> {
    if decades.max < decades.min + 2 {
        return Err(NumericsError::BadSpec(
            "decade range must span at least 3 decades".into(),
        ));
    }
    let mut samples = Vec::new();
    for nu in decades.values() {
        let a = eval_matrix(m, Complex64::new(nu, 0.0));
        let eigs = eigenvalues(&a)?;
        samples.push((nu, max_pairwise(&eigs)));
    }
    samples.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    if samples.iter().all(|(_, s)| *s < 1e-12) {
        return Err(NumericsError::DegenerateSpectrum);
    }
    let pts: Vec<(f64, f64)> = samples
        .iter()
        .filter(|(_, s)| *s > 0.0)
        .map(|(nu, s)| (nu.ln(), s.ln()))
        .collect();
    let n = pts.len() as f64;
    let mean_x = pts.iter().map(|(x, _)| x).sum::<f64>() / n;
    let mean_y = pts.iter().map(|(_, y)| y).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|(x, _)| (x - mean_x).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|(x, y)| (x - mean_x) * (y - mean_y)).sum();
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let ss_res: f64 = pts
        .iter()
        .map(|(x, y)| (y - (slope * x + intercept)).powi(2))
        .sum();
    let dof = (pts.len().max(3) - 2) as f64;
    let stderr = (ss_res / dof / sxx).sqrt();
    Ok(SplittingFit {
        exponent: slope,
        stderr,
        samples,
    })
}
