//! Descriptive statistics and the two-dimensional log-PCA used to
//! attribute run-to-run variability to epochs vs. throughput.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Arithmetic mean and sample standard deviation (n-1 divisor). A
/// single value yields std 0 with a warning.
pub fn mean_std(xs: &[f64]) -> Result<(f64, f64)> {
    if xs.is_empty() {
        return Err(Error::EmptyInput);
    }
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() == 1 {
        log::warn!("standard deviation of a single sample reported as 0");
        return Ok((mean, 0.0));
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    Ok((mean, var.sqrt()))
}

/// PCA of per-run (epochs, epoch throughput) points in log10 space.
///
/// Components are orthonormal; std_devs are the square roots of the
/// covariance eigenvalues, descending. Log base and the n-1 covariance
/// divisor are recorded in the serialized output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LogPcaResult {
    /// Mean in (log10 epochs, log10 throughput) space.
    pub mean: [f64; 2],
    /// Unit-length principal axes, first one sign-normalized to a
    /// non-negative x-coordinate.
    pub components: [[f64; 2]; 2],
    pub std_devs: [f64; 2],
    /// "log10"; fixed, kept in the output for self-description.
    pub log_base: &'static str,
    /// "n-1"; fixed, kept in the output for self-description.
    pub covariance_divisor: &'static str,
}

/// Closed-form 2x2 symmetric eigendecomposition of the log-space sample
/// covariance. No general eigensolver involved.
pub fn log_pca(points: &[(f64, f64)]) -> Result<LogPcaResult> {
    if points.len() < 2 {
        return Err(Error::EmptyInput);
    }
    if points.iter().any(|&(e, t)| e <= 0.0 || t <= 0.0) {
        return Err(Error::NonPositiveValue);
    }
    let logs: Vec<(f64, f64)> = points.iter().map(|&(e, t)| (e.log10(), t.log10())).collect();
    let n = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / n;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    let mut syy = 0.0;
    for &(x, y) in &logs {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
        syy += (y - my) * (y - my);
    }
    let div = n - 1.0;
    let (a, b, c) = (sxx / div, sxy / div, syy / div);

    let half_trace = (a + c) / 2.0;
    let disc = (((a - c) / 2.0).powi(2) + b * b).sqrt();
    let l1 = half_trace + disc;
    let l2 = (half_trace - disc).max(0.0);

    let mut v1 = if b.abs() > 0.0 {
        [b, l1 - a]
    } else if a >= c {
        [1.0, 0.0]
    } else {
        [0.0, 1.0]
    };
    let norm = (v1[0] * v1[0] + v1[1] * v1[1]).sqrt();
    v1 = [v1[0] / norm, v1[1] / norm];
    if v1[0] < 0.0 || (v1[0] == 0.0 && v1[1] < 0.0) {
        v1 = [-v1[0], -v1[1]];
    }
    // right-handed orthogonal complement
    let v2 = [-v1[1], v1[0]];

    Ok(LogPcaResult {
        mean: [mx, my],
        components: [v1, v2],
        std_devs: [l1.sqrt(), l2.sqrt()],
        log_base: "log10",
        covariance_divisor: "n-1",
    })
}
