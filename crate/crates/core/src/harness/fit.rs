use serde::{Deserialize, Serialize};

use super::ScanRow;
use crate::error::{Error, Result};

/// Least-squares line through `(ln X, ln count)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExponentFit {
    pub slope: f64,
    pub intercept: f64,
    pub residual_stderr: f64,
    pub points_used: usize,
    /// Rows left out because they had no positive count.
    pub excluded: usize,
    pub warning: Option<String>,
}

/// Ordinary least squares of `ln y` on `ln x` over points with `x, y > 0`.
pub fn fit_power_law(points: &[(f64, f64)]) -> Result<ExponentFit> {
    let used: Vec<(f64, f64)> = points
        .iter()
        .filter(|(x, y)| *x > 0.0 && *y > 0.0 && y.is_finite())
        .map(|&(x, y)| (x.ln(), y.ln()))
        .collect();
    let excluded = points.len() - used.len();
    let m = used.len();
    if m < 2 {
        return Err(Error::precondition(format!(
            "a fit needs at least 2 usable points, got {m}"
        )));
    }
    let mx = used.iter().map(|p| p.0).sum::<f64>() / m as f64;
    let my = used.iter().map(|p| p.1).sum::<f64>() / m as f64;
    let sxx: f64 = used.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::precondition("a fit needs at least two distinct sizes"));
    }
    let sxy: f64 = used.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ssr: f64 = used.iter().map(|p| (p.1 - intercept - slope * p.0).powi(2)).sum();
    let residual_stderr = if m > 2 { (ssr / (m - 2) as f64).sqrt() } else { 0.0 };
    Ok(ExponentFit {
        slope,
        intercept,
        residual_stderr,
        points_used: m,
        excluded,
        warning: (excluded > 0).then(|| format!("{excluded} point(s) without a positive count were excluded")),
    })
}

/// Fits `count ~ C X^slope` over the rows that carry a count.
pub fn fit_exponent(rows: &[ScanRow]) -> Result<ExponentFit> {
    let points: Vec<(f64, f64)> = rows
        .iter()
        .map(|r| (r.x as f64, r.count.as_ref().map_or(0.0, |c| c.to_f64())))
        .collect();
    fit_power_law(&points)
}
