//! Least-squares slope of log_q(ratio) against the step index. The slope
//! estimates the growth exponent of a scan curve; a slope near zero means
//! the curve is flat and the quantity under test is bounded.

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExponentFit {
    /// Growth exponent per unit step, in base-q orders of magnitude.
    pub slope: f64,
    /// log_q of the fitted constant at step zero.
    pub intercept: f64,
    /// Largest absolute deviation of log_q(ratio) from the fitted line.
    pub residual: f64,
}

impl ExponentFit {
    /// The fitted constant q^intercept.
    pub fn constant(&self, q: f64) -> f64 {
        q.powf(self.intercept)
    }
}

/// Fits (k, log_q ratio) pairs. Needs at least three points and strictly
/// positive ratios; zeros would send the log to -inf and any fit through
/// them is meaningless.
pub fn fit_exponent(points: &[(i32, f64)], q: f64) -> CliResult<ExponentFit> {
    if points.len() < 3 {
        return Err(CliError::Config(format!(
            "exponent fit needs at least 3 points, got {}",
            points.len()
        )));
    }
    let log_q = q.ln();
    let mut xs = Vec::with_capacity(points.len());
    let mut ys = Vec::with_capacity(points.len());
    for (k, ratio) in points {
        if !(*ratio > 0.0 && ratio.is_finite()) {
            return Err(CliError::Check(format!(
                "cannot fit an exponent through ratio {ratio} at k={k}"
            )));
        }
        xs.push(*k as f64);
        ys.push(ratio.ln() / log_q);
    }
    let n = xs.len() as f64;
    let mean_x = xs.iter().sum::<f64>() / n;
    let mean_y = ys.iter().sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for (x, y) in xs.iter().zip(&ys) {
        sxx += (x - mean_x) * (x - mean_x);
        sxy += (x - mean_x) * (y - mean_y);
    }
    if sxx == 0.0 {
        return Err(CliError::Config(
            "exponent fit needs at least two distinct k values".into(),
        ));
    }
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let mut residual: f64 = 0.0;
    for (x, y) in xs.iter().zip(&ys) {
        residual = residual.max((y - (intercept + slope * x)).abs());
    }
    Ok(ExponentFit {
        slope,
        intercept,
        residual,
    })
}
