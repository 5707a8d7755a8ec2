//! GM2: mean block range of the log prices against block size.

use super::{log_log_points, EstimatorConfig, HEstimate, Method};
use crate::error::{HurstError, Result};
use crate::regression::ols_slope;
use crate::series::LogSeries;

/// The `(m, M_m)` pairs: mean of `max - min` over the `floor(T / m)` blocks.
pub fn gm2_mean_ranges(x: &LogSeries, cfg: &EstimatorConfig) -> Result<Vec<(usize, f64)>> {
    let sizes = cfg.block_sizes(x.len())?;
    let values = x.values();
    Ok(sizes
        .into_iter()
        .map(|m| {
            let mut ranges: Vec<f64> = values
                .chunks_exact(m)
                .map(|b| {
                    let (lo, hi) = b
                        .iter()
                        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(*v), hi.max(*v)));
                    hi - lo
                })
                .collect();
            // summed in sorted order so the mean does not depend on block order
            ranges.sort_by(f64::total_cmp);
            let d = ranges.len() as f64;
            let total: f64 = ranges.iter().sum();
            (m, total / d)
        })
        .collect())
}

pub fn gm2(x: &LogSeries, cfg: &EstimatorConfig) -> Result<HEstimate> {
    let ranges = gm2_mean_ranges(x, cfg)?;
    if let Some((m, _)) = ranges.iter().find(|(_, r)| *r == 0.0) {
        return Err(HurstError::DegenerateRegression(format!("zero mean range at block size {m}")));
    }
    let (sizes, stats): (Vec<usize>, Vec<f64>) = ranges.into_iter().unzip();
    let fit = ols_slope(&log_log_points(&sizes, &stats))?;
    Ok(HEstimate::new(fit.slope, fit, Method::Gm2, x.len()))
}
