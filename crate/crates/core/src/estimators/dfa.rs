//! (Multifractal) detrended fluctuation analysis with linear detrending.
//!
//! For each block size `m` the signal is cut into `floor(T / m)` blocks (the
//! tail remainder is dropped). Each block gets a least-squares line; the
//! block's mean squared residual is raised to `q / 2`, averaged over blocks and
//! raised to `1 / q` to give `F_{m,q}`. `H(q)` is the slope of `ln F` on `ln m`.

use super::{log_log_points, DfaInput, EstimatorConfig, HEstimate, Method};
use crate::error::{HurstError, Result};
use crate::regression::ols_slope;
use crate::series::LogSeries;

/// Fluctuations below this fraction of the input's range count as zero.
const ZERO_FLUCTUATION: f64 = 1e-12;

/// Cumulative sum of mean-subtracted log returns, starting at 0.
///
/// Same length as the input; equals the log-price path with its end-to-end
/// chord removed.
fn profile(values: &[f64]) -> Vec<f64> {
    let n_ret = values.len() - 1;
    let mean = (values[n_ret] - values[0]) / n_ret as f64;
    let mut out = Vec::with_capacity(values.len());
    let mut acc = 0.0;
    out.push(acc);
    for w in values.windows(2) {
        acc += (w[1] - w[0]) - mean;
        out.push(acc);
    }
    out
}

/// Mean squared residual of `block` about its least-squares line over `j = 0..m`.
fn detrended_variance(block: &[f64]) -> f64 {
    let m = block.len() as f64;
    let x_mean = (m - 1.0) / 2.0;
    let y_mean = block.iter().sum::<f64>() / m;
    let sxx = m * (m * m - 1.0) / 12.0;
    let sxy: f64 = block.iter().enumerate().map(|(j, y)| (j as f64 - x_mean) * (y - y_mean)).sum();
    let slope = sxy / sxx;
    block
        .iter()
        .enumerate()
        .map(|(j, y)| {
            let r = y - y_mean - slope * (j as f64 - x_mean);
            r * r
        })
        .sum::<f64>()
        / m
}

/// The `(m, F_{m,q})` pairs for every configured block size.
pub fn dfa_fluctuations(x: &LogSeries, cfg: &EstimatorConfig) -> Result<Vec<(usize, f64)>> {
    cfg.check_q()?;
    if cfg.detrend_order != 1 {
        return Err(HurstError::InvalidConfig(format!(
            "only linear detrending is supported (detrend_order = {})",
            cfg.detrend_order
        )));
    }
    let sizes = cfg.block_sizes(x.len())?;
    let signal = match cfg.dfa_input {
        DfaInput::Profile => profile(x.values()),
        DfaInput::RawLogPrice => x.values().to_vec(),
    };

    let half_q = cfg.q / 2.0;
    Ok(sizes
        .into_iter()
        .map(|m| {
            let blocks = signal.chunks_exact(m);
            let d = blocks.len() as f64;
            let mean_b = blocks
                .map(|b| {
                    let v = detrended_variance(b);
                    if half_q == 1.0 {
                        v
                    } else {
                        v.powf(half_q)
                    }
                })
                .sum::<f64>()
                / d;
            (m, mean_b.powf(1.0 / cfg.q))
        })
        .collect())
}

pub fn dfa(x: &LogSeries, cfg: &EstimatorConfig) -> Result<HEstimate> {
    let fluct = dfa_fluctuations(x, cfg)?;
    let values = x.values();
    let (lo, hi) = values.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(*v), hi.max(*v)));
    let floor = ZERO_FLUCTUATION * (hi - lo);
    if let Some((m, _)) = fluct.iter().find(|(_, f)| !(*f > floor)) {
        return Err(HurstError::DegenerateRegression(format!("zero fluctuation at block size {m}")));
    }
    let (sizes, stats): (Vec<usize>, Vec<f64>) = fluct.into_iter().unzip();
    let fit = ols_slope(&log_log_points(&sizes, &stats))?;
    Ok(HEstimate::new(fit.slope, fit, Method::Dfa, x.len()))
}
