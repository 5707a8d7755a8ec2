//! Generalized Hurst exponent.
//!
//! `K_q(tau) = <|X(t + tau) - X(t)|^q> / <|X(t)|^q>` for `tau = 1..=tau_max`,
//! with the numerator averaged over the `T - tau` overlapping increments. The
//! slope of `ln K_q` against `ln tau` is `q * H(q)`.

use super::{abs_pow, log_log_points, EstimatorConfig, HEstimate, Method};
use crate::error::{HurstError, Result};
use crate::regression::ols_slope;
use crate::series::LogSeries;

/// The `(tau, K_q(tau))` pairs for `tau = 1..=tau_max`.
pub fn ghe_moments(x: &LogSeries, cfg: &EstimatorConfig) -> Result<Vec<(usize, f64)>> {
    cfg.check_q()?;
    let values = x.values();
    let len = values.len();
    if cfg.tau_max < 2 {
        return Err(HurstError::InvalidConfig(format!("tau_max must be >= 2, got {}", cfg.tau_max)));
    }
    if len <= cfg.tau_max {
        return Err(HurstError::SeriesTooShort { needed: cfg.tau_max + 1, got: len });
    }

    let denom = values.iter().map(|v| abs_pow(*v, cfg.q)).sum::<f64>() / len as f64;
    if denom == 0.0 {
        return Err(HurstError::ZeroSignal);
    }

    Ok((1..=cfg.tau_max)
        .map(|tau| {
            let num = values[tau..]
                .iter()
                .zip(values)
                .map(|(later, earlier)| abs_pow(later - earlier, cfg.q))
                .sum::<f64>()
                / (len - tau) as f64;
            (tau, num / denom)
        })
        .collect())
}

pub fn ghe(x: &LogSeries, cfg: &EstimatorConfig) -> Result<HEstimate> {
    let moments = ghe_moments(x, cfg)?;
    if let Some((tau, _)) = moments.iter().find(|(_, k)| *k == 0.0) {
        return Err(HurstError::DegenerateRegression(format!("K_q({tau}) is zero")));
    }
    let (lags, stats): (Vec<usize>, Vec<f64>) = moments.into_iter().unzip();
    let fit = ols_slope(&log_log_points(&lags, &stats))?;
    Ok(HEstimate::new(fit.slope / cfg.q, fit, Method::Ghe, x.len()))
}
