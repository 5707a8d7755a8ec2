//! Self-similarity exponent estimators.
//!
//! Each estimator reduces a log-price window to a set of `(ln scale, ln statistic)`
//! points and reads `H` off the least-squares slope.

mod dfa;
mod ghe;
mod gm2;

use std::fmt;
use std::str::FromStr;

use crate::error::{HurstError, Result};
use crate::regression::RegressionFit;

pub use dfa::{dfa, dfa_fluctuations};
pub use ghe::{ghe, ghe_moments};
pub use gm2::{gm2, gm2_mean_ranges};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    Ghe,
    Dfa,
    Gm2,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Ghe, Method::Dfa, Method::Gm2];

    pub fn as_str(self) -> &'static str {
        match self {
            Method::Ghe => "GHE",
            Method::Dfa => "DFA",
            Method::Gm2 => "GM2",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "ghe" => Ok(Method::Ghe),
            "dfa" => Ok(Method::Dfa),
            "gm2" => Ok(Method::Gm2),
            other => Err(format!("unknown method `{other}` (expected ghe, dfa or gm2)")),
        }
    }
}

/// Signal fed to the DFA detrending steps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DfaInput {
    /// Cumulative sum of mean-subtracted log returns (standard MF-DFA profile).
    #[default]
    Profile,
    /// The log prices themselves.
    RawLogPrice,
}

impl FromStr for DfaInput {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "profile" => Ok(DfaInput::Profile),
            "raw" => Ok(DfaInput::RawLogPrice),
            other => Err(format!("unknown DFA input `{other}` (expected profile or raw)")),
        }
    }
}

/// Tuning for one estimator.
///
/// `tau_max` is used by GHE only; `k_min`/`k_max` bound the DFA and GM2 block
/// sizes `m = 2^k`. With `k_max = None` the largest `k` with `2^k <= T/2` is
/// used, so the coarsest scale still has two blocks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EstimatorConfig {
    pub q: f64,
    pub tau_max: usize,
    pub k_min: u32,
    pub k_max: Option<u32>,
    pub detrend_order: u32,
    pub dfa_input: DfaInput,
}

impl EstimatorConfig {
    pub const DEFAULT_TAU_MAX: usize = 19;
    pub const DEFAULT_K_MIN: u32 = 2;

    pub fn ghe() -> Self {
        Self { q: 1.0, ..Self::base() }
    }

    pub fn dfa() -> Self {
        Self { q: 2.0, ..Self::base() }
    }

    pub fn gm2() -> Self {
        Self::base()
    }

    pub fn for_method(method: Method) -> Self {
        match method {
            Method::Ghe => Self::ghe(),
            Method::Dfa => Self::dfa(),
            Method::Gm2 => Self::gm2(),
        }
    }

    fn base() -> Self {
        Self {
            q: 1.0,
            tau_max: Self::DEFAULT_TAU_MAX,
            k_min: Self::DEFAULT_K_MIN,
            k_max: None,
            detrend_order: 1,
            dfa_input: DfaInput::Profile,
        }
    }

    fn check_q(&self) -> Result<()> {
        if self.q.is_finite() && self.q > 0.0 {
            Ok(())
        } else {
            Err(HurstError::InvalidConfig(format!("q must be a positive finite number, got {}", self.q)))
        }
    }

    /// Dyadic block sizes `2^k_min ..= 2^k_max` for a series of length `len`.
    pub fn block_sizes(&self, len: usize) -> Result<Vec<usize>> {
        if self.k_min < 2 {
            return Err(HurstError::InvalidConfig(format!("2^k_min must be >= 4 (k_min = {})", self.k_min)));
        }
        if self.k_min + 2 >= usize::BITS {
            return Err(HurstError::InvalidConfig(format!("k_min = {} is too large", self.k_min)));
        }
        let needed = 1usize << (self.k_min + 2);
        if len < needed {
            return Err(HurstError::SeriesTooShort { needed, got: len });
        }
        let k_max = match self.k_max {
            Some(k) => k,
            None => (len / 2).ilog2(),
        };
        if k_max < self.k_min + 2 {
            return Err(HurstError::InvalidConfig(format!(
                "need k_max - k_min >= 2, got k_min = {}, k_max = {k_max}",
                self.k_min
            )));
        }
        if k_max >= usize::BITS || (1usize << k_max) >= len {
            return Err(HurstError::InvalidConfig(format!("2^k_max must be below the series length {len}")));
        }
        Ok((self.k_min..=k_max).map(|k| 1usize << k).collect())
    }
}

impl Default for EstimatorConfig {
    fn default() -> Self {
        Self::ghe()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HEstimate {
    pub h: f64,
    pub fit: RegressionFit,
    pub method: Method,
    pub window_length: usize,
    /// Set when `h` falls outside `(0, 2)`; such estimates are kept, not rejected.
    pub suspect: bool,
}

impl HEstimate {
    pub(crate) fn new(h: f64, fit: RegressionFit, method: Method, window_length: usize) -> Self {
        let suspect = !(h > 0.0 && h < 2.0);
        Self { h, fit, method, window_length, suspect }
    }
}

/// Runs `method` on `x`.
pub fn estimate(method: Method, x: &crate::series::LogSeries, cfg: &EstimatorConfig) -> Result<HEstimate> {
    match method {
        Method::Ghe => ghe(x, cfg),
        Method::Dfa => dfa(x, cfg),
        Method::Gm2 => gm2(x, cfg),
    }
}

/// `|v|^q` with the common orders special-cased.
#[inline]
pub(crate) fn abs_pow(v: f64, q: f64) -> f64 {
    if q == 1.0 {
        v.abs()
    } else if q == 2.0 {
        v * v
    } else {
        v.abs().powf(q)
    }
}

pub(crate) fn log_log_points(scales: &[usize], stats: &[f64]) -> Vec<(f64, f64)> {
    scales.iter().zip(stats).map(|(&m, &s)| ((m as f64).ln(), s.ln())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn method_parsing_round_trips() {
        for m in Method::ALL {
            assert_eq!(m.as_str().parse::<Method>().unwrap(), m);
        }
        assert!("rs".parse::<Method>().is_err());
    }

    #[test]
    fn default_block_sizes() {
        let cfg = EstimatorConfig::gm2();
        assert_eq!(cfg.block_sizes(512).unwrap(), vec![4, 8, 16, 32, 64, 128, 256]);
        assert_eq!(cfg.block_sizes(32).unwrap(), vec![4, 8, 16]);
        assert_eq!(cfg.block_sizes(100).unwrap(), vec![4, 8, 16, 32]);
    }

    #[test]
    fn block_size_validation() {
        let cfg = EstimatorConfig::gm2();
        assert_eq!(cfg.block_sizes(15), Err(HurstError::SeriesTooShort { needed: 16, got: 15 }));
        // 16 points: k_max = 3, only two scales
        assert!(matches!(cfg.block_sizes(16), Err(HurstError::InvalidConfig(_))));
        let wide = EstimatorConfig { k_max: Some(9), ..cfg };
        assert!(matches!(wide.block_sizes(512), Err(HurstError::InvalidConfig(_))));
        let tiny = EstimatorConfig { k_min: 1, ..cfg };
        assert!(matches!(tiny.block_sizes(512), Err(HurstError::InvalidConfig(_))));
    }

    #[test]
    fn suspect_flag() {
        let fit = RegressionFit { slope: 0.0, intercept: 0.0, r_squared: 1.0, n_points: 3 };
        assert!(!HEstimate::new(0.5, fit, Method::Ghe, 10).suspect);
        assert!(HEstimate::new(-0.1, fit, Method::Ghe, 10).suspect);
        assert!(HEstimate::new(2.0, fit, Method::Ghe, 10).suspect);
        assert!(HEstimate::new(f64::NAN, fit, Method::Ghe, 10).suspect);
    }
}
