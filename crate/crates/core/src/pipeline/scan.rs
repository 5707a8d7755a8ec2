use std::cmp::Ordering;
use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{HurstError, Result};
use crate::estimators::{estimate, EstimatorConfig, Method};
use crate::series::{LogSeries, PriceSeries};

pub const MIN_WINDOW: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MethodConfigs {
    pub ghe: EstimatorConfig,
    pub dfa: EstimatorConfig,
    pub gm2: EstimatorConfig,
}

impl MethodConfigs {
    pub fn get(&self, method: Method) -> &EstimatorConfig {
        match method {
            Method::Ghe => &self.ghe,
            Method::Dfa => &self.dfa,
            Method::Gm2 => &self.gm2,
        }
    }
}

impl Default for MethodConfigs {
    fn default() -> Self {
        Self { ghe: EstimatorConfig::ghe(), dfa: EstimatorConfig::dfa(), gm2: EstimatorConfig::gm2() }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanSpec {
    pub window: usize,
    pub roll_step: usize,
    pub methods: Vec<Method>,
    pub configs: MethodConfigs,
}

impl ScanSpec {
    pub const DEFAULT_ROLL: usize = 20;

    pub fn new(window: usize, methods: Vec<Method>) -> Self {
        Self { window, roll_step: Self::DEFAULT_ROLL, methods, configs: MethodConfigs::default() }
    }

    fn validate(&self) -> Result<()> {
        if self.window < MIN_WINDOW {
            return Err(HurstError::InvalidConfig(format!("window must be >= {MIN_WINDOW}, got {}", self.window)));
        }
        if self.roll_step == 0 {
            return Err(HurstError::InvalidConfig("roll step must be >= 1".into()));
        }
        if self.methods.is_empty() {
            return Err(HurstError::InvalidConfig("no estimation method selected".into()));
        }
        Ok(())
    }
}

/// One `(instrument, window end, method)` measurement.
#[derive(Debug, Clone, PartialEq)]
pub struct Observation {
    pub instrument_id: String,
    /// Trading-day ordinal of the last price in the estimation window.
    pub window_end: i64,
    pub method: Method,
    pub h: f64,
    pub suspect: bool,
    /// `ln(price[t + window] / price[t])` with `t` the window end.
    pub forward_log_return: f64,
    pub forward_days: usize,
}

impl Observation {
    fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.instrument_id
            .cmp(&other.instrument_id)
            .then(self.window_end.cmp(&other.window_end))
            .then(self.method.cmp(&other.method))
            .then(self.h.total_cmp(&other.h))
            .then(self.forward_log_return.total_cmp(&other.forward_log_return))
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Diagnostics {
    /// Instruments with fewer than `2 * window` prices.
    pub short_series: Vec<String>,
    /// Skipped `(position, method)` pairs, keyed by method and error text.
    pub failed_estimates: BTreeMap<(Method, String), usize>,
}

impl Diagnostics {
    pub fn failure_count(&self) -> usize {
        self.failed_estimates.values().sum()
    }

    fn merge(&mut self, other: Diagnostics) {
        self.short_series.extend(other.short_series);
        for (k, v) in other.failed_estimates {
            *self.failed_estimates.entry(k).or_default() += v;
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ScanOutput {
    /// Sorted by instrument, window end, then method.
    pub observations: Vec<Observation>,
    pub diagnostics: Diagnostics,
}

/// Window-end indices `window - 1, window - 1 + roll, ...` that leave a full
/// forward window, i.e. `t + window <= len - 1`.
pub fn window_end_positions(len: usize, window: usize, roll_step: usize) -> Vec<usize> {
    if window == 0 || roll_step == 0 || len < 2 * window {
        return Vec::new();
    }
    (window - 1..=len - 1 - window).step_by(roll_step).collect()
}

fn error_kind(err: &HurstError) -> String {
    match err {
        HurstError::DegenerateRegression(_) => "degenerate regression".into(),
        HurstError::SeriesTooShort { .. } => "series too short".into(),
        HurstError::ZeroSignal => "zero signal".into(),
        HurstError::InvalidConfig(msg) => format!("invalid config: {msg}"),
        other => other.to_string(),
    }
}

fn scan_series(series: &PriceSeries, spec: &ScanSpec) -> (Vec<Observation>, Diagnostics) {
    let mut diag = Diagnostics::default();
    let positions = window_end_positions(series.len(), spec.window, spec.roll_step);
    if positions.is_empty() {
        diag.short_series.push(series.instrument_id().to_string());
        return (Vec::new(), diag);
    }

    let prices = series.prices();
    let dates = series.dates();
    let mut out = Vec::with_capacity(positions.len() * spec.methods.len());
    for t in positions {
        let start = t + 1 - spec.window;
        // log prices relative to the window's first price; the estimators only
        // see differences up to a constant shift
        let base = prices[start];
        let values: Vec<f64> = prices[start..=t].iter().map(|p| (p / base).ln()).collect();
        let window = LogSeries::new(series.instrument_id(), dates[start..=t].to_vec(), values)
            .expect("dates validated by PriceSeries");
        let forward_log_return = (prices[t + spec.window] / prices[t]).ln();

        for &method in &spec.methods {
            match estimate(method, &window, spec.configs.get(method)) {
                Ok(est) => out.push(Observation {
                    instrument_id: series.instrument_id().to_string(),
                    window_end: dates[t],
                    method,
                    h: est.h,
                    suspect: est.suspect,
                    forward_log_return,
                    forward_days: spec.window,
                }),
                Err(e) => *diag.failed_estimates.entry((method, error_kind(&e))).or_default() += 1,
            }
        }
    }
    (out, diag)
}

/// Runs the rolling-window study over `universe`.
///
/// Per-series problems (too short, estimator failures) are tallied in the
/// diagnostics rather than failing the scan.
pub fn scan(universe: &[PriceSeries], spec: &ScanSpec) -> Result<ScanOutput> {
    if universe.is_empty() {
        return Err(HurstError::EmptyUniverse);
    }
    spec.validate()?;

    let per_series: Vec<_> = universe.par_iter().map(|s| scan_series(s, spec)).collect();

    let mut output = ScanOutput::default();
    for (obs, diag) in per_series {
        output.observations.extend(obs);
        output.diagnostics.merge(diag);
    }
    output.observations.sort_by(Observation::canonical_cmp);
    output.diagnostics.short_series.sort();
    Ok(output)
}
