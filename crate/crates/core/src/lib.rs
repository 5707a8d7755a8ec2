//! Self-similarity (Hurst) exponent toolkit.
//!
//! Three estimators of the self-similarity exponent `H` of a log-price path:
//!
//! * [`estimators::ghe`]: generalized Hurst exponent from the scaling of the
//!   q-th absolute moment of lagged increments.
//! * [`estimators::dfa`]: (multifractal) detrended fluctuation analysis with
//!   linear detrending.
//! * [`estimators::gm2`]: mean block range regressed against block size.
//!
//! [`synthetic`] generates exact fractional Brownian motion for calibration,
//! and [`pipeline`] runs the rolling-window study that relates `H` measured in
//! one window to the annualized log-price change over the next one.

pub mod cli;
pub mod error;
pub mod estimators;
pub mod pipeline;
pub mod regression;
pub mod series;
pub mod synthetic;

pub use error::{HurstError, Result};
pub use estimators::{dfa, ghe, gm2, DfaInput, EstimatorConfig, HEstimate, Method};
pub use regression::{ols_slope, RegressionFit};
pub use series::{log_returns, to_log_prices, LogSeries, PriceSeries};
