//! Price and log-price series.
//!
//! Dates are trading-day ordinals, not calendar dates. Calendar handling is
//! confined to CSV ingestion.

use crate::error::{HurstError, Result};

/// One instrument's gap-free, strictly positive price history.
#[derive(Debug, Clone, PartialEq)]
pub struct PriceSeries {
    instrument_id: String,
    dates: Vec<i64>,
    prices: Vec<f64>,
}

impl PriceSeries {
    pub fn new(instrument_id: impl Into<String>, dates: Vec<i64>, prices: Vec<f64>) -> Result<Self> {
        if dates.len() != prices.len() {
            return Err(HurstError::LengthMismatch { dates: dates.len(), values: prices.len() });
        }
        check_dates(&dates)?;
        if let Some((index, &price)) = prices.iter().enumerate().find(|(_, p)| !(**p > 0.0) || !p.is_finite()) {
            return Err(HurstError::NonPositivePrice { index, price });
        }
        Ok(Self { instrument_id: instrument_id.into(), dates, prices })
    }

    /// Builds a series with ordinals `0..prices.len()`.
    pub fn from_prices(instrument_id: impl Into<String>, prices: Vec<f64>) -> Result<Self> {
        let dates = (0..prices.len() as i64).collect();
        Self::new(instrument_id, dates, prices)
    }

    pub fn instrument_id(&self) -> &str {
        &self.instrument_id
    }

    pub fn dates(&self) -> &[i64] {
        &self.dates
    }

    pub fn prices(&self) -> &[f64] {
        &self.prices
    }

    pub fn len(&self) -> usize {
        self.prices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.prices.is_empty()
    }

    /// Multiplies every price by `factor` (> 0).
    pub fn rescaled(&self, factor: f64) -> Result<Self> {
        let prices = self.prices.iter().map(|p| p * factor).collect();
        Self::new(self.instrument_id.clone(), self.dates.clone(), prices)
    }
}

/// Natural-log transform of a [`PriceSeries`]; the `X(t)` every estimator consumes.
#[derive(Debug, Clone, PartialEq)]
pub struct LogSeries {
    instrument_id: String,
    dates: Vec<i64>,
    values: Vec<f64>,
}

impl LogSeries {
    pub fn new(instrument_id: impl Into<String>, dates: Vec<i64>, values: Vec<f64>) -> Result<Self> {
        if dates.len() != values.len() {
            return Err(HurstError::LengthMismatch { dates: dates.len(), values: values.len() });
        }
        check_dates(&dates)?;
        Ok(Self { instrument_id: instrument_id.into(), dates, values })
    }

    /// Wraps raw values with ordinals `0..values.len()`.
    pub fn from_values(instrument_id: impl Into<String>, values: Vec<f64>) -> Self {
        let dates = (0..values.len() as i64).collect();
        Self { instrument_id: instrument_id.into(), dates, values }
    }

    pub fn instrument_id(&self) -> &str {
        &self.instrument_id
    }

    pub fn dates(&self) -> &[i64] {
        &self.dates
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Contiguous sub-series `range` (ordinals carried through).
    pub fn slice(&self, range: std::ops::Range<usize>) -> LogSeries {
        LogSeries {
            instrument_id: self.instrument_id.clone(),
            dates: self.dates[range.clone()].to_vec(),
            values: self.values[range].to_vec(),
        }
    }

    pub fn reversed(&self) -> LogSeries {
        let mut values = self.values.clone();
        values.reverse();
        LogSeries { instrument_id: self.instrument_id.clone(), dates: self.dates.clone(), values }
    }

    /// Adds `offset` to every value (a price rescale by `exp(offset)`).
    pub fn shifted(&self, offset: f64) -> LogSeries {
        LogSeries {
            instrument_id: self.instrument_id.clone(),
            dates: self.dates.clone(),
            values: self.values.iter().map(|v| v + offset).collect(),
        }
    }
}

fn check_dates(dates: &[i64]) -> Result<()> {
    match dates.windows(2).position(|w| w[1] <= w[0]) {
        Some(i) => Err(HurstError::UnorderedDates { index: i + 1 }),
        None => Ok(()),
    }
}

pub fn to_log_prices(series: &PriceSeries) -> Result<LogSeries> {
    if let Some((index, &price)) = series.prices.iter().enumerate().find(|(_, p)| !(**p > 0.0)) {
        return Err(HurstError::NonPositivePrice { index, price });
    }
    Ok(LogSeries {
        instrument_id: series.instrument_id.clone(),
        dates: series.dates.clone(),
        values: series.prices.iter().map(|p| p.ln()).collect(),
    })
}

/// First differences of the log prices; one element shorter than the input.
pub fn log_returns(series: &LogSeries) -> Result<Vec<f64>> {
    if series.len() < 2 {
        return Err(HurstError::SeriesTooShort { needed: 2, got: series.len() });
    }
    Ok(series.values.windows(2).map(|w| w[1] - w[0]).collect())
}
