use super::buckets::{bucketize, Bucket, BucketScheme};
use super::scan::Observation;
use crate::error::Result;
use crate::estimators::Method;

pub const TRADING_DAYS_PER_YEAR: f64 = 252.0;

/// Geometric annualization of a mean log return measured over `window`
/// trading days, in percent.
pub fn annualize(mean_log_return: f64, window: usize) -> f64 {
    ((mean_log_return * TRADING_DAYS_PER_YEAR / window as f64).exp() - 1.0) * 100.0
}

#[derive(Debug, Clone, PartialEq)]
pub struct BucketRow {
    pub bucket: Bucket,
    pub count: usize,
    /// `None` for an empty bucket.
    pub mean_log_return: Option<f64>,
    pub annualized_return: Option<f64>,
}

impl BucketRow {
    fn from_returns(bucket: Bucket, returns: &[f64], window: usize) -> Self {
        let count = returns.len();
        let mean_log_return = (count > 0).then(|| returns.iter().sum::<f64>() / count as f64);
        BucketRow { bucket, count, mean_log_return, annualized_return: mean_log_return.map(|m| annualize(m, window)) }
    }
}

/// Annualized next-window return per `H` bucket, for one window size and method.
#[derive(Debug, Clone, PartialEq)]
pub struct BucketReport {
    pub window: usize,
    pub method: Method,
    pub scheme: BucketScheme,
    pub rows: Vec<BucketRow>,
    /// The "any" row over every observation.
    pub benchmark: BucketRow,
    /// Some bucket is empty because percentiles coincide.
    pub degenerate: bool,
}

impl BucketReport {
    pub fn row(&self, bucket: Bucket) -> Option<&BucketRow> {
        if bucket == Bucket::Any {
            return Some(&self.benchmark);
        }
        self.rows.iter().find(|r| r.bucket == bucket)
    }
}

/// Builds the report for `method` from `observations` (other methods are ignored).
pub fn report(
    observations: &[Observation],
    window: usize,
    method: Method,
    scheme: BucketScheme,
) -> Result<BucketReport> {
    let selected: Vec<Observation> = observations.iter().filter(|o| o.method == method).cloned().collect();
    let assigned = bucketize(&selected, scheme)?;

    let rows: Vec<BucketRow> = scheme
        .buckets()
        .iter()
        .map(|&b| {
            let returns: Vec<f64> = selected
                .iter()
                .zip(&assigned)
                .filter(|(_, a)| **a == Some(b))
                .map(|(o, _)| o.forward_log_return)
                .collect();
            BucketRow::from_returns(b, &returns, window)
        })
        .collect();
    let all: Vec<f64> = selected.iter().map(|o| o.forward_log_return).collect();
    let benchmark = BucketRow::from_returns(Bucket::Any, &all, window);
    let degenerate = rows.iter().any(|r| r.count == 0);

    Ok(BucketReport { window, method, scheme, rows, benchmark, degenerate })
}
