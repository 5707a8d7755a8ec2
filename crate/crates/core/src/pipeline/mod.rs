//! Rolling-window study: estimate `H` on each trailing window, measure the
//! log-price change over the next window of the same length, then group the
//! forward changes by pooled `H` percentile.

mod buckets;
mod format;
mod report;
mod scan;

pub use buckets::{bucketize, percentile, Bucket, BucketScheme};
pub use format::{format_sig9, observations_csv, render_method_table, render_report, render_report_csv};
pub use report::{annualize, report, BucketReport, BucketRow, TRADING_DAYS_PER_YEAR};
pub use scan::{
    scan, window_end_positions, Diagnostics, MethodConfigs, Observation, ScanOutput, ScanSpec, MIN_WINDOW,
};
