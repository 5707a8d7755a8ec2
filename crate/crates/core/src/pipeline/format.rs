//! Text and CSV rendering of observations and reports.

use std::fmt::Write;

use super::buckets::Bucket;
use super::report::{BucketReport, BucketRow};
use super::scan::Observation;

const LABEL_WIDTH: usize = 10;
const COLUMN_WIDTH: usize = 9;

/// `x` with 9 significant digits, in the style of C's `%.9g`.
pub fn format_sig9(x: f64) -> String {
    const DIGITS: i32 = 9;
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    if !x.is_finite() {
        return if x.is_nan() { "nan".into() } else if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let sci = format!("{:.*e}", (DIGITS - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-4..DIGITS).contains(&exp) {
        let fixed = format!("{:.*}", (DIGITS - 1 - exp) as usize, x);
        trim_fraction(&fixed).to_string()
    } else {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_fraction(mantissa), exp.abs())
    }
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn percent(value: Option<f64>) -> String {
    match value {
        Some(v) => format!("{v:.2}%"),
        None => "n/a".into(),
    }
}

/// Observation CSV with header `instrument_id,window_end,method,h,suspect,forward_log_return`.
pub fn observations_csv(observations: &[Observation]) -> String {
    let mut out = String::from("instrument_id,window_end,method,h,suspect,forward_log_return\n");
    for o in observations {
        writeln!(
            out,
            "{},{},{},{},{},{}",
            csv_field(&o.instrument_id),
            o.window_end,
            o.method,
            format_sig9(o.h),
            o.suspect,
            format_sig9(o.forward_log_return)
        )
        .unwrap();
    }
    out
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// One report as an aligned text table.
pub fn render_report(report: &BucketReport) -> String {
    let mut out = String::new();
    writeln!(out, "method: {}  window: {}  buckets: {}", report.method, report.window, report.scheme.as_str()).unwrap();
    writeln!(out, "{:<LABEL_WIDTH$}{:>COLUMN_WIDTH$}{:>12}", "H range", "count", "annualized").unwrap();
    for row in report.rows.iter().chain([&report.benchmark]) {
        writeln!(out, "{:<LABEL_WIDTH$}{:>COLUMN_WIDTH$}{:>12}", row.bucket.label(), row.count, percent(row.annualized_return))
            .unwrap();
    }
    if report.degenerate {
        out.push_str("note: degenerate percentiles, some buckets are empty\n");
    }
    out
}

/// One report as CSV: `bucket,count,mean_log_return,annualized_return_pct`.
pub fn render_report_csv(report: &BucketReport) -> String {
    let mut out = String::from("bucket,count,mean_log_return,annualized_return_pct\n");
    let opt = |v: Option<f64>| v.map(format_sig9).unwrap_or_default();
    for row in report.rows.iter().chain([&report.benchmark]) {
        writeln!(out, "{},{},{},{}", row.bucket.label(), row.count, opt(row.mean_log_return), opt(row.annualized_return))
            .unwrap();
    }
    out
}

/// Side-by-side annualized returns of one method across window sizes: one
/// labeled row per bucket plus "any", one column per report.
///
/// All reports must share the method and bucket scheme; they are laid out in
/// the order given.
pub fn render_method_table(reports: &[BucketReport]) -> String {
    let mut out = String::new();
    let Some(first) = reports.first() else {
        return out;
    };
    writeln!(out, "Annualized return for {} ({} buckets)", first.method, first.scheme.as_str()).unwrap();
    write!(out, "{:<LABEL_WIDTH$}", "H range").unwrap();
    for r in reports {
        write!(out, "{:>COLUMN_WIDTH$}", r.window).unwrap();
    }
    out.push('\n');

    let labels: Vec<Bucket> = first.scheme.buckets().iter().copied().chain([Bucket::Any]).collect();
    for bucket in labels {
        write!(out, "{:<LABEL_WIDTH$}", bucket.label()).unwrap();
        for r in reports {
            let cell = percent(r.row(bucket).and_then(|row: &BucketRow| row.annualized_return));
            write!(out, "{cell:>COLUMN_WIDTH$}").unwrap();
        }
        out.push('\n');
    }
    out
}
