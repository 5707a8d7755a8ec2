//! Long-format price CSV: `instrument,date,price`, one row per observation.

use std::fs;
use std::path::{Path, PathBuf};

use chrono::{Datelike, Duration, NaiveDate, Weekday};
use indexmap::IndexMap;

use super::CliError;
use crate::series::PriceSeries;

struct Row {
    date: NaiveDate,
    price: f64,
    line: u64,
}

fn io_err(path: &Path, e: impl ToString) -> CliError {
    CliError::Io { path: path.to_path_buf(), message: e.to_string() }
}

fn column(headers: &csv::StringRecord, name: &str) -> Option<usize> {
    headers.iter().position(|h| h.trim().eq_ignore_ascii_case(name))
}

/// Reads a long-format CSV into one series per instrument, in order of first
/// appearance. Rows are sorted by date within each instrument and numbered
/// with consecutive trading-day ordinals from 0.
pub fn ingest_csv(path: &Path) -> Result<Vec<PriceSeries>, CliError> {
    let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    parse_csv(&text, path, None)
}

/// Reads every `*.csv` in `dir`, sorted by file name. Files with an
/// `instrument` column are long format; otherwise `date,price` with the file
/// stem as the instrument id.
pub fn ingest_dir(dir: &Path) -> Result<Vec<PriceSeries>, CliError> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| io_err(dir, e))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x.eq_ignore_ascii_case("csv")))
        .collect();
    files.sort();
    let mut out = Vec::new();
    for f in files {
        let text = fs::read_to_string(&f).map_err(|e| io_err(&f, e))?;
        let stem = f.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
        out.extend(parse_csv(&text, &f, Some(&stem))?);
    }
    Ok(out)
}

fn parse_csv(text: &str, path: &Path, default_id: Option<&str>) -> Result<Vec<PriceSeries>, CliError> {
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(text.as_bytes());
    let headers = reader.headers().map_err(|e| io_err(path, e))?.clone();
    let malformed = |line: u64, reason: String| CliError::MalformedRow { path: path.to_path_buf(), line, reason };

    let id_col = column(&headers, "instrument");
    if id_col.is_none() && default_id.is_none() {
        return Err(malformed(1, "missing `instrument` column".into()));
    }
    let date_col = column(&headers, "date").ok_or_else(|| malformed(1, "missing `date` column".into()))?;
    let price_col = column(&headers, "price").ok_or_else(|| malformed(1, "missing `price` column".into()))?;

    let mut groups: IndexMap<String, Vec<Row>> = IndexMap::new();
    for record in reader.records() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            malformed(line, e.to_string())
        })?;
        let line = record.position().map_or(0, |p| p.line());
        let field = |i: usize| record.get(i).ok_or_else(|| malformed(line, format!("missing field {}", i + 1)));

        let id = match id_col {
            Some(i) => field(i)?.to_string(),
            None => default_id.unwrap_or_default().to_string(),
        };
        if id.is_empty() {
            return Err(malformed(line, "empty instrument id".into()));
        }
        let raw_date = field(date_col)?;
        let date = NaiveDate::parse_from_str(raw_date, "%Y-%m-%d")
            .map_err(|_| malformed(line, format!("bad date `{raw_date}`")))?;
        let raw_price = field(price_col)?;
        let price: f64 = raw_price.parse().map_err(|_| malformed(line, format!("bad price `{raw_price}`")))?;
        if !price.is_finite() {
            return Err(malformed(line, format!("bad price `{raw_price}`")));
        }
        if price <= 0.0 {
            return Err(CliError::NonPositivePrice { path: path.to_path_buf(), line });
        }
        groups.entry(id).or_default().push(Row { date, price, line });
    }

    groups
        .into_iter()
        .map(|(id, mut rows)| {
            rows.sort_by_key(|r| (r.date, r.line));
            if let Some(w) = rows.windows(2).find(|w| w[0].date == w[1].date) {
                return Err(CliError::DuplicateDate { instrument: id, date: w[1].date.to_string() });
            }
            let prices = rows.into_iter().map(|r| r.price).collect();
            PriceSeries::from_prices(id, prices).map_err(CliError::from)
        })
        .collect()
}

/// First date used when writing ordinal-dated series back to CSV.
pub fn base_date() -> NaiveDate {
    NaiveDate::from_ymd_opt(2000, 1, 3).expect("valid date")
}

/// The `ordinal`-th weekday on or after `base`.
pub fn business_day(base: NaiveDate, ordinal: i64) -> NaiveDate {
    let mut date = base;
    while matches!(date.weekday(), Weekday::Sat | Weekday::Sun) {
        date += Duration::days(1);
    }
    let weeks = ordinal.div_euclid(5);
    let mut rest = ordinal.rem_euclid(5);
    date += Duration::weeks(weeks);
    while rest > 0 {
        date += Duration::days(1);
        if !matches!(date.weekday(), Weekday::Sat | Weekday::Sun) {
            rest -= 1;
        }
    }
    date
}

/// Long-format CSV for `universe`; ordinal `k` is written as the `k`-th
/// weekday from [`base_date`]. Prices use the shortest round-trip decimal form.
pub fn emit_csv(universe: &[PriceSeries]) -> String {
    let mut out = String::from("instrument,date,price\n");
    let base = base_date();
    for s in universe {
        for (d, p) in s.dates().iter().zip(s.prices()) {
            out.push_str(&format!("{},{},{}\n", s.instrument_id(), business_day(base, *d), p));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Result<Vec<PriceSeries>, CliError> {
        parse_csv(text, Path::new("t.csv"), None)
    }

    #[test]
    fn single_instrument() {
        let u = parse("instrument,date,price\nA,2020-01-02,1\nA,2020-01-03,2\nA,2020-01-06,4\n").unwrap();
        assert_eq!(u.len(), 1);
        assert_eq!(u[0].prices(), &[1.0, 2.0, 4.0]);
        assert_eq!(u[0].dates(), &[0, 1, 2]);
    }

    #[test]
    fn sorts_within_instrument() {
        let u = parse("instrument,date,price\nA,2020-01-03,2\nB,2020-01-01,9\nA,2020-01-02,1\n").unwrap();
        assert_eq!(u[0].instrument_id(), "A");
        assert_eq!(u[0].prices(), &[1.0, 2.0]);
        assert_eq!(u[1].prices(), &[9.0]);
    }

    #[test]
    fn row_errors_carry_line_numbers() {
        let text = "instrument,date,price\nA,2020-01-01,1\nA,2020-01-02,0\n";
        assert!(matches!(parse(text), Err(CliError::NonPositivePrice { line: 3, .. })));
        let text = "instrument,date,price\nA,2020-01-01,abc\n";
        assert!(matches!(parse(text), Err(CliError::MalformedRow { line: 2, .. })));
        let text = "instrument,date,price\nA,01/02/2020,1\n";
        assert!(matches!(parse(text), Err(CliError::MalformedRow { line: 2, .. })));
        let text = "instrument,date,price\nA,2020-01-01\n";
        assert!(matches!(parse(text), Err(CliError::MalformedRow { line: 2, .. })));
        assert!(matches!(parse("name,date,price\n"), Err(CliError::MalformedRow { line: 1, .. })));
    }

    #[test]
    fn duplicate_dates() {
        let text = "instrument,date,price\nA,2020-01-01,1\nB,2020-01-01,1\nA,2020-01-01,2\n";
        match parse(text) {
            Err(CliError::DuplicateDate { instrument, date }) => {
                assert_eq!(instrument, "A");
                assert_eq!(date, "2020-01-01");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn per_file_format_uses_stem() {
        let u = parse_csv("date,price\n2020-01-02,3\n2020-01-01,2\n", Path::new("x/IBM.csv"), Some("IBM")).unwrap();
        assert_eq!(u[0].instrument_id(), "IBM");
        assert_eq!(u[0].prices(), &[2.0, 3.0]);
    }

    #[test]
    fn business_days_skip_weekends() {
        let base = base_date(); // Monday
        assert_eq!(business_day(base, 0), base);
        assert_eq!(business_day(base, 4).weekday(), Weekday::Fri);
        assert_eq!(business_day(base, 5), base + Duration::days(7));
        assert_eq!(business_day(base, 6), base + Duration::days(8));
        let dates: Vec<_> = (0..300).map(|k| business_day(base, k)).collect();
        assert!(dates.windows(2).all(|w| w[0] < w[1]));
        assert!(dates.iter().all(|d| !matches!(d.weekday(), Weekday::Sat | Weekday::Sun)));
    }
}
