use std::fmt;

use super::scan::Observation;
use crate::error::{HurstError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BucketScheme {
    /// Splits at the 20th, 40th, 60th and 80th percentiles.
    Quintile,
    /// Keeps only `[p90, p95)` and `[p95, max]`.
    Tail,
}

impl BucketScheme {
    pub fn min_observations(self) -> usize {
        match self {
            BucketScheme::Quintile => 20,
            BucketScheme::Tail => 40,
        }
    }

    pub fn buckets(self) -> &'static [Bucket] {
        match self {
            BucketScheme::Quintile => &[Bucket::VeryLow, Bucket::Low, Bucket::Normal, Bucket::High, Bucket::VeryHigh],
            BucketScheme::Tail => &[Bucket::P90To95, Bucket::Above95],
        }
    }

    fn cut_points(self) -> &'static [f64] {
        match self {
            BucketScheme::Quintile => &[20.0, 40.0, 60.0, 80.0],
            BucketScheme::Tail => &[90.0, 95.0],
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            BucketScheme::Quintile => "quintile",
            BucketScheme::Tail => "tail",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Bucket {
    VeryLow,
    Low,
    Normal,
    High,
    VeryHigh,
    P90To95,
    Above95,
    /// Every observation, regardless of `H`.
    Any,
}

impl Bucket {
    pub fn label(self) -> &'static str {
        match self {
            Bucket::VeryLow => "very low",
            Bucket::Low => "low",
            Bucket::Normal => "normal",
            Bucket::High => "high",
            Bucket::VeryHigh => "very high",
            Bucket::P90To95 => "p90–95",
            Bucket::Above95 => "p>95",
            Bucket::Any => "any",
        }
    }
}

impl fmt::Display for Bucket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Percentile `p` (0..=100) of ascending `sorted`, interpolating linearly
/// between order statistics at rank `(n - 1) * p / 100`.
pub fn percentile(sorted: &[f64], p: f64) -> f64 {
    assert!(!sorted.is_empty(), "percentile of an empty sample");
    let rank = (sorted.len() - 1) as f64 * p / 100.0;
    let lo = rank.floor() as usize;
    let hi = (lo + 1).min(sorted.len() - 1);
    let frac = rank - lo as f64;
    if frac == 0.0 {
        sorted[lo]
    } else {
        sorted[lo] + frac * (sorted[hi] - sorted[lo])
    }
}

/// Assigns each observation a bucket from pooled percentiles of `h`.
///
/// The result is index-aligned with `observations`; under the tail scheme
/// observations below the 90th percentile get `None`. A value equal to a cut
/// point goes to the upper bucket.
pub fn bucketize(observations: &[Observation], scheme: BucketScheme) -> Result<Vec<Option<Bucket>>> {
    let needed = scheme.min_observations();
    if observations.len() < needed {
        return Err(HurstError::TooFewObservations { needed, got: observations.len() });
    }
    if let Some(o) = observations.iter().find(|o| o.method != observations[0].method) {
        return Err(HurstError::InvalidConfig(format!(
            "observations mix methods {} and {}",
            observations[0].method, o.method
        )));
    }

    let mut sorted: Vec<f64> = observations.iter().map(|o| o.h).collect();
    sorted.sort_by(f64::total_cmp);
    let cuts: Vec<f64> = scheme.cut_points().iter().map(|&p| percentile(&sorted, p)).collect();
    let buckets = scheme.buckets();

    Ok(observations
        .iter()
        .map(|o| {
            let above = cuts.iter().filter(|&&c| o.h >= c).count();
            match scheme {
                BucketScheme::Quintile => Some(buckets[above]),
                BucketScheme::Tail => above.checked_sub(1).map(|i| buckets[i]),
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::estimators::Method;
    use proptest::prelude::*;

    fn obs(hs: &[f64]) -> Vec<Observation> {
        hs.iter()
            .enumerate()
            .map(|(i, &h)| Observation {
                instrument_id: "X".into(),
                window_end: i as i64,
                method: Method::Ghe,
                h,
                suspect: false,
                forward_log_return: 0.0,
                forward_days: 32,
            })
            .collect()
    }

    fn count(assigned: &[Option<Bucket>], b: Bucket) -> usize {
        assigned.iter().filter(|a| **a == Some(b)).count()
    }

    #[test]
    fn percentile_interpolation() {
        let grid: Vec<f64> = (0..100).map(f64::from).collect();
        assert!((percentile(&grid, 95.0) - 94.05).abs() < 1e-12);
        assert!((percentile(&grid, 20.0) - 19.8).abs() < 1e-12);
        assert_eq!(percentile(&grid, 0.0), 0.0);
        assert_eq!(percentile(&grid, 100.0), 99.0);
        assert_eq!(percentile(&[3.0], 50.0), 3.0);
    }

    #[test]
    fn uniform_grid_quintiles() {
        let hs: Vec<f64> = (0..100).map(f64::from).collect();
        let a = bucketize(&obs(&hs), BucketScheme::Quintile).unwrap();
        for b in BucketScheme::Quintile.buckets() {
            assert_eq!(count(&a, *b), 20, "{b}");
        }
        assert_eq!(a[19], Some(Bucket::VeryLow));
        assert_eq!(a[20], Some(Bucket::Low));
    }

    #[test]
    fn uniform_grid_tail() {
        let hs: Vec<f64> = (0..100).map(f64::from).collect();
        let a = bucketize(&obs(&hs), BucketScheme::Tail).unwrap();
        assert_eq!(count(&a, Bucket::Above95), 5);
        assert_eq!(count(&a, Bucket::P90To95), 5);
        assert!(a[95..].iter().all(|b| *b == Some(Bucket::Above95)));
        assert!(a[..90].iter().all(|b| b.is_none()));
    }

    #[test]
    fn ties_go_up() {
        let a = bucketize(&obs(&[0.5; 30]), BucketScheme::Quintile).unwrap();
        assert!(a.iter().all(|b| *b == Some(Bucket::VeryHigh)));
        let a = bucketize(&obs(&[0.5; 40]), BucketScheme::Tail).unwrap();
        assert!(a.iter().all(|b| *b == Some(Bucket::Above95)));
    }

    #[test]
    fn too_few_or_mixed() {
        assert_eq!(
            bucketize(&obs(&[0.1; 19]), BucketScheme::Quintile),
            Err(HurstError::TooFewObservations { needed: 20, got: 19 })
        );
        assert_eq!(
            bucketize(&obs(&[0.1; 39]), BucketScheme::Tail),
            Err(HurstError::TooFewObservations { needed: 40, got: 39 })
        );
        let mut mixed = obs(&[0.1; 20]);
        mixed[3].method = Method::Gm2;
        assert!(bucketize(&mixed, BucketScheme::Quintile).is_err());
    }

    proptest! {
        #[test]
        fn quintiles_partition_evenly(hs in prop::collection::hash_set(-1_000_000i64..1_000_000, 20..400)) {
            let hs: Vec<f64> = hs.into_iter().map(|v| v as f64 / 1000.0).collect();
            let a = bucketize(&obs(&hs), BucketScheme::Quintile).unwrap();
            prop_assert!(a.iter().all(|b| b.is_some()));
            let n = hs.len() as f64;
            for b in BucketScheme::Quintile.buckets() {
                let c = count(&a, *b) as f64;
                prop_assert!((c - n / 5.0).abs() <= 1.0, "{} has {} of {}", b, c, n);
            }
        }
    }
}
