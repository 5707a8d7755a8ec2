use crate::error::{HurstError, Result};

/// Least-squares line through a set of `(x, y)` points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegressionFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
    pub n_points: usize,
}

/// Ordinary least-squares fit of `y = intercept + slope * x`.
///
/// Uses centered sums, so collinear inputs come back exact to rounding.
/// `r_squared` is `1 - SS_res / SS_tot`, clamped to `[0, 1]`, and defined as
/// 1 when every `y` is equal.
pub fn ols_slope(points: &[(f64, f64)]) -> Result<RegressionFit> {
    if let Some(i) = points.iter().position(|(x, y)| !x.is_finite() || !y.is_finite()) {
        return Err(HurstError::NonFiniteInput(i));
    }
    let n = points.len();
    if n < 2 {
        return Err(HurstError::DegenerateRegression(format!("{n} point(s)")));
    }
    let nf = n as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / nf;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / nf;

    let (mut sxx, mut sxy, mut syy) = (0.0, 0.0, 0.0);
    for &(x, y) in points {
        let dx = x - mean_x;
        let dy = y - mean_y;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if sxx == 0.0 {
        return Err(HurstError::DegenerateRegression("all x values are equal".into()));
    }
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;

    let ss_res: f64 = points
        .iter()
        .map(|&(x, y)| {
            let e = y - (intercept + slope * x);
            e * e
        })
        .sum();
    let r_squared = if syy == 0.0 { 1.0 } else { (1.0 - ss_res / syy).clamp(0.0, 1.0) };

    Ok(RegressionFit { slope, intercept, r_squared, n_points: n })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn identity_line() {
        let f = ols_slope(&[(0.0, 0.0), (1.0, 1.0), (2.0, 2.0)]).unwrap();
        assert_eq!(f.slope, 1.0);
        assert_eq!(f.intercept, 0.0);
        assert_eq!(f.r_squared, 1.0);
        assert_eq!(f.n_points, 3);
    }

    #[test]
    fn horizontal_line() {
        let f = ols_slope(&[(0.0, 5.0), (1.0, 5.0), (2.0, 5.0)]).unwrap();
        assert_eq!(f.slope, 0.0);
        assert_eq!(f.intercept, 5.0);
        assert_eq!(f.r_squared, 1.0);
    }

    #[test]
    fn tent_points() {
        // normal equations: sxy = 0, mean_y = 1/3
        let f = ols_slope(&[(0.0, 0.0), (1.0, 1.0), (2.0, 0.0)]).unwrap();
        assert!(f.slope.abs() < 1e-15);
        assert!((f.intercept - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(f.r_squared, 0.0);
    }

    #[test]
    fn degenerate_and_non_finite() {
        assert!(matches!(ols_slope(&[(1.0, 2.0)]), Err(HurstError::DegenerateRegression(_))));
        assert!(matches!(ols_slope(&[]), Err(HurstError::DegenerateRegression(_))));
        assert!(matches!(
            ols_slope(&[(1.0, 2.0), (1.0, 3.0), (1.0, 4.0)]),
            Err(HurstError::DegenerateRegression(_))
        ));
        assert_eq!(ols_slope(&[(0.0, 1.0), (1.0, f64::NAN)]), Err(HurstError::NonFiniteInput(1)));
        assert_eq!(
            ols_slope(&[(f64::NEG_INFINITY, 1.0), (1.0, 1.0)]),
            Err(HurstError::NonFiniteInput(0))
        );
    }

    proptest! {
        #[test]
        fn collinear_is_exact(
            a in -10.0f64..10.0,
            b in -10.0f64..10.0,
            xs in prop::collection::btree_set(-1000i32..1000, 2..40),
        ) {
            let pts: Vec<_> = xs.iter().map(|&x| {
                let x = x as f64 / 10.0;
                (x, a + b * x)
            }).collect();
            let f = ols_slope(&pts).unwrap();
            prop_assert!((f.slope - b).abs() <= 1e-10 * b.abs().max(1.0));
            prop_assert!((f.intercept - a).abs() <= 1e-10 * a.abs().max(1.0) * 10.0);
        }

        #[test]
        fn shifting_y_moves_intercept_only(
            pts in prop::collection::vec((-100.0f64..100.0, -100.0f64..100.0), 3..30),
            c in -50.0f64..50.0,
        ) {
            prop_assume!(pts.iter().any(|p| (p.0 - pts[0].0).abs() > 1e-3));
            let base = ols_slope(&pts).unwrap();
            let moved: Vec<_> = pts.iter().map(|&(x, y)| (x, y + c)).collect();
            let shifted = ols_slope(&moved).unwrap();
            prop_assert!((base.slope - shifted.slope).abs() <= 1e-9 * base.slope.abs().max(1.0));
            prop_assert!((base.intercept + c - shifted.intercept).abs() <= 1e-8 * (1.0 + c.abs() + base.intercept.abs()));
            prop_assert!((0.0..=1.0).contains(&shifted.r_squared));
        }
    }
}
