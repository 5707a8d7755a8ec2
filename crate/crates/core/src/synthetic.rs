//! Exact fractional Brownian motion and synthetic price cohorts.
//!
//! Increments are fractional Gaussian noise with autocovariance
//! `gamma(k) = scale^2 / 2 * (|k+1|^2H - 2|k|^2H + |k-1|^2H)`, drawn by
//! circulant embedding (Davies-Harte / Wood-Chan). If the embedding has a
//! materially negative eigenvalue the sequential Durbin-Levinson sampler is
//! used instead; both are exact.
//!
//! # Random source
//!
//! Paths are reproducible from the seed alone:
//!
//! * generator: ChaCha20 (`rand_chacha::ChaCha20Rng`), keyed with
//!   `SeedableRng::seed_from_u64(seed)`;
//! * uniforms: the top 53 bits of each `next_u64`, scaled by `2^-53`;
//! * normals: Box-Muller, `sqrt(-2 ln u1) * (cos, sin)(2 pi u2)` with
//!   `u1 in (0, 1]`, both outputs consumed in order;
//! * cohort member `i` uses seed `splitmix64(seed + i * 0x9E3779B97F4A7C15)`.

use std::f64::consts::TAU;

use rand_chacha::ChaCha20Rng;
use rand_core::{RngCore, SeedableRng};
use rustfft::num_complex::Complex;
use rustfft::FftPlanner;

use crate::error::{HurstError, Result};
use crate::series::{LogSeries, PriceSeries};

/// Relative tolerance for negative circulant eigenvalues caused by rounding.
const EIGEN_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FbmSpec {
    pub h: f64,
    /// Number of path points, including `X(0) = 0`.
    pub length: usize,
    pub seed: u64,
    /// Standard deviation of a single increment.
    pub scale: f64,
}

impl FbmSpec {
    pub fn new(h: f64, length: usize, seed: u64) -> Self {
        Self { h, length, seed, scale: 1.0 }
    }

    fn validate(&self) -> Result<()> {
        if !(self.h > 0.0 && self.h < 1.0) {
            return Err(HurstError::InvalidH(self.h));
        }
        if self.length < 8 {
            return Err(HurstError::SeriesTooShort { needed: 8, got: self.length });
        }
        if !(self.scale > 0.0 && self.scale.is_finite()) {
            return Err(HurstError::InvalidConfig(format!("scale must be positive, got {}", self.scale)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FgnMethod {
    CirculantEmbedding,
    Sequential,
}

/// Seedable standard-normal source; see the module docs for the algorithm.
pub struct NormalSource {
    rng: ChaCha20Rng,
    spare: Option<f64>,
}

impl NormalSource {
    pub fn new(seed: u64) -> Self {
        Self { rng: ChaCha20Rng::seed_from_u64(seed), spare: None }
    }

    fn uniform(&mut self) -> f64 {
        (self.rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn next_normal(&mut self) -> f64 {
        if let Some(z) = self.spare.take() {
            return z;
        }
        let u1 = 1.0 - self.uniform();
        let u2 = self.uniform();
        let r = (-2.0 * u1.ln()).sqrt();
        let (s, c) = (TAU * u2).sin_cos();
        self.spare = Some(r * s);
        r * c
    }
}

pub fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed for member `index` of a family keyed by `seed`.
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    splitmix64(seed.wrapping_add(index.wrapping_mul(0x9E37_79B9_7F4A_7C15)))
}

/// Unit-scale fGn autocovariance at lag `k`.
pub fn fgn_autocovariance(h: f64, k: usize) -> f64 {
    let two_h = 2.0 * h;
    let k = k as f64;
    0.5 * ((k + 1.0).powf(two_h) - 2.0 * k.powf(two_h) + (k - 1.0).abs().powf(two_h))
}

/// `n` unit-variance fGn samples by circulant embedding, or `None` if the
/// embedding is not nonnegative definite.
fn fgn_circulant(h: f64, n: usize, normals: &mut NormalSource) -> Option<Vec<f64>> {
    let size = 2 * n;
    let mut row: Vec<Complex<f64>> = Vec::with_capacity(size);
    row.extend((0..=n).map(|k| Complex::new(fgn_autocovariance(h, k), 0.0)));
    row.extend((1..n).rev().map(|k| Complex::new(fgn_autocovariance(h, k), 0.0)));

    let mut planner = FftPlanner::<f64>::new();
    let fft = planner.plan_fft_forward(size);
    fft.process(&mut row);

    let max_eig = row.iter().map(|c| c.re).fold(0.0, f64::max);
    if row.iter().any(|c| c.re < -EIGEN_TOLERANCE * max_eig) {
        return None;
    }

    let norm = size as f64;
    let mut w: Vec<Complex<f64>> = row
        .iter()
        .map(|eig| {
            let amp = (eig.re.max(0.0) / norm).sqrt();
            let re = normals.next_normal();
            let im = normals.next_normal();
            Complex::new(amp * re, amp * im)
        })
        .collect();
    fft.process(&mut w);
    Some(w[..n].iter().map(|c| c.re).collect())
}

/// `n` unit-variance fGn samples by sequential conditioning (Durbin-Levinson).
fn fgn_sequential(h: f64, n: usize, normals: &mut NormalSource) -> Vec<f64> {
    let gamma: Vec<f64> = (0..n).map(|k| fgn_autocovariance(h, k)).collect();
    let mut out = Vec::with_capacity(n);
    let mut phi: Vec<f64> = Vec::with_capacity(n);
    let mut prev: Vec<f64> = Vec::with_capacity(n);
    let mut var = gamma[0];
    out.push(var.sqrt() * normals.next_normal());

    for i in 1..n {
        // reflection coefficient for order i
        let acc: f64 = phi.iter().enumerate().map(|(j, p)| p * gamma[i - 1 - j]).sum();
        let kappa = (gamma[i] - acc) / var;
        prev.clear();
        prev.extend_from_slice(&phi);
        for j in 0..phi.len() {
            phi[j] = prev[j] - kappa * prev[prev.len() - 1 - j];
        }
        phi.push(kappa);
        var *= 1.0 - kappa * kappa;

        let mean: f64 = phi.iter().enumerate().map(|(j, p)| p * out[i - 1 - j]).sum();
        out.push(mean + var.max(0.0).sqrt() * normals.next_normal());
    }
    out
}

/// Fractional Gaussian noise with standard deviation `spec.scale`,
/// `spec.length - 1` samples.
pub fn generate_fgn(spec: &FbmSpec, method: FgnMethod) -> Result<Vec<f64>> {
    spec.validate()?;
    let n = spec.length - 1;
    let mut normals = NormalSource::new(spec.seed);
    let noise = match method {
        FgnMethod::CirculantEmbedding => match fgn_circulant(spec.h, n, &mut normals) {
            Some(v) => v,
            None => fgn_sequential(spec.h, n, &mut NormalSource::new(spec.seed)),
        },
        FgnMethod::Sequential => fgn_sequential(spec.h, n, &mut normals),
    };
    if noise.iter().any(|v| !v.is_finite()) {
        return Err(HurstError::EmbeddingFailure(format!("non-finite sample for H = {}", spec.h)));
    }
    Ok(noise.into_iter().map(|v| v * spec.scale).collect())
}

fn cumulate(increments: &[f64]) -> Vec<f64> {
    let mut path = Vec::with_capacity(increments.len() + 1);
    let mut acc = 0.0;
    path.push(acc);
    for d in increments {
        acc += d;
        path.push(acc);
    }
    path
}

/// fBm path `X(0) = 0, X(1), ..., X(length - 1)`.
pub fn generate_fbm(spec: &FbmSpec) -> Result<LogSeries> {
    generate_fbm_with(spec, FgnMethod::CirculantEmbedding)
}

pub fn generate_fbm_with(spec: &FbmSpec, method: FgnMethod) -> Result<LogSeries> {
    let increments = generate_fgn(spec, method)?;
    Ok(LogSeries::from_values(format!("fbm-h{}-s{}", spec.h, spec.seed), cumulate(&increments)))
}

/// Synthetic universe of "stocks" `price(t) = exp(fBm_H(t) + drift * t)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CohortSpec {
    pub n_series: usize,
    pub length: usize,
    /// Cycled across series: series `i` gets `h_values[i % len]`.
    pub h_values: Vec<f64>,
    /// Per-step log drift paired with each entry of `h_values`.
    pub drifts: Vec<f64>,
    /// Standard deviation of a one-step log-price increment.
    pub scale: f64,
    pub seed: u64,
}

impl CohortSpec {
    /// Small enough that the per-H drift is not swamped by the noise over one window.
    pub const DEFAULT_SCALE: f64 = 0.002;
}

pub fn cohort_instrument_id(index: usize) -> String {
    format!("SYN{index:04}")
}

pub fn generate_drifted_cohort(spec: &CohortSpec) -> Result<Vec<PriceSeries>> {
    if spec.n_series == 0 {
        return Err(HurstError::InvalidConfig("cohort needs at least one series".into()));
    }
    if spec.h_values.is_empty() || spec.h_values.len() != spec.drifts.len() {
        return Err(HurstError::InvalidConfig(format!(
            "need one drift per H value ({} H values, {} drifts)",
            spec.h_values.len(),
            spec.drifts.len()
        )));
    }
    if let Some(&h) = spec.h_values.iter().find(|h| !(**h > 0.0 && **h < 1.0)) {
        return Err(HurstError::InvalidH(h));
    }

    (0..spec.n_series)
        .map(|i| {
            let slot = i % spec.h_values.len();
            let fbm = FbmSpec {
                h: spec.h_values[slot],
                length: spec.length,
                seed: derive_seed(spec.seed, i as u64),
                scale: spec.scale,
            };
            let drift = spec.drifts[slot];
            let path = generate_fbm(&fbm)?;
            let prices = path.values().iter().enumerate().map(|(t, x)| (x + drift * t as f64).exp()).collect();
            PriceSeries::from_prices(cohort_instrument_id(i), prices)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn increments(path: &LogSeries) -> Vec<f64> {
        path.values().windows(2).map(|w| w[1] - w[0]).collect()
    }

    fn lag1_autocorrelation(x: &[f64]) -> f64 {
        let n = x.len() as f64;
        let mean = x.iter().sum::<f64>() / n;
        let var: f64 = x.iter().map(|v| (v - mean).powi(2)).sum();
        let cov: f64 = x.windows(2).map(|w| (w[0] - mean) * (w[1] - mean)).sum();
        cov / var
    }

    #[test]
    fn brownian_increments_are_uncorrelated() {
        let path = generate_fbm(&FbmSpec::new(0.5, 4097, 11)).unwrap();
        let rho = lag1_autocorrelation(&increments(&path));
        assert!(rho.abs() < 3.0 / 4096f64.sqrt(), "rho = {rho}");
    }

    #[test]
    fn same_seed_same_path() {
        let spec = FbmSpec::new(0.7, 300, 99);
        let a = generate_fbm(&spec).unwrap();
        let b = generate_fbm(&spec).unwrap();
        assert_eq!(a.values(), b.values());
        assert_eq!(a.values()[0], 0.0);
        assert_eq!(a.len(), 300);
        let c = generate_fbm(&FbmSpec { seed: 100, ..spec }).unwrap();
        assert_ne!(a.values(), c.values());
    }

    #[test]
    fn invalid_specs() {
        for h in [0.0, 1.0, -0.2, f64::NAN] {
            assert!(matches!(generate_fbm(&FbmSpec::new(h, 64, 1)), Err(HurstError::InvalidH(_))));
        }
        assert!(matches!(generate_fbm(&FbmSpec::new(0.5, 7, 1)), Err(HurstError::SeriesTooShort { .. })));
    }

    #[test]
    fn autocovariance_values() {
        assert_eq!(fgn_autocovariance(0.5, 0), 1.0);
        assert!(fgn_autocovariance(0.5, 3).abs() < 1e-15);
        // H = 0.7, k = 1: (2^1.4 - 2) / 2
        assert!((fgn_autocovariance(0.7, 1) - (2f64.powf(1.4) - 2.0) / 2.0).abs() < 1e-15);
        assert!(fgn_autocovariance(0.3, 1) < 0.0);
    }

    #[test]
    fn sequential_matches_circulant_in_distribution() {
        // pooled lag-1 autocorrelation of fGn equals gamma(1) for both samplers
        for method in [FgnMethod::CirculantEmbedding, FgnMethod::Sequential] {
            let mut num = 0.0;
            let mut den = 0.0;
            for seed in 0..200 {
                let x = generate_fgn(&FbmSpec::new(0.7, 129, seed), method).unwrap();
                num += x.windows(2).map(|w| w[0] * w[1]).sum::<f64>();
                den += x.iter().map(|v| v * v).sum::<f64>();
            }
            let rho = num / den;
            let want = fgn_autocovariance(0.7, 1);
            assert!((rho - want).abs() < 0.02, "{method:?}: {rho} vs {want}");
        }
    }

    #[test]
    fn scale_multiplies_increments() {
        let a = generate_fgn(&FbmSpec::new(0.4, 64, 5), FgnMethod::CirculantEmbedding).unwrap();
        let b = generate_fgn(&FbmSpec { scale: 0.01, ..FbmSpec::new(0.4, 64, 5) }, FgnMethod::CirculantEmbedding).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert!((x * 0.01 - y).abs() < 1e-15);
        }
    }

    #[test]
    fn cohort_cycles_h_and_starts_at_one() {
        let spec = CohortSpec {
            n_series: 6,
            length: 64,
            h_values: vec![0.3, 0.5, 0.7],
            drifts: vec![0.0, 0.0, 0.0],
            scale: 1.0,
            seed: 3,
        };
        let cohort = generate_drifted_cohort(&spec).unwrap();
        assert_eq!(cohort.len(), 6);
        for (i, s) in cohort.iter().enumerate() {
            assert_eq!(s.instrument_id(), cohort_instrument_id(i));
            assert_eq!(s.prices()[0], 1.0);
            let slot = i % 3;
            let fbm = generate_fbm(&FbmSpec { h: spec.h_values[slot], length: 64, seed: derive_seed(3, i as u64), scale: 1.0 }).unwrap();
            for (p, x) in s.prices().iter().zip(fbm.values()) {
                assert_eq!(*p, x.exp());
            }
        }
    }

    #[test]
    fn cohort_validation() {
        let good = CohortSpec { n_series: 2, length: 32, h_values: vec![0.5], drifts: vec![0.0], scale: 0.01, seed: 1 };
        assert!(generate_drifted_cohort(&good).is_ok());
        assert!(matches!(
            generate_drifted_cohort(&CohortSpec { h_values: vec![1.2], ..good.clone() }),
            Err(HurstError::InvalidH(_))
        ));
        assert!(generate_drifted_cohort(&CohortSpec { drifts: vec![], ..good.clone() }).is_err());
        assert!(generate_drifted_cohort(&CohortSpec { n_series: 0, ..good }).is_err());
    }

    #[test]
    fn normal_source_moments() {
        let mut src = NormalSource::new(42);
        let xs: Vec<f64> = (0..200_000).map(|_| src.next_normal()).collect();
        let n = xs.len() as f64;
        let mean = xs.iter().sum::<f64>() / n;
        let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n;
        assert!(mean.abs() < 0.01);
        assert!((var - 1.0).abs() < 0.01);
    }
}
