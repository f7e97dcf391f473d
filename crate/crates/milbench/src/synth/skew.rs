//! Skew-normal sampling and method-of-moments fitting.
//!
//! The skew-normal law with location ξ, scale ω > 0 and shape α has
//! density 2·φ((x−ξ)/ω)·Φ(α(x−ξ)/ω)/ω. Sampling uses the standard
//! two-correlated-normals construction: with δ = α/√(1+α²) and
//! independent standard normals u, v,
//!
//! ```text
//! x = ξ + ω·(δ·|u| + √(1−δ²)·v)
//! ```
//!
//! and the analytic mean is ξ + ω·δ·√(2/π).

use crate::error::{Error, Result};
use rand::Rng;
use rand_distr::StandardNormal;

/// Largest skewness a skew-normal can represent (reached as α → ∞);
/// moment fits clamp sample skewness to ±this value.
pub const MAX_ABS_SKEWNESS: f64 = 0.9952;

/// δ = α/√(1+α²), the correlation parameter of the construction.
pub fn delta(shape: f64) -> f64 {
    shape / (1.0 + shape * shape).sqrt()
}

/// Analytic mean of the skew-normal law.
pub fn skew_normal_mean(loc: f64, scale: f64, shape: f64) -> f64 {
    loc + scale * delta(shape) * (2.0 / std::f64::consts::PI).sqrt()
}

/// Draw one skew-normal variate. `scale` must be positive.
pub fn sample_skew_normal<R: Rng + ?Sized>(loc: f64, scale: f64, shape: f64, rng: &mut R) -> f64 {
    assert!(scale > 0.0, "skew-normal scale must be positive");
    let d = delta(shape);
    let u: f64 = rng.sample(StandardNormal);
    let v: f64 = rng.sample(StandardNormal);
    loc + scale * (d * u.abs() + (1.0 - d * d).sqrt() * v)
}

/// Recover (loc, scale, shape) from sample mean, variance and skewness.
///
/// Sample skewness outside the feasible range is clamped to
/// ±[`MAX_ABS_SKEWNESS`]. Zero variance is a degenerate fit.
pub fn fit_from_moments(mean: f64, variance: f64, skewness: f64) -> Result<(f64, f64, f64)> {
    if variance <= 0.0 || !variance.is_finite() {
        return Err(Error::DegenerateFit(format!(
            "variance {variance} not usable for a skew-normal fit"
        )));
    }
    let g = skewness.clamp(-MAX_ABS_SKEWNESS, MAX_ABS_SKEWNESS);
    let g23 = g.abs().powf(2.0 / 3.0);
    let c = ((4.0 - std::f64::consts::PI) / 2.0).powf(2.0 / 3.0);
    let abs_delta = ((std::f64::consts::FRAC_PI_2 * g23) / (g23 + c)).sqrt().min(1.0 - 1e-12);
    let d = abs_delta.copysign(g);
    let shape = d / (1.0 - d * d).sqrt();
    let scale = (variance / (1.0 - 2.0 * d * d / std::f64::consts::PI)).sqrt();
    let loc = mean - scale * d * (2.0 / std::f64::consts::PI).sqrt();
    Ok((loc, scale, shape))
}

/// Sample mean, population variance and skewness of a slice.
pub fn sample_moments(xs: &[f64]) -> (f64, f64, f64) {
    assert!(!xs.is_empty());
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let m2 = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n;
    let m3 = xs.iter().map(|x| (x - mean).powi(3)).sum::<f64>() / n;
    let skew = if m2 > 0.0 { m3 / m2.powf(1.5) } else { 0.0 };
    (mean, m2, skew)
}

/// First three moments of one color channel's pixel population.
#[derive(Debug, Clone, Copy)]
pub struct ChannelMoments {
    pub mean: f64,
    pub variance: f64,
    pub skewness: f64,
}

/// Per-channel (r, g, b) moments over every pixel of the sample images,
/// accumulated in f64 via raw power sums.
pub fn sample_color_channel_moments(samples: &[ndarray::Array3<u8>]) -> [ChannelMoments; 3] {
    let mut s1 = [0.0f64; 3];
    let mut s2 = [0.0f64; 3];
    let mut s3 = [0.0f64; 3];
    let mut count = 0usize;
    for img in samples {
        let (h, w, _) = img.dim();
        for r in 0..h {
            for c in 0..w {
                for ch in 0..3 {
                    let v = img[[r, c, ch]] as f64;
                    s1[ch] += v;
                    s2[ch] += v * v;
                    s3[ch] += v * v * v;
                }
            }
        }
        count += img.dim().0 * img.dim().1;
    }
    let n = count as f64;
    std::array::from_fn(|ch| {
        let mean = s1[ch] / n;
        let m2 = (s2[ch] / n - mean * mean).max(0.0);
        let m3 = s3[ch] / n - 3.0 * mean * s2[ch] / n + 2.0 * mean.powi(3);
        ChannelMoments {
            mean,
            variance: m2,
            skewness: if m2 > 0.0 { m3 / m2.powf(1.5) } else { 0.0 },
        }
    })
}
