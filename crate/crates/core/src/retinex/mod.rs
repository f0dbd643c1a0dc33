//! Contrast stretching and multiscale retinex on a single pyramid level.
//!
//! Each level is first stretched to the full display range, then passed
//! through a three-scale retinex whose Gaussian surrounds span the whole
//! level, and finally re-stretched back into [0, d_max]. The surround widths
//! are expressed as ratios of the level side so the same configuration
//! adapts to every pyramid rate.

pub mod conv;

pub use conv::{convolve_reflect, reflect_pad, ConvMode};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::plane::ImagePlane;

/// Linear min-max stretch to [0, d_max].
///
/// A constant plane has no contrast to stretch; it collapses to all zeros and
/// logs a diagnostic, because callers almost always feed this into a
/// logarithmic stage that treats zero as black.
pub fn contrast_stretch(plane: &ImagePlane, d_max: f64) -> ImagePlane {
    let min = plane.min();
    let max = plane.max();
    if max > min {
        let scale = d_max / (max - min);
        plane.map(|v| scale * (v - min))
    } else {
        log::warn!(
            "contrast stretch of a constant plane ({}x{}, value {min}); output is all zeros",
            plane.width(),
            plane.height()
        );
        ImagePlane::zeros(plane.width(), plane.height())
    }
}

/// Unit-sum Gaussian surround `exp(-(x^2 + y^2) / sigma^2)` sampled on a
/// `side * side` grid centred between the middle samples.
///
/// The sample coordinates `i - (side - 1) / 2` are exact in f64, so the
/// kernel is bitwise symmetric under horizontal, vertical, and diagonal
/// flips.
pub fn gaussian_kernel(side: usize, sigma: f64) -> Result<ImagePlane> {
    if side == 0 {
        return Err(Error::InvalidConfig("kernel side must be >= 1".into()));
    }
    if !sigma.is_finite() || sigma <= 0.0 {
        return Err(Error::InvalidSigma(sigma));
    }
    let center = (side as f64 - 1.0) / 2.0;
    let inv_s2 = 1.0 / (sigma * sigma);
    let kernel = ImagePlane::from_fn(side, side, |r, c| {
        let dy = r as f64 - center;
        let dx = c as f64 - center;
        (-(dx * dx + dy * dy) * inv_s2).exp()
    });
    let sum = kernel.sum();
    Ok(kernel.map(|v| v / sum))
}

/// The three surround kernels for one pyramid level.
#[derive(Debug, Clone)]
pub struct GaussianKernelSet {
    side: usize,
    kernels: [ImagePlane; 3],
}

impl GaussianKernelSet {
    /// Builds surrounds of widths `ratio * side` for a level of the given
    /// side.
    pub fn for_side(side: usize, sigma_ratios: [f64; 3]) -> Result<Self> {
        let make = |ratio: f64| gaussian_kernel(side, ratio * side as f64);
        Ok(Self {
            side,
            kernels: [make(sigma_ratios[0])?, make(sigma_ratios[1])?, make(sigma_ratios[2])?],
        })
    }

    pub fn side(&self) -> usize {
        self.side
    }

    pub fn kernels(&self) -> &[ImagePlane; 3] {
        &self.kernels
    }
}

/// Parameters for one level's stretch-and-retinex pass.
#[derive(Debug, Clone)]
pub struct EnhanceConfig {
    /// Upper bound of the stretched range; 255 for display-referred planes.
    pub d_max: f64,
    /// Per-scale blend weights for the retinex sum.
    pub weights: [f64; 3],
    /// Surround widths as fractions of the level side, narrow to wide.
    pub sigma_ratios: [f64; 3],
    /// Offset added before taking logarithms, keeping log2 defined at zero.
    pub log_offset: f64,
    /// Convolution route for the surround blurs.
    pub conv: ConvMode,
}

impl Default for EnhanceConfig {
    fn default() -> Self {
        Self {
            d_max: 255.0,
            weights: [1.0 / 3.0; 3],
            sigma_ratios: [0.06, 0.31, 0.98],
            log_offset: 1.0,
            conv: ConvMode::Fft,
        }
    }
}

impl EnhanceConfig {
    pub fn validate(&self) -> Result<()> {
        if !self.d_max.is_finite() || self.d_max <= 0.0 {
            return Err(Error::InvalidConfig(format!(
                "d_max must be positive and finite, got {}",
                self.d_max
            )));
        }
        if !self.log_offset.is_finite() || self.log_offset <= 0.0 {
            return Err(Error::InvalidConfig(format!(
                "log offset must be positive and finite, got {}",
                self.log_offset
            )));
        }
        for &w in &self.weights {
            if !w.is_finite() || w < 0.0 {
                return Err(Error::InvalidConfig(format!(
                    "scale weights must be non-negative and finite, got {w}"
                )));
            }
        }
        for &r in &self.sigma_ratios {
            if !r.is_finite() || r <= 0.0 {
                return Err(Error::InvalidSigma(r));
            }
        }
        Ok(())
    }
}

/// Single-scale retinex: `log2(v + offset) - log2(blur + offset)`.
///
/// The blur is clamped at zero first; the frequency-domain route can leave
/// flat dark regions a hair below zero.
pub fn ssr(
    plane: &ImagePlane,
    kernel: &ImagePlane,
    log_offset: f64,
    mode: ConvMode,
) -> Result<ImagePlane> {
    let blur = convolve_reflect(plane, kernel, mode)?;
    plane.zip_map(&blur, |v, b| {
        (v + log_offset).log2() - (b.max(0.0) + log_offset).log2()
    })
}

/// Multiscale retinex: the weighted sum of the three single-scale responses.
///
/// The scales are independent and run in parallel.
pub fn msr(plane: &ImagePlane, kernels: &GaussianKernelSet, cfg: &EnhanceConfig) -> Result<ImagePlane> {
    let responses: Vec<Result<ImagePlane>> = kernels
        .kernels()
        .par_iter()
        .map(|k| ssr(plane, k, cfg.log_offset, cfg.conv))
        .collect();
    let mut acc = ImagePlane::zeros(plane.width(), plane.height());
    for (&w, response) in cfg.weights.iter().zip(responses) {
        let response = response?;
        acc = acc.zip_map(&response, |a, v| a + w * v)?;
    }
    Ok(acc)
}

/// Maps a raw retinex response back onto [0, d_max].
pub fn normalize_msr(plane: &ImagePlane, d_max: f64) -> ImagePlane {
    contrast_stretch(plane, d_max)
}

/// Full per-level pass: stretch, multiscale retinex, re-stretch.
pub fn enhance_level(plane: &ImagePlane, cfg: &EnhanceConfig) -> Result<ImagePlane> {
    cfg.validate()?;
    if !plane.is_square() {
        return Err(Error::NonSquareOrIndivisible {
            width: plane.width(),
            height: plane.height(),
            required: 1,
        });
    }
    let kernels = GaussianKernelSet::for_side(plane.side(), cfg.sigma_ratios)?;
    let stretched = contrast_stretch(plane, cfg.d_max);
    let response = msr(&stretched, &kernels, cfg)?;
    Ok(normalize_msr(&response, cfg.d_max))
}
