//! End-to-end enhancement pipelines.
//!
//! The full method decimates the Value plane into five rates, enhances every
//! level concurrently, and fuses the results with the zero-aware merge. The
//! other methods dispatch to the baselines: plain single-resolution retinex,
//! global histogram equalization, and the naive-average variant that
//! reproduces the black-spot defect.

use rayon::prelude::*;

use crate::baselines::histogram_equalize;
use crate::colorspace::{hsv_to_rgb, rgb_to_hsv, HsvImage, RgbImage};
use crate::error::{Error, Result};
use crate::fusion::{reconstruct_with_stats, MergeMode, MergeStats};
use crate::multirate::{build_pyramid, Decimator, ScalePyramid};
use crate::plane::ImagePlane;
use crate::retinex::{enhance_level, EnhanceConfig};
use crate::wavelet::WaveletFamily;

/// Which enhancement method to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Method {
    /// Multirate pyramid + retinex + zero-aware fusion.
    #[default]
    Proposed,
    /// Plain full-resolution multiscale retinex.
    Msr,
    /// Global histogram equalization.
    He,
    /// The pyramid pipeline with unconditional averaging at merge time.
    Chao,
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "proposed" => Ok(Method::Proposed),
            "msr" => Ok(Method::Msr),
            "he" => Ok(Method::He),
            "chao" => Ok(Method::Chao),
            other => Err(Error::InvalidConfig(format!(
                "unknown method '{other}' (expected proposed, msr, he, or chao)"
            ))),
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Method::Proposed => "proposed",
            Method::Msr => "msr",
            Method::He => "he",
            Method::Chao => "chao",
        })
    }
}

/// Everything a pipeline run needs to know.
#[derive(Debug, Clone, Default)]
pub struct PipelineConfig {
    pub method: Method,
    /// Hole handling during fusion; ignored by non-pyramid methods and
    /// overridden to the naive average by [`Method::Chao`].
    pub merge: MergeMode,
    pub enhance: EnhanceConfig,
    /// Family used when the caller assesses results; carried here so a run
    /// is fully described by one value.
    pub wavelet: WaveletFamily,
    pub decimator: Decimator,
}

impl PipelineConfig {
    pub fn for_method(method: Method) -> Self {
        Self {
            method,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.enhance.validate()?;
        if self.method == Method::Proposed && self.merge == MergeMode::NaiveAverage {
            return Err(Error::InvalidConfig(
                "the naive average merge is the chao method; select it explicitly".into(),
            ));
        }
        Ok(())
    }

    /// The merge mode actually applied at fusion time.
    pub fn effective_merge(&self) -> MergeMode {
        match self.method {
            Method::Chao => MergeMode::NaiveAverage,
            _ => self.merge,
        }
    }
}

fn check_geometry(v: &ImagePlane, method: Method) -> Result<()> {
    let (w, h) = (v.width(), v.height());
    let fail = |reason: &str| {
        Err(Error::UnsupportedGeometry {
            width: w,
            height: h,
            reason: reason.to_string(),
        })
    };
    match method {
        Method::Proposed | Method::Chao => {
            if w != h {
                return fail("pyramid methods need a square image");
            }
            if w % 16 != 0 || w == 0 {
                return fail("pyramid methods need the side divisible by 16");
            }
        }
        Method::Msr => {
            if w != h || w == 0 {
                return fail("plain retinex needs a square image");
            }
        }
        Method::He => {
            if w == 0 || h == 0 {
                return fail("empty image");
            }
        }
    }
    Ok(())
}

/// Enhances the five pyramid levels concurrently.
fn enhance_pyramid(pyr: &ScalePyramid, cfg: &EnhanceConfig) -> Result<ScalePyramid> {
    let results: Vec<Result<ImagePlane>> = pyr
        .iter()
        .collect::<Vec<_>>()
        .par_iter()
        .map(|(_, plane)| enhance_level(plane, cfg))
        .collect();
    let mut planes = Vec::with_capacity(5);
    for r in results {
        planes.push(r?);
    }
    ScalePyramid::from_planes(planes.try_into().expect("five levels in, five out"))
}

/// Runs the configured method on a bare Value plane.
///
/// The second return value carries fusion diagnostics; it is all zeros for
/// methods that never merge.
pub fn enhance_v(v: &ImagePlane, cfg: &PipelineConfig) -> Result<(ImagePlane, MergeStats)> {
    cfg.validate()?;
    check_geometry(v, cfg.method)?;
    match cfg.method {
        Method::Proposed | Method::Chao => {
            let pyramid = build_pyramid(v, cfg.decimator)?;
            let enhanced = enhance_pyramid(&pyramid, &cfg.enhance)?;
            reconstruct_with_stats(&enhanced, cfg.effective_merge())
        }
        Method::Msr => Ok((enhance_level(v, &cfg.enhance)?, MergeStats::default())),
        Method::He => Ok((histogram_equalize(v), MergeStats::default())),
    }
}

/// Runs the configured method on an HSV image; hue and saturation planes are
/// returned bit-identical to the input's.
pub fn enhance_hsv(hsv: &HsvImage, cfg: &PipelineConfig) -> Result<(HsvImage, MergeStats)> {
    let (v, stats) = enhance_v(&hsv.v, cfg)?;
    Ok((hsv.clone().with_value(v)?, stats))
}

/// Runs the configured method on an RGB image: convert, enhance the Value
/// plane, convert back.
pub fn enhance_image(img: &RgbImage, cfg: &PipelineConfig) -> Result<(RgbImage, MergeStats)> {
    let (hsv, stats) = enhance_hsv(&rgb_to_hsv(img), cfg)?;
    Ok((hsv_to_rgb(&hsv), stats))
}
