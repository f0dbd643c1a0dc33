//! Multirate scale pyramid: decimation and zero-insertion expansion.
//!
//! The value plane is decimated into five dyadic rates (1/16, 1/8, 1/4, 1/2,
//! full). Going back up, the expander doubles a plane by placing samples at
//! even/even coordinates and zeros everywhere else; the accompanying
//! [`HoleMask`] records which positions are interpolation holes so fusion can
//! treat them positionally instead of by value.

use crate::error::{Error, Result};
use crate::plane::{HoleMask, ImagePlane};

/// The five pyramid rates, coarsest first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScaleLabel {
    /// 1/16 of the full side.
    Tiny,
    /// 1/8 of the full side.
    Small,
    /// 1/4 of the full side.
    Medium,
    /// 1/2 of the full side.
    Fine,
    /// Full resolution.
    Normal,
}

impl ScaleLabel {
    /// All labels, coarsest first.
    pub const ALL: [ScaleLabel; 5] = [
        ScaleLabel::Tiny,
        ScaleLabel::Small,
        ScaleLabel::Medium,
        ScaleLabel::Fine,
        ScaleLabel::Normal,
    ];

    /// Decimation factor relative to full resolution.
    pub fn factor(self) -> usize {
        match self {
            ScaleLabel::Tiny => 16,
            ScaleLabel::Small => 8,
            ScaleLabel::Medium => 4,
            ScaleLabel::Fine => 2,
            ScaleLabel::Normal => 1,
        }
    }
}

impl std::fmt::Display for ScaleLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            ScaleLabel::Tiny => "tiny",
            ScaleLabel::Small => "small",
            ScaleLabel::Medium => "medium",
            ScaleLabel::Fine => "fine",
            ScaleLabel::Normal => "normal",
        };
        f.write_str(name)
    }
}

/// How decimation reduces each factor*factor block to one sample.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Decimator {
    /// Average of the block; the anti-aliased default.
    #[default]
    BlockMean,
    /// Top-left sample of the block; aliasing-prone reference variant.
    NearestNeighbor,
}

/// Reduces a plane by an integer factor.
///
/// Both dimensions must be divisible by `factor`. `factor == 1` returns a
/// copy.
pub fn decimate(plane: &ImagePlane, factor: usize, method: Decimator) -> Result<ImagePlane> {
    if factor == 0 {
        return Err(Error::InvalidConfig("decimation factor must be >= 1".into()));
    }
    let (w, h) = (plane.width(), plane.height());
    if w % factor != 0 || h % factor != 0 {
        return Err(Error::IndivisibleDimensions {
            width: w,
            height: h,
            factor,
        });
    }
    if factor == 1 {
        return Ok(plane.clone());
    }

    let (ow, oh) = (w / factor, h / factor);
    let norm = 1.0 / (factor * factor) as f64;
    let out = ImagePlane::from_fn(ow, oh, |r, c| match method {
        Decimator::BlockMean => {
            let mut acc = 0.0;
            for dr in 0..factor {
                let row = plane.row(r * factor + dr);
                acc += row[c * factor..c * factor + factor].iter().sum::<f64>();
            }
            acc * norm
        }
        Decimator::NearestNeighbor => plane.get(r * factor, c * factor),
    });
    Ok(out)
}

/// Doubles a plane by zero insertion.
///
/// Output position (2r, 2c) carries the source sample; every other position
/// is zero and flagged as a hole in the returned mask.
pub fn expand_zero_insert(plane: &ImagePlane) -> (ImagePlane, HoleMask) {
    let (w, h) = (plane.width(), plane.height());
    let (ow, oh) = (2 * w, 2 * h);
    let mut data = vec![0.0; ow * oh];
    let mut holes = vec![true; ow * oh];
    for r in 0..h {
        let src = plane.row(r);
        let base = (2 * r) * ow;
        for c in 0..w {
            data[base + 2 * c] = src[c];
            holes[base + 2 * c] = false;
        }
    }
    (
        ImagePlane::from_vec(ow, oh, data).expect("sizes match by construction"),
        HoleMask::new(ow, oh, holes),
    )
}

/// The five-rate decomposition of a value plane, coarsest first.
#[derive(Debug, Clone)]
pub struct ScalePyramid {
    levels: [ImagePlane; 5],
}

impl ScalePyramid {
    /// Assembles a pyramid from five planes whose sides must double from one
    /// level to the next.
    pub fn from_planes(levels: [ImagePlane; 5]) -> Result<Self> {
        for plane in &levels {
            if !plane.is_square() {
                return Err(Error::NonSquareOrIndivisible {
                    width: plane.width(),
                    height: plane.height(),
                    required: 1,
                });
            }
        }
        for i in 0..4 {
            if levels[i + 1].side() != 2 * levels[i].side() {
                return Err(Error::DimensionMismatch {
                    left_width: levels[i + 1].side(),
                    left_height: levels[i + 1].side(),
                    right_width: 2 * levels[i].side(),
                    right_height: 2 * levels[i].side(),
                });
            }
        }
        Ok(Self { levels })
    }

    pub fn level(&self, label: ScaleLabel) -> &ImagePlane {
        match label {
            ScaleLabel::Tiny => &self.levels[0],
            ScaleLabel::Small => &self.levels[1],
            ScaleLabel::Medium => &self.levels[2],
            ScaleLabel::Fine => &self.levels[3],
            ScaleLabel::Normal => &self.levels[4],
        }
    }

    /// Levels with their labels, coarsest first.
    pub fn iter(&self) -> impl Iterator<Item = (ScaleLabel, &ImagePlane)> {
        ScaleLabel::ALL.iter().map(move |&l| (l, self.level(l)))
    }

    /// Consumes the pyramid, yielding the planes coarsest first.
    pub fn into_levels(self) -> [ImagePlane; 5] {
        self.levels
    }

    /// Side length at full resolution.
    pub fn full_side(&self) -> usize {
        self.levels[4].side()
    }
}

/// Decimates a square plane (side divisible by 16) into the five rates.
pub fn build_pyramid(plane: &ImagePlane, method: Decimator) -> Result<ScalePyramid> {
    if !plane.is_square() || !plane.width().is_multiple_of(16) {
        return Err(Error::NonSquareOrIndivisible {
            width: plane.width(),
            height: plane.height(),
            required: 16,
        });
    }
    let levels = [
        decimate(plane, 16, method)?,
        decimate(plane, 8, method)?,
        decimate(plane, 4, method)?,
        decimate(plane, 2, method)?,
        plane.clone(),
    ];
    ScalePyramid::from_planes(levels)
}
