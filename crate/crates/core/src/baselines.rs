//! Reference enhancement methods used for comparison: global histogram
//! equalization and plain single-resolution multiscale retinex.

use crate::colorspace::{hsv_to_rgb, rgb_to_hsv, RgbImage};
use crate::error::Result;
use crate::plane::ImagePlane;
use crate::retinex::{enhance_level, EnhanceConfig};

/// 256-bin intensity histogram of a display-referred plane.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Histogram {
    pub bins: [u64; 256],
    pub total: u64,
}

/// Rounds half away from zero; on the nonnegative intensities used here this
/// is plain round-half-up.
fn round_half_up(v: f64) -> f64 {
    v.round()
}

/// Quantizes a sample to its bin index, clamping into [0, 255].
fn bin_of(v: f64) -> usize {
    round_half_up(v.clamp(0.0, 255.0)) as usize
}

impl Histogram {
    /// Counts the plane's samples after round-half-up quantization.
    pub fn of_plane(p: &ImagePlane) -> Self {
        let mut bins = [0u64; 256];
        for &v in p.iter() {
            bins[bin_of(v)] += 1;
        }
        Self {
            bins,
            total: (p.width() * p.height()) as u64,
        }
    }

    /// Cumulative distribution per bin, in [0, 1].
    pub fn cdf(&self) -> [f64; 256] {
        let mut out = [0.0; 256];
        let mut cum = 0u64;
        for (bin, &count) in self.bins.iter().enumerate() {
            cum += count;
            out[bin] = cum as f64 / self.total as f64;
        }
        out
    }
}

/// Global histogram equalization: `out = round(255 · CDF(in))`.
///
/// The plain CDF remap is used without minimum-CDF rescaling, so a constant
/// plane maps to 255 (its single bin already holds the full distribution).
pub fn histogram_equalize(p: &ImagePlane) -> ImagePlane {
    let cdf = Histogram::of_plane(p).cdf();
    p.map(|v| round_half_up(255.0 * cdf[bin_of(v)]))
}

/// Plain full-resolution multiscale retinex: one stretch-retinex-stretch pass
/// on the Value plane, no pyramid and no fusion. Hue and saturation planes
/// are carried over bit-identical.
pub fn plain_msr_enhance(img: &RgbImage, cfg: &EnhanceConfig) -> Result<RgbImage> {
    let hsv = rgb_to_hsv(img);
    let v = enhance_level(&hsv.v, cfg)?;
    Ok(hsv_to_rgb(&hsv.with_value(v)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn constant_plane_equalizes_to_white() {
        let out = histogram_equalize(&ImagePlane::constant(4, 4, 40.0));
        assert!(out.iter().all(|&v| v == 255.0));
    }

    /// Half the pixels at 0, half at 255: CDF(0) = 0.5 rounds up to 128.
    #[test]
    fn two_level_plane_keeps_its_extremes() {
        let p = ImagePlane::from_fn(4, 4, |r, _| if r < 2 { 0.0 } else { 255.0 });
        let out = histogram_equalize(&p);
        for r in 0..4 {
            for c in 0..4 {
                let want = if r < 2 { 128.0 } else { 255.0 };
                assert_eq!(out.get(r, c), want);
            }
        }
    }

    #[test]
    fn equalization_preserves_ordering() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let p = ImagePlane::from_fn(16, 16, |_, _| rng.gen_range(0.0..255.0));
        let out = histogram_equalize(&p);
        let mut pairs: Vec<(f64, f64)> = p.iter().copied().zip(out.iter().copied()).collect();
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        for w in pairs.windows(2) {
            assert!(w[0].1 <= w[1].1);
        }
    }

    #[test]
    fn equalization_is_idempotent_up_to_one_level() {
        let mut rng = ChaCha8Rng::seed_from_u64(32);
        let p = ImagePlane::from_fn(16, 16, |_, _| rng.gen_range(20.0..90.0));
        let once = histogram_equalize(&p);
        let twice = histogram_equalize(&once);
        for (a, b) in once.iter().zip(twice.iter()) {
            assert!((a - b).abs() <= 1.0);
        }
    }

    /// All-distinct inputs equalize to a flat histogram: each decile of the
    /// output range holds close to a tenth of the pixels.
    #[test]
    fn gradient_equalizes_to_near_uniform_deciles() {
        let side = 100;
        let p = ImagePlane::from_fn(side, side, |r, c| {
            255.0 * (r * side + c) as f64 / (side * side - 1) as f64
        });
        let out = histogram_equalize(&p);
        let mut deciles = [0usize; 10];
        for &v in out.iter() {
            deciles[((v / 25.6) as usize).min(9)] += 1;
        }
        let expect = (side * side) as f64 / 10.0;
        for (i, &count) in deciles.iter().enumerate() {
            assert!(
                (count as f64 - expect).abs() <= 0.1 * expect,
                "decile {i}: {count} vs {expect}"
            );
        }
    }

    #[test]
    fn plain_msr_preserves_hue_and_saturation() {
        let mut rng = ChaCha8Rng::seed_from_u64(33);
        let mk = |rng: &mut ChaCha8Rng| {
            ImagePlane::from_fn(16, 16, |_, _| rng.gen_range(30.0..220.0))
        };
        let img = RgbImage::new(mk(&mut rng), mk(&mut rng), mk(&mut rng)).unwrap();
        let out = plain_msr_enhance(&img, &EnhanceConfig::default()).unwrap();
        let before = rgb_to_hsv(&img);
        let after = rgb_to_hsv(&out);
        // Chromaticity survives the RGB round trip except where the enhanced
        // value hit exactly zero — a black pixel has no saturation or hue.
        for ((a, b), &v) in before.s.iter().zip(after.s.iter()).zip(after.v.iter()) {
            if v > 0.0 {
                assert!((a - b).abs() <= 1.0 / 255.0);
            }
        }
        for (((a, b), &s), &v) in before
            .h
            .iter()
            .zip(after.h.iter())
            .zip(before.s.iter())
            .zip(after.v.iter())
        {
            if s > 0.05 && v > 0.0 {
                let diff = (a - b).abs();
                assert!(diff.min(360.0 - diff) < 1.0, "{a} vs {b}");
            }
        }
    }

    #[test]
    fn constant_value_image_collapses_to_black() {
        // Saturated colors with identical V: enhancement zeroes the value.
        let img = RgbImage::new(
            ImagePlane::constant(16, 16, 200.0),
            ImagePlane::constant(16, 16, 80.0),
            ImagePlane::constant(16, 16, 40.0),
        )
        .unwrap();
        let out = plain_msr_enhance(&img, &EnhanceConfig::default()).unwrap();
        for plane in [&out.r, &out.g, &out.b] {
            assert!(plane.iter().all(|&v| v == 0.0));
        }
    }

    #[test]
    fn low_contrast_gradient_spans_full_range() {
        let p = ImagePlane::from_fn(32, 32, |r, c| 100.0 + 0.5 * (r + c) as f64);
        let img = RgbImage::new(p.clone(), p.clone(), p).unwrap();
        let out = plain_msr_enhance(&img, &EnhanceConfig::default()).unwrap();
        let v = rgb_to_hsv(&out).v;
        assert!((v.min() - 0.0).abs() < 1e-9);
        assert!((v.max() - 255.0).abs() < 1e-6);
    }
}
