//! RGB / HSV conversion.
//!
//! Enhancement runs on the Value plane only; hue and saturation are carried
//! through untouched. The Value plane keeps the display range [0, 255] so the
//! contrast-stretch maximum of 255 applies directly.

use crate::error::Result;
use crate::plane::ImagePlane;

/// Three-plane RGB raster with samples in [0, 255].
#[derive(Debug, Clone, PartialEq)]
pub struct RgbImage {
    pub r: ImagePlane,
    pub g: ImagePlane,
    pub b: ImagePlane,
}

impl RgbImage {
    /// Builds an image from three equally sized planes.
    pub fn new(r: ImagePlane, g: ImagePlane, b: ImagePlane) -> Result<Self> {
        r.check_same_size(&g)?;
        r.check_same_size(&b)?;
        Ok(Self { r, g, b })
    }

    pub fn width(&self) -> usize {
        self.r.width()
    }

    pub fn height(&self) -> usize {
        self.r.height()
    }
}

/// HSV raster: hue in degrees [0, 360), saturation in [0, 1], value in [0, 255].
#[derive(Debug, Clone, PartialEq)]
pub struct HsvImage {
    pub h: ImagePlane,
    pub s: ImagePlane,
    pub v: ImagePlane,
}

impl HsvImage {
    pub fn new(h: ImagePlane, s: ImagePlane, v: ImagePlane) -> Result<Self> {
        h.check_same_size(&s)?;
        h.check_same_size(&v)?;
        Ok(Self { h, s, v })
    }

    pub fn width(&self) -> usize {
        self.h.width()
    }

    pub fn height(&self) -> usize {
        self.h.height()
    }

    /// Replaces the value plane, keeping hue and saturation as-is.
    pub fn with_value(self, v: ImagePlane) -> Result<Self> {
        self.h.check_same_size(&v)?;
        Ok(Self {
            h: self.h,
            s: self.s,
            v,
        })
    }
}

/// Converts one RGB pixel (all channels in [0, 255]) to (h, s, v).
///
/// Hexcone model: v = max(r, g, b); hue of achromatic pixels is 0 by
/// convention.
pub fn pixel_rgb_to_hsv(r: f64, g: f64, b: f64) -> (f64, f64, f64) {
    let max = r.max(g).max(b);
    let min = r.min(g).min(b);
    let delta = max - min;

    let v = max;
    let s = if max > 0.0 { delta / max } else { 0.0 };
    let h = if delta == 0.0 {
        0.0
    } else if max == r {
        let mut h = 60.0 * (g - b) / delta;
        if h < 0.0 {
            h += 360.0;
        }
        h
    } else if max == g {
        60.0 * (b - r) / delta + 120.0
    } else {
        60.0 * (r - g) / delta + 240.0
    };

    (if h >= 360.0 { h - 360.0 } else { h }, s, v)
}

/// Inverse hexcone mapping; output channels clamped to [0, 255].
pub fn pixel_hsv_to_rgb(h: f64, s: f64, v: f64) -> (f64, f64, f64) {
    let c = v * s;
    let h_sector = (h / 60.0).rem_euclid(6.0);
    let x = c * (1.0 - (h_sector % 2.0 - 1.0).abs());
    let (r1, g1, b1) = match h_sector as u32 {
        0 => (c, x, 0.0),
        1 => (x, c, 0.0),
        2 => (0.0, c, x),
        3 => (0.0, x, c),
        4 => (x, 0.0, c),
        _ => (c, 0.0, x),
    };
    let m = v - c;
    (
        (r1 + m).clamp(0.0, 255.0),
        (g1 + m).clamp(0.0, 255.0),
        (b1 + m).clamp(0.0, 255.0),
    )
}

/// Converts an RGB image to HSV.
pub fn rgb_to_hsv(img: &RgbImage) -> HsvImage {
    let (w, h) = (img.width(), img.height());
    let mut hp = Vec::with_capacity(w * h);
    let mut sp = Vec::with_capacity(w * h);
    let mut vp = Vec::with_capacity(w * h);
    for ((&r, &g), &b) in img
        .r
        .iter()
        .zip(img.g.iter())
        .zip(img.b.iter())
    {
        let (hh, ss, vv) = pixel_rgb_to_hsv(r, g, b);
        hp.push(hh);
        sp.push(ss);
        vp.push(vv);
    }
    HsvImage {
        h: ImagePlane::from_vec(w, h, hp).expect("sizes match by construction"),
        s: ImagePlane::from_vec(w, h, sp).expect("sizes match by construction"),
        v: ImagePlane::from_vec(w, h, vp).expect("sizes match by construction"),
    }
}

/// Converts an HSV image back to RGB.
pub fn hsv_to_rgb(img: &HsvImage) -> RgbImage {
    let (w, h) = (img.width(), img.height());
    let mut rp = Vec::with_capacity(w * h);
    let mut gp = Vec::with_capacity(w * h);
    let mut bp = Vec::with_capacity(w * h);
    for ((&hh, &ss), &vv) in img
        .h
        .iter()
        .zip(img.s.iter())
        .zip(img.v.iter())
    {
        let (r, g, b) = pixel_hsv_to_rgb(hh, ss, vv);
        rp.push(r);
        gp.push(g);
        bp.push(b);
    }
    RgbImage {
        r: ImagePlane::from_vec(w, h, rp).expect("sizes match by construction"),
        g: ImagePlane::from_vec(w, h, gp).expect("sizes match by construction"),
        b: ImagePlane::from_vec(w, h, bp).expect("sizes match by construction"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single_pixel(r: f64, g: f64, b: f64) -> RgbImage {
        RgbImage::new(
            ImagePlane::constant(1, 1, r),
            ImagePlane::constant(1, 1, g),
            ImagePlane::constant(1, 1, b),
        )
        .unwrap()
    }

    #[test]
    fn pure_red_pixel() {
        let (h, s, v) = pixel_rgb_to_hsv(255.0, 0.0, 0.0);
        assert_eq!(h, 0.0);
        assert_eq!(s, 1.0);
        assert_eq!(v, 255.0);
    }

    #[test]
    fn achromatic_pixel() {
        let (h, s, v) = pixel_rgb_to_hsv(128.0, 128.0, 128.0);
        assert_eq!(h, 0.0);
        assert_eq!(s, 0.0);
        assert_eq!(v, 128.0);
    }

    #[test]
    fn black_pixel_has_zero_hue_and_saturation() {
        let (h, s, v) = pixel_rgb_to_hsv(0.0, 0.0, 0.0);
        assert_eq!((h, s, v), (0.0, 0.0, 0.0));
    }

    #[test]
    fn inverse_of_primary() {
        let (r, g, b) = pixel_hsv_to_rgb(0.0, 1.0, 255.0);
        assert_eq!((r, g, b), (255.0, 0.0, 0.0));
    }

    #[test]
    fn zero_saturation_gives_gray_for_any_hue() {
        for h in [0.0, 42.0, 180.0, 359.0] {
            let (r, g, b) = pixel_hsv_to_rgb(h, 0.0, 97.0);
            assert_eq!((r, g, b), (97.0, 97.0, 97.0));
        }
    }

    #[test]
    fn value_is_channel_maximum() {
        let img = single_pixel(12.0, 200.0, 77.0);
        let hsv = rgb_to_hsv(&img);
        assert_eq!(hsv.v.get(0, 0), 200.0);
    }

    /// Strided sweep of the 24-bit cube, the round-trip oracle.
    #[test]
    fn round_trip_strided_cube_within_one() {
        for r in (0..=255u32).step_by(17) {
            for g in (0..=255u32).step_by(17) {
                for b in (0..=255u32).step_by(17) {
                    let (h, s, v) = pixel_rgb_to_hsv(r as f64, g as f64, b as f64);
                    let (r2, g2, b2) = pixel_hsv_to_rgb(h, s, v);
                    assert!(
                        (r2 - r as f64).abs() <= 1.0
                            && (g2 - g as f64).abs() <= 1.0
                            && (b2 - b as f64).abs() <= 1.0,
                        "round trip failed for ({r},{g},{b}) -> ({r2},{g2},{b2})"
                    );
                }
            }
        }
    }

    /// Replacing V with itself and converting back is a no-op.
    #[test]
    fn value_replacement_identity() {
        let img = RgbImage::new(
            ImagePlane::from_vec(2, 2, vec![10.0, 250.0, 33.0, 99.0]).unwrap(),
            ImagePlane::from_vec(2, 2, vec![40.0, 10.0, 133.0, 99.0]).unwrap(),
            ImagePlane::from_vec(2, 2, vec![70.0, 90.0, 233.0, 99.0]).unwrap(),
        )
        .unwrap();
        let hsv = rgb_to_hsv(&img);
        let v = hsv.v.clone();
        let back = hsv_to_rgb(&hsv.with_value(v).unwrap());
        for (orig, out) in [(&img.r, &back.r), (&img.g, &back.g), (&img.b, &back.b)] {
            for (a, b) in orig.iter().zip(out.iter()) {
                assert!((a - b).abs() <= 1.0);
            }
        }
    }
}
