//! File-format plumbing between disk images and the f64 planes the library
//! works on.

use std::path::Path;

use image::{DynamicImage, ImageFormat, RgbImage as RgbBuffer};
use mmretinex::{ImagePlane, RgbImage};

use crate::CliError;

/// Loads an 8-bit image; grayscale inputs are promoted to RGB by channel
/// replication. The detected container format is returned so the caller can
/// fall back to it when the output path has no recognizable extension.
pub fn load_rgb(path: &Path) -> Result<(RgbImage, Option<ImageFormat>), CliError> {
    let read_err = |e: &dyn std::fmt::Display| {
        CliError::Io(format!("cannot read {}: {e}", path.display()))
    };
    let reader = image::ImageReader::open(path)
        .map_err(|e| read_err(&e))?
        .with_guessed_format()
        .map_err(|e| read_err(&e))?;
    let format = reader.format();
    let decoded = reader.decode().map_err(|e| read_err(&e))?;
    let rgb = decoded.to_rgb8();
    let (w, h) = (rgb.width() as usize, rgb.height() as usize);
    let raw = rgb.as_raw();
    let channel = |offset: usize| {
        ImagePlane::from_fn(w, h, |r, c| raw[3 * (r * w + c) + offset] as f64)
    };
    let img = RgbImage::new(channel(0), channel(1), channel(2))
        .expect("decoded planes share dimensions");
    Ok((img, format))
}

fn to_u8(v: f64) -> u8 {
    v.clamp(0.0, 255.0).round() as u8
}

fn has_extension(path: &Path, ext: &str) -> bool {
    path.extension()
        .map(|e| e.eq_ignore_ascii_case(ext))
        .unwrap_or(false)
}

/// Saves an image, choosing the container from the output extension and
/// falling back to `fallback` (normally the input's format) when the
/// extension is unknown.
///
/// A `.pgm` target is a grayscale container, so the image is converted to
/// luma first; every other supported target stores the RGB samples.
pub fn save_rgb(img: &RgbImage, path: &Path, fallback: Option<ImageFormat>) -> Result<(), CliError> {
    let format = ImageFormat::from_path(path).ok().or(fallback).ok_or_else(|| {
        CliError::Io(format!(
            "cannot determine an output format for {}",
            path.display()
        ))
    })?;
    let (w, h) = (img.width(), img.height());
    let buffer = RgbBuffer::from_fn(w as u32, h as u32, |x, y| {
        let (r, c) = (y as usize, x as usize);
        image::Rgb([
            to_u8(img.r.get(r, c)),
            to_u8(img.g.get(r, c)),
            to_u8(img.b.get(r, c)),
        ])
    });
    let dynamic = DynamicImage::ImageRgb8(buffer);
    let result = if has_extension(path, "pgm") {
        DynamicImage::ImageLuma8(dynamic.to_luma8()).save_with_format(path, format)
    } else {
        dynamic.save_with_format(path, format)
    };
    result.map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}
