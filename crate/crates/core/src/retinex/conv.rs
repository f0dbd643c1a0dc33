//! Plane convolution with reflective boundary handling.
//!
//! Surround kernels span the entire level plane, so the workhorse here is the
//! FFT route: the reflect-padded plane and the kernel are zero-extended to a
//! power-of-two square large enough that circular correlation has no
//! wraparound inside the output window, making it numerically interchangeable
//! with the direct sum. The direct route keeps the literal quadruple loop as
//! a slow reference implementation.

use rustfft::num_complex::Complex;
use rustfft::{Fft, FftPlanner};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::plane::ImagePlane;

/// Which evaluation route to use for surround convolution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ConvMode {
    /// Frequency-domain evaluation; the fast default.
    #[default]
    Fft,
    /// Literal spatial sum; O(side^4) when the kernel spans the plane.
    Direct,
}

/// Maps a possibly out-of-range coordinate into [0, n) by symmetric,
/// edge-inclusive reflection (`-1 -> 0`, `n -> n-1`, ...).
fn reflect_index(mut x: isize, n: isize) -> usize {
    debug_assert!(n > 0);
    loop {
        if x < 0 {
            x = -x - 1;
        } else if x >= n {
            x = 2 * n - x - 1;
        } else {
            return x as usize;
        }
    }
}

/// Pads a plane by `pad_lo` rows/columns before and `pad_hi` after, filling
/// the border by reflection.
pub fn reflect_pad(plane: &ImagePlane, pad_lo: usize, pad_hi: usize) -> ImagePlane {
    let (w, h) = (plane.width() as isize, plane.height() as isize);
    ImagePlane::from_fn(
        plane.width() + pad_lo + pad_hi,
        plane.height() + pad_lo + pad_hi,
        |r, c| {
            let rr = reflect_index(r as isize - pad_lo as isize, h);
            let cc = reflect_index(c as isize - pad_lo as isize, w);
            plane.get(rr, cc)
        },
    )
}

fn check_kernel(kernel: &ImagePlane) -> Result<()> {
    if !kernel.is_square() || kernel.width() == 0 {
        return Err(Error::InvalidConfig(format!(
            "convolution kernel must be square and non-empty, got {}x{}",
            kernel.width(),
            kernel.height()
        )));
    }
    Ok(())
}

/// Convolves a plane with a square kernel under reflective boundaries.
///
/// The output has the input's size. Both routes evaluate the same sum
/// `out(r, c) = sum_{i, j} kernel(i, j) * padded(r + i, c + j)` where the
/// padded plane extends the input by `(K - 1) / 2` before and the remainder
/// after; for the symmetric kernels used here this equals true convolution.
pub fn convolve_reflect(
    plane: &ImagePlane,
    kernel: &ImagePlane,
    mode: ConvMode,
) -> Result<ImagePlane> {
    check_kernel(kernel)?;
    let k = kernel.width();
    let pad_lo = (k - 1) / 2;
    let pad_hi = (k - 1) - pad_lo;
    let padded = reflect_pad(plane, pad_lo, pad_hi);
    match mode {
        ConvMode::Direct => Ok(direct_correlate(&padded, kernel, plane.width(), plane.height())),
        ConvMode::Fft => Ok(fft_correlate(&padded, kernel, plane.width(), plane.height())),
    }
}

/// The literal correlation sum over the padded plane.
fn direct_correlate(padded: &ImagePlane, kernel: &ImagePlane, out_w: usize, out_h: usize) -> ImagePlane {
    let k = kernel.width();
    ImagePlane::from_fn(out_w, out_h, |r, c| {
        let mut acc = 0.0;
        for i in 0..k {
            let prow = &padded.row(r + i)[c..c + k];
            let krow = kernel.row(i);
            for j in 0..k {
                acc += krow[j] * prow[j];
            }
        }
        acc
    })
}

/// Performs an in-place 2D transform (rows, then columns) on a `size*size`
/// buffer using a planned 1D FFT.
fn fft_2d(buf: &mut [Complex<f64>], size: usize, fft: &Arc<dyn Fft<f64>>) {
    for row in buf.chunks_exact_mut(size) {
        fft.process(row);
    }
    let mut col = vec![Complex::default(); size];
    for c in 0..size {
        for r in 0..size {
            col[r] = buf[r * size + c];
        }
        fft.process(&mut col);
        for r in 0..size {
            buf[r * size + c] = col[r];
        }
    }
}

/// Embeds a plane in the top-left corner of an `l*l` complex buffer.
fn embed(plane: &ImagePlane, l: usize) -> Vec<Complex<f64>> {
    let mut buf = vec![Complex::default(); l * l];
    for r in 0..plane.height() {
        let src = plane.row(r);
        for c in 0..plane.width() {
            buf[r * l + c] = Complex::new(src[c], 0.0);
        }
    }
    buf
}

/// Correlation via the frequency domain.
///
/// Zero-extending both operands to side `l >= padded_side` removes circular
/// wraparound from every output position we keep, so this matches
/// [`direct_correlate`] up to FFT roundoff.
fn fft_correlate(padded: &ImagePlane, kernel: &ImagePlane, out_w: usize, out_h: usize) -> ImagePlane {
    let l = padded.width().next_power_of_two();
    let mut planner = FftPlanner::new();
    let forward = planner.plan_fft_forward(l);
    let inverse = planner.plan_fft_inverse(l);

    let mut data = embed(padded, l);
    let mut kern = embed(kernel, l);
    fft_2d(&mut data, l, &forward);
    fft_2d(&mut kern, l, &forward);
    // Cross-correlation theorem: conjugate the kernel spectrum.
    for (d, k) in data.iter_mut().zip(kern.iter()) {
        *d *= k.conj();
    }
    fft_2d(&mut data, l, &inverse);

    let norm = 1.0 / (l * l) as f64;
    ImagePlane::from_fn(out_w, out_h, |r, c| data[r * l + c].re * norm)
}
