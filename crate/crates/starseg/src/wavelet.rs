//! Starlet filter bank and the à-trous multiscale decomposition.
//!
//! The starlet transform is an isotropic undecimated wavelet transform built
//! on the cubic B-spline smoothing filter `[1, 4, 6, 4, 1] / 16`. Every
//! decomposition level keeps the full image resolution: the smoothing kernel
//! is dilated instead, with its taps spread `2^(j-1)` pixels apart at level
//! `j`. A detail plane is the difference of two successive smoothings,
//!
//! ```text
//! c_j = c_{j-1} * h_j        (dilated separable smoothing)
//! w_j = c_{j-1} - c_j        (signed detail plane)
//! ```
//!
//! so the input is always recovered exactly as `c_L + w_1 + ... + w_L`.
//!
//! Boundaries use mirror extension without repeating the edge pixel
//! (`..., 2, 1, 0 | 1, 2, ...`), which preserves the unit-sum property of the
//! smoothing kernel everywhere and avoids the dark halos zero padding would
//! produce on micrographs.

use crate::error::{Error, Result};
use crate::image::GrayImage;

/// Largest accepted decomposition level; keeps dilated tap offsets well
/// inside `isize` and is far beyond any useful scale for 2D images.
pub const MAX_LEVEL: usize = 32;

/// The five taps of the cubic B-spline smoothing filter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Kernel1D {
    pub taps: [f64; 5],
}

/// A separable 5x5 smoothing kernel (outer product of two [`Kernel1D`]s).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Kernel2D {
    pub weights: [[f64; 5]; 5],
}

/// The cubic B-spline low-pass filter `[1, 4, 6, 4, 1] / 16`.
pub fn b3_spline_kernel_1d() -> Kernel1D {
    Kernel1D {
        taps: [1.0 / 16.0, 4.0 / 16.0, 6.0 / 16.0, 4.0 / 16.0, 1.0 / 16.0],
    }
}

/// The 5x5 smoothing kernel `h[k, l] = h1d[k] * h1d[l]`.
pub fn smoothing_kernel_2d() -> Kernel2D {
    let taps = b3_spline_kernel_1d().taps;
    let mut weights = [[0.0; 5]; 5];
    for (k, row) in weights.iter_mut().enumerate() {
        for (l, w) in row.iter_mut().enumerate() {
            *w = taps[k] * taps[l];
        }
    }
    Kernel2D { weights }
}

/// The high-pass counterpart `g = delta - h`: 1 at the center minus the
/// smoothing kernel, summing to zero. Detail planes are never computed by
/// convolving with it (subtraction of smoothings is used instead); it exists
/// so the subtraction route can be checked against the filter definition.
pub fn highpass_kernel_2d() -> [[f64; 5]; 5] {
    let h = smoothing_kernel_2d().weights;
    let mut g = [[0.0; 5]; 5];
    for (k, row) in g.iter_mut().enumerate() {
        for (l, w) in row.iter_mut().enumerate() {
            let delta = if k == 2 && l == 2 { 1.0 } else { 0.0 };
            *w = delta - h[k][l];
        }
    }
    g
}

/// Maps an out-of-range index back inside `[0, len)` by mirror reflection
/// without repeating the edge sample: `-1 -> 1`, `len -> len - 2`.
#[inline]
pub(crate) fn mirror_index(index: isize, len: usize) -> usize {
    debug_assert!(len > 0);
    if len == 1 {
        return 0;
    }
    let period = 2 * (len as isize - 1);
    let m = index.rem_euclid(period);
    if m < len as isize {
        m as usize
    } else {
        (period - m) as usize
    }
}

/// Separable smoothing with the B-spline kernel dilated for `level`:
/// adjacent taps sit `2^(level-1)` pixels apart, so level 1 reads offsets
/// `-2..=2` and level 2 reads `{-4, -2, 0, 2, 4}`. Output dimensions equal
/// the input's; boundaries are mirror-extended.
pub fn dilated_smooth(image: &GrayImage, level: usize) -> Result<GrayImage> {
    if !(1..=MAX_LEVEL).contains(&level) {
        return Err(Error::InvalidLevel { level });
    }
    if image.is_empty() {
        return Err(Error::EmptyImage);
    }
    let step = (1usize << (level - 1)) as isize;
    let taps = b3_spline_kernel_1d().taps;
    let (width, height) = image.dimensions();

    // horizontal pass
    let mut horiz = GrayImage::new(width, height);
    for y in 0..height {
        for x in 0..width {
            let mut acc = 0.0;
            for (k, t) in taps.iter().enumerate() {
                let sx = mirror_index(x as isize + (k as isize - 2) * step, width);
                acc += t * image.get(sx, y);
            }
            horiz.set(x, y, acc);
        }
    }

    // vertical pass
    let mut out = GrayImage::new(width, height);
    for y in 0..height {
        for x in 0..width {
            let mut acc = 0.0;
            for (k, t) in taps.iter().enumerate() {
                let sy = mirror_index(y as isize + (k as isize - 2) * step, height);
                acc += t * horiz.get(x, sy);
            }
            out.set(x, y, acc);
        }
    }
    Ok(out)
}

/// The full starlet decomposition of an image: `L` signed detail planes plus
/// the final smooth residual.
#[derive(Debug, Clone)]
pub struct StarletDecomposition {
    /// Detail planes `w_1..w_L`, finest scale first.
    pub details: Vec<GrayImage>,
    /// The last smoothing level `c_L`.
    pub residual: GrayImage,
}

impl StarletDecomposition {
    /// Number of detail levels.
    pub fn levels(&self) -> usize {
        self.details.len()
    }

    pub fn dimensions(&self) -> (usize, usize) {
        self.residual.dimensions()
    }

    /// Sums residual and details back into the original image.
    pub fn reconstruct(&self) -> GrayImage {
        let mut acc = self.residual.clone();
        for d in &self.details {
            acc = &acc + d;
        }
        acc
    }
}

/// Decomposes `image` into `last_level` starlet detail planes and a residual.
///
/// Detail planes are computed strictly as differences of successive
/// smoothings, so `residual + sum(details)` reproduces the input to within
/// floating-point rounding.
pub fn starlet_decompose(image: &GrayImage, last_level: usize) -> Result<StarletDecomposition> {
    if !(1..=MAX_LEVEL).contains(&last_level) {
        return Err(Error::InvalidLevel { level: last_level });
    }
    if image.is_empty() {
        return Err(Error::EmptyImage);
    }
    if !image.all_finite() {
        return Err(Error::NonFiniteSamples);
    }

    let mut smooth = image.clone();
    let mut details = Vec::with_capacity(last_level);
    for level in 1..=last_level {
        let next = dilated_smooth(&smooth, level)?;
        details.push(&smooth - &next);
        smooth = next;
    }
    Ok(StarletDecomposition { details, residual: smooth })
}
