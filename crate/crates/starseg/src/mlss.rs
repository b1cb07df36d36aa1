//! Multi-level starlet segmentation (MLSS).
//!
//! Given a starlet decomposition, MLSS builds one raw segmentation map per
//! level by accumulating detail planes from a chosen start level `L0` up to
//! the current level `i`. The original algorithm then subtracts the input
//! image from the accumulated details to suppress background; the derivative
//! variant skips the subtraction so small regions of interest survive:
//!
//! ```text
//! original:    R_i = w_L0 + ... + w_i - c_0
//! derivative:  R_i = w_L0 + ... + w_i
//! ```
//!
//! Detail levels below `L0` are ignored; they usually carry most of the
//! acquisition noise. Each raw map is binarized by a strict threshold
//! (default 0), yielding one candidate mask per level.

use crate::error::{Error, Result};
use crate::image::{BinaryImage, GrayImage};
use crate::wavelet::StarletDecomposition;

/// Which MLSS accumulation rule to apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MlssMode {
    /// Accumulated details minus the input image.
    Original,
    /// Accumulated details only.
    Derivative,
}

/// An inclusive range of starlet levels `first..=last` with `1 <= first <= last`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LevelRange {
    first: usize,
    last: usize,
}

impl LevelRange {
    pub fn new(first: usize, last: usize) -> Result<Self> {
        if first < 1 || first > last {
            return Err(Error::InvalidLevelRange { first, last });
        }
        Ok(Self { first, last })
    }

    pub fn first(&self) -> usize {
        self.first
    }

    pub fn last(&self) -> usize {
        self.last
    }

    /// Number of levels in the range (inclusive).
    pub fn len(&self) -> usize {
        self.last - self.first + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Iterates the absolute level indices `first..=last`.
    pub fn iter(&self) -> std::ops::RangeInclusive<usize> {
        self.first..=self.last
    }
}

/// Raw segmentation maps and their binarized masks for every level in a range.
///
/// `raw[i]` and `masks[i]` correspond to absolute starlet level
/// `range.first() + i`; the recurrence `raw[i + 1] = raw[i] + w` holds by
/// construction (details accumulated left to right).
#[derive(Debug, Clone)]
pub struct SegmentationStack {
    pub mode: MlssMode,
    pub range: LevelRange,
    /// Signed per-level maps `R_first..R_last`.
    pub raw: Vec<GrayImage>,
    /// `raw > threshold`, per level.
    pub masks: Vec<BinaryImage>,
    pub threshold: f64,
}

impl SegmentationStack {
    /// Number of levels in the stack.
    pub fn len(&self) -> usize {
        self.raw.len()
    }

    pub fn is_empty(&self) -> bool {
        self.raw.is_empty()
    }

    /// Absolute starlet level of stack position `index`.
    pub fn level_at(&self, index: usize) -> usize {
        self.range.first() + index
    }
}

/// Thresholds a plane: a pixel is ROI iff its value strictly exceeds `threshold`.
pub fn binarize(plane: &GrayImage, threshold: f64) -> BinaryImage {
    BinaryImage::from_fn(plane.width(), plane.height(), |x, y| {
        plane.get(x, y) > threshold
    })
}

/// Builds the MLSS stack for `range` from an existing decomposition.
///
/// `image` must be the plane the decomposition was computed from; it is
/// subtracted from the accumulated details in [`MlssMode::Original`].
pub fn mlss(
    image: &GrayImage,
    decomp: &StarletDecomposition,
    range: LevelRange,
    mode: MlssMode,
    threshold: f64,
) -> Result<SegmentationStack> {
    if range.last() > decomp.levels() {
        return Err(Error::LevelOutOfRange {
            last: range.last(),
            available: decomp.levels(),
        });
    }
    if image.dimensions() != decomp.dimensions() {
        return Err(Error::DimensionMismatch {
            expected: decomp.dimensions(),
            actual: image.dimensions(),
        });
    }

    let mut raw = Vec::with_capacity(range.len());
    let mut masks = Vec::with_capacity(range.len());
    let mut acc: Option<GrayImage> = None;
    for level in range.iter() {
        let detail = &decomp.details[level - 1];
        acc = Some(match acc {
            None => detail.clone(),
            Some(sum) => &sum + detail,
        });
        let sum = acc.as_ref().unwrap();
        let plane = match mode {
            MlssMode::Original => sum - image,
            MlssMode::Derivative => sum.clone(),
        };
        masks.push(binarize(&plane, threshold));
        raw.push(plane);
    }

    Ok(SegmentationStack {
        mode,
        range,
        raw,
        masks,
        threshold,
    })
}
