//! Mask evaluation against ground truth: confusion counts, the Matthews
//! correlation coefficient, optimal-level selection (MLSOS) and color
//! comparison images.

use crate::error::{Error, Result};
use crate::image::BinaryImage;
use crate::mlss::SegmentationStack;

/// Pixel tallies from comparing a mask with its ground truth.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConfusionCounts {
    /// Pixels correctly labeled ROI.
    pub tpc: u64,
    /// Pixels correctly labeled background.
    pub tnc: u64,
    /// Background pixels labeled ROI.
    pub fpc: u64,
    /// ROI pixels labeled background.
    pub fnc: u64,
}

impl ConfusionCounts {
    pub fn total(&self) -> u64 {
        self.tpc + self.tnc + self.fpc + self.fnc
    }
}

/// Tallies TP/TN/FP/FN between a predicted mask and the ground truth.
pub fn confusion_counts(mask: &BinaryImage, gt: &BinaryImage) -> Result<ConfusionCounts> {
    if mask.dimensions() != gt.dimensions() {
        return Err(Error::DimensionMismatch {
            expected: gt.dimensions(),
            actual: mask.dimensions(),
        });
    }
    let mut counts = ConfusionCounts {
        tpc: 0,
        tnc: 0,
        fpc: 0,
        fnc: 0,
    };
    for (&predicted, &actual) in mask.data().iter().zip(gt.data()) {
        match (predicted, actual) {
            (true, true) => counts.tpc += 1,
            (false, false) => counts.tnc += 1,
            (true, false) => counts.fpc += 1,
            (false, true) => counts.fnc += 1,
        }
    }
    Ok(counts)
}

/// Matthews correlation coefficient as a percentage in `[-100, 100]`:
///
/// ```text
/// 100 * (TP*TN - FP*FN) / sqrt((TP+FN)(TP+FP)(TN+FP)(TN+FN))
/// ```
///
/// 100 is a perfect segmentation, 0 is no better than chance, -100 a perfect
/// inversion. When any denominator factor is zero (for instance an all
/// background mask) there is no correlation signal and 0 is returned, so an
/// optimal-level search never prefers a degenerate mask over one with any
/// positive score.
pub fn mcc(counts: &ConfusionCounts) -> f64 {
    let tp = counts.tpc as f64;
    let tn = counts.tnc as f64;
    let fp = counts.fpc as f64;
    let fne = counts.fnc as f64;
    let denom = ((tp + fne) * (tp + fp) * (tn + fp) * (tn + fne)).sqrt();
    if denom == 0.0 {
        return 0.0;
    }
    // guard against the quotient creeping past 1 by a rounding ulp
    (100.0 * (tp * tn - fp * fne) / denom).clamp(-100.0, 100.0)
}

/// Score of one segmentation level.
#[derive(Debug, Clone, Copy)]
pub struct LevelScore {
    /// Absolute starlet level.
    pub level: usize,
    pub counts: ConfusionCounts,
    pub mcc_percent: f64,
}

/// Per-level MCC scores plus the selected optimal level.
#[derive(Debug, Clone)]
pub struct MccReport {
    /// One entry per level, ascending.
    pub per_level: Vec<LevelScore>,
    /// Level with the highest MCC; ties go to the lowest level.
    pub optimal_level: usize,
}

impl MccReport {
    /// The entry for the optimal level.
    pub fn optimal(&self) -> &LevelScore {
        self.per_level
            .iter()
            .find(|s| s.level == self.optimal_level)
            .expect("optimal level is always scored")
    }
}

/// Scores every mask in the stack against the ground truth and selects the
/// level with the highest MCC (lowest level on ties).
pub fn mlsos(stack: &SegmentationStack, gt: &BinaryImage) -> Result<MccReport> {
    let mut per_level = Vec::with_capacity(stack.len());
    for (index, mask) in stack.masks.iter().enumerate() {
        let counts = confusion_counts(mask, gt)?;
        per_level.push(LevelScore {
            level: stack.level_at(index),
            counts,
            mcc_percent: mcc(&counts),
        });
    }
    let mut best = &per_level[0];
    for score in &per_level[1..] {
        if score.mcc_percent > best.mcc_percent {
            best = score;
        }
    }
    Ok(MccReport {
        optimal_level: best.level,
        per_level,
    })
}

/// Color assigned to correctly detected ROI pixels.
pub const TP_COLOR: [u8; 3] = [0, 255, 0];
/// Color assigned to false detections.
pub const FP_COLOR: [u8; 3] = [255, 0, 0];
/// Color assigned to missed ROI pixels.
pub const FN_COLOR: [u8; 3] = [0, 0, 255];
/// Color assigned to correct background.
pub const TN_COLOR: [u8; 3] = [0, 0, 0];

/// An RGB rendering of the per-pixel comparison outcome.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompImage {
    width: usize,
    height: usize,
    pixels: Vec<[u8; 3]>,
}

impl CompImage {
    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn dimensions(&self) -> (usize, usize) {
        (self.width, self.height)
    }

    pub fn get(&self, x: usize, y: usize) -> [u8; 3] {
        self.pixels[y * self.width + x]
    }

    pub fn pixels(&self) -> &[[u8; 3]] {
        &self.pixels
    }
}

/// Renders the comparison of a mask against its ground truth: green for TP,
/// red for FP, blue for FN, black for TN.
pub fn comp_image(mask: &BinaryImage, gt: &BinaryImage) -> Result<CompImage> {
    if mask.dimensions() != gt.dimensions() {
        return Err(Error::DimensionMismatch {
            expected: gt.dimensions(),
            actual: mask.dimensions(),
        });
    }
    let pixels = mask
        .data()
        .iter()
        .zip(gt.data())
        .map(|(&predicted, &actual)| match (predicted, actual) {
            (true, true) => TP_COLOR,
            (true, false) => FP_COLOR,
            (false, true) => FN_COLOR,
            (false, false) => TN_COLOR,
        })
        .collect();
    Ok(CompImage {
        width: mask.width(),
        height: mask.height(),
        pixels,
    })
}
