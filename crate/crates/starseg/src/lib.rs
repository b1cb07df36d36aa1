//! Starlet wavelet decomposition and multi-level segmentation of micrographs.
//!
//! The pipeline: [`starlet_decompose`] splits an image into per-scale detail
//! planes (undecimated, exactly invertible); [`mlss()`] accumulates them into
//! one raw segmentation map per level and binarizes each; [`mlsos`] scores
//! every mask against a ground truth with the Matthews correlation
//! coefficient and picks the best level. [`synth`] generates deterministic
//! test micrographs with exact ground truths, and [`io`] handles image
//! files and the output naming scheme. The `starseg` binary (see [`cli`])
//! drives the whole batch workflow; `examples/` shows each stage through
//! the library API.

pub mod cli;
pub mod error;
pub mod evaluate;
pub mod image;
pub mod io;
pub mod mlss;
pub mod synth;
pub mod wavelet;

pub use crate::cli::{run, EmitSet, RunConfig};
pub use crate::error::{Error, Result};
pub use crate::evaluate::{
    comp_image, confusion_counts, mcc, mlsos, CompImage, ConfusionCounts, LevelScore, MccReport,
};
pub use crate::image::{BinaryImage, GrayImage};
pub use crate::io::{load_grayscale, load_ground_truth, GroundTruth, LoadedImage, OutputKind};
pub use crate::mlss::{binarize, mlss, LevelRange, MlssMode, SegmentationStack};
pub use crate::synth::{generate, FixtureKind, FixtureSpec};
pub use crate::wavelet::{
    b3_spline_kernel_1d, dilated_smooth, highpass_kernel_2d, smoothing_kernel_2d,
    starlet_decompose, Kernel1D, Kernel2D, StarletDecomposition,
};
