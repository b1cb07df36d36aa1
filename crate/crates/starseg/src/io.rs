//! Image loading, normalization and output writing.
//!
//! Inputs (PNG, JPEG, binary PGM) are normalized to grayscale `[0, 1]`:
//! 8-bit samples are divided by 255, 16-bit by 65535, and RGB is reduced by
//! the Rec. 601 luma weights `0.299 R + 0.587 G + 0.114 B` first. Ground
//! truths are binarized at 0.5 (strict), which absorbs the ringing lossy
//! compression leaves around nominally two-tone edges.
//!
//! Outputs are written losslessly. Signed detail planes are rescaled per
//! plane from `[min, max]` to `[0, 255]` for viewing (a constant plane maps
//! to all zeros); masks are written as 0/255; comparison images as 24-bit
//! RGB. Output names follow `{stem}_{D|R|COMP}{level}.png` and parse back
//! unambiguously.

use std::fs;
use std::path::{Path, PathBuf};

use image::{DynamicImage, ImageFormat, ImageReader};

use crate::error::{Error, Result};
use crate::evaluate::CompImage;
use crate::image::{BinaryImage, GrayImage};

/// Ground truths are cut at this intensity (strict) after grayscale loading.
pub const GT_THRESHOLD: f64 = 0.5;

/// A grayscale plane loaded from disk, normalized to `[0, 1]`.
#[derive(Debug, Clone)]
pub struct LoadedImage {
    pub pixels: GrayImage,
    pub source_path: PathBuf,
    /// Channel count of the file before grayscale reduction.
    pub original_channels: u8,
}

/// A binary reference segmentation.
#[derive(Debug, Clone)]
pub struct GroundTruth {
    pub mask: BinaryImage,
    /// Absent for synthesized ground truths.
    pub source_path: Option<PathBuf>,
}

fn decode(path: &Path) -> Result<DynamicImage> {
    let reader = ImageReader::open(path).map_err(|source| Error::Read {
        path: path.to_path_buf(),
        source,
    })?;
    let reader = reader.with_guessed_format().map_err(|source| Error::Read {
        path: path.to_path_buf(),
        source,
    })?;
    match reader.format() {
        Some(ImageFormat::Png | ImageFormat::Jpeg | ImageFormat::Pnm) => {}
        _ => {
            return Err(Error::UnsupportedFormat {
                path: path.to_path_buf(),
            })
        }
    }
    reader.decode().map_err(|e| Error::Decode {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}

fn rec601_luma(r: f64, g: f64, b: f64) -> f64 {
    0.299 * r + 0.587 * g + 0.114 * b
}

/// Loads an image and normalizes it to a grayscale plane in `[0, 1]`.
pub fn load_grayscale(path: impl AsRef<Path>) -> Result<LoadedImage> {
    let path = path.as_ref();
    let decoded = decode(path)?;
    let (width, height) = (decoded.width() as usize, decoded.height() as usize);
    if width == 0 || height == 0 {
        return Err(Error::ZeroDimension {
            path: path.to_path_buf(),
        });
    }
    let original_channels = decoded.color().channel_count();

    let pixels = match &decoded {
        DynamicImage::ImageLuma8(buf) => GrayImage::from_fn(width, height, |x, y| {
            buf.get_pixel(x as u32, y as u32).0[0] as f64 / 255.0
        }),
        DynamicImage::ImageLumaA8(buf) => GrayImage::from_fn(width, height, |x, y| {
            buf.get_pixel(x as u32, y as u32).0[0] as f64 / 255.0
        }),
        DynamicImage::ImageRgb8(buf) => GrayImage::from_fn(width, height, |x, y| {
            let p = buf.get_pixel(x as u32, y as u32).0;
            rec601_luma(p[0] as f64, p[1] as f64, p[2] as f64) / 255.0
        }),
        DynamicImage::ImageRgba8(buf) => GrayImage::from_fn(width, height, |x, y| {
            let p = buf.get_pixel(x as u32, y as u32).0;
            rec601_luma(p[0] as f64, p[1] as f64, p[2] as f64) / 255.0
        }),
        DynamicImage::ImageLuma16(buf) => GrayImage::from_fn(width, height, |x, y| {
            buf.get_pixel(x as u32, y as u32).0[0] as f64 / 65535.0
        }),
        DynamicImage::ImageLumaA16(buf) => GrayImage::from_fn(width, height, |x, y| {
            buf.get_pixel(x as u32, y as u32).0[0] as f64 / 65535.0
        }),
        DynamicImage::ImageRgb16(buf) => GrayImage::from_fn(width, height, |x, y| {
            let p = buf.get_pixel(x as u32, y as u32).0;
            rec601_luma(p[0] as f64, p[1] as f64, p[2] as f64) / 65535.0
        }),
        DynamicImage::ImageRgba16(buf) => GrayImage::from_fn(width, height, |x, y| {
            let p = buf.get_pixel(x as u32, y as u32).0;
            rec601_luma(p[0] as f64, p[1] as f64, p[2] as f64) / 65535.0
        }),
        _ => {
            return Err(Error::UnsupportedFormat {
                path: path.to_path_buf(),
            })
        }
    };

    Ok(LoadedImage {
        pixels,
        source_path: path.to_path_buf(),
        original_channels,
    })
}

/// Loads a ground-truth image and binarizes it at [`GT_THRESHOLD`].
pub fn load_ground_truth(path: impl AsRef<Path>) -> Result<GroundTruth> {
    let path = path.as_ref();
    let loaded = load_grayscale(path)?;
    let gray = &loaded.pixels;
    let mask = BinaryImage::from_fn(gray.width(), gray.height(), |x, y| {
        gray.get(x, y) > GT_THRESHOLD
    });
    Ok(GroundTruth {
        mask,
        source_path: Some(path.to_path_buf()),
    })
}

/// The three output groups a run produces.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputKind {
    /// Starlet detail plane (`D`).
    Detail,
    /// Segmentation mask (`R`).
    Segmentation,
    /// Mask-versus-ground-truth rendering (`COMP`).
    Comparison,
}

impl OutputKind {
    pub fn token(&self) -> &'static str {
        match self {
            OutputKind::Detail => "D",
            OutputKind::Segmentation => "R",
            OutputKind::Comparison => "COMP",
        }
    }
}

/// Builds `{dir}/{stem}_{kind}{level}.png`.
pub fn output_path(dir: &Path, stem: &str, kind: OutputKind, level: usize) -> PathBuf {
    debug_assert!(level >= 1);
    dir.join(format!("{stem}_{}{level}.png", kind.token()))
}

/// Recovers `(stem, kind, level)` from a file name produced by
/// [`output_path`]; the kind token carries no underscore, so splitting at the
/// last underscore is unambiguous even for stems that contain underscores.
pub fn parse_output_name(file_name: &str) -> Option<(String, OutputKind, usize)> {
    let base = file_name.strip_suffix(".png")?;
    let underscore = base.rfind('_')?;
    let (stem, tail) = (&base[..underscore], &base[underscore + 1..]);
    for (token, kind) in [
        ("COMP", OutputKind::Comparison),
        ("D", OutputKind::Detail),
        ("R", OutputKind::Segmentation),
    ] {
        if let Some(digits) = tail.strip_prefix(token) {
            if !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit()) {
                return Some((stem.to_string(), kind, digits.parse().ok()?));
            }
        }
    }
    None
}

fn ensure_parent(path: &Path) -> Result<()> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent).map_err(|e| Error::Write {
                path: path.to_path_buf(),
                message: e.to_string(),
            })?;
        }
    }
    Ok(())
}

fn write_gray_bytes(bytes: Vec<u8>, width: usize, height: usize, path: &Path) -> Result<()> {
    let format = output_format(path)?;
    ensure_parent(path)?;
    let write_err = |message: String| Error::Write {
        path: path.to_path_buf(),
        message,
    };
    match format {
        GrayFormat::Png => {
            let buf: image::ImageBuffer<image::Luma<u8>, Vec<u8>> =
                image::ImageBuffer::from_raw(width as u32, height as u32, bytes)
                    .expect("buffer length matches dimensions");
            buf.save_with_format(path, ImageFormat::Png)
                .map_err(|e| write_err(e.to_string()))
        }
        GrayFormat::Pgm => {
            use image::codecs::pnm::{PnmEncoder, PnmSubtype, SampleEncoding};
            use image::ImageEncoder;
            let file = fs::File::create(path).map_err(|e| write_err(e.to_string()))?;
            PnmEncoder::new(file)
                .with_subtype(PnmSubtype::Graymap(SampleEncoding::Binary))
                .write_image(
                    &bytes,
                    width as u32,
                    height as u32,
                    image::ExtendedColorType::L8,
                )
                .map_err(|e| write_err(e.to_string()))
        }
    }
}

enum GrayFormat {
    Png,
    Pgm,
}

fn output_format(path: &Path) -> Result<GrayFormat> {
    match path
        .extension()
        .and_then(|e| e.to_str())
        .map(|e| e.to_ascii_lowercase())
        .as_deref()
    {
        Some("png") => Ok(GrayFormat::Png),
        Some("pgm") => Ok(GrayFormat::Pgm),
        _ => Err(Error::UnsupportedFormat {
            path: path.to_path_buf(),
        }),
    }
}

/// Writes a signed plane rescaled to 8 bits: `[min, max]` maps affinely onto
/// `[0, 255]`; a constant plane maps to all zeros.
pub fn save_detail_plane(plane: &GrayImage, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let (min, max) = plane.min_max().unwrap_or((0.0, 0.0));
    let span = max - min;
    let bytes = plane
        .data()
        .iter()
        .map(|&v| {
            if span == 0.0 {
                0u8
            } else {
                ((v - min) / span * 255.0).round() as u8
            }
        })
        .collect();
    write_gray_bytes(bytes, plane.width(), plane.height(), path)
}

/// Writes a mask as 0/255 gray.
pub fn save_mask(mask: &BinaryImage, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let bytes = mask
        .data()
        .iter()
        .map(|&b| if b { 255u8 } else { 0u8 })
        .collect();
    write_gray_bytes(bytes, mask.width(), mask.height(), path)
}

/// Writes a normalized `[0, 1]` plane as 8-bit gray without rescaling.
pub fn save_intensity(plane: &GrayImage, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let bytes = plane
        .data()
        .iter()
        .map(|&v| (v.clamp(0.0, 1.0) * 255.0).round() as u8)
        .collect();
    write_gray_bytes(bytes, plane.width(), plane.height(), path)
}

/// Writes a comparison image as 24-bit RGB PNG.
pub fn save_comp(comp: &CompImage, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    match output_format(path)? {
        GrayFormat::Png => {}
        GrayFormat::Pgm => {
            // PGM is single channel; the color coding would be lost.
            return Err(Error::UnsupportedFormat {
                path: path.to_path_buf(),
            });
        }
    }
    ensure_parent(path)?;
    let mut bytes = Vec::with_capacity(comp.width() * comp.height() * 3);
    for px in comp.pixels() {
        bytes.extend_from_slice(px);
    }
    let buf: image::ImageBuffer<image::Rgb<u8>, Vec<u8>> =
        image::ImageBuffer::from_raw(comp.width() as u32, comp.height() as u32, bytes)
            .expect("buffer length matches dimensions");
    buf.save_with_format(path, ImageFormat::Png)
        .map_err(|e| Error::Write {
            path: path.to_path_buf(),
            message: e.to_string(),
        })
}
