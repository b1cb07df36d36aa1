//! Deterministic synthetic micrographs with exact ground truth.
//!
//! Two shape regimes cover the two segmentation modes: `Blobs` places
//! non-overlapping filled disks (large bright regions), `Tracks` draws thin
//! line segments (small elongated regions). The ground truth is the exact
//! noise-free shape mask; optional box blur and additive Gaussian noise are
//! applied to the rendered image only. All randomness comes from a ChaCha8
//! stream seeded from `FixtureSpec::seed`, so identical specs produce
//! identical bytes.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{Error, Result};
use crate::image::{BinaryImage, GrayImage};
use crate::io::GroundTruth;
use crate::wavelet::mirror_index;

/// Shape regime of a fixture.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FixtureKind {
    /// Non-overlapping filled disks.
    Blobs,
    /// Thin line segments with random orientation and length.
    Tracks,
}

/// Parameters of a synthetic micrograph.
#[derive(Debug, Clone, Copy)]
pub struct FixtureSpec {
    pub kind: FixtureKind,
    pub width: usize,
    pub height: usize,
    /// Number of shapes to place.
    pub count: usize,
    /// Disk radius for `Blobs`, stroke thickness for `Tracks`, in pixels.
    pub size: f64,
    pub foreground: f64,
    pub background: f64,
    /// Standard deviation of the additive Gaussian noise; 0 disables it.
    pub noise_sigma: f64,
    /// Apply a 3x3 box blur to the image (never the ground truth).
    pub blur: bool,
    pub seed: u64,
}

impl FixtureSpec {
    /// Disk fixture with the default tones (0.9 on 0.1) and light noise.
    pub fn blobs(width: usize, height: usize, count: usize, radius: f64, seed: u64) -> Self {
        Self {
            kind: FixtureKind::Blobs,
            width,
            height,
            count,
            size: radius,
            foreground: 0.9,
            background: 0.1,
            noise_sigma: 0.05,
            blur: false,
            seed,
        }
    }

    /// Thin-track fixture with the default tones and light noise.
    pub fn tracks(width: usize, height: usize, count: usize, thickness: f64, seed: u64) -> Self {
        Self {
            kind: FixtureKind::Tracks,
            width,
            height,
            count,
            size: thickness,
            foreground: 0.9,
            background: 0.1,
            noise_sigma: 0.05,
            blur: false,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |message: &str| {
            Err(Error::InvalidFixture {
                message: message.to_string(),
            })
        };
        if self.width == 0 || self.height == 0 {
            return fail("canvas must be at least 1x1");
        }
        if !self.size.is_finite() || self.size <= 0.0 {
            return fail("shape size must be a positive finite number of pixels");
        }
        if !(0.0..=1.0).contains(&self.foreground) || !(0.0..=1.0).contains(&self.background) {
            return fail("intensities must lie in [0, 1]");
        }
        if self.foreground <= self.background {
            return fail("foreground must be brighter than background");
        }
        if !self.noise_sigma.is_finite() || self.noise_sigma < 0.0 {
            return fail("noise sigma must be non-negative and finite");
        }
        Ok(())
    }
}

const PLACEMENT_ATTEMPTS: usize = 1000;

/// Track lengths are drawn uniformly from this fraction of the shorter
/// canvas side.
const TRACK_LENGTH_RANGE: (f64, f64) = (0.10, 0.25);

/// Renders the fixture: the noisy image and its exact ground truth.
pub fn generate(spec: &FixtureSpec) -> Result<(GrayImage, GroundTruth)> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);

    let mask = match spec.kind {
        FixtureKind::Blobs => place_disks(spec, &mut rng)?,
        FixtureKind::Tracks => place_tracks(spec, &mut rng)?,
    };

    let mut img = GrayImage::from_fn(spec.width, spec.height, |x, y| {
        if mask.get(x, y) {
            spec.foreground
        } else {
            spec.background
        }
    });
    if spec.blur {
        img = box_blur_3x3(&img);
    }
    if spec.noise_sigma > 0.0 {
        let normal = Normal::new(0.0, spec.noise_sigma).expect("sigma validated");
        for v in img.data_mut() {
            *v = (*v + normal.sample(&mut rng)).clamp(0.0, 1.0);
        }
    }

    Ok((
        img,
        GroundTruth {
            mask,
            source_path: None,
        },
    ))
}

/// Non-overlapping disks at integer centers; a pixel belongs to a disk iff
/// its center satisfies `dx^2 + dy^2 <= r^2`.
fn place_disks(spec: &FixtureSpec, rng: &mut ChaCha8Rng) -> Result<BinaryImage> {
    let margin = spec.size.ceil() as usize;
    let mut mask = BinaryImage::new(spec.width, spec.height);
    if spec.count == 0 {
        return Ok(mask);
    }
    if 2 * margin + 1 > spec.width || 2 * margin + 1 > spec.height {
        return Err(Error::Placement {
            placed: 0,
            requested: spec.count,
        });
    }
    let (x_lo, x_hi) = (margin as i64, (spec.width - 1 - margin) as i64);
    let (y_lo, y_hi) = (margin as i64, (spec.height - 1 - margin) as i64);

    let min_center_dist_sq = (2.0 * spec.size) * (2.0 * spec.size);
    let mut centers: Vec<(i64, i64)> = Vec::with_capacity(spec.count);
    for _ in 0..spec.count {
        let mut placed = false;
        for _ in 0..PLACEMENT_ATTEMPTS {
            let cx = rng.random_range(x_lo..=x_hi);
            let cy = rng.random_range(y_lo..=y_hi);
            let overlaps = centers.iter().any(|&(ox, oy)| {
                let d2 = ((cx - ox) * (cx - ox) + (cy - oy) * (cy - oy)) as f64;
                d2 <= min_center_dist_sq
            });
            if !overlaps {
                centers.push((cx, cy));
                placed = true;
                break;
            }
        }
        if !placed {
            return Err(Error::Placement {
                placed: centers.len(),
                requested: spec.count,
            });
        }
    }

    let r_sq = spec.size * spec.size;
    let reach = margin as i64;
    for &(cx, cy) in &centers {
        for dy in -reach..=reach {
            for dx in -reach..=reach {
                if (dx * dx + dy * dy) as f64 <= r_sq {
                    mask.set((cx + dx) as usize, (cy + dy) as usize, true);
                }
            }
        }
    }
    Ok(mask)
}

/// Line segments of the given thickness; a pixel belongs to a track iff its
/// center lies within `thickness / 2` of the segment. Tracks may cross.
fn place_tracks(spec: &FixtureSpec, rng: &mut ChaCha8Rng) -> Result<BinaryImage> {
    let mut mask = BinaryImage::new(spec.width, spec.height);
    let half = spec.size / 2.0;
    let side = spec.width.min(spec.height) as f64;

    for placed in 0..spec.count {
        let angle = rng.random_range(0.0..std::f64::consts::PI);
        let length = rng.random_range(TRACK_LENGTH_RANGE.0..TRACK_LENGTH_RANGE.1) * side;
        let (dx, dy) = (angle.cos(), angle.sin());
        // keep every painted pixel inside the canvas
        let margin_x = dx.abs() * length / 2.0 + half + 0.5;
        let margin_y = dy.abs() * length / 2.0 + half + 0.5;
        let x_max = spec.width as f64 - 1.0 - margin_x;
        let y_max = spec.height as f64 - 1.0 - margin_y;
        if x_max <= margin_x || y_max <= margin_y {
            return Err(Error::Placement {
                placed,
                requested: spec.count,
            });
        }
        let cx = rng.random_range(margin_x..x_max);
        let cy = rng.random_range(margin_y..y_max);

        let p0 = (cx - dx * length / 2.0, cy - dy * length / 2.0);
        let p1 = (cx + dx * length / 2.0, cy + dy * length / 2.0);
        paint_segment(&mut mask, p0, p1, half);
    }
    Ok(mask)
}

fn paint_segment(mask: &mut BinaryImage, p0: (f64, f64), p1: (f64, f64), half_width: f64) {
    let x_lo = (p0.0.min(p1.0) - half_width - 1.0).floor().max(0.0) as usize;
    let x_hi = (p0.0.max(p1.0) + half_width + 1.0).ceil() as usize;
    let y_lo = (p0.1.min(p1.1) - half_width - 1.0).floor().max(0.0) as usize;
    let y_hi = (p0.1.max(p1.1) + half_width + 1.0).ceil() as usize;
    let x_hi = x_hi.min(mask.width() - 1);
    let y_hi = y_hi.min(mask.height() - 1);

    for y in y_lo..=y_hi {
        for x in x_lo..=x_hi {
            if point_segment_distance((x as f64, y as f64), p0, p1) <= half_width {
                mask.set(x, y, true);
            }
        }
    }
}

fn point_segment_distance(p: (f64, f64), a: (f64, f64), b: (f64, f64)) -> f64 {
    let (abx, aby) = (b.0 - a.0, b.1 - a.1);
    let (apx, apy) = (p.0 - a.0, p.1 - a.1);
    let len_sq = abx * abx + aby * aby;
    let t = if len_sq == 0.0 {
        0.0
    } else {
        ((apx * abx + apy * aby) / len_sq).clamp(0.0, 1.0)
    };
    let (cx, cy) = (a.0 + t * abx - p.0, a.1 + t * aby - p.1);
    (cx * cx + cy * cy).sqrt()
}

fn box_blur_3x3(img: &GrayImage) -> GrayImage {
    let (w, h) = img.dimensions();
    GrayImage::from_fn(w, h, |x, y| {
        let mut acc = 0.0;
        for dy in -1isize..=1 {
            for dx in -1isize..=1 {
                let sx = mirror_index(x as isize + dx, w);
                let sy = mirror_index(y as isize + dy, h);
                acc += img.get(sx, sy);
            }
        }
        acc / 9.0
    })
}
