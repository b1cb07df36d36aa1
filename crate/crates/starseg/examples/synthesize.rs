//! Generates the two bundled synthetic micrograph regimes — bright disks and
//! thin tracks — together with their exact ground truths, and writes all four
//! images as PNG.
//!
//! ```bash
//! cargo run -p starseg --example synthesize
//! ```

use std::path::PathBuf;

use starseg::io::{save_intensity, save_mask};
use starseg::synth::{generate, FixtureSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out = PathBuf::from("target/example-out/synthesize");

    let blobs = FixtureSpec::blobs(256, 256, 5, 8.0, 7);
    let (img, gt) = generate(&blobs)?;
    save_intensity(&img, out.join("blobs.png"))?;
    save_mask(&gt.mask, out.join("blobsGT.png"))?;
    println!(
        "blobs:  {} ROI pixels of {} ({}x{}, seed {})",
        gt.mask.count_ones(),
        256 * 256,
        blobs.width,
        blobs.height,
        blobs.seed
    );

    let tracks = FixtureSpec::tracks(256, 256, 8, 2.0, 11);
    let (img, gt) = generate(&tracks)?;
    save_intensity(&img, out.join("tracks.png"))?;
    save_mask(&gt.mask, out.join("tracksGT.png"))?;
    println!(
        "tracks: {} ROI pixels of {} ({}x{}, seed {})",
        gt.mask.count_ones(),
        256 * 256,
        tracks.width,
        tracks.height,
        tracks.seed
    );

    println!("wrote image/GT pairs under {}", out.display());
    Ok(())
}
