//! Starlet-decomposes a synthetic micrograph and writes every detail plane
//! (rescaled for viewing) plus the smooth residual.
//!
//! ```bash
//! cargo run -p starseg --example decompose
//! ```

use std::path::PathBuf;

use starseg::io::{save_detail_plane, save_intensity};
use starseg::synth::{generate, FixtureSpec};
use starseg::wavelet::starlet_decompose;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out = PathBuf::from("target/example-out/decompose");
    let (img, _gt) = generate(&FixtureSpec::blobs(256, 256, 5, 8.0, 7))?;
    save_intensity(&img, out.join("input.png"))?;

    let levels = 4;
    let dec = starlet_decompose(&img, levels)?;
    for (i, detail) in dec.details.iter().enumerate() {
        let level = i + 1;
        let energy: f64 = detail.data().iter().map(|v| v * v).sum();
        let (min, max) = detail.min_max().unwrap();
        println!("level {level}: energy {energy:9.3}, range [{min:+.4}, {max:+.4}]");
        save_detail_plane(detail, out.join(format!("input_D{level}.png")))?;
    }
    save_detail_plane(&dec.residual, out.join("residual.png"))?;

    // the transform is exactly invertible: residual + sum of details
    let max_err = dec
        .reconstruct()
        .data()
        .iter()
        .zip(img.data())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0f64, f64::max);
    println!("reconstruction error: {max_err:.3e}");
    println!("wrote planes under {}", out.display());
    Ok(())
}
