//! Scores every segmentation level against the ground truth, prints the MCC
//! table, picks the optimal level, and writes the per-level comparison
//! images (green TP, red FP, blue FN, black TN).
//!
//! ```bash
//! cargo run -p starseg --example evaluate
//! ```

use std::path::PathBuf;

use starseg::evaluate::{comp_image, mlsos};
use starseg::io::save_comp;
use starseg::mlss::{mlss, LevelRange, MlssMode};
use starseg::synth::{generate, FixtureSpec};
use starseg::wavelet::starlet_decompose;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out = PathBuf::from("target/example-out/evaluate");
    let (img, gt) = generate(&FixtureSpec::tracks(256, 256, 8, 2.0, 11))?;

    let range = LevelRange::new(1, 5)?;
    let dec = starlet_decompose(&img, range.last())?;
    let stack = mlss(&img, &dec, range, MlssMode::Derivative, 0.0)?;
    let report = mlsos(&stack, &gt.mask)?;

    println!("level      tp      tn      fp      fn    mcc%");
    for score in &report.per_level {
        let marker = if score.level == report.optimal_level {
            " <- optimal"
        } else {
            ""
        };
        println!(
            "{:>5} {:>7} {:>7} {:>7} {:>7} {:>7.3}{marker}",
            score.level,
            score.counts.tpc,
            score.counts.tnc,
            score.counts.fpc,
            score.counts.fnc,
            score.mcc_percent
        );
    }

    for (index, mask) in stack.masks.iter().enumerate() {
        let level = stack.level_at(index);
        let comp = comp_image(mask, &gt.mask)?;
        save_comp(&comp, out.join(format!("tracks_COMP{level}.png")))?;
    }
    println!("wrote comparison images under {}", out.display());
    Ok(())
}
