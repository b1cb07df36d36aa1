//! The full batch workflow through the library API: synthesize an input and
//! its ground truth to disk, then run the same pipeline the CLI executes
//! (decompose, segment, score, write D/R/COMP images and the MCC CSV).
//!
//! ```bash
//! cargo run -p starseg --example pipeline
//! ```

use std::path::PathBuf;

use starseg::cli::{run, RunConfig};
use starseg::io::{save_intensity, save_mask};
use starseg::mlss::MlssMode;
use starseg::synth::{generate, FixtureSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out = PathBuf::from("target/example-out/pipeline");
    std::fs::create_dir_all(&out)?;

    let (img, gt) = generate(&FixtureSpec::tracks(256, 256, 8, 2.0, 11))?;
    let input = out.join("tracks.png");
    let gt_path = out.join("tracksGT.png");
    save_intensity(&img, &input)?;
    save_mask(&gt.mask, &gt_path)?;

    let mut config = RunConfig::new(&input).with_ground_truth(&gt_path);
    config.first_level = 1;
    config.last_level = 3;
    config.mode = MlssMode::Derivative;
    config.output_dir = Some(out.clone());

    let report = run(&config)?.expect("ground truth was supplied");
    println!(
        "done: optimal level {} at MCC {:.4}%",
        report.optimal_level,
        report.optimal().mcc_percent
    );
    Ok(())
}
