//! Acceptance suite: one test per published criterion, each printing a
//! PASS/FAIL line with its measured values (run with `--nocapture` to see
//! them). Expected values marked "golden" were pinned from a pre-build run
//! of the brute-force reference pipeline in `reference.rs`.


use std::time::{Duration, Instant};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use starseg::evaluate::{confusion_counts, mcc, mlsos, ConfusionCounts};
use starseg::image::{BinaryImage, GrayImage};
use starseg::mlss::{mlss, LevelRange, MlssMode};
use starseg::synth::{generate, FixtureSpec};
use starseg::wavelet::{dilated_smooth, smoothing_kernel_2d, starlet_decompose};

/// Golden values pinned from a run of the brute-force reference pipeline
/// (`regenerate_golden_values` below reprints them).
mod golden {
    /// Blobs fixture, original mode, levels 1..=5. The accumulated details
    /// from level 1 telescope to `c_0 - c_i`, so subtracting the input
    /// leaves `-c_i`, which is never positive for a non-negative image:
    /// every mask is empty and every score is exactly zero.
    pub const BLOBS_MCC: [f64; 5] = [0.0, 0.0, 0.0, 0.0, 0.0];
    pub const BLOBS_OPTIMAL_LEVEL: usize = 1;
    /// Tracks fixture, derivative mode, levels 1..=5.
    pub const TRACKS_DERIVATIVE_MCC: [f64; 5] = [
        9.77825285422644,
        9.981328926584736,
        10.274854861112704,
        10.566818013037016,
        10.703570767967154,
    ];
    pub const TRACKS_DERIVATIVE_OPTIMAL_LEVEL: usize = 5;
    /// Tracks fixture, original mode optimum, for the mode comparison.
    pub const TRACKS_ORIGINAL_OPTIMAL_MCC: f64 = 0.0;
}

fn blobs_spec() -> FixtureSpec {
    FixtureSpec::blobs(256, 256, 5, 8.0, 7)
}

fn tracks_spec() -> FixtureSpec {
    FixtureSpec::tracks(256, 256, 8, 2.0, 11)
}

fn random_image(width: usize, height: usize, seed: u64) -> GrayImage {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    GrayImage::from_fn(width, height, |_, _| rng.random_range(0.0..1.0))
}

fn max_abs_diff(a: &GrayImage, b: &GrayImage) -> f64 {
    a.data()
        .iter()
        .zip(b.data())
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

/// Prints the criterion line and enforces the result and the runtime budget.
fn conclude(criterion: &str, pass: bool, detail: &str, elapsed: Duration, budget: Duration) {
    let verdict = if pass { "PASS" } else { "FAIL" };
    println!(
        "{verdict}: {criterion} — {detail} ({:.1} ms, budget {} ms)",
        elapsed.as_secs_f64() * 1e3,
        budget.as_millis()
    );
    assert!(pass, "{criterion}: {detail}");
    assert!(
        elapsed < budget,
        "{criterion}: runtime {elapsed:?} exceeded {budget:?}"
    );
}

#[test]
fn criterion_01_kernel_exactness() {
    let start = Instant::now();
    let weights = smoothing_kernel_2d().weights;
    let taps_num = [1.0f64, 4.0, 6.0, 4.0, 1.0];
    let mut exact = true;
    for k in 0..5 {
        for l in 0..5 {
            // every entry is a dyadic rational, representable without rounding
            if weights[k][l] != taps_num[k] * taps_num[l] / 256.0 {
                exact = false;
            }
        }
    }
    let elapsed = start.elapsed();
    conclude(
        "criterion 01 kernel exactness",
        exact,
        "5x5 smoothing kernel equals the dyadic product matrix bit for bit",
        elapsed,
        Duration::from_millis(1),
    );
}

#[test]
fn criterion_02_reconstruction() {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for seed in 0..100u64 {
        let img = random_image(64, 64, 1000 + seed);
        let dec = starlet_decompose(&img, 5).unwrap();
        worst = worst.max(max_abs_diff(&dec.reconstruct(), &img));
    }
    let elapsed = start.elapsed();
    conclude(
        "criterion 02 reconstruction",
        worst <= 1e-6,
        &format!("max |input - (residual + sum details)| = {worst:.3e} over 100 images, L = 5"),
        elapsed,
        Duration::from_secs(5),
    );
}

#[test]
fn criterion_03_separability_and_dilation() {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for seed in 0..10u64 {
        let img = random_image(16, 16, 2000 + seed);
        for level in 1..=3 {
            let fast = dilated_smooth(&img, level).unwrap();
            let dense = reference::dense_dilated_smooth(&img, level);
            worst = worst.max(max_abs_diff(&fast, &dense));
        }
    }
    let elapsed = start.elapsed();
    conclude(
        "criterion 03 separability and dilation",
        worst <= 1e-10,
        &format!("max |separable - dense oracle| = {worst:.3e} for j in 1..=3"),
        elapsed,
        Duration::from_secs(5),
    );
}

#[test]
fn criterion_04_shift_equivariance() {
    let start = Instant::now();
    let levels = 3usize;
    // interior pixels farther than this from every border are untouched by
    // boundary handling at L = 3 even after the largest tested shift
    let margin = 2 * (1usize << (levels - 1)) * 2;
    let img = random_image(64, 64, 3000);
    let dec = starlet_decompose(&img, levels).unwrap();
    let mut worst = 0.0f64;
    for (dx, dy) in [(1usize, 0usize), (0, 1), (3, 2)] {
        let shifted = GrayImage::from_fn(64, 64, |x, y| {
            if x >= dx && y >= dy {
                img.get(x - dx, y - dy)
            } else {
                0.0
            }
        });
        let dec_shifted = starlet_decompose(&shifted, levels).unwrap();
        let mut planes = Vec::new();
        for j in 0..levels {
            planes.push((&dec.details[j], &dec_shifted.details[j]));
        }
        planes.push((&dec.residual, &dec_shifted.residual));
        for (orig_plane, shifted_plane) in planes {
            for y in 0..64usize {
                for x in 0..64usize {
                    let border_distance = x.min(y).min(63 - x).min(63 - y);
                    if border_distance > margin {
                        let diff =
                            (shifted_plane.get(x, y) - orig_plane.get(x - dx, y - dy)).abs();
                        worst = worst.max(diff);
                    }
                }
            }
        }
    }
    let elapsed = start.elapsed();
    conclude(
        "criterion 04 shift equivariance",
        worst <= 1e-10,
        &format!("max interior difference {worst:.3e} for shifts (1,0), (0,1), (3,2)"),
        elapsed,
        Duration::from_secs(5),
    );
}

#[test]
fn criterion_05_mcc_oracle_equivalence() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(4000);
    let mut worst_rel = 0.0f64;
    for _ in 0..10_000 {
        let counts = ConfusionCounts {
            tpc: rng.random_range(0..=1_000_000),
            tnc: rng.random_range(0..=1_000_000),
            fpc: rng.random_range(0..=1_000_000),
            fnc: rng.random_range(0..=1_000_000),
        };
        let got = mcc(&counts);
        let want = reference::mcc_exact(&reference::Tally {
            tp: counts.tpc,
            tn: counts.tnc,
            fp: counts.fpc,
            fn_: counts.fnc,
        });
        let rel = (got - want).abs() / want.abs().max(1.0);
        worst_rel = worst_rel.max(rel);
    }

    let perfect = mcc(&ConfusionCounts { tpc: 50, tnc: 50, fpc: 0, fnc: 0 });
    let opposite = mcc(&ConfusionCounts { tpc: 0, tnc: 0, fpc: 50, fnc: 50 });
    let mixed = mcc(&ConfusionCounts { tpc: 2, tnc: 3, fpc: 1, fnc: 1 });
    let anchors_ok = perfect == 100.0
        && opposite == -100.0
        && (mixed - 500.0 / 12.0).abs() <= 1e-9 * (500.0 / 12.0);

    let elapsed = start.elapsed();
    conclude(
        "criterion 05 mcc oracle equivalence",
        worst_rel <= 1e-9 && anchors_ok,
        &format!(
            "max relative error {worst_rel:.3e} over 10,000 tuples; anchors 100 / -100 / 500/12 ok"
        ),
        elapsed,
        Duration::from_secs(2),
    );
}

#[test]
fn criterion_06_mcc_symmetries() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(5000);
    let mut pass = true;
    for _ in 0..1000 {
        let mask = BinaryImage::from_fn(16, 16, |_, _| rng.random_bool(0.5));
        let gt = BinaryImage::from_fn(16, 16, |_, _| rng.random_bool(0.5));
        let forward = mcc(&confusion_counts(&mask, &gt).unwrap());
        let swapped = mcc(&confusion_counts(&gt, &mask).unwrap());
        let complemented = mcc(&confusion_counts(&mask.inverted(), &gt).unwrap());
        if swapped != forward || complemented != -forward {
            pass = false;
        }
    }
    let elapsed = start.elapsed();
    conclude(
        "criterion 06 mcc symmetries",
        pass,
        "swap invariance and complement antisymmetry on 1,000 random pairs",
        elapsed,
        Duration::from_secs(5),
    );
}

#[test]
fn criterion_07_mode_relation() {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for seed in 0..3u64 {
        let img = random_image(32, 32, 6000 + seed);
        let dec = starlet_decompose(&img, 5).unwrap();
        let range = LevelRange::new(1, 5).unwrap();
        let original = mlss(&img, &dec, range, MlssMode::Original, 0.0).unwrap();
        let derivative = mlss(&img, &dec, range, MlssMode::Derivative, 0.0).unwrap();
        for (o, d) in original.raw.iter().zip(&derivative.raw) {
            worst = worst.max(max_abs_diff(&(o + &img), d));
        }
    }
    let elapsed = start.elapsed();
    conclude(
        "criterion 07 mode relation",
        worst <= 1e-12,
        &format!("max |raw_original + input - raw_derivative| = {worst:.3e} across all levels"),
        elapsed,
        Duration::from_secs(2),
    );
}

#[test]
fn criterion_08_blobs_end_to_end() {
    let start = Instant::now();
    let (img, gt) = generate(&blobs_spec()).unwrap();
    let dec = starlet_decompose(&img, 5).unwrap();
    let range = LevelRange::new(1, 5).unwrap();
    let stack = mlss(&img, &dec, range, MlssMode::Original, 0.0).unwrap();
    let report = mlsos(&stack, &gt.mask).unwrap();

    let mut matches_reference = report.optimal_level == golden::BLOBS_OPTIMAL_LEVEL;
    for (score, want) in report.per_level.iter().zip(golden::BLOBS_MCC) {
        if (score.mcc_percent - want).abs() > 1e-9 * want.abs().max(1.0) {
            matches_reference = false;
        }
    }
    let best = report.optimal().mcc_percent;
    let bound_met = best >= 80.0;

    let elapsed = start.elapsed();
    conclude(
        "criterion 08 blobs end-to-end (original mode)",
        matches_reference && bound_met,
        &format!(
            "pipeline matches the brute-force reference exactly (level {}, MCC {:.4}%); \
             the >= 80% bound is {}. With the accumulation starting at level 1 the detail \
             sum telescopes to input-minus-smooth, so subtracting the input leaves the \
             negated smooth plane, which never exceeds a threshold of 0 on a non-negative \
             image: every original-mode mask is empty and every MCC is exactly 0. No \
             threshold value can recover the bright disks from a plane that is dark \
             exactly where they sit",
            report.optimal_level,
            best,
            if bound_met { "met" } else { "NOT met" },
        ),
        elapsed,
        Duration::from_secs(10),
    );
}

#[test]
fn criterion_09_tracks_mode_comparison() {
    let start = Instant::now();
    let (img, gt) = generate(&tracks_spec()).unwrap();
    let dec = starlet_decompose(&img, 5).unwrap();
    let range = LevelRange::new(1, 5).unwrap();

    let derivative = mlsos(
        &mlss(&img, &dec, range, MlssMode::Derivative, 0.0).unwrap(),
        &gt.mask,
    )
    .unwrap();
    let original = mlsos(
        &mlss(&img, &dec, range, MlssMode::Original, 0.0).unwrap(),
        &gt.mask,
    )
    .unwrap();

    let mut matches_reference =
        derivative.optimal_level == golden::TRACKS_DERIVATIVE_OPTIMAL_LEVEL;
    for (score, want) in derivative.per_level.iter().zip(golden::TRACKS_DERIVATIVE_MCC) {
        if (score.mcc_percent - want).abs() > 1e-9 * want.abs().max(1.0) {
            matches_reference = false;
        }
    }
    let original_best = original.optimal().mcc_percent;
    if (original_best - golden::TRACKS_ORIGINAL_OPTIMAL_MCC).abs() > 1e-9 {
        matches_reference = false;
    }
    let derivative_best = derivative.optimal().mcc_percent;
    let strictly_better = derivative_best > original_best;

    let elapsed = start.elapsed();
    conclude(
        "criterion 09 tracks mode comparison",
        matches_reference && strictly_better,
        &format!(
            "derivative optimum {derivative_best:.4}% (level {}) strictly exceeds original \
             optimum {original_best:.4}%; per-level scores match the reference",
            derivative.optimal_level
        ),
        elapsed,
        Duration::from_secs(10),
    );
}

#[test]
fn criterion_10_cli_contract() {
    use std::process::Command;

    let start = Instant::now();
    let dir = tempfile::tempdir().unwrap();
    let spec = FixtureSpec::blobs(128, 128, 4, 8.0, 7);
    let (img, gt) = generate(&spec).unwrap();
    let input = dir.path().join("sample.png");
    let gt_path = dir.path().join("sampleGT.png");
    starseg::io::save_intensity(&img, &input).unwrap();
    starseg::io::save_mask(&gt.mask, &gt_path).unwrap();

    let mut runs: Vec<Vec<(String, Vec<u8>)>> = Vec::new();
    let mut pass = true;
    let mut detail = String::new();
    for sub in ["a", "b"] {
        let out = dir.path().join(sub);
        let status = Command::new(env!("CARGO_BIN_EXE_starseg"))
            .args([
                "--input",
                input.to_str().unwrap(),
                "--gt",
                gt_path.to_str().unwrap(),
                "--first",
                "1",
                "--last",
                "3",
                "--out",
                out.to_str().unwrap(),
            ])
            .output()
            .expect("binary runs");
        if !status.status.success() {
            pass = false;
            detail = format!("run {sub} exited with {:?}", status.status.code());
            break;
        }
        let mut files: Vec<(String, Vec<u8>)> = std::fs::read_dir(&out)
            .unwrap()
            .map(|e| {
                let e = e.unwrap();
                (
                    e.file_name().to_string_lossy().into_owned(),
                    std::fs::read(e.path()).unwrap(),
                )
            })
            .collect();
        files.sort();
        runs.push(files);
    }

    if pass {
        let names: Vec<&str> = runs[0].iter().map(|(n, _)| n.as_str()).collect();
        let mut expected: Vec<String> = Vec::new();
        for kind in ["COMP", "D", "R"] {
            for level in 1..=3 {
                expected.push(format!("sample_{kind}{level}.png"));
            }
        }
        expected.push("sample_mcc.csv".to_string());
        expected.sort();
        if names != expected.iter().map(String::as_str).collect::<Vec<_>>() {
            pass = false;
            detail = format!("unexpected file set: {names:?}");
        }
    }

    if pass {
        let csv = runs[0]
            .iter()
            .find(|(n, _)| n == "sample_mcc.csv")
            .map(|(_, b)| String::from_utf8(b.clone()).unwrap())
            .unwrap();
        let mut lines = csv.lines();
        if lines.next() != Some("level,tp,tn,fp,fn,mcc_percent,optimal") {
            pass = false;
            detail = "missing or wrong CSV header".to_string();
        } else {
            let rows: Vec<&str> = lines.collect();
            let optimal_count = rows.iter().filter(|r| r.ends_with(",1")).count();
            if rows.len() != 3 || optimal_count != 1 {
                pass = false;
                detail = format!("{} rows, {optimal_count} optimal rows", rows.len());
            }
        }
    }

    if pass && runs[0] != runs[1] {
        pass = false;
        detail = "outputs differ between identical runs".to_string();
    }
    if pass {
        detail = "9 PNGs + 1 CSV with fixed schema, one optimal row, byte-identical reruns"
            .to_string();
    }

    let elapsed = start.elapsed();
    conclude(
        "criterion 10 cli contract",
        pass,
        &detail,
        elapsed,
        Duration::from_secs(10),
    );
}

/// Prints the reference-pipeline outputs that are frozen in `golden`.
/// Run with `cargo test -p starseg --test acceptance -- --ignored --nocapture`.
#[test]
#[ignore]
fn regenerate_golden_values() {
    let (img, gt) = generate(&blobs_spec()).unwrap();
    let (scores, level) = reference::reference_mlsos(&img, &gt.mask, 1, 5, true, 0.0);
    println!("BLOBS_MCC: {scores:?}");
    println!("BLOBS_OPTIMAL_LEVEL: {level}");

    let (img, gt) = generate(&tracks_spec()).unwrap();
    let (scores, level) = reference::reference_mlsos(&img, &gt.mask, 1, 5, false, 0.0);
    println!("TRACKS_DERIVATIVE_MCC: {scores:?}");
    println!("TRACKS_DERIVATIVE_OPTIMAL_LEVEL: {level}");
    let (orig_scores, orig_level) = reference::reference_mlsos(&img, &gt.mask, 1, 5, true, 0.0);
    println!("TRACKS_ORIGINAL_MCC: {orig_scores:?} (optimal level {orig_level})");
}
