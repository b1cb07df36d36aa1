//! Batch command-line front end.
//!
//! One invocation processes one image (optionally with its ground truth):
//! decompose, segment, score, and write the `D`/`R`/`COMP` images plus a
//! per-level MCC report as CSV. A `synth` subcommand generates the bundled
//! synthetic test images. Exit codes: 0 success, 1 usage error, 2 I/O error,
//! 3 validation error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::evaluate::{comp_image, mlsos, MccReport};
use crate::io::{
    load_grayscale, load_ground_truth, output_path, save_detail_plane, save_intensity, save_mask,
    save_comp, OutputKind,
};
use crate::mlss::{mlss, LevelRange, MlssMode};
use crate::synth::{generate, FixtureKind, FixtureSpec};
use crate::wavelet::starlet_decompose;

/// Which output groups a run writes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EmitSet {
    /// Rescaled detail planes (`D`).
    pub details: bool,
    /// Binary masks (`R`).
    pub masks: bool,
    /// Mask-versus-ground-truth renderings (`COMP`).
    pub comparisons: bool,
    /// The per-level MCC report.
    pub csv: bool,
}

/// A fully resolved batch run.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub input_path: PathBuf,
    pub gt_path: Option<PathBuf>,
    pub first_level: usize,
    pub last_level: usize,
    pub mode: MlssMode,
    pub threshold: f64,
    /// Defaults to the input's directory when absent.
    pub output_dir: Option<PathBuf>,
    pub emit: EmitSet,
}

impl RunConfig {
    /// A default-configured run for one input: levels 1..=5, original mode,
    /// threshold 0, everything emitted that the inputs allow.
    pub fn new(input_path: impl Into<PathBuf>) -> Self {
        Self {
            input_path: input_path.into(),
            gt_path: None,
            first_level: 1,
            last_level: 5,
            mode: MlssMode::Original,
            threshold: 0.0,
            output_dir: None,
            emit: EmitSet {
                details: true,
                masks: true,
                comparisons: false,
                csv: false,
            },
        }
    }

    /// Attaches a ground truth and turns on scoring outputs.
    pub fn with_ground_truth(mut self, gt_path: impl Into<PathBuf>) -> Self {
        self.gt_path = Some(gt_path.into());
        self.emit.comparisons = true;
        self.emit.csv = true;
        self
    }

    pub fn validate(&self) -> Result<()> {
        LevelRange::new(self.first_level, self.last_level)?;
        if (self.emit.comparisons || self.emit.csv) && self.gt_path.is_none() {
            return Err(Error::Usage {
                message: "comparison and CSV outputs require --gt".to_string(),
            });
        }
        Ok(())
    }
}

/// A parsed command line.
#[derive(Debug)]
pub enum Action {
    Run(RunConfig),
    Synth(SynthConfig),
    /// Help or version text; print it and exit 0.
    Print(String),
}

/// A parsed `synth` subcommand.
#[derive(Debug, Clone)]
pub struct SynthConfig {
    pub spec: FixtureSpec,
    pub out_dir: PathBuf,
}

#[derive(Parser)]
#[command(
    name = "starseg",
    version,
    about = "Starlet wavelet decomposition and multi-level segmentation of micrographs",
    after_help = "Without a subcommand, --input is required and the MLSS pipeline runs."
)]
struct Cli {
    #[command(subcommand)]
    command: Option<Sub>,

    #[command(flatten)]
    run: RunArgs,
}

#[derive(Args)]
struct RunArgs {
    /// Input image (PNG, JPEG or binary PGM)
    #[arg(long, value_name = "PATH")]
    input: Option<PathBuf>,

    /// Ground-truth image; enables MCC scoring, COMP images and the CSV report
    #[arg(long, value_name = "PATH")]
    gt: Option<PathBuf>,

    /// First starlet detail level used in the accumulation
    #[arg(long, value_name = "N", default_value_t = 1)]
    first: usize,

    /// Last starlet detail level
    #[arg(long, value_name = "N", default_value_t = 5)]
    last: usize,

    /// Use the derivative algorithm (details only, no input subtraction)
    #[arg(long)]
    variant: bool,

    /// Binarization threshold applied to the raw segmentation maps
    #[arg(long, value_name = "X", default_value_t = 0.0, allow_negative_numbers = true)]
    threshold: f64,

    /// Output directory (defaults to the input's directory)
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,

    /// Skip writing detail (D) images
    #[arg(long)]
    no_details: bool,

    /// Skip writing mask (R) images
    #[arg(long)]
    no_masks: bool,
}

#[derive(Subcommand)]
enum Sub {
    /// Generate a synthetic test image and its exact ground truth
    Synth(SynthArgs),
}

#[derive(Args)]
struct SynthArgs {
    /// Shape regime: bright disks or thin strokes
    #[arg(long, value_enum)]
    kind: KindArg,

    /// Seed of the deterministic generator
    #[arg(long, default_value_t = 1)]
    seed: u64,

    /// Output directory
    #[arg(long, value_name = "DIR")]
    out: PathBuf,

    #[arg(long, default_value_t = 256)]
    width: usize,

    #[arg(long, default_value_t = 256)]
    height: usize,

    /// Number of shapes to place
    #[arg(long, default_value_t = 5)]
    count: usize,

    /// Disk radius (blobs) or stroke thickness (tracks), in pixels
    #[arg(long, alias = "thickness", default_value_t = 8.0)]
    radius: f64,

    /// Foreground intensity in [0, 1]
    #[arg(long, default_value_t = 0.9)]
    fg: f64,

    /// Background intensity in [0, 1]
    #[arg(long, default_value_t = 0.1)]
    bg: f64,

    /// Standard deviation of the additive Gaussian noise
    #[arg(long, default_value_t = 0.05)]
    noise_sigma: f64,

    /// Apply a 3x3 box blur to the image (never the ground truth)
    #[arg(long)]
    blur: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Blobs,
    Tracks,
}

/// Parses command-line arguments (without the program name).
pub fn parse_args<I, T>(argv: I) -> Result<Action>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let full = std::iter::once(OsString::from("starseg"))
        .chain(argv.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(full) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            return Ok(Action::Print(e.to_string()));
        }
        Err(e) => {
            // keep the first line; clap appends usage and tips
            let message = e
                .to_string()
                .lines()
                .next()
                .unwrap_or("invalid arguments")
                .trim_start_matches("error: ")
                .to_string();
            return Err(Error::Usage { message });
        }
    };

    if let Some(Sub::Synth(args)) = cli.command {
        let kind = match args.kind {
            KindArg::Blobs => FixtureKind::Blobs,
            KindArg::Tracks => FixtureKind::Tracks,
        };
        return Ok(Action::Synth(SynthConfig {
            spec: FixtureSpec {
                kind,
                width: args.width,
                height: args.height,
                count: args.count,
                size: args.radius,
                foreground: args.fg,
                background: args.bg,
                noise_sigma: args.noise_sigma,
                blur: args.blur,
                seed: args.seed,
            },
            out_dir: args.out,
        }));
    }

    let args = cli.run;
    let input_path = args.input.ok_or_else(|| Error::Usage {
        message: "missing required flag --input".to_string(),
    })?;
    if !args.threshold.is_finite() {
        return Err(Error::Usage {
            message: "--threshold must be a finite number".to_string(),
        });
    }
    let has_gt = args.gt.is_some();
    let config = RunConfig {
        input_path,
        gt_path: args.gt,
        first_level: args.first,
        last_level: args.last,
        mode: if args.variant {
            MlssMode::Derivative
        } else {
            MlssMode::Original
        },
        threshold: args.threshold,
        output_dir: args.out,
        emit: EmitSet {
            details: !args.no_details,
            masks: !args.no_masks,
            comparisons: has_gt,
            csv: has_gt,
        },
    };
    Ok(Action::Run(config))
}

/// Maps an error to the documented process exit code.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Usage { .. } => 1,
        Error::Read { .. }
        | Error::Write { .. }
        | Error::Decode { .. }
        | Error::UnsupportedFormat { .. }
        | Error::ZeroDimension { .. } => 2,
        _ => 3,
    }
}

fn input_stem(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "output".to_string())
}

fn csv_path(dir: &Path, stem: &str) -> PathBuf {
    dir.join(format!("{stem}_mcc.csv"))
}

/// Renders the per-level report with a fixed schema; exactly one row carries
/// `optimal = 1`.
fn render_csv(report: &MccReport) -> String {
    let mut csv = String::from("level,tp,tn,fp,fn,mcc_percent,optimal\n");
    for score in &report.per_level {
        let optimal = if score.level == report.optimal_level { 1 } else { 0 };
        writeln!(
            csv,
            "{},{},{},{},{},{},{}",
            score.level,
            score.counts.tpc,
            score.counts.tnc,
            score.counts.fpc,
            score.counts.fnc,
            score.mcc_percent,
            optimal
        )
        .expect("writing to a String cannot fail");
    }
    csv
}

/// Executes a run: decompose, segment, optionally score, write outputs.
///
/// Returns the MCC report when a ground truth was supplied. Progress lines go
/// to stdout, one per written image; the CSV is rendered in full before any
/// byte of it is written.
pub fn run(config: &RunConfig) -> Result<Option<MccReport>> {
    config.validate()?;

    let loaded = load_grayscale(&config.input_path)?;
    let image = loaded.pixels;
    let gt = match &config.gt_path {
        Some(path) => {
            let gt = load_ground_truth(path)?;
            if gt.mask.dimensions() != image.dimensions() {
                return Err(Error::DimensionMismatch {
                    expected: image.dimensions(),
                    actual: gt.mask.dimensions(),
                });
            }
            Some(gt)
        }
        None => None,
    };

    let range = LevelRange::new(config.first_level, config.last_level)?;
    let decomp = starlet_decompose(&image, config.last_level)?;
    let stack = mlss(&image, &decomp, range, config.mode, config.threshold)?;

    let out_dir = config.output_dir.clone().unwrap_or_else(|| {
        config
            .input_path
            .parent()
            .map(Path::to_path_buf)
            .unwrap_or_else(|| PathBuf::from("."))
    });
    let stem = input_stem(&config.input_path);

    if config.emit.details {
        for level in range.iter() {
            let path = output_path(&out_dir, &stem, OutputKind::Detail, level);
            save_detail_plane(&decomp.details[level - 1], &path)?;
            println!("wrote detail level {level}: {}", path.display());
        }
    }
    if config.emit.masks {
        for (index, mask) in stack.masks.iter().enumerate() {
            let level = stack.level_at(index);
            let path = output_path(&out_dir, &stem, OutputKind::Segmentation, level);
            save_mask(mask, &path)?;
            println!("wrote segmentation level {level}: {}", path.display());
        }
    }

    let mut report = None;
    if let Some(gt) = &gt {
        if config.emit.comparisons {
            for (index, mask) in stack.masks.iter().enumerate() {
                let level = stack.level_at(index);
                let comp = comp_image(mask, &gt.mask)?;
                let path = output_path(&out_dir, &stem, OutputKind::Comparison, level);
                save_comp(&comp, &path)?;
                println!("wrote comparison level {level}: {}", path.display());
            }
        }
        let scored = mlsos(&stack, &gt.mask)?;
        if config.emit.csv {
            let path = csv_path(&out_dir, &stem);
            fs::write(&path, render_csv(&scored)).map_err(|e| Error::Write {
                path: path.clone(),
                message: e.to_string(),
            })?;
            println!("wrote MCC report: {}", path.display());
        }
        let best = scored.optimal();
        println!(
            "optimal segmentation level: {} (MCC {:.4}%)",
            scored.optimal_level, best.mcc_percent
        );
        report = Some(scored);
    }

    Ok(report)
}

/// Executes the `synth` subcommand: writes `{kind}.png` and `{kind}GT.png`.
pub fn run_synth(config: &SynthConfig) -> Result<()> {
    let (img, gt) = generate(&config.spec)?;
    let name = match config.spec.kind {
        FixtureKind::Blobs => "blobs",
        FixtureKind::Tracks => "tracks",
    };
    let img_path = config.out_dir.join(format!("{name}.png"));
    let gt_path = config.out_dir.join(format!("{name}GT.png"));
    save_intensity(&img, &img_path)?;
    save_mask(&gt.mask, &gt_path)?;
    println!("wrote image: {}", img_path.display());
    println!("wrote ground truth: {}", gt_path.display());
    Ok(())
}

/// Entry point for the binary; returns the process exit code.
pub fn main() -> i32 {
    match parse_args(std::env::args().skip(1)) {
        Ok(Action::Print(text)) => {
            print!("{text}");
            0
        }
        Ok(Action::Run(config)) => match run(&config) {
            Ok(_) => 0,
            Err(e) => {
                eprintln!("error: {e}");
                exit_code(&e)
            }
        },
        Ok(Action::Synth(config)) => match run_synth(&config) {
            Ok(()) => 0,
            Err(e) => {
                eprintln!("error: {e}");
                exit_code(&e)
            }
        },
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
