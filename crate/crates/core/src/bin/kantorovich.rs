use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};

use kantorovich::experiments::{
    reproduce_tables, run_approx1d, run_image, write_images, write_reproduction, Approx1dConfig, ImageConfig, Mode,
    ReproduceConfig, TestFunction,
};
use kantorovich::io::{load_pgm, write_csv_report, PgmBits};
use kantorovich::metrics::SsimWindow;
use kantorovich::quadrature::Scheme;
use kantorovich::{reference, synthetic, Domain1D, Kernel, NoisePlacement, NoiseSchedule, Quadrature, SsimConfig};

/// Sampling Kantorovich operators, classical and probabilistic.
#[derive(Parser, Debug)]
#[command(name = "kantorovich", version, about)]
struct Cli {
    /// Master seed for every noise stream.
    #[arg(long, global = true, default_value_t = reference::DEFAULT_SEED)]
    seed: u64,
    /// Worker threads (outputs do not depend on this).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Directory receiving all outputs.
    #[arg(long, global = true, default_value = "out")]
    out_dir: PathBuf,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Approximate a 1D function and report L¹ errors per density.
    Approx1d(Approx1dArgs),
    /// Reconstruct a grayscale image with block windows and report quality metrics.
    Image(ImageArgs),
    /// Rerun the published experiments next to the published numbers.
    ReproduceTables(ReproduceArgs),
}

#[derive(Args, Debug)]
struct NoiseArgs {
    #[arg(long, default_value_t = reference::NOISE_STD)]
    noise_std: f64,
    #[arg(long, default_value_t = reference::DEFAULT_TRIALS)]
    trials: usize,
}

#[derive(Args, Debug)]
struct Approx1dArgs {
    #[arg(long = "fn", default_value = "expgauss")]
    function: TestFunction,
    #[arg(long, default_value_t = reference::DOMAIN.0, allow_negative_numbers = true)]
    a: f64,
    #[arg(long, default_value_t = reference::DOMAIN.1, allow_negative_numbers = true)]
    b: f64,
    #[arg(long, default_value_t = reference::GRID_POINTS)]
    points: usize,
    /// Comma-separated sampling densities.
    #[arg(long, value_delimiter = ',', default_values_t = reference::DENSITIES)]
    n: Vec<u32>,
    /// box, bspline2, bspline3, ...
    #[arg(long, default_value = "box")]
    kernel: Kernel,
    #[arg(long, default_value = "simpson")]
    quad: Scheme,
    #[arg(long, default_value_t = 8)]
    panels: usize,
    #[arg(long, default_value = "both")]
    mode: Mode,
    #[command(flatten)]
    noise: NoiseArgs,
    /// cell or sample.
    #[arg(long, default_value = "cell")]
    noise_placement: NoisePlacement,
    /// fixed or inv-sqrt-n.
    #[arg(long, default_value = "fixed")]
    noise_schedule: NoiseSchedule,
    /// Summary CSV (default: OUT_DIR/approx1d_summary.csv).
    #[arg(long)]
    out_csv: Option<PathBuf>,
    /// Curve CSV (default: OUT_DIR/approx1d_curves.csv).
    #[arg(long)]
    out_curves: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct MetricArgs {
    /// gauss11 or uniformN.
    #[arg(long, default_value = "gauss11")]
    ssim_window: SsimWindow,
    #[arg(long, default_value_t = 1.0)]
    peak: f64,
}

impl MetricArgs {
    fn config(&self) -> anyhow::Result<SsimConfig> {
        if !(self.peak > 0.0 && self.peak.is_finite()) {
            bail!("--peak must be positive, got {}", self.peak);
        }
        Ok(SsimConfig {
            window: self.ssim_window,
            peak: self.peak,
            ..SsimConfig::default()
        })
    }
}

#[derive(Args, Debug)]
struct ImageArgs {
    /// PGM input, or "synthetic" for the bundled 256×256 test image.
    #[arg(long = "in", default_value = "synthetic")]
    input: String,
    #[arg(long, value_delimiter = ',', default_values_t = reference::WINDOWS)]
    windows: Vec<usize>,
    #[arg(long, default_value = "classical")]
    mode: Mode,
    #[command(flatten)]
    noise: NoiseArgs,
    /// sample (per pixel) or cell (per block).
    #[arg(long, default_value = "sample")]
    noise_placement: NoisePlacement,
    #[command(flatten)]
    metrics: MetricArgs,
    /// Bit depth of written PGMs: 8 or 16.
    #[arg(long, default_value_t = 8)]
    bits: u8,
    /// Metrics CSV (default: OUT_DIR/image_report.csv).
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ReproduceArgs {
    /// Optional PGM replacing the synthetic image for Tables 2 and 3.
    #[arg(long = "in")]
    input: Option<PathBuf>,
    #[arg(long, default_value_t = reference::NOISE_STD)]
    noise_std: f64,
    /// Trials for the probabilistic image table.
    #[arg(long, default_value_t = reference::DEFAULT_TRIALS)]
    trials: usize,
    /// Trials for the probabilistic 1D table.
    #[arg(long, default_value_t = reference::TABLE1_TRIALS)]
    table1_trials: usize,
    #[command(flatten)]
    metrics: MetricArgs,
    /// Exit nonzero when any pass/fail gate fails.
    #[arg(long)]
    strict: bool,
}

fn load_input(name: &str) -> anyhow::Result<kantorovich::GrayImage> {
    if name == "synthetic" {
        return Ok(synthetic::test_image());
    }
    load_pgm(name).with_context(|| format!("reading {name}"))
}

fn out_path(explicit: &Option<PathBuf>, dir: &Path, default: &str) -> PathBuf {
    explicit.clone().unwrap_or_else(|| dir.join(default))
}

fn approx1d(args: &Approx1dArgs, seed: u64, dir: &Path) -> anyhow::Result<bool> {
    let cfg = Approx1dConfig {
        function: args.function,
        domain: Domain1D::new(args.a, args.b, args.points)?,
        densities: args.n.clone(),
        kernel: args.kernel,
        quadrature: Quadrature::new(args.quad, args.panels)?,
        mode: args.mode,
        noise_std: args.noise.noise_std,
        placement: args.noise_placement,
        schedule: args.noise_schedule,
        seed,
        trials: args.noise.trials,
    };
    let out = run_approx1d(&cfg)?;
    std::fs::create_dir_all(dir)?;
    let summary = out_path(&args.out_csv, dir, "approx1d_summary.csv");
    let curves = out_path(&args.out_curves, dir, "approx1d_curves.csv");
    write_csv_report(&out.summary, &summary)?;
    write_csv_report(&out.curves, &curves)?;
    eprintln!("wrote {} and {}", summary.display(), curves.display());
    Ok(true)
}

fn image(args: &ImageArgs, seed: u64, dir: &Path) -> anyhow::Result<bool> {
    let img = load_input(&args.input)?;
    let cfg = ImageConfig {
        source: args.input.clone(),
        windows: args.windows.clone(),
        mode: args.mode,
        noise_std: args.noise.noise_std,
        placement: args.noise_placement,
        seed,
        trials: args.noise.trials,
        ssim: args.metrics.config()?,
        bits: PgmBits::from_bits(args.bits)?,
    };
    let out = run_image(&img, &cfg)?;
    std::fs::create_dir_all(dir)?;
    let report = out_path(&args.report, dir, "image_report.csv");
    write_csv_report(&out.report, &report)?;
    write_images(&out.images, dir, cfg.bits)?;
    eprintln!(
        "wrote {} and {} images in {}",
        report.display(),
        out.images.len(),
        dir.display()
    );
    Ok(true)
}

fn reproduce(args: &ReproduceArgs, seed: u64, dir: &Path) -> anyhow::Result<bool> {
    let image = match &args.input {
        Some(p) => Some((
            p.display().to_string(),
            load_pgm(p).with_context(|| format!("reading {}", p.display()))?,
        )),
        None => None,
    };
    let cfg = ReproduceConfig {
        seed,
        noise_std: args.noise_std,
        table1_trials: args.table1_trials,
        table3_trials: args.trials,
        ssim: args.metrics.config()?,
        image,
        ..ReproduceConfig::default()
    };
    let out = reproduce_tables(&cfg)?;
    write_reproduction(&out, dir)?;
    let mut all = true;
    for (name, pass) in &out.gates {
        eprintln!("{} {name}", if *pass { "PASS" } else { "FAIL" });
        all &= pass;
    }
    eprintln!(
        "wrote table1.csv, table2.csv, table3.csv and images in {}",
        dir.display()
    );
    Ok(all || !args.strict)
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    let seed = cli.seed;
    let dir = cli.out_dir.as_path();
    match &cli.command {
        Command::Approx1d(a) => approx1d(a, seed, dir),
        Command::Image(a) => image(a, seed, dir),
        Command::ReproduceTables(a) => reproduce(a, seed, dir),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let threads = cli.threads;
    let result = match threads {
        Some(0) => Err(anyhow::anyhow!("--threads must be at least 1")),
        #[cfg(feature = "parallel")]
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .context("building thread pool")
            .and_then(|pool| pool.install(|| run(cli))),
        _ => run(cli),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
