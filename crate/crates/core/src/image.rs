//! The sampling Kantorovich operator on grayscale images.
//!
//! An image is the step function that equals pixel `(r, c)` on its unit
//! square. With the box kernel and an `w × w` window, the Kantorovich mean of
//! a cell is the arithmetic mean of its block of pixels, and the
//! reconstruction paints each pixel with its block's mean. Blocks on the
//! bottom and right edges are smaller when `w` does not divide the image.

use crate::error::{Error, Result};
use crate::metrics::{self, ExpectedStats, MetricsReport, Psnr, SsimConfig};
use crate::parallel::map_indexed;
use crate::psk::{MonteCarloEstimate, NoiseModel, NoisePlacement, TrialContext};

#[derive(Debug, Clone, PartialEq)]
pub struct GrayImage {
    height: usize,
    width: usize,
    pixels: Vec<f64>,
}

impl GrayImage {
    /// Row-major pixels. Values are not range-checked, since noisy
    /// intermediates may leave `[0, 1]`.
    pub fn new(height: usize, width: usize, pixels: Vec<f64>) -> Result<Self> {
        if height == 0 || width == 0 {
            return Err(Error::param("image dimensions must be positive"));
        }
        if pixels.len() != height * width {
            return Err(Error::ShapeMismatch(format!(
                "{} pixels for a {height}x{width} image",
                pixels.len()
            )));
        }
        if let Some(i) = pixels.iter().position(|v| !v.is_finite()) {
            return Err(Error::param(format!("pixel {i} is not finite")));
        }
        Ok(Self { height, width, pixels })
    }

    pub fn from_fn(height: usize, width: usize, f: impl Fn(usize, usize) -> f64) -> Self {
        let mut pixels = Vec::with_capacity(height * width);
        for r in 0..height {
            for c in 0..width {
                pixels.push(f(r, c));
            }
        }
        Self { height, width, pixels }
    }

    pub fn filled(height: usize, width: usize, value: f64) -> Self {
        Self {
            height,
            width,
            pixels: vec![value; height * width],
        }
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn len(&self) -> usize {
        self.pixels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pixels.is_empty()
    }

    pub fn pixels(&self) -> &[f64] {
        &self.pixels
    }

    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.pixels[r * self.width + c]
    }

    pub fn clipped(&self) -> GrayImage {
        GrayImage {
            height: self.height,
            width: self.width,
            pixels: self.pixels.iter().map(|v| v.clamp(0.0, 1.0)).collect(),
        }
    }
}

/// Side of the square averaging window.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WindowSpec {
    side: usize,
}

impl WindowSpec {
    pub fn new(side: usize) -> Result<Self> {
        if side == 0 {
            return Err(Error::param("window side must be at least 1"));
        }
        Ok(Self { side })
    }

    pub fn side(&self) -> usize {
        self.side
    }

    pub fn check(&self, height: usize, width: usize) -> Result<()> {
        if self.side > height.min(width) {
            return Err(Error::param(format!(
                "window {} exceeds image {height}x{width}",
                self.side
            )));
        }
        Ok(())
    }
}

/// Block means of an image, one per `w × w` block, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockGrid {
    side: usize,
    height: usize,
    width: usize,
    block_rows: usize,
    block_cols: usize,
    coeffs: Vec<f64>,
}

impl BlockGrid {
    pub fn block_rows(&self) -> usize {
        self.block_rows
    }

    pub fn block_cols(&self) -> usize {
        self.block_cols
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn coeff(&self, br: usize, bc: usize) -> f64 {
        self.coeffs[br * self.block_cols + bc]
    }

    /// Pixel count of block `(br, bc)`.
    pub fn block_size(&self, br: usize, bc: usize) -> usize {
        let rows = (self.height - br * self.side).min(self.side);
        let cols = (self.width - bc * self.side).min(self.side);
        rows * cols
    }
}

pub fn block_means(img: &GrayImage, win: WindowSpec) -> Result<BlockGrid> {
    win.check(img.height, img.width)?;
    let side = win.side;
    let block_rows = img.height.div_ceil(side);
    let block_cols = img.width.div_ceil(side);
    let mut sums = vec![0.0; block_rows * block_cols];
    for br in 0..block_rows {
        let r_end = ((br + 1) * side).min(img.height);
        for bc in 0..block_cols {
            let c0 = bc * side;
            let c_end = (c0 + side).min(img.width);
            let mut acc = 0.0;
            for r in br * side..r_end {
                for &v in &img.pixels[r * img.width + c0..r * img.width + c_end] {
                    acc += v;
                }
            }
            sums[br * block_cols + bc] = acc / ((r_end - br * side) * (c_end - c0)) as f64;
        }
    }
    Ok(BlockGrid {
        side,
        height: img.height,
        width: img.width,
        block_rows,
        block_cols,
        coeffs: sums,
    })
}

/// Paints every pixel with its block's coefficient.
pub fn reconstruct_sk(grid: &BlockGrid, win: WindowSpec, height: usize, width: usize) -> Result<GrayImage> {
    if grid.side != win.side || grid.height != height || grid.width != width {
        return Err(Error::ShapeMismatch(format!(
            "block grid for {}x{} (w={}) cannot reconstruct {height}x{width} (w={})",
            grid.height, grid.width, grid.side, win.side
        )));
    }
    let side = win.side;
    Ok(GrayImage::from_fn(height, width, |r, c| grid.coeff(r / side, c / side)))
}

/// Classical reconstruction `S_w f`.
pub fn apply_sk_image(img: &GrayImage, win: WindowSpec) -> Result<GrayImage> {
    let grid = block_means(img, win)?;
    reconstruct_sk(&grid, win, img.height, img.width)
}

/// Adds i.i.d. `N(0, τ²)` noise to every pixel (stream index = row-major
/// pixel index).
pub fn add_pixel_noise(img: &GrayImage, noise: &NoiseModel, trial: TrialContext) -> GrayImage {
    if noise.is_silent() {
        return img.clone();
    }
    let pixels = img
        .pixels
        .iter()
        .enumerate()
        .map(|(i, v)| v + trial.draw(noise, i as u64))
        .collect();
    GrayImage {
        height: img.height,
        width: img.width,
        pixels,
    }
}

/// One realization of the noisy reconstruction. `PerSample` perturbs the
/// pixels before averaging; `PerCell` perturbs each block mean (stream index
/// = row-major block index).
pub fn apply_psk_image(img: &GrayImage, win: WindowSpec, noise: &NoiseModel, trial: TrialContext) -> Result<GrayImage> {
    match noise.placement() {
        NoisePlacement::PerSample => apply_sk_image(&add_pixel_noise(img, noise, trial), win),
        NoisePlacement::PerCell => {
            let mut grid = block_means(img, win)?;
            if !noise.is_silent() {
                for (i, v) in grid.coeffs.iter_mut().enumerate() {
                    *v += trial.draw(noise, i as u64);
                }
            }
            reconstruct_sk(&grid, win, img.height, img.width)
        }
    }
}

/// Per-trial reconstructions processed together; fixed so that the
/// accumulation order does not depend on the worker count.
const TRIAL_BATCH: u64 = 8;

struct TrialOutcome {
    mae: f64,
    mse: f64,
    psnr: Psnr,
    ssim: f64,
    abs_err: Vec<f64>,
}

/// Expected PSNR, SSIM, MAE and MSE of the noisy reconstruction against the
/// clean original over trials `0..trials`, with standard errors, plus the
/// variance of the absolute error.
pub fn expected_reconstruction_metrics(
    img: &GrayImage,
    win: WindowSpec,
    noise: &NoiseModel,
    trials: usize,
    cfg: &SsimConfig,
) -> Result<MetricsReport> {
    if trials < 2 {
        return Err(Error::param(format!("need at least 2 trials, got {trials}")));
    }
    win.check(img.height, img.width)?;
    let npx = img.len();
    let mut s1 = vec![0.0; npx];
    let mut s2 = vec![0.0; npx];
    let mut maes = Vec::with_capacity(trials);
    let mut mses = Vec::with_capacity(trials);
    let mut psnrs = Vec::with_capacity(trials);
    let mut ssims = Vec::with_capacity(trials);

    let trials_u = trials as u64;
    let mut start = 0;
    while start < trials_u {
        let count = TRIAL_BATCH.min(trials_u - start);
        let batch = map_indexed(count, |i| -> Result<TrialOutcome> {
            let recon = apply_psk_image(img, win, noise, TrialContext::new(start + i))?;
            let abs_err: Vec<f64> = recon
                .pixels
                .iter()
                .zip(&img.pixels)
                .map(|(a, b)| (a - b).abs())
                .collect();
            let mae = abs_err.iter().sum::<f64>() / npx as f64;
            let mse = abs_err.iter().map(|e| e * e).sum::<f64>() / npx as f64;
            Ok(TrialOutcome {
                mae,
                mse,
                psnr: Psnr::from_mse(mse, cfg.peak),
                ssim: metrics::ssim(img, &recon, cfg)?,
                abs_err,
            })
        });
        for outcome in batch {
            let o = outcome?;
            for ((a, b), e) in s1.iter_mut().zip(s2.iter_mut()).zip(&o.abs_err) {
                *a += e;
                *b += e * e;
            }
            maes.push(o.mae);
            mses.push(o.mse);
            psnrs.push(o.psnr);
            ssims.push(o.ssim);
        }
        start += count;
    }

    let t = trials as f64;
    let var_abs_err = s1
        .iter()
        .zip(&s2)
        .map(|(a, b)| {
            let m = a / t;
            (b / t - m * m).max(0.0)
        })
        .sum::<f64>()
        / npx as f64;
    let pooled_m1 = s1.iter().sum::<f64>() / (t * npx as f64);
    let pooled_m2 = s2.iter().sum::<f64>() / (t * npx as f64);
    let var_abs_err_pooled = (pooled_m2 - pooled_m1 * pooled_m1).max(0.0);

    let (psnr, psnr_se) = if psnrs.iter().all(Psnr::is_infinite) {
        (Psnr::Infinite, 0.0)
    } else {
        let values: Vec<f64> = psnrs.iter().map(Psnr::value).collect();
        let e = metrics::expected_metric(&values)?;
        (Psnr::Db(e.mean), e.std_error)
    };
    let mae = MonteCarloEstimate::from_samples(&maes)?;
    let mse = MonteCarloEstimate::from_samples(&mses)?;
    let ssim = metrics::expected_metric(&ssims)?;
    Ok(MetricsReport {
        mae: mae.mean,
        mse: mse.mean,
        psnr,
        ssim: ssim.mean,
        var_abs_err,
        var_abs_err_pooled,
        expected: Some(ExpectedStats {
            trials,
            mae_se: mae.std_error,
            mse_se: mse.std_error,
            psnr_se,
            ssim_se: ssim.std_error,
        }),
    })
}
