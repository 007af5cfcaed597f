//! Image quality metrics (MAE, MSE, PSNR, SSIM, variance of the absolute
//! error) and their Monte Carlo expectations.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::image::GrayImage;
use crate::psk::MonteCarloEstimate;

/// PSNR in decibels, or the "identical images" sentinel (MSE = 0).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Psnr {
    Db(f64),
    Infinite,
}

impl Psnr {
    pub fn from_mse(mse: f64, peak: f64) -> Self {
        if mse == 0.0 {
            Psnr::Infinite
        } else {
            Psnr::Db(10.0 * libm::log10(peak * peak / mse))
        }
    }

    /// `f64::INFINITY` for the sentinel.
    pub fn value(&self) -> f64 {
        match *self {
            Psnr::Db(v) => v,
            Psnr::Infinite => f64::INFINITY,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Psnr::Infinite)
    }
}

impl fmt::Display for Psnr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Psnr::Db(v) => write!(f, "{v}"),
            Psnr::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SsimWindow {
    /// 11×11 Gaussian, σ = 1.5.
    Gaussian11,
    Uniform(usize),
}

impl SsimWindow {
    pub fn side(&self) -> usize {
        match *self {
            SsimWindow::Gaussian11 => 11,
            SsimWindow::Uniform(s) => s,
        }
    }

    /// Normalized 1D weights; the 2D window is their outer product.
    fn weights(&self) -> Vec<f64> {
        match *self {
            SsimWindow::Gaussian11 => {
                let sigma = 1.5_f64;
                let raw: Vec<f64> = (0..11)
                    .map(|i| {
                        let d = i as f64 - 5.0;
                        libm::exp(-d * d / (2.0 * sigma * sigma))
                    })
                    .collect();
                let total: f64 = raw.iter().sum();
                raw.into_iter().map(|w| w / total).collect()
            }
            SsimWindow::Uniform(s) => vec![1.0 / s as f64; s],
        }
    }
}

impl FromStr for SsimWindow {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gauss11" => Ok(SsimWindow::Gaussian11),
            _ => match s.strip_prefix("uniform").map(str::parse::<usize>) {
                Some(Ok(side)) if side >= 1 => Ok(SsimWindow::Uniform(side)),
                _ => Err(Error::param(format!(
                    "unknown SSIM window '{s}' (expected gauss11 or uniform8)"
                ))),
            },
        }
    }
}

impl fmt::Display for SsimWindow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SsimWindow::Gaussian11 => f.write_str("gauss11"),
            SsimWindow::Uniform(s) => write!(f, "uniform{s}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SsimConfig {
    pub window: SsimWindow,
    pub k1: f64,
    pub k2: f64,
    pub peak: f64,
}

impl Default for SsimConfig {
    fn default() -> Self {
        Self {
            window: SsimWindow::Gaussian11,
            k1: 0.01,
            k2: 0.03,
            peak: 1.0,
        }
    }
}

impl SsimConfig {
    pub fn c1(&self) -> f64 {
        (self.k1 * self.peak).powi(2)
    }

    pub fn c2(&self) -> f64 {
        (self.k2 * self.peak).powi(2)
    }
}

fn same_shape(f: &GrayImage, g: &GrayImage) -> Result<()> {
    if f.height() != g.height() || f.width() != g.width() {
        return Err(Error::ShapeMismatch(format!(
            "{}x{} vs {}x{}",
            f.height(),
            f.width(),
            g.height(),
            g.width()
        )));
    }
    Ok(())
}

pub fn mae(f: &GrayImage, g: &GrayImage) -> Result<f64> {
    same_shape(f, g)?;
    let s: f64 = f.pixels().iter().zip(g.pixels()).map(|(a, b)| (a - b).abs()).sum();
    Ok(s / f.len() as f64)
}

pub fn mse(f: &GrayImage, g: &GrayImage) -> Result<f64> {
    same_shape(f, g)?;
    let s: f64 = f.pixels().iter().zip(g.pixels()).map(|(a, b)| (a - b) * (a - b)).sum();
    Ok(s / f.len() as f64)
}

pub fn psnr(f: &GrayImage, g: &GrayImage, peak: f64) -> Result<Psnr> {
    if peak.is_nan() || peak <= 0.0 {
        return Err(Error::param(format!("peak must be positive, got {peak}")));
    }
    Ok(Psnr::from_mse(mse(f, g)?, peak))
}

#[inline]
fn ssim_formula(mx: f64, my: f64, vx: f64, vy: f64, cxy: f64, c1: f64, c2: f64) -> f64 {
    ((2.0 * mx * my + c1) * (2.0 * cxy + c2)) / ((mx * mx + my * my + c1) * (vx + vy + c2))
}

/// Separable "valid" filtering: output is `(h − s + 1) × (w − s + 1)`.
fn filter_valid(src: &[f64], h: usize, w: usize, k: &[f64]) -> Vec<f64> {
    let s = k.len();
    let ow = w - s + 1;
    let oh = h - s + 1;
    let mut tmp = vec![0.0; h * ow];
    for r in 0..h {
        let row = &src[r * w..(r + 1) * w];
        for c in 0..ow {
            tmp[r * ow + c] = k.iter().zip(&row[c..c + s]).map(|(a, b)| a * b).sum();
        }
    }
    let mut out = vec![0.0; oh * ow];
    for r in 0..oh {
        for c in 0..ow {
            out[r * ow + c] = k.iter().enumerate().map(|(i, a)| a * tmp[(r + i) * ow + c]).sum();
        }
    }
    out
}

/// SSIM map over every window position fully inside the image.
pub fn ssim_map(f: &GrayImage, g: &GrayImage, cfg: &SsimConfig) -> Result<Vec<f64>> {
    same_shape(f, g)?;
    let side = cfg.window.side();
    let (h, w) = (f.height(), f.width());
    if h < side || w < side {
        return Err(Error::ImageSmallerThanWindow {
            height: h,
            width: w,
            window: side,
        });
    }
    let k = cfg.window.weights();
    let x = f.pixels();
    let y = g.pixels();
    let xx: Vec<f64> = x.iter().map(|v| v * v).collect();
    let yy: Vec<f64> = y.iter().map(|v| v * v).collect();
    let xy: Vec<f64> = x.iter().zip(y).map(|(a, b)| a * b).collect();
    let mx = filter_valid(x, h, w, &k);
    let my = filter_valid(y, h, w, &k);
    let mxx = filter_valid(&xx, h, w, &k);
    let myy = filter_valid(&yy, h, w, &k);
    let mxy = filter_valid(&xy, h, w, &k);
    let (c1, c2) = (cfg.c1(), cfg.c2());
    Ok((0..mx.len())
        .map(|i| {
            let vx = mxx[i] - mx[i] * mx[i];
            let vy = myy[i] - my[i] * my[i];
            let cxy = mxy[i] - mx[i] * my[i];
            ssim_formula(mx[i], my[i], vx, vy, cxy, c1, c2)
        })
        .collect())
}

/// Mean of the sliding-window SSIM map.
pub fn ssim(f: &GrayImage, g: &GrayImage, cfg: &SsimConfig) -> Result<f64> {
    let map = ssim_map(f, g, cfg)?;
    Ok(map.iter().sum::<f64>() / map.len() as f64)
}

/// SSIM with the whole image as a single window (population statistics).
pub fn ssim_global(f: &GrayImage, g: &GrayImage, cfg: &SsimConfig) -> Result<f64> {
    same_shape(f, g)?;
    let n = f.len() as f64;
    let mx = f.pixels().iter().sum::<f64>() / n;
    let my = g.pixels().iter().sum::<f64>() / n;
    let (mut vx, mut vy, mut cxy) = (0.0, 0.0, 0.0);
    for (a, b) in f.pixels().iter().zip(g.pixels()) {
        let (dx, dy) = (a - mx, b - my);
        vx += dx * dx;
        vy += dy * dy;
        cxy += dx * dy;
    }
    Ok(ssim_formula(mx, my, vx / n, vy / n, cxy / n, cfg.c1(), cfg.c2()))
}

/// Population variance of absolute errors: `E[X²] − (E[X])²`.
pub fn variance_abs_error(abs_errors: &[f64]) -> Result<f64> {
    if abs_errors.is_empty() {
        return Err(Error::param("variance of an empty sample"));
    }
    let n = abs_errors.len() as f64;
    let m1 = abs_errors.iter().sum::<f64>() / n;
    let m2 = abs_errors.iter().map(|v| v * v).sum::<f64>() / n;
    Ok((m2 - m1 * m1).max(0.0))
}

/// Mean and standard error of per-trial metric values (expectation taken
/// outside the metric). Sentinel (infinite) values are rejected.
pub fn expected_metric(per_trial_values: &[f64]) -> Result<MonteCarloEstimate> {
    if per_trial_values.iter().any(|v| v.is_infinite()) {
        return Err(Error::DegenerateTrial(
            "a trial produced the infinite-PSNR sentinel".into(),
        ));
    }
    MonteCarloEstimate::from_samples(per_trial_values)
}

/// Standard errors attached to a report built from Monte Carlo trials.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpectedStats {
    pub trials: usize,
    pub mae_se: f64,
    pub mse_se: f64,
    pub psnr_se: f64,
    pub ssim_se: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricsReport {
    pub mae: f64,
    pub mse: f64,
    pub psnr: Psnr,
    pub ssim: f64,
    /// Variance of `|reconstruction − original|`. For a Monte Carlo report
    /// this is the variance over noise realizations at each pixel, averaged
    /// over pixels.
    pub var_abs_err: f64,
    /// Variance of `|reconstruction − original|` over all pixels and trials
    /// together. Equal to `var_abs_err` for a deterministic report.
    pub var_abs_err_pooled: f64,
    pub expected: Option<ExpectedStats>,
}

/// Metrics of a single reconstruction against the original.
pub fn report(original: &GrayImage, recon: &GrayImage, cfg: &SsimConfig) -> Result<MetricsReport> {
    same_shape(original, recon)?;
    let abs: Vec<f64> = original
        .pixels()
        .iter()
        .zip(recon.pixels())
        .map(|(a, b)| (a - b).abs())
        .collect();
    let var = variance_abs_error(&abs)?;
    let mse = mse(original, recon)?;
    Ok(MetricsReport {
        mae: abs.iter().sum::<f64>() / abs.len() as f64,
        mse,
        psnr: Psnr::from_mse(mse, cfg.peak),
        ssim: ssim(original, recon, cfg)?,
        var_abs_err: var,
        var_abs_err_pooled: var,
        expected: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn img(h: usize, w: usize, px: Vec<f64>) -> GrayImage {
        GrayImage::new(h, w, px).unwrap()
    }

    #[test]
    fn mae_cases() {
        let f = img(1, 2, vec![0.0, 0.5]);
        let g = img(1, 2, vec![0.2, 0.1]);
        assert!((mae(&f, &g).unwrap() - 0.3).abs() < 1e-15);
        assert_eq!(mae(&f, &f).unwrap(), 0.0);
        let h = img(1, 2, vec![0.1, 0.6]);
        assert!((mae(&f, &h).unwrap() - 0.1).abs() < 1e-15);
        assert!(mae(&f, &img(2, 1, vec![0.0, 0.0])).is_err());
    }

    #[test]
    fn psnr_cases() {
        assert_eq!(Psnr::from_mse(0.01, 1.0), Psnr::Db(20.0));
        assert_eq!(Psnr::from_mse(1.0, 1.0), Psnr::Db(0.0));
        let f = img(1, 2, vec![0.0, 0.5]);
        assert_eq!(psnr(&f, &f, 1.0).unwrap(), Psnr::Infinite);
        assert_eq!(Psnr::Infinite.to_string(), "inf");
        assert!(psnr(&f, &f, 0.0).is_err());
    }

    #[test]
    fn ssim_identity_and_constants() {
        let f = GrayImage::from_fn(16, 16, |r, c| ((r * 7 + c * 3) % 11) as f64 / 10.0);
        assert_eq!(ssim(&f, &f, &SsimConfig::default()).unwrap(), 1.0);
        let c = GrayImage::filled(12, 12, 0.4);
        assert_eq!(ssim(&c, &c, &SsimConfig::default()).unwrap(), 1.0);
        let small = GrayImage::filled(10, 20, 0.4);
        assert!(matches!(
            ssim(&small, &small, &SsimConfig::default()),
            Err(Error::ImageSmallerThanWindow { .. })
        ));
        let cfg = SsimConfig {
            window: SsimWindow::Uniform(8),
            ..Default::default()
        };
        assert_eq!(ssim(&f, &f, &cfg).unwrap(), 1.0);
    }

    #[test]
    fn checkerboard_global_closed_form() {
        let board = GrayImage::from_fn(8, 8, |r, c| if (r + c) % 2 == 0 { 0.25 } else { 0.75 });
        let inverse = GrayImage::from_fn(8, 8, |r, c| 1.0 - board.get(r, c));
        let cfg = SsimConfig::default();
        let (mu, var) = (0.5_f64, 0.0625_f64);
        let (c1, c2) = (cfg.c1(), cfg.c2());
        let expected = (2.0 * mu * mu + c1) * (-2.0 * var + c2) / ((2.0 * mu * mu + c1) * (2.0 * var + c2));
        let got = ssim_global(&board, &inverse, &cfg).unwrap();
        assert!((got - expected).abs() < 1e-14, "{got} vs {expected}");
    }

    #[test]
    fn variance_cases() {
        assert_eq!(variance_abs_error(&[0.3; 5]).unwrap(), 0.0);
        assert!((variance_abs_error(&[0.0, 0.2]).unwrap() - 0.01).abs() < 1e-17);
        assert!(variance_abs_error(&[]).is_err());
    }

    #[test]
    fn expected_metric_cases() {
        let e = expected_metric(&[10.0, 20.0]).unwrap();
        assert_eq!(e.mean, 15.0);
        assert!((e.std_error - 5.0).abs() < 1e-12);
        let e = expected_metric(&[0.7; 4]).unwrap();
        assert_eq!((e.mean, e.std_error), (0.7, 0.0));
        assert!(matches!(
            expected_metric(&[1.0, f64::INFINITY]),
            Err(Error::DegenerateTrial(_))
        ));
    }

    #[test]
    fn window_names() {
        assert_eq!("uniform8".parse::<SsimWindow>().unwrap(), SsimWindow::Uniform(8));
        assert_eq!("gauss11".parse::<SsimWindow>().unwrap(), SsimWindow::Gaussian11);
        assert!("box".parse::<SsimWindow>().is_err());
        let w = SsimWindow::Gaussian11.weights();
        assert!((w.iter().sum::<f64>() - 1.0).abs() < 1e-15);
    }
}
