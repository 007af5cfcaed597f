//! Browser bindings for the `kantorovich` crate: a 1D curve explorer, a
//! block-window image reconstruction, and an L¹ error table.

use wasm_bindgen::prelude::*;

use kantorovich::experiments::{classical_error, expgauss};
use kantorovich::image::{apply_psk_image, apply_sk_image};
use kantorovich::metrics;
use kantorovich::psk::{apply_psk, expected_error, ErrorKind};
use kantorovich::sk::{apply_sk, compute_cell_means_for_kernel};
use kantorovich::{
    synthetic, Domain1D, GrayImage, Kernel, NoiseModel, NoisePlacement, Quadrature, SsimConfig, TrialContext,
    WindowSpec,
};

fn msg(e: kantorovich::Error) -> String {
    e.to_string()
}

/// `[x…, f…, S_n f…, P_n f…]`, each block `points` long, for `e^{-x²}` on `[−3, 3]`.
pub fn curves(n: u32, kernel: &str, noise_std: f64, seed: u64, trial: u64, points: usize) -> Result<Vec<f64>, String> {
    let kernel: Kernel = kernel.parse().map_err(msg)?;
    let d = Domain1D::new(-3.0, 3.0, points).map_err(msg)?;
    let q = Quadrature::default();
    let means = compute_cell_means_for_kernel(expgauss, &d, n, &kernel, q).map_err(msg)?;
    let sk = apply_sk(&means, &kernel, &d).map_err(msg)?;
    let noise = NoiseModel::new(noise_std, NoisePlacement::PerCell, seed).map_err(msg)?;
    let psk = apply_psk(expgauss, &d, n, &kernel, &noise, TrialContext::new(trial), q).map_err(msg)?;
    let mut out = d.points();
    out.extend(out.iter().map(|&x| expgauss(x)).collect::<Vec<_>>());
    out.extend_from_slice(sk.samples());
    out.extend_from_slice(psk.samples());
    Ok(out)
}

/// `[n, classical, expected probabilistic, standard error]` per density.
pub fn error_rows(
    densities: &[u32],
    kernel: &str,
    noise_std: f64,
    trials: usize,
    seed: u64,
) -> Result<Vec<f64>, String> {
    let kernel: Kernel = kernel.parse().map_err(msg)?;
    let d = Domain1D::new(-3.0, 3.0, 1000).map_err(msg)?;
    let q = Quadrature::default();
    let noise = NoiseModel::new(noise_std, NoisePlacement::PerCell, seed).map_err(msg)?;
    let mut out = Vec::with_capacity(4 * densities.len());
    for &n in densities {
        let c = classical_error(expgauss, &d, n, &kernel, q).map_err(msg)?.l1_total;
        let p = expected_error(expgauss, &d, n, &kernel, &noise, trials, ErrorKind::L1Total, q).map_err(msg)?;
        out.extend([f64::from(n), c, p.mean, p.std_error]);
    }
    Ok(out)
}

pub struct Reconstruction {
    pub image: GrayImage,
    /// `[psnr, ssim, mae, mse]`; PSNR is `+∞` for a perfect match.
    pub metrics: [f64; 4],
}

pub fn reconstruct(window: usize, noise_std: f64, seed: u64, trial: u64) -> Result<Reconstruction, String> {
    let img = synthetic::test_image();
    let win = WindowSpec::new(window).map_err(msg)?;
    let recon = if noise_std > 0.0 {
        let noise = NoiseModel::new(noise_std, NoisePlacement::PerSample, seed).map_err(msg)?;
        apply_psk_image(&img, win, &noise, TrialContext::new(trial)).map_err(msg)?
    } else {
        apply_sk_image(&img, win).map_err(msg)?
    };
    let r = metrics::report(&img, &recon, &SsimConfig::default()).map_err(msg)?;
    Ok(Reconstruction {
        image: recon,
        metrics: [r.psnr.value(), r.ssim, r.mae, r.mse],
    })
}

/// Clipped grayscale as RGBA bytes for a canvas `ImageData`.
pub fn to_rgba(img: &GrayImage) -> Vec<u8> {
    img.pixels()
        .iter()
        .flat_map(|&v| {
            let g = (v.clamp(0.0, 1.0) * 255.0 + 0.5).floor() as u8;
            [g, g, g, 255]
        })
        .collect()
}

#[wasm_bindgen]
pub fn image_side() -> usize {
    synthetic::SIZE
}

#[wasm_bindgen]
pub fn original_rgba() -> Vec<u8> {
    to_rgba(&synthetic::test_image())
}

#[wasm_bindgen]
pub fn curve_explorer(
    n: u32,
    kernel: &str,
    noise_std: f64,
    seed: u32,
    trial: u32,
    points: usize,
) -> Result<Vec<f64>, JsValue> {
    curves(n, kernel, noise_std, u64::from(seed), u64::from(trial), points).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn reconstruct_rgba(window: usize, noise_std: f64, seed: u32, trial: u32) -> Result<Vec<u8>, JsValue> {
    reconstruct(window, noise_std, u64::from(seed), u64::from(trial))
        .map(|r| to_rgba(&r.image))
        .map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn reconstruct_metrics(window: usize, noise_std: f64, seed: u32, trial: u32) -> Result<Vec<f64>, JsValue> {
    reconstruct(window, noise_std, u64::from(seed), u64::from(trial))
        .map(|r| r.metrics.to_vec())
        .map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn error_table(
    densities: Vec<u32>,
    kernel: &str,
    noise_std: f64,
    trials: usize,
    seed: u32,
) -> Result<Vec<f64>, JsValue> {
    error_rows(&densities, kernel, noise_std, trials, u64::from(seed)).map_err(|e| JsValue::from_str(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn curve_layout() {
        let c = curves(5, "box", 0.0, 1, 0, 11).unwrap();
        assert_eq!(c.len(), 44);
        assert_eq!(c[0], -3.0);
        assert_eq!(c[10], 3.0);
        assert_eq!(&c[22..33], &c[33..44]);
        assert!(curves(5, "sinc", 0.0, 1, 0, 11).is_err());
    }

    #[test]
    fn window_one_is_lossless() {
        let r = reconstruct(1, 0.0, 1, 0).unwrap();
        assert_eq!(r.image, synthetic::test_image());
        assert_eq!(r.metrics[0], f64::INFINITY);
        assert_eq!(r.metrics[2], 0.0);
        assert_eq!(to_rgba(&r.image).len(), 4 * 256 * 256);
    }

    #[test]
    fn error_rows_layout() {
        let rows = error_rows(&[5, 15], "box", 0.02, 20, 42).unwrap();
        assert_eq!(rows.len(), 8);
        assert_eq!(rows[0], 5.0);
        assert!(rows[2] > rows[1]);
        assert!(rows[5] < rows[1]);
    }

    #[test]
    fn rgba_rounds_and_clips() {
        let img = GrayImage::new(1, 3, vec![0.5, 1.5, -1.0]).unwrap();
        assert_eq!(
            to_rgba(&img),
            vec![128, 128, 128, 255, 255, 255, 255, 255, 0, 0, 0, 255]
        );
    }
}
