//! Independent reference implementations used by the integration tests.
#![allow(dead_code)]

use kantorovich::rng::{standard_normal, uniform_open};
use kantorovich::sk::StepSignal;
use kantorovich::{CellMeans, Domain1D, GrayImage, Kernel, KernelFamily};

/// `(S_n f)(x_i)` by summing over every available coefficient.
pub fn naive_sk(means: &CellMeans, kernel: &Kernel, domain: &Domain1D) -> Vec<f64> {
    let n = f64::from(means.n());
    (0..domain.grid_points())
        .map(|i| {
            let x = domain.point(i);
            let mut acc = 0.0;
            for (j, v) in means.values().iter().enumerate() {
                let k = means.k_min() + j as i64;
                acc += v * kernel.evaluate(n * x - k as f64);
            }
            // The right endpoint belongs to the last box cell.
            if kernel.family() == KernelFamily::Box && x == domain.b() && n * x == (means.k_max() + 1) as f64 {
                acc += means.values()[means.values().len() - 1] * kernel.evaluate(0.0);
            }
            acc
        })
        .collect()
}

/// Composite Simpson with explicit 1-4-2-…-4-1 weights.
pub fn simpson_weights(f: impl Fn(f64) -> f64, a: f64, b: f64, intervals: usize) -> f64 {
    assert!(intervals.is_multiple_of(2));
    let h = (b - a) / intervals as f64;
    let mut acc = 0.0;
    for j in 0..=intervals {
        let w = if j == 0 || j == intervals {
            1.0
        } else if j % 2 == 1 {
            4.0
        } else {
            2.0
        };
        acc += w * f(a + j as f64 * h);
    }
    acc * h / 3.0
}

/// Fine composite midpoint rule.
pub fn midpoint_fine(f: impl Fn(f64) -> f64, a: f64, b: f64, panels: usize) -> f64 {
    let h = (b - a) / panels as f64;
    (0..panels).map(|j| f(a + (j as f64 + 0.5) * h)).sum::<f64>() * h
}

/// Per-pixel block average found by scanning the whole image.
pub fn naive_block(img: &GrayImage, w: usize) -> GrayImage {
    let (h, wd) = (img.height(), img.width());
    GrayImage::from_fn(h, wd, |r, c| {
        let (br, bc) = (r / w, c / w);
        let mut sum = 0.0;
        let mut count = 0usize;
        for rr in 0..h {
            for cc in 0..wd {
                if rr / w == br && cc / w == bc {
                    sum += img.get(rr, cc);
                    count += 1;
                }
            }
        }
        sum / count as f64
    })
}

/// Cell means shifted by `τ·Z(seed, trial, k)`.
pub fn naive_noisy_means(means: &CellMeans, std: f64, seed: u64, trial: u64) -> CellMeans {
    let values = means
        .values()
        .iter()
        .enumerate()
        .map(|(j, v)| {
            let k = means.k_min() + j as i64;
            v + std * standard_normal(seed, trial, k as u64)
        })
        .collect();
    CellMeans::new(means.n(), means.k_min(), values).unwrap()
}

/// Image plus `τ·Z(seed, trial, row-major index)`.
pub fn naive_noisy_image(img: &GrayImage, std: f64, seed: u64, trial: u64) -> GrayImage {
    let w = img.width();
    GrayImage::from_fn(img.height(), w, |r, c| {
        img.get(r, c) + std * standard_normal(seed, trial, (r * w + c) as u64)
    })
}

/// Block averages with `τ·Z(seed, trial, block index)` added to each block.
pub fn naive_block_noise(img: &GrayImage, w: usize, std: f64, seed: u64, trial: u64) -> GrayImage {
    let clean = naive_block(img, w);
    let cols = img.width().div_ceil(w);
    GrayImage::from_fn(img.height(), img.width(), |r, c| {
        clean.get(r, c) + std * standard_normal(seed, trial, ((r / w) * cols + c / w) as u64)
    })
}

/// Uniform variate in `(lo, hi)` from the crate's counter hash.
pub fn uniform(seed: u64, index: u64, lo: f64, hi: f64) -> f64 {
    lo + (hi - lo) * uniform_open(seed, 0, index, 7)
}

pub fn random_image(seed: u64, h: usize, w: usize) -> GrayImage {
    GrayImage::from_fn(h, w, |r, c| uniform(seed, (r * w + c) as u64, 0.0, 1.0))
}

/// Random step function: `pieces` values uniform in `(−1, 1)` on equal
/// intervals starting at `origin`.
pub fn random_step(seed: u64, pieces: usize, spacing: f64, origin: f64) -> StepSignal {
    let values = (0..pieces).map(|i| uniform(seed, i as u64, -1.0, 1.0)).collect();
    StepSignal::new(origin, spacing, values).unwrap()
}

/// Exact `∫ |p|` for the piecewise linear `p` with the given knot values and spacing.
pub fn l1_piecewise_linear(knots: &[f64], h: f64) -> f64 {
    knots
        .windows(2)
        .map(|s| {
            let (u, v) = (s[0], s[1]);
            if u * v >= 0.0 {
                h * (u.abs() + v.abs()) / 2.0
            } else {
                h * (u * u + v * v) / (2.0 * (u.abs() + v.abs()))
            }
        })
        .sum()
}

/// `‖S_n g‖₁` computed exactly for the box (piecewise constant) and the hat
/// (piecewise linear with knots on `k/n`) kernels.
pub fn sk_l1_exact(g: &StepSignal, n: u32, kernel: &Kernel) -> f64 {
    let nf = f64::from(n);
    let lo = (g.origin() * nf).floor() as i64;
    let hi = ((g.origin() + g.spacing() * g.values().len() as f64) * nf).ceil() as i64;
    let means = g.cell_means(n, lo, hi).unwrap();
    match kernel.family() {
        KernelFamily::Box => means.values().iter().map(|v| v.abs()).sum::<f64>() / nf,
        KernelFamily::BSpline(2) => {
            // (S_n g)(j/n) = mean_{j-1}; linear in between.
            let mut knots = vec![0.0];
            knots.extend_from_slice(means.values());
            knots.push(0.0);
            l1_piecewise_linear(&knots, 1.0 / nf)
        }
        other => panic!("no exact L1 oracle for {other:?}"),
    }
}

/// `sup_x |(S_n g)(x)|` for the same two kernels (extrema sit at knots).
pub fn sk_sup_exact(g: &StepSignal, n: u32) -> f64 {
    let nf = f64::from(n);
    let lo = (g.origin() * nf).floor() as i64;
    let hi = ((g.origin() + g.spacing() * g.values().len() as f64) * nf).ceil() as i64;
    let means = g.cell_means(n, lo, hi).unwrap();
    means.values().iter().fold(0.0, |m, v| m.max(v.abs()))
}

/// `ξ_m(x)` as a numerical box convolution (`m − 1` nested midpoint integrals).
pub fn bspline_by_convolution(m: u32, x: f64, panels: usize) -> f64 {
    if m == 1 {
        return if (0.0..1.0).contains(&x) { 1.0 } else { 0.0 };
    }
    // ξ_m(x) = ∫_0^1 ξ_{m-1}(x − t) dt
    midpoint_fine(|t| bspline_by_convolution(m - 1, x - t, panels), 0.0, 1.0, panels)
}
