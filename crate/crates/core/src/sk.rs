//! The classical 1D sampling Kantorovich operator and its error functionals.

use crate::error::{Error, Result};
use crate::kernel::{Kernel, KernelFamily};
use crate::quadrature::{cell_mean, Quadrature};

/// Closed interval `[a, b]` with a uniform evaluation grid of `grid_points`
/// points that includes both endpoints.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Domain1D {
    a: f64,
    b: f64,
    grid_points: usize,
}

impl Domain1D {
    pub fn new(a: f64, b: f64, grid_points: usize) -> Result<Self> {
        if !a.is_finite() || !b.is_finite() || a >= b {
            return Err(Error::InvalidInterval { a, b });
        }
        if grid_points < 2 {
            return Err(Error::param("a domain needs at least 2 grid points"));
        }
        Ok(Self { a, b, grid_points })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn grid_points(&self) -> usize {
        self.grid_points
    }

    pub fn len(&self) -> f64 {
        self.b - self.a
    }

    pub fn step(&self) -> f64 {
        (self.b - self.a) / (self.grid_points - 1) as f64
    }

    /// `x_i = a + i·step`, with the last point pinned to `b`.
    pub fn point(&self, i: usize) -> f64 {
        if i + 1 == self.grid_points {
            self.b
        } else {
            self.a + i as f64 * self.step()
        }
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.grid_points).map(|i| self.point(i)).collect()
    }

    /// Indices of the cells `[k/n, (k+1)/n)` that cover `[a, b)`.
    pub fn cell_range(&self, n: u32) -> (i64, i64) {
        let nf = f64::from(n);
        (floor_snapped(self.a * nf), ceil_snapped(self.b * nf) - 1)
    }
}

// Products like 0.3·10 land a few ulps off an integer; treat those as exact.
fn snap(v: f64) -> Option<f64> {
    let r = v.round();
    ((v - r).abs() <= 1e-9 * r.abs().max(1.0)).then_some(r)
}

fn floor_snapped(v: f64) -> i64 {
    snap(v).unwrap_or_else(|| v.floor()) as i64
}

fn ceil_snapped(v: f64) -> i64 {
    snap(v).unwrap_or_else(|| v.ceil()) as i64
}

/// Kantorovich means `n ∫_{[k/n,(k+1)/n)} f` for consecutive cells
/// `k_min..=k_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct CellMeans {
    n: u32,
    k_min: i64,
    values: Vec<f64>,
}

impl CellMeans {
    pub fn new(n: u32, k_min: i64, values: Vec<f64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::param("sampling density n must be at least 1"));
        }
        if values.is_empty() {
            return Err(Error::param("cell means must not be empty"));
        }
        Ok(Self { n, k_min, values })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k_min(&self) -> i64 {
        self.k_min
    }

    pub fn k_max(&self) -> i64 {
        self.k_min + self.values.len() as i64 - 1
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    pub fn get(&self, k: i64) -> Option<f64> {
        let idx = k.checked_sub(self.k_min)?;
        usize::try_from(idx).ok().and_then(|i| self.values.get(i).copied())
    }

    /// Pointwise linear combination of two mean vectors over the same cells.
    pub fn combine(&self, alpha: f64, other: &CellMeans, beta: f64) -> Result<CellMeans> {
        if self.n != other.n || self.k_min != other.k_min || self.values.len() != other.values.len() {
            return Err(Error::ShapeMismatch("cell means cover different cells".into()));
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(x, y)| alpha * x + beta * y)
            .collect();
        Ok(CellMeans {
            n: self.n,
            k_min: self.k_min,
            values,
        })
    }
}

/// Means over every cell intersecting `[a, b)`, by quadrature.
pub fn compute_cell_means<F: Fn(f64) -> f64>(f: F, domain: &Domain1D, n: u32, q: Quadrature) -> Result<CellMeans> {
    let (k_min, k_max) = domain.cell_range(n);
    compute_cell_means_over(&f, n, k_min, k_max, q)
}

/// Like [`compute_cell_means`], widened on the left so that every kernel
/// translate reaching into the domain has a coefficient.
pub fn compute_cell_means_for_kernel<F: Fn(f64) -> f64>(
    f: F,
    domain: &Domain1D,
    n: u32,
    kernel: &Kernel,
    q: Quadrature,
) -> Result<CellMeans> {
    let (k_min, k_max) = domain.cell_range(n);
    compute_cell_means_over(&f, n, k_min - kernel.cell_padding(), k_max, q)
}

fn compute_cell_means_over<F: Fn(f64) -> f64>(
    f: &F,
    n: u32,
    k_min: i64,
    k_max: i64,
    q: Quadrature,
) -> Result<CellMeans> {
    let values = (k_min..=k_max)
        .map(|k| cell_mean(f, k, n, q))
        .collect::<Result<Vec<_>>>()?;
    CellMeans::new(n, k_min, values)
}

/// Values sampled on a [`Domain1D`] grid.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction1D {
    domain: Domain1D,
    samples: Vec<f64>,
}

impl GridFunction1D {
    pub fn new(domain: Domain1D, samples: Vec<f64>) -> Result<Self> {
        if samples.len() != domain.grid_points() {
            return Err(Error::ShapeMismatch(format!(
                "{} samples for a {}-point grid",
                samples.len(),
                domain.grid_points()
            )));
        }
        if let Some(i) = samples.iter().position(|v| !v.is_finite()) {
            return Err(Error::param(format!("sample {i} is not finite")));
        }
        Ok(Self { domain, samples })
    }

    pub fn sample<F: Fn(f64) -> f64>(f: F, domain: Domain1D) -> Result<Self> {
        Self::new(domain, domain.points().into_iter().map(f).collect())
    }

    pub fn domain(&self) -> &Domain1D {
        &self.domain
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn into_samples(self) -> Vec<f64> {
        self.samples
    }
}

/// `(S_n f)(x_i) = Σ_k mean_k · ξ(n x_i − k)` at every grid point.
///
/// Only `k` with `ξ(n x_i − k) ≠ 0` contribute. With the box kernel the right
/// endpoint `b` is assigned to the last cell.
pub fn apply_sk(means: &CellMeans, kernel: &Kernel, domain: &Domain1D) -> Result<GridFunction1D> {
    let samples = (0..domain.grid_points())
        .map(|i| sk_at(means, kernel, domain, domain.point(i)))
        .collect::<Result<Vec<_>>>()?;
    GridFunction1D::new(*domain, samples)
}

fn sk_at(means: &CellMeans, kernel: &Kernel, domain: &Domain1D, x: f64) -> Result<f64> {
    let nf = f64::from(means.n);
    let y = nf * x;
    let (lo, hi) = kernel.support();
    let first = (y - hi).floor() as i64 + 1;
    let last = (y - lo).floor() as i64;
    let mut acc = 0.0;
    for k in first..=last {
        let w = kernel.evaluate(y - k as f64);
        if w == 0.0 {
            continue;
        }
        match means.get(k) {
            Some(v) => acc += v * w,
            None if kernel.family() == KernelFamily::Box && (x == domain.b() || x == domain.a()) => {
                let k_edge = k.clamp(means.k_min(), means.k_max());
                acc += means.get(k_edge).expect("clamped index is in range") * w;
            }
            None => {
                return Err(Error::GridOutsideCellCover {
                    x,
                    k,
                    k_min: means.k_min(),
                    k_max: means.k_max(),
                });
            }
        }
    }
    Ok(acc)
}

fn check_same_grid(a: &GridFunction1D, b: &GridFunction1D) -> Result<()> {
    if a.domain != b.domain {
        return Err(Error::ShapeMismatch(format!(
            "domains differ: {:?} vs {:?}",
            a.domain, b.domain
        )));
    }
    Ok(())
}

/// `|approx(x_i) − exact(x_i)|`.
pub fn pointwise_error(approx: &GridFunction1D, exact: &GridFunction1D) -> Result<GridFunction1D> {
    check_same_grid(approx, exact)?;
    let samples = approx
        .samples
        .iter()
        .zip(&exact.samples)
        .map(|(s, f)| (s - f).abs())
        .collect();
    GridFunction1D::new(approx.domain, samples)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorSummary {
    pub max: f64,
    pub min: f64,
    /// `(1/|D|) ∫_D err`, trapezoidal.
    pub mean_l1: f64,
    /// `(1/N) Σ err(x_i)`.
    pub discrete_mean: f64,
    /// `∫_D err`, trapezoidal.
    pub l1_total: f64,
}

pub fn error_summary(err: &GridFunction1D) -> ErrorSummary {
    let s = err.samples();
    let max = s.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = s.iter().copied().fold(f64::INFINITY, f64::min);
    let l1_total = trapezoid(s, err.domain.step());
    ErrorSummary {
        max,
        min,
        mean_l1: l1_total / err.domain.len(),
        discrete_mean: s.iter().sum::<f64>() / s.len() as f64,
        l1_total,
    }
}

/// Trapezoidal rule on uniformly spaced samples.
pub fn trapezoid(samples: &[f64], step: f64) -> f64 {
    match samples {
        [] | [_] => 0.0,
        [first, inner @ .., last] => (0.5 * (first + last) + inner.iter().sum::<f64>()) * step,
    }
}

/// Piecewise-constant signal: `values[j]` on `[origin + j·spacing, origin + (j+1)·spacing)`,
/// zero elsewhere. Its cell means are exact sums rather than quadrature.
#[derive(Debug, Clone, PartialEq)]
pub struct StepSignal {
    origin: f64,
    spacing: f64,
    values: Vec<f64>,
}

impl StepSignal {
    pub fn new(origin: f64, spacing: f64, values: Vec<f64>) -> Result<Self> {
        if !(spacing > 0.0 && spacing.is_finite() && origin.is_finite()) {
            return Err(Error::param("step signal needs a finite origin and positive spacing"));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::param("step signal values must be finite"));
        }
        Ok(Self {
            origin,
            spacing,
            values,
        })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    pub fn origin(&self) -> f64 {
        self.origin
    }

    pub fn evaluate(&self, x: f64) -> f64 {
        let j = ((x - self.origin) / self.spacing).floor();
        if j < 0.0 {
            return 0.0;
        }
        self.values.get(j as usize).copied().unwrap_or(0.0)
    }

    pub fn l1_norm(&self) -> f64 {
        self.values.iter().map(|v| v.abs()).sum::<f64>() * self.spacing
    }

    /// Exact `n ∫_{[k/n,(k+1)/n)} g` for the given cells.
    pub fn cell_means(&self, n: u32, k_min: i64, k_max: i64) -> Result<CellMeans> {
        let nf = f64::from(n);
        let values = (k_min..=k_max)
            .map(|k| {
                let (c0, c1) = (k as f64 / nf, (k + 1) as f64 / nf);
                let j0 = ((c0 - self.origin) / self.spacing).floor().max(0.0) as usize;
                let j1 = (((c1 - self.origin) / self.spacing).ceil().max(0.0) as usize).min(self.values.len());
                let mut acc = 0.0;
                for j in j0..j1 {
                    let s0 = self.origin + j as f64 * self.spacing;
                    let overlap = (c1.min(s0 + self.spacing) - c0.max(s0)).max(0.0);
                    acc += self.values[j] * overlap;
                }
                nf * acc
            })
            .collect();
        CellMeans::new(n, k_min, values)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dom(a: f64, b: f64, n: usize) -> Domain1D {
        Domain1D::new(a, b, n).unwrap()
    }

    #[test]
    fn domain_grid() {
        let d = dom(-3.0, 3.0, 1000);
        assert_eq!(d.point(0), -3.0);
        assert_eq!(d.point(999), 3.0);
        assert_eq!(d.cell_range(5), (-15, 14));
        assert_eq!(dom(0.0, 1.0, 2).cell_range(2), (0, 1));
        assert_eq!(dom(0.1, 0.35, 2).cell_range(10), (1, 3));
        assert!(Domain1D::new(1.0, 1.0, 10).is_err());
        assert!(Domain1D::new(0.0, 1.0, 1).is_err());
    }

    #[test]
    fn constant_means() {
        let d = dom(-3.0, 3.0, 1000);
        let m = compute_cell_means(|_| 1.0, &d, 5, Quadrature::default()).unwrap();
        assert_eq!((m.k_min(), m.k_max()), (-15, 14));
        assert!(m.values().iter().all(|&v| v == 1.0));
    }

    #[test]
    fn linear_means_and_membership() {
        let d = dom(0.0, 1.0, 2);
        let m = compute_cell_means(|x| x, &d, 2, Quadrature::default()).unwrap();
        assert!((m.values()[0] - 0.25).abs() < 1e-15);
        assert!((m.values()[1] - 0.75).abs() < 1e-15);

        let exact = CellMeans::new(2, 0, vec![0.25, 0.75]).unwrap();
        let out = apply_sk(&exact, &Kernel::box_kernel(), &d).unwrap();
        // grid {0, 1}: left endpoint in cell 0, right endpoint clamped to cell 1
        assert_eq!(out.samples(), &[0.25, 0.75]);
        let d2 = dom(0.1, 0.9, 2);
        let out = apply_sk(&exact, &Kernel::box_kernel(), &d2).unwrap();
        assert_eq!(out.samples(), &[0.25, 0.75]);
    }

    #[test]
    fn outside_cover_is_an_error() {
        let d = dom(0.0, 2.0, 5);
        let m = CellMeans::new(2, 0, vec![1.0, 1.0]).unwrap();
        let err = apply_sk(&m, &Kernel::box_kernel(), &d).unwrap_err();
        assert!(matches!(err, Error::GridOutsideCellCover { k: 2, .. }));
        // B-spline translates reaching left of the domain need padded means
        let d = dom(0.0, 1.0, 11);
        let k2 = Kernel::bspline(2).unwrap();
        let q = Quadrature::default();
        let plain = compute_cell_means(|_| 1.0, &d, 4, q).unwrap();
        assert!(apply_sk(&plain, &k2, &d).is_err());
        let padded = compute_cell_means_for_kernel(|_| 1.0, &d, 4, &k2, q).unwrap();
        assert_eq!(padded.k_min(), -1);
        let out = apply_sk(&padded, &k2, &d).unwrap();
        assert!(out.samples().iter().all(|v| (v - 1.0).abs() < 1e-12));
    }

    #[test]
    fn errors_and_summary() {
        let d = dom(-3.0, 3.0, 1000);
        let exact = GridFunction1D::sample(|x| (-x * x).exp(), d).unwrap();
        let same = pointwise_error(&exact, &exact).unwrap();
        assert!(same.samples().iter().all(|&v| v == 0.0));

        let shifted = GridFunction1D::sample(|x| (-x * x).exp() + 0.1, d).unwrap();
        let e = pointwise_error(&shifted, &exact).unwrap();
        assert!(e.samples().iter().all(|v| (v - 0.1).abs() < 1e-15));

        let constant = GridFunction1D::new(d, vec![0.1; 1000]).unwrap();
        let s = error_summary(&constant);
        assert!((s.max - 0.1).abs() < 1e-15 && (s.min - 0.1).abs() < 1e-15);
        assert!((s.mean_l1 - 0.1).abs() < 1e-13);
        assert!((s.discrete_mean - 0.1).abs() < 1e-13);
        assert!((s.l1_total - 0.6).abs() < 1e-13);

        let mut spike = vec![0.0; 1000];
        spike[400] = 2.5;
        let s = error_summary(&GridFunction1D::new(d, spike).unwrap());
        assert_eq!((s.min, s.max), (0.0, 2.5));

        let other = GridFunction1D::new(dom(-3.0, 3.0, 999), vec![0.0; 999]).unwrap();
        assert!(pointwise_error(&other, &exact).is_err());
        assert!(GridFunction1D::new(d, vec![0.0; 10]).is_err());
        assert!(GridFunction1D::new(dom(0.0, 1.0, 2), vec![0.0, f64::NAN]).is_err());
    }

    #[test]
    fn step_signal_means() {
        let g = StepSignal::new(-1.0, 0.25, vec![1.0, -2.0, 0.5, 4.0]).unwrap();
        assert_eq!(g.evaluate(-0.9), 1.0);
        assert_eq!(g.evaluate(-0.75), -2.0);
        assert_eq!(g.evaluate(0.1), 0.0);
        assert_eq!(g.l1_norm(), 7.5 * 0.25);
        let m = g.cell_means(2, -3, 0).unwrap();
        // cells [-1.5,-1), [-1,-.5), [-.5,0), [0,.5)
        assert_eq!(m.values(), &[0.0, -0.5, 2.25, 0.0]);
        let m = g.cell_means(3, -3, -1).unwrap();
        // [-1,-2/3): 1·0.25 + (-2)·(1/12) → times 3
        assert!((m.values()[0] - 3.0 * (0.25 - 2.0 / 12.0)).abs() < 1e-15);
    }

    #[test]
    fn trapezoid_basic() {
        assert_eq!(trapezoid(&[], 1.0), 0.0);
        assert_eq!(trapezoid(&[1.0, 3.0], 0.5), 1.0);
    }
}
