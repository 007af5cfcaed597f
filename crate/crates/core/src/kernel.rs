//! Compactly supported sampling kernels and numerical checks of the kernel
//! conditions (unit summation, boundedness, polynomial decay).

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Kernel families admitted by the operators.
///
/// `BSpline(m)` is the `m`-fold self-convolution of the box kernel, supported
/// on `[0, m)`. `BSpline(1)` coincides with `Box`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelFamily {
    Box,
    BSpline(u32),
}

/// Constants `(L, δ)` of the decay estimate `|ξ(x)| ≤ L (1 + |x|)^{-1-δ}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecayBound {
    pub l: f64,
    pub delta: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Kernel {
    family: KernelFamily,
    scale: f64,
    support_radius: f64,
    l1_norm: f64,
    sup_bound: f64,
    decay: DecayBound,
}

/// Largest B-spline order accepted; higher orders bring nothing to the
/// experiments and the recursion gets slow.
pub const MAX_BSPLINE_ORDER: u32 = 8;

impl Kernel {
    /// Indicator of `[0, 1)`.
    pub fn box_kernel() -> Self {
        Self::from_family(KernelFamily::Box).expect("box kernel is always valid")
    }

    pub fn bspline(order: u32) -> Result<Self> {
        Self::from_family(KernelFamily::BSpline(order))
    }

    pub fn from_family(family: KernelFamily) -> Result<Self> {
        let width = match family {
            KernelFamily::Box => 1,
            KernelFamily::BSpline(m) if (1..=MAX_BSPLINE_ORDER).contains(&m) => m,
            KernelFamily::BSpline(m) => {
                return Err(Error::param(format!(
                    "B-spline order must be in 1..={MAX_BSPLINE_ORDER}, got {m}"
                )))
            }
        };
        let support_radius = f64::from(width);
        let sup_bound = match family {
            KernelFamily::Box => 1.0,
            // Symmetric and unimodal about the centre of its support.
            KernelFamily::BSpline(m) => cardinal_bspline(m, f64::from(m) / 2.0),
        };
        Ok(Self {
            family,
            scale: 1.0,
            support_radius,
            // Every cardinal B-spline is nonnegative with unit integral.
            l1_norm: 1.0,
            sup_bound,
            decay: default_decay(sup_bound, support_radius),
        })
    }

    /// `factor · ξ`. Only useful for exercising the condition checkers; a
    /// scaled kernel no longer sums to one.
    pub fn scaled(mut self, factor: f64) -> Self {
        self.scale *= factor;
        self.l1_norm *= factor.abs();
        self.sup_bound *= factor.abs();
        self.decay = default_decay(self.sup_bound, self.support_radius);
        self
    }

    pub fn with_decay(mut self, l: f64, delta: f64) -> Result<Self> {
        if !(l > 0.0 && delta > 0.0 && l.is_finite() && delta.is_finite()) {
            return Err(Error::param(format!(
                "decay bound needs L > 0 and δ > 0, got ({l}, {delta})"
            )));
        }
        self.decay = DecayBound { l, delta };
        Ok(self)
    }

    pub fn family(&self) -> KernelFamily {
        self.family
    }

    pub fn support_radius(&self) -> f64 {
        self.support_radius
    }

    /// Support interval `[lo, hi)`.
    pub fn support(&self) -> (f64, f64) {
        (0.0, self.support_radius)
    }

    pub fn l1_norm(&self) -> f64 {
        self.l1_norm
    }

    /// `sup |ξ|`.
    pub fn sup_bound(&self) -> f64 {
        self.sup_bound
    }

    pub fn decay_bound(&self) -> DecayBound {
        self.decay
    }

    /// Number of cells to the left of the domain whose kernel translates still
    /// reach into it.
    pub fn cell_padding(&self) -> i64 {
        self.support_radius.ceil() as i64 - 1
    }

    #[inline]
    pub fn evaluate(&self, x: f64) -> f64 {
        let v = match self.family {
            KernelFamily::Box => {
                if (0.0..1.0).contains(&x) {
                    1.0
                } else {
                    0.0
                }
            }
            KernelFamily::BSpline(m) => cardinal_bspline(m, x),
        };
        self.scale * v
    }
}

impl Default for Kernel {
    fn default() -> Self {
        Self::box_kernel()
    }
}

impl FromStr for Kernel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "box" => Ok(Self::box_kernel()),
            _ => match s.strip_prefix("bspline").map(str::parse::<u32>) {
                Some(Ok(m)) => Self::bspline(m),
                _ => Err(Error::param(format!(
                    "unknown kernel '{s}' (expected box, bspline2, bspline3)"
                ))),
            },
        }
    }
}

impl fmt::Display for Kernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            KernelFamily::Box => write!(f, "box")?,
            KernelFamily::BSpline(m) => write!(f, "bspline{m}")?,
        }
        if self.scale != 1.0 {
            write!(f, "*{}", self.scale)?;
        }
        Ok(())
    }
}

fn default_decay(sup: f64, radius: f64) -> DecayBound {
    // δ = 1 and L chosen so the bound already holds at the edge of the support.
    DecayBound {
        l: sup.max(f64::MIN_POSITIVE) * (1.0 + radius).powi(2),
        delta: 1.0,
    }
}

/// Cardinal B-spline of order `m` on `[0, m)`, via the Cox–de Boor recursion
/// `M_m(x) = (x M_{m-1}(x) + (m - x) M_{m-1}(x - 1)) / (m - 1)`.
fn cardinal_bspline(m: u32, x: f64) -> f64 {
    if !(0.0..f64::from(m)).contains(&x) {
        return 0.0;
    }
    if m == 1 {
        return 1.0;
    }
    let mf = f64::from(m);
    (x * cardinal_bspline(m - 1, x) + (mf - x) * cardinal_bspline(m - 1, x - 1.0)) / (mf - 1.0)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PartitionReport {
    pub max_deviation: f64,
    pub pass: bool,
}

/// Largest deviation of `Σ_k ξ(x − k)` from one over `sample_points`.
pub fn check_partition_of_unity(kernel: &Kernel, sample_points: &[f64], tol: f64) -> PartitionReport {
    let reach = kernel.support_radius() + 1.0;
    let max_deviation = sample_points
        .iter()
        .map(|&x| {
            let lo = (x - reach).ceil() as i64;
            let hi = (x + reach).floor() as i64;
            let sum: f64 = (lo..=hi).map(|k| kernel.evaluate(x - k as f64)).sum();
            (sum - 1.0).abs()
        })
        .fold(0.0_f64, f64::max);
    PartitionReport {
        max_deviation,
        pass: max_deviation <= tol,
    }
}

/// True iff `|ξ(x)| ≤ L (1 + |x|)^{-1-δ}` at every probe point.
pub fn check_decay(kernel: &Kernel, probe_points: &[f64]) -> bool {
    let DecayBound { l, delta } = kernel.decay_bound();
    probe_points
        .iter()
        .all(|&x| kernel.evaluate(x).abs() <= l * (1.0 + x.abs()).powf(-1.0 - delta))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn box_values() {
        let k = Kernel::box_kernel();
        assert_eq!(k.evaluate(0.5), 1.0);
        assert_eq!(k.evaluate(0.0), 1.0);
        assert_eq!(k.evaluate(1.0), 0.0);
        assert_eq!(k.evaluate(-1e-300), 0.0);
        assert_eq!(k.l1_norm(), 1.0);
    }

    #[test]
    fn bspline2_is_hat() {
        let k = Kernel::bspline(2).unwrap();
        assert_eq!(k.evaluate(0.0), 0.0);
        assert!((k.evaluate(1.0) - 1.0).abs() < 1e-15);
        assert!((k.evaluate(0.25) - 0.25).abs() < 1e-15);
        assert!((k.evaluate(1.5) - 0.5).abs() < 1e-15);
        assert_eq!(k.evaluate(2.0), 0.0);
        assert!((k.sup_bound() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn bspline3_peak() {
        let k = Kernel::bspline(3).unwrap();
        assert!((k.sup_bound() - 0.75).abs() < 1e-15);
    }

    #[test]
    fn partition_of_unity_box() {
        let r = check_partition_of_unity(&Kernel::box_kernel(), &[0.0, 0.3, 0.99], 1e-12);
        assert_eq!(r.max_deviation, 0.0);
        assert!(r.pass);
    }

    #[test]
    fn partition_of_unity_scaled_fails() {
        let r = check_partition_of_unity(&Kernel::box_kernel().scaled(2.0), &[0.0, 0.3, 0.99], 1e-12);
        assert_eq!(r.max_deviation, 1.0);
        assert!(!r.pass);
    }

    #[test]
    fn decay_checks() {
        let k = Kernel::box_kernel().with_decay(4.0, 1.0).unwrap();
        assert!(check_decay(&k, &[0.0, 0.5, 2.0]));
        let k = Kernel::box_kernel().with_decay(0.1, 1.0).unwrap();
        assert!(!check_decay(&k, &[0.5]));
        assert!(check_decay(&k, &[-4.0, 7.5]));
        assert!(Kernel::box_kernel().with_decay(0.0, 1.0).is_err());
    }

    #[test]
    fn default_decay_holds_everywhere() {
        let probes: Vec<f64> = (-400..400).map(|i| i as f64 * 0.0125).collect();
        for name in ["box", "bspline2", "bspline3"] {
            let k: Kernel = name.parse().unwrap();
            assert!(check_decay(&k, &probes), "{name}");
        }
    }

    #[test]
    fn parse_names() {
        assert_eq!("bspline3".parse::<Kernel>().unwrap().family(), KernelFamily::BSpline(3));
        assert!("sinc".parse::<Kernel>().is_err());
        assert!("bspline0".parse::<Kernel>().is_err());
        assert_eq!(Kernel::bspline(2).unwrap().to_string(), "bspline2");
    }

    #[test]
    fn padding() {
        assert_eq!(Kernel::box_kernel().cell_padding(), 0);
        assert_eq!(Kernel::bspline(3).unwrap().cell_padding(), 2);
    }
}
