//! Composite midpoint and Simpson rules for Kantorovich cell means.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheme {
    Midpoint,
    Simpson,
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "midpoint" => Ok(Scheme::Midpoint),
            "simpson" => Ok(Scheme::Simpson),
            _ => Err(Error::param(format!(
                "unknown quadrature '{s}' (expected midpoint or simpson)"
            ))),
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scheme::Midpoint => "midpoint",
            Scheme::Simpson => "simpson",
        })
    }
}

/// A composite rule with a fixed number of panels per integration interval.
/// Each Simpson panel is split in two, so the subdivision is always even.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Quadrature {
    scheme: Scheme,
    panels_per_cell: usize,
}

impl Quadrature {
    pub fn new(scheme: Scheme, panels_per_cell: usize) -> Result<Self> {
        if panels_per_cell == 0 {
            return Err(Error::param("panels_per_cell must be at least 1"));
        }
        Ok(Self {
            scheme,
            panels_per_cell,
        })
    }

    pub fn midpoint(panels: usize) -> Result<Self> {
        Self::new(Scheme::Midpoint, panels)
    }

    pub fn simpson(panels: usize) -> Result<Self> {
        Self::new(Scheme::Simpson, panels)
    }

    pub fn scheme(&self) -> Scheme {
        self.scheme
    }

    pub fn panels_per_cell(&self) -> usize {
        self.panels_per_cell
    }
}

impl Default for Quadrature {
    /// Simpson, 8 panels per cell.
    fn default() -> Self {
        Self {
            scheme: Scheme::Simpson,
            panels_per_cell: 8,
        }
    }
}

#[inline]
fn sample<F: Fn(f64) -> f64>(f: &F, x: f64) -> Result<f64> {
    let v = f(x);
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFiniteIntegrand { x, value: v })
    }
}

pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, q: Quadrature) -> Result<f64> {
    if !a.is_finite() || !b.is_finite() || a >= b {
        return Err(Error::InvalidInterval { a, b });
    }
    let panels = q.panels_per_cell;
    let h = (b - a) / panels as f64;
    match q.scheme {
        Scheme::Midpoint => {
            let mut acc = 0.0;
            for i in 0..panels {
                acc += sample(&f, a + (i as f64 + 0.5) * h)?;
            }
            Ok(acc * h)
        }
        Scheme::Simpson => {
            // 2·panels subintervals of width h/2; weights 1,4,2,4,...,4,1.
            let m = 2 * panels;
            let step = (b - a) / m as f64;
            let mut ends = sample(&f, a)? + sample(&f, b)?;
            let mut odd = 0.0;
            let mut even = 0.0;
            for i in 1..m {
                let v = sample(&f, a + i as f64 * step)?;
                if i % 2 == 1 {
                    odd += v;
                } else {
                    even += v;
                }
            }
            ends += 4.0 * odd + 2.0 * even;
            Ok(ends * step / 3.0)
        }
    }
}

/// `n ∫_{k/n}^{(k+1)/n} f(u) du`, evaluated as the normalized weighted average
/// of the rule's samples taken relative to the first sample, so a constant
/// integrand returns its value bit for bit.
pub fn cell_mean<F: Fn(f64) -> f64>(f: F, k: i64, n: u32, q: Quadrature) -> Result<f64> {
    if n == 0 {
        return Err(Error::param("sampling density n must be at least 1"));
    }
    let nf = f64::from(n);
    let a = k as f64 / nf;
    let b = (k + 1) as f64 / nf;
    let panels = q.panels_per_cell;
    match q.scheme {
        Scheme::Midpoint => {
            let h = (b - a) / panels as f64;
            let anchor = sample(&f, a + 0.5 * h)?;
            let mut acc = 0.0;
            for i in 1..panels {
                acc += sample(&f, a + (i as f64 + 0.5) * h)? - anchor;
            }
            Ok(anchor + acc / panels as f64)
        }
        Scheme::Simpson => {
            let m = 2 * panels;
            let step = (b - a) / m as f64;
            let anchor = sample(&f, a)?;
            let mut acc = sample(&f, b)? - anchor;
            for i in 1..m {
                let w = if i % 2 == 1 { 4.0 } else { 2.0 };
                acc += w * (sample(&f, a + i as f64 * step)? - anchor);
            }
            Ok(anchor + acc / (3 * m) as f64)
        }
    }
}
