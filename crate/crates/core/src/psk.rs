//! The probabilistic sampling Kantorovich operator: the classical operator
//! applied to a Gaussian-perturbed input, plus seeded Monte Carlo estimates
//! of its expected error.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::kernel::Kernel;
use crate::parallel::map_indexed;
use crate::quadrature::Quadrature;
use crate::rng::standard_normal;
use crate::sk::{
    apply_sk, compute_cell_means_for_kernel, error_summary, pointwise_error, CellMeans, Domain1D, ErrorSummary,
    GridFunction1D, StepSignal,
};

/// Where the noise enters.
///
/// `PerCell` adds one draw to each Kantorovich mean. `PerSample` perturbs the
/// input itself: pixels for images and, in 1D, a white-noise step process with
/// `slots` equal sub-intervals per cell, whose cell mean is the average of the
/// slot draws.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NoisePlacement {
    PerCell,
    PerSample,
}

impl FromStr for NoisePlacement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cell" => Ok(Self::PerCell),
            "sample" => Ok(Self::PerSample),
            _ => Err(Error::param(format!(
                "unknown noise placement '{s}' (expected cell or sample)"
            ))),
        }
    }
}

impl fmt::Display for NoisePlacement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::PerCell => "cell",
            Self::PerSample => "sample",
        })
    }
}

/// Zero-mean Gaussian noise `N(0, std²)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseModel {
    std: f64,
    placement: NoisePlacement,
    master_seed: u64,
}

impl NoiseModel {
    pub fn new(std: f64, placement: NoisePlacement, master_seed: u64) -> Result<Self> {
        if !(std >= 0.0 && std.is_finite()) {
            return Err(Error::param(format!("noise std must be finite and >= 0, got {std}")));
        }
        Ok(Self {
            std,
            placement,
            master_seed,
        })
    }

    pub fn std(&self) -> f64 {
        self.std
    }

    pub fn mean(&self) -> f64 {
        0.0
    }

    pub fn placement(&self) -> NoisePlacement {
        self.placement
    }

    pub fn master_seed(&self) -> u64 {
        self.master_seed
    }

    pub fn with_std(self, std: f64) -> Result<Self> {
        Self::new(std, self.placement, self.master_seed)
    }

    pub fn is_silent(&self) -> bool {
        self.std == 0.0
    }
}

/// How the noise level changes with the sampling density.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NoiseSchedule {
    Fixed,
    /// `τ_n = τ₀ / √n`.
    InvSqrtN,
}

impl NoiseSchedule {
    pub fn std_at(&self, tau0: f64, n: u32) -> f64 {
        match self {
            Self::Fixed => tau0,
            Self::InvSqrtN => tau0 / f64::from(n).sqrt(),
        }
    }
}

impl FromStr for NoiseSchedule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fixed" => Ok(Self::Fixed),
            "inv-sqrt-n" => Ok(Self::InvSqrtN),
            _ => Err(Error::param(format!(
                "unknown noise schedule '{s}' (expected fixed or inv-sqrt-n)"
            ))),
        }
    }
}

impl fmt::Display for NoiseSchedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Fixed => "fixed",
            Self::InvSqrtN => "inv-sqrt-n",
        })
    }
}

/// One realization of the noise. Draws depend only on
/// `(master_seed, trial_index, index)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrialContext {
    pub trial_index: u64,
}

impl TrialContext {
    pub fn new(trial_index: u64) -> Self {
        Self { trial_index }
    }

    #[inline]
    pub fn draw(&self, noise: &NoiseModel, index: u64) -> f64 {
        noise.std * standard_normal(noise.master_seed, self.trial_index, index)
    }
}

/// Noise stream index for cell `k` (cells may have negative indices).
#[inline]
pub fn cell_stream_index(k: i64) -> u64 {
    k as u64
}

/// Noise stream index for sub-interval `slot` of cell `k`.
#[inline]
pub fn slot_stream_index(k: i64, slot: usize, slots: usize) -> u64 {
    (k.wrapping_mul(slots as i64).wrapping_add(slot as i64)) as u64
}

/// Adds one independent draw to every cell mean.
pub fn perturb_cell_means(means: &CellMeans, noise: &NoiseModel, trial: TrialContext) -> Result<CellMeans> {
    if noise.placement != NoisePlacement::PerCell {
        return Err(Error::param("perturb_cell_means needs per-cell noise placement"));
    }
    Ok(perturb_means(means, noise, trial, 1))
}

/// Perturbs cell means according to the model's placement. `slots` is the
/// number of noise sub-intervals per cell for `PerSample`.
pub fn perturb_means(means: &CellMeans, noise: &NoiseModel, trial: TrialContext, slots: usize) -> CellMeans {
    if noise.is_silent() {
        return means.clone();
    }
    let mut out = means.clone();
    let k_min = means.k_min();
    for (i, v) in out.values_mut().iter_mut().enumerate() {
        let k = k_min + i as i64;
        *v += match noise.placement {
            NoisePlacement::PerCell => trial.draw(noise, cell_stream_index(k)),
            NoisePlacement::PerSample => {
                let slots = slots.max(1);
                let sum: f64 = (0..slots)
                    .map(|p| trial.draw(noise, slot_stream_index(k, p, slots)))
                    .sum();
                sum / slots as f64
            }
        };
    }
    out
}

/// The noise realization as a function of `x`: a step function on cells
/// (`PerCell`) or on cell sub-intervals (`PerSample`), covering cells
/// `k_min..=k_max`.
pub fn noise_signal(
    noise: &NoiseModel,
    trial: TrialContext,
    n: u32,
    k_min: i64,
    k_max: i64,
    slots: usize,
) -> Result<StepSignal> {
    let nf = f64::from(n);
    let slots = match noise.placement {
        NoisePlacement::PerCell => 1,
        NoisePlacement::PerSample => slots.max(1),
    };
    let mut values = Vec::with_capacity(((k_max - k_min + 1) as usize) * slots);
    for k in k_min..=k_max {
        for p in 0..slots {
            let idx = match noise.placement {
                NoisePlacement::PerCell => cell_stream_index(k),
                NoisePlacement::PerSample => slot_stream_index(k, p, slots),
            };
            values.push(if noise.is_silent() { 0.0 } else { trial.draw(noise, idx) });
        }
    }
    StepSignal::new(k_min as f64 / nf, 1.0 / (nf * slots as f64), values)
}

/// `P_n f = S_n(f + ε)` on the domain grid for one noise realization.
pub fn apply_psk<F: Fn(f64) -> f64>(
    f: F,
    domain: &Domain1D,
    n: u32,
    kernel: &Kernel,
    noise: &NoiseModel,
    trial: TrialContext,
    q: Quadrature,
) -> Result<GridFunction1D> {
    let means = compute_cell_means_for_kernel(f, domain, n, kernel, q)?;
    let noisy = perturb_means(&means, noise, trial, q.panels_per_cell());
    apply_sk(&noisy, kernel, domain)
}

/// Mean and standard error of a per-trial quantity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonteCarloEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub trials: usize,
}

impl MonteCarloEstimate {
    /// Needs at least two finite values. Accumulation runs in slice order.
    pub fn from_samples(values: &[f64]) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::param(format!("need at least 2 trials, got {}", values.len())));
        }
        if let Some(v) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::DegenerateTrial(format!("non-finite per-trial value {v}")));
        }
        let t = values.len();
        if values.iter().all(|&v| v == values[0]) {
            return Ok(Self {
                mean: values[0],
                std_error: 0.0,
                trials: t,
            });
        }
        let mean = values.iter().sum::<f64>() / t as f64;
        let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (t - 1) as f64;
        Ok(Self {
            mean,
            std_error: (var / t as f64).sqrt(),
            trials: t,
        })
    }
}

/// Which error functional [`expected_error`] averages.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// `∫_D |P_n f − f|`.
    L1Total,
    /// `(1/|D|) ∫_D |P_n f − f|`.
    MeanL1,
    /// `(1/N) Σ |P_n f(x_i) − f(x_i)|`.
    Discrete,
}

/// Error summaries of `P_n f − f` for trials `0..trials`, in trial order.
pub fn trial_error_summaries<F: Fn(f64) -> f64 + Sync>(
    f: F,
    domain: &Domain1D,
    n: u32,
    kernel: &Kernel,
    noise: &NoiseModel,
    trials: usize,
    q: Quadrature,
) -> Result<Vec<ErrorSummary>> {
    let means = compute_cell_means_for_kernel(&f, domain, n, kernel, q)?;
    let exact = GridFunction1D::sample(&f, *domain)?;
    map_indexed(trials as u64, |t| -> Result<ErrorSummary> {
        let noisy = perturb_means(&means, noise, TrialContext::new(t), q.panels_per_cell());
        let approx = apply_sk(&noisy, kernel, domain)?;
        Ok(error_summary(&pointwise_error(&approx, &exact)?))
    })
    .into_iter()
    .collect()
}

impl ErrorKind {
    pub fn pick(&self, s: &ErrorSummary) -> f64 {
        match self {
            ErrorKind::L1Total => s.l1_total,
            ErrorKind::MeanL1 => s.mean_l1,
            ErrorKind::Discrete => s.discrete_mean,
        }
    }
}

/// Monte Carlo estimate of `E[err(P_n f − f)]` over trials `0..trials`.
#[allow(clippy::too_many_arguments)]
pub fn expected_error<F: Fn(f64) -> f64 + Sync>(
    f: F,
    domain: &Domain1D,
    n: u32,
    kernel: &Kernel,
    noise: &NoiseModel,
    trials: usize,
    kind: ErrorKind,
    q: Quadrature,
) -> Result<MonteCarloEstimate> {
    if trials < 2 {
        return Err(Error::param(format!("need at least 2 trials, got {trials}")));
    }
    let per_trial: Vec<f64> = trial_error_summaries(f, domain, n, kernel, noise, trials, q)?
        .iter()
        .map(|s| kind.pick(s))
        .collect();
    MonteCarloEstimate::from_samples(&per_trial)
}
