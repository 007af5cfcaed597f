//! Sampling Kantorovich operators for 1D signals and grayscale images.
//!
//! The classical operator replaces point samples of `f` by local means
//! `n ∫_{[k/n,(k+1)/n)} f` and recombines them with a kernel,
//! `S_n f(x) = Σ_k mean_k · ξ(n x − k)`. The probabilistic variant applies the
//! same operator to a noise-perturbed input and is studied through seeded,
//! reproducible Monte Carlo estimates of error functionals and image metrics.

pub mod error;
pub mod experiments;
pub mod image;
pub mod io;
pub mod kernel;
pub mod metrics;
mod parallel;
pub mod psk;
pub mod quadrature;
pub mod reference;
pub mod rng;
pub mod sk;
pub mod synthetic;

pub use error::{Error, Result};
pub use image::{GrayImage, WindowSpec};
pub use kernel::{Kernel, KernelFamily};
pub use metrics::{MetricsReport, Psnr, SsimConfig};
pub use psk::{MonteCarloEstimate, NoiseModel, NoisePlacement, NoiseSchedule, TrialContext};
pub use quadrature::{Quadrature, Scheme};
pub use sk::{CellMeans, Domain1D, ErrorSummary, GridFunction1D};
