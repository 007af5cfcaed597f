//! Published reference values and the default experiment parameters they
//! were produced with.

/// `(n, classical L¹ error, probabilistic L¹ error)`.
pub const TABLE1: [(u32, f64, f64); 4] = [
    (5, 0.086, 0.091),
    (15, 0.043, 0.048),
    (25, 0.021, 0.027),
    (35, 0.010, 0.018),
];

/// Relative tolerance band around the classical Table 1 values.
pub const TABLE1_BAND: f64 = 0.35;

/// `(window, PSNR, SSIM, MAE, Var|err|)` of the classical reconstruction of
/// the cameraman image.
pub const TABLE2: [(usize, f64, f64, f64, f64); 3] = [
    (3, 29.45, 0.8590, 0.0174, 0.00083128),
    (7, 25.10, 0.7185, 0.0286, 0.00227373),
    (15, 22.21, 0.6155, 0.0402, 0.00439862),
];

/// `(window, E[PSNR], E[SSIM], E[MAE], Var|err|)` of the noisy reconstruction.
pub const TABLE3: [(usize, f64, f64, f64, f64); 3] = [
    (3, 28.48, 0.8421, 0.0305, 0.000129),
    (7, 28.98, 0.8797, 0.0274, 0.000081),
    (15, 27.86, 0.8446, 0.0283, 0.000047),
];

pub const DOMAIN: (f64, f64) = (-3.0, 3.0);
pub const GRID_POINTS: usize = 1000;
pub const DENSITIES: [u32; 5] = [5, 15, 25, 35, 45];
pub const NOISE_STD: f64 = 0.02;
pub const WINDOWS: [usize; 3] = [3, 7, 15];
pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_TRIALS: usize = 100;
/// Trials for the probabilistic Table 1 column.
pub const TABLE1_TRIALS: usize = 2000;

pub fn table1_classical(n: u32) -> Option<f64> {
    TABLE1.iter().find(|r| r.0 == n).map(|r| r.1)
}

pub fn table1_probabilistic(n: u32) -> Option<f64> {
    TABLE1.iter().find(|r| r.0 == n).map(|r| r.2)
}
