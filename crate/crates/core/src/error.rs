use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("non-finite integrand value {value} at x = {x}")]
    NonFiniteIntegrand { x: f64, value: f64 },

    #[error("invalid integration interval [{a}, {b}]")]
    InvalidInterval { a: f64, b: f64 },

    #[error("grid point x = {x} needs cell {k}, outside cell cover [{k_min}, {k_max}]")]
    GridOutsideCellCover { x: f64, k: i64, k_min: i64, k_max: i64 },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("image {height}x{width} is smaller than the {window}x{window} SSIM window")]
    ImageSmallerThanWindow { height: usize, width: usize, window: usize },

    #[error("degenerate trial: {0}")]
    DegenerateTrial(String),

    #[error("PGM parse error at byte {offset}: {message}")]
    Pgm { offset: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}
