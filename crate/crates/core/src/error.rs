use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-finite derivative at t = {t}")]
    NonFinite { t: f64 },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("diffusion number {number:.6} exceeds the FTCS limit 0.5")]
    DiffusionUnstable { number: f64 },

    #[error("CFL number {cfl:.6} exceeds 1")]
    CflViolation { cfl: f64 },

    #[error("no sign change on [{lo}, {hi}]: f(lo) = {f_lo:e}, f(hi) = {f_hi:e}")]
    NoSignChange { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },

    #[error("singular matrix: pivot {index} below tolerance")]
    Singular { index: usize },

    #[error("no admissible steady state: {0}")]
    Regime(String),

    #[error("defective eigenbasis: {0}")]
    Defective(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
