use thiserror::Error;

/// Errors raised by model construction, simulation, forecasting, and analysis.
#[derive(Debug, Error)]
pub enum Error {
    /// A model or configuration parameter failed validation.
    #[error("invalid parameter `{field}`: {reason}")]
    InvalidParameter { field: &'static str, reason: String },

    /// An argument lies outside an operation's domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// The relative volatility gamma = mu/beta is undefined because beta = 0.
    /// In that case every forecast coincides with the last observed return p_T.
    #[error("relative volatility undefined (beta = 0): all forecasts coincide at p_T")]
    UndefinedGamma,

    /// A batch of size zero was requested.
    #[error("empty batch: n must be at least 1")]
    EmptyBatch,

    /// Monte Carlo sample size below the supported minimum.
    #[error("insufficient sample: n = {n} is below the minimum of {min}")]
    InsufficientSample { n: u64, min: u64 },

    /// A sweep table with no rows was passed to an emitter.
    #[error("empty sweep table")]
    EmptyTable,

    /// A config file or CSV input could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),

    /// Reading or writing a file failed.
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
