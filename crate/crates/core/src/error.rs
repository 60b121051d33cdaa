//! Error type shared by all modules.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Vector length does not match the geometry or grid it is paired with.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// An input contained NaN or infinity where finite values are required.
    #[error("non-finite input: {0}")]
    NonFinite(String),

    /// A configuration value violates its invariant.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The window coefficients are identically zero and cannot be
    /// mean-normalized (happens only for 2-sample axes of the Hann window).
    #[error("degenerate window: all coefficients are zero for {n_freq} x {n_angle} samples")]
    DegenerateWindow { n_freq: usize, n_angle: usize },

    /// No grid point lies within the gate radius.
    #[error("empty gate: no grid point within {radius_m} m of ({x_m}, {y_m})")]
    EmptyGate { x_m: f64, y_m: f64, radius_m: f64 },

    /// A solver failure inside an ISR iteration, tagged with the 1-based
    /// iteration index.
    #[error("isr iteration {iteration}: {source}")]
    IsrIteration {
        iteration: usize,
        #[source]
        source: Box<Error>,
    },

    /// Malformed CSV content; `line` is 1-based.
    #[error("{path}:{line}: {message}")]
    Csv {
        path: String,
        line: usize,
        message: String,
    },

    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}
