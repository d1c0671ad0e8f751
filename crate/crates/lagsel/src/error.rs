//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by any operation in this crate.
#[derive(Debug, Error)]
pub enum Error {
    /// Input violates a basic precondition (non-finite values, length mismatch).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Not enough observations for the requested operation.
    #[error("insufficient data: {0}")]
    InsufficientData(String),

    /// The response is constant, so the dependence denominator is zero.
    #[error("degenerate response: constant values make the rank denominator zero")]
    DegenerateResponse,

    /// The response is a sample-level function of the conditioning set;
    /// the conditional denominator is zero.
    #[error("degenerate conditioning: response is fully determined by the conditioning variables")]
    DegenerateConditioning,

    /// A series with zero variance cannot be autocorrelated.
    #[error("degenerate series: zero variance")]
    DegenerateSeries,

    /// The Durbin-Levinson recursion lost all prediction-error variance.
    #[error("numerically singular: prediction-error variance below 1e-12 at order {order}")]
    NumericallySingular { order: usize },

    /// A simulated value exceeded the overflow guard.
    #[error("simulation diverged: |value| > 1e12 at step {step}")]
    Diverged { step: usize },

    /// A named CSV column is not present in the header.
    #[error("missing column: {0:?} not found in header")]
    MissingColumn(String),

    /// A CSV cell failed to parse; `line` is 1-based counting the header.
    #[error("parse error at line {line}: {message}")]
    ParseError { line: usize, message: String },

    /// Fewer than two parseable rows.
    #[error("too short: {0}")]
    TooShort(String),

    /// A bundled dataset does not match its manifest entry.
    #[error("corrupt dataset: {0}")]
    CorruptDataset(String),

    /// Scenario or configuration file problem.
    #[error("invalid scenario: {0}")]
    InvalidScenario(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
