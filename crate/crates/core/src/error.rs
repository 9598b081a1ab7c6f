use thiserror::Error;

use crate::arith::RationalPoint;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix has determinant {det}, expected 1")]
    NotUnimodular { det: String },

    #[error("quadratic numbers over incompatible radicands {left} and {right}")]
    IncompatibleRadicands { left: String, right: String },

    #[error("zero vector has no projective class")]
    ZeroVector,

    #[error("element is not hyperbolic (|trace| = {trace} <= 2)")]
    NotHyperbolic { trace: String },

    #[error("ball budget exceeded: {limit} elements; largest fully explored power {explored}")]
    BallBudgetExceeded { limit: usize, explored: usize },

    #[error("word length {requested} exceeds the cap {cap}")]
    WordCapExceeded { requested: usize, cap: usize },

    #[error("no element with spectral radius > 2·‖θ(S)‖ in S^k for k <= {max_power} (group may be virtually solvable)")]
    HyperbolicNotFound { max_power: usize },

    #[error("global fixed point {point} detected: every generator fixes it")]
    GlobalFixedPoint { point: RationalPoint },

    #[error("no element in general position within S^{max_power}")]
    GeneralPositionNotFound { max_power: usize },

    #[error("separation degenerate: every candidate configuration has a zero distance")]
    DegenerateSeparation,

    #[error("eta = {eta} outside (0, 1/1000)")]
    EtaOutOfRange { eta: String },

    #[error("no admissible power ell <= {max_ell} passes every check")]
    PowerNotFound { max_ell: u64 },

    #[error("comparison '{what}' still indeterminate after {rounds} refinement rounds")]
    Indeterminate { what: String, rounds: u32 },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("group order {order} exceeds the closure budget {limit}")]
    ClosureBudgetExceeded { order: u64, limit: u64 },

    #[error("eigen-iteration did not converge in {iterations} steps (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("certificate format version {found}, expected {expected}")]
    VersionMismatch { found: u32, expected: u32 },

    #[error("certificate check '{name}' failed: {reason}")]
    CheckFailed { name: String, reason: String },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
