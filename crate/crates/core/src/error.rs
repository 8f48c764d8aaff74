//! Error types shared across the crate.

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum NovikovError {
    #[error("not a unit: {detail}")]
    NotAUnit { detail: String },
    #[error("truncation too coarse: {detail}")]
    TruncationTooCoarse { detail: String },
    #[error("not a complex: d∘d ≠ 0 at degree {degree} ({detail})")]
    NotAComplex { degree: i64, detail: String },
    #[error("shape mismatch: {detail}")]
    ShapeMismatch { detail: String },
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum FlowError {
    #[error("d² ≠ 0 witnessed at ({from}, {to})")]
    DSquaredNonzero { from: String, to: String },
    #[error("missing rigid count on record ({from} → {to})")]
    MissingCount { from: String, to: String },
    #[error("invalid split: {detail}")]
    SplitInvalid { detail: String },
    #[error("no homotopy at this truncation: {detail}")]
    NoHomotopyAtTruncation { detail: String },
    #[error("degree mismatch: {detail}")]
    DegreeMismatch { detail: String },
    #[error("valuation not positive: {detail}")]
    ValuationNotPositive { detail: String },
    #[error("negative-valuation entry at ({from}, {to}): {entry}")]
    NegativeValuationEntry { from: String, to: String, entry: String },
    #[error("unknown generator {0}")]
    UnknownGenerator(String),
    #[error(transparent)]
    Novikov(#[from] NovikovError),
    #[error("invalid category: {detail}")]
    InvalidCategory { detail: String },
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum StrataError {
    #[error("invariant violation: {detail}")]
    InvariantViolation { detail: String },
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum PerturbError {
    #[error("incompatible boundary data: {detail}")]
    IncompatibleBoundary { detail: String },
    #[error("subdivision budget exceeded: {detail}")]
    BudgetExceeded { detail: String },
    #[error("section not transverse: {detail}")]
    NotTransverse { detail: String },
    #[error("curve tracking failure: {detail}")]
    CurveTrackingFailure { detail: String },
    #[error("bad group representation: {detail}")]
    BadRepresentation { detail: String },
}
