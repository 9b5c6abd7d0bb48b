//! Exact-computation library for the common theory of modules over canonical
//! algebras of tubular type: presentations of finite-dimensional algebras and
//! their modules, the pp-formula calculus with elementary duality, Euler-form
//! and slope arithmetic on the Grothendieck group, an integer-linear kernel
//! for indecomposable dimension-vector queries, the rational-slope Ziegler
//! containment algorithm, and the end-to-end inclusion decider.
//!
//! All arithmetic is exact over arbitrary-precision rationals. Every value is
//! immutable and every operation is a pure function, so the whole crate is
//! safe to use concurrently without synchronization.

pub mod algebra;
pub mod json;
pub mod decide;
pub mod onepoint;
pub mod ziegler;
pub mod profile;
pub mod presburger;
pub mod fixtures;
pub mod pp;
pub mod decomp;
pub mod euler;
pub mod linalg;
pub mod module;

use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("arity or side mismatch: {0}")]
    ArityMismatch(String),
    #[error("modules belong to different algebras")]
    AlgebraMismatch,
    #[error("invalid canonical parameters: {0}")]
    InvalidParams(String),
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("decomposition is not absolute: {0}")]
    NonAbsoluteDecomposition(String),
    #[error("quadratic form is not positive semidefinite of radical rank 2")]
    NotTubular,
    #[error("invalid interval: {0}")]
    InvalidWindow(String),
    #[error("tube family model mismatch: {0}")]
    ModelMismatch(String),
    #[error("unsupported description: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("missing fixture: {0}")]
    MissingFixture(String),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
