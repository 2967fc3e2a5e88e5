//! Exact-arithmetic Lie algebra engine.
//!
//! Finite-dimensional Lie algebras over `Q` are given by structure constants.
//! Everything here is exact: flags, series and BCH products are computed with
//! arbitrary-precision rationals. Floating point only appears in the
//! Guivarc'h quasi-norm, which takes roots of layer norms.

mod algebra;
mod bch;
pub mod format;
mod guivarch;
pub mod random;
pub mod rational;
mod subspace;

pub use algebra::{fixtures, LieAlgebra};
pub use bch::MAX_BCH_STEP;
pub use guivarch::{GuivarchData, LayerNorm};
pub use rational::{RVec, Rational};
pub use subspace::{invert, nullspace, rref, Subspace};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("malformed algebra document: {0}")]
    MalformedSpec(String),
    #[error("Jacobi identity fails on basis triple ({0}, {1}, {2})")]
    JacobiViolation(String, String, String),
    #[error("bracket table is not antisymmetric at ({0}, {1})")]
    AntisymmetryViolation(String, String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("algebra is not nilpotent")]
    NotNilpotent,
    #[error("nilpotency step {0} exceeds the supported BCH order {MAX_BCH_STEP}")]
    StepTooLarge(usize),
    #[error("zero vector where a nonzero one is required")]
    ZeroVector,
}

impl LieError {
    /// Stable machine-readable name.
    pub fn kind(&self) -> &'static str {
        match self {
            LieError::MalformedSpec(_) => "MalformedSpec",
            LieError::JacobiViolation(..) => "JacobiViolation",
            LieError::AntisymmetryViolation(..) => "AntisymmetryViolation",
            LieError::DimensionMismatch { .. } => "DimensionMismatch",
            LieError::NotNilpotent => "NotNilpotent",
            LieError::StepTooLarge(_) => "StepTooLarge",
            LieError::ZeroVector => "ZeroVector",
        }
    }
}
