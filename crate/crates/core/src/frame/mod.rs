//! Finite weighted families in `ℝⁿ` or `ℂⁿ`, their frame operators, and the
//! comparison `A ≍ B` of the norms `x ↦ ‖T x‖` they induce.
//!
//! Every family lives in complex arithmetic; a real family is one whose
//! entries have zero imaginary part.

mod compare;
mod family;
pub mod linalg;
mod operator;
mod spec;
mod witness;

pub use compare::{asymp_compare, Comparison, ComparisonSummary};
pub use family::{complex_vector, is_frame, BesselFamily, Field, FrameBounds, RhoForm};
pub use linalg::{CMatrix, CVector, Tolerances};
pub use operator::{OperatorClass, OperatorMatrix};
pub use spec::{
    check_frame_file, matrix_from_rows, matrix_to_rows, Entry, FamilyReport, FamilySpec, FrameFile, FrameQuery, FrameReport,
    MatrixSpec, OnbReport, OperatorSpec, QueryReport,
};
pub use witness::{
    adjoint_identity_check, conjugation_defect, def_equivalent_with_witness, onb_witness, phase_unitary_act, probe_vectors,
    pseudo_onb_witness, DefSummary, DefVerdict, Deviation,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FrameError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("class violation: {0}")]
    ClassViolation(String),
    #[error("family is not a frame")]
    NotAFrame,
    #[error("operator is not unitary")]
    NotUnitary,
    #[error("phase has modulus {0}")]
    BadPhase(f64),
    #[error("malformed input: {0}")]
    Schema(String),
}

#[cfg(test)]
mod tests;
