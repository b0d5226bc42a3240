//! Proof replay and certificate checking.
//!
//! [`derive_qa5`] and [`prove_no_quantum_symmetry`] emit certificates: lists of
//! equations between polynomials, each justified by a relation instance, a unity
//! expansion, local reduction, adjoints, substitution of earlier steps, or the
//! `ab = aba ⇒ ab = ba` lemma. [`verify_certificate`] re-checks them independently.

mod certificate;
mod produce;
mod sanity;
mod verify;

use thiserror::Error;

use crate::graph::MooreFailure;
use crate::ncalgebra::AlgebraError;

pub use certificate::{
    Certificate, Conclusion, ConclusionKind, Justification, ProofStep, Scope, StepId,
    CERTIFICATE_VERSION,
};
pub use produce::{
    derive_qa5, lemma_com, prove_no_quantum_symmetry, ProofLog, MAX_SUPPORTED_DEGREE,
};
pub use sanity::{sanity_eval, sanity_eval_with, SanityError, SanityReport};
pub use verify::{verify_certificate, Failure, VerificationReport, VerifyError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProofError {
    #[error("ConditionsNotMet: {0}")]
    ConditionsNotMet(MooreFailure),
    #[error("UnsupportedDegree k={k}")]
    UnsupportedDegree { k: usize },
    #[error("step {step}: shape mismatch: {reason}")]
    ShapeMismatch { step: StepId, reason: String },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("internal prover error: {0}")]
    Internal(String),
}
