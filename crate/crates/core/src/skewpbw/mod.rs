//! Skew PBW extensions `A = σ(R)⟨x₁,…,xₙ⟩` of a finite ring.
//!
//! Elements are kept in the left `R`-basis of standard monomials
//! `x₁^{α₁}⋯xₙ^{αₙ}`. Products are computed by right-multiplying a normal form
//! by one generator or scalar at a time; see [`SkewPbw::mono_coeff`] and
//! [`SkewPbw::mono_var`] for the two primitive rewrites.

mod consistency;
mod poly;
mod presentation;

pub use consistency::{check_consistency, random_poly, Certificate, ConsistencyOutcome, ConsistencyWitness, OverlapKind};
pub use poly::{CoeffLayer, GenWord, SkewPoly, Terms, Token};
pub use presentation::{Claims, PresentationError, QuadRelation, RawPresentation, SkewPbw, DEFAULT_CONSISTENCY_BOUND, DEFAULT_SEED};

pub(crate) use poly::{add_terms as poly_add_terms, terms_serde};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("polynomial does not belong to this extension: {0}")]
    PresentationMismatch(String),
}
