//! Module properties over `M` and bounded properties over `M⟨X⟩`, plus the
//! implication suite that cross-checks them.

mod deciders;
mod theorems;
mod verdict;

pub use deciders::{
    idempotent_stability, is_abelian, is_baer, is_delta_compatible, is_linearly_skew_armendariz, is_pp, is_pq_baer,
    is_quasi_baer, is_reduced, is_sigma_compatible, is_skew_armendariz_bounded, is_skew_quasi_armendariz_bounded,
    poly_baer_bounded, poly_pp_bounded, poly_pq_baer_bounded, poly_quasi_baer_bounded, torsion_witness,
};
pub use theorems::{reduced_compatible_equivalence, theorem_suite, Hypothesis, TheoremReport, TheoremStatus};
pub use verdict::{format_monomial, AnnScope, PolyAnnMode, PropertyVerdict, Verdict, Witness};

use thiserror::Error;

use crate::polymodule::PolyModule;
use crate::search::SearchError;
use crate::Limits;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DeciderError {
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error("{0}")]
    SubmoduleCap(String),
    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(String),
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("unknown property '{0}'")]
    UnknownProperty(String),
}

/// Names accepted by [`check_property`].
pub const PROPERTY_NAMES: &[&str] = &[
    "reduced",
    "sigma-compatible",
    "delta-compatible",
    "skew-armendariz",
    "linearly-skew-armendariz",
    "skew-quasi-armendariz",
    "pp",
    "pq-baer",
    "quasi-baer",
    "baer",
    "abelian",
    "idempotent-stability",
    "poly-pp",
    "poly-pq-baer",
    "poly-baer",
    "poly-quasi-baer",
];

/// Runs the decider registered under `name`; `d` is used by the bounded ones.
pub fn check_property(pm: &PolyModule, name: &str, d: u32, limits: &Limits) -> Result<PropertyVerdict, DeciderError> {
    let (ring, module) = (pm.ring(), &pm.module);
    Ok(match name {
        "reduced" => is_reduced(module),
        "sigma-compatible" => is_sigma_compatible(pm),
        "delta-compatible" => is_delta_compatible(pm),
        "skew-armendariz" => is_skew_armendariz_bounded(pm, d, limits)?,
        "linearly-skew-armendariz" => is_linearly_skew_armendariz(pm, limits)?,
        "skew-quasi-armendariz" => is_skew_quasi_armendariz_bounded(pm, d, limits)?,
        "pp" => is_pp(ring, module),
        "pq-baer" => is_pq_baer(ring, module),
        "quasi-baer" => is_quasi_baer(ring, module, limits)?,
        "baer" => is_baer(ring, module),
        "abelian" => is_abelian(ring, module),
        "idempotent-stability" => idempotent_stability(&pm.ext),
        "poly-pp" => poly_pp_bounded(pm, d, limits)?,
        "poly-pq-baer" => poly_pq_baer_bounded(pm, d, limits)?,
        "poly-baer" => poly_baer_bounded(pm, d, limits)?,
        "poly-quasi-baer" => poly_quasi_baer_bounded(pm, d, limits)?,
        other => return Err(DeciderError::UnknownProperty(other.to_string())),
    })
}
