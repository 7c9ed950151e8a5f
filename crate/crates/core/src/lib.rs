//! Exact arithmetic in skew PBW extensions over finite rings, and deciders for
//! the Armendariz and Baer families of module properties.
//!
//! The crate is layered bottom-up:
//!
//! - [`finring`]: finite unital rings by Cayley tables and their structure maps;
//! - [`monomial`]: multi-indices and monomial orders;
//! - [`skewpbw`]: presentations, normal forms and multiplication in the extension;
//! - [`polymodule`]: finite right modules and the polynomial module over them;
//! - [`annihilator`]: annihilator ideals and idempotent generation;
//! - [`search`]: exhaustive kernels over bounded-degree coefficient boxes;
//! - [`properties`]: property deciders and the implication suite.

pub mod annihilator;
pub mod finring;
pub mod monomial;
pub mod polymodule;
pub mod properties;
pub mod search;
pub mod skewpbw;

pub use annihilator::{IdempotentGen, RightIdeal};
pub use finring::{Elem, ElemSet, FiniteRing, MapMonoid, RingMap, RingTables};
pub use monomial::{MonomialOrder, MultiIndex, OrderKind};
pub use polymodule::{ModulePoly, PolyModule, RightModule, Submodule};
pub use properties::{PropertyVerdict, TheoremReport, TheoremStatus, Verdict, Witness};
pub use skewpbw::{GenWord, QuadRelation, SkewPbw, SkewPoly, Token};

/// Size caps shared by the validators and the exhaustive deciders.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest ring accepted by the validator (never above 64).
    pub max_ring_order: usize,
    /// Rings above this size validate with a warning.
    pub warn_ring_order: usize,
    /// Largest module for which the submodule lattice is enumerated.
    pub max_submodule_order: usize,
    /// Candidate budget for the bounded polynomial deciders.
    pub max_space: u128,
    /// Candidate budget for bounded annihilators in the extension.
    pub ann_max_space: u128,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_ring_order: 64,
            warn_ring_order: 16,
            max_submodule_order: 16,
            max_space: 10_000_000,
            ann_max_space: 1_000_000,
        }
    }
}
