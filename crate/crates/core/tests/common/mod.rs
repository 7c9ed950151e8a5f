#![allow(dead_code)]

use spbw_core::finring::{dual_derivative_table, swap_table};
use spbw_core::skewpbw::RawPresentation;
use spbw_core::{FiniteRing, PolyModule, QuadRelation, RightModule, SkewPbw};

pub fn commutative(ring: FiniteRing, n: usize) -> SkewPbw {
    SkewPbw::validate(RawPresentation::commutative(ring, n)).unwrap()
}

pub fn regular(ring: FiniteRing, n: usize) -> PolyModule {
    PolyModule::regular(commutative(ring, n))
}

/// `x2·x1 = 2·x1·x2` over Z5.
pub fn quantum_plane() -> SkewPbw {
    let z5 = FiniteRing::integers_mod(5).unwrap();
    let mut raw = RawPresentation::commutative(z5.clone(), 2);
    raw.relations = vec![(0, 1, QuadRelation::commuting(&z5, 2, 2))];
    SkewPbw::validate(raw).unwrap()
}

/// Z2[y]/(y^2) with `x·r = r·x + d/dy(r)`.
pub fn weyl() -> SkewPbw {
    let mut raw = RawPresentation::commutative(FiniteRing::dual_numbers(2).unwrap(), 1);
    raw.deltas = vec![dual_derivative_table(2)];
    SkewPbw::validate(raw).unwrap()
}

/// The Weyl-like extension acting on Z2 = R/yR.
pub fn weyl_quotient() -> PolyModule {
    let ext = weyl();
    let q = RightModule::quotient(ext.ring(), &[2]).unwrap();
    PolyModule::new(ext, q, None).unwrap()
}

/// Z2 x Z2 with the coordinate swap as sigma.
pub fn swap() -> PolyModule {
    let mut raw = RawPresentation::commutative(FiniteRing::product_of_cyclic(2, 2).unwrap(), 1);
    raw.sigmas = vec![swap_table(2)];
    PolyModule::regular(SkewPbw::validate(raw).unwrap())
}

pub fn z(n: usize) -> FiniteRing {
    FiniteRing::integers_mod(n).unwrap()
}

/// Small instances used by the exhaustive tests.
pub fn small_corpus() -> Vec<(&'static str, PolyModule)> {
    vec![
        ("z3", regular(z(3), 1)),
        ("z4", regular(z(4), 1)),
        ("z6", regular(z(6), 1)),
        ("z2xz2", regular(FiniteRing::product_of_cyclic(2, 2).unwrap(), 1)),
        ("ut2", regular(FiniteRing::upper_triangular(2, 2).unwrap(), 1)),
        ("swap", swap()),
        ("weyl", PolyModule::regular(weyl())),
        ("weyl-quotient", weyl_quotient()),
    ]
}
