//! Fixed instances and inputs for the benchmarks.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use spbw_core::finring::swap_table;
use spbw_core::skewpbw::{random_poly, RawPresentation};
use spbw_core::{FiniteRing, PolyModule, QuadRelation, SkewPbw, SkewPoly};

pub fn commutative(ring: FiniteRing, n: usize) -> SkewPbw {
    SkewPbw::validate(RawPresentation::commutative(ring, n)).expect("commutative presentations validate")
}

pub fn quantum_plane() -> SkewPbw {
    let z5 = FiniteRing::integers_mod(5).unwrap();
    let mut raw = RawPresentation::commutative(z5.clone(), 2);
    raw.relations = vec![(0, 1, QuadRelation::commuting(&z5, 2, 2))];
    SkewPbw::validate(raw).unwrap()
}

pub fn swap() -> PolyModule {
    let mut raw = RawPresentation::commutative(FiniteRing::product_of_cyclic(2, 2).unwrap(), 1);
    raw.sigmas = vec![swap_table(2)];
    PolyModule::regular(SkewPbw::validate(raw).unwrap())
}

pub fn z3_two_variables() -> PolyModule {
    PolyModule::regular(commutative(FiniteRing::integers_mod(3).unwrap(), 2))
}

/// `count` seeded pairs of random polynomials of degree at most `deg`.
pub fn pairs(ext: &SkewPbw, count: usize, deg: u32, terms: usize) -> Vec<(SkewPoly, SkewPoly)> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    (0..count).map(|_| (random_poly(ext, &mut rng, deg, terms), random_poly(ext, &mut rng, deg, terms))).collect()
}
