mod common;

use std::collections::BTreeMap;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spbw_core::skewpbw::random_poly;
use spbw_core::{GenWord, MultiIndex, SkewPbw, SkewPoly, Token};

/// Ordinary commutative multiplication over Z/n, written without the engine.
fn oracle_mul(f: &SkewPoly, g: &SkewPoly, n: u64) -> BTreeMap<Vec<u32>, u64> {
    let mut out: BTreeMap<Vec<u32>, u64> = BTreeMap::new();
    for (a, &x) in f.terms() {
        for (b, &y) in g.terms() {
            let e: Vec<u32> = a.0.iter().zip(&b.0).map(|(i, j)| i + j).collect();
            let c = out.entry(e).or_insert(0);
            *c = (*c + x as u64 * y as u64) % n;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

fn as_map(f: &SkewPoly) -> BTreeMap<Vec<u32>, u64> {
    f.terms().iter().map(|(a, &c)| (a.0.clone(), c as u64)).collect()
}

#[test]
fn commutative_presentation_matches_ordinary_multiplication() {
    let ext = common::commutative(common::z(6), 2);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..200 {
        let f = random_poly(&ext, &mut rng, 4, 6);
        let g = random_poly(&ext, &mut rng, 4, 6);
        assert_eq!(as_map(&ext.mul(&f, &g)), oracle_mul(&f, &g, 6));
    }
}

#[test]
fn weyl_commutator() {
    let ext = common::weyl();
    let y = ext.constant(2);
    let x = ext.var(0);
    // x·y = y·x + 1
    let lhs = ext.mul(&x, &y);
    let rhs = ext.add(&ext.mul(&y, &x), &ext.one());
    assert_eq!(lhs, rhs);
    assert_eq!(ext.format(&lhs), "y*x1 + 1");
}

#[test]
fn quantum_plane_swaps_with_factor_two() {
    let ext = common::quantum_plane();
    let (x1, x2) = (ext.var(0), ext.var(1));
    assert_eq!(ext.mul(&x2, &x1), ext.scalar_mul_left(2, &ext.mul(&x1, &x2)));
    // x2^2·x1 = 4·x1·x2^2
    let x2sq = ext.mul(&x2, &x2);
    assert_eq!(ext.format(&ext.mul(&x2sq, &x1)), "4*x1*x2^2");
}

fn instances() -> Vec<SkewPbw> {
    vec![common::quantum_plane(), common::weyl(), common::swap().ext]
}

fn triple(ext: &SkewPbw, seed: u64) -> (SkewPoly, SkewPoly, SkewPoly) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw = || random_poly(ext, &mut rng, 3, 5);
    (draw(), draw(), draw())
}

fn random_word(ext: &SkewPbw, seed: u64) -> GenWord {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let len = rng.gen_range(0..8);
    GenWord(
        (0..len)
            .map(|_| {
                if rng.gen_bool(0.5) {
                    Token::Var(rng.gen_range(0..ext.nvars()))
                } else {
                    Token::Coeff(rng.gen_range(0..ext.ring().order()))
                }
            })
            .collect(),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms_hold(seed in any::<u64>()) {
        for ext in instances() {
            let (f, g, h) = triple(&ext, seed);
            prop_assert_eq!(ext.mul(&ext.mul(&f, &g), &h), ext.mul(&f, &ext.mul(&g, &h)));
            prop_assert_eq!(ext.mul(&f, &ext.add(&g, &h)), ext.add(&ext.mul(&f, &g), &ext.mul(&f, &h)));
            prop_assert_eq!(ext.mul(&ext.add(&f, &g), &h), ext.add(&ext.mul(&f, &h), &ext.mul(&g, &h)));
            prop_assert_eq!(&ext.mul(&ext.one(), &f), &f);
            prop_assert_eq!(&ext.mul(&f, &ext.one()), &f);
        }
    }

    #[test]
    fn normal_forms_are_fixed_points(seed in any::<u64>()) {
        for ext in instances() {
            let w = random_word(&ext, seed);
            let nf = ext.normalize(&w);
            prop_assert_eq!(&ext.normalize_sum(&nf.to_words()), &nf);
            // the word read as a product of its factors
            let product = w.0.iter().fold(ext.one(), |acc, t| match *t {
                Token::Var(i) => ext.mul(&acc, &ext.var(i)),
                Token::Coeff(r) => ext.mul(&acc, &ext.constant(r)),
            });
            prop_assert_eq!(nf, product);
        }
    }

    #[test]
    fn leading_coefficient_of_a_product(seed in any::<u64>()) {
        for ext in instances() {
            prop_assert!(ext.is_bijective());
            let (f, g, _) = triple(&ext, seed);
            if f.is_zero() || g.is_zero() {
                continue;
            }
            let (a, b) = (ext.exp(&f).unwrap(), ext.exp(&g).unwrap());
            let (c, _) = ext.monomial_product(&a, &b);
            let ring = ext.ring();
            let expected = ring.mul(ring.mul(ext.lc(&f), ext.sigma_power(&a, ext.lc(&g))), c);
            if expected != ring.zero() {
                let fg = ext.mul(&f, &g);
                prop_assert_eq!(ext.exp(&fg), Some(a.add(&b).unwrap()));
                prop_assert_eq!(ext.lc(&fg), expected);
            }
        }
    }
}

fn degree_below(p: &SkewPoly, bound: u32) -> bool {
    p.is_zero() || p.degree().unwrap() < bound
}

#[test]
fn alpha_commute_contract_is_exhaustive() {
    for ext in instances() {
        for alpha in ext.order().enumerate_upto(3) {
            for r in ext.ring().elements() {
                let (r_alpha, p) = ext.alpha_commute(&alpha, r);
                let lhs = ext.mul(&ext.monomial(ext.ring().one(), alpha.clone()), &ext.constant(r));
                let rhs = ext.add(&ext.monomial(r_alpha, alpha.clone()), &p);
                assert_eq!(lhs, rhs, "alpha={alpha:?} r={r}");
                assert!(degree_below(&p, alpha.degree()) || alpha.is_zero() && p.is_zero());
                assert_eq!(r_alpha, ext.sigma_power(&alpha, r));
            }
        }
    }
}

#[test]
fn monomial_product_contract_is_exhaustive() {
    for ext in instances() {
        let monos = ext.order().enumerate_upto(3);
        for alpha in &monos {
            for beta in &monos {
                let (c, p) = ext.monomial_product(alpha, beta);
                let one = ext.ring().one();
                let lhs = ext.mul(&ext.monomial(one, alpha.clone()), &ext.monomial(one, beta.clone()));
                let sum: MultiIndex = alpha.add(beta).unwrap();
                assert_eq!(lhs, ext.add(&ext.monomial(c, sum.clone()), &p));
                assert!(degree_below(&p, sum.degree()) || sum.is_zero() && p.is_zero());
            }
        }
    }
}

#[test]
fn leading_data_of_a_small_polynomial() {
    // 3*x1 + x1*x2 over Z6 with x2 above x1
    let ext = common::commutative(common::z(6), 2);
    let f = ext.add(&ext.monomial(3, MultiIndex(vec![1, 0])), &ext.monomial(1, MultiIndex(vec![1, 1])));
    assert_eq!(ext.exp(&f), Some(MultiIndex(vec![1, 1])));
    assert_eq!(ext.lc(&f), 1);
    assert_eq!(ext.deg(&f), Some(2));
}

#[test]
fn serde_round_trip_of_polynomials() {
    let ext = common::quantum_plane();
    let (f, _, _) = triple(&ext, 5);
    let text = serde_json::to_string(&f).unwrap();
    let back: SkewPoly = serde_json::from_str(&text).unwrap();
    assert_eq!(back, f);
}
