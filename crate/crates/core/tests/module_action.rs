mod common;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spbw_core::annihilator::{ann_in_a_bounded, ann_in_r};
use spbw_core::properties::{is_delta_compatible, is_sigma_compatible};
use spbw_core::skewpbw::random_poly;
use spbw_core::{ElemSet, Limits, ModulePoly, MultiIndex, PolyModule, SkewPoly};

fn random_module_poly(pm: &PolyModule, rng: &mut ChaCha8Rng, deg: u32, max_terms: usize) -> ModulePoly {
    let monos = pm.ext.order().enumerate_upto(deg);
    let count = rng.gen_range(1..=max_terms);
    (0..count).fold(pm.zero_poly(), |acc, _| {
        let a = monos[rng.gen_range(0..monos.len())].clone();
        let m = rng.gen_range(0..pm.module.order());
        pm.add(&acc, &pm.mono(m, a))
    })
}

fn action_instances() -> Vec<PolyModule> {
    vec![
        common::weyl_quotient(),
        PolyModule::regular(common::weyl()),
        PolyModule::regular(common::quantum_plane()),
        common::swap(),
        common::regular(common::z(4), 2),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn action_is_associative_and_bilinear(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for pm in action_instances() {
            let m = random_module_poly(&pm, &mut rng, 3, 5);
            let m2 = random_module_poly(&pm, &mut rng, 3, 5);
            let f = random_poly(&pm.ext, &mut rng, 3, 5);
            let g = random_poly(&pm.ext, &mut rng, 3, 5);
            prop_assert_eq!(pm.act(&pm.act(&m, &f), &g), pm.act(&m, &pm.ext.mul(&f, &g)));
            prop_assert_eq!(pm.act(&m, &pm.ext.add(&f, &g)), pm.add(&pm.act(&m, &f), &pm.act(&m, &g)));
            prop_assert_eq!(pm.act(&pm.add(&m, &m2), &f), pm.add(&pm.act(&m, &f), &pm.act(&m2, &f)));
            prop_assert_eq!(&pm.act(&m, &pm.ext.one()), &m);
        }
    }
}

#[test]
fn regular_action_is_multiplication() {
    let pm = PolyModule::regular(common::quantum_plane());
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..50 {
        let f = random_poly(&pm.ext, &mut rng, 3, 4);
        let g = random_poly(&pm.ext, &mut rng, 3, 4);
        let m = ModulePoly::from_terms(2, pm.module.zero(), f.terms().clone());
        let prod = pm.ext.mul(&f, &g);
        assert_eq!(pm.act(&m, &g).terms(), prod.terms());
    }
}

#[test]
fn y_kills_the_weyl_quotient() {
    let pm = common::weyl_quotient();
    let one = pm.module.element_by_name("1").unwrap();
    assert!(pm.act(&pm.constant(one), &pm.ext.constant(2)).is_zero());
    // but x·y = y·x + 1 acts as the identity on 1
    let xy = pm.ext.mul(&pm.ext.var(0), &pm.ext.constant(2));
    assert_eq!(pm.act(&pm.constant(one), &xy), pm.constant(one));
}

fn compatible(pm: &PolyModule) -> bool {
    is_sigma_compatible(pm).holds() && is_delta_compatible(pm).holds()
}

/// Every element of `M⟨X⟩` of degree at most one, for one variable.
fn linear_module_polys(pm: &PolyModule) -> Vec<ModulePoly> {
    let monos = pm.ext.order().enumerate_upto(1);
    let mo = pm.module.order();
    (0..mo * mo)
        .map(|k| pm.add(&pm.mono(k % mo, monos[0].clone()), &pm.mono(k / mo, monos[1].clone())))
        .collect()
}

#[test]
fn scalar_annihilation_is_coefficientwise_on_compatible_modules() {
    let mut checked = 0;
    for (name, pm) in common::small_corpus() {
        if !compatible(&pm) {
            continue;
        }
        checked += 1;
        for m in linear_module_polys(&pm) {
            for r in pm.ring().elements() {
                let whole = pm.act_scalar(&m, r).is_zero();
                let coeffwise = m.terms().values().all(|&mi| pm.module.act(mi, r) == pm.module.zero());
                assert_eq!(whole, coeffwise, "{name}: m={} r={r}", pm.format(&m));
            }
        }
    }
    assert!(checked >= 4);
}

#[test]
fn scalar_annihilation_needs_compatibility() {
    let pm = common::swap();
    let (e1, e2) = (1, 2);
    let m = pm.mono(e1, MultiIndex(vec![1]));
    // (1,0)·x·(0,1) = (1,0)·(1,0)·x is nonzero although (1,0)·(0,1) = 0
    assert_eq!(pm.module.act(e1, e2), pm.module.zero());
    assert!(!pm.act_scalar(&m, e2).is_zero());
}

#[test]
fn annihilator_of_a_set_is_the_intersection() {
    for (name, pm) in common::small_corpus() {
        let module = &pm.module;
        for mask in 0u64..(1 << module.order()) {
            let xs: Vec<usize> = ElemSet(mask).iter().collect();
            let joint = ann_in_r(module, xs.iter().copied());
            let meet = xs.iter().fold(ElemSet::full(module.ring_order()), |acc, &x| {
                acc.intersection(&ann_in_r(module, [x]).elements)
            });
            assert_eq!(joint.elements, meet, "{name} {xs:?}");
        }
    }
}

#[test]
fn sigma_preserves_element_annihilators_on_compatible_modules() {
    for (name, pm) in common::small_corpus() {
        if !compatible(&pm) {
            continue;
        }
        let module = &pm.module;
        for m in module.elements() {
            for a in pm.ring().elements() {
                for sigma in pm.ext.sigmas() {
                    let left = ann_in_r(module, [module.act(m, a)]);
                    let right = ann_in_r(module, [module.act(m, sigma.apply(a))]);
                    assert_eq!(left, right, "{name} m={m} a={a}");
                }
            }
        }
    }
}

#[test]
fn bounded_annihilator_over_z4() {
    let pm = common::regular(common::z(4), 1);
    let limits = Limits::default();
    let got = ann_in_a_bounded(&pm, &[pm.constant(2)], 1, &limits).unwrap();
    let mut shown: Vec<String> = got.iter().map(|f| pm.ext.format(f)).collect();
    shown.sort();
    assert_eq!(shown, ["0", "2", "2*x1", "2*x1 + 2"]);
    assert_eq!(got.len(), 4);
    assert_eq!(ann_in_a_bounded(&pm, &[pm.zero_poly()], 1, &limits).unwrap().len(), 16);
    assert_eq!(ann_in_a_bounded(&pm, &[pm.constant(1)], 0, &limits).unwrap(), vec![pm.ext.zero_poly()]);
}

/// Polynomials of degree at most `d` whose coefficients all lie in `ideal`.
fn coefficientwise(pm: &PolyModule, ideal: ElemSet, d: u32) -> Vec<SkewPoly> {
    let monos = pm.ext.order().enumerate_upto(d);
    let choices = ideal.to_vec();
    let mut out = vec![pm.ext.zero_poly()];
    for a in monos {
        out = out
            .into_iter()
            .flat_map(|f| choices.iter().map(move |&c| (f.clone(), c)))
            .map(|(f, c)| pm.ext.add(&f, &pm.ext.monomial(c, a.clone())))
            .collect();
    }
    out
}

#[test]
fn bounded_annihilators_are_extended_from_the_base_ring() {
    let limits = Limits::default();
    for pm in [common::regular(common::z(3), 1), common::regular(common::z(6), 1), common::regular(common::z(2), 2)] {
        assert!(compatible(&pm));
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..12 {
            let m = random_module_poly(&pm, &mut rng, 1, 2);
            let coeffs: Vec<usize> = m.terms().values().copied().collect();
            let ideal = ann_in_r(&pm.module, coeffs).elements;
            let mut expected = coefficientwise(&pm, ideal, 2);
            let mut got = ann_in_a_bounded(&pm, std::slice::from_ref(&m), 2, &limits).unwrap();
            expected.sort_by(|a, b| a.terms().cmp(b.terms()));
            got.sort_by(|a, b| a.terms().cmp(b.terms()));
            assert_eq!(got, expected, "m={}", pm.format(&m));
        }
    }
}

#[test]
fn module_polys_round_trip_through_json() {
    let pm = common::weyl_quotient();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let m = random_module_poly(&pm, &mut rng, 3, 4);
    let back: ModulePoly = serde_json::from_str(&serde_json::to_string(&m).unwrap()).unwrap();
    assert_eq!(back, m);
}
