//! Exact deciders over `M`, and bounded deciders over `M⟨X⟩`.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::annihilator::{ann_in_r, ann_of_element, is_idempotent_generated, IdempotentGen, RightIdeal};
use crate::finring::{closure_monoid, Elem, ElemSet, FiniteRing};
use crate::polymodule::{ModulePoly, PolyModule, RightModule};
use crate::search::{guard, kernel, module_poly, skew_poly, PlainTable, SandwichTable, TupleBox};
use crate::skewpbw::{SkewPbw, SkewPoly};
use crate::Limits;

use super::verdict::{AnnScope, PolyAnnMode, PropertyVerdict, Verdict, Witness};
use super::DeciderError;

fn fails(w: Witness) -> Verdict {
    Verdict::Fails(Box::new(w))
}

// ----------------------------------------------------------------------------
// properties of M

/// `m·a = 0` implies `mR ∩ Ma = 0`.
pub fn is_reduced(module: &RightModule) -> PropertyVerdict {
    let mz = module.zero();
    let found = module.elements().find_map(|m| {
        let cyc = module.cyclic_submodule(m).elements;
        (0..module.ring_order()).find_map(|a| {
            if module.act(m, a) != mz {
                return None;
            }
            let common = cyc.intersection(&module.times_scalar_image(a));
            let nonzero = common.iter().find(|&x| x != mz);
            nonzero.map(|common| Witness::NotReduced { m, a, common })
        })
    });
    PropertyVerdict::new("reduced", found.map_or(Verdict::Holds, fails), None)
}

/// `m·r = 0` iff `m·g(r) = 0` for every composite `g` of the sigmas.
///
/// Forward failures (`m·r = 0`, `m·g(r) ≠ 0`) are reported before backward ones.
pub fn is_sigma_compatible(pm: &PolyModule) -> PropertyVerdict {
    let module = &pm.module;
    let mz = module.zero();
    let gens: Vec<&[Elem]> = pm.ext.sigmas().iter().map(|s| s.table()).collect();
    let monoid = closure_monoid(pm.ring().order(), &gens);
    let scan = |forward: bool| {
        module.elements().find_map(|m| {
            pm.ring().elements().find_map(|r| {
                let kills = module.act(m, r) == mz;
                if kills != forward {
                    return None;
                }
                monoid
                    .elements()
                    .find(|g| (module.act(m, g[r]) == mz) != kills)
                    .map(|g| Witness::SigmaIncompatible { m, r, map: g.to_vec() })
            })
        })
    };
    let found = scan(true).or_else(|| scan(false));
    PropertyVerdict::new("sigma-compatible", found.map_or(Verdict::Holds, fails), None)
}

/// `m·r = 0` implies `m·g(r) = 0` for every composite `g` of the deltas.
pub fn is_delta_compatible(pm: &PolyModule) -> PropertyVerdict {
    let module = &pm.module;
    let mz = module.zero();
    let gens: Vec<&[Elem]> = pm.ext.deltas().iter().map(|s| s.table()).collect();
    let monoid = closure_monoid(pm.ring().order(), &gens);
    let found = module.elements().find_map(|m| {
        pm.ring().elements().filter(|&r| module.act(m, r) == mz).find_map(|r| {
            monoid
                .elements()
                .find(|g| module.act(m, g[r]) != mz)
                .map(|g| Witness::DeltaIncompatible { m, r, map: g.to_vec() })
        })
    });
    PropertyVerdict::new("delta-compatible", found.map_or(Verdict::Holds, fails), None)
}

fn first_not_generated(ring: &FiniteRing, ideal: ElemSet) -> bool {
    is_idempotent_generated(ring, &RightIdeal { elements: ideal }) == IdempotentGen::NotFound
}

/// Every `ann_R({m})` is generated by an idempotent.
pub fn is_pp(ring: &FiniteRing, module: &RightModule) -> PropertyVerdict {
    let found = module.elements().find_map(|m| {
        let ideal = ann_of_element(module, m);
        first_not_generated(ring, ideal).then(|| Witness::NotIdempotentGenerated {
            scope: AnnScope::Element,
            generators: vec![m],
            ideal: ideal.to_vec(),
        })
    });
    PropertyVerdict::new("pp", found.map_or(Verdict::Holds, fails), None)
}

/// Every `ann_R(mR)` is generated by an idempotent.
pub fn is_pq_baer(ring: &FiniteRing, module: &RightModule) -> PropertyVerdict {
    let found = module.elements().find_map(|m| {
        let ideal = ann_in_r(module, module.cyclic_submodule(m).elements.iter()).elements;
        first_not_generated(ring, ideal).then(|| Witness::NotIdempotentGenerated {
            scope: AnnScope::Cyclic,
            generators: vec![m],
            ideal: ideal.to_vec(),
        })
    });
    PropertyVerdict::new("pq-baer", found.map_or(Verdict::Holds, fails), None)
}

/// A small generating set of a submodule, greedily in index order.
fn submodule_generators(module: &RightModule, n: ElemSet) -> Vec<Elem> {
    let mut gens = Vec::new();
    let mut span = module.submodule_closure(std::iter::empty());
    for x in n.iter() {
        if !span.contains(x) {
            gens.push(x);
            span = module.submodule_closure(gens.iter().copied());
        }
    }
    gens
}

/// Every `ann_R(N)` for a submodule `N` is generated by an idempotent.
pub fn is_quasi_baer(ring: &FiniteRing, module: &RightModule, limits: &Limits) -> Result<PropertyVerdict, DeciderError> {
    let subs = module.all_submodules(limits).map_err(|e| DeciderError::SubmoduleCap(e.to_string()))?;
    let found = subs.iter().find_map(|n| {
        let ideal = ann_in_r(module, n.elements.iter()).elements;
        first_not_generated(ring, ideal).then(|| Witness::NotIdempotentGenerated {
            scope: AnnScope::Submodule,
            generators: submodule_generators(module, n.elements),
            ideal: ideal.to_vec(),
        })
    });
    Ok(PropertyVerdict::new("quasi-baer", found.map_or(Verdict::Holds, fails), None))
}

/// Closes `family` under intersection, returning every member in sorted order.
fn intersection_closure(family: impl IntoIterator<Item = ElemSet>) -> Vec<ElemSet> {
    let mut seen: std::collections::BTreeSet<ElemSet> = family.into_iter().collect();
    let mut frontier: Vec<ElemSet> = seen.iter().copied().collect();
    let base = frontier.clone();
    while let Some(s) = frontier.pop() {
        for t in &base {
            let u = s.intersection(t);
            if seen.insert(u) {
                frontier.push(u);
            }
        }
    }
    seen.into_iter().collect()
}

/// Indices of a short list of members whose sets intersect to `target`.
fn greedy_cover(sets: &[ElemSet], target: ElemSet, full: ElemSet) -> Vec<usize> {
    let mut cur = full;
    let mut picked = Vec::new();
    for (i, s) in sets.iter().enumerate() {
        if cur == target {
            break;
        }
        if target.is_subset(s) && cur.intersection(s) != cur {
            cur = cur.intersection(s);
            picked.push(i);
        }
    }
    picked
}

/// Every `ann_R(X)` for a subset `X ⊆ M` is generated by an idempotent.
///
/// Such annihilators are exactly the intersections of element annihilators,
/// so only that closure is enumerated.
pub fn is_baer(ring: &FiniteRing, module: &RightModule) -> PropertyVerdict {
    let single = is_pp(ring, module);
    if let Verdict::Fails(w) = single.verdict {
        let Witness::NotIdempotentGenerated { generators, ideal, .. } = *w else { unreachable!() };
        return PropertyVerdict::new(
            "baer",
            fails(Witness::NotIdempotentGenerated { scope: AnnScope::Subset, generators, ideal }),
            None,
        );
    }
    let anns: Vec<ElemSet> = module.elements().map(|m| ann_of_element(module, m)).collect();
    let found = intersection_closure(anns.iter().copied()).into_iter().find(|&i| first_not_generated(ring, i)).map(|ideal| {
        let picked = greedy_cover(&anns, ideal, ElemSet::full(ring.order()));
        Witness::NotIdempotentGenerated { scope: AnnScope::Subset, generators: picked, ideal: ideal.to_vec() }
    });
    PropertyVerdict::new("baer", found.map_or(Verdict::Holds, fails), None)
}

/// `m·r·e = m·e·r` for every idempotent `e`.
pub fn is_abelian(ring: &FiniteRing, module: &RightModule) -> PropertyVerdict {
    let idem = ring.idempotents();
    let found = module.elements().find_map(|m| {
        ring.elements().find_map(|r| {
            idem.iter()
                .find(|&&e| module.act(module.act(m, r), e) != module.act(module.act(m, e), r))
                .map(|&e| Witness::NotAbelian { m, r, e })
        })
    });
    PropertyVerdict::new("abelian", found.map_or(Verdict::Holds, fails), None)
}

/// `σ_i(e) = e` and `δ_i(e) = 0` for every idempotent `e` and every `i`.
pub fn idempotent_stability(ext: &SkewPbw) -> PropertyVerdict {
    let ring = ext.ring();
    let found = ring.idempotents().into_iter().find_map(|e| {
        (0..ext.nvars()).find_map(|i| {
            let (s, d) = (ext.sigma(i).apply(e), ext.delta(i).apply(e));
            (s != e || d != ring.zero()).then_some(Witness::UnstableIdempotent { e, i: i + 1, sigma_e: s, delta_e: d })
        })
    });
    PropertyVerdict::new("idempotent-stability", found.map_or(Verdict::Holds, fails), None)
}

// ----------------------------------------------------------------------------
// bounded searches over M⟨X⟩

fn for_each_m<T: Send>(pm: &PolyModule, k: usize, f: impl Fn(Vec<Elem>) -> Option<T> + Sync + Send) -> Option<T> {
    let bx = TupleBox { radix: pm.module.order(), len: k };
    let size = bx.size() as u64;
    (0..size).into_par_iter().find_map_first(|idx| f(bx.decode(idx as u128)))
}

fn armendariz_scan(pm: &PolyModule, d: u32, limits: &Limits) -> Result<Option<Witness>, DeciderError> {
    guard(pm, d, limits.max_space)?;
    let table = PlainTable::new(pm, d, d);
    let module = &pm.module;
    let mz = module.zero();
    let k = table.m_monos.len();
    // the constant monomial is the least one in every admissible order
    Ok(for_each_m(pm, k, |m| {
        if m[0] == mz {
            return None;
        }
        let cols = table.columns(module, &[&m]);
        kernel(module, &cols).into_iter().find_map(|f| {
            f.iter().position(|&b| module.act(m[0], b) != mz).map(|j| Witness::Armendariz {
                m: module_poly(pm, &table.m_monos, &m),
                f: skew_poly(pm, &table.f_monos, &f),
                at: table.f_monos[j].clone(),
            })
        })
    }))
}

/// `m·f = 0` implies `m₀·b_j = 0`, over `m, f` of degree at most `d`.
pub fn is_skew_armendariz_bounded(pm: &PolyModule, d: u32, limits: &Limits) -> Result<PropertyVerdict, DeciderError> {
    let w = armendariz_scan(pm, d, limits)?;
    Ok(PropertyVerdict::new("skew-armendariz", w.map_or(Verdict::HoldsUpToBound(d), fails), Some(d)))
}

/// The same condition restricted to linear polynomials, which is a finite check.
pub fn is_linearly_skew_armendariz(pm: &PolyModule, limits: &Limits) -> Result<PropertyVerdict, DeciderError> {
    let w = armendariz_scan(pm, 1, limits)?;
    Ok(PropertyVerdict::new("linearly-skew-armendariz", w.map_or(Verdict::Holds, fails), Some(1)))
}

/// `m·A·f = 0` implies `m_i x^{α_i}·r·x^t·b_j x^{β_j} = 0`, with `A` and `t`
/// truncated at degree `d`.
pub fn is_skew_quasi_armendariz_bounded(pm: &PolyModule, d: u32, limits: &Limits) -> Result<PropertyVerdict, DeciderError> {
    guard(pm, d, limits.max_space)?;
    let table = SandwichTable::new(pm, d);
    let module = &pm.module;
    let (q, mo) = (pm.ring().order(), module.order());
    let k = table.monos.len();
    // mixed[((i·|M| + mi)·K + j)·q + b]
    let mixed: Vec<Option<(Elem, usize)>> = (0..k * mo * k * q)
        .into_par_iter()
        .map(|idx| {
            let (b, rest) = (idx % q, idx / q);
            let (j, rest) = (rest % k, rest / k);
            let (mi, i) = (rest % mo, rest / mo);
            table.mixed_failure(module, i, mi, j, b)
        })
        .collect();
    let mz = module.zero();
    let w = for_each_m(pm, k, |m| {
        if m.iter().all(|&c| c == mz) {
            return None;
        }
        let cols = table.columns(module, &m);
        kernel(module, &cols).into_iter().find_map(|f| {
            m.iter().enumerate().filter(|&(_, &mi)| mi != mz).find_map(|(i, &mi)| {
                f.iter().enumerate().find_map(|(j, &b)| {
                    mixed[((i * mo + mi) * k + j) * q + b].map(|(r, g)| Witness::QuasiArmendariz {
                        m: module_poly(pm, &table.monos, &m),
                        f: skew_poly(pm, &table.monos, &f),
                        i: table.monos[i].clone(),
                        j: table.monos[j].clone(),
                        r,
                        t: table.monos[g].clone(),
                        bound: d,
                    })
                })
            })
        })
    });
    Ok(PropertyVerdict::new("skew-quasi-armendariz", w.map_or(Verdict::HoldsUpToBound(d), fails), Some(d)))
}

/// `Some(I)` when the tuples are exactly `I^k` for the set `I` of their first coordinates.
pub(crate) fn shape_of_tuples(tuples: &[Vec<Elem>], k: usize) -> Option<ElemSet> {
    let ideal: ElemSet = tuples.iter().map(|t| t[0]).collect();
    let expected = (ideal.len() as u128).checked_pow(k as u32)?;
    let inside = tuples.iter().all(|t| t.iter().all(|&c| ideal.contains(c)));
    (inside && expected == tuples.len() as u128).then_some(ideal)
}

/// [`shape_of_tuples`] for a kernel given as polynomials of degree at most `d`.
pub(crate) fn kernel_shape(pm: &PolyModule, polys: &[SkewPoly], d: u32) -> Option<RightIdeal> {
    let monos = pm.ext.order().enumerate_upto(d);
    if polys.iter().any(|p| p.degree().is_some_and(|e| e > d)) {
        return None;
    }
    let zero = pm.ring().zero();
    let tuples: Vec<Vec<Elem>> = polys.iter().map(|p| monos.iter().map(|a| p.coeff(a).unwrap_or(zero)).collect()).collect();
    shape_of_tuples(&tuples, monos.len()).map(|elements| RightIdeal { elements })
}

/// Bounded `{f : m·r·x^γ·f = 0 for all m ∈ ms, r ∈ R, |γ| ≤ d}`; generators must have degree at most `d`.
pub(crate) fn sandwich_kernel_of(pm: &PolyModule, ms: &[ModulePoly], d: u32) -> Vec<SkewPoly> {
    let table = SandwichTable::new(pm, d);
    let mz = pm.module.zero();
    let dense: Vec<Vec<Elem>> =
        ms.iter().map(|m| table.monos.iter().map(|a| m.coeff(a).unwrap_or(mz)).collect()).collect();
    let cols = joined_columns(dense.iter().map(|m| table.columns(&pm.module, m)), table.monos.len(), pm.ring().order());
    kernel(&pm.module, &cols).iter().map(|f| skew_poly(pm, &table.monos, f)).collect()
}

/// Concatenates column systems so that their kernels intersect.
fn joined_columns(parts: impl Iterator<Item = Vec<Vec<Vec<u8>>>>, k: usize, q: usize) -> Vec<Vec<Vec<u8>>> {
    let mut out = vec![vec![Vec::new(); q]; k];
    for part in parts {
        for (j, col) in part.into_iter().enumerate() {
            for (b, v) in col.into_iter().enumerate() {
                out[j][b].extend(v);
            }
        }
    }
    out
}

/// Per-`m` coefficient ideals of bounded annihilators, or the first failing `m`.
struct PolyAnnFamily {
    members: Vec<(Vec<Elem>, ElemSet)>,
}

fn poly_ann_family(
    pm: &PolyModule,
    d: u32,
    limits: &Limits,
    mode: PolyAnnMode,
) -> Result<Result<PolyAnnFamily, Witness>, DeciderError> {
    guard(pm, d, limits.max_space)?;
    let module = &pm.module;
    let ring = pm.ring();
    let (plain, sandwich) = match mode {
        PolyAnnMode::Plain => (Some(PlainTable::new(pm, d, d)), None),
        PolyAnnMode::Sandwich => (None, Some(SandwichTable::new(pm, d))),
    };
    let monos = pm.ext.order().enumerate_upto(d);
    let k = monos.len();
    let bx = TupleBox { radix: module.order(), len: k };
    let results: Vec<Result<ElemSet, String>> = (0..bx.size() as u64)
        .into_par_iter()
        .map(|idx| {
            let m = bx.decode(idx as u128);
            let cols = match (&plain, &sandwich) {
                (Some(t), _) => t.columns(module, &[&m]),
                (_, Some(t)) => t.columns(module, &m),
                _ => unreachable!(),
            };
            let ker = kernel(module, &cols);
            match shape_of_tuples(&ker, k) {
                None => Err(format!("annihilator has {} elements and is not I^{k} for a right ideal I", ker.len())),
                Some(i) if first_not_generated(ring, i) => Err(format!(
                    "coefficient ideal {{{}}} is not generated by an idempotent",
                    i.iter().map(|r| ring.name(r).to_string()).collect::<Vec<_>>().join(", ")
                )),
                Some(i) => Ok(i),
            }
        })
        .collect();
    let mut members = Vec::with_capacity(results.len());
    for (idx, r) in results.into_iter().enumerate() {
        let m = bx.decode(idx as u128);
        match r {
            Ok(i) => members.push((m, i)),
            Err(detail) => {
                return Ok(Err(Witness::PolyAnnihilator {
                    mode,
                    generators: vec![module_poly(pm, &monos, &m)],
                    bound: d,
                    detail,
                }))
            }
        }
    }
    Ok(Ok(PolyAnnFamily { members }))
}

fn poly_single(pm: &PolyModule, d: u32, limits: &Limits, mode: PolyAnnMode, name: &str) -> Result<PropertyVerdict, DeciderError> {
    let v = match poly_ann_family(pm, d, limits, mode)? {
        Ok(_) => Verdict::HoldsUpToBound(d),
        Err(w) => fails(w),
    };
    Ok(PropertyVerdict::new(name, v, Some(d)))
}

fn poly_closed(pm: &PolyModule, d: u32, limits: &Limits, mode: PolyAnnMode, name: &str) -> Result<PropertyVerdict, DeciderError> {
    let family = match poly_ann_family(pm, d, limits, mode)? {
        Ok(f) => f,
        Err(w) => return Ok(PropertyVerdict::new(name, fails(w), Some(d))),
    };
    let ring = pm.ring();
    // one representative per distinct ideal, in first-seen order
    let mut reps: BTreeMap<ElemSet, usize> = BTreeMap::new();
    for (idx, (_, i)) in family.members.iter().enumerate() {
        reps.entry(*i).or_insert(idx);
    }
    let mut order: Vec<(usize, ElemSet)> = reps.iter().map(|(&i, &idx)| (idx, i)).collect();
    order.sort();
    let sets: Vec<ElemSet> = order.iter().map(|&(_, i)| i).collect();
    let found = intersection_closure(sets.iter().copied()).into_iter().find(|&i| first_not_generated(ring, i));
    let v = match found {
        None => Verdict::HoldsUpToBound(d),
        Some(ideal) => {
            let monos = pm.ext.order().enumerate_upto(d);
            let picked = greedy_cover(&sets, ideal, ElemSet::full(ring.order()));
            let generators = picked.iter().map(|&p| module_poly(pm, &monos, &family.members[order[p].0].0)).collect();
            fails(Witness::PolyAnnihilator {
                mode,
                generators,
                bound: d,
                detail: format!(
                    "intersection {{{}}} is not generated by an idempotent",
                    ideal.iter().map(|r| ring.name(r).to_string()).collect::<Vec<_>>().join(", ")
                ),
            })
        }
    };
    Ok(PropertyVerdict::new(name, v, Some(d)))
}

/// Bounded p.p. for `M⟨X⟩`: each `{f : m·f = 0}` is `(eR)^K` for an idempotent `e ∈ R`.
pub fn poly_pp_bounded(pm: &PolyModule, d: u32, limits: &Limits) -> Result<PropertyVerdict, DeciderError> {
    poly_single(pm, d, limits, PolyAnnMode::Plain, "poly-pp")
}

/// Bounded p.q.-Baer for `M⟨X⟩`, using the sandwich annihilators.
pub fn poly_pq_baer_bounded(pm: &PolyModule, d: u32, limits: &Limits) -> Result<PropertyVerdict, DeciderError> {
    poly_single(pm, d, limits, PolyAnnMode::Sandwich, "poly-pq-baer")
}

/// Bounded Baer for `M⟨X⟩`: intersections of the plain annihilators as well.
pub fn poly_baer_bounded(pm: &PolyModule, d: u32, limits: &Limits) -> Result<PropertyVerdict, DeciderError> {
    poly_closed(pm, d, limits, PolyAnnMode::Plain, "poly-baer")
}

/// Bounded quasi-Baer for `M⟨X⟩`: intersections of the sandwich annihilators.
pub fn poly_quasi_baer_bounded(pm: &PolyModule, d: u32, limits: &Limits) -> Result<PropertyVerdict, DeciderError> {
    poly_closed(pm, d, limits, PolyAnnMode::Sandwich, "poly-quasi-baer")
}

/// Hypotheses under which a torsion element is killed by a leading coefficient.
pub(crate) fn torsion_hypotheses(pm: &PolyModule) -> Result<(), String> {
    let checks = [is_reduced(&pm.module), is_sigma_compatible(pm), is_delta_compatible(pm)];
    if let Some(bad) = checks.iter().find(|v| !v.holds()) {
        return Err(format!("module is not {}", bad.property));
    }
    if !pm.ext.is_bijective() {
        return Err("extension is not bijective".into());
    }
    if let Some(((i, j), _)) = pm.ext.relations().find(|(_, rel)| !pm.ring().is_central(rel.c)) {
        return Err(format!("c_{}{} is not central", i + 1, j + 1));
    }
    Ok(())
}

/// For `m·h = 0` with `h ≠ 0`, returns `lc(h)` after checking `m·lc(h) = 0`.
pub fn torsion_witness(pm: &PolyModule, m: &ModulePoly, h: &SkewPoly) -> Result<Elem, DeciderError> {
    pm.check(m).map_err(|e| DeciderError::InvalidInput(e.to_string()))?;
    pm.ext.check_poly(h).map_err(|e| DeciderError::InvalidInput(e.to_string()))?;
    if h.is_zero() {
        return Err(DeciderError::InvalidInput("h is zero".into()));
    }
    if !pm.act(m, h).is_zero() {
        return Err(DeciderError::InvalidInput("m*h is not zero".into()));
    }
    torsion_hypotheses(pm).map_err(DeciderError::HypothesisNotMet)?;
    let c = pm.ext.lc(h);
    if pm.act_scalar(m, c).is_zero() {
        Ok(c)
    } else {
        Err(DeciderError::VerificationFailed(format!("m*lc(h) is not zero for lc(h) = {}", pm.ring().name(c))))
    }
}
