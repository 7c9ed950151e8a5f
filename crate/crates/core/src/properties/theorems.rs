//! Implications between the properties, each evaluated on one instance.
//!
//! A report is `Confirmed` when every hypothesis holds and so does the
//! conclusion, `HypothesisNotMet` when some hypothesis fails, and `Violation`
//! when the hypotheses hold but the conclusion does not. Bounded checks that
//! exceed the search budget make a report `Skipped`.

use std::cell::OnceCell;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::annihilator::ann_in_r;
use crate::finring::{closure_monoid, Elem};
use crate::polymodule::PolyModule;
use crate::search::{guard, kernel, module_poly, saturating_pow, PlainTable, SearchError, TupleBox};
use crate::Limits;

use super::deciders::{shape_of_tuples, torsion_hypotheses};
use super::{check_property, DeciderError, PropertyVerdict};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", content = "detail", rename_all = "snake_case")]
pub enum TheoremStatus {
    Confirmed,
    HypothesisNotMet(Vec<String>),
    Violation(String),
    Skipped(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hypothesis {
    pub name: String,
    /// `None` when the check was skipped.
    pub holds: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub id: String,
    pub statement: String,
    pub hypotheses: Vec<Hypothesis>,
    pub status: TheoremStatus,
}

/// Either a definite answer or the reason the check was skipped.
type Check = Result<bool, String>;

fn skip_reason(e: &DeciderError) -> String {
    e.to_string()
}

/// Lazily computed verdicts shared across the suite.
struct Facts<'a> {
    pm: &'a PolyModule,
    d: u32,
    limits: &'a Limits,
    cells: Vec<OnceCell<Result<PropertyVerdict, DeciderError>>>,
}

impl<'a> Facts<'a> {
    fn new(pm: &'a PolyModule, d: u32, limits: &'a Limits) -> Self {
        Facts { pm, d, limits, cells: (0..super::PROPERTY_NAMES.len()).map(|_| OnceCell::new()).collect() }
    }

    fn get(&self, name: &str) -> Check {
        let idx = super::PROPERTY_NAMES.iter().position(|&n| n == name).expect("registered property");
        let v = self.cells[idx].get_or_init(|| check_property(self.pm, name, self.d, self.limits));
        v.as_ref().map(|v| v.holds()).map_err(skip_reason)
    }

    fn compatible(&self) -> Check {
        Ok(self.get("sigma-compatible")? && self.get("delta-compatible")?)
    }

    fn embedded(&self) -> Check {
        Ok(self.pm.embedding.is_some())
    }
}

fn hyp(name: &str, c: &Check) -> Hypothesis {
    Hypothesis { name: name.to_string(), holds: c.as_ref().ok().copied() }
}

/// Evaluates an implication; `conclusion` is only run when every hypothesis holds.
fn implication(
    id: &str,
    statement: &str,
    hyps: Vec<(&str, Check)>,
    conclusion: impl FnOnce() -> Result<Option<String>, String>,
) -> TheoremReport {
    let hypotheses: Vec<Hypothesis> = hyps.iter().map(|(n, c)| hyp(n, c)).collect();
    let failed: Vec<String> = hyps.iter().filter(|(_, c)| matches!(c, Ok(false))).map(|(n, _)| n.to_string()).collect();
    let skipped = hyps.iter().find_map(|(_, c)| c.as_ref().err().cloned());
    let status = if !failed.is_empty() {
        TheoremStatus::HypothesisNotMet(failed)
    } else if let Some(reason) = skipped {
        TheoremStatus::Skipped(reason)
    } else {
        match conclusion() {
            Ok(None) => TheoremStatus::Confirmed,
            Ok(Some(v)) => TheoremStatus::Violation(v),
            Err(reason) => TheoremStatus::Skipped(reason),
        }
    };
    TheoremReport { id: id.to_string(), statement: statement.to_string(), hypotheses, status }
}

/// `Ok(None)` when both sides agree.
fn equivalence(left: (&str, Check), right: (&str, Check)) -> Result<Option<String>, String> {
    let (l, r) = (left.1?, right.1?);
    Ok((l != r).then(|| format!("{} is {l} but {} is {r}", left.0, right.0)))
}

/// Conditions on `M` equivalent to being reduced and compatible.
fn pointwise_conditions(pm: &PolyModule) -> Option<String> {
    let ring = pm.ring();
    let module = &pm.module;
    let mz = module.zero();
    let sig: Vec<&[Elem]> = pm.ext.sigmas().iter().map(|s| s.table()).collect();
    let del: Vec<&[Elem]> = pm.ext.deltas().iter().map(|s| s.table()).collect();
    let sigmas = closure_monoid(ring.order(), &sig);
    let deltas = closure_monoid(ring.order(), &del);
    for m in module.elements() {
        for r in ring.elements() {
            let kills = module.act(m, r) == mz;
            if kills && ring.elements().any(|s| module.act(module.act(m, s), r) != mz) {
                return Some(format!("(a) fails at m={}, r={}", module.name(m), ring.name(r)));
            }
            if kills && deltas.elements().any(|g| module.act(m, g[r]) != mz) {
                return Some(format!("(b) fails at m={}, r={}", module.name(m), ring.name(r)));
            }
            if sigmas.elements().any(|g| (module.act(m, g[r]) == mz) != kills) {
                return Some(format!("(c) fails at m={}, r={}", module.name(m), ring.name(r)));
            }
            if module.act(m, ring.mul(r, r)) == mz && !kills {
                return Some(format!("(d) fails at m={}, r={}", module.name(m), ring.name(r)));
            }
        }
    }
    None
}

/// Reduced and compatible iff the four pointwise annihilation conditions hold.
pub fn reduced_compatible_equivalence(pm: &PolyModule) -> TheoremReport {
    let limits = Limits::default();
    let facts = Facts::new(pm, 0, &limits);
    let lhs = (|| Ok::<bool, String>(facts.get("reduced")? && facts.compatible()?))();
    let rhs = pointwise_conditions(pm);
    let detail = rhs.clone().unwrap_or_else(|| "all four conditions hold".into());
    implication(
        "reduced-compatible-characterization",
        "M is reduced and (sigma,delta)-compatible iff (a) mr=0 => mRr=0, (b) mr=0 => m delta^b(r)=0, \
         (c) mr=0 <=> m sigma^a(r)=0, (d) mr^2=0 => mr=0",
        vec![],
        || Ok(equivalence(("reduced and compatible", lhs), ("pointwise conditions", Ok(rhs.is_none())))?.map(|v| format!("{v}; {detail}"))),
    )
}

/// Every `m ∈ M⟨X⟩` of degree at most `d`, in box order.
fn module_polys_budget(pm: &PolyModule, d: u32, limits: &Limits) -> Result<TupleBox, String> {
    let k = pm.ext.order().enumerate_upto(d).len();
    let bx = TupleBox { radix: pm.module.order(), len: k };
    let space = saturating_pow(pm.module.order() as u128, k as u128).saturating_mul(pm.ring().order() as u128);
    if space > limits.max_space {
        return Err(SearchError::SearchSpaceTooLarge { space, limit: limits.max_space }.to_string());
    }
    Ok(bx)
}

fn first_failure(bx: TupleBox, f: impl Fn(Vec<Elem>) -> Option<String> + Sync + Send) -> Option<String> {
    (0..bx.size() as u64).into_par_iter().find_map_first(|idx| f(bx.decode(idx as u128)))
}

/// Compatible modules: the scalar `r` kills `m` iff it kills each coefficient.
fn scalar_annihilation(pm: &PolyModule, d: u32, limits: &Limits) -> Result<Option<String>, String> {
    let bx = module_polys_budget(pm, d, limits)?;
    let monos = pm.ext.order().enumerate_upto(d);
    let module = &pm.module;
    let mz = module.zero();
    Ok(first_failure(bx, |m| {
        let mp = module_poly(pm, &monos, &m);
        pm.ring().elements().find_map(|r| {
            let whole = pm.act_scalar(&mp, r).is_zero();
            let each = m.iter().all(|&c| module.act(c, r) == mz);
            (whole != each).then(|| format!("m={} r={}: m*r=0 is {whole}, coefficientwise {each}", pm.format(&mp), pm.ring().name(r)))
        })
    }))
}

/// `M⟨X⟩` as a right `R`-module satisfies (a), (c) and (d) up to degree `d`.
fn reduced_transfer(pm: &PolyModule, d: u32, limits: &Limits) -> Result<Option<String>, String> {
    let bx = module_polys_budget(pm, d, limits)?;
    let monos = pm.ext.order().enumerate_upto(d);
    let ring = pm.ring();
    let sig: Vec<&[Elem]> = pm.ext.sigmas().iter().map(|s| s.table()).collect();
    let sigmas = closure_monoid(ring.order(), &sig);
    Ok(first_failure(bx, |m| {
        let mp = module_poly(pm, &monos, &m);
        let kills: Vec<bool> = ring.elements().map(|r| pm.act_scalar(&mp, r).is_zero()).collect();
        let at = |what: &str, r: Elem| Some(format!("{what} fails at m={}, r={}", pm.format(&mp), ring.name(r)));
        ring.elements().find_map(|r| {
            if kills[r] && ring.elements().any(|s| !pm.act_scalar(&pm.act_scalar(&mp, s), r).is_zero()) {
                return at("(a)", r);
            }
            if sigmas.elements().any(|g| kills[g[r]] != kills[r]) {
                return at("(c)", r);
            }
            if kills[ring.mul(r, r)] && !kills[r] {
                return at("(d)", r);
            }
            None
        })
    }))
}

/// Compatible modules: `ann(ma) = ann(m σ_i(a))`, `ma = 0 ⇒ mσ^θ(a) = 0 = mδ^θ(a)`
/// and `mab = 0 ⇒ ma δ^θ(b) = 0 = m δ^θ(a) b`.
fn compatible_identities(pm: &PolyModule) -> Option<String> {
    let ring = pm.ring();
    let module = &pm.module;
    let mz = module.zero();
    let sig: Vec<&[Elem]> = pm.ext.sigmas().iter().map(|s| s.table()).collect();
    let del: Vec<&[Elem]> = pm.ext.deltas().iter().map(|s| s.table()).collect();
    let sigmas = closure_monoid(ring.order(), &sig);
    let deltas = closure_monoid(ring.order(), &del);
    let ann = |x: Elem| ann_in_r(module, [x]).elements;
    for m in module.elements() {
        for a in ring.elements() {
            let ma = module.act(m, a);
            if ma == mz
                && (sigmas.elements().any(|g| module.act(m, g[a]) != mz) || deltas.elements().any(|g| module.act(m, g[a]) != mz))
            {
                return Some(format!("(i) fails at m={}, a={}", module.name(m), ring.name(a)));
            }
            for i in 0..pm.nvars() {
                if ann(ma) != ann(module.act(m, pm.ext.sigma(i).apply(a))) {
                    return Some(format!("(iii) fails at m={}, a={}, i={}", module.name(m), ring.name(a), i + 1));
                }
            }
            for b in ring.elements() {
                if module.act(ma, b) != mz {
                    continue;
                }
                let bad = deltas.elements().any(|g| module.act(ma, g[b]) != mz || module.act(module.act(m, g[a]), b) != mz);
                if bad {
                    return Some(format!("(ii) fails at m={}, a={}, b={}", module.name(m), ring.name(a), ring.name(b)));
                }
            }
        }
    }
    None
}

/// Every bounded kernel `{f : m·f = 0}` equals `ann_R(coefficients of m)^K`.
fn annihilator_correspondence(pm: &PolyModule, d: u32, limits: &Limits) -> Check {
    guard(pm, d, limits.max_space).map_err(|e| e.to_string())?;
    let table = PlainTable::new(pm, d, d);
    let k = table.m_monos.len();
    let bx = TupleBox { radix: pm.module.order(), len: k };
    let module = &pm.module;
    let bad = first_failure(bx, |m| {
        let ker = kernel(module, &table.columns(module, &[&m]));
        let expected = ann_in_r(module, m.iter().copied()).elements;
        (shape_of_tuples(&ker, k) != Some(expected)).then(String::new)
    });
    Ok(bad.is_none())
}

/// Compatible, reduced and so on: a torsion pair `m·h = 0` has `m·lc(h) = 0`.
fn torsion_leading(pm: &PolyModule, d: u32, limits: &Limits) -> Result<Option<String>, String> {
    guard(pm, d, limits.max_space).map_err(|e| e.to_string())?;
    let table = PlainTable::new(pm, d, d);
    let k = table.m_monos.len();
    let bx = TupleBox { radix: pm.module.order(), len: k };
    let module = &pm.module;
    let zero = pm.ring().zero();
    Ok(first_failure(bx, |m| {
        let mp = module_poly(pm, &table.m_monos, &m);
        kernel(module, &table.columns(module, &[&m])).into_iter().find_map(|f| {
            // monomials ascend, so the last nonzero coordinate is the leading one
            let lc = *f.iter().rev().find(|&&c| c != zero)?;
            (!pm.act_scalar(&mp, lc).is_zero()).then(|| format!("m={} kills an h with lc={}", pm.format(&mp), pm.ring().name(lc)))
        })
    }))
}

/// Runs every implication on one instance with degree bound `d`.
pub fn theorem_suite(pm: &PolyModule, d: u32, limits: &Limits) -> Vec<TheoremReport> {
    let f = Facts::new(pm, d, limits);
    let central = pm.ext.relations().all(|(_, rel)| pm.ring().is_central(rel.c));
    let bijective = Ok(pm.ext.is_bijective());
    let mut out = vec![reduced_compatible_equivalence(pm)];

    out.push(implication(
        "compatible-annihilator-identities",
        "(sigma,delta)-compatible => ma=0 gives m sigma(a)=0=m delta(a); mab=0 gives ma delta(b)=0=m delta(a) b; \
         ann(ma)=ann(m sigma_i(a))",
        vec![("sigma-compatible", f.get("sigma-compatible")), ("delta-compatible", f.get("delta-compatible"))],
        || Ok(compatible_identities(pm)),
    ));

    out.push(implication(
        "scalar-annihilation",
        "(sigma,delta)-compatible => for m in M<X>, mr=0 iff every coefficient m_i r=0",
        vec![("sigma-compatible", f.get("sigma-compatible")), ("delta-compatible", f.get("delta-compatible"))],
        || scalar_annihilation(pm, d, limits),
    ));

    out.push(implication(
        "reduced-transfer",
        "M reduced and (sigma,delta)-compatible => M<X> as an R-module satisfies the reduced and sigma-compatible conditions",
        vec![("reduced", f.get("reduced")), ("sigma-compatible", f.get("sigma-compatible")), ("delta-compatible", f.get("delta-compatible"))],
        || reduced_transfer(pm, d, limits),
    ));

    out.push(implication(
        "reduced-compatible-armendariz",
        "M reduced and (sigma,delta)-compatible, A bijective with central c_ij => M is skew-Armendariz",
        vec![
            ("reduced", f.get("reduced")),
            ("compatible", f.compatible()),
            ("bijective", bijective.clone()),
            ("central c_ij", Ok(central)),
        ],
        || Ok((!f.get("skew-armendariz")?).then(|| "skew-armendariz fails".into())),
    ));

    out.push(implication(
        "annihilator-correspondence",
        "(sigma,delta)-compatible => (skew-Armendariz iff ann_A(m) = ann_R(coefficients of m)A for every m)",
        vec![("compatible", f.compatible())],
        || equivalence(("skew-armendariz", f.get("skew-armendariz")), ("annihilator correspondence", annihilator_correspondence(pm, d, limits))),
    ));

    out.push(implication(
        "linear-armendariz-idempotent-stability",
        "linearly skew-Armendariz with R in M => sigma_i(e)=e and delta_i(e)=0 for every idempotent e",
        vec![("linearly-skew-armendariz", f.get("linearly-skew-armendariz")), ("R embeds in M", f.embedded())],
        || Ok((!f.get("idempotent-stability")?).then(|| "an idempotent moves".into())),
    ));

    out.push(implication(
        "idempotent-stability-contrapositive",
        "R in M and some idempotent moves => a linear skew-Armendariz counterexample exists",
        vec![
            ("R embeds in M", f.embedded()),
            ("idempotent-stability fails", f.get("idempotent-stability").map(|b| !b)),
        ],
        || Ok(f.get("linearly-skew-armendariz")?.then(|| "no linear counterexample found".into())),
    ));

    out.push(implication(
        "linear-armendariz-abelian",
        "linearly skew-Armendariz with R in M => M is abelian",
        vec![("linearly-skew-armendariz", f.get("linearly-skew-armendariz")), ("R embeds in M", f.embedded())],
        || Ok((!f.get("abelian")?).then(|| "abelian fails".into())),
    ));

    out.push(implication(
        "armendariz-abelian",
        "skew-Armendariz with R in M => M is abelian",
        vec![("skew-armendariz", f.get("skew-armendariz")), ("R embeds in M", f.embedded())],
        || Ok((!f.get("abelian")?).then(|| "abelian fails".into())),
    ));

    out.push(implication(
        "reduced-pp-pq",
        "M reduced => (M p.p. iff M p.q.-Baer)",
        vec![("reduced", f.get("reduced"))],
        || equivalence(("pp", f.get("pp")), ("pq-baer", f.get("pq-baer"))),
    ));

    let transfer_hyps = || {
        vec![
            ("compatible", f.compatible()),
            ("skew-armendariz", f.get("skew-armendariz")),
            ("R embeds in M", f.embedded()),
        ]
    };
    out.push(implication(
        "pp-transfer",
        "compatible skew-Armendariz with R in M => (M p.p. iff M<X> p.p.)",
        transfer_hyps(),
        || equivalence(("pp", f.get("pp")), ("poly-pp", f.get("poly-pp"))),
    ));
    out.push(implication(
        "baer-transfer",
        "compatible skew-Armendariz with R in M => (M Baer iff M<X> Baer)",
        transfer_hyps(),
        || equivalence(("baer", f.get("baer")), ("poly-baer", f.get("poly-baer"))),
    ));

    let torsion = torsion_hypotheses(pm);
    out.push(implication(
        "torsion-leading-coefficient",
        "M reduced and compatible, A bijective with central c_ij, mh=0 with h nonzero => m lc(h)=0",
        vec![("reduced, compatible, bijective, central", Ok(torsion.is_ok()))],
        || torsion_leading(pm, d, limits),
    ));

    out.push(implication(
        "quasi-baer-transfer",
        "(sigma,delta)-compatible and bijective => (M quasi-Baer iff M<X> quasi-Baer), (M p.q.-Baer iff M<X> p.q.-Baer), \
         and quasi-Baer M is skew quasi-Armendariz",
        vec![("compatible", f.compatible()), ("bijective", bijective)],
        || {
            if let Some(v) = equivalence(("quasi-baer", f.get("quasi-baer")), ("poly-quasi-baer", f.get("poly-quasi-baer")))? {
                return Ok(Some(v));
            }
            if let Some(v) = equivalence(("pq-baer", f.get("pq-baer")), ("poly-pq-baer", f.get("poly-pq-baer")))? {
                return Ok(Some(v));
            }
            if f.get("quasi-baer")? && !f.get("skew-quasi-armendariz")? {
                return Ok(Some("quasi-Baer but skew-quasi-armendariz fails".into()));
            }
            Ok(None)
        },
    ));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finring::{swap_table, FiniteRing};
    use crate::skewpbw::{RawPresentation, SkewPbw};

    fn status_of<'a>(reports: &'a [TheoremReport], id: &str) -> &'a TheoremStatus {
        &reports.iter().find(|r| r.id == id).unwrap().status
    }

    #[test]
    fn z3_two_variables_confirms_everything() {
        let pm = PolyModule::regular(SkewPbw::validate(RawPresentation::commutative(FiniteRing::integers_mod(3).unwrap(), 2)).unwrap());
        let reports = theorem_suite(&pm, 2, &Limits::default());
        for r in &reports {
            assert!(!matches!(r.status, TheoremStatus::Violation(_)), "{}: {:?}", r.id, r.status);
        }
        assert_eq!(status_of(&reports, "reduced-compatible-armendariz"), &TheoremStatus::Confirmed);
        assert_eq!(status_of(&reports, "pp-transfer"), &TheoremStatus::Confirmed);
    }

    #[test]
    fn swap_confirms_the_contrapositive() {
        let mut raw = RawPresentation::commutative(FiniteRing::product_of_cyclic(2, 2).unwrap(), 1);
        raw.sigmas = vec![swap_table(2)];
        let pm = PolyModule::regular(SkewPbw::validate(raw).unwrap());
        let reports = theorem_suite(&pm, 2, &Limits::default());
        assert_eq!(status_of(&reports, "idempotent-stability-contrapositive"), &TheoremStatus::Confirmed);
        assert!(matches!(status_of(&reports, "linear-armendariz-idempotent-stability"), TheoremStatus::HypothesisNotMet(_)));
        assert!(reports.iter().all(|r| !matches!(r.status, TheoremStatus::Violation(_))));
    }
}
