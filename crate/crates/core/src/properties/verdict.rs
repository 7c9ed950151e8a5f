use serde::{Deserialize, Serialize};

use crate::annihilator::{ann_in_r, is_idempotent_generated, IdempotentGen};
use crate::finring::{closure_monoid, Elem};
use crate::monomial::MultiIndex;
use crate::polymodule::{ModulePoly, PolyModule};
use crate::skewpbw::SkewPoly;

use super::deciders::{kernel_shape, sandwich_kernel_of};

/// Outcome of a single property check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", content = "detail", rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    /// No counterexample among candidates of degree at most the given bound.
    HoldsUpToBound(u32),
    Fails(Box<Witness>),
}

impl Verdict {
    /// True for `Holds` and `HoldsUpToBound`.
    pub fn holds(&self) -> bool {
        !matches!(self, Verdict::Fails(_))
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::Fails(w) => Some(w),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyVerdict {
    pub property: String,
    pub verdict: Verdict,
    /// Degree bound, for properties quantifying over polynomials.
    pub bound: Option<u32>,
}

impl PropertyVerdict {
    pub fn new(property: &str, verdict: Verdict, bound: Option<u32>) -> Self {
        PropertyVerdict { property: property.to_string(), verdict, bound }
    }

    pub fn holds(&self) -> bool {
        self.verdict.holds()
    }
}

/// Which family of annihilators a failing ideal was taken from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AnnScope {
    /// `ann_R({m})`.
    Element,
    /// `ann_R(mR)`.
    Cyclic,
    /// `ann_R(N)` for the submodule generated by the listed elements.
    Submodule,
    /// `ann_R(X)` for the listed subset.
    Subset,
}

/// How a bounded annihilator in the extension is computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PolyAnnMode {
    /// `{f : m·f = 0}`.
    Plain,
    /// `{f : m·r·x^γ·f = 0 for all r and |γ| ≤ d}`, standing in for `m·A·f = 0`.
    Sandwich,
}

/// A replayable counterexample.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// `m·a = 0` but `common ≠ 0` lies in `mR ∩ Ma`.
    NotReduced { m: Elem, a: Elem, common: Elem },
    /// Exactly one of `m·r`, `m·g(r)` vanishes, for `g` in the closure of the sigmas.
    SigmaIncompatible { m: Elem, r: Elem, map: Vec<Elem> },
    /// `m·r = 0` but `m·g(r) ≠ 0`, for `g` in the closure of the deltas.
    DeltaIncompatible { m: Elem, r: Elem, map: Vec<Elem> },
    /// `m·f = 0` but `m₀·b_at ≠ 0`.
    Armendariz { m: ModulePoly, f: SkewPoly, at: MultiIndex },
    /// `m·r'·x^γ·f = 0` for all `r'` and `|γ| ≤ bound`, but `m_i x^i · r · x^t · b_j x^j ≠ 0`.
    QuasiArmendariz { m: ModulePoly, f: SkewPoly, i: MultiIndex, j: MultiIndex, r: Elem, t: MultiIndex, bound: u32 },
    /// The annihilator is not `eR` for any idempotent `e`.
    NotIdempotentGenerated { scope: AnnScope, generators: Vec<Elem>, ideal: Vec<Elem> },
    /// The bounded annihilator of `generators` in the extension is not `eA` for an idempotent `e ∈ R`.
    PolyAnnihilator { mode: PolyAnnMode, generators: Vec<ModulePoly>, bound: u32, detail: String },
    /// `m·r·e ≠ m·e·r`.
    NotAbelian { m: Elem, r: Elem, e: Elem },
    /// `σ_i(e) ≠ e` or `δ_i(e) ≠ 0`; `i` is 1-based.
    UnstableIdempotent { e: Elem, i: usize, sigma_e: Elem, delta_e: Elem },
}

impl Witness {
    /// Re-evaluates the violation from scratch.
    pub fn replays(&self, pm: &PolyModule) -> bool {
        let ring = pm.ring();
        let module = &pm.module;
        let mz = module.zero();
        match self {
            Witness::NotReduced { m, a, common } => {
                module.act(*m, *a) == mz
                    && *common != mz
                    && module.cyclic_submodule(*m).elements.contains(*common)
                    && module.times_scalar_image(*a).contains(*common)
            }
            Witness::SigmaIncompatible { m, r, map } => {
                let gens: Vec<&[Elem]> = pm.ext.sigmas().iter().map(|s| s.table()).collect();
                closure_monoid(ring.order(), &gens).contains(map)
                    && (module.act(*m, *r) == mz) != (module.act(*m, map[*r]) == mz)
            }
            Witness::DeltaIncompatible { m, r, map } => {
                let gens: Vec<&[Elem]> = pm.ext.deltas().iter().map(|s| s.table()).collect();
                closure_monoid(ring.order(), &gens).contains(map)
                    && module.act(*m, *r) == mz
                    && module.act(*m, map[*r]) != mz
            }
            Witness::Armendariz { m, f, at } => {
                let m0 = m.constant_coeff().unwrap_or(mz);
                let b = f.coeff(at).unwrap_or(ring.zero());
                pm.act(m, f).is_zero() && module.act(m0, b) != mz
            }
            Witness::QuasiArmendariz { m, f, i, j, r, t, bound } => {
                let hyp = pm.ext.order().enumerate_upto(*bound).into_iter().all(|g| {
                    ring.elements().all(|s| pm.act(m, &pm.ext.mul(&pm.ext.monomial(s, g.clone()), f)).is_zero())
                });
                let (Some(mi), Some(bj)) = (m.coeff(i), f.coeff(j)) else {
                    return false;
                };
                let left = pm.mono(mi, i.clone());
                let right = pm.ext.mul(&pm.ext.monomial(*r, t.clone()), &pm.ext.monomial(bj, j.clone()));
                hyp && !pm.act(&left, &right).is_zero()
            }
            Witness::NotIdempotentGenerated { scope, generators, ideal } => {
                let xs: Vec<Elem> = match scope {
                    AnnScope::Element | AnnScope::Subset => generators.clone(),
                    AnnScope::Cyclic => generators.iter().flat_map(|&g| module.cyclic_submodule(g).elements.to_vec()).collect(),
                    AnnScope::Submodule => module.submodule_closure(generators.iter().copied()).to_vec(),
                };
                let ann = ann_in_r(module, xs);
                ann.elements.to_vec() == *ideal && is_idempotent_generated(ring, &ann) == IdempotentGen::NotFound
            }
            Witness::PolyAnnihilator { mode, generators, bound, .. } => {
                let kernel = match mode {
                    PolyAnnMode::Plain => {
                        match crate::annihilator::ann_in_a_bounded(pm, generators, *bound, &crate::Limits::default()) {
                            Ok(fs) => fs,
                            Err(_) => return false,
                        }
                    }
                    PolyAnnMode::Sandwich => sandwich_kernel_of(pm, generators, *bound),
                };
                match kernel_shape(pm, &kernel, *bound) {
                    None => true,
                    Some(ideal) => is_idempotent_generated(ring, &ideal) == IdempotentGen::NotFound,
                }
            }
            Witness::NotAbelian { m, r, e } => {
                ring.mul(*e, *e) == *e && module.act(module.act(*m, *r), *e) != module.act(module.act(*m, *e), *r)
            }
            Witness::UnstableIdempotent { e, i, .. } => {
                let i0 = i - 1;
                ring.mul(*e, *e) == *e
                    && i0 < pm.nvars()
                    && (pm.ext.sigma(i0).apply(*e) != *e || pm.ext.delta(i0).apply(*e) != ring.zero())
            }
        }
    }

    /// Human-readable rendering with element names.
    pub fn render(&self, pm: &PolyModule) -> String {
        let ring = pm.ring();
        let module = &pm.module;
        let rn = |r: Elem| ring.name(r).to_string();
        let mn = |m: Elem| module.name(m).to_string();
        let mono = |a: &MultiIndex| format_monomial(a);
        let set = |s: &[Elem], f: &dyn Fn(Elem) -> String| format!("{{{}}}", s.iter().map(|&x| f(x)).collect::<Vec<_>>().join(", "));
        match self {
            Witness::NotReduced { m, a, common } => {
                format!("m={} a={}: m*a=0 but {} lies in mR and in Ma", mn(*m), rn(*a), mn(*common))
            }
            Witness::SigmaIncompatible { m, r, map } => format!(
                "m={} r={} g(r)={}: m*r={} but m*g(r)={}",
                mn(*m),
                rn(*r),
                rn(map[*r]),
                mn(module.act(*m, *r)),
                mn(module.act(*m, map[*r]))
            ),
            Witness::DeltaIncompatible { m, r, map } => {
                format!("m={} r={} g(r)={}: m*r=0 but m*g(r)={}", mn(*m), rn(*r), rn(map[*r]), mn(module.act(*m, map[*r])))
            }
            Witness::Armendariz { m, f, at } => {
                let m0 = m.constant_coeff().unwrap_or(module.zero());
                let b = f.coeff(at).unwrap_or(ring.zero());
                format!(
                    "m={} f={}: m*f=0 but m0*b={}*{}={}",
                    pm.format(m),
                    pm.ext.format(f),
                    mn(m0),
                    rn(b),
                    mn(module.act(m0, b))
                )
            }
            Witness::QuasiArmendariz { m, f, i, j, r, t, bound } => format!(
                "m={} f={}: m*A*f=0 up to degree {} but the product through {} * {} * {} * {} is nonzero",
                pm.format(m),
                pm.ext.format(f),
                bound,
                mono(i),
                rn(*r),
                mono(t),
                mono(j)
            ),
            Witness::NotIdempotentGenerated { scope, generators, ideal } => format!(
                "{:?} annihilator of {} is {}, not generated by an idempotent",
                scope,
                set(generators, &mn),
                set(ideal, &rn)
            ),
            Witness::PolyAnnihilator { mode, generators, bound, detail } => {
                let gens: Vec<String> = generators.iter().map(|g| pm.format(g)).collect();
                format!("{mode:?} annihilator of {{{}}} up to degree {bound}: {detail}", gens.join(", "))
            }
            Witness::NotAbelian { m, r, e } => format!(
                "m={} r={} e={}: m*r*e={} but m*e*r={}",
                mn(*m),
                rn(*r),
                rn(*e),
                mn(module.act(module.act(*m, *r), *e)),
                mn(module.act(module.act(*m, *e), *r))
            ),
            Witness::UnstableIdempotent { e, i, sigma_e, delta_e } => {
                format!("e={}: sigma_{i}(e)={} and delta_{i}(e)={}", rn(*e), rn(*sigma_e), rn(*delta_e))
            }
        }
    }
}

/// `x1^2*x3`, or `1` for the zero exponent.
pub fn format_monomial(a: &MultiIndex) -> String {
    let parts: Vec<String> = a
        .0
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| if e == 1 { format!("x{}", i + 1) } else { format!("x{}^{}", i + 1, e) })
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}
