//! Right annihilators and idempotent generation.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::finring::{Elem, ElemSet, FiniteRing};
use crate::polymodule::{ModulePoly, PolyModule, RightModule};
use crate::search::{kernel, saturating_pow, skew_poly, PlainTable, SearchError};
use crate::skewpbw::SkewPoly;
use crate::Limits;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdealError {
    #[error("subset is not closed under addition at ({0}, {1})")]
    NotAdditive(Elem, Elem),
    #[error("subset is not closed under right multiplication at ({0}, {1})")]
    NotRightClosed(Elem, Elem),
    #[error("subset does not contain zero")]
    MissingZero,
}

/// A right ideal stored as an explicit element set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RightIdeal {
    pub elements: ElemSet,
}

impl RightIdeal {
    pub fn new(ring: &FiniteRing, elements: ElemSet) -> Result<Self, IdealError> {
        if !elements.contains(ring.zero()) {
            return Err(IdealError::MissingZero);
        }
        for a in elements.iter() {
            for b in elements.iter() {
                if !elements.contains(ring.add(a, b)) {
                    return Err(IdealError::NotAdditive(a, b));
                }
            }
            for r in ring.elements() {
                if !elements.contains(ring.mul(a, r)) {
                    return Err(IdealError::NotRightClosed(a, r));
                }
            }
        }
        Ok(RightIdeal { elements })
    }

    pub fn contains(&self, r: Elem) -> bool {
        self.elements.contains(r)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn intersection(&self, other: &RightIdeal) -> RightIdeal {
        RightIdeal { elements: self.elements.intersection(&other.elements) }
    }
}

/// Result of searching for an idempotent generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum IdempotentGen {
    Found(Elem),
    NotFound,
}

/// `{r : x·r = 0 for all x ∈ xs}`.
pub fn ann_in_r(module: &RightModule, xs: impl IntoIterator<Item = Elem>) -> RightIdeal {
    let mut set = ElemSet::full(module.ring_order());
    for x in xs {
        set = set.intersection(&ann_of_element(module, x));
    }
    RightIdeal { elements: set }
}

pub(crate) fn ann_of_element(module: &RightModule, x: Elem) -> ElemSet {
    (0..module.ring_order()).filter(|&r| module.act(x, r) == module.zero()).collect()
}

/// The first idempotent `e`, in index order, with `I = eR`.
pub fn is_idempotent_generated(ring: &FiniteRing, ideal: &RightIdeal) -> IdempotentGen {
    ring.idempotents()
        .into_iter()
        .find(|&e| ring.principal_right(e) == ideal.elements)
        .map_or(IdempotentGen::NotFound, IdempotentGen::Found)
}

/// Whether `m·f = 0` in `M⟨X⟩`.
pub fn annihilates(pm: &PolyModule, m: &ModulePoly, f: &SkewPoly) -> bool {
    pm.act(m, f).is_zero()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnnError {
    #[error(transparent)]
    Search(#[from] SearchError),
}

/// Every `f` supported in degree at most `d` with `m·f = 0` for all `m ∈ ms`,
/// sorted by coefficient tuple over the ascending monomials.
pub fn ann_in_a_bounded(pm: &PolyModule, ms: &[ModulePoly], d: u32, limits: &Limits) -> Result<Vec<SkewPoly>, AnnError> {
    let monos = pm.ext.order().enumerate_upto(d);
    let space = saturating_pow(pm.ring().order() as u128, monos.len() as u128);
    if space > limits.ann_max_space {
        return Err(SearchError::SearchSpaceTooLarge { space, limit: limits.ann_max_space }.into());
    }
    let dm = ms.iter().filter_map(|m| m.degree()).max().unwrap_or(0);
    let table = PlainTable::new(pm, dm, d);
    let dense: Vec<Vec<Elem>> = ms
        .iter()
        .map(|m| table.m_monos.iter().map(|a| m.coeff(a).unwrap_or(pm.module.zero())).collect())
        .collect();
    let refs: Vec<&[Elem]> = dense.iter().map(|v| v.as_slice()).collect();
    let cols = if refs.is_empty() {
        // no constraints: a zero-width system
        (0..monos.len()).map(|_| vec![Vec::new(); pm.ring().order()]).collect()
    } else {
        table.columns(&pm.module, &refs)
    };
    Ok(kernel(&pm.module, &cols).iter().map(|f| skew_poly(pm, &table.f_monos, f)).collect())
}
