use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::RwLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::consistency::{check_consistency_with, Certificate, ConsistencyOutcome, ConsistencyWitness};
use super::SkewPoly;
use crate::finring::{validate_endomorphism, validate_sigma_derivation, Elem, FiniteRing, MapError, RingMap};
use crate::monomial::{MonomialOrder, MultiIndex};

pub const DEFAULT_CONSISTENCY_BOUND: u32 = 4;
pub const DEFAULT_SEED: u64 = 0x5eed;
const MAX_VARIABLES: usize = 8;

/// Right-hand side of `x_j x_i = c·x_i x_j + Σ_k r^k x_k + r⁰` for `i < j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuadRelation {
    pub c: Elem,
    pub constant: Elem,
    /// `linear[k]` is the coefficient of `x_{k+1}`.
    pub linear: Vec<Elem>,
}

impl QuadRelation {
    pub fn commuting(ring: &FiniteRing, n: usize, c: Elem) -> Self {
        QuadRelation { c, constant: ring.zero(), linear: vec![ring.zero(); n] }
    }
}

/// Flags the input asserts; each asserted flag is verified against the computed one.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claims {
    pub quasi_commutative: Option<bool>,
    pub bijective: Option<bool>,
}

/// Unvalidated presentation data. Variable indices are 0-based.
#[derive(Debug, Clone)]
pub struct RawPresentation {
    pub ring: FiniteRing,
    pub n: usize,
    pub sigmas: Vec<Vec<Elem>>,
    pub deltas: Vec<Vec<Elem>>,
    /// `(i, j, relation)` with `i < j`.
    pub relations: Vec<(usize, usize, QuadRelation)>,
    pub order: Option<MonomialOrder>,
    pub claims: Claims,
    pub consistency_bound: u32,
    pub seed: u64,
}

impl RawPresentation {
    /// Presentation with identity `σ`, zero `δ`, `c = 1` and no lower terms.
    pub fn commutative(ring: FiniteRing, n: usize) -> Self {
        let id: Vec<Elem> = ring.elements().collect();
        let zero = vec![ring.zero(); ring.order()];
        let relations = (0..n)
            .flat_map(|j| (0..j).map(move |i| (i, j)))
            .map(|(i, j)| (i, j, QuadRelation::commuting(&ring, n, ring.one())))
            .collect();
        RawPresentation {
            n,
            sigmas: vec![id; n],
            deltas: vec![zero; n],
            relations,
            order: None,
            claims: Claims::default(),
            consistency_bound: DEFAULT_CONSISTENCY_BOUND,
            seed: DEFAULT_SEED,
            ring,
        }
    }
}

/// Errors from presentation validation. Variable numbers are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("a presentation needs at least one variable")]
    NoVariables,
    #[error("{0} variables requested; at most {MAX_VARIABLES} are supported")]
    TooManyVariables(usize),
    #[error("expected {expected} {what} maps, got {got}")]
    MapCount { what: &'static str, expected: usize, got: usize },
    #[error("sigma_{i} is not an injective endomorphism: {source}")]
    NotEndomorphism { i: usize, source: MapError },
    #[error("delta_{i} is not a sigma_{i}-derivation: {source}")]
    NotSigmaDerivation { i: usize, source: MapError },
    #[error("no relation given for x{j}*x{i}")]
    MissingRelation { i: usize, j: usize },
    #[error("relation ({i}, {j}) is invalid: {reason}")]
    BadRelation { i: usize, j: usize, reason: String },
    #[error("c_{{{i},{j}}} is zero")]
    ZeroCij { i: usize, j: usize },
    #[error("claimed quasi-commutative, but {0}")]
    QuasiCommutativeViolation(String),
    #[error("claimed bijective, but {0} is not invertible")]
    BijectiveViolation(String),
    #[error("order does not match the number of variables")]
    OrderMismatch,
    #[error("presentation is inconsistent: {0}")]
    InconsistentPresentation(Box<ConsistencyWitness>),
}

type CoeffCache = RwLock<HashMap<(MultiIndex, Elem), SkewPoly>>;
type VarCache = RwLock<HashMap<(MultiIndex, usize), SkewPoly>>;

/// A validated skew PBW extension.
pub struct SkewPbw {
    ring: FiniteRing,
    n: usize,
    sigmas: Vec<RingMap>,
    deltas: Vec<RingMap>,
    relations: BTreeMap<(usize, usize), QuadRelation>,
    order: MonomialOrder,
    quasi_commutative: bool,
    bijective: bool,
    certificate: Certificate,
    seed: u64,
    pub(super) coeff_cache: CoeffCache,
    pub(super) var_cache: VarCache,
}

impl Clone for SkewPbw {
    fn clone(&self) -> Self {
        SkewPbw {
            ring: self.ring.clone(),
            n: self.n,
            sigmas: self.sigmas.clone(),
            deltas: self.deltas.clone(),
            relations: self.relations.clone(),
            order: self.order.clone(),
            quasi_commutative: self.quasi_commutative,
            bijective: self.bijective,
            certificate: self.certificate.clone(),
            seed: self.seed,
            coeff_cache: RwLock::new(HashMap::new()),
            var_cache: RwLock::new(HashMap::new()),
        }
    }
}

impl fmt::Debug for SkewPbw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SkewPbw")
            .field("ring", &self.ring.label())
            .field("n", &self.n)
            .field("quasi_commutative", &self.quasi_commutative)
            .field("bijective", &self.bijective)
            .field("certificate", &self.certificate)
            .finish()
    }
}

impl PartialEq for SkewPbw {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring
            && self.n == other.n
            && self.sigmas == other.sigmas
            && self.deltas == other.deltas
            && self.relations == other.relations
            && self.order == other.order
    }
}

impl SkewPbw {
    /// Validates a presentation, computes its flags and certifies consistency.
    pub fn validate(raw: RawPresentation) -> Result<SkewPbw, PresentationError> {
        let ext = Self::validate_structure(raw.clone())?;
        match check_consistency_with(&ext, raw.consistency_bound, raw.seed) {
            ConsistencyOutcome::Certified(cert) => Ok(SkewPbw { certificate: cert, ..ext }),
            ConsistencyOutcome::Witness(w) => Err(PresentationError::InconsistentPresentation(w)),
        }
    }

    /// Structural validation only; the returned value carries an empty certificate.
    pub fn validate_structure(raw: RawPresentation) -> Result<SkewPbw, PresentationError> {
        let RawPresentation { ring, n, sigmas, deltas, relations, order, claims, seed, .. } = raw;
        if n == 0 {
            return Err(PresentationError::NoVariables);
        }
        if n > MAX_VARIABLES {
            return Err(PresentationError::TooManyVariables(n));
        }
        for (what, got) in [("sigma", sigmas.len()), ("delta", deltas.len())] {
            if got != n {
                return Err(PresentationError::MapCount { what, expected: n, got });
            }
        }
        let sigmas = sigmas
            .into_iter()
            .enumerate()
            .map(|(i, t)| validate_endomorphism(&ring, t).map_err(|source| PresentationError::NotEndomorphism { i: i + 1, source }))
            .collect::<Result<Vec<_>, _>>()?;
        let deltas = deltas
            .into_iter()
            .enumerate()
            .map(|(i, t)| {
                validate_sigma_derivation(&ring, &sigmas[i], t)
                    .map_err(|source| PresentationError::NotSigmaDerivation { i: i + 1, source })
            })
            .collect::<Result<Vec<_>, _>>()?;

        let q = ring.order();
        let mut rels = BTreeMap::new();
        for (i, j, rel) in relations {
            let bad = |reason: String| PresentationError::BadRelation { i: i + 1, j: j + 1, reason };
            if i >= j || j >= n {
                return Err(bad("need 1 <= i < j <= n".into()));
            }
            if rel.linear.len() != n {
                return Err(bad(format!("expected {n} linear coefficients, got {}", rel.linear.len())));
            }
            if rel.c >= q || rel.constant >= q || rel.linear.iter().any(|&r| r >= q) {
                return Err(bad("coefficient outside the ring".into()));
            }
            if rel.c == ring.zero() {
                return Err(PresentationError::ZeroCij { i: i + 1, j: j + 1 });
            }
            if rels.insert((i, j), rel).is_some() {
                return Err(bad("given twice".into()));
            }
        }
        for j in 0..n {
            for i in 0..j {
                if !rels.contains_key(&(i, j)) {
                    return Err(PresentationError::MissingRelation { i: i + 1, j: j + 1 });
                }
            }
        }

        let order = order.unwrap_or_else(|| MonomialOrder::deglex(n));
        if order.nvars() != n {
            return Err(PresentationError::OrderMismatch);
        }

        let qc_reason = deltas
            .iter()
            .position(|d| !d.is_zero_map(&ring))
            .map(|i| format!("delta_{} is nonzero", i + 1))
            .or_else(|| {
                rels.iter()
                    .find(|(_, r)| r.constant != ring.zero() || r.linear.iter().any(|&x| x != ring.zero()))
                    .map(|((i, j), _)| format!("relation ({}, {}) has lower-order terms", i + 1, j + 1))
            });
        let quasi_commutative = qc_reason.is_none();
        if claims.quasi_commutative == Some(true) {
            if let Some(reason) = qc_reason {
                return Err(PresentationError::QuasiCommutativeViolation(reason));
            }
        }
        // injective maps on a finite set are bijective, so only the c_{i,j} can fail
        let bij_reason = rels
            .iter()
            .find(|(_, r)| !ring.is_two_sided_unit(r.c))
            .map(|((i, j), _)| format!("c_{{{},{}}}", i + 1, j + 1));
        let bijective = bij_reason.is_none();
        if claims.bijective == Some(true) {
            if let Some(what) = bij_reason {
                return Err(PresentationError::BijectiveViolation(what));
            }
        }

        Ok(SkewPbw {
            ring,
            n,
            sigmas,
            deltas,
            relations: rels,
            order,
            quasi_commutative,
            bijective,
            certificate: Certificate { bound: 0, overlaps_checked: 0, fuzz_triples: 0 },
            seed,
            coeff_cache: RwLock::new(HashMap::new()),
            var_cache: RwLock::new(HashMap::new()),
        })
    }

    pub fn ring(&self) -> &FiniteRing {
        &self.ring
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn sigma(&self, i: usize) -> &RingMap {
        &self.sigmas[i]
    }

    pub fn delta(&self, i: usize) -> &RingMap {
        &self.deltas[i]
    }

    pub fn sigmas(&self) -> &[RingMap] {
        &self.sigmas
    }

    pub fn deltas(&self) -> &[RingMap] {
        &self.deltas
    }

    /// Relation for the pair `i < j` (0-based).
    pub fn relation(&self, i: usize, j: usize) -> &QuadRelation {
        &self.relations[&(i, j)]
    }

    pub fn relations(&self) -> impl Iterator<Item = ((usize, usize), &QuadRelation)> {
        self.relations.iter().map(|(k, v)| (*k, v))
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    /// Copy of this extension under a different monomial order.
    pub fn with_order(&self, order: MonomialOrder) -> Result<SkewPbw, PresentationError> {
        if order.nvars() != self.n {
            return Err(PresentationError::OrderMismatch);
        }
        let mut ext = self.clone();
        ext.order = order;
        Ok(ext)
    }

    pub fn is_quasi_commutative(&self) -> bool {
        self.quasi_commutative
    }

    pub fn is_bijective(&self) -> bool {
        self.bijective
    }

    pub fn certificate(&self) -> &Certificate {
        &self.certificate
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// `σ^α(r) = σ₁^{α₁}(⋯σₙ^{αₙ}(r))`.
    pub fn sigma_power(&self, alpha: &MultiIndex, r: Elem) -> Elem {
        let mut v = r;
        for i in (0..self.n).rev() {
            for _ in 0..alpha.0[i] {
                v = self.sigmas[i].apply(v);
            }
        }
        v
    }
}
