//! Finite right modules and the polynomial module `M⟨X⟩` over an extension.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::finring::{Elem, ElemSet, FiniteRing};
use crate::monomial::MultiIndex;
use crate::skewpbw::{CoeffLayer, PolyError, SkewPbw, SkewPoly, Terms};
use crate::Limits;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModuleError {
    #[error("module tables are empty")]
    Empty,
    #[error("module has {order} elements, above the cap of {cap}")]
    TooLarge { order: usize, cap: usize },
    #[error("module table `{table}` has the wrong shape")]
    BadShape { table: &'static str },
    #[error("module table `{table}` has an entry outside the module at ({a}, {b})")]
    EntryOutOfRange { table: &'static str, a: usize, b: usize },
    #[error("expected {expected} element names, got {got}")]
    BadNames { expected: usize, got: usize },
    #[error("module addition is not an abelian group: {witness}")]
    BadGroup { witness: String },
    #[error("action is not associative: (m·r)·s != m·(rs) at m={m}, r={r}, s={s}")]
    ActionNotAssociative { m: Elem, r: Elem, s: Elem },
    #[error("m·1 != m at m={m}")]
    NotUnital { m: Elem },
    #[error("action is not biadditive: {witness}")]
    NotBiadditive { witness: String },
    #[error("quotient generators must lie in the ring")]
    BadGenerators,
    #[error("{0}")]
    BadEmbedding(String),
    #[error("submodule enumeration refused: module has {order} elements, cap is {cap}")]
    SubmoduleCap { order: usize, cap: usize },
    #[error("subset is not a submodule: {0}")]
    NotSubmodule(String),
}

/// Raw tables of a right module: `add[m][m']` and `action[m][r] = m·r`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleTables {
    pub add: Vec<Vec<Elem>>,
    pub action: Vec<Vec<Elem>>,
    #[serde(default)]
    pub label: String,
    #[serde(default)]
    pub names: Option<Vec<String>>,
}

/// A validated finite right `R`-module.
#[derive(Clone, PartialEq, Eq)]
pub struct RightModule {
    order: usize,
    ring_order: usize,
    add: Vec<Elem>,
    action: Vec<Elem>,
    neg: Vec<Elem>,
    zero: Elem,
    label: String,
    names: Vec<String>,
}

impl fmt::Debug for RightModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RightModule").field("label", &self.label).field("order", &self.order).finish()
    }
}

/// Validates module tables against `ring`, scanning every axiom exhaustively.
pub fn validate_module(ring: &FiniteRing, tables: ModuleTables) -> Result<RightModule, ModuleError> {
    let k = tables.add.len();
    let q = ring.order();
    if k == 0 {
        return Err(ModuleError::Empty);
    }
    if k > 64 {
        return Err(ModuleError::TooLarge { order: k, cap: 64 });
    }
    if tables.add.iter().any(|r| r.len() != k) {
        return Err(ModuleError::BadShape { table: "add" });
    }
    if tables.action.len() != k || tables.action.iter().any(|r| r.len() != q) {
        return Err(ModuleError::BadShape { table: "action" });
    }
    for (table, rows) in [("add", &tables.add), ("action", &tables.action)] {
        for (a, row) in rows.iter().enumerate() {
            if let Some(b) = row.iter().position(|&v| v >= k) {
                return Err(ModuleError::EntryOutOfRange { table, a, b });
            }
        }
    }
    let names = match tables.names {
        Some(n) if n.len() != k => return Err(ModuleError::BadNames { expected: k, got: n.len() }),
        Some(n) => n,
        None => (0..k).map(|i| i.to_string()).collect(),
    };
    let add: Vec<Elem> = tables.add.concat();
    let action: Vec<Elem> = tables.action.concat();
    let s = |a: Elem, b: Elem| add[a * k + b];
    let act = |m: Elem, r: Elem| action[m * q + r];

    let zero = (0..k)
        .find(|&z| (0..k).all(|a| s(z, a) == a && s(a, z) == a))
        .ok_or_else(|| ModuleError::BadGroup { witness: "no zero element".into() })?;
    for a in 0..k {
        for b in 0..k {
            if s(a, b) != s(b, a) {
                return Err(ModuleError::BadGroup { witness: format!("{a}+{b} != {b}+{a}") });
            }
            for c in 0..k {
                if s(s(a, b), c) != s(a, s(b, c)) {
                    return Err(ModuleError::BadGroup { witness: format!("addition not associative at ({a}, {b}, {c})") });
                }
            }
        }
    }
    let neg = (0..k)
        .map(|a| {
            (0..k)
                .find(|&b| s(a, b) == zero)
                .ok_or_else(|| ModuleError::BadGroup { witness: format!("{a} has no negative") })
        })
        .collect::<Result<Vec<Elem>, _>>()?;

    for m in 0..k {
        if act(m, ring.one()) != m {
            return Err(ModuleError::NotUnital { m });
        }
    }
    for m in 0..k {
        for r in ring.elements() {
            for t in ring.elements() {
                if act(act(m, r), t) != act(m, ring.mul(r, t)) {
                    return Err(ModuleError::ActionNotAssociative { m, r, s: t });
                }
                if act(m, ring.add(r, t)) != s(act(m, r), act(m, t)) {
                    return Err(ModuleError::NotBiadditive { witness: format!("m·(r+s) at m={m}, r={r}, s={t}") });
                }
            }
        }
    }
    for m in 0..k {
        for n in 0..k {
            for r in ring.elements() {
                if act(s(m, n), r) != s(act(m, r), act(n, r)) {
                    return Err(ModuleError::NotBiadditive { witness: format!("(m+n)·r at m={m}, n={n}, r={r}") });
                }
            }
        }
    }
    Ok(RightModule { order: k, ring_order: q, add, action, neg, zero, label: tables.label, names })
}

impl RightModule {
    /// `R` as a right module over itself.
    pub fn regular(ring: &FiniteRing) -> RightModule {
        let t = ring.tables();
        validate_module(
            ring,
            ModuleTables { add: t.add, action: t.mul, label: format!("{} (regular)", ring.label()), names: t.names },
        )
        .expect("a ring is a module over itself")
    }

    /// `R/I` for the right ideal `I` generated by `gens`; cosets are named by their least representative.
    pub fn quotient(ring: &FiniteRing, gens: &[Elem]) -> Result<RightModule, ModuleError> {
        if gens.iter().any(|&g| g >= ring.order()) {
            return Err(ModuleError::BadGenerators);
        }
        let ideal = ring.right_ideal_closure(gens);
        // class representative = least element of the coset
        let rep_of = |a: Elem| ideal.iter().map(|i| ring.add(a, i)).min().expect("ideal contains zero");
        let reps: Vec<Elem> = ring.elements().filter(|&a| rep_of(a) == a).collect();
        let index = |a: Elem| reps.binary_search(&rep_of(a)).expect("representative listed");
        let add = reps.iter().map(|&a| reps.iter().map(|&b| index(ring.add(a, b))).collect()).collect();
        let action = reps.iter().map(|&a| ring.elements().map(|r| index(ring.mul(a, r))).collect()).collect();
        let gen_names: Vec<&str> = gens.iter().map(|&g| ring.name(g)).collect();
        validate_module(
            ring,
            ModuleTables {
                add,
                action,
                label: format!("{}/({})", ring.label(), gen_names.join(",")),
                names: Some(reps.iter().map(|&a| ring.name(a).to_string()).collect()),
            },
        )
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn ring_order(&self) -> usize {
        self.ring_order
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn zero(&self) -> Elem {
        self.zero
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.order
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.add[a * self.order + b]
    }

    pub fn neg(&self, a: Elem) -> Elem {
        self.neg[a]
    }

    /// `m·r`.
    #[inline]
    pub fn act(&self, m: Elem, r: Elem) -> Elem {
        self.action[m * self.ring_order + r]
    }

    pub fn name(&self, m: Elem) -> &str {
        &self.names[m]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn element_by_name(&self, name: &str) -> Option<Elem> {
        let key: String = name.chars().filter(|c| !c.is_whitespace()).collect();
        self.names.iter().position(|n| n.chars().filter(|c| !c.is_whitespace()).eq(key.chars()))
    }

    pub fn tables(&self) -> ModuleTables {
        ModuleTables {
            add: self.add.chunks(self.order).map(|r| r.to_vec()).collect(),
            action: self.action.chunks(self.ring_order).map(|r| r.to_vec()).collect(),
            label: self.label.clone(),
            names: Some(self.names.clone()),
        }
    }

    /// `Ma = {m·a : m ∈ M}`.
    pub fn times_scalar_image(&self, a: Elem) -> ElemSet {
        self.elements().map(|m| self.act(m, a)).collect()
    }

    /// Smallest submodule containing `gens`.
    pub fn submodule_closure(&self, gens: impl IntoIterator<Item = Elem>) -> ElemSet {
        let mut set = ElemSet::singleton(self.zero);
        let mut queue: Vec<Elem> = gens.into_iter().collect();
        while let Some(g) = queue.pop() {
            if !set.insert(g) {
                continue;
            }
            for r in 0..self.ring_order {
                let gr = self.act(g, r);
                if !set.contains(gr) {
                    queue.push(gr);
                }
            }
            for h in set.to_vec() {
                let s = self.add(g, h);
                if !set.contains(s) {
                    queue.push(s);
                }
            }
        }
        set
    }

    /// `mR`, which is closed under addition because `m·r + m·s = m·(r+s)`.
    pub fn cyclic_submodule(&self, m: Elem) -> Submodule {
        Submodule { elements: self.submodule_closure([m]) }
    }

    /// Every submodule, as joins of cyclic submodules, sorted by size then bitmask.
    pub fn all_submodules(&self, limits: &Limits) -> Result<Vec<Submodule>, ModuleError> {
        if self.order > limits.max_submodule_order {
            return Err(ModuleError::SubmoduleCap { order: self.order, cap: limits.max_submodule_order });
        }
        let mut seen: BTreeSet<ElemSet> = BTreeSet::new();
        let zero = ElemSet::singleton(self.zero);
        seen.insert(zero);
        let mut frontier = vec![zero];
        while let Some(s) = frontier.pop() {
            for m in self.elements().filter(|&m| !s.contains(m)) {
                let bigger = self.submodule_closure(s.iter().chain([m]));
                if seen.insert(bigger) {
                    frontier.push(bigger);
                }
            }
        }
        let mut out: Vec<Submodule> = seen.into_iter().map(|elements| Submodule { elements }).collect();
        out.sort_by_key(|s| (s.elements.len(), s.elements));
        Ok(out)
    }

    pub fn submodule(&self, elements: ElemSet) -> Result<Submodule, ModuleError> {
        if self.submodule_closure(elements.iter()) != elements {
            return Err(ModuleError::NotSubmodule(format!("{elements:?} is not closed")));
        }
        Ok(Submodule { elements })
    }
}

impl CoeffLayer for RightModule {
    fn zero(&self) -> Elem {
        self.zero
    }

    fn add(&self, a: Elem, b: Elem) -> Elem {
        RightModule::add(self, a, b)
    }

    fn scale(&self, m: Elem, r: Elem) -> Elem {
        self.act(m, r)
    }
}

/// A subset of a module closed under addition and the action.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Submodule {
    pub elements: ElemSet,
}

/// An element `Σ m_α x^α` of `M⟨X⟩`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ModulePoly {
    n: usize,
    #[serde(with = "crate::skewpbw::terms_serde")]
    terms: Terms,
}

impl fmt::Debug for ModulePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

impl ModulePoly {
    pub fn zero(n: usize) -> Self {
        ModulePoly { n, terms: Terms::new() }
    }

    pub fn from_terms(n: usize, zero: Elem, terms: impl IntoIterator<Item = (MultiIndex, Elem)>) -> Self {
        ModulePoly { n, terms: terms.into_iter().filter(|(_, c)| *c != zero).collect() }
    }

    pub fn terms(&self) -> &Terms {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn coeff(&self, alpha: &MultiIndex) -> Option<Elem> {
        self.terms.get(alpha).copied()
    }

    /// The constant coefficient `m₀`, if nonzero.
    pub fn constant_coeff(&self) -> Option<Elem> {
        self.terms.get(&MultiIndex::zero(self.n)).copied()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|a| a.degree()).max()
    }
}

/// An extension together with a module over its base ring.
#[derive(Debug, Clone)]
pub struct PolyModule {
    pub ext: SkewPbw,
    pub module: RightModule,
    /// A right-module embedding `R → M`, when one is designated.
    pub embedding: Option<Vec<Elem>>,
}

impl PolyModule {
    pub fn new(ext: SkewPbw, module: RightModule, embedding: Option<Vec<Elem>>) -> Result<Self, ModuleError> {
        let ring = ext.ring();
        if module.ring_order() != ring.order() {
            return Err(ModuleError::BadShape { table: "action" });
        }
        if let Some(e) = &embedding {
            check_embedding(ring, &module, e)?;
        }
        Ok(PolyModule { ext, module, embedding })
    }

    /// Regular module with the identity embedding.
    pub fn regular(ext: SkewPbw) -> Self {
        let module = RightModule::regular(ext.ring());
        let id = ext.ring().elements().collect();
        PolyModule { ext, module, embedding: Some(id) }
    }

    pub fn ring(&self) -> &FiniteRing {
        self.ext.ring()
    }

    pub fn nvars(&self) -> usize {
        self.ext.nvars()
    }

    pub fn check(&self, m: &ModulePoly) -> Result<(), PolyError> {
        if m.n != self.nvars() || m.terms.keys().any(|a| a.len() != self.nvars()) {
            return Err(PolyError::PresentationMismatch("module polynomial has the wrong number of variables".into()));
        }
        if m.terms.values().any(|&v| v >= self.module.order() || v == self.module.zero()) {
            return Err(PolyError::PresentationMismatch("coefficient is not a stored module element".into()));
        }
        Ok(())
    }

    /// `m·x^α`.
    pub fn mono(&self, m: Elem, alpha: MultiIndex) -> ModulePoly {
        ModulePoly::from_terms(self.nvars(), self.module.zero(), [(alpha, m)])
    }

    pub fn constant(&self, m: Elem) -> ModulePoly {
        self.mono(m, MultiIndex::zero(self.nvars()))
    }

    pub fn zero_poly(&self) -> ModulePoly {
        ModulePoly::zero(self.nvars())
    }

    /// The action of the extension on `M⟨X⟩`.
    ///
    /// Each coefficient `m_α` is carried along the same rewriting as a ring
    /// coefficient would be, with the ring product replaced by the action.
    pub fn act(&self, m: &ModulePoly, f: &SkewPoly) -> ModulePoly {
        ModulePoly { n: self.nvars(), terms: self.ext.right_mul_terms(&self.module, &m.terms, f) }
    }

    pub fn try_act(&self, m: &ModulePoly, f: &SkewPoly) -> Result<ModulePoly, PolyError> {
        self.check(m)?;
        self.ext.check_poly(f)?;
        Ok(self.act(m, f))
    }

    pub fn act_scalar(&self, m: &ModulePoly, r: Elem) -> ModulePoly {
        ModulePoly { n: self.nvars(), terms: self.ext.times_coeff_terms(&self.module, &m.terms, r) }
    }

    pub fn add(&self, a: &ModulePoly, b: &ModulePoly) -> ModulePoly {
        ModulePoly { n: self.nvars(), terms: crate::skewpbw::poly_add_terms(&self.module, &a.terms, &b.terms) }
    }

    pub fn neg(&self, a: &ModulePoly) -> ModulePoly {
        ModulePoly { n: self.nvars(), terms: a.terms.iter().map(|(k, &v)| (k.clone(), self.module.neg(v))).collect() }
    }

    /// Plain-text rendering, leading term first.
    pub fn format(&self, m: &ModulePoly) -> String {
        self.ext.format_terms(&m.terms, |c| self.module.name(c).to_string(), None)
    }
}

fn check_embedding(ring: &FiniteRing, module: &RightModule, e: &[Elem]) -> Result<(), ModuleError> {
    let bad = |s: String| Err(ModuleError::BadEmbedding(s));
    if e.len() != ring.order() || e.iter().any(|&v| v >= module.order()) {
        return bad(format!("embedding must list {} module elements", ring.order()));
    }
    for r in ring.elements() {
        for s in ring.elements() {
            if e[ring.add(r, s)] != module.add(e[r], e[s]) {
                return bad(format!("embedding is not additive at ({r}, {s})"));
            }
            if e[ring.mul(r, s)] != module.act(e[r], s) {
                return bad(format!("embedding is not R-linear at ({r}, {s})"));
            }
        }
    }
    let image: ElemSet = e.iter().copied().collect();
    if image.len() != ring.order() {
        return bad("embedding is not injective".into());
    }
    Ok(())
}
