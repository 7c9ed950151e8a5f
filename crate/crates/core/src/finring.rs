//! Finite unital rings given by Cayley tables.
//!
//! Elements are dense indices `0..q`. Every constructor, including the
//! shorthands, expands to explicit tables and goes through the same exhaustive
//! axiom scan, so a [`FiniteRing`] value is always a genuine ring.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::Limits;

/// Index of a ring or module element.
pub type Elem = usize;

/// A subset of a finite ring or module, stored as a bitmask.
///
/// Rings and modules are capped at 64 elements, so a single word suffices.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct ElemSet(pub u64);

impl ElemSet {
    pub const EMPTY: ElemSet = ElemSet(0);

    pub fn full(order: usize) -> Self {
        if order >= 64 {
            ElemSet(u64::MAX)
        } else {
            ElemSet((1u64 << order) - 1)
        }
    }

    pub fn singleton(e: Elem) -> Self {
        ElemSet(1u64 << e)
    }

    pub fn contains(&self, e: Elem) -> bool {
        e < 64 && self.0 & (1u64 << e) != 0
    }

    pub fn insert(&mut self, e: Elem) -> bool {
        let fresh = !self.contains(e);
        self.0 |= 1u64 << e;
        fresh
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn intersection(&self, other: &ElemSet) -> ElemSet {
        ElemSet(self.0 & other.0)
    }

    pub fn union(&self, other: &ElemSet) -> ElemSet {
        ElemSet(self.0 | other.0)
    }

    pub fn is_subset(&self, other: &ElemSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Elements in increasing index order.
    pub fn iter(&self) -> impl Iterator<Item = Elem> + '_ {
        let bits = self.0;
        (0..64).filter(move |i| bits & (1u64 << i) != 0)
    }

    pub fn to_vec(&self) -> Vec<Elem> {
        self.iter().collect()
    }
}

impl FromIterator<Elem> for ElemSet {
    fn from_iter<I: IntoIterator<Item = Elem>>(iter: I) -> Self {
        let mut s = ElemSet::EMPTY;
        for e in iter {
            s.insert(e);
        }
        s
    }
}

impl fmt::Debug for ElemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("ring has {order} elements, above the configured cap of {cap}")]
    TooLarge { order: usize, cap: usize },
    #[error("ring tables are empty")]
    Empty,
    #[error("table `{table}` is not square of size {order}")]
    BadShape { table: &'static str, order: usize },
    #[error("table `{table}` entry at ({a}, {b}) is {value}, outside 0..{order}")]
    EntryOutOfRange { table: &'static str, a: Elem, b: Elem, value: Elem, order: usize },
    #[error("expected {expected} element names, got {got}")]
    BadNames { expected: usize, got: usize },
    #[error("addition is not an abelian group: {witness}")]
    BadGroup { witness: String },
    #[error("multiplication is not associative at ({a}, {b}, {c})")]
    NonAssociative { a: Elem, b: Elem, c: Elem },
    #[error("multiplication does not distribute over addition at ({a}, {b}, {c})")]
    NonDistributive { a: Elem, b: Elem, c: Elem },
    #[error("multiplication has no two-sided identity")]
    NoIdentity,
    #[error("unsupported shorthand parameters: {0}")]
    BadShorthand(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MapError {
    #[error("map table has length {got}, ring has {order} elements")]
    BadLength { got: usize, order: usize },
    #[error("map value {value} at {at} is outside the ring")]
    OutOfRange { at: Elem, value: Elem },
    #[error("map is not additive at ({a}, {b})")]
    NotAdditive { a: Elem, b: Elem },
    #[error("map is not multiplicative at ({a}, {b})")]
    NotMultiplicative { a: Elem, b: Elem },
    #[error("map does not send one to one")]
    NotUnital,
    #[error("map is not injective: {a} and {b} have the same image")]
    NotInjective { a: Elem, b: Elem },
    #[error("twisted Leibniz rule fails at ({a}, {b})")]
    LeibnizFail { a: Elem, b: Elem },
    #[error("base map of a sigma-derivation must be an endomorphism")]
    BaseNotEndomorphism,
}

/// Raw Cayley tables, before validation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingTables {
    pub add: Vec<Vec<Elem>>,
    pub mul: Vec<Vec<Elem>>,
    #[serde(default)]
    pub label: String,
    #[serde(default)]
    pub names: Option<Vec<String>>,
}

/// A validated finite unital ring.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteRing {
    order: usize,
    add: Vec<Elem>,
    mul: Vec<Elem>,
    neg: Vec<Elem>,
    zero: Elem,
    one: Elem,
    label: String,
    names: Vec<String>,
}

impl fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteRing")
            .field("label", &self.label)
            .field("order", &self.order)
            .finish()
    }
}

fn check_square(table: &[Vec<Elem>], name: &'static str, q: usize) -> Result<Vec<Elem>, RingError> {
    if table.len() != q || table.iter().any(|row| row.len() != q) {
        return Err(RingError::BadShape { table: name, order: q });
    }
    let mut flat = Vec::with_capacity(q * q);
    for (a, row) in table.iter().enumerate() {
        for (b, &v) in row.iter().enumerate() {
            if v >= q {
                return Err(RingError::EntryOutOfRange { table: name, a, b, value: v, order: q });
            }
            flat.push(v);
        }
    }
    Ok(flat)
}

/// Validates Cayley tables against the ring axioms, scanning exhaustively.
///
/// On failure the first violated axiom is reported with a witness.
pub fn validate_ring(tables: RingTables) -> Result<FiniteRing, RingError> {
    validate_ring_with(tables, &Limits::default())
}

pub fn validate_ring_with(tables: RingTables, limits: &Limits) -> Result<FiniteRing, RingError> {
    let q = tables.add.len();
    if q == 0 {
        return Err(RingError::Empty);
    }
    let cap = limits.max_ring_order.min(64);
    if q > cap {
        return Err(RingError::TooLarge { order: q, cap });
    }
    if q > limits.warn_ring_order {
        log::warn!("ring `{}` has {} elements; exhaustive deciders scale badly past {}", tables.label, q, limits.warn_ring_order);
    }
    let add = check_square(&tables.add, "add", q)?;
    let mul = check_square(&tables.mul, "mul", q)?;
    let names = match tables.names {
        Some(names) if names.len() != q => return Err(RingError::BadNames { expected: q, got: names.len() }),
        Some(names) => names,
        None => (0..q).map(|i| i.to_string()).collect(),
    };
    let s = |a: Elem, b: Elem| add[a * q + b];
    let p = |a: Elem, b: Elem| mul[a * q + b];

    // additive group
    let zero = (0..q)
        .find(|&z| (0..q).all(|a| s(z, a) == a && s(a, z) == a))
        .ok_or_else(|| RingError::BadGroup { witness: "no additive identity".into() })?;
    for a in 0..q {
        for b in 0..q {
            if s(a, b) != s(b, a) {
                return Err(RingError::BadGroup { witness: format!("{a}+{b} != {b}+{a}") });
            }
        }
    }
    for a in 0..q {
        for b in 0..q {
            for c in 0..q {
                if s(s(a, b), c) != s(a, s(b, c)) {
                    return Err(RingError::BadGroup { witness: format!("addition not associative at ({a}, {b}, {c})") });
                }
            }
        }
    }
    let neg = (0..q)
        .map(|a| {
            (0..q)
                .find(|&b| s(a, b) == zero)
                .ok_or_else(|| RingError::BadGroup { witness: format!("{a} has no additive inverse") })
        })
        .collect::<Result<Vec<Elem>, _>>()?;

    for a in 0..q {
        for b in 0..q {
            for c in 0..q {
                if p(p(a, b), c) != p(a, p(b, c)) {
                    return Err(RingError::NonAssociative { a, b, c });
                }
            }
        }
    }
    for a in 0..q {
        for b in 0..q {
            for c in 0..q {
                if p(a, s(b, c)) != s(p(a, b), p(a, c)) || p(s(a, b), c) != s(p(a, c), p(b, c)) {
                    return Err(RingError::NonDistributive { a, b, c });
                }
            }
        }
    }
    let one = (0..q)
        .find(|&u| (0..q).all(|a| p(u, a) == a && p(a, u) == a))
        .ok_or(RingError::NoIdentity)?;

    Ok(FiniteRing { order: q, add, mul, neg, zero, one, label: tables.label, names })
}

impl FiniteRing {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn zero(&self) -> Elem {
        self.zero
    }

    pub fn one(&self) -> Elem {
        self.one
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.add[a * self.order + b]
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a * self.order + b]
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.neg[a]
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn is_zero(&self, a: Elem) -> bool {
        a == self.zero
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.order
    }

    /// `k`-fold sum of the identity.
    pub fn from_int(&self, k: u64) -> Elem {
        let mut acc = self.zero;
        for _ in 0..(k % (self.characteristic() as u64)) {
            acc = self.add(acc, self.one);
        }
        acc
    }

    /// Additive order of `1`.
    pub fn characteristic(&self) -> usize {
        let mut acc = self.one;
        let mut k = 1;
        while acc != self.zero {
            acc = self.add(acc, self.one);
            k += 1;
        }
        k
    }

    pub fn name(&self, e: Elem) -> &str {
        &self.names[e]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Looks an element up by name, ignoring whitespace.
    pub fn element_by_name(&self, name: &str) -> Option<Elem> {
        let key: String = name.chars().filter(|c| !c.is_whitespace()).collect();
        self.names.iter().position(|n| n.chars().filter(|c| !c.is_whitespace()).eq(key.chars()))
    }

    pub fn tables(&self) -> RingTables {
        let q = self.order;
        RingTables {
            add: self.add.chunks(q).map(|r| r.to_vec()).collect(),
            mul: self.mul.chunks(q).map(|r| r.to_vec()).collect(),
            label: self.label.clone(),
            names: Some(self.names.clone()),
        }
    }

    /// The multiplicative idempotents, `{e : e·e = e}`.
    pub fn idempotents(&self) -> Vec<Elem> {
        self.elements().filter(|&e| self.mul(e, e) == e).collect()
    }

    /// Elements with a left inverse, `{u : ∃v, v·u = 1}`.
    pub fn left_invertibles(&self) -> Vec<Elem> {
        self.elements()
            .filter(|&u| self.elements().any(|v| self.mul(v, u) == self.one))
            .collect()
    }

    pub fn is_two_sided_unit(&self, u: Elem) -> bool {
        self.elements().any(|v| self.mul(v, u) == self.one && self.mul(u, v) == self.one)
    }

    pub fn is_central(&self, c: Elem) -> bool {
        self.elements().all(|r| self.mul(c, r) == self.mul(r, c))
    }

    pub fn is_commutative(&self) -> bool {
        self.elements().all(|c| self.is_central(c))
    }

    /// `e·R`; for an idempotent this is already a right ideal.
    pub fn principal_right(&self, e: Elem) -> ElemSet {
        self.elements().map(|r| self.mul(e, r)).collect()
    }

    /// Smallest right ideal containing `gens`.
    pub fn right_ideal_closure(&self, gens: &[Elem]) -> ElemSet {
        let mut set: ElemSet = std::iter::once(self.zero).collect();
        let mut queue: Vec<Elem> = gens.to_vec();
        while let Some(g) = queue.pop() {
            if !set.insert(g) {
                continue;
            }
            for r in self.elements() {
                let gr = self.mul(g, r);
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
}

// ----------------------------------------------------------------------------
// shorthand constructors

fn tables_from_fns(
    q: usize,
    label: String,
    names: Vec<String>,
    add: impl Fn(Elem, Elem) -> Elem,
    mul: impl Fn(Elem, Elem) -> Elem,
) -> RingTables {
    RingTables {
        add: (0..q).map(|a| (0..q).map(|b| add(a, b)).collect()).collect(),
        mul: (0..q).map(|a| (0..q).map(|b| mul(a, b)).collect()).collect(),
        label,
        names: Some(names),
    }
}

impl FiniteRing {
    /// `Z/nZ`.
    pub fn integers_mod(n: usize) -> Result<FiniteRing, RingError> {
        if n < 2 {
            return Err(RingError::BadShorthand(format!("Z{n}: modulus must be at least 2")));
        }
        let names = (0..n).map(|i| i.to_string()).collect();
        validate_ring(tables_from_fns(n, format!("Z{n}"), names, |a, b| (a + b) % n, |a, b| (a * b) % n))
    }

    /// `Z/aZ × Z/bZ`; the pair `(i, j)` has index `i + a·j`.
    pub fn product_of_cyclic(a: usize, b: usize) -> Result<FiniteRing, RingError> {
        if a < 2 || b < 2 {
            return Err(RingError::BadShorthand(format!("Z{a}xZ{b}: moduli must be at least 2")));
        }
        let q = a * b;
        let split = move |e: Elem| (e % a, e / a);
        let join = move |i: usize, j: usize| i + a * j;
        let names = (0..q).map(|e| {
            let (i, j) = split(e);
            format!("({i},{j})")
        });
        validate_ring(tables_from_fns(
            q,
            format!("Z{a}xZ{b}"),
            names.collect(),
            |x, y| {
                let ((i, j), (k, l)) = (split(x), split(y));
                join((i + k) % a, (j + l) % b)
            },
            |x, y| {
                let ((i, j), (k, l)) = (split(x), split(y));
                join((i * k) % a, (j * l) % b)
            },
        ))
    }

    /// `Z/pZ[y]/(y²)`; the element `a + b·y` has index `a + p·b`.
    pub fn dual_numbers(p: usize) -> Result<FiniteRing, RingError> {
        if p < 2 {
            return Err(RingError::BadShorthand(format!("Z{p}[y]/(y^2): modulus must be at least 2")));
        }
        let q = p * p;
        let split = move |e: Elem| (e % p, e / p);
        let join = move |a: usize, b: usize| a + p * b;
        let names = (0..q)
            .map(|e| {
                let (a, b) = split(e);
                let ypart = if b == 1 { "y".to_string() } else { format!("{b}y") };
                match (a, b) {
                    (a, 0) => a.to_string(),
                    (0, _) => ypart,
                    (a, _) => format!("({a}+{ypart})"),
                }
            })
            .collect();
        validate_ring(tables_from_fns(
            q,
            format!("Z{p}[y]/(y^2)"),
            names,
            |x, y| {
                let ((a, b), (c, d)) = (split(x), split(y));
                join((a + c) % p, (b + d) % p)
            },
            |x, y| {
                let ((a, b), (c, d)) = (split(x), split(y));
                join((a * c) % p, (a * d + b * c) % p)
            },
        ))
    }

    /// `k×k` upper-triangular matrices over `Z/pZ`.
    ///
    /// Upper entries are read row-major; entry `t` is digit `t` (least
    /// significant first) of the index in base `p`. Names look like `[a,b;c]`.
    pub fn upper_triangular(k: usize, p: usize) -> Result<FiniteRing, RingError> {
        if k == 0 || p < 2 {
            return Err(RingError::BadShorthand(format!("UT{k}(Z{p}): need k >= 1 and p >= 2")));
        }
        let slots: Vec<(usize, usize)> = (0..k).flat_map(|i| (i..k).map(move |j| (i, j))).collect();
        let digits = slots.len();
        let q = p.checked_pow(digits as u32).filter(|&q| q <= 64).ok_or_else(|| {
            RingError::BadShorthand(format!("UT{k}(Z{p}) has more than 64 elements"))
        })?;
        let decode = |e: Elem| -> Vec<Vec<usize>> {
            let mut m = vec![vec![0; k]; k];
            let mut rest = e;
            for &(i, j) in &slots {
                m[i][j] = rest % p;
                rest /= p;
            }
            m
        };
        let encode = |m: &[Vec<usize>]| -> Elem {
            slots.iter().rev().fold(0, |acc, &(i, j)| acc * p + m[i][j])
        };
        let names = (0..q)
            .map(|e| {
                let m = decode(e);
                let rows: Vec<String> = (0..k)
                    .map(|i| (i..k).map(|j| m[i][j].to_string()).collect::<Vec<_>>().join(","))
                    .collect();
                format!("[{}]", rows.join(";"))
            })
            .collect();
        validate_ring(tables_from_fns(
            q,
            format!("UT{k}(Z{p})"),
            names,
            |x, y| {
                let (a, b) = (decode(x), decode(y));
                let s: Vec<Vec<usize>> = (0..k).map(|i| (0..k).map(|j| (a[i][j] + b[i][j]) % p).collect()).collect();
                encode(&s)
            },
            |x, y| {
                let (a, b) = (decode(x), decode(y));
                let s: Vec<Vec<usize>> = (0..k)
                    .map(|i| (0..k).map(|j| (0..k).map(|t| a[i][t] * b[t][j]).sum::<usize>() % p).collect())
                    .collect();
                encode(&s)
            },
        ))
    }
}

/// Coordinate swap `(i, j) ↦ (j, i)` on `Z/aZ × Z/aZ`.
pub fn swap_table(a: usize) -> Vec<Elem> {
    (0..a * a).map(|e| (e / a) + a * (e % a)).collect()
}

/// `a + b·y ↦ b` on `Z/pZ[y]/(y²)`: the formal derivative, an identity-derivation.
pub fn dual_derivative_table(p: usize) -> Vec<Elem> {
    (0..p * p).map(|e| e / p).collect()
}

// ----------------------------------------------------------------------------
// structure maps

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MapKind {
    /// Injective (hence bijective) ring endomorphism, with its inverse table.
    Endomorphism { inverse: Vec<Elem> },
    /// Additive map with `δ(ab) = σ(a)δ(b) + δ(a)b` for the recorded `σ`.
    SigmaDerivation { sigma: Vec<Elem> },
}

/// A tabulated self-map of a ring, validated as an endomorphism or a σ-derivation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingMap {
    table: Vec<Elem>,
    kind: MapKind,
}

impl RingMap {
    #[inline]
    pub fn apply(&self, a: Elem) -> Elem {
        self.table[a]
    }

    pub fn table(&self) -> &[Elem] {
        &self.table
    }

    pub fn kind(&self) -> &MapKind {
        &self.kind
    }

    pub fn is_identity(&self) -> bool {
        self.table.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn is_zero_map(&self, ring: &FiniteRing) -> bool {
        self.table.iter().all(|&v| v == ring.zero())
    }

    pub fn inverse(&self) -> Option<&[Elem]> {
        match &self.kind {
            MapKind::Endomorphism { inverse } => Some(inverse),
            MapKind::SigmaDerivation { .. } => None,
        }
    }

    pub fn identity(ring: &FiniteRing) -> RingMap {
        let table: Vec<Elem> = ring.elements().collect();
        RingMap { kind: MapKind::Endomorphism { inverse: table.clone() }, table }
    }

    pub fn zero_derivation(ring: &FiniteRing, sigma: &RingMap) -> RingMap {
        RingMap {
            table: vec![ring.zero(); ring.order()],
            kind: MapKind::SigmaDerivation { sigma: sigma.table.clone() },
        }
    }
}

fn check_table(ring: &FiniteRing, table: &[Elem]) -> Result<(), MapError> {
    if table.len() != ring.order() {
        return Err(MapError::BadLength { got: table.len(), order: ring.order() });
    }
    if let Some((at, &value)) = table.iter().enumerate().find(|(_, &v)| v >= ring.order()) {
        return Err(MapError::OutOfRange { at, value });
    }
    Ok(())
}

fn check_additive(ring: &FiniteRing, table: &[Elem]) -> Result<(), MapError> {
    for a in ring.elements() {
        for b in ring.elements() {
            if table[ring.add(a, b)] != ring.add(table[a], table[b]) {
                return Err(MapError::NotAdditive { a, b });
            }
        }
    }
    Ok(())
}

/// Validates an injective ring endomorphism.
pub fn validate_endomorphism(ring: &FiniteRing, table: Vec<Elem>) -> Result<RingMap, MapError> {
    check_table(ring, &table)?;
    check_additive(ring, &table)?;
    for a in ring.elements() {
        for b in ring.elements() {
            if table[ring.mul(a, b)] != ring.mul(table[a], table[b]) {
                return Err(MapError::NotMultiplicative { a, b });
            }
        }
    }
    if table[ring.one()] != ring.one() {
        return Err(MapError::NotUnital);
    }
    let mut inverse = vec![usize::MAX; ring.order()];
    for a in ring.elements() {
        let img = table[a];
        if inverse[img] != usize::MAX {
            return Err(MapError::NotInjective { a: inverse[img], b: a });
        }
        inverse[img] = a;
    }
    Ok(RingMap { table, kind: MapKind::Endomorphism { inverse } })
}

/// Validates a σ-derivation for an already validated endomorphism `sigma`.
pub fn validate_sigma_derivation(ring: &FiniteRing, sigma: &RingMap, table: Vec<Elem>) -> Result<RingMap, MapError> {
    if !matches!(sigma.kind, MapKind::Endomorphism { .. }) {
        return Err(MapError::BaseNotEndomorphism);
    }
    check_table(ring, &table)?;
    check_additive(ring, &table)?;
    for a in ring.elements() {
        for b in ring.elements() {
            let lhs = table[ring.mul(a, b)];
            let rhs = ring.add(ring.mul(sigma.apply(a), table[b]), ring.mul(table[a], b));
            if lhs != rhs {
                return Err(MapError::LeibnizFail { a, b });
            }
        }
    }
    Ok(RingMap { table, kind: MapKind::SigmaDerivation { sigma: sigma.table.clone() } })
}

// ----------------------------------------------------------------------------
// composition closure

/// All finite compositions of a family of self-maps, identity included.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapMonoid {
    generators: Vec<Vec<Elem>>,
    elements: BTreeSet<Vec<Elem>>,
}

impl MapMonoid {
    pub fn generators(&self) -> &[Vec<Elem>] {
        &self.generators
    }

    /// Elements in lexicographic order of their tables.
    pub fn elements(&self) -> impl Iterator<Item = &[Elem]> {
        self.elements.iter().map(|v| v.as_slice())
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, table: &[Elem]) -> bool {
        self.elements.contains(table)
    }
}

/// Closes `maps` under composition; terminates since there are at most `q^q` self-maps.
pub fn closure_monoid(order: usize, maps: &[&[Elem]]) -> MapMonoid {
    let identity: Vec<Elem> = (0..order).collect();
    let generators: Vec<Vec<Elem>> = maps.iter().map(|m| m.to_vec()).collect();
    let mut elements = BTreeSet::new();
    elements.insert(identity.clone());
    let mut frontier = vec![identity];
    while let Some(h) = frontier.pop() {
        for g in &generators {
            let composed: Vec<Elem> = h.iter().map(|&x| g[x]).collect();
            if elements.insert(composed.clone()) {
                frontier.push(composed);
            }
        }
    }
    MapMonoid { generators, elements }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z4_tables() -> RingTables {
        FiniteRing::integers_mod(4).unwrap().tables()
    }

    #[test]
    fn shorthand_rings_validate() {
        for (ring, q) in [
            (FiniteRing::integers_mod(4), 4),
            (FiniteRing::product_of_cyclic(2, 2), 4),
            (FiniteRing::dual_numbers(2), 4),
            (FiniteRing::upper_triangular(2, 2), 8),
            (FiniteRing::upper_triangular(3, 2), 64),
        ] {
            assert_eq!(ring.unwrap().order(), q);
        }
    }

    #[test]
    fn corrupted_z4_is_rejected_with_witness() {
        let mut t = z4_tables();
        t.mul[2][3] = 1;
        match validate_ring(t) {
            Err(RingError::NonAssociative { a, b, c }) | Err(RingError::NonDistributive { a, b, c }) => {
                assert!([a, b, c].iter().all(|&x| x < 4));
            }
            other => panic!("expected an axiom witness, got {other:?}"),
        }
    }

    #[test]
    fn shape_and_identity_errors() {
        let mut t = z4_tables();
        t.add[1].pop();
        assert_eq!(validate_ring(t), Err(RingError::BadShape { table: "add", order: 4 }));
        // the zero ring multiplication has no identity in a nonzero group
        let mut t = z4_tables();
        t.mul = vec![vec![0; 4]; 4];
        assert_eq!(validate_ring(t), Err(RingError::NoIdentity));
        let mut t = z4_tables();
        t.add[0][0] = 1;
        assert!(matches!(validate_ring(t), Err(RingError::BadGroup { .. })));
    }

    #[test]
    fn ring_cap_is_enforced() {
        let limits = Limits { max_ring_order: 3, ..Limits::default() };
        assert_eq!(validate_ring_with(z4_tables(), &limits), Err(RingError::TooLarge { order: 4, cap: 3 }));
    }

    #[test]
    fn endomorphism_examples() {
        let z4 = FiniteRing::integers_mod(4).unwrap();
        assert!(validate_endomorphism(&z4, (0..4).collect()).is_ok());
        let doubled: Vec<Elem> = (0..4).map(|a| 2 * a % 4).collect();
        assert_eq!(validate_endomorphism(&z4, doubled), Err(MapError::NotMultiplicative { a: 1, b: 1 }));

        let k = FiniteRing::product_of_cyclic(2, 2).unwrap();
        let swap = validate_endomorphism(&k, swap_table(2)).unwrap();
        assert_eq!(swap.inverse().unwrap(), swap.table());
    }

    #[test]
    fn non_injective_endomorphism_is_rejected() {
        // Z2×Z2 → Z2×Z2, (i, j) ↦ (i, i)
        let k = FiniteRing::product_of_cyclic(2, 2).unwrap();
        let diag: Vec<Elem> = (0..4).map(|e| (e % 2) * 3).collect();
        assert!(matches!(validate_endomorphism(&k, diag), Err(MapError::NotInjective { .. })));
    }

    #[test]
    fn sigma_derivation_examples() {
        let d = FiniteRing::dual_numbers(2).unwrap();
        let id = RingMap::identity(&d);
        assert!(validate_sigma_derivation(&d, &id, dual_derivative_table(2)).is_ok());
        assert!(validate_sigma_derivation(&d, &id, vec![0; 4]).is_ok());

        let z4 = FiniteRing::integers_mod(4).unwrap();
        let id4 = RingMap::identity(&z4);
        assert_eq!(validate_sigma_derivation(&z4, &id4, (0..4).collect()), Err(MapError::LeibnizFail { a: 1, b: 1 }));
    }

    #[test]
    fn idempotents_and_units() {
        let z4 = FiniteRing::integers_mod(4).unwrap();
        assert_eq!(z4.idempotents(), vec![0, 1]);
        assert_eq!(z4.left_invertibles(), vec![1, 3]);
        let z3 = FiniteRing::integers_mod(3).unwrap();
        assert_eq!(z3.idempotents(), vec![0, 1]);
        let z5 = FiniteRing::integers_mod(5).unwrap();
        assert_eq!(z5.left_invertibles(), vec![1, 2, 3, 4]);
        let k = FiniteRing::product_of_cyclic(2, 2).unwrap();
        assert_eq!(k.idempotents(), vec![0, 1, 2, 3]);
        assert_eq!(k.left_invertibles(), vec![k.element_by_name("(1,1)").unwrap()]);
    }

    #[test]
    fn centrality() {
        let z4 = FiniteRing::integers_mod(4).unwrap();
        assert!(z4.elements().all(|c| z4.is_central(c)));
        let ut = FiniteRing::upper_triangular(2, 2).unwrap();
        assert!(ut.is_central(ut.one()));
        let e12 = ut.element_by_name("[0,1;0]").unwrap();
        assert!(!ut.is_central(e12));
    }

    #[test]
    fn closure_examples() {
        let k = FiniteRing::product_of_cyclic(2, 2).unwrap();
        let id: Vec<Elem> = k.elements().collect();
        assert_eq!(closure_monoid(4, &[&id]).len(), 1);
        let swap = swap_table(2);
        let m = closure_monoid(4, &[&swap]);
        assert_eq!(m.len(), 2);
        assert!(m.contains(&swap) && m.contains(&id));

        let delta = dual_derivative_table(2);
        let m = closure_monoid(4, &[&id, &delta]);
        // id, δ, and δ∘δ = 0
        assert_eq!(m.len(), 3);
        assert!(m.contains(&[0, 0, 0, 0]));
    }

    #[test]
    fn closure_is_idempotent() {
        let delta = dual_derivative_table(2);
        let m = closure_monoid(4, &[&delta]);
        let tables: Vec<&[Elem]> = m.elements().collect();
        let again = closure_monoid(4, &tables);
        assert_eq!(m.elements().collect::<Vec<_>>(), again.elements().collect::<Vec<_>>());
    }

    #[test]
    fn dual_number_names_round_trip() {
        let d = FiniteRing::dual_numbers(2).unwrap();
        assert_eq!(d.names(), &["0", "1", "y", "(1+y)"]);
        assert_eq!(d.element_by_name("( 1 + y )"), Some(3));
        assert_eq!(d.from_int(3), 1);
    }

    #[test]
    fn right_ideal_closure_in_z4() {
        let z4 = FiniteRing::integers_mod(4).unwrap();
        assert_eq!(z4.right_ideal_closure(&[2]).to_vec(), vec![0, 2]);
        assert_eq!(z4.right_ideal_closure(&[3]).len(), 4);
    }
}
