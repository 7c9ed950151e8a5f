use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{PolyError, SkewPbw};
use crate::finring::{Elem, FiniteRing};
use crate::monomial::MultiIndex;

/// Sparse coefficient map over standard monomials. Zero coefficients are never stored.
pub type Terms = BTreeMap<MultiIndex, Elem>;

/// An element of the extension in the left `R`-basis of standard monomials.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SkewPoly {
    n: usize,
    #[serde(with = "terms_serde")]
    terms: Terms,
}

/// Serializes a term map as a list of `(exponents, coefficient)` pairs, so
/// that formats with string-only map keys can carry it.
pub(crate) mod terms_serde {
    use serde::{Deserialize, Deserializer, Serializer};

    use super::Terms;
    use crate::finring::Elem;
    use crate::monomial::MultiIndex;

    pub fn serialize<S: Serializer>(t: &Terms, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(t.iter())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Terms, D::Error> {
        let v: Vec<(MultiIndex, Elem)> = Deserialize::deserialize(d)?;
        Ok(v.into_iter().collect())
    }
}

impl fmt::Debug for SkewPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

impl SkewPoly {
    pub fn zero(n: usize) -> Self {
        SkewPoly { n, terms: Terms::new() }
    }

    /// Builds a polynomial from raw terms, dropping entries equal to `zero`.
    pub fn from_terms(n: usize, zero: Elem, terms: impl IntoIterator<Item = (MultiIndex, Elem)>) -> Self {
        SkewPoly { n, terms: terms.into_iter().filter(|(_, c)| *c != zero).collect() }
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &Terms {
        &self.terms
    }

    pub fn into_terms(self) -> Terms {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, alpha: &MultiIndex) -> Option<Elem> {
        self.terms.get(alpha).copied()
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|a| a.degree()).max()
    }

    /// Each term as a word `Coeff(a)·x^α`.
    pub fn to_words(&self) -> Vec<GenWord> {
        self.terms
            .iter()
            .map(|(alpha, &a)| {
                let mut w = vec![Token::Coeff(a)];
                w.extend(alpha.var_sequence().into_iter().map(Token::Var));
                GenWord(w)
            })
            .collect()
    }
}

/// A word token; variables are 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Token {
    Coeff(Elem),
    Var(usize),
}

/// An arbitrary product of scalars and generators, read left to right.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GenWord(pub Vec<Token>);

/// A coefficient domain that `R` acts on from the right.
///
/// The ring itself is one such layer; a right module is another. Products in
/// the extension and the module action on polynomials share one engine through
/// this trait.
pub trait CoeffLayer {
    fn zero(&self) -> Elem;
    fn add(&self, a: Elem, b: Elem) -> Elem;
    fn scale(&self, m: Elem, r: Elem) -> Elem;
}

impl CoeffLayer for FiniteRing {
    fn zero(&self) -> Elem {
        FiniteRing::zero(self)
    }

    fn add(&self, a: Elem, b: Elem) -> Elem {
        FiniteRing::add(self, a, b)
    }

    fn scale(&self, m: Elem, r: Elem) -> Elem {
        self.mul(m, r)
    }
}

fn add_term<L: CoeffLayer + ?Sized>(layer: &L, acc: &mut Terms, alpha: &MultiIndex, v: Elem) {
    if v == layer.zero() {
        return;
    }
    match acc.get_mut(alpha) {
        Some(slot) => {
            *slot = layer.add(*slot, v);
            if *slot == layer.zero() {
                acc.remove(alpha);
            }
        }
        None => {
            acc.insert(alpha.clone(), v);
        }
    }
}

/// `acc += m·p`, with `m` acting on each coefficient of `p` from the left.
fn accumulate<L: CoeffLayer + ?Sized>(layer: &L, acc: &mut Terms, m: Elem, p: &SkewPoly) {
    for (gamma, &c) in &p.terms {
        add_term(layer, acc, gamma, layer.scale(m, c));
    }
}

pub(crate) fn add_terms<L: CoeffLayer + ?Sized>(layer: &L, a: &Terms, b: &Terms) -> Terms {
    let mut acc = a.clone();
    for (alpha, &v) in b {
        add_term(layer, &mut acc, alpha, v);
    }
    acc
}

impl SkewPbw {
    fn check_index(&self, alpha: &MultiIndex) {
        debug_assert_eq!(alpha.len(), self.nvars());
    }

    /// `r·x^α`.
    pub fn monomial(&self, r: Elem, alpha: MultiIndex) -> SkewPoly {
        self.check_index(&alpha);
        SkewPoly::from_terms(self.nvars(), self.ring().zero(), [(alpha, r)])
    }

    pub fn constant(&self, r: Elem) -> SkewPoly {
        self.monomial(r, MultiIndex::zero(self.nvars()))
    }

    pub fn one(&self) -> SkewPoly {
        self.constant(self.ring().one())
    }

    pub fn zero_poly(&self) -> SkewPoly {
        SkewPoly::zero(self.nvars())
    }

    /// The generator `x_{i+1}`.
    pub fn var(&self, i: usize) -> SkewPoly {
        self.monomial(self.ring().one(), MultiIndex::unit(self.nvars(), i))
    }

    /// Checks that `f` could have come from this extension.
    pub fn check_poly(&self, f: &SkewPoly) -> Result<(), PolyError> {
        if f.n != self.nvars() {
            return Err(PolyError::PresentationMismatch(format!("{} variables, expected {}", f.n, self.nvars())));
        }
        for (alpha, &c) in &f.terms {
            if alpha.len() != self.nvars() {
                return Err(PolyError::PresentationMismatch(format!("multi-index {alpha:?} has the wrong length")));
            }
            if c >= self.ring().order() || c == self.ring().zero() {
                return Err(PolyError::PresentationMismatch(format!("coefficient {c} is not a stored ring element")));
            }
        }
        Ok(())
    }

    /// Normal form of `x^α·r`.
    ///
    /// With `x^α = x^{α'}·x_j` for the last variable `j` of `α`,
    /// `x^α r = (x^{α'} σ_j(r))·x_j + x^{α'} δ_j(r)`.
    pub fn mono_coeff(&self, alpha: &MultiIndex, r: Elem) -> SkewPoly {
        let ring = self.ring();
        if r == ring.zero() {
            return self.zero_poly();
        }
        let Some(j) = alpha.last_var() else {
            return self.constant(r);
        };
        let key = (alpha.clone(), r);
        if let Some(hit) = self.coeff_cache.read().expect("cache lock").get(&key) {
            return hit.clone();
        }
        let rest = alpha.with_decremented(j);
        let head = self.mono_coeff(&rest, self.sigma(j).apply(r));
        let mut out = self.times_var_terms(ring, &head.terms, j);
        let tail = self.mono_coeff(&rest, self.delta(j).apply(r));
        out = add_terms(ring, &out, &tail.terms);
        let result = SkewPoly { n: self.nvars(), terms: out };
        self.coeff_cache.write().expect("cache lock").insert(key, result.clone());
        result
    }

    /// Normal form of `x^α·x_i`.
    ///
    /// If every variable of `α` is at most `i` the product is already standard.
    /// Otherwise the last variable `j > i` of `α` is commuted past `x_i` with the
    /// quadratic relation, which lowers the degree of every recursive call.
    pub fn mono_var(&self, alpha: &MultiIndex, i: usize) -> SkewPoly {
        let ring = self.ring();
        match alpha.last_var() {
            Some(j) if j > i => {
                let key = (alpha.clone(), i);
                if let Some(hit) = self.var_cache.read().expect("cache lock").get(&key) {
                    return hit.clone();
                }
                let rest = alpha.with_decremented(j);
                let rel = self.relation(i, j);
                let lead = self.mono_coeff(&rest, rel.c);
                let lead = self.times_var_terms(ring, &lead.terms, i);
                let mut out = self.times_var_terms(ring, &lead, j);
                for (k, &rk) in rel.linear.iter().enumerate() {
                    if rk != ring.zero() {
                        let part = self.mono_coeff(&rest, rk);
                        out = add_terms(ring, &out, &self.times_var_terms(ring, &part.terms, k));
                    }
                }
                out = add_terms(ring, &out, &self.mono_coeff(&rest, rel.constant).terms);
                let result = SkewPoly { n: self.nvars(), terms: out };
                self.var_cache.write().expect("cache lock").insert(key, result.clone());
                result
            }
            _ => self.monomial(ring.one(), alpha.with_incremented(i)),
        }
    }

    /// `t·r` for coefficients in `layer`.
    pub fn times_coeff_terms<L: CoeffLayer + ?Sized>(&self, layer: &L, t: &Terms, r: Elem) -> Terms {
        let mut acc = Terms::new();
        for (alpha, &m) in t {
            accumulate(layer, &mut acc, m, &self.mono_coeff(alpha, r));
        }
        acc
    }

    /// `t·x_i` for coefficients in `layer`.
    pub fn times_var_terms<L: CoeffLayer + ?Sized>(&self, layer: &L, t: &Terms, i: usize) -> Terms {
        let mut acc = Terms::new();
        for (alpha, &m) in t {
            accumulate(layer, &mut acc, m, &self.mono_var(alpha, i));
        }
        acc
    }

    /// `t·g`, expanding `g` term by term as `b·x_1^{β₁}⋯x_n^{βₙ}`.
    pub fn right_mul_terms<L: CoeffLayer + ?Sized>(&self, layer: &L, t: &Terms, g: &SkewPoly) -> Terms {
        let mut acc = Terms::new();
        for (beta, &b) in &g.terms {
            let mut cur = self.times_coeff_terms(layer, t, b);
            for v in beta.var_sequence() {
                cur = self.times_var_terms(layer, &cur, v);
            }
            acc = add_terms(layer, &acc, &cur);
        }
        acc
    }

    pub fn mul(&self, f: &SkewPoly, g: &SkewPoly) -> SkewPoly {
        SkewPoly { n: self.nvars(), terms: self.right_mul_terms(self.ring(), &f.terms, g) }
    }

    pub fn try_mul(&self, f: &SkewPoly, g: &SkewPoly) -> Result<SkewPoly, PolyError> {
        self.check_poly(f)?;
        self.check_poly(g)?;
        Ok(self.mul(f, g))
    }

    pub fn add(&self, f: &SkewPoly, g: &SkewPoly) -> SkewPoly {
        SkewPoly { n: self.nvars(), terms: add_terms(self.ring(), &f.terms, &g.terms) }
    }

    pub fn neg(&self, f: &SkewPoly) -> SkewPoly {
        let ring = self.ring();
        SkewPoly { n: self.nvars(), terms: f.terms.iter().map(|(a, &c)| (a.clone(), ring.neg(c))).collect() }
    }

    pub fn sub(&self, f: &SkewPoly, g: &SkewPoly) -> SkewPoly {
        self.add(f, &self.neg(g))
    }

    /// `r·f`, which only multiplies coefficients since scalars sit on the left.
    pub fn scalar_mul_left(&self, r: Elem, f: &SkewPoly) -> SkewPoly {
        let ring = self.ring();
        SkewPoly::from_terms(self.nvars(), ring.zero(), f.terms.iter().map(|(a, &c)| (a.clone(), ring.mul(r, c))))
    }

    /// Normal form of a word.
    pub fn normalize(&self, w: &GenWord) -> SkewPoly {
        let ring = self.ring();
        let mut cur = self.one().terms;
        for tok in &w.0 {
            cur = match *tok {
                Token::Coeff(r) => self.times_coeff_terms(ring, &cur, r),
                Token::Var(i) => self.times_var_terms(ring, &cur, i),
            };
        }
        SkewPoly { n: self.nvars(), terms: cur }
    }

    /// Normal form of a sum of words.
    pub fn normalize_sum(&self, words: &[GenWord]) -> SkewPoly {
        words.iter().fold(self.zero_poly(), |acc, w| self.add(&acc, &self.normalize(w)))
    }

    /// `x^α·r = r_α·x^α + p` with `deg p < |α|`.
    pub fn alpha_commute(&self, alpha: &MultiIndex, r: Elem) -> (Elem, SkewPoly) {
        let mut nf = self.mono_coeff(alpha, r);
        let r_alpha = nf.terms.remove(alpha).unwrap_or(self.ring().zero());
        (r_alpha, nf)
    }

    /// `x^α·x^β = c_{α,β}·x^{α+β} + p` with `deg p < |α+β|`.
    pub fn monomial_product(&self, alpha: &MultiIndex, beta: &MultiIndex) -> (Elem, SkewPoly) {
        let ring = self.ring();
        let mut cur = self.monomial(ring.one(), alpha.clone()).terms;
        for v in beta.var_sequence() {
            cur = self.times_var_terms(ring, &cur, v);
        }
        let sum = alpha.add(beta).expect("equal lengths");
        let c = cur.remove(&sum).unwrap_or(ring.zero());
        (c, SkewPoly { n: self.nvars(), terms: cur })
    }

    /// Leading exponent under the extension's order; `None` for zero.
    pub fn exp(&self, f: &SkewPoly) -> Option<MultiIndex> {
        f.terms.keys().max_by(|a, b| self.order().cmp_unchecked(a, b)).cloned()
    }

    /// Leading monomial `x^{exp f}` as a polynomial with coefficient 1; zero for `f = 0`.
    pub fn lm(&self, f: &SkewPoly) -> SkewPoly {
        match self.exp(f) {
            Some(a) => self.monomial(self.ring().one(), a),
            None => self.zero_poly(),
        }
    }

    /// Leading coefficient; `0` for `f = 0`.
    pub fn lc(&self, f: &SkewPoly) -> Elem {
        self.exp(f).map(|a| f.terms[&a]).unwrap_or(self.ring().zero())
    }

    pub fn lt(&self, f: &SkewPoly) -> SkewPoly {
        match self.exp(f) {
            Some(a) => self.monomial(f.terms[&a], a),
            None => self.zero_poly(),
        }
    }

    /// Degree of the leading monomial (the total degree under a degree order).
    pub fn deg(&self, f: &SkewPoly) -> Option<u32> {
        self.exp(f).map(|a| a.degree())
    }

    /// Terms sorted from the leading one downwards.
    pub fn sorted_terms<'a>(&self, t: &'a Terms) -> Vec<(&'a MultiIndex, Elem)> {
        let mut v: Vec<_> = t.iter().map(|(a, &c)| (a, c)).collect();
        v.sort_by(|a, b| self.order().cmp_unchecked(b.0, a.0));
        v
    }

    /// Plain-text rendering like `2*x1*x2^2 + y*x1 + 1`, leading term first.
    pub fn format_terms(&self, t: &Terms, name: impl Fn(Elem) -> String, one: Option<Elem>) -> String {
        if t.is_empty() {
            return "0".to_string();
        }
        let parts: Vec<String> = self
            .sorted_terms(t)
            .into_iter()
            .map(|(alpha, c)| {
                let mut factors = Vec::new();
                if Some(c) != one || alpha.is_zero() {
                    factors.push(name(c));
                }
                for (i, &e) in alpha.0.iter().enumerate() {
                    match e {
                        0 => {}
                        1 => factors.push(format!("x{}", i + 1)),
                        _ => factors.push(format!("x{}^{}", i + 1, e)),
                    }
                }
                factors.join("*")
            })
            .collect();
        parts.join(" + ")
    }

    pub fn format(&self, f: &SkewPoly) -> String {
        let ring = self.ring();
        self.format_terms(&f.terms, |c| ring.name(c).to_string(), Some(ring.one()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finring::{dual_derivative_table, FiniteRing};
    use crate::skewpbw::{QuadRelation, RawPresentation};

    fn mi(v: &[u32]) -> MultiIndex {
        MultiIndex(v.to_vec())
    }

    fn quantum_plane() -> SkewPbw {
        let z5 = FiniteRing::integers_mod(5).unwrap();
        let mut raw = RawPresentation::commutative(z5.clone(), 2);
        raw.relations = vec![(0, 1, QuadRelation::commuting(&z5, 2, 2))];
        SkewPbw::validate(raw).unwrap()
    }

    fn weyl() -> SkewPbw {
        let d = FiniteRing::dual_numbers(2).unwrap();
        let mut raw = RawPresentation::commutative(d, 1);
        raw.deltas = vec![dual_derivative_table(2)];
        SkewPbw::validate(raw).unwrap()
    }

    #[test]
    fn commutative_word() {
        let z3 = FiniteRing::integers_mod(3).unwrap();
        let ext = SkewPbw::validate(RawPresentation::commutative(z3, 1)).unwrap();
        let nf = ext.normalize(&GenWord(vec![Token::Var(0), Token::Coeff(2)]));
        assert_eq!(nf, ext.monomial(2, mi(&[1])));
    }

    #[test]
    fn quantum_plane_relation() {
        let ext = quantum_plane();
        assert!(ext.is_quasi_commutative() && ext.is_bijective());
        let nf = ext.normalize(&GenWord(vec![Token::Var(1), Token::Var(0)]));
        assert_eq!(nf, ext.monomial(2, mi(&[1, 1])));
        let prod = ext.mul(&ext.var(1), &ext.monomial(1, mi(&[1, 1])));
        assert_eq!(prod, ext.monomial(2, mi(&[1, 2])));
        assert_eq!(ext.monomial_product(&mi(&[0, 1]), &mi(&[1, 0])), (2, ext.zero_poly()));
        assert_eq!(ext.format(&prod), "2*x1*x2^2");
    }

    #[test]
    fn weyl_rewrites() {
        let ext = weyl();
        let y = ext.ring().element_by_name("y").unwrap();
        // x·y = y·x + 1
        let xy = ext.mul(&ext.var(0), &ext.constant(y));
        assert_eq!(xy, ext.add(&ext.monomial(y, mi(&[1])), &ext.one()));
        // x²y = y·x² in characteristic 2
        let w = GenWord(vec![Token::Var(0), Token::Var(0), Token::Coeff(y)]);
        assert_eq!(ext.normalize(&w), ext.monomial(y, mi(&[2])));
        assert_eq!(ext.alpha_commute(&mi(&[2]), y), (y, ext.zero_poly()));
        assert_eq!(ext.alpha_commute(&mi(&[1]), y), (y, ext.one()));
    }

    #[test]
    fn leading_data() {
        let ext = quantum_plane();
        let f = ext.add(&ext.monomial(3, mi(&[1, 0])), &ext.monomial(1, mi(&[1, 1])));
        assert_eq!(ext.lm(&f), ext.monomial(1, mi(&[1, 1])));
        assert_eq!(ext.lc(&f), 1);
        assert_eq!(ext.deg(&f), Some(2));
        assert_eq!(ext.lc(&ext.constant(4)), 4);
        assert_eq!(ext.exp(&ext.constant(4)), Some(mi(&[0, 0])));
        let z = ext.zero_poly();
        assert_eq!((ext.lm(&z), ext.lc(&z), ext.lt(&z)), (z.clone(), 0, z.clone()));
    }

    #[test]
    fn formatting() {
        let ext = weyl();
        let y = ext.ring().element_by_name("y").unwrap();
        let f = ext.add(&ext.monomial(y, mi(&[1])), &ext.one());
        assert_eq!(ext.format(&f), "y*x1 + 1");
        assert_eq!(ext.format(&ext.zero_poly()), "0");
    }

    #[test]
    fn mismatched_polys_are_rejected() {
        let ext = weyl();
        let other = SkewPoly::zero(3);
        assert!(ext.try_mul(&other, &ext.one()).is_err());
    }
}
