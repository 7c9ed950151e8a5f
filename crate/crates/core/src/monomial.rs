//! Multi-indices and monomial orders.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MonomialError {
    #[error("multi-index lengths differ: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("precedence {0:?} is not a permutation of the variables")]
    BadPrecedence(Vec<usize>),
}

/// Exponent vector `α ∈ ℕⁿ`; position `i` is the exponent of `x_{i+1}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MultiIndex(pub Vec<u32>);

impl MultiIndex {
    pub fn zero(n: usize) -> Self {
        MultiIndex(vec![0; n])
    }

    /// The exponent of a single variable, `e_i` (0-based).
    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        MultiIndex(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn add(&self, other: &MultiIndex) -> Result<MultiIndex, MonomialError> {
        if self.len() != other.len() {
            return Err(MonomialError::LengthMismatch { left: self.len(), right: other.len() });
        }
        Ok(MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect()))
    }

    pub fn with_incremented(&self, i: usize) -> MultiIndex {
        let mut v = self.0.clone();
        v[i] += 1;
        MultiIndex(v)
    }

    pub fn with_decremented(&self, i: usize) -> MultiIndex {
        let mut v = self.0.clone();
        v[i] -= 1;
        MultiIndex(v)
    }

    /// Largest variable index with a nonzero exponent.
    pub fn last_var(&self) -> Option<usize> {
        self.0.iter().rposition(|&e| e > 0)
    }

    /// Variables of `x^α` in standard order, `x_1` first, each repeated by its exponent.
    pub fn var_sequence(&self) -> Vec<usize> {
        self.0.iter().enumerate().flat_map(|(i, &e)| std::iter::repeat_n(i, e as usize)).collect()
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderKind {
    DegLex,
    Lex,
}

/// A total order on monomials.
///
/// `precedence` lists 0-based variables from most to least significant; ties
/// are broken by the exponent of the first variable in that list where the
/// two indices differ.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MonomialOrder {
    kind: OrderKind,
    precedence: Vec<usize>,
}

impl MonomialOrder {
    pub fn new(kind: OrderKind, precedence: Vec<usize>) -> Result<Self, MonomialError> {
        let mut seen = vec![false; precedence.len()];
        for &v in &precedence {
            if v >= seen.len() || seen[v] {
                return Err(MonomialError::BadPrecedence(precedence));
            }
            seen[v] = true;
        }
        Ok(MonomialOrder { kind, precedence })
    }

    /// Degree-lexicographic with `x_n ≻ … ≻ x_1`.
    pub fn deglex(n: usize) -> Self {
        MonomialOrder { kind: OrderKind::DegLex, precedence: (0..n).rev().collect() }
    }

    pub fn lex(n: usize) -> Self {
        MonomialOrder { kind: OrderKind::Lex, precedence: (0..n).rev().collect() }
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn precedence(&self) -> &[usize] {
        &self.precedence
    }

    pub fn nvars(&self) -> usize {
        self.precedence.len()
    }

    pub fn compare(&self, a: &MultiIndex, b: &MultiIndex) -> Result<Ordering, MonomialError> {
        if a.len() != b.len() || a.len() != self.nvars() {
            return Err(MonomialError::LengthMismatch { left: a.len(), right: b.len() });
        }
        Ok(self.cmp_unchecked(a, b))
    }

    /// Comparison for indices already known to have the order's length.
    pub fn cmp_unchecked(&self, a: &MultiIndex, b: &MultiIndex) -> Ordering {
        if self.kind == OrderKind::DegLex {
            match a.degree().cmp(&b.degree()) {
                Ordering::Equal => {}
                other => return other,
            }
        }
        for &v in &self.precedence {
            match a.0[v].cmp(&b.0[v]) {
                Ordering::Equal => {}
                other => return other,
            }
        }
        Ordering::Equal
    }

    /// All multi-indices of total degree at most `d`, ascending.
    pub fn enumerate_upto(&self, d: u32) -> Vec<MultiIndex> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; self.nvars()];
        fill(&mut cur, 0, d, &mut out);
        out.sort_by(|a, b| self.cmp_unchecked(a, b));
        out
    }
}

fn fill(cur: &mut Vec<u32>, pos: usize, budget: u32, out: &mut Vec<MultiIndex>) {
    if pos == cur.len() {
        out.push(MultiIndex(cur.clone()));
        return;
    }
    for e in 0..=budget {
        cur[pos] = e;
        fill(cur, pos + 1, budget - e, out);
    }
    cur[pos] = 0;
}

/// `C(n + d, d)`, the number of monomials in `n` variables of degree at most `d`.
pub fn count_upto(n: usize, d: u32) -> u128 {
    let mut acc: u128 = 1;
    for k in 1..=d as u128 {
        acc = acc * (n as u128 + k) / k;
    }
    acc
}

/// Shorthand for [`MonomialOrder::enumerate_upto`] under the default order.
pub fn enumerate_upto(n: usize, d: u32) -> Vec<MultiIndex> {
    MonomialOrder::deglex(n).enumerate_upto(d)
}
