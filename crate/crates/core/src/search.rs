//! Exhaustive enumeration over bounded-degree slices of `M⟨X⟩` and `A`.
//!
//! For a fixed `m`, the map `f ↦ m·f` is additive in the coefficients of `f`,
//! so its zero set over the box `R^K` is found by meet-in-the-middle: sums over
//! the right half of the coordinates are hashed and matched against negated
//! sums over the left half. Products `x^α·b·x^β` are normalized once into
//! dense tables up front.

use std::collections::HashMap;

use thiserror::Error;

use crate::finring::Elem;
use crate::monomial::{count_upto, MultiIndex};
use crate::polymodule::{ModulePoly, PolyModule, RightModule};
use crate::skewpbw::{GenWord, SkewPoly, Token};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("search space of {space} candidates exceeds the limit of {limit}")]
    SearchSpaceTooLarge { space: u128, limit: u128 },
}

/// `base^exp`, saturating at `u128::MAX`.
pub fn saturating_pow(base: u128, exp: u128) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base);
    }
    acc
}

/// Dense coordinates for monomials up to a degree.
#[derive(Debug, Clone)]
pub struct DenseBasis {
    index: HashMap<MultiIndex, usize>,
    len: usize,
}

impl DenseBasis {
    pub fn new(pm: &PolyModule, degree: u32) -> Self {
        let monos = pm.ext.order().enumerate_upto(degree);
        let len = monos.len();
        DenseBasis { index: monos.into_iter().enumerate().map(|(i, a)| (a, i)).collect(), len }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Dense vector of the ring coefficients of `p`.
    pub fn dense(&self, p: &SkewPoly, zero: Elem) -> Vec<u8> {
        let mut v = vec![zero as u8; self.len];
        for (a, &c) in p.terms() {
            v[self.index[a]] = c as u8;
        }
        v
    }
}

fn word(alpha: &MultiIndex, mid: &[Token], beta: &MultiIndex) -> GenWord {
    let mut w: Vec<Token> = alpha.var_sequence().into_iter().map(Token::Var).collect();
    w.extend_from_slice(mid);
    w.extend(beta.var_sequence().into_iter().map(Token::Var));
    GenWord(w)
}

/// Module side: `Σ m_i·T_i` for dense ring vectors `T_i`, into `out`.
fn combine_into(module: &RightModule, out: &mut [u8], m: Elem, t: &[u8]) {
    for (o, &c) in out.iter_mut().zip(t) {
        *o = module.add(*o as Elem, module.act(m, c as Elem)) as u8;
    }
}

/// All coefficient tuples `b ∈ R^K` with `Σ_j cols[j][b_j] = 0`, sorted lexicographically.
///
/// `cols[j][b]` is a dense vector of module elements.
pub fn kernel(module: &RightModule, cols: &[Vec<Vec<u8>>]) -> Vec<Vec<Elem>> {
    let k = cols.len();
    if k == 0 {
        return vec![vec![]];
    }
    let width = cols[0][0].len();
    let zero = module.zero() as u8;
    let h = k / 2;

    let mut right: HashMap<Vec<u8>, Vec<Vec<Elem>>> = HashMap::new();
    enumerate_sums(module, &cols[h..], width, zero, &mut |sum, tuple| {
        right.entry(sum.to_vec()).or_default().push(tuple.to_vec());
    });

    let mut out = Vec::new();
    enumerate_sums(module, &cols[..h], width, zero, &mut |sum, tuple| {
        let target: Vec<u8> = sum.iter().map(|&s| module.neg(s as Elem) as u8).collect();
        if let Some(rs) = right.get(&target) {
            for r in rs {
                let mut full = tuple.to_vec();
                full.extend_from_slice(r);
                out.push(full);
            }
        }
    });
    out.sort_unstable();
    out
}

fn enumerate_sums(
    module: &RightModule,
    cols: &[Vec<Vec<u8>>],
    width: usize,
    zero: u8,
    visit: &mut dyn FnMut(&[u8], &[Elem]),
) {
    let mut sums = vec![vec![zero; width]; cols.len() + 1];
    let mut tuple = vec![0; cols.len()];
    fn rec(
        module: &RightModule,
        cols: &[Vec<Vec<u8>>],
        depth: usize,
        sums: &mut Vec<Vec<u8>>,
        tuple: &mut Vec<Elem>,
        visit: &mut dyn FnMut(&[u8], &[Elem]),
    ) {
        if depth == cols.len() {
            visit(&sums[depth], tuple);
            return;
        }
        for (b, col) in cols[depth].iter().enumerate() {
            tuple[depth] = b;
            let (lo, hi) = sums.split_at_mut(depth + 1);
            for ((o, &s), &c) in hi[0].iter_mut().zip(&lo[depth]).zip(col) {
                *o = module.add(s as Elem, c as Elem) as u8;
            }
            rec(module, cols, depth + 1, sums, tuple, visit);
        }
    }
    rec(module, cols, 0, &mut sums, &mut tuple, visit);
}

/// Products `x^{α_i}·b·x^{β_j}` for `|α_i| ≤ dm`, `|β_j| ≤ df`, as dense ring vectors.
pub struct PlainTable {
    pub m_monos: Vec<MultiIndex>,
    pub f_monos: Vec<MultiIndex>,
    q: usize,
    width: usize,
    /// Indexed `[(i·q + b)·K_f + j]`.
    table: Vec<Vec<u8>>,
}

impl PlainTable {
    pub fn new(pm: &PolyModule, dm: u32, df: u32) -> Self {
        let order = pm.ext.order();
        let m_monos = order.enumerate_upto(dm);
        let f_monos = order.enumerate_upto(df);
        let basis = DenseBasis::new(pm, dm + df);
        let ring = pm.ring();
        let q = ring.order();
        let mut table = Vec::with_capacity(m_monos.len() * q * f_monos.len());
        for a in &m_monos {
            for b in ring.elements() {
                for beta in &f_monos {
                    let p = pm.ext.normalize(&word(a, &[Token::Coeff(b)], beta));
                    table.push(basis.dense(&p, ring.zero()));
                }
            }
        }
        PlainTable { m_monos, f_monos, q, width: basis.len(), table }
    }

    fn entry(&self, i: usize, b: Elem, j: usize) -> &[u8] {
        &self.table[(i * self.q + b) * self.f_monos.len() + j]
    }

    /// Columns of `f ↦ Σ_t m_t·f` for several module polynomials given as dense coefficient tuples.
    pub fn columns(&self, module: &RightModule, ms: &[&[Elem]]) -> Vec<Vec<Vec<u8>>> {
        let zero = module.zero() as u8;
        (0..self.f_monos.len())
            .map(|j| {
                (0..self.q)
                    .map(|b| {
                        let mut v = vec![zero; self.width * ms.len()];
                        for (t, m) in ms.iter().enumerate() {
                            let out = &mut v[t * self.width..(t + 1) * self.width];
                            for (i, &mi) in m.iter().enumerate() {
                                if mi != module.zero() {
                                    combine_into(module, out, mi, self.entry(i, b, j));
                                }
                            }
                        }
                        v
                    })
                    .collect()
            })
            .collect()
    }
}

/// Products `x^{α_i}·r·x^γ·b·x^{β_j}` with every `r ∈ R` and `|γ| ≤ d`, for the
/// bounded form of `m·A·f = 0`.
pub struct SandwichTable {
    pub monos: Vec<MultiIndex>,
    q: usize,
    width: usize,
    /// Indexed `[(((i·q + r)·K + γ)·K + j)·q + b]`.
    table: Vec<Vec<u8>>,
}

impl SandwichTable {
    pub fn new(pm: &PolyModule, d: u32) -> Self {
        let monos = pm.ext.order().enumerate_upto(d);
        let basis = DenseBasis::new(pm, 3 * d);
        let ring = pm.ring();
        let q = ring.order();
        let mut table = Vec::new();
        for a in &monos {
            for r in ring.elements() {
                for g in &monos {
                    let prefix = pm.ext.normalize(&word(a, &[Token::Coeff(r)], g));
                    for beta in &monos {
                        for b in ring.elements() {
                            let tail = pm.ext.monomial(b, beta.clone());
                            table.push(basis.dense(&pm.ext.mul(&prefix, &tail), ring.zero()));
                        }
                    }
                }
            }
        }
        SandwichTable { monos, q, width: basis.len(), table }
    }

    fn entry(&self, i: usize, r: Elem, g: usize, j: usize, b: Elem) -> &[u8] {
        let k = self.monos.len();
        &self.table[(((i * self.q + r) * k + g) * k + j) * self.q + b]
    }

    /// Columns of `f ↦ (m·r·x^γ·f)_{r,γ}`.
    pub fn columns(&self, module: &RightModule, m: &[Elem]) -> Vec<Vec<Vec<u8>>> {
        let k = self.monos.len();
        let zero = module.zero() as u8;
        (0..k)
            .map(|j| {
                (0..self.q)
                    .map(|b| {
                        let mut v = vec![zero; self.width * self.q * k];
                        for r in 0..self.q {
                            for g in 0..k {
                                let block = (r * k + g) * self.width;
                                let out = &mut v[block..block + self.width];
                                for (i, &mi) in m.iter().enumerate() {
                                    if mi != module.zero() {
                                        combine_into(module, out, mi, self.entry(i, r, g, j, b));
                                    }
                                }
                            }
                        }
                        v
                    })
                    .collect()
            })
            .collect()
    }

    /// The first `(r, γ)` with `m_i x^{α_i}·r·x^γ·b x^{β_j} ≠ 0`, if any.
    pub fn mixed_failure(&self, module: &RightModule, i: usize, mi: Elem, j: usize, b: Elem) -> Option<(Elem, usize)> {
        let k = self.monos.len();
        for r in 0..self.q {
            for g in 0..k {
                if self.entry(i, r, g, j, b).iter().any(|&c| module.act(mi, c as Elem) != module.zero()) {
                    return Some((r, g));
                }
            }
        }
        None
    }
}

/// A box of coefficient tuples indexed in mixed radix, coordinate 0 most significant.
#[derive(Debug, Clone, Copy)]
pub struct TupleBox {
    pub radix: usize,
    pub len: usize,
}

impl TupleBox {
    pub fn size(&self) -> u128 {
        saturating_pow(self.radix as u128, self.len as u128)
    }

    pub fn decode(&self, mut idx: u128) -> Vec<Elem> {
        let mut v = vec![0; self.len];
        for slot in v.iter_mut().rev() {
            *slot = (idx % self.radix as u128) as Elem;
            idx /= self.radix as u128;
        }
        v
    }
}

/// `|M|^K·|R|^K` for degree bound `d`, checked against `limit`.
pub fn guard(pm: &PolyModule, d: u32, limit: u128) -> Result<u128, SearchError> {
    let k = count_upto(pm.nvars(), d);
    let space = saturating_pow(pm.module.order() as u128, k).saturating_mul(saturating_pow(pm.ring().order() as u128, k));
    if space > limit {
        return Err(SearchError::SearchSpaceTooLarge { space, limit });
    }
    Ok(space)
}

pub fn module_poly(pm: &PolyModule, monos: &[MultiIndex], coeffs: &[Elem]) -> ModulePoly {
    ModulePoly::from_terms(pm.nvars(), pm.module.zero(), monos.iter().cloned().zip(coeffs.iter().copied()))
}

pub fn skew_poly(pm: &PolyModule, monos: &[MultiIndex], coeffs: &[Elem]) -> SkewPoly {
    SkewPoly::from_terms(pm.nvars(), pm.ring().zero(), monos.iter().cloned().zip(coeffs.iter().copied()))
}
