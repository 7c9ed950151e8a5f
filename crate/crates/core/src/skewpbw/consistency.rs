//! Bounded screening of a presentation for overlap ambiguities.
//!
//! A presentation is only meaningful if the standard monomials stay
//! independent. That cannot be certified from finite data in general, so the
//! check resolves every generator overlap, then compares both
//! bracketings of all monomial triples up to a degree bound, then fuzzes
//! associativity on seeded random triples.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{GenWord, SkewPbw, SkewPoly, Token};
use crate::finring::Elem;
use crate::monomial::MultiIndex;

const FUZZ_TRIPLES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub bound: u32,
    pub overlaps_checked: usize,
    pub fuzz_triples: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OverlapKind {
    /// `(x_k x_j) x_i` against `x_k (x_j x_i)`.
    VarVarVar,
    /// `(x_j x_i) r` against `x_j (x_i r)`.
    VarVarCoeff,
    /// `(x^α x^β) x^γ` against `x^α (x^β x^γ)`.
    MonomialTriple,
    /// Associativity of random polynomials.
    Fuzz,
}

/// Three factors whose two bracketings normalize differently.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConsistencyWitness {
    pub kind: OverlapKind,
    pub factors: [SkewPoly; 3],
    pub word: GenWord,
    pub left: SkewPoly,
    pub right: SkewPoly,
}

impl std::fmt::Display for ConsistencyWitness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let word: Vec<String> = self
            .word
            .0
            .iter()
            .map(|t| match t {
                Token::Coeff(r) => format!("#{r}"),
                Token::Var(i) => format!("x{}", i + 1),
            })
            .collect();
        write!(f, "{:?} overlap {} has normal forms {:?} and {:?}", self.kind, word.join("*"), self.left, self.right)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConsistencyOutcome {
    Certified(Certificate),
    Witness(Box<ConsistencyWitness>),
}

fn word_of(ext: &SkewPbw, factors: &[&SkewPoly; 3]) -> GenWord {
    let mut w = Vec::new();
    for f in factors {
        if let Some(first) = f.to_words().into_iter().next() {
            w.extend(first.0.into_iter().filter(|t| *t != Token::Coeff(ext.ring().one())));
        }
    }
    GenWord(w)
}

fn compare(ext: &SkewPbw, kind: OverlapKind, a: &SkewPoly, b: &SkewPoly, c: &SkewPoly) -> Option<Box<ConsistencyWitness>> {
    let left = ext.mul(&ext.mul(a, b), c);
    let right = ext.mul(a, &ext.mul(b, c));
    (left != right).then(|| {
        Box::new(ConsistencyWitness {
            kind,
            word: word_of(ext, &[a, b, c]),
            factors: [a.clone(), b.clone(), c.clone()],
            left,
            right,
        })
    })
}

/// Runs the overlap screen at degree bound `d` with the extension's own seed.
pub fn check_consistency(ext: &SkewPbw, d: u32) -> ConsistencyOutcome {
    check_consistency_with(ext, d, ext.seed())
}

pub(crate) fn check_consistency_with(ext: &SkewPbw, d: u32, seed: u64) -> ConsistencyOutcome {
    let n = ext.nvars();
    let ring = ext.ring();
    let mut checked = 0;

    for k in 0..n {
        for j in 0..k {
            for i in 0..j {
                checked += 1;
                if let Some(w) = compare(ext, OverlapKind::VarVarVar, &ext.var(k), &ext.var(j), &ext.var(i)) {
                    return ConsistencyOutcome::Witness(w);
                }
            }
        }
    }
    for j in 0..n {
        for i in 0..j {
            for r in ring.elements() {
                checked += 1;
                if let Some(w) = compare(ext, OverlapKind::VarVarCoeff, &ext.var(j), &ext.var(i), &ext.constant(r)) {
                    return ConsistencyOutcome::Witness(w);
                }
            }
        }
    }

    let monos = ext.order().enumerate_upto(d);
    let one = ring.one();
    for a in &monos {
        for b in monos.iter().filter(|b| a.degree() + b.degree() <= d) {
            for c in monos.iter().filter(|c| a.degree() + b.degree() + c.degree() <= d) {
                checked += 1;
                let fa = ext.monomial(one, a.clone());
                let fb = ext.monomial(one, b.clone());
                let fc = ext.monomial(one, c.clone());
                if let Some(w) = compare(ext, OverlapKind::MonomialTriple, &fa, &fb, &fc) {
                    return ConsistencyOutcome::Witness(w);
                }
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut fuzz = 0;
    if d > 0 {
        for _ in 0..FUZZ_TRIPLES {
            let mut budget = d;
            let mut draw = |rng: &mut ChaCha8Rng| {
                let deg = rng.gen_range(0..=budget);
                budget -= deg;
                random_poly(ext, rng, deg, 3)
            };
            let (a, b, c) = (draw(&mut rng), draw(&mut rng), draw(&mut rng));
            fuzz += 1;
            if let Some(w) = compare(ext, OverlapKind::Fuzz, &a, &b, &c) {
                return ConsistencyOutcome::Witness(w);
            }
        }
    }

    ConsistencyOutcome::Certified(Certificate { bound: d, overlaps_checked: checked, fuzz_triples: fuzz })
}

/// A polynomial with at most `max_terms` terms of degree at most `deg`.
pub fn random_poly<R: Rng>(ext: &SkewPbw, rng: &mut R, deg: u32, max_terms: usize) -> SkewPoly {
    let monos = ext.order().enumerate_upto(deg);
    let q = ext.ring().order();
    let count = rng.gen_range(1..=max_terms);
    let terms: Vec<(MultiIndex, Elem)> =
        (0..count).map(|_| (monos[rng.gen_range(0..monos.len())].clone(), rng.gen_range(0..q))).collect();
    terms.into_iter().fold(ext.zero_poly(), |acc, (a, c)| ext.add(&acc, &ext.monomial(c, a)))
}
