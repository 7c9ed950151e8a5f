//! Polynomial literals: `poly := term ('+' term)*`, `term := factor ('*' factor)*`,
//! `factor := coeffname | x<k>[^<e>]`. Whitespace is ignored.
//!
//! A term is read as a word and normalized, so `x2*x1` and `x1*y` are legal
//! and mean the products they spell. A decimal integer that is not an element
//! name stands for that multiple of the identity.

use spbw_core::polymodule::{ModulePoly, PolyModule};
use spbw_core::skewpbw::{GenWord, SkewPbw, SkewPoly, Token};
use spbw_core::Elem;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LiteralError {
    #[error("empty polynomial literal")]
    Empty,
    #[error("empty factor at column {0}")]
    EmptyFactor(usize),
    #[error("unbalanced brackets at column {0}")]
    Unbalanced(usize),
    #[error("unknown coefficient '{name}' at column {col}")]
    UnknownName { name: String, col: usize },
    #[error("variable x{var} at column {col} is out of range 1..={n}")]
    VariableOutOfRange { var: usize, n: usize, col: usize },
    #[error("bad exponent in '{0}'")]
    BadExponent(String),
    #[error("term at column {0} needs a leading module element")]
    MissingModuleElement(usize),
}

/// A factor and the column (1-based, after whitespace removal) where it starts.
#[derive(Debug, Clone, PartialEq, Eq)]
enum Factor {
    Name(String, usize),
    Var { var: usize, exp: u32 },
}

/// Splits `s` on `sep` outside brackets and parentheses, keeping start offsets.
fn split_top(s: &str, sep: char, base: usize) -> Result<Vec<(&str, usize)>, LiteralError> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0usize);
    for (i, ch) in s.char_indices() {
        match ch {
            '(' | '[' => depth += 1,
            ')' | ']' => {
                depth -= 1;
                if depth < 0 {
                    return Err(LiteralError::Unbalanced(base + i + 1));
                }
            }
            c if c == sep && depth == 0 => {
                out.push((&s[start..i], base + start));
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(LiteralError::Unbalanced(base + s.len()));
    }
    out.push((&s[start..], base + start));
    Ok(out)
}

fn parse_var(f: &str, n: usize, col: usize) -> Result<Option<Factor>, LiteralError> {
    let Some(rest) = f.strip_prefix('x') else { return Ok(None) };
    let (num, exp) = match rest.split_once('^') {
        Some((a, b)) => (a, Some(b)),
        None => (rest, None),
    };
    if num.is_empty() || !num.bytes().all(|b| b.is_ascii_digit()) {
        return Ok(None);
    }
    let var: usize = num.parse().map_err(|_| LiteralError::BadExponent(f.to_string()))?;
    let exp = match exp {
        None => 1,
        Some(e) if !e.is_empty() && e.bytes().all(|b| b.is_ascii_digit()) => {
            e.parse().map_err(|_| LiteralError::BadExponent(f.to_string()))?
        }
        Some(_) => return Err(LiteralError::BadExponent(f.to_string())),
    };
    if var == 0 || var > n {
        return Err(LiteralError::VariableOutOfRange { var, n, col });
    }
    Ok(Some(Factor::Var { var: var - 1, exp }))
}

fn terms(text: &str, n: usize) -> Result<Vec<(Vec<Factor>, usize)>, LiteralError> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(LiteralError::Empty);
    }
    let mut out = Vec::new();
    for (term, col) in split_top(&s, '+', 1)? {
        let mut factors = Vec::new();
        for (f, fcol) in split_top(term, '*', col)? {
            if f.is_empty() {
                return Err(LiteralError::EmptyFactor(fcol));
            }
            match parse_var(f, n, fcol)? {
                Some(v) => factors.push(v),
                None => factors.push(Factor::Name(f.to_string(), fcol)),
            }
        }
        out.push((factors, col));
    }
    Ok(out)
}

fn ring_elem(ext: &SkewPbw, name: &str, col: usize) -> Result<Elem, LiteralError> {
    let ring = ext.ring();
    if let Some(e) = ring.element_by_name(name) {
        return Ok(e);
    }
    if !name.is_empty() && name.bytes().all(|b| b.is_ascii_digit()) {
        if let Ok(k) = name.parse::<u64>() {
            return Ok(ring.from_int(k));
        }
    }
    Err(LiteralError::UnknownName { name: name.to_string(), col })
}

fn word(ext: &SkewPbw, factors: &[Factor]) -> Result<GenWord, LiteralError> {
    let mut w = Vec::new();
    for f in factors {
        match f {
            Factor::Name(name, col) => w.push(Token::Coeff(ring_elem(ext, name, *col)?)),
            Factor::Var { var, exp } => w.extend(std::iter::repeat_n(Token::Var(*var), *exp as usize)),
        }
    }
    Ok(GenWord(w))
}

/// Parses an element of the extension.
pub fn parse_poly(ext: &SkewPbw, text: &str) -> Result<SkewPoly, LiteralError> {
    let mut words = Vec::new();
    for (factors, _) in terms(text, ext.nvars())? {
        words.push(word(ext, &factors)?);
    }
    Ok(ext.normalize_sum(&words))
}

/// Parses an element of `M⟨X⟩`. Each term starts with a module element name,
/// which may be omitted when `R` embeds in `M` (it then defaults to the image of 1).
pub fn parse_module_poly(pm: &PolyModule, text: &str) -> Result<ModulePoly, LiteralError> {
    let mut acc = pm.zero_poly();
    for (factors, col) in terms(text, pm.nvars())? {
        let (m, rest) = match factors.first() {
            Some(Factor::Name(name, _)) if pm.module.element_by_name(name).is_some() => {
                (pm.module.element_by_name(name).expect("checked"), &factors[1..])
            }
            _ => match &pm.embedding {
                Some(emb) => (emb[pm.ring().one()], &factors[..]),
                None => return Err(LiteralError::MissingModuleElement(col)),
            },
        };
        let f = pm.ext.normalize(&word(&pm.ext, rest)?);
        acc = pm.add(&acc, &pm.act(&pm.constant(m), &f));
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use spbw_core::finring::FiniteRing;
    use spbw_core::skewpbw::{QuadRelation, RawPresentation};

    fn quantum_plane() -> SkewPbw {
        let z5 = FiniteRing::integers_mod(5).unwrap();
        let mut raw = RawPresentation::commutative(z5.clone(), 2);
        raw.relations = vec![(0, 1, QuadRelation::commuting(&z5, 2, 2))];
        SkewPbw::validate(raw).unwrap()
    }

    #[test]
    fn words_are_normalized() {
        let ext = quantum_plane();
        let p = parse_poly(&ext, "x2 * x1").unwrap();
        assert_eq!(ext.format(&p), "2*x1*x2");
        let q = parse_poly(&ext, "3*x1^2*x2 + 4 + x1^2*x2*2").unwrap();
        assert_eq!(ext.format(&q), "4");
    }

    #[test]
    fn bracketed_names_survive_splitting() {
        let ring = FiniteRing::product_of_cyclic(2, 2).unwrap();
        let ext = SkewPbw::validate(RawPresentation::commutative(ring, 1)).unwrap();
        let p = parse_poly(&ext, "(1,0)*x1 + (0,1)").unwrap();
        assert_eq!(p.terms().len(), 2);
        assert!(matches!(parse_poly(&ext, "(1,0*x1"), Err(LiteralError::Unbalanced(_))));
    }

    #[test]
    fn errors_carry_columns() {
        let ext = quantum_plane();
        assert_eq!(parse_poly(&ext, "x1 + q"), Err(LiteralError::UnknownName { name: "q".into(), col: 4 }));
        assert_eq!(parse_poly(&ext, "x3"), Err(LiteralError::VariableOutOfRange { var: 3, n: 2, col: 1 }));
        assert_eq!(parse_poly(&ext, "x1**x2"), Err(LiteralError::EmptyFactor(4)));
        assert_eq!(parse_poly(&ext, "  "), Err(LiteralError::Empty));
    }

    #[test]
    fn module_terms_need_an_element_without_embedding() {
        let d2 = FiniteRing::dual_numbers(2).unwrap();
        let ext = SkewPbw::validate(RawPresentation::commutative(d2.clone(), 1)).unwrap();
        let q = spbw_core::RightModule::quotient(&d2, &[2]).unwrap();
        let pm = PolyModule::new(ext, q, None).unwrap();
        assert!(parse_module_poly(&pm, "1*x1").is_ok());
        assert_eq!(parse_module_poly(&pm, "x1"), Err(LiteralError::MissingModuleElement(1)));
    }
}
