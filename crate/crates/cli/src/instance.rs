//! JSON instance files.
//!
//! Rings, maps and modules may be given as shorthand strings or explicit
//! tables. Variables in relations are 1-based; ring and module elements are
//! written by name in relations, quotients and embeddings, and by index in
//! tables. [`canonical`] expands every shorthand, and parsing its output gives
//! back the same instance.

use serde::{Deserialize, Serialize};
use spbw_core::finring::{dual_derivative_table, swap_table, validate_ring_with, FiniteRing, RingTables};
use spbw_core::monomial::{MonomialOrder, OrderKind};
use spbw_core::polymodule::{validate_module, ModuleTables, PolyModule, RightModule};
use spbw_core::skewpbw::{Claims, QuadRelation, RawPresentation, SkewPbw, DEFAULT_CONSISTENCY_BOUND, DEFAULT_SEED};
use spbw_core::{Elem, Limits};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum InstanceError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("invalid {path}: {message}")]
    Validation { path: String, message: String },
}

fn invalid(path: impl Into<String>, message: impl ToString) -> InstanceError {
    InstanceError::Validation { path: path.into(), message: message.to_string() }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RingSpec {
    Shorthand(String),
    Tables(RingTables),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MapSpec {
    /// `id`, `zero`, `swap` (on `Za x Za`) or `dy` (on `Zp[y]/(y^2)`).
    Shorthand(String),
    Table(Vec<Elem>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationSpec {
    pub i: usize,
    pub j: usize,
    pub c: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d0: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuotientSpec {
    pub quotient: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ModuleSpec {
    /// `regular`.
    Shorthand(String),
    Quotient(QuotientSpec),
    Tables(ModuleTables),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EmbeddingSpec {
    /// `identity`.
    Shorthand(String),
    /// Module element names of the images of the ring elements, in index order.
    Images(Vec<String>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FullOrder {
    pub kind: OrderKind,
    /// Variables from most to least significant, 1-based.
    pub precedence: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OrderSpec {
    Kind(OrderKind),
    Full(FullOrder),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub ring: RingSpec,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<Vec<MapSpec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<Vec<MapSpec>>,
    #[serde(default)]
    pub relations: Vec<RelationSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub module: Option<ModuleSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub embedding: Option<EmbeddingSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<OrderSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub claims: Option<Claims>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub consistency_bound: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

/// Command-line settings that replace values from the file.
#[derive(Debug, Clone, Copy, Default)]
pub struct Overrides {
    pub order: Option<OrderKind>,
    pub seed: Option<u64>,
}

/// A validated instance.
#[derive(Debug, Clone)]
pub struct Instance {
    pub name: Option<String>,
    pub pm: PolyModule,
    pub claims: Claims,
    pub consistency_bound: u32,
}

pub fn parse_instance(text: &str) -> Result<InstanceFile, InstanceError> {
    serde_json::from_str(text).map_err(|e| InstanceError::Parse { line: e.line(), column: e.column(), message: e.to_string() })
}

/// Which shorthand family a ring came from, for map shorthands that depend on it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum RingShape {
    Cyclic,
    Product(usize, usize),
    Dual(usize),
    Upper,
    Tables,
}

fn digits(s: &str) -> Option<usize> {
    (!s.is_empty() && s.bytes().all(|b| b.is_ascii_digit())).then(|| s.parse().ok()).flatten()
}

fn ring_from_shorthand(s: &str) -> Option<Result<(FiniteRing, RingShape), String>> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let wrap = |r: Result<FiniteRing, spbw_core::finring::RingError>, shape| Some(r.map(|r| (r, shape)).map_err(|e| e.to_string()));
    if let Some((a, b)) = s.split_once('x') {
        let (a, b) = (digits(a.strip_prefix('Z')?)?, digits(b.strip_prefix('Z')?)?);
        return wrap(FiniteRing::product_of_cyclic(a, b), RingShape::Product(a, b));
    }
    if let Some(p) = s.strip_prefix('Z').and_then(|t| t.strip_suffix("[y]/(y^2)")) {
        let p = digits(p)?;
        return wrap(FiniteRing::dual_numbers(p), RingShape::Dual(p));
    }
    if let Some(rest) = s.strip_prefix("UT") {
        let (k, p) = rest.strip_suffix(')')?.split_once("(Z")?;
        return wrap(FiniteRing::upper_triangular(digits(k)?, digits(p)?), RingShape::Upper);
    }
    let n = digits(s.strip_prefix('Z')?)?;
    wrap(FiniteRing::integers_mod(n), RingShape::Cyclic)
}

fn build_ring(spec: &RingSpec, limits: &Limits) -> Result<(FiniteRing, RingShape), InstanceError> {
    match spec {
        RingSpec::Shorthand(s) => match ring_from_shorthand(s) {
            Some(r) => r.map_err(|e| invalid("ring", e)),
            None => Err(invalid("ring", format!("unknown shorthand '{s}' (expected Zn, ZaxZb, Zp[y]/(y^2) or UTk(Zp))"))),
        },
        RingSpec::Tables(t) => Ok((validate_ring_with(t.clone(), limits).map_err(|e| invalid("ring", e))?, RingShape::Tables)),
    }
}

fn elem(ring: &FiniteRing, name: &str, path: &str) -> Result<Elem, InstanceError> {
    ring.element_by_name(name).ok_or_else(|| invalid(path, format!("unknown ring element '{name}'")))
}

fn map_table(ring: &FiniteRing, shape: RingShape, spec: &MapSpec, path: &str) -> Result<Vec<Elem>, InstanceError> {
    match spec {
        MapSpec::Table(t) => Ok(t.clone()),
        MapSpec::Shorthand(s) => match (s.as_str(), shape) {
            ("id", _) => Ok(ring.elements().collect()),
            ("zero", _) => Ok(vec![ring.zero(); ring.order()]),
            ("swap", RingShape::Product(a, b)) if a == b => Ok(swap_table(a)),
            ("dy", RingShape::Dual(p)) => Ok(dual_derivative_table(p)),
            ("swap", _) => Err(invalid(path, "'swap' needs a ring ZaxZa")),
            ("dy", _) => Err(invalid(path, "'dy' needs a ring Zp[y]/(y^2)")),
            (other, _) => Err(invalid(path, format!("unknown map shorthand '{other}'"))),
        },
    }
}

fn build_order(spec: &OrderSpec, n: usize) -> Result<MonomialOrder, InstanceError> {
    match spec {
        OrderSpec::Kind(OrderKind::DegLex) => Ok(MonomialOrder::deglex(n)),
        OrderSpec::Kind(OrderKind::Lex) => Ok(MonomialOrder::lex(n)),
        OrderSpec::Full(f) => {
            if f.precedence.contains(&0) {
                return Err(invalid("order.precedence", "variables are numbered from 1"));
            }
            MonomialOrder::new(f.kind, f.precedence.iter().map(|v| v - 1).collect()).map_err(|e| invalid("order", e))
        }
    }
}

/// Validates a parsed file.
pub fn build(file: &InstanceFile, overrides: Overrides, limits: &Limits) -> Result<Instance, InstanceError> {
    let (ring, shape) = build_ring(&file.ring, limits)?;
    if ring.order() > limits.warn_ring_order {
        log::warn!("ring of order {} is large for the exhaustive deciders", ring.order());
    }
    let n = file.n;
    let maps = |specs: &Option<Vec<MapSpec>>, default: &str, key: &str| -> Result<Vec<Vec<Elem>>, InstanceError> {
        match specs {
            None => (0..n).map(|i| map_table(&ring, shape, &MapSpec::Shorthand(default.into()), &format!("{key}[{i}]"))).collect(),
            Some(v) if v.len() != n => Err(invalid(key, format!("expected {n} maps, found {}", v.len()))),
            Some(v) => v.iter().enumerate().map(|(i, s)| map_table(&ring, shape, s, &format!("{key}[{i}]"))).collect(),
        }
    };
    let sigmas = maps(&file.sigma, "id", "sigma")?;
    let deltas = maps(&file.delta, "zero", "delta")?;

    let mut relations = Vec::new();
    for (k, r) in file.relations.iter().enumerate() {
        let path = format!("relations[{k}]");
        if r.i == 0 || r.j == 0 || r.i > n || r.j > n || r.i >= r.j {
            return Err(invalid(&path, format!("need 1 <= i < j <= {n}, found i={}, j={}", r.i, r.j)));
        }
        let c = elem(&ring, &r.c, &format!("{path}.c"))?;
        let constant = match &r.d0 {
            Some(s) => elem(&ring, s, &format!("{path}.d0"))?,
            None => ring.zero(),
        };
        let linear = match &r.d {
            None => vec![ring.zero(); n],
            Some(v) if v.len() != n => return Err(invalid(format!("{path}.d"), format!("expected {n} coefficients"))),
            Some(v) => v.iter().map(|s| elem(&ring, s, &format!("{path}.d"))).collect::<Result<_, _>>()?,
        };
        relations.push((r.i - 1, r.j - 1, QuadRelation { c, constant, linear }));
    }

    let order = match (overrides.order, &file.order) {
        (Some(OrderKind::DegLex), _) => Some(MonomialOrder::deglex(n)),
        (Some(OrderKind::Lex), _) => Some(MonomialOrder::lex(n)),
        (None, Some(spec)) => Some(build_order(spec, n)?),
        (None, None) => None,
    };
    let claims = file.claims.unwrap_or_default();
    let consistency_bound = file.consistency_bound.unwrap_or(DEFAULT_CONSISTENCY_BOUND);
    let raw = RawPresentation {
        ring: ring.clone(),
        n,
        sigmas,
        deltas,
        relations,
        order,
        claims,
        consistency_bound,
        seed: overrides.seed.or(file.seed).unwrap_or(DEFAULT_SEED),
    };
    let ext = SkewPbw::validate(raw).map_err(|e| invalid("presentation", e))?;

    let (module, default_embedding) = match &file.module {
        None => (RightModule::regular(&ring), true),
        Some(ModuleSpec::Shorthand(s)) if s == "regular" => (RightModule::regular(&ring), true),
        Some(ModuleSpec::Shorthand(s)) => return Err(invalid("module", format!("unknown module shorthand '{s}'"))),
        Some(ModuleSpec::Quotient(q)) => {
            let gens = q.quotient.iter().map(|g| elem(&ring, g, "module.quotient")).collect::<Result<Vec<_>, _>>()?;
            (RightModule::quotient(&ring, &gens).map_err(|e| invalid("module", e))?, false)
        }
        Some(ModuleSpec::Tables(t)) => (validate_module(&ring, t.clone()).map_err(|e| invalid("module", e))?, false),
    };
    let embedding = match &file.embedding {
        None if default_embedding => Some(ring.elements().collect()),
        None => None,
        Some(EmbeddingSpec::Shorthand(s)) if s == "identity" => {
            if module.order() != ring.order() {
                return Err(invalid("embedding", "'identity' needs a module of the same order as the ring"));
            }
            Some(ring.elements().collect())
        }
        Some(EmbeddingSpec::Shorthand(s)) => return Err(invalid("embedding", format!("unknown embedding shorthand '{s}'"))),
        Some(EmbeddingSpec::Images(names)) => Some(
            names
                .iter()
                .map(|s| module.element_by_name(s).ok_or_else(|| invalid("embedding", format!("unknown module element '{s}'"))))
                .collect::<Result<Vec<_>, _>>()?,
        ),
    };
    let pm = PolyModule::new(ext, module, embedding).map_err(|e| invalid("embedding", e))?;
    Ok(Instance { name: file.name.clone(), pm, claims, consistency_bound })
}

pub fn load(text: &str, overrides: Overrides, limits: &Limits) -> Result<Instance, InstanceError> {
    build(&parse_instance(text)?, overrides, limits)
}

/// The fully explicit form of an instance.
pub fn canonical(inst: &Instance) -> InstanceFile {
    let pm = &inst.pm;
    let ring = pm.ring();
    let ext = &pm.ext;
    let rname = |e: Elem| ring.name(e).to_string();
    let mut ring_tables = ring.tables();
    ring_tables.names = Some(ring.names().to_vec());
    let mut module_tables = pm.module.tables();
    module_tables.names = Some(pm.module.names().to_vec());
    let relations = ext
        .relations()
        .map(|((i, j), rel)| RelationSpec {
            i: i + 1,
            j: j + 1,
            c: rname(rel.c),
            d0: Some(rname(rel.constant)),
            d: Some(rel.linear.iter().map(|&e| rname(e)).collect()),
        })
        .collect();
    InstanceFile {
        name: inst.name.clone(),
        ring: RingSpec::Tables(ring_tables),
        n: ext.nvars(),
        sigma: Some(ext.sigmas().iter().map(|s| MapSpec::Table(s.table().to_vec())).collect()),
        delta: Some(ext.deltas().iter().map(|s| MapSpec::Table(s.table().to_vec())).collect()),
        relations,
        module: Some(ModuleSpec::Tables(module_tables)),
        embedding: pm
            .embedding
            .as_ref()
            .map(|emb| EmbeddingSpec::Images(emb.iter().map(|&m| pm.module.name(m).to_string()).collect())),
        order: Some(OrderSpec::Full(FullOrder {
            kind: ext.order().kind(),
            precedence: ext.order().precedence().iter().map(|v| v + 1).collect(),
        })),
        claims: Some(inst.claims),
        consistency_bound: Some(inst.consistency_bound),
        seed: Some(ext.seed()),
    }
}

pub fn canonical_json(inst: &Instance) -> String {
    serde_json::to_string(&canonical(inst)).expect("instance files serialize")
}
