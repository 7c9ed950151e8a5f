use std::time::Instant;

use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use spbw_core::annihilator::{ann_in_a_bounded, is_idempotent_generated, AnnError, IdempotentGen, RightIdeal};
use spbw_core::monomial::OrderKind;
use spbw_core::properties::{check_property, theorem_suite, DeciderError, TheoremStatus, Verdict, PROPERTY_NAMES};
use spbw_core::search::SearchError;
use spbw_core::{ElemSet, Limits};

use crate::instance::{canonical_json, load, Instance, Overrides};
use crate::literal::{parse_module_poly, parse_poly, LiteralError};
use crate::report::{error_result, exit, Bounds, InstanceInfo, Report, ENGINE_VERSION, SCHEMA};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    Validate,
    Mul(String, String),
    Act(String, String),
    Ann(Vec<String>),
    Check(String),
    Theorems,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Mul(..) => "mul",
            Command::Act(..) => "act",
            Command::Ann(_) => "ann",
            Command::Check(_) => "check",
            Command::Theorems => "theorems",
        }
    }

    fn args(&self) -> Vec<String> {
        match self {
            Command::Validate | Command::Theorems => vec![],
            Command::Mul(a, b) | Command::Act(a, b) => vec![a.clone(), b.clone()],
            Command::Ann(v) => v.clone(),
            Command::Check(p) => vec![p.clone()],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Options {
    pub degree: u32,
    pub max_space: Option<u128>,
    pub order: Option<OrderKind>,
    pub seed: Option<u64>,
    pub timing: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options { degree: 2, max_space: None, order: None, seed: None, timing: false }
    }
}

/// A report plus a short human-readable summary.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub report: Report,
    pub human: String,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        self.report.exit_code
    }
}

struct Done {
    result: Value,
    code: i32,
    human: String,
}

fn input_error(kind: &str, message: String) -> Done {
    Done { result: error_result(kind, &message), code: exit::INPUT, human: format!("error ({kind}): {message}") }
}

fn literal_error(which: &str, e: LiteralError) -> Done {
    input_error("literal", format!("{which}: {e}"))
}

pub fn run(text: &str, cmd: &Command, opts: &Options) -> Outcome {
    let start = Instant::now();
    let limits = Limits { max_space: opts.max_space.unwrap_or(Limits::default().max_space), ..Limits::default() };
    let overrides = Overrides { order: opts.order, seed: opts.seed };
    let (instance, bounds, done) = match load(text, overrides, &limits) {
        Err(e) => {
            let kind = match e {
                crate::instance::InstanceError::Parse { .. } => "parse",
                crate::instance::InstanceError::Validation { .. } => "validation",
            };
            (None, None, input_error(kind, e.to_string()))
        }
        Ok(inst) => {
            let digest = hex::encode(Sha256::digest(canonical_json(&inst).as_bytes()));
            let order = inst.pm.ext.order();
            let bounds = Bounds {
                degree: opts.degree,
                max_space: limits.max_space,
                order: match order.kind() {
                    OrderKind::DegLex => "deglex".into(),
                    OrderKind::Lex => "lex".into(),
                },
                seed: inst.pm.ext.seed(),
                consistency_bound: inst.consistency_bound,
            };
            let done = dispatch(&inst, cmd, opts.degree, &limits);
            (Some(InstanceInfo { name: inst.name.clone(), sha256: digest }), Some(bounds), done)
        }
    };
    let report = Report {
        schema: SCHEMA,
        engine_version: ENGINE_VERSION,
        command: cmd.name().to_string(),
        args: cmd.args(),
        instance,
        bounds,
        result: done.result,
        exit_code: done.code,
        timing_ms: opts.timing.then(|| start.elapsed().as_millis()),
    };
    Outcome { report, human: done.human }
}

fn dispatch(inst: &Instance, cmd: &Command, d: u32, limits: &Limits) -> Done {
    match cmd {
        Command::Validate => validate(inst),
        Command::Mul(a, b) => mul(inst, a, b),
        Command::Act(m, f) => act(inst, m, f),
        Command::Ann(ms) => ann(inst, ms, d, limits),
        Command::Check(p) => check(inst, p, d, limits),
        Command::Theorems => theorems(inst, d, limits),
    }
}

fn validate(inst: &Instance) -> Done {
    let pm = &inst.pm;
    let ring = pm.ring();
    let ext = &pm.ext;
    let cert = ext.certificate();
    let result = json!({
        "ring": {
            "label": ring.label(),
            "order": ring.order(),
            "characteristic": ring.characteristic(),
            "commutative": ring.is_commutative(),
            "names": ring.names(),
        },
        "nvars": ext.nvars(),
        "monomial_order": {
            "kind": match ext.order().kind() { OrderKind::DegLex => "deglex", OrderKind::Lex => "lex" },
            "precedence": ext.order().precedence().iter().map(|v| v + 1).collect::<Vec<_>>(),
        },
        "quasi_commutative": ext.is_quasi_commutative(),
        "bijective": ext.is_bijective(),
        "consistency": {
            "bound": cert.bound,
            "overlaps_checked": cert.overlaps_checked,
            "fuzz_triples": cert.fuzz_triples,
            "seed": ext.seed(),
        },
        "module": {
            "label": pm.module.label(),
            "order": pm.module.order(),
            "embedded": pm.embedding.is_some(),
            "names": pm.module.names(),
        },
    });
    let human = format!(
        "valid: {} with {} variable(s), module {} of order {}; consistent up to degree {} ({} overlaps, {} fuzz triples)",
        ring.label(),
        ext.nvars(),
        pm.module.label(),
        pm.module.order(),
        cert.bound,
        cert.overlaps_checked,
        cert.fuzz_triples
    );
    Done { result, code: exit::OK, human }
}

fn mul(inst: &Instance, a: &str, b: &str) -> Done {
    let ext = &inst.pm.ext;
    let f = match parse_poly(ext, a) {
        Ok(f) => f,
        Err(e) => return literal_error("left operand", e),
    };
    let g = match parse_poly(ext, b) {
        Ok(g) => g,
        Err(e) => return literal_error("right operand", e),
    };
    let p = ext.mul(&f, &g);
    let product = ext.format(&p);
    Done {
        result: json!({ "left": ext.format(&f), "right": ext.format(&g), "product": product }),
        code: exit::OK,
        human: product,
    }
}

fn act(inst: &Instance, m: &str, f: &str) -> Done {
    let pm = &inst.pm;
    let mp = match parse_module_poly(pm, m) {
        Ok(x) => x,
        Err(e) => return literal_error("module element", e),
    };
    let fp = match parse_poly(&pm.ext, f) {
        Ok(x) => x,
        Err(e) => return literal_error("ring element", e),
    };
    let out = pm.format(&pm.act(&mp, &fp));
    Done {
        result: json!({ "m": pm.format(&mp), "f": pm.ext.format(&fp), "result": out }),
        code: exit::OK,
        human: out,
    }
}

fn names(inst: &Instance, set: ElemSet) -> Vec<String> {
    set.iter().map(|r| inst.pm.ring().name(r).to_string()).collect()
}

fn search_error(e: &SearchError) -> Done {
    let SearchError::SearchSpaceTooLarge { space, limit } = e;
    Done {
        result: json!({ "error": {
            "kind": "search_space_too_large",
            "message": e.to_string(),
            "space": space.to_string(),
            "limit": limit.to_string(),
        }}),
        code: exit::INPUT,
        human: format!("error: {e}"),
    }
}

fn ann(inst: &Instance, args: &[String], d: u32, limits: &Limits) -> Done {
    let pm = &inst.pm;
    let ring = pm.ring();
    let mut ms = Vec::new();
    for (k, a) in args.iter().enumerate() {
        match parse_module_poly(pm, a) {
            Ok(m) => ms.push(m),
            Err(e) => return literal_error(&format!("element {}", k + 1), e),
        }
    }
    let ann_r: ElemSet = ring.elements().filter(|&r| ms.iter().all(|m| pm.act_scalar(m, r).is_zero())).collect();
    let generator = match is_idempotent_generated(ring, &RightIdeal { elements: ann_r }) {
        IdempotentGen::Found(e) => Value::String(ring.name(e).to_string()),
        IdempotentGen::NotFound => Value::Null,
    };
    let ann_a = match ann_in_a_bounded(pm, &ms, d, limits) {
        Ok(fs) => fs,
        Err(AnnError::Search(e)) => return search_error(&e),
    };
    let human = format!(
        "ann_R = {{{}}} ({}); {} annihilating polynomial(s) of degree <= {d}",
        names(inst, ann_r).join(", "),
        match &generator {
            Value::String(e) => format!("generated by idempotent {e}"),
            _ => "not generated by an idempotent".into(),
        },
        ann_a.len()
    );
    Done {
        result: json!({
            "elements": ms.iter().map(|m| pm.format(m)).collect::<Vec<_>>(),
            "ann_r": { "elements": names(inst, ann_r), "idempotent_generator": generator },
            "ann_a": {
                "degree": d,
                "count": ann_a.len(),
                "elements": ann_a.iter().map(|f| pm.ext.format(f)).collect::<Vec<_>>(),
            },
        }),
        code: exit::OK,
        human,
    }
}

fn check(inst: &Instance, property: &str, d: u32, limits: &Limits) -> Done {
    let pm = &inst.pm;
    let v = match check_property(pm, property, d, limits) {
        Ok(v) => v,
        Err(DeciderError::UnknownProperty(p)) => {
            return Done {
                result: json!({ "error": {
                    "kind": "unknown_property",
                    "message": format!("unknown property '{p}'"),
                    "known": PROPERTY_NAMES,
                }}),
                code: exit::INPUT,
                human: format!("error: unknown property '{p}' (known: {})", PROPERTY_NAMES.join(", ")),
            }
        }
        Err(DeciderError::Search(e)) => return search_error(&e),
        Err(e) => return input_error("decider", e.to_string()),
    };
    let (status, code) = match &v.verdict {
        Verdict::Holds => ("holds", exit::OK),
        Verdict::HoldsUpToBound(_) => ("holds_up_to_bound", exit::OK),
        Verdict::Fails(_) => ("fails", exit::FAILS),
    };
    let mut result = json!({ "property": v.property, "verdict": status, "bound": v.bound });
    let mut human = match v.bound {
        Some(b) if v.holds() => format!("{}: {status} (degree <= {b})", v.property),
        _ => format!("{}: {status}", v.property),
    };
    if let Some(w) = v.verdict.witness() {
        let text = w.render(pm);
        let replayed = w.replays(pm);
        result["witness"] = serde_json::to_value(w).expect("witnesses serialize");
        result["witness_text"] = Value::String(text.clone());
        result["replayed"] = Value::Bool(replayed);
        human.push_str(&format!("\n  witness: {text}\n  replayed: {replayed}"));
    }
    Done { result, code, human }
}

fn theorems(inst: &Instance, d: u32, limits: &Limits) -> Done {
    let reports = theorem_suite(&inst.pm, d, limits);
    let count = |f: fn(&TheoremStatus) -> bool| reports.iter().filter(|r| f(&r.status)).count();
    let confirmed = count(|s| matches!(s, TheoremStatus::Confirmed));
    let not_met = count(|s| matches!(s, TheoremStatus::HypothesisNotMet(_)));
    let violations = count(|s| matches!(s, TheoremStatus::Violation(_)));
    let skipped = count(|s| matches!(s, TheoremStatus::Skipped(_)));
    let mut human = String::new();
    for r in &reports {
        let status = match &r.status {
            TheoremStatus::Confirmed => "confirmed".to_string(),
            TheoremStatus::HypothesisNotMet(h) => format!("hypothesis not met ({})", h.join(", ")),
            TheoremStatus::Violation(v) => format!("VIOLATION: {v}"),
            TheoremStatus::Skipped(s) => format!("skipped: {s}"),
        };
        human.push_str(&format!("{:<40} {status}\n", r.id));
    }
    human.push_str(&format!(
        "{confirmed} confirmed, {not_met} hypothesis not met, {skipped} skipped, {violations} violation(s)"
    ));
    Done {
        result: json!({
            "reports": reports,
            "summary": {
                "confirmed": confirmed,
                "hypothesis_not_met": not_met,
                "skipped": skipped,
                "violations": violations,
            },
        }),
        code: if violations > 0 { exit::VIOLATION } else { exit::OK },
        human,
    }
}
