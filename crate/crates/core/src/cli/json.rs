//! JSON documents. Coefficients are always carried inside strings; object
//! keys are sorted, so equal results give equal bytes.

use serde_json::{json, Map, Value};

use crate::puiseux::{Residual, ResidualReport, Verdict};
use crate::solver::{Existence, ExistenceVerdict, Family, MinPolySystem, Reason, SolvedSystem};
use crate::systems::{DiffSystem, SimpleSystem};
use crate::thomas::{Decomposition, Mode};

pub const SCHEMA: u64 = 1;

pub fn system(s: &DiffSystem) -> Value {
    json!({
        "unknowns": s.names,
        "equations": s.equations.iter().map(|p| s.show(p)).collect::<Vec<_>>(),
        "inequations": s.inequations.iter().map(|p| s.show(p)).collect::<Vec<_>>(),
    })
}

fn name(s: &DiffSystem, j: Option<usize>) -> Value {
    match j {
        Some(j) => Value::String(s.names[j].clone()),
        None => Value::Null,
    }
}

pub fn simple(g: &SimpleSystem, family: Family) -> Value {
    let s = &g.system;
    json!({
        "equations": s.equations.iter().map(|p| s.show(p)).collect::<Vec<_>>(),
        "inequations": s.inequations.iter().map(|p| s.show(p)).collect::<Vec<_>>(),
        "type": g.kind.to_string(),
        "t": name(s, g.t),
        "free_variables": g.free_variables.iter().map(|&j| s.names[j].clone()).collect::<Vec<_>>(),
        "parametric_variable": name(s, g.parametric),
        "shift_family": family == Family::Shift,
        "family": family.to_string(),
    })
}

pub fn minpoly(s: &DiffSystem, m: &MinPolySystem) -> Value {
    json!({
        "polynomials": m.polys.iter().map(|(j, q)| json!({"unknown": s.names[*j], "polynomial": s.show(q)})).collect::<Vec<_>>(),
        "degree_bound": m.bound,
    })
}

/// The common envelope of every document.
pub fn document(command: &str, input: &DiffSystem, body: Map<String, Value>) -> Value {
    let mut doc = Map::new();
    doc.insert("schema".into(), json!(SCHEMA));
    doc.insert("command".into(), json!(command));
    doc.insert("input".into(), system(input));
    doc.extend(body);
    Value::Object(doc)
}

fn mode(m: Mode) -> &'static str {
    match m {
        Mode::Algebraic => "algebraic",
        Mode::Differential => "differential",
    }
}

pub fn decomposition(d: &Decomposition) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("mode".into(), json!(mode(d.mode)));
    m.insert(
        "systems".into(),
        Value::Array(d.systems.iter().map(|g| simple(g, Family::Fixed)).collect()),
    );
    m.insert("timing".into(), json!({"decomposition_steps": d.log.len()}));
    m
}

pub fn solved(systems: &[SolvedSystem], d: &Decomposition, diagnostics: &[String], with_minpoly: bool, with_simple: bool) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("mode".into(), json!(mode(d.mode)));
    if with_simple {
        m.insert(
            "systems".into(),
            Value::Array(systems.iter().map(|s| simple(&s.simple, s.family)).collect()),
        );
    }
    if with_minpoly {
        m.insert(
            "minimal_polynomial_systems".into(),
            Value::Array(
                systems
                    .iter()
                    .map(|s| match &s.minimal_polynomials {
                        Some(mp) => minpoly(&s.simple.system, mp),
                        None => Value::Null,
                    })
                    .collect(),
            ),
        );
    }
    m.insert("diagnostics".into(), json!(diagnostics));
    m.insert("timing".into(), json!({"decomposition_steps": d.log.len()}));
    m
}

pub fn existence(v: &ExistenceVerdict) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("existence".into(), json!(v.verdict.to_string()));
    let witness = match &v.witness {
        None => Value::Null,
        Some((g, reason)) => {
            let s = &g.system;
            let r = match reason {
                Some(Reason::FirstOrder(t)) => json!({"kind": "first-order", "unknown": s.names[*t]}),
                Some(Reason::FreeVariable(j)) => json!({"kind": "free-variable", "unknown": s.names[*j]}),
                Some(Reason::Parametric(t)) => json!({"kind": "parametric", "unknown": s.names[*t]}),
                None => Value::Null,
            };
            json!({"system": simple(g, Family::Fixed), "reason": r})
        }
    };
    m.insert("witness".into(), witness);
    debug_assert!(v.verdict != Existence::NoSolution || v.witness.is_none());
    m
}

fn residual(r: &Residual) -> Value {
    match r {
        Residual::Valuation(v) => json!({"valuation": crate::poly::coeff::fmt_rat(v)}),
        Residual::AtLeast(o) => json!({"at_least": crate::poly::coeff::fmt_rat(o)}),
        Residual::Zero => json!("zero"),
    }
}

pub fn report(r: &ResidualReport) -> Value {
    let verdict = match &r.verdict {
        Verdict::Pass(n) => json!({"pass": crate::poly::coeff::fmt_rat(n)}),
        Verdict::Fail { equation, valuation } => {
            json!({"fail": {"equation": equation, "valuation": crate::poly::coeff::fmt_rat(valuation)}})
        }
        Verdict::FailInequation(i) => json!({"fail_inequation": i}),
        Verdict::Inconclusive => json!("inconclusive"),
    };
    json!({
        "equations": r.equations.iter().map(residual).collect::<Vec<_>>(),
        "inequations": r.inequations.iter().map(residual).collect::<Vec<_>>(),
        "verdict": verdict,
    })
}
