//! Browser bindings. Every export takes and returns strings; results are
//! JSON objects, failures are `{"error": CODE, "message": ...}`.

use num_rational::Rational64;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use stringy_core::catalog::{catalog, known_action};
use stringy_core::dualgraph::{validate, ResolutionGraph};
use stringy_core::equivariant::{modified_minimal_resolution, quotient, GraphAction, QuotientGraph};
use stringy_core::laurent::{expand, parse_motive, poincare};
use stringy_core::stringy::{stringy_local, truncation_report};
use stringy_core::{Error, MotiveValue};

fn fail(e: Error) -> Value {
    json!({"error": e.code(), "message": e.to_string()})
}

fn finish(r: Result<Value, Error>) -> String {
    r.unwrap_or_else(fail).to_string()
}

fn graph_json(g: &ResolutionGraph, act: &GraphAction) -> Value {
    json!({
        "vertices": g.vertices().iter().map(|v| json!({
            "id": v.id,
            "a": v.a.map(|a| a.to_string()),
            "special": v.special,
        })).collect::<Vec<_>>(),
        "edges": g.edges().iter().map(|&(i, j)| [i, j]).collect::<Vec<_>>(),
        "group": act.label(),
        "order": act.group_order(),
    })
}

fn quotient_json(g: &ResolutionGraph, q: &QuotientGraph) -> Value {
    json!({
        "vertices": q.vertices().iter().map(|v| json!({
            "id": v.id,
            "members": v.members.iter().map(|&i| g.vertex(i).id.clone()).collect::<Vec<_>>(),
            "a": v.a.to_string(),
            "m": v.m,
            "special": v.special,
        })).collect::<Vec<_>>(),
        "edges": q.edges().iter().map(|&(i, j)| [i, j]).collect::<Vec<_>>(),
    })
}

fn motive_json(value: &MotiveValue) -> Result<Value, Error> {
    let report = truncation_report(value)?;
    Ok(json!({
        "motive": value.to_string(),
        "N": report.n().to_string(),
        "C": report.c().to_string(),
    }))
}

fn pipeline(g: &ResolutionGraph, act: &GraphAction) -> Result<Value, Error> {
    validate(g)?;
    let (resolved, action) = modified_minimal_resolution(g, act)?;
    let q = quotient(&resolved, &action)?;
    let value = stringy_local(&q)?;
    let mut out = motive_json(&value)?;
    out["input"] = graph_json(g, act);
    out["resolved"] = graph_json(&resolved, &action);
    out["quotient"] = quotient_json(&resolved, &q);
    Ok(out)
}

/// Keys accepted by [`catalog_quotient`], one per known action.
#[wasm_bindgen]
pub fn catalog_keys() -> String {
    let keys: Vec<String> = catalog()
        .into_iter()
        .flat_map(|e| {
            let name = e.name.clone();
            e.known_actions
                .into_iter()
                .map(move |(_, k)| format!("{name}:{k}"))
        })
        .collect();
    json!(keys).to_string()
}

/// Input graph, its modified resolution, the orbit graph and the motive.
#[wasm_bindgen]
pub fn catalog_quotient(key: &str) -> String {
    finish(known_action(key).and_then(|(g, act)| pipeline(&g, &act)))
}

/// Same as [`catalog_quotient`] for user-supplied graph and action files.
#[wasm_bindgen]
pub fn graph_quotient(graph: &str, action: &str) -> String {
    finish((|| {
        let g = ResolutionGraph::from_json(graph)?;
        let act = if action.trim().is_empty() {
            GraphAction::trivial(&g)
        } else {
            GraphAction::from_json(&g, action)?
        };
        pipeline(&g, &act)
    })())
}

#[wasm_bindgen]
pub fn expand_expression(expr: &str, cutoff: &str) -> String {
    finish((|| {
        let value = parse_motive(expr)?;
        let cutoff: Rational64 = cutoff
            .trim()
            .parse()
            .map_err(|e| Error::Parse(format!("bad cutoff `{cutoff}`: {e}")))?;
        let mut out = json!({
            "motive": value.to_string(),
            "degree": value.degree().to_string(),
            "expansion": expand(&value, cutoff).to_string(),
            "poincare": poincare(&value, cutoff).to_string(),
        });
        if let Ok(report) = truncation_report(&value) {
            out["N"] = json!(report.n().to_string());
            out["C"] = json!(report.c().to_string());
        }
        Ok(out)
    })())
}

#[wasm_bindgen]
pub fn compare_expressions(f: &str, g: &str) -> String {
    finish((|| {
        let (x, y) = (parse_motive(f)?, parse_motive(g)?);
        let verdict = match x.compare(&y) {
            std::cmp::Ordering::Greater => "GREATER",
            std::cmp::Ordering::Equal => "EQUAL",
            std::cmp::Ordering::Less => "LESS",
        };
        let diff = &x - &y;
        Ok(json!({
            "verdict": verdict,
            "left": x.to_string(),
            "right": y.to_string(),
            "difference": diff.to_string(),
            "leading": expand(&diff, diff_cutoff(&diff)).to_string(),
        }))
    })())
}

/// Enough of the difference to show the deciding term.
fn diff_cutoff(d: &MotiveValue) -> Rational64 {
    match d.degree() {
        stringy_core::Degree::Finite(e) => e,
        stringy_core::Degree::NegInfinity => Rational64::from_integer(0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: String) -> Value {
        serde_json::from_str(&s).unwrap()
    }

    #[test]
    fn catalog_round() {
        let keys = parse(catalog_keys());
        assert!(keys.as_array().unwrap().iter().any(|k| k == "E6:Z2"));
        let v = parse(catalog_quotient("E6:Z2"));
        assert_eq!(v["motive"], "4*L + 1");
        assert_eq!(v["quotient"]["vertices"].as_array().unwrap().len(), 4);
        let v = parse(catalog_quotient("A2:Z2"));
        assert_eq!(v["resolved"]["vertices"].as_array().unwrap().len(), 3);
        assert_eq!(v["motive"], "L + 1");
        assert_eq!(parse(catalog_quotient("E9"))["error"], "UNKNOWN_ENTRY");
    }

    #[test]
    fn user_graph() {
        let g = r#"{"vertices": [{"id": "x", "a": "1/2"}]}"#;
        let v = parse(graph_quotient(g, ""));
        assert_eq!(v["motive"], "L^(3/2) + L + L^(1/2) + 1");
        assert_eq!(v["C"], "2");
        assert_eq!(parse(graph_quotient("{", ""))["error"], "PARSE_ERROR");
    }

    #[test]
    fn expansion_and_comparison() {
        let v = parse(expand_expression("1/(L+1)", "-2"));
        assert_eq!(v["expansion"], "L^(-1) - L^(-2) + O(L^(<-2))");
        assert_eq!(v["degree"], "-1");
        let v = parse(compare_expressions("7*L+1", "4*L+1"));
        assert_eq!(v["verdict"], "GREATER");
        assert_eq!(v["difference"], "3*L");
        assert_eq!(parse(compare_expressions("L", "L"))["verdict"], "EQUAL");
        assert_eq!(parse(expand_expression("L +", "0"))["error"], "PARSE_ERROR");
    }
}
