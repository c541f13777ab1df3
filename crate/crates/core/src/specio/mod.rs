//! Sequence specification documents and the expression grammar.

mod parser;

use serde_json::{Map, Value};

use crate::certify::{Bound, CandidateBounds};
use crate::error::{SpecError, SpecIssue};
use crate::exact::{Polynomial, Rational, RationalFunction};
use crate::logexpr::LogExpr;
use crate::sequence::PRecursiveSequence;

pub use parser::{lower, parse_ast, parse_logexpr, parse_ratfunc, parse_rational, Expr, ExprKind};

pub const SPEC_SCHEMA: &str = "turancert-spec/1";

/// How many terms past `positivity_from` are checked at load time.
pub const POSITIVITY_CHECK_SPAN: i64 = 100;

/// A fully parsed and validated specification.
#[derive(Clone, Debug)]
pub struct SequenceSpec {
    pub name: String,
    pub order: usize,
    /// Coefficient strings as written, with the declared `offset`.
    pub coeff_text: Vec<String>,
    pub offset: i64,
    pub start: i64,
    pub initial: Vec<Rational>,
    pub positivity_from: i64,
    pub oeis_id: Option<String>,
    pub bounds: CandidateBounds,
    sequence: PRecursiveSequence,
}

impl SequenceSpec {
    /// The recurrence normalized to `sum p_i(n) a_(n+i) = 0`.
    pub fn sequence(&self) -> &PRecursiveSequence {
        &self.sequence
    }
}

struct Issues(Vec<SpecIssue>);

impl Issues {
    fn push(&mut self, path: impl Into<String>, message: impl Into<String>) {
        self.0.push(SpecIssue {
            path: path.into(),
            message: message.into(),
        });
    }
}

fn int_field(obj: &Map<String, Value>, key: &str, path: &str, issues: &mut Issues) -> Option<i64> {
    match obj.get(key) {
        None => {
            issues.push(path, "missing field");
            None
        }
        Some(v) => v.as_i64().or_else(|| {
            issues.push(path, "expected an integer");
            None
        }),
    }
}

fn str_field<'a>(obj: &'a Map<String, Value>, key: &str, path: &str, issues: &mut Issues) -> Option<&'a str> {
    match obj.get(key) {
        None => {
            issues.push(path, "missing field");
            None
        }
        Some(v) => v.as_str().or_else(|| {
            issues.push(path, "expected a string");
            None
        }),
    }
}

fn check_keys(obj: &Map<String, Value>, allowed: &[&str], prefix: &str, issues: &mut Issues) {
    for k in obj.keys() {
        if !allowed.contains(&k.as_str()) {
            let path = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
            issues.push(path, "unknown field");
        }
    }
}

fn bound<T>(
    obj: &Map<String, Value>,
    key: &str,
    start: Option<i64>,
    parse: impl Fn(&str) -> Result<T, crate::error::ParseError>,
    issues: &mut Issues,
) -> Option<Bound<T>> {
    let v = obj.get(key)?;
    let path = format!("bounds.{key}");
    let Some(b) = v.as_object() else {
        issues.push(path, "expected an object {expr, from}");
        return None;
    };
    check_keys(b, &["expr", "from"], &path, issues);
    let text = str_field(b, "expr", &format!("{path}.expr"), issues);
    let from = int_field(b, "from", &format!("{path}.from"), issues);
    if let (Some(from), Some(start)) = (from, start) {
        if from < start {
            issues.push(format!("{path}.from"), format!("{from} precedes the start index {start}"));
        }
    }
    let expr = match parse(text?) {
        Ok(e) => e,
        Err(e) => {
            issues.push(format!("{path}.expr"), e.to_string());
            return None;
        }
    };
    Some(Bound { expr, from: from? })
}

/// Parse and validate a spec document, collecting every problem found.
pub fn load_spec(text: &str) -> Result<SequenceSpec, SpecError> {
    let doc: Value = serde_json::from_str(text).map_err(|e| SpecError {
        issues: vec![SpecIssue {
            path: String::new(),
            message: format!("invalid JSON: {e}"),
        }],
    })?;
    load_spec_value(&doc)
}

pub fn load_spec_value(doc: &Value) -> Result<SequenceSpec, SpecError> {
    let mut issues = Issues(Vec::new());
    let Some(obj) = doc.as_object() else {
        issues.push("", "expected a JSON object");
        return Err(SpecError { issues: issues.0 });
    };
    check_keys(
        obj,
        &["schema", "name", "order", "offset", "coeffs", "initial", "positivity_from", "oeis_id", "bounds"],
        "",
        &mut issues,
    );
    if let Some(s) = obj.get("schema") {
        if s.as_str() != Some(SPEC_SCHEMA) {
            issues.push("schema", format!("expected \"{SPEC_SCHEMA}\""));
        }
    }
    let name = str_field(obj, "name", "name", &mut issues).map(str::to_owned);
    if name.as_deref() == Some("") {
        issues.push("name", "must not be empty");
    }
    let order = int_field(obj, "order", "order", &mut issues).and_then(|d| {
        if d < 1 {
            issues.push("order", "must be at least 1");
            None
        } else {
            Some(d as usize)
        }
    });
    let offset = match obj.get("offset") {
        None => Some(0),
        Some(v) => v.as_i64().or_else(|| {
            issues.push("offset", "expected an integer");
            None
        }),
    };

    let mut coeff_text = Vec::new();
    let mut coeffs = Vec::new();
    match obj.get("coeffs").map(|v| v.as_array()) {
        None => issues.push("coeffs", "missing field"),
        Some(None) => issues.push("coeffs", "expected an array of strings"),
        Some(Some(arr)) => {
            if let Some(d) = order {
                if arr.len() != d + 1 {
                    issues.push("coeffs", format!("order {d} needs {} coefficients, got {}", d + 1, arr.len()));
                }
            }
            for (i, v) in arr.iter().enumerate() {
                let path = format!("coeffs[{i}]");
                let Some(s) = v.as_str() else {
                    issues.push(path, "expected a string");
                    continue;
                };
                coeff_text.push(s.to_owned());
                match parse_ratfunc(s) {
                    Ok(r) => match r.as_polynomial() {
                        Some(p) => coeffs.push(p),
                        None => issues.push(path, "coefficient must be a polynomial in n"),
                    },
                    Err(e) => issues.push(path, e.to_string()),
                }
            }
        }
    }

    let mut start = None;
    let mut initial = Vec::new();
    match obj.get("initial").map(|v| v.as_object()) {
        None => issues.push("initial", "missing field"),
        Some(None) => issues.push("initial", "expected an object {start, values}"),
        Some(Some(init)) => {
            check_keys(init, &["start", "values"], "initial", &mut issues);
            start = int_field(init, "start", "initial.start", &mut issues);
            match init.get("values").map(|v| v.as_array()) {
                None => issues.push("initial.values", "missing field"),
                Some(None) => issues.push("initial.values", "expected an array of strings"),
                Some(Some(arr)) => {
                    for (i, v) in arr.iter().enumerate() {
                        let path = format!("initial.values[{i}]");
                        match v.as_str().map(parse_rational) {
                            None => issues.push(path, "expected a decimal string"),
                            Some(Err(e)) => issues.push(path, e.to_string()),
                            Some(Ok(q)) => initial.push(q),
                        }
                    }
                    if let Some(d) = order {
                        if arr.len() < d {
                            issues.push(
                                "initial.values",
                                format!("order {d} needs at least {d} initial values, got {}", arr.len()),
                            );
                        }
                    }
                }
            }
        }
    }

    let positivity_from = int_field(obj, "positivity_from", "positivity_from", &mut issues);
    if let (Some(p), Some(s)) = (positivity_from, start) {
        if p < s {
            issues.push("positivity_from", format!("{p} precedes the start index {s}"));
        }
    }

    let oeis_id = match obj.get("oeis_id") {
        None => None,
        Some(v) => match v.as_str() {
            Some(id) if crate::oeis::valid_id(id) => Some(id.to_owned()),
            _ => {
                issues.push("oeis_id", "expected an id of the form A000000");
                None
            }
        },
    };

    let mut bounds = CandidateBounds::default();
    if let Some(b) = obj.get("bounds") {
        match b.as_object() {
            None => issues.push("bounds", "expected an object"),
            Some(b) => {
                check_keys(b, &["f", "g", "s_log", "S_log", "fu", "gu"], "bounds", &mut issues);
                let rf = |s: &str| parse_ratfunc(s);
                let le = |s: &str| parse_logexpr(s);
                bounds.ratio_lower = bound::<RationalFunction>(b, "f", start, rf, &mut issues);
                bounds.ratio_upper = bound::<RationalFunction>(b, "g", start, rf, &mut issues);
                bounds.value_lower = bound::<LogExpr>(b, "s_log", start, le, &mut issues);
                bounds.value_upper = bound::<LogExpr>(b, "S_log", start, le, &mut issues);
                bounds.u_lower = bound::<RationalFunction>(b, "fu", start, rf, &mut issues);
                bounds.u_upper = bound::<RationalFunction>(b, "gu", start, rf, &mut issues);
            }
        }
    }

    if !issues.0.is_empty() {
        return Err(SpecError { issues: issues.0 });
    }
    let (name, order, offset, start, positivity_from) = (
        name.unwrap(),
        order.unwrap(),
        offset.unwrap(),
        start.unwrap(),
        positivity_from.unwrap(),
    );

    // sum p_i(n) a_(n+offset+i) = 0 becomes sum p_i(m - offset) a_(m+i) = 0
    let shift = Rational::from_integer((-offset).into());
    let normalized: Vec<Polynomial> = coeffs.iter().map(|p| p.shift(&shift)).collect();
    let sequence = match PRecursiveSequence::new(name.clone(), normalized, start, initial.clone(), positivity_from) {
        Ok(s) => s,
        Err(e) => {
            issues.push("coeffs", e.to_string());
            return Err(SpecError { issues: issues.0 });
        }
    };
    match sequence.first_nonpositive(positivity_from + POSITIVITY_CHECK_SPAN) {
        Ok(None) => {}
        Ok(Some(k)) => issues.push("positivity_from", format!("term a_{k} = {} is not positive", sequence.term(k).unwrap())),
        Err(e) => issues.push("coeffs", e.to_string()),
    }
    if !issues.0.is_empty() {
        return Err(SpecError { issues: issues.0 });
    }

    Ok(SequenceSpec {
        name,
        order,
        coeff_text,
        offset,
        start,
        initial,
        positivity_from,
        oeis_id,
        bounds,
        sequence,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use serde_json::json;

    fn baxter_doc() -> Value {
        json!({
            "schema": "turancert-spec/1",
            "name": "baxter",
            "order": 2,
            "offset": -1,
            "coeffs": ["8*n^2 - 8*n", "7*n^2 + 21*n + 12", "-(n+3)*(n+4)"],
            "initial": {"start": 0, "values": ["1", "1", "2", "6"]},
            "positivity_from": 0,
            "oeis_id": "A001181",
            "bounds": {
                "f": {"expr": "8 - 32/n + 413/(3*n^2)", "from": 753},
                "g": {"expr": "8 - 32/n + 419/(3*n^2)", "from": 753},
                "s_log": {"expr": "n*log(8) - 5*log(n)", "from": 3},
                "S_log": {"expr": "n*log(8) - 3*log(n)", "from": 3},
                "fu": {"expr": "1 - 1/n^2", "from": 14},
                "gu": {"expr": "1 - 8/n^3", "from": 14}
            }
        })
    }

    fn h_doc(positivity_from: i64) -> Value {
        json!({
            "name": "h",
            "order": 2,
            "offset": -2,
            "coeffs": ["-n*(n-1)^2", "-2*n*(n-1)", "2"],
            "initial": {"start": 0, "values": ["1", "0", "1", "6"]},
            "positivity_from": positivity_from
        })
    }

    #[test]
    fn baxter_loads() {
        let s = load_spec_value(&baxter_doc()).unwrap();
        assert_eq!(s.sequence().term(4).unwrap(), rat(22));
        assert_eq!(s.bounds.u().unwrap().1.from, 14);
        assert!(s.bounds.value().is_ok());
    }

    #[test]
    fn h_positivity_is_validated() {
        let s = load_spec_value(&h_doc(2)).unwrap();
        assert_eq!(s.sequence().term(4).unwrap(), rat(90));
        let e = load_spec_value(&h_doc(1)).unwrap_err();
        assert_eq!(e.issues.len(), 1);
        assert_eq!(e.issues[0].path, "positivity_from");
    }

    #[test]
    fn errors_are_aggregated_with_paths() {
        let mut d = baxter_doc();
        d["initial"]["values"] = json!(["1"]);
        d["coeffs"][1] = json!("7*n^2 +");
        d["bounds"]["fu"]["from"] = json!(-3);
        d["extra"] = json!(1);
        let e = load_spec_value(&d).unwrap_err();
        let paths: Vec<&str> = e.issues.iter().map(|i| i.path.as_str()).collect();
        assert!(paths.contains(&"initial.values"), "{paths:?}");
        assert!(paths.contains(&"coeffs[1]"), "{paths:?}");
        assert!(paths.contains(&"bounds.fu.from"), "{paths:?}");
        assert!(paths.contains(&"extra"), "{paths:?}");
    }

    #[test]
    fn wrong_schema_and_inconsistent_initials() {
        let mut d = baxter_doc();
        d["schema"] = json!("other/2");
        assert_eq!(load_spec_value(&d).unwrap_err().issues[0].path, "schema");
        let mut d = baxter_doc();
        d["initial"]["values"] = json!(["1", "1", "2", "7"]);
        assert_eq!(load_spec_value(&d).unwrap_err().issues[0].path, "coeffs");
        assert!(load_spec("{").is_err());
    }
}
