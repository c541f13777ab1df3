//! Single-leaf perturbations of certificate documents.

use serde_json::Value;
use turancert::certify::*;
use turancert::exact::Rational;
use turancert::sequence::Target;

const SWAPS: &[(&str, &str)] = &[
    ("positive", "negative"),
    ("negative", "zero"),
    ("zero", "positive"),
    ("holds", "holds_with_equality"),
    ("holds_with_equality", "holds"),
    ("fails", "holds"),
    ("undecided", "holds"),
    ("integers", "reals"),
    ("reals", "integers"),
    ("constant", "monotone_limit"),
    ("monotone_limit", "point_evaluation"),
    ("point_evaluation", "monotone_limit"),
    ("root", "ratio"),
    ("ratio", "root"),
    ("higher_turan", "laguerre2"),
    ("laguerre2", "higher_turan"),
    ("paper", "conservative"),
    ("conservative", "paper"),
    ("rational", "descent"),
    ("descent", "rational"),
    ("finite", "plus_infinity"),
    ("plus_infinity", "minus_infinity"),
    ("minus_infinity", "finite"),
];

fn perturb_string(s: &str) -> String {
    if let Ok(k) = s.parse::<i64>() {
        return (k + 1).to_string();
    }
    if let Ok(q) = s.parse::<Rational>() {
        return (q + Rational::new(1.into(), 3.into())).to_string();
    }
    if let Some((_, to)) = SWAPS.iter().find(|(from, _)| *from == s) {
        return (*to).to_owned();
    }
    if s.contains('n') {
        return format!("{s} + 1/(n^2 + 1)");
    }
    format!("{s}x")
}

fn leaves(v: &Value, path: &mut Vec<String>, out: &mut Vec<Vec<String>>) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                path.push(k.clone());
                leaves(x, path, out);
                path.pop();
            }
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                path.push(i.to_string());
                leaves(x, path, out);
                path.pop();
            }
        }
        Value::Null => {}
        _ => out.push(path.clone()),
    }
}

fn at<'a>(v: &'a mut Value, path: &[String]) -> &'a mut Value {
    path.iter().fold(v, |v, k| match v {
        Value::Array(a) => &mut a[k.parse::<usize>().unwrap()],
        Value::Object(m) => m.get_mut(k).unwrap(),
        _ => unreachable!(),
    })
}

/// Applies every single-leaf perturbation to a fresh certificate and returns
/// the number of leaves and the paths whose perturbation went unnoticed.
pub fn missed_perturbations(name: &str, target: Target, property: Criterion, start: i64) -> (usize, Vec<String>) {
    let s = super::spec(name);
    let opts = CertifyOptions::default();
    let cert = certify_property(s.sequence(), &s.bounds, target, property, start, &opts).unwrap();
    let doc = certificate_to_json(&cert);
    let mut paths = Vec::new();
    leaves(&doc, &mut Vec::new(), &mut paths);
    let mut missed = Vec::new();
    for p in &paths {
        let mut d = doc.clone();
        let leaf = at(&mut d, p);
        *leaf = match leaf {
            Value::String(x) => Value::String(perturb_string(x)),
            Value::Bool(b) => Value::Bool(!*b),
            other => panic!("unexpected leaf {other}"),
        };
        let caught = match certificate_from_json(&d) {
            Err(_) => true,
            Ok(c) => !reverify(&c, s.sequence(), &s.bounds, &opts).is_ok(),
        };
        if !caught {
            missed.push(p.join("."));
        }
    }
    (paths.len(), missed)
}

