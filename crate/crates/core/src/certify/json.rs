//! Certificate documents. Integers and rationals are decimal strings; rational
//! functions and log expressions use the spec expression syntax.

use std::cmp::Ordering;
use std::str::FromStr;

use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use super::certificate::{Certificate, WindowRecord, CERT_SCHEMA};
use super::stages::*;
use crate::error::CertificateFormatError;
use crate::exact::{Rational, RationalFunction};
use crate::inequality::{CheckOutcome, Status};
use crate::interval::Interval;
use crate::logexpr::{
    AsymptoticClass, DescentProof, DescentRule, DescentStep, LeadingTerm, LimitKind, LogConstant,
    LogExpr,
};
use crate::roots::{PositivityThreshold, RootInterval, RootWitness, ThresholdScope};
use crate::sequence::Target;
use crate::specio::{parse_logexpr, parse_ratfunc};

type Res<T> = Result<T, CertificateFormatError>;

fn ordering_str(o: Ordering) -> &'static str {
    match o {
        Ordering::Greater => "positive",
        Ordering::Less => "negative",
        Ordering::Equal => "zero",
    }
}

fn int(k: i64) -> Value {
    Value::String(k.to_string())
}

fn rational(q: &Rational) -> Value {
    Value::String(q.to_string())
}

fn text(x: impl ToString) -> Value {
    Value::String(x.to_string())
}

fn interval(iv: &Interval) -> Value {
    json!({"lo": rational(iv.lo()), "hi": rational(iv.hi()), "precision": int(iv.precision() as i64)})
}

fn threshold(t: &PositivityThreshold) -> Value {
    json!({
        "threshold": int(t.threshold),
        "floor": int(t.floor),
        "scope": t.scope.as_str(),
        "checked_floor": int(t.checked_floor),
        "root_bound": rational(&t.witness.root_bound),
        "largest_root": t.witness.largest_root.as_ref().map(|r| json!({"lo": rational(&r.lo), "hi": rational(&r.hi)})),
    })
}

fn condition(c: &Condition) -> Value {
    json!({"name": c.name, "function": text(&c.function), "threshold": threshold(&c.threshold)})
}

fn log_constant(c: &LogConstant) -> Value {
    json!({
        "rational": rational(&c.rational),
        "logs": c.logs.iter().map(|(b, k)| json!({"base": text(b), "coeff": rational(k)})).collect::<Vec<_>>(),
    })
}

fn asymptotic(a: &AsymptoticClass) -> Value {
    json!({
        "kind": a.kind.as_str(),
        "value": a.value.as_ref().map(log_constant),
        "leading": a.leading.as_ref().map(|l| json!({
            "power": int(l.power),
            "log_power": int(l.log_power as i64),
            "coeff": log_constant(&l.coeff),
            "sign": ordering_str(l.sign),
        })),
    })
}

fn descent(d: &DescentProof) -> Value {
    json!({
        "order": int(d.order as i64),
        "rational_tail": text(&d.rational_tail),
        "tail_sign": ordering_str(d.tail_sign),
        "tail_threshold": threshold(&d.tail_threshold),
        "domain_threshold": int(d.domain_threshold),
        "chain": d.chain.iter().map(|s| json!({
            "derivative_order": int(s.derivative_order as i64),
            "limit": asymptotic(&s.limit),
            "sign": ordering_str(s.sign),
            "threshold": int(s.threshold),
            "rule": s.rule.as_str(),
            "extension": s.extension,
            "witness": s.witness.as_ref().map(|(n, iv)| json!({"index": int(*n), "value": interval(iv)})),
        })).collect::<Vec<_>>(),
        "final_threshold": int(d.final_threshold),
    })
}

fn step(s: &StepProof) -> Value {
    let route = match &s.route {
        StepRoute::Rational {
            function,
            threshold: t,
        } => json!({"kind": "rational", "function": text(function), "threshold": threshold(t)}),
        StepRoute::Descent(d) => json!({"kind": "descent", "proof": descent(d)}),
    };
    json!({"expression": text(&s.expression), "route": route})
}

pub fn outcome_to_json(o: &CheckOutcome) -> Value {
    json!({
        "index": int(o.index),
        "status": o.status.as_str(),
        "margin": {"lo": rational(o.margin.lo()), "hi": rational(o.margin.hi())},
        "precision": int(o.precision as i64),
    })
}

pub fn certificate_to_json(c: &Certificate) -> Value {
    let r = &c.ratio;
    let v = &c.value;
    let u = &c.u;
    let k = &c.criterion;
    let w = &c.window;
    json!({
        "schema": CERT_SCHEMA,
        "sequence": c.sequence,
        "target": c.target.as_str(),
        "property": c.property.property_name(),
        "mode": c.property.mode().map(|m| m.as_str()),
        "start": int(c.start),
        "stages": [
            {
                "stage": RATIO_STAGE,
                "lower": text(&r.lower),
                "upper": text(&r.upper),
                "declared_from": int(r.declared_from),
                "conditions": r.conditions.iter().map(condition).collect::<Vec<_>>(),
                "step_from": int(r.step_from),
                "certified_from": int(r.certified_from),
            },
            {
                "stage": VALUE_STAGE,
                "lower": text(&v.lower),
                "upper": text(&v.upper),
                "declared_from": int(v.declared_from),
                "lower_step": step(&v.lower_step),
                "upper_step": step(&v.upper_step),
                "induction_from": int(v.induction_from),
                "certified_from": int(v.certified_from),
            },
            {
                "stage": U_STAGE,
                "lower": text(&u.lower),
                "upper": text(&u.upper),
                "declared_from": int(u.declared_from),
                "lower_step": step(&u.lower_step),
                "upper_step": step(&u.upper_step),
                "induction_from": int(u.induction_from),
                "certified_from": int(u.certified_from),
            },
            {
                "stage": CRITERION_STAGE,
                "target": k.target.as_str(),
                "property": k.criterion.property_name(),
                "mode": k.criterion.mode().map(|m| m.as_str()),
                "compositions": k.compositions.iter().map(condition).collect::<Vec<_>>(),
                "side_conditions": k.side_conditions.iter().map(condition).collect::<Vec<_>>(),
                "threshold": int(k.threshold),
                "covered_from": int(c.covered_from),
            },
        ],
        "initial_window": {
            "from": int(w.from),
            "to": int(w.to),
            "method": w.method,
            "precision": int(w.precision_cap as i64),
            "outcomes": w.outcomes.iter().map(outcome_to_json).collect::<Vec<_>>(),
        },
        "overall_from": int(c.overall_from),
    })
}

/// Pretty-printed document; the output is a pure function of the certificate.
pub fn certificate_to_string(c: &Certificate) -> String {
    let mut s = serde_json::to_string_pretty(&certificate_to_json(c)).expect("serializable");
    s.push('\n');
    s
}

struct Node<'a> {
    path: String,
    value: &'a Value,
}

impl<'a> Node<'a> {
    fn fail<T>(&self, message: impl Into<String>) -> Res<T> {
        Err(CertificateFormatError {
            path: if self.path.is_empty() {
                "$".into()
            } else {
                self.path.clone()
            },
            message: message.into(),
        })
    }

    fn object(&self) -> Res<&'a Map<String, Value>> {
        match self.value.as_object() {
            Some(m) => Ok(m),
            None => self.fail("expected an object"),
        }
    }

    fn field(&self, key: &str) -> Res<Node<'a>> {
        let m = self.object()?;
        let path = if self.path.is_empty() {
            key.to_owned()
        } else {
            format!("{}.{key}", self.path)
        };
        match m.get(key) {
            Some(value) => Ok(Node { path, value }),
            None => Node { path, value: &Value::Null }.fail("missing field"),
        }
    }

    fn optional(&self, key: &str) -> Res<Option<Node<'a>>> {
        let n = self.field(key)?;
        Ok((!n.value.is_null()).then_some(n))
    }

    fn items(&self) -> Res<Vec<Node<'a>>> {
        match self.value.as_array() {
            Some(a) => Ok(a
                .iter()
                .enumerate()
                .map(|(i, value)| Node {
                    path: format!("{}[{i}]", self.path),
                    value,
                })
                .collect()),
            None => self.fail("expected an array"),
        }
    }

    fn string(&self) -> Res<&'a str> {
        match self.value.as_str() {
            Some(s) => Ok(s),
            None => self.fail("expected a string"),
        }
    }

    fn boolean(&self) -> Res<bool> {
        match self.value.as_bool() {
            Some(b) => Ok(b),
            None => self.fail("expected a boolean"),
        }
    }

    fn parsed<T: FromStr>(&self, what: &str) -> Res<T> {
        let s = self.string()?;
        match s.parse() {
            Ok(v) => Ok(v),
            Err(_) => self.fail(format!("{s:?} is not {what}")),
        }
    }

    fn int(&self) -> Res<i64> {
        self.parsed("a decimal integer")
    }

    fn uint(&self) -> Res<u32> {
        self.parsed("a non-negative decimal integer")
    }

    fn rational(&self) -> Res<Rational> {
        self.parsed("a rational number p/q")
    }

    fn bigint(&self) -> Res<BigInt> {
        self.parsed("a decimal integer")
    }

    fn ratfunc(&self) -> Res<RationalFunction> {
        let s = self.string()?;
        parse_ratfunc(s).or_else(|e| self.fail(e.to_string()))
    }

    fn logexpr(&self) -> Res<LogExpr> {
        let s = self.string()?;
        parse_logexpr(s).or_else(|e| self.fail(e.to_string()))
    }

    fn ordering(&self) -> Res<Ordering> {
        match self.string()? {
            "positive" => Ok(Ordering::Greater),
            "negative" => Ok(Ordering::Less),
            "zero" => Ok(Ordering::Equal),
            s => self.fail(format!("unknown sign {s:?}")),
        }
    }

    fn keyword<T>(&self, parse: impl Fn(&str) -> Option<T>) -> Res<T> {
        let s = self.string()?;
        match parse(s) {
            Some(v) => Ok(v),
            None => self.fail(format!("unknown value {s:?}")),
        }
    }

    fn list<T>(&self, each: impl Fn(&Node<'a>) -> Res<T>) -> Res<Vec<T>> {
        self.items()?.iter().map(each).collect()
    }

    fn expect_str(&self, expected: &str) -> Res<()> {
        let s = self.string()?;
        if s == expected {
            Ok(())
        } else {
            self.fail(format!("expected {expected:?}, found {s:?}"))
        }
    }
}

fn read_interval(n: &Node) -> Res<Interval> {
    let lo = n.field("lo")?.rational()?;
    let hi = n.field("hi")?.rational()?;
    let p = n.field("precision")?.uint()?;
    Interval::new(lo, hi, p).or_else(|e| n.fail(e.to_string()))
}

fn read_threshold(n: &Node) -> Res<PositivityThreshold> {
    let largest_root = match n.optional("largest_root")? {
        None => None,
        Some(r) => Some(RootInterval {
            lo: r.field("lo")?.rational()?,
            hi: r.field("hi")?.rational()?,
        }),
    };
    Ok(PositivityThreshold {
        threshold: n.field("threshold")?.int()?,
        floor: n.field("floor")?.int()?,
        scope: n.field("scope")?.keyword(ThresholdScope::parse)?,
        checked_floor: n.field("checked_floor")?.int()?,
        witness: RootWitness {
            root_bound: n.field("root_bound")?.rational()?,
            largest_root,
        },
    })
}

fn read_condition(n: &Node) -> Res<Condition> {
    Ok(Condition {
        name: n.field("name")?.string()?.to_owned(),
        function: n.field("function")?.ratfunc()?,
        threshold: read_threshold(&n.field("threshold")?)?,
    })
}

fn read_log_constant(n: &Node) -> Res<LogConstant> {
    Ok(LogConstant {
        rational: n.field("rational")?.rational()?,
        logs: n.field("logs")?.list(|l| {
            Ok((l.field("base")?.bigint()?, l.field("coeff")?.rational()?))
        })?,
    })
}

fn read_asymptotic(n: &Node) -> Res<AsymptoticClass> {
    let leading = match n.optional("leading")? {
        None => None,
        Some(l) => Some(LeadingTerm {
            power: l.field("power")?.int()?,
            log_power: l.field("log_power")?.uint()?,
            coeff: read_log_constant(&l.field("coeff")?)?,
            sign: l.field("sign")?.ordering()?,
        }),
    };
    Ok(AsymptoticClass {
        kind: n.field("kind")?.keyword(LimitKind::parse)?,
        value: n.optional("value")?.map(|v| read_log_constant(&v)).transpose()?,
        leading,
    })
}

fn read_descent(n: &Node) -> Res<DescentProof> {
    Ok(DescentProof {
        order: n.field("order")?.uint()? as usize,
        rational_tail: n.field("rational_tail")?.ratfunc()?,
        tail_sign: n.field("tail_sign")?.ordering()?,
        tail_threshold: read_threshold(&n.field("tail_threshold")?)?,
        domain_threshold: n.field("domain_threshold")?.int()?,
        chain: n.field("chain")?.list(|s| {
            let witness = match s.optional("witness")? {
                None => None,
                Some(w) => Some((w.field("index")?.int()?, read_interval(&w.field("value")?)?)),
            };
            Ok(DescentStep {
                derivative_order: s.field("derivative_order")?.uint()? as usize,
                limit: read_asymptotic(&s.field("limit")?)?,
                sign: s.field("sign")?.ordering()?,
                threshold: s.field("threshold")?.int()?,
                rule: s.field("rule")?.keyword(DescentRule::parse)?,
                extension: s.field("extension")?.boolean()?,
                witness,
            })
        })?,
        final_threshold: n.field("final_threshold")?.int()?,
    })
}

fn read_step(n: &Node) -> Res<StepProof> {
    let r = n.field("route")?;
    let kind = r.field("kind")?;
    let route = match kind.string()? {
        "rational" => StepRoute::Rational {
            function: r.field("function")?.ratfunc()?,
            threshold: read_threshold(&r.field("threshold")?)?,
        },
        "descent" => StepRoute::Descent(read_descent(&r.field("proof")?)?),
        s => return kind.fail(format!("unknown route {s:?}")),
    };
    Ok(StepProof {
        expression: n.field("expression")?.logexpr()?,
        route,
    })
}

fn read_outcome(n: &Node) -> Res<CheckOutcome> {
    let m = n.field("margin")?;
    let precision = n.field("precision")?.uint()?;
    let margin = Interval::new(m.field("lo")?.rational()?, m.field("hi")?.rational()?, precision)
        .or_else(|e| m.fail(e.to_string()))?;
    Ok(CheckOutcome {
        index: n.field("index")?.int()?,
        status: n.field("status")?.keyword(Status::parse)?,
        margin,
        precision,
    })
}

fn read_criterion(header: &Node) -> Res<Criterion> {
    let mode = header
        .optional("mode")?
        .map(|m| m.keyword(LaguerreMode::parse))
        .transpose()?;
    let p = header.field("property")?;
    match (p.string()?, mode) {
        ("higher_turan", None) => Ok(Criterion::HigherTuran),
        ("laguerre2", Some(m)) => Ok(Criterion::Laguerre2(m)),
        ("higher_turan", Some(_)) => p.fail("higher_turan takes no mode"),
        ("laguerre2", None) => p.fail("laguerre2 needs a mode"),
        (s, _) => p.fail(format!("unknown property {s:?}")),
    }
}

fn read_target(n: &Node) -> Res<Target> {
    n.keyword(|s| Target::parse(s).filter(|t| *t != Target::Raw))
}

pub fn certificate_from_json(doc: &Value) -> Res<Certificate> {
    let root = Node {
        path: String::new(),
        value: doc,
    };
    root.field("schema")?.expect_str(CERT_SCHEMA)?;
    let stages = root.field("stages")?.items()?;
    if stages.len() != 4 {
        return root.field("stages")?.fail("expected four stage records");
    }
    let r = &stages[0];
    r.field("stage")?.expect_str(RATIO_STAGE)?;
    let ratio = RatioStage {
        lower: r.field("lower")?.ratfunc()?,
        upper: r.field("upper")?.ratfunc()?,
        declared_from: r.field("declared_from")?.int()?,
        conditions: r.field("conditions")?.list(read_condition)?,
        step_from: r.field("step_from")?.int()?,
        certified_from: r.field("certified_from")?.int()?,
    };
    let v = &stages[1];
    v.field("stage")?.expect_str(VALUE_STAGE)?;
    let value = ValueStage {
        lower: v.field("lower")?.logexpr()?,
        upper: v.field("upper")?.logexpr()?,
        declared_from: v.field("declared_from")?.int()?,
        lower_step: read_step(&v.field("lower_step")?)?,
        upper_step: read_step(&v.field("upper_step")?)?,
        induction_from: v.field("induction_from")?.int()?,
        certified_from: v.field("certified_from")?.int()?,
    };
    let u = &stages[2];
    u.field("stage")?.expect_str(U_STAGE)?;
    let u_stage = UStage {
        lower: u.field("lower")?.ratfunc()?,
        upper: u.field("upper")?.ratfunc()?,
        declared_from: u.field("declared_from")?.int()?,
        lower_step: read_step(&u.field("lower_step")?)?,
        upper_step: read_step(&u.field("upper_step")?)?,
        induction_from: u.field("induction_from")?.int()?,
        certified_from: u.field("certified_from")?.int()?,
    };
    let k = &stages[3];
    k.field("stage")?.expect_str(CRITERION_STAGE)?;
    let criterion = CriterionStage {
        criterion: read_criterion(k)?,
        target: read_target(&k.field("target")?)?,
        compositions: k.field("compositions")?.list(read_condition)?,
        side_conditions: k.field("side_conditions")?.list(read_condition)?,
        threshold: k.field("threshold")?.int()?,
    };
    let w = root.field("initial_window")?;
    let window = WindowRecord {
        from: w.field("from")?.int()?,
        to: w.field("to")?.int()?,
        method: w.field("method")?.string()?.to_owned(),
        precision_cap: w.field("precision")?.uint()?,
        outcomes: w.field("outcomes")?.list(read_outcome)?,
    };
    Ok(Certificate {
        sequence: root.field("sequence")?.string()?.to_owned(),
        target: read_target(&root.field("target")?)?,
        property: read_criterion(&root)?,
        start: root.field("start")?.int()?,
        ratio,
        value,
        u: u_stage,
        criterion,
        covered_from: k.field("covered_from")?.int()?,
        window,
        overall_from: root.field("overall_from")?.int()?,
    })
}

pub fn certificate_from_str(text: &str) -> Res<Certificate> {
    let doc: Value = serde_json::from_str(text).map_err(|e| CertificateFormatError {
        path: "$".into(),
        message: e.to_string(),
    })?;
    certificate_from_json(&doc)
}
