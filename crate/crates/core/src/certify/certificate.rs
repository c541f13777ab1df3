use std::fmt;

use super::bounds::CandidateBounds;
use super::stages::*;
use crate::error::CertifyError;
use crate::exact::RationalFunction;
use crate::inequality::{check_sequence, CheckOutcome, IndexedValues, Property, Status};
use crate::logexpr::{check_descent, domain_threshold, DescentOptions, LogExpr};
use crate::roots::check_threshold;
use crate::sequence::{PRecursiveSequence, Target};

pub const CERT_SCHEMA: &str = "turancert/1";
pub const WINDOW_STAGE: &str = "initial_window";

/// Direct checks on `[from, to)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WindowRecord {
    pub from: i64,
    pub to: i64,
    pub method: String,
    pub precision_cap: u32,
    pub outcomes: Vec<CheckOutcome>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub sequence: String,
    pub target: Target,
    pub property: Criterion,
    pub start: i64,
    pub ratio: RatioStage,
    pub value: ValueStage,
    pub u: UStage,
    pub criterion: CriterionStage,
    /// Every `n >= covered_from` follows from the criterion.
    pub covered_from: i64,
    pub window: WindowRecord,
    pub overall_from: i64,
}

fn property_of(c: Criterion) -> Property {
    match c {
        Criterion::HigherTuran => Property::HigherTuran,
        Criterion::Laguerre2(_) => Property::Laguerre(2),
    }
}

fn window_method(target: Target) -> &'static str {
    if target == Target::Raw {
        "exact"
    } else {
        "adaptive_interval"
    }
}

/// Run every stage and the initial window for `property` on `target`.
pub fn certify_property(
    seq: &PRecursiveSequence,
    bounds: &CandidateBounds,
    target: Target,
    property: Criterion,
    start: i64,
    opts: &CertifyOptions,
) -> Result<Certificate, CertifyError> {
    if target == Target::Raw {
        return Err(CertifyError::UnsupportedTarget(target.as_str().into()));
    }
    let (f, g) = bounds.ratio()?;
    let (s, big_s) = bounds.value()?;
    let (fu, gu) = bounds.u()?;
    let ratio = verify_ratio_bounds(seq, &f.expr, &g.expr, f.from.max(g.from)).map_err(in_stage(RATIO_STAGE))?;
    let value = verify_value_bounds(
        seq,
        &s.expr,
        &big_s.expr,
        s.from.max(big_s.from),
        &ratio,
        opts,
    )
    .map_err(in_stage(VALUE_STAGE))?;
    let u = verify_u_bounds(
        seq,
        &fu.expr,
        &gu.expr,
        fu.from.max(gu.from),
        &ratio,
        &value,
        opts,
    )
    .map_err(in_stage(U_STAGE))?;
    let criterion = match property {
        Criterion::HigherTuran => criterion_higher_turan(bounds, target, opts.criterion_floor),
        Criterion::Laguerre2(mode) => criterion_laguerre2(bounds, target, mode, opts.criterion_floor),
    }
    .map_err(in_stage(CRITERION_STAGE))?;
    let covered = covered_from(&criterion, &u);
    let mut outcomes = Vec::new();
    for n in start..covered {
        let o = check_sequence(seq, target, property_of(property), n, opts.precision_cap)
            .map_err(|e| in_stage(WINDOW_STAGE)(e.into()))?;
        match o.status {
            Status::Holds | Status::HoldsWithEquality => outcomes.push(o),
            Status::Fails => {
                return Err(CertifyError::WindowFailure {
                    stage: WINDOW_STAGE,
                    index: n,
                    detail: format!("margin {}", o.margin),
                })
            }
            Status::Undecided => {
                return Err(CertifyError::Undecided {
                    stage: WINDOW_STAGE,
                    index: n,
                    detail: format!("margin {} at {} bits", o.margin, o.precision),
                })
            }
        }
    }
    Ok(Certificate {
        sequence: seq.name().to_owned(),
        target,
        property,
        start,
        ratio,
        value,
        u,
        criterion,
        covered_from: covered,
        window: WindowRecord {
            from: start,
            to: covered.max(start),
            method: window_method(target).into(),
            precision_cap: opts.precision_cap,
            outcomes,
        },
        overall_from: start,
    })
}

fn in_stage(stage: &'static str) -> impl Fn(CertifyError) -> CertifyError {
    move |e| match e.stage() {
        Some(_) => e,
        None => CertifyError::Stage {
            stage,
            source: Box::new(e),
        },
    }
}

/// Result of re-checking a certificate; empty `failures` means it stands.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerifyReport {
    pub checks: usize,
    pub failures: Vec<String>,
}

impl VerifyReport {
    pub fn is_ok(&self) -> bool {
        self.failures.is_empty()
    }

    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn result(&mut self, what: &str, r: Result<(), String>) {
        self.checks += 1;
        if let Err(m) = r {
            self.failures.push(format!("{what}: {m}"));
        }
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return write!(f, "certificate verified ({} checks)", self.checks);
        }
        write!(f, "{} of {} checks failed", self.failures.len(), self.checks)?;
        for m in &self.failures {
            write!(f, "\n  {m}")?;
        }
        Ok(())
    }
}

fn check_conditions(
    report: &mut VerifyReport,
    stage: &str,
    recorded: &[Condition],
    rebuilt: &[(String, RationalFunction)],
    floor: i64,
) {
    report.expect(recorded.len() == rebuilt.len(), || {
        format!("{stage}: {} conditions recorded, {} expected", recorded.len(), rebuilt.len())
    });
    for (c, (name, function)) in recorded.iter().zip(rebuilt) {
        report.expect(&c.name == name, || format!("{stage}: condition {} should be {name}", c.name));
        report.expect(&c.function == function, || {
            format!("{stage}: function of {name} does not match the bounds")
        });
        report.expect(c.threshold.floor == floor, || {
            format!("{stage}: threshold floor of {name} should be {floor}")
        });
        report.result(
            &format!("{stage}: threshold of {name}"),
            check_threshold(function, &c.threshold),
        );
    }
}

fn check_step(
    report: &mut VerifyReport,
    what: &str,
    step: &StepProof,
    expected: &LogExpr,
    floor: i64,
    opts: &CertifyOptions,
) {
    report.expect(&step.expression == expected, || {
        format!("{what}: step expression does not match the bounds")
    });
    match &step.route {
        StepRoute::Rational {
            function,
            threshold,
        } => {
            let rebuilt = prove_step(expected, floor, opts);
            let same_route = matches!(
                &rebuilt,
                Ok(StepProof { route: StepRoute::Rational { function: f, .. }, .. }) if f == function
            );
            report.expect(same_route, || format!("{what}: rational step function is not exp of the step"));
            let dom = domain_threshold(expected, floor).map_err(|e| e.to_string());
            report.expect(dom.as_ref().is_ok_and(|d| *d == threshold.floor), || {
                format!("{what}: threshold floor should be the domain threshold")
            });
            report.result(&format!("{what}: step threshold"), check_threshold(function, threshold));
        }
        StepRoute::Descent(proof) => {
            let d = DescentOptions {
                floor,
                eval_budget: opts.descent_budget,
                precision_cap: opts.precision_cap,
            };
            report.result(&format!("{what}: descent"), check_descent(expected, proof, &d));
        }
    }
}

fn verdict_holds(v: Verdict) -> Result<(), String> {
    match v {
        Verdict::Holds => Ok(()),
        Verdict::Fails(d) | Verdict::Undecided(d) => Err(d),
    }
}

/// Re-derive every recorded stage of `cert` for `seq` and `bounds`.
pub fn reverify(
    cert: &Certificate,
    seq: &PRecursiveSequence,
    bounds: &CandidateBounds,
    opts: &CertifyOptions,
) -> VerifyReport {
    let mut report = VerifyReport::default();
    report.expect(cert.sequence == seq.name(), || {
        format!("sequence name {:?} does not match {:?}", cert.sequence, seq.name())
    });
    let floor = sequence_floor(seq);
    let cap = opts.precision_cap;

    // Ratio bounds.
    let r = &cert.ratio;
    match bounds.ratio() {
        Ok((f, g)) => {
            report.expect(r.lower == f.expr && r.upper == g.expr, || {
                "ratio_bounds: bounds differ from the spec".into()
            });
            report.expect(r.declared_from == f.from.max(g.from).max(floor), || {
                "ratio_bounds: declared_from differs from the spec".into()
            });
        }
        Err(e) => report.expect(false, || e.to_string()),
    }
    match ratio_step_functions(seq, &r.lower, &r.upper) {
        Ok(fs) => check_conditions(&mut report, RATIO_STAGE, &r.conditions, &fs, floor),
        Err(e) => report.expect(false, || format!("ratio_bounds: {e}")),
    }
    let step_from = r.conditions.iter().map(|c| c.threshold.threshold).max();
    report.expect(step_from == Some(r.step_from), || {
        format!("ratio_bounds: step_from {} is not the max condition threshold", r.step_from)
    });
    report.expect(r.step_from <= r.declared_from, || {
        "ratio_bounds: induction step starts above the base".into()
    });
    let ratio_ok = |n: i64| ratio_exact(seq, r, n);
    report.expect(r.certified_from >= floor && r.certified_from <= r.declared_from, || {
        "ratio_bounds: certified_from out of range".into()
    });
    for n in r.certified_from.max(floor)..=r.declared_from {
        if let Err(m) = ratio_ok(n) {
            report.expect(false, || format!("ratio_bounds: exact check at {n}: {m}"));
            break;
        }
    }
    report.expect(r.certified_from == floor || ratio_ok(r.certified_from - 1).is_err(), || {
        format!("ratio_bounds: certified_from {} is not minimal", r.certified_from)
    });

    // Value bounds.
    let v = &cert.value;
    let value_floor = floor.max(1);
    match bounds.value() {
        Ok((s, big_s)) => {
            report.expect(v.lower == s.expr && v.upper == big_s.expr, || {
                "value_bounds: bounds differ from the spec".into()
            });
            report.expect(v.declared_from == s.from.max(big_s.from), || {
                "value_bounds: declared_from differs from the spec".into()
            });
        }
        Err(e) => report.expect(false, || e.to_string()),
    }
    match value_step_expressions(&v.lower, &v.upper, r) {
        Ok((lo, hi)) => {
            check_step(&mut report, "value_bounds lower step", &v.lower_step, &lo, value_floor, opts);
            check_step(&mut report, "value_bounds upper step", &v.upper_step, &hi, value_floor, opts);
        }
        Err(e) => report.expect(false, || format!("value_bounds: {e}")),
    }
    let k = v
        .lower_step
        .valid_from()
        .max(v.upper_step.valid_from())
        .max(r.certified_from)
        .max(value_floor);
    let base = value_base(seq, &v.lower, &v.upper, k, v.declared_from, cap);
    report.expect(base.as_ref().is_ok_and(|b| *b == v.induction_from), || {
        format!("value_bounds: induction_from {} is not the first base at or above {k}", v.induction_from)
    });
    let (lowest, _) = value_walk_down(seq, &v.lower, &v.upper, v.induction_from, value_floor, cap);
    report.expect(v.certified_from == lowest && lowest <= v.declared_from, || {
        format!("value_bounds: certified_from {} should be {lowest}", v.certified_from)
    });

    // u bounds.
    let u = &cert.u;
    let u_floor = floor.max(2);
    match bounds.u() {
        Ok((fu, gu)) => {
            report.expect(u.lower == fu.expr && u.upper == gu.expr, || {
                "u_bounds: bounds differ from the spec".into()
            });
            report.expect(u.declared_from == fu.from.max(gu.from), || {
                "u_bounds: declared_from differs from the spec".into()
            });
        }
        Err(e) => report.expect(false, || e.to_string()),
    }
    match u_step_expressions(&u.lower, &u.upper, r, v) {
        Ok((lo, hi)) => {
            check_step(&mut report, "u_bounds lower step", &u.lower_step, &lo, u_floor, opts);
            check_step(&mut report, "u_bounds upper step", &u.upper_step, &hi, u_floor, opts);
        }
        Err(e) => report.expect(false, || format!("u_bounds: {e}")),
    }
    let k = u
        .lower_step
        .valid_from()
        .max(u.upper_step.valid_from())
        .max(r.certified_from + 1)
        .max(v.certified_from + 1)
        .max(2);
    report.expect(u.induction_from == k, || {
        format!("u_bounds: induction_from {} should be {k}", u.induction_from)
    });
    report.expect(u.certified_from == u.declared_from.min(u.induction_from), || {
        format!("u_bounds: certified_from {} does not match the declared start", u.certified_from)
    });
    for n in u.certified_from..u.induction_from {
        if let Err(m) = verdict_holds(u_sandwich_at(seq, &u.lower, &u.upper, n, cap)) {
            report.expect(false, || format!("u_bounds: window check at {n}: {m}"));
            break;
        }
    }

    // Criterion.
    let c = &cert.criterion;
    report.expect(c.criterion == cert.property && c.target == cert.target, || {
        "criterion: property or target differs from the certificate header".into()
    });
    match criterion_functions(&u.lower, &u.upper, cert.target, cert.property) {
        Ok((comps, sides)) => {
            check_conditions(&mut report, CRITERION_STAGE, &c.compositions, &comps, opts.criterion_floor);
            check_conditions(&mut report, CRITERION_STAGE, &c.side_conditions, &sides, opts.criterion_floor);
        }
        Err(e) => report.expect(false, || format!("criterion: {e}")),
    }
    let max = c.compositions.iter().map(|x| x.threshold.threshold).max();
    report.expect(max == Some(c.threshold), || {
        format!("criterion: threshold {} is not the max of its compositions", c.threshold)
    });
    report.expect(cert.covered_from == covered_from(c, u), || {
        format!("covered_from {} should be {}", cert.covered_from, covered_from(c, u))
    });

    // Initial window.
    let w = &cert.window;
    report.expect(w.from == cert.start && w.to == cert.covered_from.max(cert.start), || {
        format!("initial_window: range [{}, {}) does not bridge start to covered_from", w.from, w.to)
    });
    report.expect(w.precision_cap == opts.precision_cap, || {
        format!("initial_window: precision cap {} should be {}", w.precision_cap, opts.precision_cap)
    });
    report.expect(w.method == window_method(cert.target), || {
        format!("initial_window: method {} should be {}", w.method, window_method(cert.target))
    });
    report.expect(w.outcomes.len() as i64 == (w.to - w.from).max(0), || {
        "initial_window: number of outcomes does not match the range".into()
    });
    let property = property_of(cert.property);
    for (i, o) in w.outcomes.iter().enumerate() {
        let n = w.from + i as i64;
        report.expect(o.index == n, || format!("initial_window: outcome {i} has index {}", o.index));
        report.expect(o.status.is_holding(), || {
            format!("initial_window: outcome at {} is {}", o.index, o.status.as_str())
        });
        report.expect(o.precision <= w.precision_cap, || {
            format!("initial_window: outcome at {} exceeds the precision cap", o.index)
        });
        match recompute_outcome(seq, cert.target, property, o.index, o.precision) {
            Ok(again) => report.expect(again == *o, || {
                format!(
                    "initial_window: outcome at {} is recomputed as {} with margin {}",
                    o.index,
                    again.status.as_str(),
                    again.margin
                )
            }),
            Err(e) => report.expect(false, || format!("initial_window: at {}: {e}", o.index)),
        }
    }
    report.expect(cert.overall_from == cert.start && cert.overall_from == w.from, || {
        format!("overall_from {} is not the window start", cert.overall_from)
    });
    report
}

fn ratio_exact(seq: &PRecursiveSequence, r: &RatioStage, n: i64) -> Result<(), String> {
    let q = seq.ratio(n).map_err(|e| e.to_string())?;
    let f = r.lower.eval_int(n).ok_or("pole of the lower bound")?;
    let g = r.upper.eval_int(n).ok_or("pole of the upper bound")?;
    if f < q && q < g {
        Ok(())
    } else {
        Err(format!("{f} < {q} < {g} is false"))
    }
}

fn recompute_outcome(
    seq: &PRecursiveSequence,
    target: Target,
    property: Property,
    n: i64,
    precision: u32,
) -> Result<CheckOutcome, String> {
    if target == Target::Raw {
        return check_sequence(seq, target, property, n, precision).map_err(|e| e.to_string());
    }
    let (lo, hi) = property.window(n);
    let values = (lo..=hi)
        .map(|k| seq.derived_term(target, k, precision))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| e.to_string())?;
    let mut out = property
        .evaluate(&IndexedValues::new(lo, values), n)
        .map_err(|e| e.to_string())?;
    out.precision = precision;
    Ok(out)
}
