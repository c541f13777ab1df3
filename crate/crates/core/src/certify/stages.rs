//! The certification stages: ratio, value and u sandwiches by induction,
//! then the rational criterion for the chosen inequality.

use std::cmp::Ordering;
use std::fmt;

use num_traits::ToPrimitive;

use super::bounds::CandidateBounds;
use crate::error::CertifyError;
use crate::exact::{Polynomial, RationalFunction};
use crate::inequality::turan_quartic;
use crate::interval::{decide_sign, Interval, DEFAULT_PRECISION_CAP};
use crate::logexpr::{
    domain_threshold, prove_eventually_positive, DescentOptions, DescentProof, LogExpr,
};
use crate::roots::{positivity_threshold, PositivityThreshold};
use crate::sequence::{PRecursiveSequence, Target};

pub const RATIO_STAGE: &str = "ratio_bounds";
pub const VALUE_STAGE: &str = "value_bounds";
pub const U_STAGE: &str = "u_bounds";
pub const CRITERION_STAGE: &str = "criterion";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CertifyOptions {
    pub precision_cap: u32,
    /// Floor for the criterion thresholds.
    pub criterion_floor: i64,
    pub descent_budget: u32,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions {
            precision_cap: DEFAULT_PRECISION_CAP,
            criterion_floor: 1,
            descent_budget: DescentOptions::default().eval_budget,
        }
    }
}

/// A named rational function together with its certified positivity range.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Condition {
    pub name: String,
    pub function: RationalFunction,
    pub threshold: PositivityThreshold,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatioStage {
    pub lower: RationalFunction,
    pub upper: RationalFunction,
    pub declared_from: i64,
    pub conditions: Vec<Condition>,
    /// The induction step is valid for every `n >= step_from`.
    pub step_from: i64,
    pub certified_from: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StepRoute {
    /// `exp` of the step expression is the rational function; it exceeds 1.
    Rational {
        function: RationalFunction,
        threshold: PositivityThreshold,
    },
    Descent(DescentProof),
}

/// Positivity of one induction-step expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepProof {
    pub expression: LogExpr,
    pub route: StepRoute,
}

impl StepProof {
    pub fn valid_from(&self) -> i64 {
        match &self.route {
            StepRoute::Rational { threshold, .. } => threshold.threshold,
            StepRoute::Descent(d) => d.final_threshold,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValueStage {
    pub lower: LogExpr,
    pub upper: LogExpr,
    pub declared_from: i64,
    pub lower_step: StepProof,
    pub upper_step: StepProof,
    pub induction_from: i64,
    pub certified_from: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UStage {
    pub lower: RationalFunction,
    pub upper: RationalFunction,
    pub declared_from: i64,
    pub lower_step: StepProof,
    pub upper_step: StepProof,
    pub induction_from: i64,
    /// `[certified_from, induction_from)` was checked directly.
    pub certified_from: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum LaguerreMode {
    /// Mixed product with the upper bound in the middle factor.
    Paper,
    #[default]
    Conservative,
}

impl LaguerreMode {
    pub fn as_str(self) -> &'static str {
        match self {
            LaguerreMode::Paper => "paper",
            LaguerreMode::Conservative => "conservative",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "paper" => Some(LaguerreMode::Paper),
            "conservative" => Some(LaguerreMode::Conservative),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Criterion {
    HigherTuran,
    Laguerre2(LaguerreMode),
}

impl Criterion {
    pub fn property_name(self) -> &'static str {
        match self {
            Criterion::HigherTuran => "higher_turan",
            Criterion::Laguerre2(_) => "laguerre2",
        }
    }

    pub fn mode(self) -> Option<LaguerreMode> {
        match self {
            Criterion::HigherTuran => None,
            Criterion::Laguerre2(m) => Some(m),
        }
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Criterion::HigherTuran => f.write_str("higher_turan"),
            Criterion::Laguerre2(m) => write!(f, "laguerre2 ({})", m.as_str()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriterionStage {
    pub criterion: Criterion,
    pub target: Target,
    pub compositions: Vec<Condition>,
    /// Positivity of the lower bound, needed to multiply the Laguerre
    /// factors.
    pub side_conditions: Vec<Condition>,
    /// Max over the composition thresholds.
    pub threshold: i64,
}

pub(crate) fn sequence_floor(seq: &PRecursiveSequence) -> i64 {
    seq.start().max(seq.positivity_from())
}

fn rf_poly(c: &[i64]) -> RationalFunction {
    RationalFunction::from_poly(Polynomial::from_ints(c))
}

fn recurrence_rf(seq: &PRecursiveSequence, i: usize) -> RationalFunction {
    RationalFunction::from_poly(seq.coeffs()[i].clone())
}

fn named(name: &str, f: RationalFunction) -> (String, RationalFunction) {
    (name.to_owned(), f)
}

/// The functions whose eventual positivity makes `[f, g]` invariant under the
/// recurrence-induced map on consecutive ratios.
pub(crate) fn ratio_step_functions(
    seq: &PRecursiveSequence,
    f: &RationalFunction,
    g: &RationalFunction,
) -> Result<Vec<(String, RationalFunction)>, CertifyError> {
    match seq.order() {
        1 => {
            let r = -(&recurrence_rf(seq, 0).checked_div(&recurrence_rf(seq, 1))?);
            Ok(vec![
                named("ratio_minus_lower", &r - f),
                named("upper_minus_ratio", g - &r),
            ])
        }
        2 => {
            let lead = recurrence_rf(seq, 2);
            let a = -(&recurrence_rf(seq, 1).checked_div(&lead)?);
            let b = -(&recurrence_rf(seq, 0).checked_div(&lead)?);
            let mut out = vec![named("lower_positive", f.clone()), named("upper_minus_lower", g - f)];
            let (lo_image, hi_image) = match b.sign_at_infinity() {
                Ordering::Equal => (a.clone(), a.clone()),
                s => {
                    let via = |x: &RationalFunction| -> Result<RationalFunction, CertifyError> {
                        Ok(&a + &b.checked_div(x)?)
                    };
                    if s == Ordering::Greater {
                        out.push(named("map_coefficient_positive", b.clone()));
                        (via(g)?, via(f)?)
                    } else {
                        out.push(named("map_coefficient_negative", -&b));
                        (via(f)?, via(g)?)
                    }
                }
            };
            out.push(named("image_minus_next_lower", &lo_image - &f.shift(1)));
            out.push(named("next_upper_minus_image", &g.shift(1) - &hi_image));
            Ok(out)
        }
        d => Err(CertifyError::UnsupportedOrder(d)),
    }
}

fn ratio_sandwich_at(
    seq: &PRecursiveSequence,
    f: &RationalFunction,
    g: &RationalFunction,
    n: i64,
) -> Result<(), String> {
    let r = seq.ratio(n).map_err(|e| e.to_string())?;
    let fv = f.eval_int(n).ok_or_else(|| format!("lower bound has a pole at {n}"))?;
    let gv = g.eval_int(n).ok_or_else(|| format!("upper bound has a pole at {n}"))?;
    if fv >= r {
        return Err(format!("lower bound {fv} is not below the ratio {r}"));
    }
    if r >= gv {
        return Err(format!("ratio {r} is not below the upper bound {gv}"));
    }
    Ok(())
}

/// Certify `f(n) < a_(n+1)/a_n < g(n)` from the exact value at `base` and the
/// induction step, then extend downwards by exact checks.
pub fn verify_ratio_bounds(
    seq: &PRecursiveSequence,
    f: &RationalFunction,
    g: &RationalFunction,
    base: i64,
) -> Result<RatioStage, CertifyError> {
    if seq.order() > 2 {
        return Err(CertifyError::UnsupportedOrder(seq.order()));
    }
    let floor = sequence_floor(seq);
    let base = base.max(floor);
    ratio_sandwich_at(seq, f, g, base)
        .map_err(|detail| CertifyError::ExactCheck { index: base, detail })?;
    let mut conditions = Vec::new();
    for (name, function) in ratio_step_functions(seq, f, g)? {
        let threshold = positivity_threshold(&function, floor).map_err(|e| {
            CertifyError::InductionStep {
                containment: name.clone(),
                detail: e.to_string(),
            }
        })?;
        conditions.push(Condition {
            name,
            function,
            threshold,
        });
    }
    let step_from = conditions
        .iter()
        .map(|c| c.threshold.threshold)
        .max()
        .unwrap_or(floor);
    if step_from > base {
        let worst = conditions
            .iter()
            .max_by_key(|c| c.threshold.threshold)
            .expect("conditions are nonempty");
        return Err(CertifyError::InductionStep {
            containment: worst.name.clone(),
            detail: format!(
                "positive only from n = {step_from}, above the base {base}; {}",
                worst.threshold.witness
            ),
        });
    }
    let mut certified_from = base;
    while certified_from > floor && ratio_sandwich_at(seq, f, g, certified_from - 1).is_ok() {
        certified_from -= 1;
    }
    Ok(RatioStage {
        lower: f.clone(),
        upper: g.clone(),
        declared_from: base,
        conditions,
        step_from,
        certified_from,
    })
}

/// `prod arg^coeff` when every log coefficient is an integer constant and
/// there is no rational part.
fn exponential_form(e: &LogExpr) -> Option<RationalFunction> {
    if !e.rational_part().is_zero() {
        return None;
    }
    let mut acc = RationalFunction::one();
    for t in e.log_terms() {
        let c = t.coeff.as_constant()?;
        if !c.is_integer() {
            return None;
        }
        let k = c.to_integer().to_i32()?;
        acc = &acc * &t.arg.pow(k).ok()?;
    }
    Some(acc)
}

fn descent_options(floor: i64, opts: &CertifyOptions) -> DescentOptions {
    DescentOptions {
        floor,
        eval_budget: opts.descent_budget,
        precision_cap: opts.precision_cap,
    }
}

/// Prove `e(n) > 0` eventually, exactly when `exp(e)` is rational and by
/// derivative descent otherwise.
pub(crate) fn prove_step(
    e: &LogExpr,
    floor: i64,
    opts: &CertifyOptions,
) -> Result<StepProof, String> {
    if let Some(r) = exponential_form(e) {
        let floor = domain_threshold(e, floor).map_err(|x| x.to_string())?;
        let function = &r - &RationalFunction::one();
        let threshold = positivity_threshold(&function, floor).map_err(|x| x.to_string())?;
        return Ok(StepProof {
            expression: e.clone(),
            route: StepRoute::Rational {
                function,
                threshold,
            },
        });
    }
    let proof = prove_eventually_positive(e, &descent_options(floor, opts)).map_err(|x| x.to_string())?;
    Ok(StepProof {
        expression: e.clone(),
        route: StepRoute::Descent(proof),
    })
}

pub(crate) enum Verdict {
    Holds,
    Fails(String),
    Undecided(String),
}

/// Decide `value(p) > 0` with adaptive precision; evaluation errors count as
/// failures.
pub(crate) fn positive_margin(
    cap: u32,
    what: &str,
    mut value: impl FnMut(u32) -> Result<Interval, String>,
) -> Verdict {
    match decide_sign(cap, &mut value) {
        Err(e) => Verdict::Fails(format!("{what}: {e}")),
        Ok(d) => match d.sign {
            Some(Ordering::Greater) => Verdict::Holds,
            Some(_) => Verdict::Fails(format!("{what} margin is {}", d.interval)),
            None => Verdict::Undecided(format!(
                "{what} margin {} at {} bits",
                d.interval, d.precision
            )),
        },
    }
}

fn value_sandwich_at(
    seq: &PRecursiveSequence,
    s: &LogExpr,
    big_s: &LogExpr,
    n: i64,
    cap: u32,
) -> Verdict {
    let lower = positive_margin(cap, "lower side", |p| {
        let l = seq.log_term(n, p).map_err(|e| e.to_string())?;
        Ok(l.sub(&s.eval_interval(n, p).map_err(|e| e.to_string())?))
    });
    if !matches!(lower, Verdict::Holds) {
        return lower;
    }
    positive_margin(cap, "upper side", |p| {
        let l = seq.log_term(n, p).map_err(|e| e.to_string())?;
        Ok(big_s.eval_interval(n, p).map_err(|e| e.to_string())?.sub(&l))
    })
}

/// Certify `s(n) < log a_n < S(n)` by induction on the certified ratio
/// bounds, then extend downwards by interval checks.
pub fn verify_value_bounds(
    seq: &PRecursiveSequence,
    s: &LogExpr,
    big_s: &LogExpr,
    declared_from: i64,
    ratio: &RatioStage,
    opts: &CertifyOptions,
) -> Result<ValueStage, CertifyError> {
    let floor = sequence_floor(seq).max(1);
    let (lower_step_expr, upper_step_expr) = value_step_expressions(s, big_s, ratio)?;
    let descent_err = |side: &'static str| {
        move |detail: String| CertifyError::Descent {
            stage: VALUE_STAGE,
            side,
            detail,
        }
    };
    let lower_step = prove_step(&lower_step_expr, floor, opts).map_err(descent_err("lower"))?;
    let upper_step = prove_step(&upper_step_expr, floor, opts).map_err(descent_err("upper"))?;
    let step_from = lower_step
        .valid_from()
        .max(upper_step.valid_from())
        .max(ratio.certified_from)
        .max(floor);
    let induction_from = value_base(seq, s, big_s, step_from, declared_from, opts.precision_cap)?;
    let (certified_from, blocker) = value_walk_down(seq, s, big_s, induction_from, floor, opts.precision_cap);
    if certified_from > declared_from {
        return Err(CertifyError::WindowFailure {
            stage: VALUE_STAGE,
            index: certified_from - 1,
            detail: blocker.unwrap_or_else(|| "below the sequence floor".into()),
        });
    }
    Ok(ValueStage {
        lower: s.clone(),
        upper: big_s.clone(),
        declared_from,
        lower_step,
        upper_step,
        induction_from,
        certified_from,
    })
}

/// First index in `[step_from, max(step_from, declared_from)]` where the value
/// sandwich holds; the induction starts there.
pub(crate) fn value_base(
    seq: &PRecursiveSequence,
    s: &LogExpr,
    big_s: &LogExpr,
    step_from: i64,
    declared_from: i64,
    cap: u32,
) -> Result<i64, CertifyError> {
    let last = step_from.max(declared_from);
    let mut n = step_from;
    loop {
        match value_sandwich_at(seq, s, big_s, n, cap) {
            Verdict::Holds => return Ok(n),
            _ if n < last => n += 1,
            Verdict::Fails(detail) => {
                return Err(CertifyError::WindowFailure {
                    stage: VALUE_STAGE,
                    index: n,
                    detail,
                })
            }
            Verdict::Undecided(detail) => {
                return Err(CertifyError::Undecided {
                    stage: VALUE_STAGE,
                    index: n,
                    detail,
                })
            }
        }
    }
}

/// Lowest index down to which the value sandwich holds without a gap, with
/// the reason the walk stopped.
pub(crate) fn value_walk_down(
    seq: &PRecursiveSequence,
    s: &LogExpr,
    big_s: &LogExpr,
    from: i64,
    floor: i64,
    cap: u32,
) -> (i64, Option<String>) {
    let mut n = from;
    while n > floor {
        match value_sandwich_at(seq, s, big_s, n - 1, cap) {
            Verdict::Holds => n -= 1,
            Verdict::Fails(d) | Verdict::Undecided(d) => return (n, Some(d)),
        }
    }
    (n, None)
}

/// `log f + s(n) - s(n+1)` and `S(n+1) - log g - S(n)`.
pub(crate) fn value_step_expressions(
    s: &LogExpr,
    big_s: &LogExpr,
    ratio: &RatioStage,
) -> Result<(LogExpr, LogExpr), CertifyError> {
    let log_f = LogExpr::log(ratio.lower.clone())?;
    let log_g = LogExpr::log(ratio.upper.clone())?;
    Ok((
        log_f.add(s).sub(&s.shift(1)),
        big_s.shift(1).sub(&log_g).sub(big_s),
    ))
}

/// The two expressions whose positivity carries the u sandwich: lower side
/// then upper side.
pub(crate) fn u_step_expressions(
    u_lower: &RationalFunction,
    u_upper: &RationalFunction,
    ratio: &RatioStage,
    value: &ValueStage,
) -> Result<(LogExpr, LogExpr), CertifyError> {
    let a = rf_poly(&[0, -1, 1]);
    let b = rf_poly(&[-2, 1, 1]);
    let c = rf_poly(&[0, -1, 0, 1]);
    let two = RationalFunction::int(2);
    let (f, g) = (&ratio.lower, &ratio.upper);
    let lower = LogExpr::log(f.clone())?
        .mul_rational(&a)
        .sub(&LogExpr::log(g.shift(-1))?.mul_rational(&b))
        .add(&value.lower.shift(-1).mul_rational(&two))
        .sub(&LogExpr::log(u_lower.clone())?.mul_rational(&c));
    let upper = LogExpr::log(u_upper.clone())?
        .mul_rational(&c)
        .sub(&LogExpr::log(g.clone())?.mul_rational(&a))
        .add(&LogExpr::log(f.shift(-1))?.mul_rational(&b))
        .sub(&value.upper.shift(-1).mul_rational(&two));
    Ok((lower, upper))
}

pub(crate) fn u_sandwich_at(
    seq: &PRecursiveSequence,
    lower: &RationalFunction,
    upper: &RationalFunction,
    n: i64,
    cap: u32,
) -> Verdict {
    let bound = |r: &RationalFunction, p: u32| -> Result<Interval, String> {
        r.eval_int(n)
            .map(|v| Interval::exact(v, p))
            .ok_or_else(|| format!("bound has a pole at {n}"))
    };
    let u = |p: u32| seq.u_term(n, p).map_err(|e| e.to_string());
    let lo = positive_margin(cap, "lower side", |p| Ok(u(p)?.sub(&bound(lower, p)?)));
    if !matches!(lo, Verdict::Holds) {
        return lo;
    }
    positive_margin(cap, "upper side", |p| Ok(bound(upper, p)?.sub(&u(p)?)))
}

/// Certify `lower(n) < u_n < upper(n)` from `declared_from` on.
pub fn verify_u_bounds(
    seq: &PRecursiveSequence,
    lower: &RationalFunction,
    upper: &RationalFunction,
    declared_from: i64,
    ratio: &RatioStage,
    value: &ValueStage,
    opts: &CertifyOptions,
) -> Result<UStage, CertifyError> {
    let floor = sequence_floor(seq).max(2);
    let descent_err = |side: &'static str| {
        move |detail: String| CertifyError::Descent {
            stage: U_STAGE,
            side,
            detail,
        }
    };
    let (d_lower, d_upper) = u_step_expressions(lower, upper, ratio, value)?;
    let lower_step = prove_step(&d_lower, floor, opts).map_err(descent_err("lower"))?;
    let upper_step = prove_step(&d_upper, floor, opts).map_err(descent_err("upper"))?;
    let induction_from = lower_step
        .valid_from()
        .max(upper_step.valid_from())
        .max(ratio.certified_from + 1)
        .max(value.certified_from + 1)
        .max(2);
    let certified_from = declared_from.min(induction_from);
    for n in certified_from..induction_from {
        match u_sandwich_at(seq, lower, upper, n, opts.precision_cap) {
            Verdict::Holds => {}
            Verdict::Fails(detail) => {
                return Err(CertifyError::WindowFailure {
                    stage: U_STAGE,
                    index: n,
                    detail,
                })
            }
            Verdict::Undecided(detail) => {
                return Err(CertifyError::Undecided {
                    stage: U_STAGE,
                    index: n,
                    detail,
                })
            }
        }
    }
    Ok(UStage {
        lower: lower.clone(),
        upper: upper.clone(),
        declared_from,
        lower_step,
        upper_step,
        induction_from,
        certified_from,
    })
}

/// Bounds on the consecutive-quotient ratio of the derived sequence implied
/// by `lower < u_n < upper`.
pub fn derived_ratio_bounds(
    u_lower: &RationalFunction,
    u_upper: &RationalFunction,
    target: Target,
) -> Result<(RationalFunction, RationalFunction), CertifyError> {
    let w = RationalFunction::var().checked_div(&rf_poly(&[1, 1]))?;
    match target {
        Target::Root => Ok((&w * u_lower, &w * u_upper)),
        Target::Ratio => Ok((
            &w * &u_lower.shift(1).checked_div(u_upper)?,
            &w * &u_upper.shift(1).checked_div(u_lower)?,
        )),
        Target::Raw => Err(CertifyError::UnsupportedTarget("raw".into())),
    }
}

pub(crate) fn higher_turan_compositions(
    p: &RationalFunction,
    q: &RationalFunction,
) -> Vec<(String, RationalFunction)> {
    let (p1, q1) = (p.shift(1), q.shift(1));
    vec![
        named("t(p_n,p_{n+1})", turan_quartic(p, &p1)),
        named("t(p_n,q_{n+1})", turan_quartic(p, &q1)),
        named("t(q_n,p_{n+1})", turan_quartic(q, &p1)),
        named("t(q_n,q_{n+1})", turan_quartic(q, &q1)),
    ]
}

pub(crate) fn laguerre_composition(
    p: &RationalFunction,
    q: &RationalFunction,
    middle_upper: bool,
) -> (String, RationalFunction) {
    let middle = if middle_upper { q } else { p };
    let product = &(&(&p.shift(-1) * p) * middle) * &p.shift(1);
    let c = &(&product - &(q * &RationalFunction::int(4))) + &RationalFunction::int(3);
    let name = if middle_upper {
        "p_{n-1}p_nq_np_{n+1}-4q_n+3"
    } else {
        "p_{n-1}p_n^2p_{n+1}-4q_n+3"
    };
    (name.to_owned(), c)
}

type Named = (String, RationalFunction);

/// The named criterion functions and side conditions for `criterion`.
pub(crate) fn criterion_functions(
    u_lower: &RationalFunction,
    u_upper: &RationalFunction,
    target: Target,
    criterion: Criterion,
) -> Result<(Vec<Named>, Vec<Named>), CertifyError> {
    let (p, q) = derived_ratio_bounds(u_lower, u_upper, target)?;
    Ok(match criterion {
        Criterion::HigherTuran => (higher_turan_compositions(&p, &q), Vec::new()),
        Criterion::Laguerre2(mode) => {
            let middle_upper = target == Target::Ratio && mode == LaguerreMode::Paper;
            (
                vec![laguerre_composition(&p, &q, middle_upper)],
                vec![named("p_n", p)],
            )
        }
    })
}

fn thresholds(
    named: Vec<(String, RationalFunction)>,
    floor: i64,
) -> Result<Vec<Condition>, CertifyError> {
    named
        .into_iter()
        .map(|(name, function)| match positivity_threshold(&function, floor) {
            Ok(threshold) => Ok(Condition {
                name,
                function,
                threshold,
            }),
            Err(_) => Err(CertifyError::CriterionFailure { pair: name }),
        })
        .collect()
}

fn criterion_stage(
    bounds: &CandidateBounds,
    target: Target,
    criterion: Criterion,
    floor: i64,
) -> Result<CriterionStage, CertifyError> {
    let (fu, gu) = bounds.u()?;
    let (comps, sides) = criterion_functions(&fu.expr, &gu.expr, target, criterion)?;
    let compositions = thresholds(comps, floor)?;
    let side_conditions = thresholds(sides, floor)?;
    let threshold = compositions
        .iter()
        .map(|c| c.threshold.threshold)
        .max()
        .unwrap_or(floor);
    Ok(CriterionStage {
        criterion,
        target,
        compositions,
        side_conditions,
        threshold,
    })
}

/// Four `t` compositions of the derived-ratio bounds.
pub fn criterion_higher_turan(
    bounds: &CandidateBounds,
    target: Target,
    floor: i64,
) -> Result<CriterionStage, CertifyError> {
    criterion_stage(bounds, target, Criterion::HigherTuran, floor)
}

pub fn criterion_laguerre2(
    bounds: &CandidateBounds,
    target: Target,
    mode: LaguerreMode,
    floor: i64,
) -> Result<CriterionStage, CertifyError> {
    criterion_stage(bounds, target, Criterion::Laguerre2(mode), floor)
}

/// First index from which the criterion and the u sandwich together settle
/// the inequality.
pub fn covered_from(criterion: &CriterionStage, u: &UStage) -> i64 {
    let sides = criterion
        .side_conditions
        .iter()
        .map(|c| c.threshold.threshold)
        .max()
        .unwrap_or(i64::MIN);
    u.certified_from.max(criterion.threshold).max(sides)
}
