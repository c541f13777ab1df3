//! Eventual positivity by derivative descent: differentiate until the
//! expression is rational, bound the rational tail's real roots, then carry
//! the sign back up one derivative at a time using limits at infinity.

use std::cmp::Ordering;

use super::asymptotic::{limit_at_infinity, AsymptoticClass, LimitKind};
use super::LogExpr;
use crate::error::LogExprError;
use crate::exact::RationalFunction;
use crate::interval::{Interval, DEFAULT_PRECISION_CAP};
use crate::roots::{
    check_threshold, real_positivity_threshold, PositivityThreshold, RootWitness, ThresholdScope,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DescentOptions {
    /// Smallest admissible threshold.
    pub floor: i64,
    /// Number of doubling probes allowed when a point evaluation is needed.
    pub eval_budget: u32,
    pub precision_cap: u32,
}

impl Default for DescentOptions {
    fn default() -> Self {
        DescentOptions {
            floor: 1,
            eval_budget: 48,
            precision_cap: DEFAULT_PRECISION_CAP,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DescentRule {
    /// The derivative below vanishes identically, so the level is constant.
    Constant,
    /// Monotone towards a finite limit whose sign carries over.
    MonotoneLimit,
    /// Monotone away from zero after a certified point value.
    PointEvaluation,
}

impl DescentRule {
    pub fn as_str(self) -> &'static str {
        match self {
            DescentRule::Constant => "constant",
            DescentRule::MonotoneLimit => "monotone_limit",
            DescentRule::PointEvaluation => "point_evaluation",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "constant" => Some(DescentRule::Constant),
            "monotone_limit" => Some(DescentRule::MonotoneLimit),
            "point_evaluation" => Some(DescentRule::PointEvaluation),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescentStep {
    pub derivative_order: usize,
    pub limit: AsymptoticClass,
    pub sign: Ordering,
    /// The sign holds for every real `n >= threshold`.
    pub threshold: i64,
    pub rule: DescentRule,
    /// Set when a monotone-limit step relies on a nonzero finite limit.
    pub extension: bool,
    pub witness: Option<(i64, Interval)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescentProof {
    pub order: usize,
    pub rational_tail: RationalFunction,
    pub tail_sign: Ordering,
    /// Real threshold for `tail_sign * tail > 0`.
    pub tail_threshold: PositivityThreshold,
    /// All poles and log-argument sign changes lie below this.
    pub domain_threshold: i64,
    /// Levels `order - 1` down to `0`.
    pub chain: Vec<DescentStep>,
    pub final_threshold: i64,
}

fn real_bound(r: &RationalFunction, floor: i64) -> Result<i64, LogExprError> {
    Ok(real_positivity_threshold(r, floor)?.threshold)
}

/// Smallest integer from which every pole lies below and every log argument
/// stays positive on the real half-line.
pub(crate) fn domain_threshold(e: &LogExpr, floor: i64) -> Result<i64, LogExprError> {
    let mut n = floor;
    let mut dens = vec![e.rational_part().den().clone()];
    for t in e.log_terms() {
        n = n.max(real_bound(&t.arg, floor)?);
        dens.push(t.coeff.den().clone());
        dens.push(t.arg.den().clone());
    }
    for d in dens {
        if !d.is_constant() {
            n = n.max(real_bound(&RationalFunction::from_poly(&d * &d), floor)?);
        }
    }
    Ok(n)
}

fn derivatives(e: &LogExpr) -> Result<Vec<LogExpr>, LogExprError> {
    let bound = match e.max_log_coeff_degree() {
        None => {
            return Err(LogExprError::Domain(
                "derivative descent needs polynomial log coefficients".into(),
            ))
        }
        Some(d) => d.map_or(0, |d| d + 1),
    };
    let mut levels = vec![e.clone()];
    while !levels.last().unwrap().is_rational() {
        if levels.len() > bound {
            return Err(LogExprError::Domain(
                "log terms survive differentiation".into(),
            ));
        }
        let next = levels.last().unwrap().derivative();
        levels.push(next);
    }
    Ok(levels)
}

fn tail_threshold(
    tail: &RationalFunction,
    floor: i64,
) -> Result<(Ordering, PositivityThreshold), LogExprError> {
    if tail.is_zero() {
        let t = PositivityThreshold {
            threshold: floor,
            floor,
            scope: ThresholdScope::Reals,
            witness: RootWitness {
                root_bound: crate::exact::rat(floor),
                largest_root: None,
            },
            checked_floor: floor,
        };
        return Ok((Ordering::Equal, t));
    }
    let sign = tail.sign_at_infinity();
    let f = if sign == Ordering::Less {
        -tail
    } else {
        tail.clone()
    };
    Ok((sign, real_positivity_threshold(&f, floor)?))
}

/// First point at or after `start` where `e` has the `target` sign, assuming
/// `e` is monotone there; probes `start + 2^i - 1` then bisects downwards.
fn find_point(
    e: &LogExpr,
    target: Ordering,
    start: i64,
    opts: &DescentOptions,
) -> Result<(i64, Interval), LogExprError> {
    let mut below: Option<i64> = None;
    let mut found = None;
    let mut step: i64 = 1;
    for _ in 0..opts.eval_budget.max(1) {
        let n = start + step - 1;
        let d = e.eval_sign(n, opts.precision_cap)?;
        if d.sign == Some(target) {
            found = Some((n, d.interval));
            break;
        }
        below = Some(n);
        step = step
            .checked_mul(2)
            .ok_or_else(|| LogExprError::Inconclusive("probe overflow".into()))?;
    }
    let (mut hi, mut iv) = found.ok_or_else(|| {
        LogExprError::Inconclusive(format!(
            "no certified {} value within {} probes from n = {start}",
            if target == Ordering::Greater {
                "positive"
            } else {
                "negative"
            },
            opts.eval_budget
        ))
    })?;
    if let Some(mut lo) = below {
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            let d = e.eval_sign(mid, opts.precision_cap)?;
            if d.sign == Some(target) {
                hi = mid;
                iv = d.interval;
            } else {
                lo = mid;
            }
        }
    }
    Ok((hi, iv))
}

/// Sign conclusion for a level whose derivative has sign `below` on
/// `[threshold, inf)`, before any point search.
enum Plan {
    Done(Ordering, DescentRule, bool),
    Search(Ordering),
}

fn plan(below: Ordering, limit: &AsymptoticClass) -> Result<Plan, LogExprError> {
    let l = limit.limit_sign();
    Ok(match (below, limit.kind) {
        (Ordering::Equal, LimitKind::Finite) => Plan::Done(l, DescentRule::Constant, false),
        (Ordering::Equal, _) => {
            return Err(LogExprError::Domain(
                "constant level with infinite limit".into(),
            ))
        }
        (Ordering::Greater, LimitKind::Finite) if l != Ordering::Greater => Plan::Done(
            Ordering::Less,
            DescentRule::MonotoneLimit,
            l != Ordering::Equal,
        ),
        (Ordering::Greater, LimitKind::MinusInfinity)
        | (Ordering::Less, LimitKind::PlusInfinity) => {
            return Err(LogExprError::Domain(
                "monotone level diverges the wrong way".into(),
            ))
        }
        (Ordering::Greater, _) => Plan::Search(Ordering::Greater),
        (Ordering::Less, LimitKind::Finite) if l != Ordering::Less => Plan::Done(
            Ordering::Greater,
            DescentRule::MonotoneLimit,
            l != Ordering::Equal,
        ),
        (Ordering::Less, _) => Plan::Search(Ordering::Less),
    })
}

/// Prove `e(n) > 0` for every real `n >= final_threshold`.
pub fn prove_eventually_positive(
    e: &LogExpr,
    opts: &DescentOptions,
) -> Result<DescentProof, LogExprError> {
    if e.is_zero() {
        return Err(LogExprError::Domain(
            "expression is identically zero".into(),
        ));
    }
    let domain = domain_threshold(e, opts.floor)?;
    let levels = derivatives(e)?;
    let order = levels.len() - 1;
    let tail = levels[order].rational_part().clone();
    let (tail_sign, tail_t) = tail_threshold(&tail, domain)?;
    let mut sign = tail_sign;
    let mut threshold = tail_t.threshold;
    let mut chain = Vec::with_capacity(order);
    for k in (0..order).rev() {
        let limit = limit_at_infinity(&levels[k]);
        let step = match plan(sign, &limit)? {
            Plan::Search(target) if k == 0 && target != Ordering::Greater => {
                return Err(LogExprError::EventuallyNonpositive(format!(
                    "limit is {limit} with the expression decreasing"
                )))
            }
            Plan::Search(target) => {
                let (n0, iv) = find_point(&levels[k], target, threshold, opts)?;
                DescentStep {
                    derivative_order: k,
                    limit,
                    sign: target,
                    threshold: n0,
                    rule: DescentRule::PointEvaluation,
                    extension: false,
                    witness: Some((n0, iv)),
                }
            }
            Plan::Done(s, rule, extension) => DescentStep {
                derivative_order: k,
                limit,
                sign: s,
                threshold,
                rule,
                extension,
                witness: None,
            },
        };
        sign = step.sign;
        threshold = step.threshold;
        chain.push(step);
    }
    if sign != Ordering::Greater {
        return Err(LogExprError::EventuallyNonpositive(format!(
            "descent concludes the expression is {} for n >= {threshold}",
            if sign == Ordering::Less {
                "negative"
            } else {
                "zero"
            }
        )));
    }
    Ok(DescentProof {
        order,
        rational_tail: tail,
        tail_sign,
        tail_threshold: tail_t,
        domain_threshold: domain,
        chain,
        final_threshold: threshold,
    })
}

/// Re-derive every step of a descent proof for `e`; returns the first
/// inconsistency.
pub fn check_descent(
    e: &LogExpr,
    proof: &DescentProof,
    opts: &DescentOptions,
) -> Result<(), String> {
    let domain = domain_threshold(e, opts.floor).map_err(|x| x.to_string())?;
    if proof.domain_threshold != domain {
        return Err(format!(
            "domain threshold {} differs from recomputed {domain}",
            proof.domain_threshold
        ));
    }
    let levels = derivatives(e).map_err(|x| x.to_string())?;
    if levels.len() - 1 != proof.order {
        return Err(format!(
            "descent order {} differs from {}",
            proof.order,
            levels.len() - 1
        ));
    }
    let tail = levels[proof.order].rational_part();
    if tail != &proof.rational_tail {
        return Err("rational tail does not match the derivative".into());
    }
    if proof.tail_threshold.threshold < domain {
        return Err("tail threshold lies below the domain threshold".into());
    }
    match proof.tail_sign {
        Ordering::Equal if tail.is_zero() => {
            if proof.tail_threshold != tail_threshold(tail, domain).map_err(|x| x.to_string())?.1 {
                return Err("tail threshold record of a zero tail is altered".into());
            }
        }
        Ordering::Equal => return Err("tail is not identically zero".into()),
        s => {
            if tail.sign_at_infinity() != s {
                return Err("tail sign at infinity mismatch".into());
            }
            let f = if s == Ordering::Less {
                -tail
            } else {
                tail.clone()
            };
            let t = &proof.tail_threshold;
            if t.floor != domain {
                return Err("tail threshold floor differs from the domain threshold".into());
            }
            if t.scope != ThresholdScope::Reals {
                return Err("tail threshold must hold on the reals".into());
            }
            check_threshold(&f, t).map_err(|m| format!("tail threshold: {m}"))?;
        }
    }
    if proof.chain.len() != proof.order {
        return Err("chain length differs from the descent order".into());
    }
    let mut sign = proof.tail_sign;
    let mut threshold = proof.tail_threshold.threshold;
    for (i, step) in proof.chain.iter().enumerate() {
        let k = proof.order - 1 - i;
        if step.derivative_order != k {
            return Err(format!(
                "step {i} has derivative order {}",
                step.derivative_order
            ));
        }
        let limit = limit_at_infinity(&levels[k]);
        if limit != step.limit {
            return Err(format!(
                "limit of derivative {k} is {limit}, not {}",
                step.limit
            ));
        }
        match plan(sign, &limit).map_err(|x| x.to_string())? {
            Plan::Done(s, rule, extension) => {
                if (s, rule, extension, step.threshold)
                    != (step.sign, step.rule, step.extension, threshold)
                    || step.witness.is_some()
                {
                    return Err(format!(
                        "derivative {k}: step does not follow from the limit"
                    ));
                }
            }
            Plan::Search(target) => {
                if step.rule != DescentRule::PointEvaluation
                    || step.sign != target
                    || step.extension
                {
                    return Err(format!("derivative {k}: expected a point evaluation"));
                }
                let (n0, iv) = step
                    .witness
                    .as_ref()
                    .ok_or_else(|| format!("derivative {k}: missing witness"))?;
                if *n0 < threshold || step.threshold != *n0 {
                    return Err(format!(
                        "derivative {k}: witness {n0} outside the monotone range"
                    ));
                }
                let d = levels[k]
                    .eval_sign(*n0, opts.precision_cap)
                    .map_err(|x| x.to_string())?;
                if d.sign != Some(target) {
                    return Err(format!(
                        "derivative {k}: sign at witness {n0} not certified"
                    ));
                }
                let again = levels[k]
                    .eval_interval(*n0, iv.precision())
                    .map_err(|x| x.to_string())?;
                if &again != iv {
                    return Err(format!(
                        "derivative {k}: witness enclosure at {n0} does not reproduce"
                    ));
                }
            }
        }
        sign = step.sign;
        threshold = step.threshold;
    }
    if sign != Ordering::Greater {
        return Err("descent does not conclude positivity".into());
    }
    if threshold != proof.final_threshold {
        return Err(format!(
            "final threshold {} differs from chain result {threshold}",
            proof.final_threshold
        ));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{ratfunc_simplify, Polynomial};

    fn rf(n: &[i64], d: &[i64]) -> RationalFunction {
        ratfunc_simplify(Polynomial::from_ints(n), Polynomial::from_ints(d)).unwrap()
    }

    #[test]
    fn log_of_ratio_is_positive_from_floor() {
        let e = LogExpr::log(rf(&[1, 1], &[0, 1])).unwrap();
        let p = prove_eventually_positive(&e, &DescentOptions::default()).unwrap();
        assert_eq!(p.order, 1);
        assert_eq!(p.tail_sign, Ordering::Less);
        assert_eq!(p.final_threshold, 1);
        assert_eq!(p.chain[0].rule, DescentRule::MonotoneLimit);
        check_descent(&e, &p, &DescentOptions::default()).unwrap();
    }

    #[test]
    fn negative_expression_is_rejected() {
        let e = LogExpr::log(rf(&[0, 1], &[1, 1])).unwrap();
        assert!(matches!(
            prove_eventually_positive(&e, &DescentOptions::default()),
            Err(LogExprError::EventuallyNonpositive(_))
        ));
    }

    #[test]
    fn point_evaluation_when_growing() {
        // n log n - 10 n: needs a point beyond e^10.
        let e = LogExpr::log_term(RationalFunction::var(), RationalFunction::var())
            .unwrap()
            .add(&LogExpr::rational(rf(&[0, -10], &[1])));
        let p = prove_eventually_positive(&e, &DescentOptions::default()).unwrap();
        let last = p.chain.last().unwrap();
        assert_eq!(last.rule, DescentRule::PointEvaluation);
        // e^10 = 22026.47 so the first positive integer is 22027.
        assert_eq!(p.final_threshold, 22027);
        check_descent(&e, &p, &DescentOptions::default()).unwrap();
        let mut bad = p.clone();
        bad.final_threshold -= 1;
        bad.chain.last_mut().unwrap().threshold -= 1;
        if let Some((n, _)) = bad.chain.last_mut().unwrap().witness.as_mut() {
            *n -= 1;
        }
        assert!(check_descent(&e, &bad, &DescentOptions::default()).is_err());
    }
}
