//! Expressions `R0(n) + sum P_i(n) * log(R_i(n))` with rational-function
//! parts: arithmetic, differentiation, interval evaluation, limits at
//! infinity and derivative-descent positivity proofs.

mod asymptotic;
mod descent;

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::LogExprError;
use crate::exact::RationalFunction;
use crate::interval::{decide_sign, Interval, SignDecision};

pub use asymptotic::{limit_at_infinity, AsymptoticClass, LeadingTerm, LimitKind, LogConstant};
pub(crate) use descent::domain_threshold;
pub use descent::{
    check_descent, prove_eventually_positive, DescentOptions, DescentProof, DescentRule,
    DescentStep,
};

/// One `coeff * log(arg)` summand.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LogTerm {
    pub coeff: RationalFunction,
    pub arg: RationalFunction,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LogExpr {
    rational_part: RationalFunction,
    log_terms: Vec<LogTerm>,
}

impl LogExpr {
    pub fn zero() -> Self {
        LogExpr {
            rational_part: RationalFunction::zero(),
            log_terms: Vec::new(),
        }
    }

    pub fn rational(r: RationalFunction) -> Self {
        LogExpr {
            rational_part: r,
            log_terms: Vec::new(),
        }
    }

    /// `log(arg)`; the argument must be positive for large `n`.
    pub fn log(arg: RationalFunction) -> Result<Self, LogExprError> {
        Self::log_term(RationalFunction::one(), arg)
    }

    /// `coeff * log(arg)`.
    pub fn log_term(coeff: RationalFunction, arg: RationalFunction) -> Result<Self, LogExprError> {
        if arg.is_zero() || arg.sign_at_infinity() != Ordering::Greater {
            return Err(LogExprError::Domain(format!(
                "log argument {arg} is not positive for large n"
            )));
        }
        Ok(Self::from_parts(
            RationalFunction::zero(),
            vec![LogTerm { coeff, arg }],
        ))
    }

    /// Build from raw parts, merging equal arguments and dropping vanishing
    /// terms.
    pub fn from_parts(rational_part: RationalFunction, terms: Vec<LogTerm>) -> Self {
        let mut merged: Vec<LogTerm> = Vec::with_capacity(terms.len());
        for t in terms {
            if t.coeff.is_zero() || t.arg.as_constant().is_some_and(|c| c.is_one()) {
                continue;
            }
            match merged.iter_mut().find(|m| m.arg == t.arg) {
                Some(m) => m.coeff = &m.coeff + &t.coeff,
                None => merged.push(t),
            }
        }
        merged.retain(|t| !t.coeff.is_zero());
        merged.sort_by(|a, b| a.arg.cmp_key(&b.arg));
        LogExpr {
            rational_part,
            log_terms: merged,
        }
    }

    pub fn rational_part(&self) -> &RationalFunction {
        &self.rational_part
    }

    pub fn log_terms(&self) -> &[LogTerm] {
        &self.log_terms
    }

    pub fn is_rational(&self) -> bool {
        self.log_terms.is_empty()
    }

    pub fn as_rational(&self) -> Option<&RationalFunction> {
        self.is_rational().then_some(&self.rational_part)
    }

    pub fn is_zero(&self) -> bool {
        self.rational_part.is_zero() && self.log_terms.is_empty()
    }

    /// Largest numerator degree over the log coefficients, when they are all
    /// polynomials.
    pub fn max_log_coeff_degree(&self) -> Option<Option<usize>> {
        let mut best = None;
        for t in &self.log_terms {
            if !t.coeff.is_polynomial() {
                return None;
            }
            best = best.max(t.coeff.num().degree());
        }
        Some(best)
    }

    pub fn add(&self, o: &LogExpr) -> LogExpr {
        let mut terms = self.log_terms.clone();
        terms.extend(o.log_terms.iter().cloned());
        Self::from_parts(&self.rational_part + &o.rational_part, terms)
    }

    pub fn sub(&self, o: &LogExpr) -> LogExpr {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> LogExpr {
        self.mul_rational(&RationalFunction::int(-1))
    }

    /// Multiply by a rational function.
    pub fn mul_rational(&self, r: &RationalFunction) -> LogExpr {
        let terms = self
            .log_terms
            .iter()
            .map(|t| LogTerm {
                coeff: &t.coeff * r,
                arg: t.arg.clone(),
            })
            .collect();
        Self::from_parts(&self.rational_part * r, terms)
    }

    /// `e(n + k)`.
    pub fn shift(&self, k: i64) -> LogExpr {
        let terms = self
            .log_terms
            .iter()
            .map(|t| LogTerm {
                coeff: t.coeff.shift(k),
                arg: t.arg.shift(k),
            })
            .collect();
        Self::from_parts(self.rational_part.shift(k), terms)
    }

    /// Exact derivative in `n`.
    pub fn derivative(&self) -> LogExpr {
        let mut rational = self.rational_part.derivative();
        let mut terms = Vec::with_capacity(self.log_terms.len());
        for t in &self.log_terms {
            terms.push(LogTerm {
                coeff: t.coeff.derivative(),
                arg: t.arg.clone(),
            });
            if !t.arg.is_constant() {
                let log_deriv = t
                    .arg
                    .derivative()
                    .checked_div(&t.arg)
                    .expect("log argument is nonzero");
                rational = &rational + &(&t.coeff * &log_deriv);
            }
        }
        Self::from_parts(rational, terms)
    }

    /// Enclosure of `e(n)` at the given working precision.
    pub fn eval_interval(&self, n: i64, precision: u32) -> Result<Interval, LogExprError> {
        let r = self
            .rational_part
            .eval_int(n)
            .ok_or(LogExprError::Pole(n))?;
        let mut acc = Interval::exact(r, precision);
        for t in &self.log_terms {
            let c = t.coeff.eval_int(n).ok_or(LogExprError::Pole(n))?;
            let a = t.arg.eval_int(n).ok_or(LogExprError::Pole(n))?;
            if !a.is_positive() {
                return Err(LogExprError::NonPositiveArgument {
                    arg: t.arg.to_string(),
                    n,
                });
            }
            if c.is_zero() {
                continue;
            }
            let l = Interval::exact(a, precision).ln()?;
            acc = acc.add(&l.scale(&c));
        }
        Ok(acc)
    }

    /// Sign of `e(n)` by adaptive-precision evaluation up to `cap` bits.
    pub fn eval_sign(&self, n: i64, cap: u32) -> Result<SignDecision, LogExprError> {
        decide_sign(cap, |p| self.eval_interval(n, p))
    }
}

fn wrap_rf(r: &RationalFunction) -> String {
    let s = r.to_string();
    if s.contains(['+', '-', ' ', '/']) {
        format!("({s})")
    } else {
        s
    }
}

impl fmt::Display for LogExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        if !self.rational_part.is_zero() || self.log_terms.is_empty() {
            write!(f, "{}", self.rational_part)?;
            first = false;
        }
        for t in &self.log_terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if t.coeff == RationalFunction::one() {
                write!(f, "log({})", t.arg)?;
            } else {
                write!(f, "{}*log({})", wrap_rf(&t.coeff), t.arg)?;
            }
        }
        Ok(())
    }
}

impl From<RationalFunction> for LogExpr {
    fn from(r: RationalFunction) -> Self {
        LogExpr::rational(r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, ratfunc_simplify, Polynomial, Rational};
    use num_traits::ToPrimitive;

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_ints(c)
    }

    fn rf(n: &[i64], d: &[i64]) -> RationalFunction {
        ratfunc_simplify(p(n), p(d)).unwrap()
    }

    fn n_log_n() -> LogExpr {
        LogExpr::log_term(RationalFunction::var(), RationalFunction::var()).unwrap()
    }

    #[test]
    fn product_rule() {
        let d = n_log_n().derivative();
        let expected = LogExpr::log(RationalFunction::var())
            .unwrap()
            .add(&LogExpr::rational(RationalFunction::one()));
        assert_eq!(d, expected);
    }

    #[test]
    fn constant_log_has_zero_derivative() {
        let e = LogExpr::log(RationalFunction::int(7)).unwrap();
        assert!(e.derivative().is_zero());
        assert!(LogExpr::log(RationalFunction::int(0)).is_err());
        assert!(LogExpr::log(RationalFunction::int(-2)).is_err());
    }

    #[test]
    fn equal_args_merge() {
        let a = LogExpr::log(RationalFunction::var()).unwrap();
        let e = a.add(&a).sub(&a.mul_rational(&RationalFunction::int(2)));
        assert!(e.is_zero());
    }

    fn cubic_log() -> LogExpr {
        LogExpr::log_term(rf(&[0, -1, 0, 1], &[1]), rf(&[-1, 0, 1], &[0, 0, 1])).unwrap()
    }

    #[test]
    fn derivative_matches_finite_difference() {
        let e = cubic_log();
        let d = e.derivative();
        let n = 10i64;
        let h = 1e-4;
        let f = |x: f64| (x.powi(3) - x) * (1.0 - 1.0 / (x * x)).ln();
        let fd = (f(n as f64 + h) - f(n as f64 - h)) / (2.0 * h);
        let exact = d.eval_interval(n, 200).unwrap().mid_f64();
        assert!(((exact - fd) / exact).abs() < 1e-8, "{exact} vs {fd}");
        // (3n^2 - 1) log(1 - 1/n^2) + 2
        let expected = LogExpr::log_term(rf(&[-1, 0, 3], &[1]), rf(&[-1, 0, 1], &[0, 0, 1]))
            .unwrap()
            .add(&LogExpr::rational(RationalFunction::int(2)));
        assert_eq!(d, expected);
    }

    #[test]
    fn eval_examples() {
        let iv = n_log_n().eval_interval(1, 64).unwrap();
        assert!(iv.contains(&rat(0)));
        assert!(iv.width() <= Rational::new(1.into(), num_bigint::BigInt::one() << 63u32));
        let v = cubic_log().eval_interval(10, 200).unwrap();
        let reference = 990.0 * (0.99f64).ln();
        assert!((v.mid_f64() - reference).abs() < 1e-10);
        assert!(matches!(
            cubic_log().eval_interval(1, 64),
            Err(LogExprError::NonPositiveArgument { .. })
        ));
    }

    #[test]
    fn shift_is_substitution() {
        let e = cubic_log();
        let s = e.shift(3);
        let a = s.eval_interval(10, 128).unwrap();
        let b = e.eval_interval(13, 128).unwrap();
        assert!(a.overlaps(&b));
        assert!(a.width().to_f64().unwrap() < 1e-30);
    }

    #[test]
    fn display_round_trips_structure() {
        let e = cubic_log().add(&LogExpr::rational(rf(&[1], &[0, 1])));
        assert_eq!(e.to_string(), "1/n + (n^3 - n)*log((n^2 - 1)/n^2)");
    }
}
