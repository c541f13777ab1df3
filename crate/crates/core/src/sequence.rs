//! P-recursive sequences `sum p_i(n) a_(n+i) = 0`: exact terms and interval
//! enclosures of their root quantities.

use std::collections::HashMap;
use std::fmt;
use std::sync::RwLock;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::SequenceError;
use crate::exact::{rat, Polynomial, Rational};
use crate::interval::{Interval, MIN_PRECISION};

/// Which sequence derived from `a_n` is under study.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Target {
    /// `a_n^(1/n) / n!`
    Root,
    /// `a_(n+1)^(1/(n+1)) / (a_n^(1/n) n!)`
    Ratio,
    /// `a_n` itself.
    Raw,
}

impl Target {
    pub fn as_str(self) -> &'static str {
        match self {
            Target::Root => "root",
            Target::Ratio => "ratio",
            Target::Raw => "raw",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "root" => Some(Target::Root),
            "ratio" => Some(Target::Ratio),
            "raw" => Some(Target::Raw),
            _ => None,
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

pub struct PRecursiveSequence {
    name: String,
    coeffs: Vec<Polynomial>,
    start: i64,
    initial: Vec<Rational>,
    positivity_from: i64,
    terms: RwLock<Vec<Rational>>,
    logs: RwLock<HashMap<(i64, u32), Interval>>,
}

impl fmt::Debug for PRecursiveSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PRecursiveSequence")
            .field("name", &self.name)
            .field("coeffs", &self.coeffs)
            .field("start", &self.start)
            .field("initial", &self.initial)
            .field("positivity_from", &self.positivity_from)
            .finish()
    }
}

impl Clone for PRecursiveSequence {
    fn clone(&self) -> Self {
        PRecursiveSequence {
            name: self.name.clone(),
            coeffs: self.coeffs.clone(),
            start: self.start,
            initial: self.initial.clone(),
            positivity_from: self.positivity_from,
            terms: RwLock::new(self.terms.read().unwrap_or_else(|e| e.into_inner()).clone()),
            logs: RwLock::new(HashMap::new()),
        }
    }
}

impl PRecursiveSequence {
    /// `coeffs[i]` multiplies `a_(n+i)`; `initial[j]` is `a_(start+j)`.
    pub fn new(
        name: impl Into<String>,
        coeffs: Vec<Polynomial>,
        start: i64,
        initial: Vec<Rational>,
        positivity_from: i64,
    ) -> Result<Self, SequenceError> {
        if coeffs.len() < 2 {
            return Err(SequenceError::Invalid("order must be at least 1".into()));
        }
        if coeffs.last().unwrap().is_zero() {
            return Err(SequenceError::Invalid("leading coefficient is zero".into()));
        }
        let order = coeffs.len() - 1;
        if initial.len() < order {
            return Err(SequenceError::Invalid(format!(
                "order {order} needs at least {order} initial values, got {}",
                initial.len()
            )));
        }
        let seq = PRecursiveSequence {
            name: name.into(),
            coeffs,
            start,
            terms: RwLock::new(initial.clone()),
            initial,
            positivity_from,
            logs: RwLock::new(HashMap::new()),
        };
        for k in start + order as i64..start + seq.initial.len() as i64 {
            let n = k - order as i64;
            if !seq.residual(n)?.is_zero() {
                return Err(SequenceError::InconsistentInitial { index: k });
            }
        }
        Ok(seq)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Polynomial] {
        &self.coeffs
    }

    pub fn start(&self) -> i64 {
        self.start
    }

    pub fn initial(&self) -> &[Rational] {
        &self.initial
    }

    pub fn positivity_from(&self) -> i64 {
        self.positivity_from
    }

    fn extend_to(&self, idx: usize) -> Result<(), SequenceError> {
        let mut terms = self.terms.write().unwrap_or_else(|e| e.into_inner());
        let d = self.order();
        while terms.len() <= idx {
            let k = self.start + terms.len() as i64;
            let n = k - d as i64;
            let lead = self.coeffs[d].eval_int(n);
            if lead.is_zero() {
                return Err(SequenceError::SingularPoint { index: n });
            }
            let base = terms.len() - d;
            let mut acc = Rational::zero();
            for (i, p) in self.coeffs[..d].iter().enumerate() {
                let a = &terms[base + i];
                if !a.is_zero() {
                    acc += p.eval_int(n) * a;
                }
            }
            terms.push(-acc / lead);
        }
        Ok(())
    }

    /// Exact `a_n`.
    pub fn term(&self, n: i64) -> Result<Rational, SequenceError> {
        if n < self.start {
            return Err(SequenceError::BeforeStart {
                index: n,
                start: self.start,
            });
        }
        let idx = (n - self.start) as usize;
        {
            let terms = self.terms.read().unwrap_or_else(|e| e.into_inner());
            if let Some(t) = terms.get(idx) {
                return Ok(t.clone());
            }
        }
        self.extend_to(idx)?;
        Ok(self.terms.read().unwrap_or_else(|e| e.into_inner())[idx].clone())
    }

    /// `a_from, ..., a_to` inclusive.
    pub fn terms(&self, from: i64, to: i64) -> Result<Vec<Rational>, SequenceError> {
        if to >= from {
            self.term(to)?;
        }
        (from..=to).map(|n| self.term(n)).collect()
    }

    /// Exact `a_(n+1) / a_n`.
    pub fn ratio(&self, n: i64) -> Result<Rational, SequenceError> {
        let a = self.term(n)?;
        if a.is_zero() {
            return Err(SequenceError::ZeroTerm { index: n });
        }
        Ok(self.term(n + 1)? / a)
    }

    /// `sum p_i(n) a_(n+i)`, zero for every generated window.
    pub fn residual(&self, n: i64) -> Result<Rational, SequenceError> {
        let mut acc = Rational::zero();
        for (i, p) in self.coeffs.iter().enumerate() {
            acc += p.eval_int(n) * self.term(n + i as i64)?;
        }
        Ok(acc)
    }

    /// Index of the first non-positive term in `[positivity_from, upto]`.
    pub fn first_nonpositive(&self, upto: i64) -> Result<Option<i64>, SequenceError> {
        for n in self.positivity_from.max(self.start)..=upto {
            if !self.term(n)?.is_positive() {
                return Ok(Some(n));
            }
        }
        Ok(None)
    }

    fn positive_term(&self, n: i64) -> Result<Rational, SequenceError> {
        let a = self.term(n)?;
        if a.is_zero() {
            return Err(SequenceError::ZeroTerm { index: n });
        }
        if a.is_negative() {
            return Err(SequenceError::NegativeTerm { index: n });
        }
        Ok(a)
    }

    /// Enclosure of `ln a_n`.
    pub fn log_term(&self, n: i64, precision: u32) -> Result<Interval, SequenceError> {
        let precision = precision.max(MIN_PRECISION);
        if let Some(iv) = self
            .logs
            .read()
            .unwrap_or_else(|e| e.into_inner())
            .get(&(n, precision))
        {
            return Ok(iv.clone());
        }
        let a = self.positive_term(n)?;
        let iv = Interval::exact(a, precision).ln()?;
        self.logs
            .write()
            .unwrap_or_else(|e| e.into_inner())
            .insert((n, precision), iv.clone());
        Ok(iv)
    }

    /// Enclosure of `a_n^(1/n)`; exact when `a_n` is a perfect power.
    pub fn nth_root(&self, n: i64, precision: u32) -> Result<Interval, SequenceError> {
        if n < 1 {
            return Err(SequenceError::OutOfRange { index: n });
        }
        let a = self.term(n)?;
        if a.is_negative() {
            return Err(SequenceError::NegativeTerm { index: n });
        }
        if let Some(r) = exact_root(&a, n) {
            return Ok(Interval::exact(r, precision));
        }
        Ok(self.log_term(n, precision)?.scale(&Rational::new(BigInt::one(), n.into())).exp()?)
    }

    /// Enclosure of `u_n = a_(n-1)^(1/(n-1)) a_(n+1)^(1/(n+1)) / a_n^(2/n)`.
    pub fn u_term(&self, n: i64, precision: u32) -> Result<Interval, SequenceError> {
        if n < 2 {
            return Err(SequenceError::OutOfRange { index: n });
        }
        let inv = |k: i64| Rational::new(BigInt::one(), k.into());
        let l = self
            .log_term(n - 1, precision)?
            .scale(&inv(n - 1))
            .add(&self.log_term(n + 1, precision)?.scale(&inv(n + 1)))
            .sub(&self.log_term(n, precision)?.scale(&(inv(n) * rat(2))));
        Ok(l.exp()?)
    }

    fn derived_once(&self, target: Target, n: i64, precision: u32) -> Result<Interval, SequenceError> {
        match target {
            Target::Raw => Ok(Interval::exact(self.term(n)?, precision)),
            Target::Root => {
                let r = self.nth_root(n, precision)?;
                Ok(r.scale(&Rational::new(BigInt::one(), factorial(n)?)))
            }
            Target::Ratio => {
                let num = self.nth_root(n + 1, precision)?;
                if num.is_degenerate() && num.lo().is_zero() {
                    return Ok(num);
                }
                let den = self.nth_root(n, precision)?;
                if den.contains_zero() {
                    return Err(SequenceError::ZeroTerm { index: n });
                }
                Ok(num.div(&den)?.scale(&Rational::new(BigInt::one(), factorial(n)?)))
            }
        }
    }

    /// Enclosure of the derived term, intersected over the precision chain
    /// `p, p/2, ...` so that doubling the precision never widens it.
    pub fn derived_term(&self, target: Target, n: i64, precision: u32) -> Result<Interval, SequenceError> {
        let precision = precision.max(MIN_PRECISION);
        let mut iv = self.derived_once(target, n, precision)?;
        let mut p = precision / 2;
        while !iv.is_degenerate() && p >= MIN_PRECISION {
            let coarse = self.derived_once(target, n, p)?;
            iv = iv.intersect(&coarse).expect("enclosures of one value overlap");
            p /= 2;
        }
        Ok(iv.with_precision(precision))
    }
}

fn factorial(n: i64) -> Result<BigInt, SequenceError> {
    if n < 0 {
        return Err(SequenceError::OutOfRange { index: n });
    }
    Ok((1..=n).fold(BigInt::one(), |acc, k| acc * k))
}

/// `q^(1/n)` when it is rational.
fn exact_root(q: &Rational, n: i64) -> Option<Rational> {
    if q.is_zero() || n == 1 {
        return Some(q.clone());
    }
    let n = u32::try_from(n).ok()?;
    let root = |x: &BigInt| -> Option<BigInt> {
        let r = x.nth_root(n);
        (num_traits::pow(r.clone(), n as usize) == *x).then_some(r)
    };
    Some(Rational::new(root(q.numer())?, root(q.denom())?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;
    use num_traits::ToPrimitive;

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_ints(c)
    }

    /// Baxter numbers in the base-`m` normalization used by the spec fixtures.
    fn baxter() -> PRecursiveSequence {
        // 8(m+1)m a_m + (7(m+1)^2 + 21(m+1) + 12) a_(m+1) - (m+4)(m+5) a_(m+2) = 0
        PRecursiveSequence::new(
            "baxter",
            vec![p(&[0, 8, 8]), p(&[40, 35, 7]), p(&[-20, -9, -1])],
            0,
            vec![rat(1), rat(1), rat(2), rat(6)],
            0,
        )
        .unwrap()
    }

    fn h() -> PRecursiveSequence {
        PRecursiveSequence::new(
            "h",
            vec![p(&[-2, -5, -4, -1]), p(&[-4, -6, -2]), p(&[2])],
            0,
            vec![rat(1), rat(0), rat(1), rat(6)],
            2,
        )
        .unwrap()
    }

    fn geometric(c: i64) -> PRecursiveSequence {
        PRecursiveSequence::new("geo", vec![p(&[-c]), p(&[1])], 0, vec![rat(1)], 0).unwrap()
    }

    #[test]
    fn baxter_terms() {
        let b = baxter();
        assert_eq!(b.term(4).unwrap(), rat(22));
        assert_eq!(b.term(5).unwrap(), rat(92));
        assert_eq!(b.term(0).unwrap(), rat(1));
        assert_eq!(b.ratio(3).unwrap(), ratio(11, 3));
        for n in 0..40 {
            assert!(b.residual(n).unwrap().is_zero());
        }
    }

    #[test]
    fn h_terms() {
        let s = h();
        assert_eq!(s.terms(0, 7).unwrap(), [1, 0, 1, 6, 90, 2040, 67950, 3110940].map(rat));
        assert_eq!(s.ratio(1), Err(SequenceError::ZeroTerm { index: 1 }));
    }

    #[test]
    fn inconsistent_initials_rejected() {
        let e = PRecursiveSequence::new(
            "h",
            vec![p(&[-2, -5, -4, -1]), p(&[-4, -6, -2]), p(&[2])],
            0,
            vec![rat(1), rat(0), rat(1), rat(7)],
            2,
        )
        .unwrap_err();
        assert_eq!(e, SequenceError::InconsistentInitial { index: 3 });
    }

    #[test]
    fn singular_point_is_named() {
        // (n - 3) a_(n+1) = a_n
        let s = PRecursiveSequence::new("s", vec![p(&[-1]), p(&[-3, 1])], 0, vec![rat(1)], 0).unwrap();
        assert!(s.term(3).is_ok());
        assert_eq!(s.term(4), Err(SequenceError::SingularPoint { index: 3 }));
    }

    #[test]
    fn constant_and_geometric_roots() {
        let one = geometric(1);
        let u = one.u_term(5, 64).unwrap();
        assert!(u.is_degenerate() && u.lo().is_one());
        assert_eq!(one.ratio(7).unwrap(), rat(1));
        let two = geometric(2);
        let u = two.u_term(5, 200).unwrap();
        assert!(u.contains(&rat(1)));
        assert!(u.width().to_f64().unwrap() < 1e-50);
        // a_n = 2: exponent 1/4 + 1/6 - 2/5 = 1/60
        let twos = PRecursiveSequence::new("two", vec![p(&[-1]), p(&[1])], 0, vec![rat(2)], 0).unwrap();
        let u = twos.u_term(5, 200).unwrap();
        let reference = 2f64.powf(1.0 / 60.0);
        assert!((u.mid_f64() - reference).abs() < 1e-15);
        assert!(u.lo() < u.hi());
        let r = two.derived_term(Target::Root, 9, 64).unwrap();
        assert!(r.is_degenerate());
        assert_eq!(r.lo(), &Rational::new(2.into(), factorial(9).unwrap()));
    }

    #[test]
    fn baxter_u_sandwich_at_14() {
        let b = baxter();
        let u = b.u_term(14, 256).unwrap();
        assert!(u.lo() > &(rat(1) - ratio(1, 196)));
        assert!(u.hi() < &(rat(1) - ratio(8, 2744)));
    }

    #[test]
    fn first_root_is_the_value() {
        let b = baxter();
        let x = b.derived_term(Target::Root, 1, 64).unwrap();
        assert!(x.is_degenerate() && x.lo().is_one());
        let x = h().derived_term(Target::Root, 1, 64).unwrap();
        assert!(x.is_degenerate() && x.lo().is_zero());
    }

    #[test]
    fn baxter_ratio_target_at_3() {
        let y = baxter().derived_term(Target::Ratio, 3, 200).unwrap();
        let reference = 22f64.powf(0.25) / (6f64.powf(1.0 / 3.0) * 6.0);
        assert!((y.mid_f64() - reference).abs() < 1e-15);
        assert!(y.width().to_f64().unwrap() < 1e-50);
    }

    #[test]
    fn refinement_nests() {
        let b = baxter();
        for n in [5, 17, 40] {
            let mut prev = b.derived_term(Target::Ratio, n, 16).unwrap();
            for p in [32, 64, 128, 256] {
                let next = b.derived_term(Target::Ratio, n, p).unwrap();
                assert!(prev.contains_interval(&next), "n={n} p={p}");
                prev = next;
            }
        }
    }

    #[test]
    fn negative_and_zero_terms() {
        let s = PRecursiveSequence::new("alt", vec![p(&[1]), p(&[1])], 0, vec![rat(1)], 0).unwrap();
        assert_eq!(s.log_term(1, 64), Err(SequenceError::NegativeTerm { index: 1 }));
        assert_eq!(h().log_term(1, 64), Err(SequenceError::ZeroTerm { index: 1 }));
    }
}
