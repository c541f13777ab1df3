//! Direct checks of log-concavity, the higher order Turán inequality and the
//! Laguerre inequalities on exact or interval-valued sequences.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::InequalityError;
use crate::exact::{rat, Rational, RationalFunction};
use crate::interval::{precision_schedule, Interval};
use crate::sequence::{PRecursiveSequence, Target};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    Holds,
    HoldsWithEquality,
    Fails,
    Undecided,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Holds => "holds",
            Status::HoldsWithEquality => "holds_with_equality",
            Status::Fails => "fails",
            Status::Undecided => "undecided",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "holds" => Some(Status::Holds),
            "holds_with_equality" => Some(Status::HoldsWithEquality),
            "fails" => Some(Status::Fails),
            "undecided" => Some(Status::Undecided),
            _ => None,
        }
    }

    pub fn is_holding(self) -> bool {
        matches!(self, Status::Holds | Status::HoldsWithEquality)
    }

    fn of(margin: &Interval) -> Self {
        match margin.sign() {
            Some(Ordering::Greater) => Status::Holds,
            Some(Ordering::Less) => Status::Fails,
            _ if margin.is_degenerate() && margin.lo().is_zero() => Status::HoldsWithEquality,
            _ => Status::Undecided,
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub index: i64,
    pub status: Status,
    /// Enclosure of the left-hand side.
    pub margin: Interval,
    pub precision: u32,
}

impl CheckOutcome {
    fn new(index: i64, margin: Interval) -> Self {
        CheckOutcome {
            index,
            status: Status::of(&margin),
            precision: margin.precision(),
            margin,
        }
    }
}

/// Ring operations shared by exact and interval values.
pub trait Scalar: Clone {
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn scale(&self, k: &Rational) -> Self;
    fn into_margin(self) -> Interval;
}

/// Nominal precision attached to exact margins.
const EXACT_PRECISION: u32 = 64;

impl Scalar for Rational {
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn scale(&self, k: &Rational) -> Self {
        self * k
    }
    fn into_margin(self) -> Interval {
        Interval::exact(self, EXACT_PRECISION)
    }
}

impl Scalar for Interval {
    fn add(&self, o: &Self) -> Self {
        Interval::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        Interval::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        Interval::mul(self, o)
    }
    fn scale(&self, k: &Rational) -> Self {
        Interval::scale(self, k)
    }
    fn into_margin(self) -> Interval {
        self
    }
}

/// Values `v_start, v_(start+1), ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexedValues<T> {
    pub start: i64,
    pub values: Vec<T>,
}

impl<T> IndexedValues<T> {
    pub fn new(start: i64, values: Vec<T>) -> Self {
        IndexedValues { start, values }
    }

    pub fn get(&self, n: i64) -> Result<&T, InequalityError> {
        n.checked_sub(self.start)
            .and_then(|k| usize::try_from(k).ok())
            .and_then(|k| self.values.get(k))
            .ok_or(InequalityError::MissingIndex { index: n })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Property {
    LogConcave,
    HigherTuran,
    Laguerre(u32),
}

impl Property {
    /// `log-concave`, `hot` (or `higher_turan`), or `laguerre<m>`.
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "log-concave" => Some(Property::LogConcave),
            "hot" | "higher_turan" => Some(Property::HigherTuran),
            _ => {
                let m: u32 = s.strip_prefix("laguerre")?.parse().ok()?;
                (m >= 1).then_some(Property::Laguerre(m))
            }
        }
    }

    /// Inclusive index window the check at `n` reads.
    pub fn window(self, n: i64) -> (i64, i64) {
        match self {
            Property::LogConcave => (n - 1, n + 1),
            Property::HigherTuran => (n - 1, n + 2),
            Property::Laguerre(m) => (n, n + 2 * m as i64),
        }
    }

    pub fn evaluate<T: Scalar>(self, v: &IndexedValues<T>, n: i64) -> Result<CheckOutcome, InequalityError> {
        match self {
            Property::LogConcave => check_log_concave(v, n),
            Property::HigherTuran => check_higher_turan(v, n),
            Property::Laguerre(m) => check_laguerre(v, m, n),
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Property::LogConcave => f.write_str("log-concave"),
            Property::HigherTuran => f.write_str("higher_turan"),
            Property::Laguerre(m) => write!(f, "laguerre{m}"),
        }
    }
}

fn gap<T: Scalar>(a: &T, b: &T, c: &T) -> T {
    b.mul(b).sub(&a.mul(c))
}

/// `a_n^2 - a_(n-1) a_(n+1)`.
pub fn check_log_concave<T: Scalar>(v: &IndexedValues<T>, n: i64) -> Result<CheckOutcome, InequalityError> {
    let m = gap(v.get(n - 1)?, v.get(n)?, v.get(n + 1)?);
    Ok(CheckOutcome::new(n, m.into_margin()))
}

/// `4(a_n^2 - a_(n-1)a_(n+1))(a_(n+1)^2 - a_n a_(n+2)) - (a_n a_(n+1) - a_(n-1)a_(n+2))^2`.
pub fn check_higher_turan<T: Scalar>(v: &IndexedValues<T>, n: i64) -> Result<CheckOutcome, InequalityError> {
    let (a0, a1, a2, a3) = (v.get(n - 1)?, v.get(n)?, v.get(n + 1)?, v.get(n + 2)?);
    let cross = a1.mul(a2).sub(&a0.mul(a3));
    let m = gap(a0, a1, a2)
        .mul(&gap(a1, a2, a3))
        .scale(&rat(4))
        .sub(&cross.mul(&cross));
    Ok(CheckOutcome::new(n, m.into_margin()))
}

fn binomial(n: u32, k: u32) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// `L_m = 1/2 sum_k (-1)^(k+m) C(2m,k) a_(n+k) a_(n+2m-k)`.
pub fn laguerre_sum<T: Scalar>(v: &IndexedValues<T>, m: u32, n: i64) -> Result<T, InequalityError> {
    if m == 0 {
        return Err(InequalityError::InvalidOrder(m));
    }
    let mut acc: Option<T> = None;
    for k in 0..=2 * m {
        let mut c = Rational::from(binomial(2 * m, k));
        if (k + m) % 2 == 1 {
            c = -c;
        }
        let term = v
            .get(n + k as i64)?
            .mul(v.get(n + (2 * m - k) as i64)?)
            .scale(&c);
        acc = Some(match acc {
            Some(a) => a.add(&term),
            None => term,
        });
    }
    Ok(acc.expect("at least one summand").scale(&Rational::new(1.into(), 2.into())))
}

/// Laguerre inequality of order `m`; order two uses
/// `a_n a_(n+4) - 4 a_(n+1) a_(n+3) + 3 a_(n+2)^2`.
pub fn check_laguerre<T: Scalar>(v: &IndexedValues<T>, m: u32, n: i64) -> Result<CheckOutcome, InequalityError> {
    let value = if m == 2 {
        let a = |k: i64| v.get(n + k);
        a(0)?
            .mul(a(4)?)
            .sub(&a(1)?.mul(a(3)?).scale(&rat(4)))
            .add(&a(2)?.mul(a(2)?).scale(&rat(3)))
    } else {
        laguerre_sum(v, m, n)?
    };
    Ok(CheckOutcome::new(n, value.into_margin()))
}

/// `t(x, y) = 4(1 - x)(1 - y) - (1 - xy)^2`.
pub fn turan_quartic(x: &RationalFunction, y: &RationalFunction) -> RationalFunction {
    let one = RationalFunction::one();
    let a = &one - x;
    let b = &one - y;
    let c = &one - &(x * y);
    &(&(&a * &b) * &RationalFunction::int(4)) - &(&c * &c)
}

/// Checks `property` at `n` on the chosen derived sequence. Exact for the raw
/// target; otherwise retries at doubling precision up to `cap` bits.
pub fn check_sequence(
    seq: &PRecursiveSequence,
    target: Target,
    property: Property,
    n: i64,
    cap: u32,
) -> Result<CheckOutcome, InequalityError> {
    let (lo, hi) = property.window(n);
    if target == Target::Raw {
        let v = IndexedValues::new(lo, seq.terms(lo, hi)?);
        return property.evaluate(&v, n);
    }
    let mut last = None;
    for p in precision_schedule(cap) {
        let values = (lo..=hi)
            .map(|k| seq.derived_term(target, k, p))
            .collect::<Result<Vec<_>, _>>()?;
        let mut out = property.evaluate(&IndexedValues::new(lo, values), n)?;
        out.precision = p;
        if out.status != Status::Undecided {
            return Ok(out);
        }
        last = Some(out);
    }
    Ok(last.expect("schedule is nonempty"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{ratfunc_simplify, ratio, Polynomial};

    fn exact(start: i64, v: &[i64]) -> IndexedValues<Rational> {
        IndexedValues::new(start, v.iter().map(|&x| rat(x)).collect())
    }

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_ints(c)
    }

    fn rf(n: &[i64], d: &[i64]) -> RationalFunction {
        ratfunc_simplify(p(n), p(d)).unwrap()
    }

    #[test]
    fn log_concave_examples() {
        let c = check_log_concave(&exact(0, &[1, 1, 1]), 1).unwrap();
        assert_eq!(c.status, Status::HoldsWithEquality);
        let c = check_log_concave(&exact(0, &[1, 2, 5]), 1).unwrap();
        assert_eq!(c.status, Status::Fails);
        assert_eq!(c.margin.lo(), &rat(-1));
        // Baxter B_2, B_3, B_4
        let c = check_log_concave(&exact(2, &[2, 6, 22]), 3).unwrap();
        assert_eq!(c.status, Status::Fails);
        assert_eq!(c.margin.lo(), &rat(-8));
        assert_eq!(
            check_log_concave(&exact(0, &[1, 1]), 1),
            Err(InequalityError::MissingIndex { index: 2 })
        );
    }

    #[test]
    fn higher_turan_equality_cases() {
        assert_eq!(
            check_higher_turan(&exact(0, &[1, 1, 1, 1]), 1).unwrap().status,
            Status::HoldsWithEquality
        );
        assert_eq!(
            check_higher_turan(&exact(0, &[1, 2, 4, 8, 16]), 2).unwrap().status,
            Status::HoldsWithEquality
        );
    }

    #[test]
    fn laguerre_examples() {
        let c = check_laguerre(&exact(0, &[1; 5]), 2, 0).unwrap();
        assert_eq!(c.status, Status::HoldsWithEquality);
        let fact: Vec<i64> = (0..12).scan(1i64, |f, k| {
            let v = *f;
            *f *= k + 1;
            Some(v)
        }).collect();
        let v = exact(0, &fact);
        for n in 0..10 {
            let c = check_laguerre(&v, 1, n).unwrap();
            assert_eq!(c.status, Status::Fails);
            // -(n+1) n!^2
            assert_eq!(c.margin.lo(), &rat(-(n + 1) * fact[n as usize] * fact[n as usize]));
        }
    }

    #[test]
    fn expanded_order_two_matches_sum() {
        let v = exact(0, &[3, 1, 4, 1, 5, 9, 2, 6, 5, 3]);
        for n in 0..5 {
            let expanded = check_laguerre(&v, 2, n).unwrap().margin;
            let summed = laguerre_sum(&v, 2, n).unwrap();
            assert_eq!(expanded.lo(), &summed);
        }
        assert_eq!(laguerre_sum(&v, 0, 0), Err(InequalityError::InvalidOrder(0)));
    }

    #[test]
    fn quartic_examples() {
        let z = RationalFunction::zero();
        assert_eq!(turan_quartic(&z, &z), RationalFunction::int(3));
        let one = RationalFunction::one();
        assert!(turan_quartic(&one, &one).is_zero());
        // p_n = (n/(n+1)) (1 - 1/n^2) = (n - 1)/n
        let pn = rf(&[-1, 1], &[0, 1]);
        let t = turan_quartic(&pn, &pn.shift(1));
        assert_eq!(t, rf(&[4], &[0, 1, 2, 1]));
        assert_eq!(turan_quartic(&pn, &rf(&[1], &[2])), turan_quartic(&rf(&[1], &[2]), &pn));
    }

    #[test]
    fn interval_inputs_grade_outcomes() {
        let third = Interval::exact(ratio(1, 3), 64);
        let v = IndexedValues::new(0, vec![third.clone(), third.clone(), third]);
        assert_eq!(check_log_concave(&v, 1).unwrap().status, Status::HoldsWithEquality);
        let fuzzy = Interval::new(rat(0), rat(1), 64).unwrap();
        let v = IndexedValues::new(0, vec![fuzzy.clone(), fuzzy.clone(), fuzzy]);
        assert_eq!(check_log_concave(&v, 1).unwrap().status, Status::Undecided);
    }
}
