//! Outward-rounded interval arithmetic with rational endpoints, including
//! enclosures of `ln` and `exp`.

use std::cmp::Ordering;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::IntervalError;
use crate::exact::{rat, ratio, Rational};

/// Smallest working precision; below this, refinement chains are not nested.
pub const MIN_PRECISION: u32 = 8;

/// Default cap for adaptive sign decisions.
pub const DEFAULT_PRECISION_CAP: u32 = 4096;

fn pow2(e: u64) -> BigInt {
    BigInt::one() << e
}

/// Round `q` to about `prec` significant bits in the given direction. Values
/// whose exact representation is already short are returned unchanged.
fn round_dir(q: &Rational, prec: u32, up: bool) -> Rational {
    let nb = q.numer().bits() as i64;
    let db = q.denom().bits() as i64;
    if nb + db <= 2 * prec as i64 + 64 {
        return q.clone();
    }
    let s = prec as i64 + 2 - (nb - db);
    let scaled = if s >= 0 {
        Rational::new(q.numer() << s as u64, q.denom().clone())
    } else {
        Rational::new(q.numer().clone(), q.denom() << (-s) as u64)
    };
    let m = if up {
        scaled.ceil().to_integer()
    } else {
        scaled.floor().to_integer()
    };
    if s >= 0 {
        Rational::new(m, pow2(s as u64))
    } else {
        Rational::from_integer(m << (-s) as u64)
    }
}

pub(crate) fn round_down(q: &Rational, prec: u32) -> Rational {
    round_dir(q, prec, false)
}

pub(crate) fn round_up(q: &Rational, prec: u32) -> Rational {
    round_dir(q, prec, true)
}

/// Closed interval `[lo, hi]` with rational endpoints.
#[derive(Clone, PartialEq, Eq)]
pub struct Interval {
    lo: Rational,
    hi: Rational,
    prec: u32,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational, prec: u32) -> Result<Self, IntervalError> {
        if lo > hi {
            return Err(IntervalError::Inverted);
        }
        let prec = prec.max(MIN_PRECISION);
        Ok(Interval {
            lo: round_down(&lo, prec),
            hi: round_up(&hi, prec),
            prec,
        })
    }

    /// Degenerate interval holding `q` exactly.
    pub fn exact(q: Rational, prec: u32) -> Self {
        Interval {
            lo: q.clone(),
            hi: q,
            prec: prec.max(MIN_PRECISION),
        }
    }

    pub fn from_int(k: i64, prec: u32) -> Self {
        Self::exact(rat(k), prec)
    }

    fn rounded(lo: Rational, hi: Rational, prec: u32) -> Self {
        debug_assert!(lo <= hi);
        Interval {
            lo: round_down(&lo, prec),
            hi: round_up(&hi, prec),
            prec,
        }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    pub fn with_precision(mut self, prec: u32) -> Self {
        self.prec = prec.max(MIN_PRECISION);
        self
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn mid(&self) -> Rational {
        (&self.lo + &self.hi) / rat(2)
    }

    pub fn mid_f64(&self) -> f64 {
        self.mid().to_f64().unwrap_or(f64::NAN)
    }

    pub fn is_degenerate(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, q: &Rational) -> bool {
        &self.lo <= q && q <= &self.hi
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn overlaps(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.hi.is_negative()
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    /// Certified sign, or `None` when the interval straddles zero without
    /// being exactly zero.
    pub fn sign(&self) -> Option<Ordering> {
        if self.is_positive() {
            Some(Ordering::Greater)
        } else if self.is_negative() {
            Some(Ordering::Less)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = (&self.lo).max(&other.lo).clone();
        let hi = (&self.hi).min(&other.hi).clone();
        (lo <= hi).then(|| Interval {
            lo,
            hi,
            prec: self.prec.max(other.prec),
        })
    }

    /// Smallest interval containing both.
    pub fn hull(&self, other: &Interval) -> Interval {
        Interval {
            lo: (&self.lo).min(&other.lo).clone(),
            hi: (&self.hi).max(&other.hi).clone(),
            prec: self.prec.max(other.prec),
        }
    }

    pub fn neg(&self) -> Interval {
        Interval {
            lo: -&self.hi,
            hi: -&self.lo,
            prec: self.prec,
        }
    }

    pub fn add(&self, o: &Interval) -> Interval {
        Self::rounded(&self.lo + &o.lo, &self.hi + &o.hi, self.prec.max(o.prec))
    }

    pub fn sub(&self, o: &Interval) -> Interval {
        Self::rounded(&self.lo - &o.hi, &self.hi - &o.lo, self.prec.max(o.prec))
    }

    pub fn mul(&self, o: &Interval) -> Interval {
        let prec = self.prec.max(o.prec);
        if self.is_degenerate() && o.is_degenerate() {
            let v = &self.lo * &o.lo;
            return Self::rounded(v.clone(), v, prec);
        }
        let c = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        Self::rounded(lo, hi, prec)
    }

    pub fn square(&self) -> Interval {
        let a = &self.lo * &self.lo;
        let b = &self.hi * &self.hi;
        let (lo, hi) = if self.contains_zero() {
            (Rational::zero(), a.max(b))
        } else if a < b {
            (a, b)
        } else {
            (b, a)
        };
        Self::rounded(lo, hi, self.prec)
    }

    pub fn scale(&self, k: &Rational) -> Interval {
        let (a, b) = (&self.lo * k, &self.hi * k);
        if k.is_negative() {
            Self::rounded(b, a, self.prec)
        } else {
            Self::rounded(a, b, self.prec)
        }
    }

    pub fn recip(&self) -> Result<Interval, IntervalError> {
        if self.contains_zero() {
            return Err(IntervalError::DivisionByZero);
        }
        Ok(Self::rounded(self.hi.recip(), self.lo.recip(), self.prec))
    }

    pub fn div(&self, o: &Interval) -> Result<Interval, IntervalError> {
        if o.is_degenerate() {
            if o.lo.is_zero() {
                return Err(IntervalError::DivisionByZero);
            }
            return Ok(self.scale(&o.lo.recip()));
        }
        Ok(self.mul(&o.recip()?))
    }

    pub fn powi(&self, k: u32) -> Interval {
        let mut out = Interval::exact(Rational::one(), self.prec);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Enclosure of the natural logarithm.
    pub fn ln(&self) -> Result<Interval, IntervalError> {
        if !self.lo.is_positive() {
            return Err(IntervalError::NonPositiveLog);
        }
        let (lo, _) = ln_point(&self.lo, self.prec);
        let hi = ln_point(&self.hi, self.prec).1;
        Ok(Self::rounded(lo, hi, self.prec))
    }

    /// Enclosure of the exponential.
    pub fn exp(&self) -> Result<Interval, IntervalError> {
        let lo = exp_point(&self.lo, self.prec)?.0;
        let hi = exp_point(&self.hi, self.prec)?.1;
        Ok(Self::rounded(lo, hi, self.prec))
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lo = self.lo.to_f64().unwrap_or(f64::NAN);
        let hi = self.hi.to_f64().unwrap_or(f64::NAN);
        write!(f, "[{lo:.12e}, {hi:.12e}]")
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Interval[{}, {}; {} bits]", self.lo, self.hi, self.prec)
    }
}

/// Working precision used inside the transcendental kernels.
fn guard(prec: u32) -> u64 {
    prec as u64 + 40
}

/// Fixed-point enclosure of `atanh(a/b)` for `0 <= a/b <= 1/3`, scaled by
/// `2^w`: returns integers `(s, t)` with `s <= atanh(a/b) * 2^w <= t`.
fn atanh_fixed(a: &BigInt, b: &BigInt, w: u64) -> (BigInt, BigInt) {
    if a.is_zero() {
        return (BigInt::zero(), BigInt::zero());
    }
    let p0 = (a << w).div_floor(b);
    let z2 = ((a * a) << w).div_floor(&(b * b));
    let mut p = p0;
    let mut sum = BigInt::zero();
    let mut k: u64 = 0;
    // Each floor costs at most two ulps per term; the tail after p hits zero
    // is bounded by (2k + 2) / (1 - z^2) <= 2 (2k + 2) ulps.
    loop {
        sum += &p / BigInt::from(2 * k + 1);
        k += 1;
        if p.is_zero() {
            break;
        }
        p = (&p * &z2) >> w;
    }
    let slack = BigInt::from(6 * k + 6);
    (sum.clone(), sum + slack)
}

/// Enclosure of `ln 2` as fixed-point integers at `w` bits, cached at the
/// largest precision requested so far.
fn ln2_fixed(w: u64) -> (BigInt, BigInt) {
    static CACHE: OnceLock<Mutex<Option<(u64, BigInt, BigInt)>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(None));
    let mut guard = cache.lock().unwrap_or_else(|e| e.into_inner());
    let need = guard.as_ref().is_none_or(|(cw, _, _)| *cw < w);
    if need {
        let ww = w.max(256);
        let (s, t) = atanh_fixed(&BigInt::one(), &BigInt::from(3), ww);
        *guard = Some((ww, s << 1, t << 1));
    }
    let (cw, s, t) = guard.as_ref().unwrap();
    let drop = cw - w;
    let lo = s >> drop;
    let hi = -((-t) >> drop);
    (lo, hi)
}

/// Enclosure of `ln 2` as rationals at working precision `w`.
fn ln2(w: u64) -> (Rational, Rational) {
    let (s, t) = ln2_fixed(w);
    let d = pow2(w);
    (Rational::new(s, d.clone()), Rational::new(t, d))
}

/// `(lower, upper)` bounds of `ln x` for rational `x > 0`.
fn ln_point(x: &Rational, prec: u32) -> (Rational, Rational) {
    if x.is_one() {
        return (Rational::zero(), Rational::zero());
    }
    let w = guard(prec);
    // x = y * 2^e with y in [12/17, 17/12].
    let mut e = x.numer().bits() as i64 - x.denom().bits() as i64;
    let scale = |e: i64| -> Rational {
        if e >= 0 {
            Rational::new(x.numer().clone(), x.denom() << e as u64)
        } else {
            Rational::new(x.numer() << (-e) as u64, x.denom().clone())
        }
    };
    let mut y = scale(e);
    while y > ratio(17, 12) {
        e += 1;
        y = scale(e);
    }
    while y < ratio(12, 17) {
        e -= 1;
        y = scale(e);
    }
    let z = (&y - Rational::one()) / (&y + Rational::one());
    let (s, t) = atanh_fixed(&z.numer().abs(), z.denom(), w);
    let d = pow2(w);
    let (mut lo, mut hi) = (Rational::new(s << 1, d.clone()), Rational::new(t << 1, d));
    if z.is_negative() {
        (lo, hi) = (-hi, -lo);
    }
    if e != 0 {
        let (l2lo, l2hi) = ln2(w + 64);
        let er = rat(e);
        if e > 0 {
            lo += &er * l2lo;
            hi += &er * l2hi;
        } else {
            lo += &er * l2hi;
            hi += &er * l2lo;
        }
    }
    (round_down(&lo, prec + 16), round_up(&hi, prec + 16))
}

/// Number of argument halvings before the Taylor series.
const HALVINGS: u64 = 10;

fn ceil_shr(x: &BigInt, k: u64) -> BigInt {
    -((-x) >> k)
}

/// Fixed-point bounds on `exp(x / 2^w) * 2^w` for `0 <= x <= 2^(w-1)`: a
/// floor-rounded (`up = false`) or ceiling-rounded series.
fn exp_fixed_nonneg(x: &BigInt, w: u64, up: bool) -> BigInt {
    let one = BigInt::one() << w;
    let h = if up { ceil_shr(x, HALVINGS) } else { x >> HALVINGS };
    let mut term = one.clone();
    let mut sum = one;
    let mut j: u64 = 1;
    loop {
        let prod = &term * &h;
        term = if up {
            let t = ceil_shr(&prod, w);
            let (q, r) = t.div_rem(&BigInt::from(j));
            if r.is_zero() { q } else { q + 1 }
        } else {
            (prod >> w) / BigInt::from(j)
        };
        if up && term <= BigInt::one() {
            // The true tail from here on is at most twice this term.
            sum += 3;
            break;
        }
        if term.is_zero() {
            break;
        }
        sum += &term;
        j += 1;
    }
    for _ in 0..HALVINGS {
        let sq = &sum * &sum;
        sum = if up { ceil_shr(&sq, w) } else { sq >> w };
    }
    sum
}

/// Bound on `exp(x / 2^w) * 2^w` for an integer `x` with `|x| <= 2^(w-1)`.
fn exp_fixed(x: &BigInt, w: u64, up: bool) -> BigInt {
    if !x.is_negative() {
        return exp_fixed_nonneg(x, w, up);
    }
    let d = exp_fixed_nonneg(&-x, w, !up);
    let num = BigInt::one() << (2 * w);
    if up {
        let (q, r) = num.div_rem(&d);
        if r.is_zero() {
            q
        } else {
            q + 1
        }
    } else {
        num / d
    }
}

/// `(lower, upper)` bounds of `exp t` for rational `t`.
fn exp_point(t: &Rational, prec: u32) -> Result<(Rational, Rational), IntervalError> {
    if t.is_zero() {
        return Ok((Rational::one(), Rational::one()));
    }
    let tf = t.to_f64().ok_or(IntervalError::Overflow)?;
    if !tf.is_finite() || tf.abs() > 1e12 {
        return Err(IntervalError::Overflow);
    }
    let k = (tf / std::f64::consts::LN_2).round() as i64;
    let w = guard(prec) + (k.unsigned_abs().max(1).ilog2() as u64) + HALVINGS * 2;
    let (l2lo, l2hi) = ln2(w + 64);
    let kr = rat(k);
    let (r_lo, r_hi) = if k >= 0 {
        (t - &kr * &l2hi, t - &kr * &l2lo)
    } else {
        (t - &kr * &l2lo, t - &kr * &l2hi)
    };
    let scale = Rational::from_integer(pow2(w));
    let a = (&r_lo * &scale).floor().to_integer();
    let b = (&r_hi * &scale).ceil().to_integer();
    let lo = exp_fixed(&a, w, false);
    let hi = exp_fixed(&b, w, true);
    let shift = w as i64 - k;
    let as_rational = |m: BigInt| {
        if shift >= 0 {
            Rational::new(m, pow2(shift as u64))
        } else {
            Rational::from_integer(m << (-shift) as u64)
        }
    };
    let (lo, hi) = (as_rational(lo), as_rational(hi));
    Ok((round_down(&lo, prec + 16), round_up(&hi, prec + 16)))
}

/// Result of an adaptive-precision sign decision.
#[derive(Clone, Debug)]
pub struct SignDecision {
    pub sign: Option<Ordering>,
    pub interval: Interval,
    pub precision: u32,
}

/// Precision schedule for adaptive evaluation: `min(64, cap)` doubling up to
/// `cap`.
pub fn precision_schedule(cap: u32) -> Vec<u32> {
    let cap = cap.max(MIN_PRECISION);
    let mut p = cap.min(64);
    let mut out = vec![p];
    while p < cap {
        p = (p * 2).min(cap);
        out.push(p);
    }
    out
}

/// Evaluate at doubling precision until the sign is certified or the cap is
/// reached. A degenerate zero counts as decided.
pub fn decide_sign<E>(
    cap: u32,
    mut eval: impl FnMut(u32) -> Result<Interval, E>,
) -> Result<SignDecision, E> {
    let mut last = None;
    for p in precision_schedule(cap) {
        let iv = eval(p)?;
        if let Some(s) = iv.sign() {
            return Ok(SignDecision {
                sign: Some(s),
                interval: iv,
                precision: p,
            });
        }
        last = Some((iv, p));
    }
    let (interval, precision) = last.expect("schedule is nonempty");
    Ok(SignDecision {
        sign: None,
        interval,
        precision,
    })
}
