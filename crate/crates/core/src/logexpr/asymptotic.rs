//! Limits at `+inf` by formal expansion in `x = 1/n`.
//!
//! Every rational function is `c * n^d * U(x)` with `U(0) = 1`, so
//! `log R = log c + d log n + log U(x)` where `log U` is a power series.
//! The expression becomes `A(n) log n + B(n)` with Laurent coefficients;
//! constants `log c` are written over a pairwise coprime integer basis so
//! that exact zero tests are possible.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::LogExpr;
use crate::exact::{rat, Rational, RationalFunction};
use crate::interval::{decide_sign, Interval};

/// `r + sum q_b * log(b)` with pairwise coprime integer bases `b > 1`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct LogConstant {
    pub rational: Rational,
    pub logs: Vec<(BigInt, Rational)>,
}

/// Precision ceiling for deciding the sign of a nonzero log constant.
const CONSTANT_SIGN_CAP: u32 = 1 << 16;

impl LogConstant {
    pub fn from_rational(r: Rational) -> Self {
        LogConstant {
            rational: r,
            logs: Vec::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.logs.is_empty()
    }

    pub fn rational_value(&self) -> Option<&Rational> {
        self.logs.is_empty().then_some(&self.rational)
    }

    pub fn eval_interval(&self, precision: u32) -> Interval {
        let mut acc = Interval::exact(self.rational.clone(), precision);
        for (b, q) in &self.logs {
            let l = Interval::exact(Rational::from_integer(b.clone()), precision)
                .ln()
                .expect("basis elements exceed 1");
            acc = acc.add(&l.scale(q));
        }
        acc
    }

    /// Exact sign. Nonzero constants are never zero in value because logs of
    /// coprime integers are independent over the rationals together with 1.
    pub fn sign(&self) -> Ordering {
        if let Some(r) = self.rational_value() {
            return r.cmp(&Rational::zero());
        }
        let d = decide_sign::<()>(CONSTANT_SIGN_CAP, |p| Ok(self.eval_interval(p)))
            .expect("infallible evaluation");
        d.sign.expect("nonzero log constant has a decidable sign")
    }
}

impl fmt::Display for LogConstant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.rational.is_zero() || self.logs.is_empty() {
            parts.push(self.rational.to_string());
        }
        for (b, q) in &self.logs {
            if q.is_one() {
                parts.push(format!("log({b})"));
            } else {
                parts.push(format!("{q}*log({b})"));
            }
        }
        write!(f, "{}", parts.join(" + ").replace("+ -", "- "))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LimitKind {
    PlusInfinity,
    MinusInfinity,
    Finite,
}

impl LimitKind {
    pub fn as_str(self) -> &'static str {
        match self {
            LimitKind::PlusInfinity => "plus_infinity",
            LimitKind::MinusInfinity => "minus_infinity",
            LimitKind::Finite => "finite",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "plus_infinity" => Some(LimitKind::PlusInfinity),
            "minus_infinity" => Some(LimitKind::MinusInfinity),
            "finite" => Some(LimitKind::Finite),
            _ => None,
        }
    }
}

/// Dominant term `coeff * n^power * log(n)^log_power`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeadingTerm {
    pub power: i64,
    pub log_power: u32,
    pub coeff: LogConstant,
    pub sign: Ordering,
}

impl fmt::Display for LeadingTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.coeff.to_string();
        let c = if self.coeff.logs.is_empty() && !c.contains('/') {
            c
        } else {
            format!("({c})")
        };
        write!(f, "{c}")?;
        match self.power {
            0 => {}
            1 => write!(f, "*n")?,
            p => write!(f, "*n^{p}")?,
        }
        if self.log_power == 1 {
            write!(f, "*log(n)")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AsymptoticClass {
    pub kind: LimitKind,
    /// The exact limit when finite.
    pub value: Option<LogConstant>,
    /// `None` when the expansion vanished to the maximal truncation order.
    pub leading: Option<LeadingTerm>,
}

impl AsymptoticClass {
    /// Sign of the limit: `Greater` for `+inf` or a positive finite value.
    pub fn limit_sign(&self) -> Ordering {
        match self.kind {
            LimitKind::PlusInfinity => Ordering::Greater,
            LimitKind::MinusInfinity => Ordering::Less,
            LimitKind::Finite => self.value.as_ref().map_or(Ordering::Equal, |v| v.sign()),
        }
    }
}

impl fmt::Display for AsymptoticClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.kind, &self.value) {
            (LimitKind::Finite, Some(v)) => write!(f, "finite {v}")?,
            (k, _) => write!(f, "{}", k.as_str())?,
        }
        if let Some(l) = &self.leading {
            write!(f, " (leading term {l})")?;
        }
        Ok(())
    }
}

/// Truncated power series in `x`; coefficients known exactly below `len`.
type Series = Vec<Rational>;

fn series_div(a: &Series, b: &Series, len: usize) -> Series {
    if len == 0 {
        return Vec::new();
    }
    let b0 = b[0].clone();
    let mut out: Series = Vec::with_capacity(len);
    for k in 0..len {
        let mut acc = a.get(k).cloned().unwrap_or_else(Rational::zero);
        for j in 1..=k.min(b.len().saturating_sub(1)) {
            acc -= &b[j] * &out[k - j];
        }
        out.push(acc / &b0);
    }
    out
}

/// `log U` for `U(0) = 1`, as `integral(U' / U)`.
fn series_log(u: &Series, len: usize) -> Series {
    if len == 0 {
        return Vec::new();
    }
    let du: Series = (1..len)
        .map(|i| u.get(i).cloned().unwrap_or_else(Rational::zero) * rat(i as i64))
        .collect();
    let q = series_div(&du, u, len.saturating_sub(1));
    let mut out = vec![Rational::zero()];
    for (i, c) in q.into_iter().enumerate() {
        out.push(c / rat(i as i64 + 1));
    }
    out
}

/// `R = lead * n^order * U(1/n)` with `U(0) = 1`, `U` to `len` terms.
struct Expansion {
    order: i64,
    lead: Rational,
    unit: Series,
}

fn expand(r: &RationalFunction, len: usize) -> Expansion {
    let num = r.num().coeffs();
    let den = r.den().coeffs();
    let (ln, ld) = (num.last().unwrap().clone(), den.last().unwrap().clone());
    let rev = |c: &[Rational], lc: &Rational| -> Series {
        (0..len)
            .map(|j| {
                if j < c.len() {
                    &c[c.len() - 1 - j] / lc
                } else {
                    Rational::zero()
                }
            })
            .collect()
    };
    let unit = series_div(&rev(num, &ln), &rev(den, &ld), len);
    Expansion {
        order: num.len() as i64 - den.len() as i64,
        lead: ln / ld,
        unit,
    }
}

/// Laurent series `sum c_i x^(val + i)`, known for exponents below `val + len`.
#[derive(Clone)]
struct Laurent {
    val: i64,
    coeffs: Series,
}

impl Laurent {
    /// Expansion of `r` known up to (excluding) exponent `end` of `x`.
    fn of(r: &RationalFunction, end: i64) -> Laurent {
        if r.is_zero() {
            return Laurent {
                val: end,
                coeffs: Vec::new(),
            };
        }
        let val = -(r.num().coeffs().len() as i64 - r.den().coeffs().len() as i64);
        let len = (end - val).max(0) as usize;
        let e = expand(r, len);
        Laurent {
            val,
            coeffs: e.unit.into_iter().map(|c| c * &e.lead).collect(),
        }
    }

    fn get(&self, exp: i64) -> Rational {
        let i = exp - self.val;
        if i < 0 {
            return Rational::zero();
        }
        self.coeffs
            .get(i as usize)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }
}

/// Accumulator of coefficients per exponent of `x` over `[lo, end)`.
struct Collector {
    lo: i64,
    end: i64,
    coeffs: Vec<Rational>,
}

impl Collector {
    fn new(lo: i64, end: i64) -> Self {
        Collector {
            lo,
            end,
            coeffs: vec![Rational::zero(); (end - lo).max(0) as usize],
        }
    }

    fn add(&mut self, l: &Laurent, scale: &Rational) {
        if scale.is_zero() {
            return;
        }
        for exp in self.lo.max(l.val)..self.end {
            let c = l.get(exp);
            if !c.is_zero() {
                self.coeffs[(exp - self.lo) as usize] += c * scale;
            }
        }
    }

    fn add_product(&mut self, p: &Laurent, s: &Series) {
        // p * s where s is an ordinary power series (valuation >= 0).
        for (i, pc) in p.coeffs.iter().enumerate() {
            if pc.is_zero() {
                continue;
            }
            let pe = p.val + i as i64;
            for (j, sc) in s.iter().enumerate() {
                let exp = pe + j as i64;
                if exp >= self.end {
                    break;
                }
                if exp >= self.lo && !sc.is_zero() {
                    self.coeffs[(exp - self.lo) as usize] += pc * sc;
                }
            }
        }
    }

    fn get(&self, exp: i64) -> &Rational {
        &self.coeffs[(exp - self.lo) as usize]
    }
}

/// Pairwise coprime basis whose products reproduce every input.
fn coprime_basis(inputs: &[BigInt]) -> Vec<BigInt> {
    let mut basis: Vec<BigInt> = Vec::new();
    let mut work: Vec<BigInt> = inputs
        .iter()
        .filter(|x| **x > BigInt::one())
        .cloned()
        .collect();
    while let Some(a) = work.pop() {
        if a.is_one() {
            continue;
        }
        match basis.iter().position(|b| !a.gcd(b).is_one()) {
            None => basis.push(a),
            Some(i) => {
                let b = basis.swap_remove(i);
                let g = a.gcd(&b);
                if a == b {
                    basis.push(a);
                    continue;
                }
                work.push(&a / &g);
                work.push(&b / &g);
                work.push(g);
            }
        }
    }
    basis.sort();
    basis
}

fn valuation(mut x: BigInt, b: &BigInt) -> (i64, BigInt) {
    let mut v = 0;
    loop {
        let (q, r) = x.div_rem(b);
        if !r.is_zero() {
            return (v, x);
        }
        x = q;
        v += 1;
    }
}

/// Exponents of a positive rational over the basis.
fn log_coordinates(c: &Rational, basis: &[BigInt]) -> Vec<Rational> {
    let mut num = c.numer().clone();
    let mut den = c.denom().clone();
    let mut out = Vec::with_capacity(basis.len());
    for b in basis {
        let (vn, rn) = valuation(num, b);
        let (vd, rd) = valuation(den, b);
        num = rn;
        den = rd;
        out.push(rat(vn - vd));
    }
    debug_assert!(num.is_one() && den.is_one());
    out
}

/// Largest truncation depth (in powers of `1/n` below the constant term)
/// explored when looking for the leading term.
const MAX_DEPTH: i64 = 256;

/// Exact limit of `e(n)` as `n -> +inf`, with its dominant term.
pub fn limit_at_infinity(e: &LogExpr) -> AsymptoticClass {
    let mut constants = Vec::new();
    for t in e.log_terms() {
        let x = expand(&t.arg, 1);
        constants.push(x.lead.numer().clone());
        constants.push(x.lead.denom().clone());
    }
    let basis = coprime_basis(&constants);
    let mut coords: Vec<Vec<Rational>> = Vec::new();
    let mut orders = Vec::new();
    for t in e.log_terms() {
        let x = expand(&t.arg, 1);
        coords.push(log_coordinates(&x.lead, &basis));
        orders.push(x.order);
    }
    let mut lo = 0i64;
    for r in std::iter::once(e.rational_part()).chain(e.log_terms().iter().map(|t| &t.coeff)) {
        if let Some(k) = r.order_at_infinity() {
            lo = lo.min(-k);
        }
    }
    let mut end = 1i64;
    loop {
        let mut a = Collector::new(lo, end);
        let mut b_rat = Collector::new(lo, end);
        let mut b_log: Vec<Collector> = basis.iter().map(|_| Collector::new(lo, end)).collect();
        b_rat.add(&Laurent::of(e.rational_part(), end), &Rational::one());
        for (i, t) in e.log_terms().iter().enumerate() {
            let p = Laurent::of(&t.coeff, end);
            a.add(&p, &rat(orders[i]));
            for (k, q) in coords[i].iter().enumerate() {
                b_log[k].add(&p, q);
            }
            let need = (end - p.val).max(0) as usize;
            let unit = expand(&t.arg, need).unit;
            let lu = series_log(&unit, need);
            b_rat.add_product(&p, &lu);
        }
        for exp in lo..end {
            let ac = a.get(exp);
            let leading = if !ac.is_zero() {
                Some(LeadingTerm {
                    power: -exp,
                    log_power: 1,
                    coeff: LogConstant::from_rational(ac.clone()),
                    sign: ac.cmp(&Rational::zero()),
                })
            } else {
                let c = LogConstant {
                    rational: b_rat.get(exp).clone(),
                    logs: basis
                        .iter()
                        .zip(&b_log)
                        .filter(|(_, col)| !col.get(exp).is_zero())
                        .map(|(b, col)| (b.clone(), col.get(exp).clone()))
                        .collect(),
                };
                (!c.is_zero()).then(|| {
                    let sign = c.sign();
                    LeadingTerm {
                        power: -exp,
                        log_power: 0,
                        coeff: c,
                        sign,
                    }
                })
            };
            if let Some(l) = leading {
                return classify(l);
            }
        }
        if end > MAX_DEPTH {
            return AsymptoticClass {
                kind: LimitKind::Finite,
                value: Some(LogConstant::default()),
                leading: None,
            };
        }
        end = if end == 1 { 8 } else { end * 2 };
    }
}

fn classify(l: LeadingTerm) -> AsymptoticClass {
    let infinite = l.power > 0 || (l.power == 0 && l.log_power > 0);
    if infinite {
        let kind = if l.sign == Ordering::Greater {
            LimitKind::PlusInfinity
        } else {
            LimitKind::MinusInfinity
        };
        return AsymptoticClass {
            kind,
            value: None,
            leading: Some(l),
        };
    }
    let value = if l.power == 0 {
        l.coeff.clone()
    } else {
        LogConstant::default()
    };
    AsymptoticClass {
        kind: LimitKind::Finite,
        value: Some(value),
        leading: Some(l),
    }
}
