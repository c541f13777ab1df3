//! Exact arithmetic: rationals, dense univariate polynomials over Q in the
//! variable `n`, and canonical rational functions.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::ExactError;

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Dense polynomial; `coeffs[i]` multiplies `n^i`. The zero polynomial has no
/// coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn from_bigints(coeffs: &[BigInt]) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|c| Rational::from_integer(c.clone()))
                .collect(),
        )
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The variable `n`.
    pub fn var() -> Self {
        Self::from_ints(&[0, 1])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeffs.first().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_int(&self, x: i64) -> Rational {
        self.eval(&rat(x))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rat(i as i64))
                .collect(),
        )
    }

    pub fn scale(&self, k: &Rational) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// `p(n + c)`.
    pub fn shift(&self, c: &Rational) -> Self {
        let lin = Polynomial::new(vec![c.clone(), Rational::one()]);
        let mut acc = Self::zero();
        for coef in self.coeffs.iter().rev() {
            acc = &(&acc * &lin) + &Self::constant(coef.clone());
        }
        acc
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let lc = self.leading();
        self.scale(&lc.recip())
    }

    /// Euclidean division over Q.
    pub fn div_rem(&self, d: &Polynomial) -> Result<(Polynomial, Polynomial), ExactError> {
        let dd = d.degree().ok_or(ExactError::DivisionByZero)?;
        let mut rem = self.coeffs.clone();
        let lc = d.leading();
        if rem.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / &lc;
            if !c.is_zero() {
                for (i, dc) in d.coeffs.iter().enumerate() {
                    rem[k + i] -= &c * dc;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Exact quotient; errors if `d` does not divide `self`.
    pub fn exact_div(&self, d: &Polynomial) -> Result<Polynomial, ExactError> {
        let (q, r) = self.div_rem(d)?;
        if !r.is_zero() {
            return Err(ExactError::NotDivisible);
        }
        Ok(q)
    }

    /// Integer coefficient vector with coprime entries and the same sign as
    /// `self` (i.e. `self = k * result` with `k > 0`).
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        let ints = clear_denominators(&self.coeffs);
        primitive(ints)
    }

    pub fn squarefree(&self) -> Polynomial {
        match self.degree() {
            None | Some(0) => self.clone(),
            Some(_) => {
                let g = poly_gcd(self, &self.derivative()).expect("nonzero input");
                self.exact_div(&g).expect("gcd divides")
            }
        }
    }

    /// Total order used to sort log terms deterministically.
    pub(crate) fn cmp_key(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

/// Multiply through by the lcm of the denominators.
pub(crate) fn clear_denominators(coeffs: &[Rational]) -> Vec<BigInt> {
    let l = coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    coeffs
        .iter()
        .map(|c| c.numer() * (&l / c.denom()))
        .collect()
}

pub(crate) fn content(ints: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for c in ints {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Divide out the content; the leading coefficient keeps its sign.
pub(crate) fn primitive(ints: Vec<BigInt>) -> Vec<BigInt> {
    let g = content(&ints);
    if g.is_zero() || g.is_one() {
        return trim_int(ints);
    }
    trim_int(ints.into_iter().map(|c| c / &g).collect())
}

pub(crate) fn trim_int(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

/// Pseudo-remainder of `a` by `b` over Z, returned together with the number of
/// reduction steps (the remainder equals `lc(b)^steps * rem(a, b)`).
pub(crate) fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> (Vec<BigInt>, usize) {
    let db = b.len() - 1;
    let lcb = &b[db];
    let mut r = a.to_vec();
    let mut steps = 0;
    while r.len() > db {
        let k = r.len() - 1 - db;
        let lcr = r.last().unwrap().clone();
        for c in r.iter_mut() {
            *c *= lcb;
        }
        for (i, bc) in b.iter().enumerate() {
            r[k + i] -= &lcr * bc;
        }
        r = trim_int(r);
        steps += 1;
    }
    (r, steps)
}

/// Monic gcd over Q, computed with a primitive remainder sequence over Z.
pub fn poly_gcd(a: &Polynomial, b: &Polynomial) -> Result<Polynomial, ExactError> {
    if a.is_zero() && b.is_zero() {
        return Err(ExactError::BothZero);
    }
    if a.is_zero() {
        return Ok(b.monic());
    }
    if b.is_zero() {
        return Ok(a.monic());
    }
    if a.is_constant() || b.is_constant() {
        return Ok(Polynomial::one());
    }
    let (mut x, mut y) = (a.primitive_integer(), b.primitive_integer());
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        if y.len() == 1 {
            return Ok(Polynomial::one());
        }
        let (r, _) = pseudo_rem(&x, &y);
        x = y;
        y = primitive(r);
    }
    Ok(Polynomial::from_bigints(&x).monic())
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let mono = match i {
                0 => String::new(),
                1 => "n".to_string(),
                _ => format!("n^{i}"),
            };
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{mag}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = long.coeffs.clone();
        for (o, c) in out.iter_mut().zip(&short.coeffs) {
            *o += c;
        }
        Polynomial::new(out)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

macro_rules! forward_owned {
    ($t:ty, $tr:ident, $m:ident) => {
        impl $tr for $t {
            type Output = $t;
            fn $m(self, rhs: $t) -> $t {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Polynomial, Add, add);
forward_owned!(Polynomial, Sub, sub);
forward_owned!(Polynomial, Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

/// Quotient of polynomials in canonical form: coprime, integer coefficients
/// whose joint content is 1, and a denominator with positive leading
/// coefficient. Equal functions are therefore structurally equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self, ExactError> {
        ratfunc_simplify(num, den)
    }

    pub fn zero() -> Self {
        RationalFunction {
            num: Polynomial::zero(),
            den: Polynomial::one(),
        }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(Polynomial::constant(c))
    }

    pub fn int(c: i64) -> Self {
        Self::constant(rat(c))
    }

    pub fn var() -> Self {
        Self::from_poly(Polynomial::var())
    }

    pub fn from_poly(p: Polynomial) -> Self {
        ratfunc_simplify(p, Polynomial::one()).expect("nonzero denominator")
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    /// The value if this function is constant.
    pub fn as_constant(&self) -> Option<Rational> {
        self.is_constant()
            .then(|| self.num.constant_term() / self.den.constant_term())
    }

    /// The polynomial this function equals, if any.
    pub fn as_polynomial(&self) -> Option<Polynomial> {
        self.is_polynomial()
            .then(|| self.num.scale(&self.den.constant_term().recip()))
    }

    /// Sign of the function as `n -> +inf`.
    pub fn sign_at_infinity(&self) -> Ordering {
        self.num.leading().cmp(&Rational::zero())
    }

    /// `deg num - deg den`; `None` for zero.
    pub fn order_at_infinity(&self) -> Option<i64> {
        Some(self.num.degree()? as i64 - self.den.degree().unwrap() as i64)
    }

    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(x) / d)
    }

    pub fn eval_int(&self, x: i64) -> Option<Rational> {
        self.eval(&rat(x))
    }

    pub fn derivative(&self) -> Self {
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        let d = &self.den * &self.den;
        ratfunc_simplify(n, d).expect("nonzero denominator")
    }

    /// `r(n + c)`.
    pub fn shift(&self, c: i64) -> Self {
        let c = rat(c);
        ratfunc_simplify(self.num.shift(&c), self.den.shift(&c)).expect("shift keeps den nonzero")
    }

    pub fn recip(&self) -> Result<Self, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        ratfunc_simplify(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, ExactError> {
        Ok(self * &rhs.recip()?)
    }

    pub fn pow(&self, k: i32) -> Result<Self, ExactError> {
        let base = if k < 0 { self.recip()? } else { self.clone() };
        let mut out = Self::one();
        for _ in 0..k.unsigned_abs() {
            out = &out * &base;
        }
        Ok(out)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        ratfunc_simplify(self.num.scale(k), self.den.clone()).expect("nonzero denominator")
    }

    pub(crate) fn cmp_key(&self, other: &Self) -> Ordering {
        self.den
            .cmp_key(&other.den)
            .then_with(|| self.num.cmp_key(&other.num))
    }
}

/// Bring `num/den` into canonical form.
pub fn ratfunc_simplify(num: Polynomial, den: Polynomial) -> Result<RationalFunction, ExactError> {
    if den.is_zero() {
        return Err(ExactError::ZeroDenominator);
    }
    if num.is_zero() {
        return Ok(RationalFunction::zero());
    }
    let (num, den) = if num.is_constant() || den.is_constant() {
        (num, den)
    } else {
        let g = poly_gcd(&num, &den)?;
        if g.is_constant() {
            (num, den)
        } else {
            (num.exact_div(&g)?, den.exact_div(&g)?)
        }
    };
    // Joint integer normalization.
    let nlen = num.coeffs.len();
    let mut all: Vec<Rational> = num.coeffs;
    all.extend(den.coeffs);
    let mut ints = clear_denominators(&all);
    let g = content(&ints);
    if !g.is_one() {
        for c in ints.iter_mut() {
            *c /= &g;
        }
    }
    if ints.last().unwrap().is_negative() {
        for c in ints.iter_mut() {
            *c = -&*c;
        }
    }
    let den_ints = ints.split_off(nlen);
    Ok(RationalFunction {
        num: Polynomial::from_bigints(&ints),
        den: Polynomial::from_bigints(&den_ints),
    })
}

fn wrap(p: &Polynomial) -> String {
    let s = p.to_string();
    if s.contains(['*', '/', ' ', '-']) {
        format!("({s})")
    } else {
        s
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() && self.den.constant_term().is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({self})")
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return ratfunc_simplify(&self.num + &rhs.num, self.den.clone()).unwrap();
        }
        // Share the common factor of the denominators before cross-multiplying.
        let g = poly_gcd(&self.den, &rhs.den).unwrap();
        let a_cof = self.den.exact_div(&g).unwrap();
        let b_cof = rhs.den.exact_div(&g).unwrap();
        let n = &(&self.num * &b_cof) + &(&rhs.num * &a_cof);
        let d = &(&a_cof * &b_cof) * &g;
        ratfunc_simplify(n, d).unwrap()
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero();
        }
        ratfunc_simplify(&self.num * &rhs.num, &self.den * &rhs.den).unwrap()
    }
}

forward_owned!(RationalFunction, Add, add);
forward_owned!(RationalFunction, Sub, sub);
forward_owned!(RationalFunction, Mul, mul);

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}
