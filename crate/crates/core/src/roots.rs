//! Real-root counting with Sturm chains and "positive for every n >= N"
//! thresholds for polynomials and rational functions.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::RootsError;
use crate::exact::{primitive, pseudo_rem, rat, ratio, Polynomial, Rational, RationalFunction};

/// Sign of the integer polynomial `c` at `x`, computed without leaving Z.
fn sign_at(c: &[BigInt], x: &Rational) -> Ordering {
    if c.is_empty() {
        return Ordering::Equal;
    }
    let (a, b) = (x.numer(), x.denom());
    let d = c.len() - 1;
    // sum c_i a^i b^(d-i); b > 0 so the sign matches c(x).
    let mut acc = c[d].clone();
    let mut bpow = BigInt::one();
    for i in (0..d).rev() {
        bpow *= b;
        acc = acc * a + &c[i] * &bpow;
    }
    acc.sign_cmp()
}

trait SignCmp {
    fn sign_cmp(&self) -> Ordering;
}

impl SignCmp for BigInt {
    fn sign_cmp(&self) -> Ordering {
        self.cmp(&BigInt::zero())
    }
}

fn variations(signs: impl Iterator<Item = Ordering>) -> usize {
    let mut last = Ordering::Equal;
    let mut count = 0;
    for s in signs {
        if s == Ordering::Equal {
            continue;
        }
        if last != Ordering::Equal && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// Sturm chain `p, p', -rem(p, p'), ...` kept as primitive integer
/// polynomials; only signs matter, so positive rescaling is harmless.
#[derive(Clone, Debug)]
pub struct SturmChain {
    ints: Vec<Vec<BigInt>>,
}

impl SturmChain {
    pub fn new(p: &Polynomial) -> Result<Self, RootsError> {
        if p.is_zero() {
            return Err(RootsError::ZeroPolynomial);
        }
        let first = p.primitive_integer();
        let mut ints = vec![first];
        if p.is_constant() {
            return Ok(SturmChain { ints });
        }
        ints.push(p.derivative().primitive_integer());
        loop {
            let k = ints.len();
            let (r, steps) = pseudo_rem(&ints[k - 2], &ints[k - 1]);
            if r.is_empty() {
                break;
            }
            let lc_negative = ints[k - 1].last().unwrap().is_negative();
            let r = primitive(r);
            // r = lc^steps * rem; the chain needs -rem up to a positive factor.
            let next = if lc_negative && steps % 2 == 1 {
                r
            } else {
                r.into_iter().map(|c| -c).collect()
            };
            let done = next.len() == 1;
            ints.push(next);
            if done {
                break;
            }
        }
        Ok(SturmChain { ints })
    }

    pub fn polys(&self) -> Vec<Polynomial> {
        self.ints
            .iter()
            .map(|c| Polynomial::from_bigints(c))
            .collect()
    }

    pub fn len(&self) -> usize {
        self.ints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ints.is_empty()
    }

    pub fn variations_at(&self, x: &Rational) -> usize {
        variations(self.ints.iter().map(|c| sign_at(c, x)))
    }

    pub fn variations_at_pos_inf(&self) -> usize {
        variations(self.ints.iter().map(|c| c.last().unwrap().sign_cmp()))
    }

    pub fn variations_at_neg_inf(&self) -> usize {
        variations(self.ints.iter().map(|c| {
            let s = c.last().unwrap().sign_cmp();
            if (c.len() - 1) % 2 == 1 {
                s.reverse()
            } else {
                s
            }
        }))
    }

    pub fn sign_at(&self, x: &Rational) -> Ordering {
        sign_at(&self.ints[0], x)
    }

    /// Distinct real roots in the open interval `(lo, hi)`; endpoints must not
    /// be roots.
    pub fn count(&self, lo: &Rational, hi: &Rational) -> Result<usize, RootsError> {
        if lo >= hi {
            return Err(RootsError::EmptyInterval {
                lo: lo.to_string(),
                hi: hi.to_string(),
            });
        }
        for e in [lo, hi] {
            if self.sign_at(e) == Ordering::Equal {
                return Err(RootsError::EndpointIsRoot {
                    endpoint: e.to_string(),
                });
            }
        }
        Ok(self.variations_at(lo) - self.variations_at(hi))
    }

    /// Distinct real roots in `(lo, +inf)`.
    pub fn count_above(&self, lo: &Rational) -> Result<usize, RootsError> {
        if self.sign_at(lo) == Ordering::Equal {
            return Err(RootsError::EndpointIsRoot {
                endpoint: lo.to_string(),
            });
        }
        Ok(self.variations_at(lo) - self.variations_at_pos_inf())
    }

    pub fn count_all(&self) -> usize {
        self.variations_at_neg_inf() - self.variations_at_pos_inf()
    }
}

/// Number of distinct real roots of `p` in `(lo, hi)`.
pub fn count_real_roots(p: &Polynomial, lo: &Rational, hi: &Rational) -> Result<usize, RootsError> {
    SturmChain::new(p)?.count(lo, hi)
}

/// Cauchy bound: every real root lies strictly below `1 + max |a_i / a_d|`.
pub fn largest_root_upper_bound(p: &Polynomial) -> Result<Rational, RootsError> {
    if p.is_zero() {
        return Err(RootsError::ZeroPolynomial);
    }
    if p.is_constant() {
        return Err(RootsError::ConstantPolynomial);
    }
    let lc = p.leading().abs();
    let d = p.coeffs().len() - 1;
    let m = p.coeffs()[..d]
        .iter()
        .map(|c| c.abs() / &lc)
        .max()
        .unwrap_or_else(Rational::zero);
    Ok(m + Rational::one())
}

/// An open interval `(lo, hi)` holding exactly one real root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: Rational,
    pub hi: Rational,
}

impl RootInterval {
    /// The single integer strictly inside the interval, if there is one.
    fn inner_integer(&self) -> Option<BigInt> {
        let k: BigInt = self.lo.floor().to_integer() + 1;
        (Rational::from_integer(k.clone()) < self.hi).then_some(k)
    }
}

impl fmt::Display for RootInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.lo, self.hi)
    }
}

/// A non-root point strictly inside `(lo, hi)`, preferring the midpoint.
fn split_point(chain: &SturmChain, lo: &Rational, hi: &Rational) -> Rational {
    let w = hi - lo;
    let mut k = 2i64;
    loop {
        for j in [1, k - 1] {
            let m = lo + &w * ratio(j, k);
            if chain.sign_at(&m) != Ordering::Equal {
                return m;
            }
        }
        k += 1;
    }
}

/// Isolating intervals of width at most `max_width` for the distinct real
/// roots of `p` in `(lo, hi)`, in increasing order.
pub fn isolate_real_roots(
    p: &Polynomial,
    lo: &Rational,
    hi: &Rational,
    max_width: &Rational,
) -> Result<Vec<RootInterval>, RootsError> {
    let chain = SturmChain::new(p)?;
    let total = chain.count(lo, hi)?;
    let mut out = Vec::new();
    let mut stack = vec![(lo.clone(), hi.clone(), total)];
    while let Some((a, b, c)) = stack.pop() {
        if c == 0 {
            continue;
        }
        if c == 1 && &(&b - &a) <= max_width {
            out.push(RootInterval { lo: a, hi: b });
            continue;
        }
        let m = split_point(&chain, &a, &b);
        let left = chain.variations_at(&a) - chain.variations_at(&m);
        stack.push((m.clone(), b, c - left));
        stack.push((a, m, left));
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ThresholdScope {
    /// Positive at every integer `n >= threshold`.
    Integers,
    /// Positive on the whole real half-line `[threshold, +inf)`.
    Reals,
}

impl ThresholdScope {
    pub fn as_str(self) -> &'static str {
        match self {
            ThresholdScope::Integers => "integers",
            ThresholdScope::Reals => "reals",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "integers" => Some(ThresholdScope::Integers),
            "reals" => Some(ThresholdScope::Reals),
            _ => None,
        }
    }
}

/// Evidence behind a threshold: the root bound used and the isolating
/// interval of the largest real root of `num * den` (if any).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootWitness {
    pub root_bound: Rational,
    pub largest_root: Option<RootInterval>,
}

impl fmt::Display for RootWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.largest_root {
            Some(r) => write!(
                f,
                "largest real root in {r}; all roots below {}",
                self.root_bound
            ),
            None => write!(f, "no real roots above the floor"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositivityThreshold {
    pub threshold: i64,
    pub floor: i64,
    pub scope: ThresholdScope,
    pub witness: RootWitness,
    /// Smallest integer at which positivity was confirmed by exact evaluation.
    pub checked_floor: i64,
}

fn to_i64(k: &BigInt) -> i64 {
    k.to_i64().expect("threshold fits in i64")
}

fn sign_polynomial(r: &RationalFunction) -> Polynomial {
    (r.num() * r.den()).squarefree()
}

fn check_shape(r: &RationalFunction) -> Result<(), RootsError> {
    if r.is_zero() {
        return Err(RootsError::IdenticallyZero);
    }
    if r.sign_at_infinity() != Ordering::Greater {
        return Err(RootsError::EventuallyNonpositive {
            function: r.to_string(),
        });
    }
    Ok(())
}

fn is_positive_at(r: &RationalFunction, n: i64) -> bool {
    r.eval_int(n).is_some_and(|v| v.is_positive())
}

/// A non-root lower endpoint just below `floor - 1/2`.
fn lower_endpoint(chain: &SturmChain, floor: i64) -> Rational {
    let mut lo = rat(floor) - ratio(1, 2);
    let mut eps = ratio(1, 8);
    while chain.sign_at(&lo) == Ordering::Equal {
        lo -= &eps;
        eps /= rat(2);
    }
    lo
}

/// Minimal integer `N >= floor` with `r(n) > 0` at every integer `n >= N`.
/// Integer poles at or above `floor` push `N` above them.
pub fn positivity_threshold(
    r: &RationalFunction,
    floor: i64,
) -> Result<PositivityThreshold, RootsError> {
    check_shape(r)?;
    let p = sign_polynomial(r);
    if p.is_constant() {
        return Ok(PositivityThreshold {
            threshold: floor,
            floor,
            scope: ThresholdScope::Integers,
            witness: RootWitness {
                root_bound: rat(floor),
                largest_root: None,
            },
            checked_floor: floor,
        });
    }
    let chain = SturmChain::new(&p)?;
    let bound = largest_root_upper_bound(&p)?;
    let lo = lower_endpoint(&chain, floor);
    let roots = if lo < bound {
        isolate_real_roots(&p, &lo, &bound, &ratio(1, 2))?
    } else {
        Vec::new()
    };
    let mut threshold = floor;
    // Walk down from +inf; the region above the top root is positive.
    let mut upper_edge: Option<Rational> = None;
    'walk: for iv in roots.iter().rev() {
        if let Some(top) = &upper_edge {
            // Gap [iv.hi, top] is root-free; its sign is the sign at iv.hi.
            if chain.sign_at(&iv.hi) == Ordering::Less {
                let m = top.floor().to_integer();
                if Rational::from_integer(m.clone()) >= iv.hi {
                    threshold = to_i64(&m) + 1;
                    break 'walk;
                }
            }
        }
        if let Some(k) = iv.inner_integer() {
            let k = to_i64(&k);
            if !is_positive_at(r, k) {
                threshold = k + 1;
                break 'walk;
            }
        }
        upper_edge = Some(iv.lo.clone());
    }
    if threshold == floor {
        if let Some(top) = &upper_edge {
            if chain.sign_at(&lo) == Ordering::Less {
                let m = top.floor().to_integer();
                if Rational::from_integer(m.clone()) >= lo {
                    threshold = to_i64(&m) + 1;
                }
            }
        } else if chain.sign_at(&lo) == Ordering::Less {
            // Unreachable for positive leading behavior without roots.
            return Err(RootsError::EventuallyNonpositive {
                function: r.to_string(),
            });
        }
    }
    debug_assert!(is_positive_at(r, threshold));
    Ok(PositivityThreshold {
        threshold,
        floor,
        scope: ThresholdScope::Integers,
        witness: RootWitness {
            root_bound: bound,
            largest_root: roots.last().cloned(),
        },
        checked_floor: threshold,
    })
}

/// Smallest integer strictly above every real root of `p`.
fn strict_integer_root_bound(
    p: &Polynomial,
) -> Result<(Option<i64>, Rational, Option<RootInterval>), RootsError> {
    if p.is_constant() {
        return Ok((None, Rational::zero(), None));
    }
    let chain = SturmChain::new(p)?;
    let bound = largest_root_upper_bound(p)?;
    if chain.count_all() == 0 {
        return Ok((None, bound, None));
    }
    let mut lo = -bound.clone();
    while chain.sign_at(&lo) == Ordering::Equal {
        lo -= Rational::one();
    }
    let top = {
        let mut a = lo;
        let mut b = bound.clone();
        // Bisect towards the largest root, keeping exactly it in (a, b).
        loop {
            if &b - &a <= ratio(1, 2) {
                break RootInterval { lo: a, hi: b };
            }
            let m = split_point(&chain, &a, &b);
            if chain.variations_at(&m) > chain.variations_at_pos_inf() {
                a = m;
            } else {
                b = m;
            }
        }
    };
    let n = match top.inner_integer() {
        None => top.hi.ceil().to_integer(),
        Some(k) => {
            let kr = Rational::from_integer(k.clone());
            if chain.sign_at(&kr) == Ordering::Equal || chain.count_above(&kr)? > 0 {
                k + 1
            } else {
                k
            }
        }
    };
    Ok((Some(to_i64(&n)), bound, Some(top)))
}

/// Minimal integer `N >= floor` with `r > 0` on the real half-line `[N, inf)`.
pub fn real_positivity_threshold(
    r: &RationalFunction,
    floor: i64,
) -> Result<PositivityThreshold, RootsError> {
    check_shape(r)?;
    let p = sign_polynomial(r);
    let (n, bound, top) = strict_integer_root_bound(&p)?;
    let threshold = n.map_or(floor, |n| n.max(floor));
    Ok(PositivityThreshold {
        threshold,
        floor,
        scope: ThresholdScope::Reals,
        witness: RootWitness {
            root_bound: bound,
            largest_root: top,
        },
        checked_floor: threshold,
    })
}

/// Integer scans longer than this fall back to root isolation.
const SCAN_LIMIT: i64 = 200_000;

/// Independent re-check of a claimed threshold: positivity at and beyond it,
/// and minimality against the floor. Returns a description of the first
/// violated condition.
pub fn check_threshold(r: &RationalFunction, t: &PositivityThreshold) -> Result<(), String> {
    check_claim(r, t)?;
    let again = match t.scope {
        ThresholdScope::Integers => positivity_threshold(r, t.floor),
        ThresholdScope::Reals => real_positivity_threshold(r, t.floor),
    }
    .map_err(|e| e.to_string())?;
    if again.checked_floor != t.checked_floor {
        return Err(format!("checked floor {} should be {}", t.checked_floor, again.checked_floor));
    }
    if again.witness != t.witness {
        return Err(format!("root witness ({}) should be ({})", t.witness, again.witness));
    }
    Ok(())
}

fn check_claim(r: &RationalFunction, t: &PositivityThreshold) -> Result<(), String> {
    let n = t.threshold;
    if n < t.floor {
        return Err(format!("threshold {n} is below its floor {}", t.floor));
    }
    if r.is_zero() || r.sign_at_infinity() != Ordering::Greater {
        return Err(format!("{r} is not eventually positive"));
    }
    if !is_positive_at(r, n) {
        return Err(format!("{r} is not positive at n = {n}"));
    }
    let p = sign_polynomial(r);
    if p.is_constant() {
        return if n == t.floor {
            Ok(())
        } else {
            Err(format!(
                "threshold {n} is not minimal: {r} is a positive constant"
            ))
        };
    }
    let chain = SturmChain::new(&p).map_err(|e| e.to_string())?;
    let nr = rat(n);
    let above = chain.count_above(&nr).map_err(|e| e.to_string())?;
    match t.scope {
        ThresholdScope::Reals => {
            if above != 0 {
                return Err(format!("{r} changes sign above {n}"));
            }
            if n > t.floor {
                let below = rat(n - 1);
                let has_root = chain.sign_at(&below) == Ordering::Equal
                    || chain.count(&below, &nr).map_err(|e| e.to_string())? > 0;
                if !has_root {
                    return Err(format!("threshold {n} is not minimal on the reals"));
                }
            }
        }
        ThresholdScope::Integers => {
            if above != 0 {
                let bound = largest_root_upper_bound(&p).map_err(|e| e.to_string())?;
                let end = bound.ceil().to_integer();
                let span = &end - BigInt::from(n);
                if span <= BigInt::from(SCAN_LIMIT) {
                    for k in n..=to_i64(&end) {
                        if !is_positive_at(r, k) {
                            return Err(format!("{r} is not positive at n = {k}"));
                        }
                    }
                } else {
                    let roots = isolate_real_roots(&p, &nr, &bound, &ratio(1, 2))
                        .map_err(|e| e.to_string())?;
                    for iv in &roots {
                        let k = iv.lo.floor().to_integer();
                        for j in 0..2 {
                            let k = to_i64(&(&k + j));
                            if k >= n && !is_positive_at(r, k) {
                                return Err(format!("{r} is not positive at n = {k}"));
                            }
                        }
                    }
                }
            }
            if n > t.floor && is_positive_at(r, n - 1) {
                return Err(format!(
                    "threshold {n} is not minimal: {r} is positive at {}",
                    n - 1
                ));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratfunc_simplify;

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_ints(c)
    }

    fn quartic() -> Polynomial {
        p(&[-419, -1161, -993, -203, 24])
    }

    fn prod(factors: &[Polynomial]) -> Polynomial {
        factors.iter().fold(Polynomial::one(), |acc, f| &acc * f)
    }

    #[test]
    fn count_examples() {
        assert_eq!(
            count_real_roots(&p(&[-4, 0, 1]), &rat(0), &rat(3)).unwrap(),
            1
        );
        assert_eq!(
            count_real_roots(&p(&[1, 0, 1]), &rat(-10), &rat(10)).unwrap(),
            0
        );
        assert_eq!(count_real_roots(&quartic(), &rat(0), &rat(100)).unwrap(), 1);
        assert_eq!(count_real_roots(&quartic(), &rat(12), &rat(13)).unwrap(), 1);
        assert_eq!(
            count_real_roots(&quartic(), &rat(-100), &rat(100)).unwrap(),
            2
        );
    }

    #[test]
    fn endpoint_root_is_reported() {
        let e = count_real_roots(&p(&[-4, 0, 1]), &rat(2), &rat(3)).unwrap_err();
        assert_eq!(
            e,
            RootsError::EndpointIsRoot {
                endpoint: "2".into()
            }
        );
    }

    #[test]
    fn repeated_roots_counted_once() {
        let q = prod(&[p(&[-1, 1]), p(&[-1, 1]), p(&[-3, 1])]);
        assert_eq!(count_real_roots(&q, &rat(0), &rat(10)).unwrap(), 2);
    }

    #[test]
    fn root_bound_contract() {
        for q in [p(&[-5, 1]), p(&[-4, 0, 1]), quartic()] {
            let b = largest_root_upper_bound(&q).unwrap();
            let tenb = &b * rat(10);
            assert_eq!(count_real_roots(&q, &b, &tenb).unwrap(), 0);
            assert_eq!(SturmChain::new(&q).unwrap().count_above(&b).unwrap(), 0);
        }
        assert!(largest_root_upper_bound(&p(&[-5, 1])).unwrap() > rat(5));
        assert_eq!(
            largest_root_upper_bound(&p(&[3])),
            Err(RootsError::ConstantPolynomial)
        );
    }

    #[test]
    fn isolation_separates_roots() {
        let q = prod(&[p(&[-1, 1]), p(&[-2, 1]), p(&[1, 1]), p(&[-7, 2])]);
        let ivs = isolate_real_roots(&q, &rat(-10), &rat(10), &ratio(1, 4)).unwrap();
        assert_eq!(ivs.len(), 4);
        for (iv, root) in ivs.iter().zip([rat(-1), rat(1), rat(2), ratio(7, 2)]) {
            assert!(iv.lo < root && root < iv.hi);
        }
    }

    #[test]
    fn baxter_step_threshold() {
        let r = ratfunc_simplify(quartic(), prod(&[p(&[0, 0, 3]), p(&[1, 1]).pow(3)])).unwrap();
        let t = positivity_threshold(&r, 1).unwrap();
        assert_eq!(t.threshold, 13);
        assert!(r.eval_int(12).unwrap().is_negative());
        check_threshold(&r, &t).unwrap();
    }

    #[test]
    fn turan_display_threshold() {
        let r = ratfunc_simplify(
            p(&[-32, 48, 3, 4]),
            prod(&[p(&[0, 0, 1]), p(&[1, 1]).pow(4)]),
        )
        .unwrap();
        let t = positivity_threshold(&r, 1).unwrap();
        assert_eq!(t.threshold, 1);
        check_threshold(&r, &t).unwrap();
    }

    #[test]
    fn threshold_above_pole() {
        let num = p(&[-96, -336, -144, 893, 1458, 597, -227, -192, -15, 6]);
        let den = prod(&[
            p(&[-2, 1]),
            p(&[-1, 1]),
            p(&[1, 1]).pow(4),
            p(&[2, 1]).pow(4),
            p(&[-1, 1, 1]),
        ]);
        let r = ratfunc_simplify(num, den).unwrap();
        let t = positivity_threshold(&r, 1).unwrap();
        assert_eq!(t.threshold, 8);
        assert!(!r.eval_int(7).unwrap().is_positive());
        check_threshold(&r, &t).unwrap();
    }

    #[test]
    fn laguerre_root_numerator_threshold() {
        let num = p(&[2, 3, -14, -6, 62, 74, 26, 2]);
        let den = prod(&[p(&[0, 1]).pow(4), p(&[1, 1]).pow(4), p(&[2, 1])]);
        let r = ratfunc_simplify(num, den).unwrap();
        assert_eq!(positivity_threshold(&r, 1).unwrap().threshold, 1);
    }

    #[test]
    fn integer_pole_pushes_threshold() {
        // 1/(n - 5) is negative below 5 and undefined at 5.
        let r = ratfunc_simplify(p(&[1]), p(&[-5, 1])).unwrap();
        assert_eq!(positivity_threshold(&r, 1).unwrap().threshold, 6);
        let r = ratfunc_simplify(p(&[1]), p(&[-5, 1]).pow(2)).unwrap();
        assert_eq!(positivity_threshold(&r, 1).unwrap().threshold, 6);
    }

    #[test]
    fn negative_region_without_integers_is_skipped() {
        // (n - 3.2)(n - 3.6) is negative only on (3.2, 3.6).
        let q = prod(&[p(&[-16, 5]), p(&[-18, 5])]);
        let r = RationalFunction::from_poly(q);
        let t = positivity_threshold(&r, 1).unwrap();
        assert_eq!(t.threshold, 1);
        check_threshold(&r, &t).unwrap();
        let real = real_positivity_threshold(&r, 1).unwrap();
        assert_eq!(real.threshold, 4);
        check_threshold(&r, &real).unwrap();
    }

    #[test]
    fn domain_errors() {
        assert_eq!(
            positivity_threshold(&RationalFunction::zero(), 1),
            Err(RootsError::IdenticallyZero)
        );
        let r = RationalFunction::from_poly(p(&[5, -1]));
        assert!(matches!(
            positivity_threshold(&r, 1),
            Err(RootsError::EventuallyNonpositive { .. })
        ));
    }

    #[test]
    fn tampered_threshold_is_rejected() {
        let r = ratfunc_simplify(quartic(), prod(&[p(&[0, 0, 3]), p(&[1, 1]).pow(3)])).unwrap();
        let mut t = positivity_threshold(&r, 1).unwrap();
        t.threshold = 12;
        assert!(check_threshold(&r, &t).is_err());
        t.threshold = 14;
        assert!(check_threshold(&r, &t).is_err());
    }

    #[test]
    fn real_threshold_of_integer_root() {
        let r = RationalFunction::from_poly(p(&[-4, 1]));
        assert_eq!(real_positivity_threshold(&r, 1).unwrap().threshold, 5);
        assert_eq!(positivity_threshold(&r, 1).unwrap().threshold, 5);
        let r = RationalFunction::from_poly(p(&[-9, 2]));
        assert_eq!(real_positivity_threshold(&r, 1).unwrap().threshold, 5);
    }
}
