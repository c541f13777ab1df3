use std::cmp::Ordering;

use num_traits::ToPrimitive;
use proptest::prelude::*;
use turancert::logexpr::{
    check_descent, limit_at_infinity, prove_eventually_positive, DescentOptions, LimitKind, LogExpr,
    LogTerm,
};
use turancert::{rat, ratfunc_simplify, ratio, Polynomial, RationalFunction};

fn poly_rf(c: &[i64]) -> RationalFunction {
    RationalFunction::from_poly(Polynomial::from_ints(c))
}

/// Log arguments positive for every `n >= 1`.
fn log_arg() -> impl Strategy<Value = RationalFunction> {
    prop_oneof![
        Just(RationalFunction::var()),
        (2i64..9).prop_map(RationalFunction::int),
        (1i64..6).prop_map(|a| poly_rf(&[a, 1])),
        (1i64..6).prop_map(|b| poly_rf(&[b, 0, 1])),
        (1i64..6, 1i64..6).prop_map(|(a, b)| {
            ratfunc_simplify(Polynomial::from_ints(&[a, 1]), Polynomial::from_ints(&[b, 1])).unwrap()
        }),
        (1i64..4).prop_map(|a| {
            ratfunc_simplify(Polynomial::from_ints(&[-1, 0, a + 1]), Polynomial::from_ints(&[0, 0, 1])).unwrap()
        }),
    ]
}

fn coeff() -> impl Strategy<Value = RationalFunction> {
    prop_oneof![
        prop::collection::vec(-4i64..5, 1..4).prop_map(|c| poly_rf(&c)),
        (-4i64..5, 1i64..4).prop_map(|(a, b)| RationalFunction::constant(ratio(a, b))),
    ]
}

fn rational_part() -> impl Strategy<Value = RationalFunction> {
    (prop::collection::vec(-5i64..6, 0..4), 1i64..5).prop_map(|(n, c)| {
        ratfunc_simplify(Polynomial::from_ints(&n), Polynomial::from_ints(&[c, 1])).unwrap()
    })
}

fn logexpr() -> impl Strategy<Value = LogExpr> {
    (rational_part(), prop::collection::vec((coeff(), log_arg()), 0..3)).prop_map(|(r, terms)| {
        LogExpr::from_parts(
            r,
            terms.into_iter().map(|(coeff, arg)| LogTerm { coeff, arg }).collect(),
        )
    })
}

fn rf_f64(r: &RationalFunction, x: f64) -> f64 {
    let p = |p: &Polynomial| {
        p.coeffs()
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap())
    };
    p(r.num()) / p(r.den())
}

fn eval_f64(e: &LogExpr, x: f64) -> f64 {
    rf_f64(e.rational_part(), x)
        + e.log_terms()
            .iter()
            .map(|t| rf_f64(&t.coeff, x) * rf_f64(&t.arg, x).ln())
            .sum::<f64>()
}

/// Five-point central difference.
fn finite_difference(e: &LogExpr, x: f64) -> f64 {
    let h = 1e-3;
    let f = |d: f64| eval_f64(e, x + d);
    (f(-2.0 * h) - 8.0 * f(-h) + 8.0 * f(h) - f(2.0 * h)) / (12.0 * h)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn derivative_matches_finite_differences(e in logexpr(), n in 5i64..60) {
        let exact = e.derivative().eval_interval(n, 128).unwrap().mid_f64();
        let x = n as f64;
        let scale = eval_f64(&e, x).abs().max(1.0);
        // Cancellation in the stencil is of order eps * scale / h.
        prop_assume!(exact.abs() > 1e-4 * scale);
        let fd = finite_difference(&e, x);
        prop_assert!(((exact - fd) / exact).abs() <= 1e-8, "{e}: {exact} vs {fd}");
    }

    #[test]
    fn derivative_is_linear(a in logexpr(), b in logexpr(), k in (-5i64..6, 1i64..4)) {
        let c = RationalFunction::constant(ratio(k.0, k.1));
        let lhs = a.mul_rational(&c).add(&b).derivative();
        let rhs = a.derivative().mul_rational(&c).add(&b.derivative());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn repeated_derivatives_reach_a_rational_function(e in logexpr()) {
        let top = e.max_log_coeff_degree().expect("polynomial log coefficients");
        let steps = top.map_or(0, |d| d + 1);
        let mut d = e.clone();
        for _ in 0..steps {
            d = d.derivative();
        }
        prop_assert!(d.is_rational(), "{e} -> {d}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn descent_proofs_hold_at_sampled_points(
        e in logexpr(),
        offsets in prop::collection::vec(0i64..1_000_000, 20),
    ) {
        let e = match limit_at_infinity(&e).limit_sign() {
            Ordering::Greater => e,
            Ordering::Less => e.neg(),
            Ordering::Equal => return Ok(()),
        };
        let opts = DescentOptions::default();
        let Ok(proof) = prove_eventually_positive(&e, &opts) else {
            return Ok(());
        };
        prop_assert_eq!(check_descent(&e, &proof, &opts), Ok(()));
        let n0 = proof.final_threshold;
        for n in std::iter::once(n0).chain(offsets.iter().map(|k| n0 + k)) {
            let v = e.eval_interval(n, 256).unwrap();
            prop_assert!(v.is_positive(), "{e} at {n}: {v:?}");
        }
    }

    #[test]
    fn limits_agree_with_far_samples(e in logexpr()) {
        let class = limit_at_infinity(&e);
        let at = |k: u32| e.eval_interval(1i64 << k, 256).unwrap();
        let (a, b, c) = (at(10), at(20), at(30));
        match class.kind {
            LimitKind::PlusInfinity => {
                prop_assert!(c.is_positive());
                prop_assert!(c.sub(&b).is_positive());
            }
            LimitKind::MinusInfinity => {
                prop_assert!(c.is_negative());
                prop_assert!(c.sub(&b).is_negative());
            }
            LimitKind::Finite => {
                let v = class.value.expect("finite limit carries its value").eval_interval(256);
                let gap = |x: &turancert::interval::Interval| x.sub(&v).mid_f64().abs();
                prop_assert!(gap(&c) <= gap(&b) + 1e-12, "{e}");
                prop_assert!(gap(&b) <= gap(&a) + 1e-6, "{e}");
                prop_assert!(gap(&c) < 1e-6, "{e}");
                if v.is_positive() {
                    prop_assert!(c.is_positive());
                }
                if v.is_negative() {
                    prop_assert!(c.is_negative());
                }
            }
        }
    }
}

#[test]
fn limit_examples() {
    let n_log_n = LogExpr::log_term(RationalFunction::var(), RationalFunction::var()).unwrap();
    assert_eq!(limit_at_infinity(&n_log_n).kind, LimitKind::PlusInfinity);
    let e = LogExpr::log(poly_rf(&[1, 1]))
        .unwrap()
        .sub(&LogExpr::log(RationalFunction::var()).unwrap());
    let class = limit_at_infinity(&e);
    assert_eq!(class.kind, LimitKind::Finite);
    assert_eq!(class.value.unwrap().rational_value(), Some(&rat(0)));
}
