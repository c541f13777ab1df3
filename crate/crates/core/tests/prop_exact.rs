use num_traits::{One, Zero};
use proptest::prelude::*;
use turancert::{poly_gcd, ratfunc_simplify, ratio, Polynomial, Rational};

fn rational() -> impl Strategy<Value = Rational> {
    (-60i64..60, 1i64..25).prop_map(|(n, d)| ratio(n, d))
}

fn poly(max_len: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(-6i64..7, 0..=max_len).prop_map(|c| Polynomial::from_ints(&c))
}

fn nonzero_poly(max_len: usize) -> impl Strategy<Value = Polynomial> {
    poly(max_len).prop_filter("nonzero", |p| !p.is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn field_axioms(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.recip()).is_one());
        }
    }

    #[test]
    fn polynomial_ring_axioms(p in poly(6), q in poly(6), r in poly(6)) {
        prop_assert_eq!(&(&p + &q) * &r, &(&p * &r) + &(&q * &r));
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert!((&p - &p).is_zero());
    }

    #[test]
    fn gcd_of_common_multiples(p in poly(5), q in poly(5), r in nonzero_poly(4)) {
        prop_assume!(!(p.is_zero() && q.is_zero()));
        let lhs = poly_gcd(&(&p * &r), &(&q * &r)).unwrap();
        let g = poly_gcd(&p, &q).unwrap();
        let rhs = &r * &g;
        prop_assert_eq!(lhs.monic(), rhs.monic());
    }

    #[test]
    fn gcd_divides_both(p in nonzero_poly(9), q in nonzero_poly(9)) {
        let g = poly_gcd(&p, &q).unwrap();
        prop_assert!(p.div_rem(&g).unwrap().1.is_zero());
        prop_assert!(q.div_rem(&g).unwrap().1.is_zero());
    }

    #[test]
    fn simplify_is_idempotent_and_value_preserving(
        num in poly(8),
        den in nonzero_poly(6),
        common in nonzero_poly(3),
        points in prop::collection::vec(rational(), 50),
    ) {
        let raw_num = &num * &common;
        let raw_den = &den * &common;
        let r = ratfunc_simplify(raw_num.clone(), raw_den.clone()).unwrap();
        let again = ratfunc_simplify(r.num().clone(), r.den().clone()).unwrap();
        prop_assert_eq!(&again, &r);
        for x in &points {
            let d = raw_den.eval(x);
            if d.is_zero() {
                continue;
            }
            let direct = raw_num.eval(x) / d;
            prop_assert_eq!(r.eval(x), Some(direct));
        }
    }

    #[test]
    fn derivative_is_a_derivation(p in poly(7), q in poly(7)) {
        prop_assert_eq!((&p * &q).derivative(), &(&p.derivative() * &q) + &(&p * &q.derivative()));
    }
}
