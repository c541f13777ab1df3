use num_bigint::BigInt;
use proptest::prelude::*;
use turancert::logexpr::{LogExpr, LogTerm};
use turancert::oeis::{parse_bfile, serialize_bfile, BFile, BFileSource};
use turancert::specio::{parse_logexpr, parse_ratfunc};
use turancert::{ratfunc_simplify, Polynomial, Rational, RationalFunction};

fn coeffs(max: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec((-1000i64..1000, 1i64..50), 0..=max)
        .prop_map(|v| v.into_iter().map(|(a, b)| Rational::new(a.into(), b.into())).collect())
}

fn ratfunc() -> impl Strategy<Value = RationalFunction> {
    (coeffs(6), coeffs(4)).prop_filter_map("nonzero denominator", |(n, d)| {
        ratfunc_simplify(Polynomial::new(n), Polynomial::new(d)).ok()
    })
}

fn positive_arg() -> impl Strategy<Value = RationalFunction> {
    ratfunc().prop_filter("positive at infinity", |r| {
        !r.is_zero() && r.sign_at_infinity() == std::cmp::Ordering::Greater
    })
}

fn logexpr() -> impl Strategy<Value = LogExpr> {
    (ratfunc(), prop::collection::vec((ratfunc(), positive_arg()), 0..3)).prop_map(|(r, t)| {
        LogExpr::from_parts(r, t.into_iter().map(|(coeff, arg)| LogTerm { coeff, arg }).collect())
    })
}

fn bfile() -> impl Strategy<Value = BFile> {
    (
        -3i64..10,
        prop::collection::vec((1i64..4, any::<i128>()), 0..60),
        prop::option::of(0u32..1_000_000),
    )
        .prop_map(|(start, steps, id)| {
            let mut i = start;
            let entries = steps
                .into_iter()
                .map(|(gap, v)| {
                    i += gap;
                    (i, BigInt::from(v) * BigInt::from(v))
                })
                .collect();
            BFile {
                oeis_id: id.map(|k| format!("A{k:06}")),
                entries,
                source: BFileSource::LocalFile,
            }
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn ratfunc_display_round_trips(r in ratfunc()) {
        prop_assert_eq!(parse_ratfunc(&r.to_string()).unwrap(), r);
    }

    #[test]
    fn logexpr_display_round_trips(e in logexpr()) {
        prop_assert_eq!(parse_logexpr(&e.to_string()).unwrap(), e);
    }

    #[test]
    fn bfile_parse_inverts_serialize(b in bfile()) {
        let back = parse_bfile(&serialize_bfile(&b)).unwrap();
        prop_assert_eq!(back.entries, b.entries);
    }
}
