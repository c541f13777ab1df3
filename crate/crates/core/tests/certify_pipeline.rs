mod common;

use common::spec;
use turancert::certify::*;
use turancert::exact::{Polynomial, RationalFunction};
use turancert::roots::positivity_threshold;
use turancert::sequence::{PRecursiveSequence, Target};
use turancert::specio::{parse_logexpr, parse_ratfunc};
use turancert::{rat, CertifyError};

fn rf(s: &str) -> RationalFunction {
    parse_ratfunc(s).unwrap()
}

fn opts() -> CertifyOptions {
    CertifyOptions::default()
}

fn constant_one() -> PRecursiveSequence {
    PRecursiveSequence::new(
        "ones",
        vec![Polynomial::from_ints(&[-1]), Polynomial::from_ints(&[1])],
        0,
        vec![rat(1)],
        0,
    )
    .unwrap()
}

fn powers_of_two() -> PRecursiveSequence {
    PRecursiveSequence::new(
        "powers",
        vec![Polynomial::from_ints(&[-2]), Polynomial::from_ints(&[1])],
        0,
        vec![rat(1)],
        0,
    )
    .unwrap()
}

fn baxter_ratio() -> RatioStage {
    let s = spec("baxter");
    let (f, g) = s.bounds.ratio().unwrap();
    verify_ratio_bounds(s.sequence(), &f.expr, &g.expr, 753).unwrap()
}

#[test]
fn baxter_ratio_bounds_from_753_extend_to_585() {
    let r = baxter_ratio();
    assert_eq!(r.declared_from, 753);
    assert_eq!(r.step_from, 753);
    assert_eq!(r.certified_from, 585);
    assert!(r.conditions.iter().any(|c| c.name == "map_coefficient_positive"));
}

#[test]
fn constant_sequence_ratio_bounds_hold_from_start() {
    let r = verify_ratio_bounds(&constant_one(), &rf("1/2"), &rf("3/2"), 0).unwrap();
    assert_eq!(r.certified_from, 0);
    assert_eq!(r.step_from, 0);
}

#[test]
fn swapped_ratio_bounds_fail_at_the_exact_check() {
    let s = spec("baxter");
    let (f, g) = s.bounds.ratio().unwrap();
    let e = verify_ratio_bounds(s.sequence(), &g.expr, &f.expr, 753).unwrap_err();
    assert!(matches!(e, CertifyError::ExactCheck { index: 753, .. }), "{e}");
}

#[test]
fn order_three_induction_is_unsupported() {
    let seq = PRecursiveSequence::new(
        "period3",
        vec![
            Polynomial::from_ints(&[-1]),
            Polynomial::zero(),
            Polynomial::zero(),
            Polynomial::from_ints(&[1]),
        ],
        0,
        vec![rat(1), rat(1), rat(1)],
        0,
    )
    .unwrap();
    let e = verify_ratio_bounds(&seq, &rf("1/2"), &rf("2"), 0).unwrap_err();
    assert_eq!(e, CertifyError::UnsupportedOrder(3));
}

#[test]
fn baxter_value_bounds_hold_from_3() {
    let s = spec("baxter");
    let (lo, hi) = s.bounds.value().unwrap();
    let v = verify_value_bounds(s.sequence(), &lo.expr, &hi.expr, 3, &baxter_ratio(), &opts()).unwrap();
    assert_eq!(v.certified_from, 3);
    match &v.upper_step.route {
        StepRoute::Rational { function, threshold } => {
            assert_eq!(threshold.threshold, 13);
            // 8 n^3 / ((n + 1)^3 g(n)) - 1
            assert_eq!(
                function,
                &rf("24*n^5/((n + 1)^3*(24*n^2 - 96*n + 419)) - 1")
            );
        }
        StepRoute::Descent(_) => panic!("expected the rational route"),
    }
}

#[test]
fn constant_sequence_value_step_cannot_close_with_constant_bounds() {
    // With constant s the step needs f(n) > 1 = r_n, so the lower side is
    // refuted rather than certified.
    let seq = constant_one();
    let r = verify_ratio_bounds(&seq, &rf("1/2"), &rf("3/2"), 0).unwrap();
    let s = parse_logexpr("log(1/2)").unwrap();
    let big_s = parse_logexpr("log(2)").unwrap();
    let e = verify_value_bounds(&seq, &s, &big_s, 0, &r, &opts()).unwrap_err();
    assert!(
        matches!(e, CertifyError::Descent { stage: VALUE_STAGE, side: "lower", .. }),
        "{e}"
    );
}

#[test]
fn geometric_u_bounds_fail_on_the_upper_side() {
    let seq = powers_of_two();
    let r = verify_ratio_bounds(&seq, &rf("2 - 1/n^2"), &rf("2 + 1/n^2"), 1).unwrap();
    let s = parse_logexpr("n*log(2) + 1/n - 1").unwrap();
    let big_s = parse_logexpr("n*log(2) - 1/n + 1").unwrap();
    let v = verify_value_bounds(&seq, &s, &big_s, 2, &r, &opts()).unwrap();
    let e = verify_u_bounds(&seq, &rf("1 - 1/n^2"), &rf("1"), 2, &r, &v, &opts()).unwrap_err();
    let upper = match &e {
        CertifyError::Descent { stage, side, .. } => *stage == U_STAGE && *side == "upper",
        CertifyError::WindowFailure { stage, detail, .. } => {
            *stage == U_STAGE && detail.starts_with("upper side")
        }
        _ => false,
    };
    assert!(upper, "{e}");
}

#[test]
fn baxter_root_turan_compositions_match_oracle() {
    let s = spec("baxter");
    let c = criterion_higher_turan(&s.bounds, Target::Root, 1).unwrap();
    let expected = [
        "4/(n^3 + 2*n^2 + n)",
        "(4*n^5 + 15*n^4 + 100*n^3 + 122*n^2 + 240*n - 49)/(n^8 + 8*n^7 + 26*n^6 + 44*n^5 + 41*n^4 + 20*n^3 + 4*n^2)",
        "(4*n^3 + 3*n^2 + 48*n - 32)/(n^6 + 4*n^5 + 6*n^4 + 4*n^3 + n^2)",
        "(4*n^9 + 20*n^8 + 136*n^7 + 392*n^6 + 1300*n^5 + 2116*n^4 + 3360*n^3 + 2912*n^2 + 2688*n - 3136)/(n^12 + 10*n^11 + 43*n^10 + 104*n^9 + 155*n^8 + 146*n^7 + 85*n^6 + 28*n^5 + 4*n^4)",
    ];
    for (comp, e) in c.compositions.iter().zip(expected) {
        assert_eq!(comp.function, rf(e), "{}", comp.name);
        assert_eq!(comp.threshold.threshold, 1, "{}", comp.name);
    }
    assert_eq!(c.threshold, 1);
}

#[test]
fn baxter_ratio_turan_compositions_match_oracle() {
    let s = spec("baxter");
    let c = criterion_higher_turan(&s.bounds, Target::Ratio, 1).unwrap();
    let expected = [
        "4*(n^16 + 15*n^15 + 71*n^14 - 1083*n^12 - 3304*n^11 + 35*n^10 + 20340*n^9 + 39578*n^8 - 18235*n^7 - 192458*n^6 - 322592*n^5 - 177824*n^4 + 145312*n^3 + 290816*n^2 + 178496*n + 40320)/((n - 2)^2*(n - 1)^2*(n + 1)^3*(n + 2)^4*(n^2 + 2*n + 4)^2*(n^2 + 4*n + 7)^2)",
        "4*(n^14 + 12*n^13 + 81*n^12 + 283*n^11 + 168*n^10 - 3036*n^9 - 14232*n^8 - 29952*n^7 - 25056*n^6 + 26944*n^5 + 102144*n^4 + 132864*n^3 + 94720*n^2 + 36864*n + 6144)/((n - 2)^2*(n + 1)^3*(n + 2)^8*(n^2 + 2*n + 4)^2)",
        "4*(n^12 + 14*n^11 + 88*n^10 + 261*n^9 + 38*n^8 - 2217*n^7 - 6858*n^6 - 8433*n^5 - 1451*n^4 + 7107*n^3 + 7086*n^2 + 2468*n + 360)/((n - 1)^2*(n + 1)^5*(n + 2)^6*(n^2 + 4*n + 7))",
        "4*(n^12 + 17*n^11 + 151*n^10 + 868*n^9 + 3536*n^8 + 10531*n^7 + 23084*n^6 + 36784*n^5 + 41512*n^4 + 31088*n^3 + 14080*n^2 + 3456*n + 384)/((n + 1)^5*(n + 2)^10)",
    ];
    for (comp, e) in c.compositions.iter().zip(expected) {
        assert_eq!(comp.function, rf(e), "{}", comp.name);
    }
    let t: Vec<i64> = c.compositions.iter().map(|x| x.threshold.threshold).collect();
    assert_eq!(t, [4, 4, 3, 1]);
    assert_eq!(c.threshold, 4);
}

#[test]
fn degenerate_unit_bounds_give_identical_compositions() {
    let b = CandidateBounds {
        u_lower: Some(Bound { expr: rf("1"), from: 2 }),
        u_upper: Some(Bound { expr: rf("1"), from: 2 }),
        ..Default::default()
    };
    let c = criterion_higher_turan(&b, Target::Root, 1).unwrap();
    let first = &c.compositions[0];
    assert!(c.compositions.iter().all(|x| x.function == first.function));
    let w = rf("n/(n + 1)");
    let t = turancert::inequality::turan_quartic(&w, &w.shift(1));
    assert_eq!(first.function, t);
    assert_eq!(c.threshold, positivity_threshold(&t, 1).unwrap().threshold);
}

#[test]
fn h_laguerre_root_criterion_matches_oracle() {
    let s = spec("h");
    let c = criterion_laguerre2(&s.bounds, Target::Root, LaguerreMode::Conservative, 1).unwrap();
    assert_eq!(
        c.compositions[0].function,
        rf("(2*n^7 + 26*n^6 + 74*n^5 + 62*n^4 - 6*n^3 - 14*n^2 + 3*n + 2)/(n^4*(n + 1)^4*(n + 2))")
    );
    assert_eq!(c.threshold, 1);
}

#[test]
fn h_laguerre_ratio_paper_mode_threshold_is_8() {
    let s = spec("h");
    let c = criterion_laguerre2(&s.bounds, Target::Ratio, LaguerreMode::Paper, 1).unwrap();
    assert_eq!(
        c.compositions[0].function,
        rf("(6*n^9 - 15*n^8 - 192*n^7 - 227*n^6 + 597*n^5 + 1458*n^4 + 893*n^3 - 144*n^2 - 336*n - 96)/((n - 2)*(n - 1)*(n + 1)^4*(n + 2)^4*(n^2 + n - 1))")
    );
    assert_eq!(c.threshold, 8);
}

#[test]
fn h_laguerre_ratio_conservative_mode_is_refuted() {
    // Regression value: the squared-lower-bound composition has a negative
    // leading coefficient, so it is not eventually positive.
    let s = spec("h");
    let e = criterion_laguerre2(&s.bounds, Target::Ratio, LaguerreMode::Conservative, 1).unwrap_err();
    assert_eq!(
        e,
        CertifyError::CriterionFailure {
            pair: "p_{n-1}p_n^2p_{n+1}-4q_n+3".into()
        }
    );
}

#[test]
fn conservative_composition_never_exceeds_paper_composition() {
    for name in ["h", "baxter", "factorial_bounds"] {
        let s = spec(name);
        let paper = criterion_laguerre2(&s.bounds, Target::Ratio, LaguerreMode::Paper, 1);
        let (fu, gu) = s.bounds.u().unwrap();
        let (p, q) = derived_ratio_bounds(&fu.expr, &gu.expr, Target::Ratio).unwrap();
        let middle = &q - &p;
        let gap = &(&(&p.shift(-1) * &p) * &p.shift(1)) * &middle;
        // paper - conservative = p_(n-1) p_n p_(n+1) (q_n - p_n)
        if let Ok(paper) = paper {
            let cons = &paper.compositions[0].function - &gap;
            assert_eq!(&paper.compositions[0].function - &cons, gap);
        }
        assert!(positivity_threshold(&gap, 1).is_ok(), "{name}");
    }
}

#[test]
fn certify_baxter_both_targets_from_2() {
    let s = spec("baxter");
    for target in [Target::Root, Target::Ratio] {
        let c = certify_property(s.sequence(), &s.bounds, target, Criterion::HigherTuran, 2, &opts()).unwrap();
        assert_eq!(c.overall_from, 2);
        assert_eq!(c.u.certified_from, 14);
        assert!(c.u.lower_step.valid_from() <= 32);
        assert!(c.u.upper_step.valid_from() <= 44);
        assert_eq!(c.covered_from, 14);
        assert_eq!(c.window.outcomes.len(), 12);
        let report = reverify(&c, s.sequence(), &s.bounds, &opts());
        assert!(report.is_ok(), "{report}");
    }
}

#[test]
fn certify_h_laguerre() {
    let s = spec("h");
    let root = certify_property(
        s.sequence(),
        &s.bounds,
        Target::Root,
        Criterion::Laguerre2(LaguerreMode::Conservative),
        1,
        &opts(),
    )
    .unwrap();
    assert_eq!(root.overall_from, 1);
    assert_eq!(root.value.certified_from, 5);
    assert_eq!(root.u.certified_from, 5);
    let ratio = certify_property(
        s.sequence(),
        &s.bounds,
        Target::Ratio,
        Criterion::Laguerre2(LaguerreMode::Paper),
        2,
        &opts(),
    )
    .unwrap();
    assert_eq!(ratio.overall_from, 2);
    assert_eq!(ratio.criterion.threshold, 8);
    assert_eq!((ratio.window.from, ratio.window.to), (2, 8));
    assert!(reverify(&ratio, s.sequence(), &s.bounds, &opts()).is_ok());
}

#[test]
fn raw_target_is_rejected() {
    let s = spec("baxter");
    let e = certify_property(s.sequence(), &s.bounds, Target::Raw, Criterion::HigherTuran, 2, &opts()).unwrap_err();
    assert!(matches!(e, CertifyError::UnsupportedTarget(_)));
}

#[test]
fn missing_bounds_are_named() {
    let s = spec("factorial");
    let e = certify_property(s.sequence(), &s.bounds, Target::Root, Criterion::HigherTuran, 2, &opts()).unwrap_err();
    assert_eq!(e, CertifyError::MissingBound("f"));
}

#[test]
fn certificate_json_round_trips_and_is_deterministic() {
    let s = spec("factorial_bounds");
    let c = certify_property(s.sequence(), &s.bounds, Target::Ratio, Criterion::HigherTuran, 2, &opts()).unwrap();
    let text = certificate_to_string(&c);
    let back = certificate_from_str(&text).unwrap();
    assert_eq!(back, c);
    assert_eq!(certificate_to_string(&back), text);
    assert!(text.contains("\"schema\": \"turancert/1\""));
    let wrong = text.replace("turancert/1", "turancert/2");
    assert!(certificate_from_str(&wrong).is_err());
}

#[test]
fn targeted_tampering_is_reported() {
    let s = spec("baxter");
    let c = certify_property(s.sequence(), &s.bounds, Target::Ratio, Criterion::HigherTuran, 2, &opts()).unwrap();

    let mut lowered = c.clone();
    lowered.criterion.compositions[0].threshold.threshold -= 1;
    let r = reverify(&lowered, s.sequence(), &s.bounds, &opts());
    assert!(!r.is_ok());
    assert!(r.failures.iter().any(|m| m.contains("threshold of t(p_n,p_{n+1})")), "{r}");

    let mut flipped = c.clone();
    let o = &mut flipped.window.outcomes[0];
    o.status = turancert::inequality::Status::Holds;
    o.margin = turancert::interval::Interval::exact(rat(1), o.precision);
    let r = reverify(&flipped, s.sequence(), &s.bounds, &opts());
    assert!(r.failures.iter().any(|m| m.contains("initial_window")), "{r}");

    let mut renamed = c;
    renamed.sequence = "baxter2".into();
    let r = reverify(&renamed, s.sequence(), &s.bounds, &opts());
    assert!(r.failures.iter().any(|m| m.contains("sequence name")), "{r}");
}
