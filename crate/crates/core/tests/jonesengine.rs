use ktg_core::jonesengine::{
    augmented_closed_form, build_expression, eval_at_root, eval_generic, normalize_generic, sufficient_ring_count,
    summand_jets, EngineConfig, EngineError, ExprNode, Factor, Label, TwistMode,
};
use ktg_core::ktgmodel::{augment, parse_sequence, MoveSequence, RingSpec};
use ktg_core::qarith::RatFun;
use ktg_core::qsymbols::{qfact, qint, sixj_n};

fn seq(text: &str) -> MoveSequence {
    parse_sequence(text).unwrap()
}

fn cfg() -> EngineConfig {
    EngineConfig::default()
}

#[test]
fn empty_sequence_is_a_single_tetrahedron() {
    let e = build_expression(&MoveSequence::default(), TwistMode::Strict).unwrap();
    assert_eq!(e.root, ExprNode::Atom(Factor::Tet([Label::N; 6])));
    assert_eq!(e.num_vars, 0);
}

#[test]
fn empty_sequence_at_root_is_sixj() {
    let e = build_expression(&MoveSequence::default(), TwistMode::Strict).unwrap();
    for n in [3, 5, 7, 9] {
        let v = eval_at_root(&e, n, &cfg()).unwrap().value;
        let s = sixj_n(n).unwrap();
        assert!((v.re - s).abs() <= 1e-9 * s && v.im.abs() <= 1e-9 * s, "N={n}: {v}");
    }
    for n in [2, 4, 6] {
        assert_eq!(eval_at_root(&e, n, &cfg()).unwrap().value.norm(), 0.0);
        assert!(eval_generic(&e, n, &cfg()).unwrap().is_zero());
    }
}

#[test]
fn color_one_is_trivial() {
    for text in ["tet", "tet\nA v1", "tet\nU e5", "tet\nA v1\nU e1\nU e8", "tet\nH+ e1\nU e1 rings=2"] {
        let s = seq(text);
        let e = build_expression(&s, TwistMode::Lenient).unwrap();
        let v = normalize_generic(&eval_generic(&e, 1, &cfg()).unwrap(), 1, s.declared_split_components);
        assert_eq!(v, RatFun::one(), "{text}");
    }
}

#[test]
fn theta_matches_closed_formula() {
    let s = seq("tet\nA v1\nU e1\nU e8");
    let e = build_expression(&s, TwistMode::Strict).unwrap();
    for k in 1..=2u32 {
        let n = 2 * k + 1;
        let got = normalize_generic(&eval_generic(&e, n, &cfg()).unwrap(), n, 1);
        let num = qfact(3 * k + 1) * qfact(k).pow(3);
        let den = qfact(2 * k).pow(3) * qint(2 * k as i64 + 1);
        let mut want = RatFun::new(num, den).unwrap();
        if k % 2 == 1 {
            want = -want;
        }
        assert_eq!(got, want, "N={n}");
    }
}

#[test]
fn one_unzip_expression_shape() {
    let e = build_expression(&seq("tet\nU e5 rings=1"), TwistMode::Strict).unwrap();
    let ExprNode::Sum { var, fused, .. } = &e.root else { panic!("{:?}", e.root) };
    assert_eq!((*var, *fused), (0, (Label::N, Label::N)));
    assert_eq!(e.count_summands(5, usize::MAX), 5);
}

#[test]
fn twisted_unzip_is_refused_in_strict_mode() {
    let s = seq("tet\nH+ e5\nU e5 rings=1");
    assert!(matches!(
        build_expression(&s, TwistMode::Strict),
        Err(EngineError::TwistedUnzip { twist: 1, .. })
    ));
    assert!(build_expression(&s, TwistMode::Lenient).is_ok());
}

#[test]
fn ring_bound_grows_with_unzips() {
    let b0 = sufficient_ring_count(&MoveSequence::default()).unwrap();
    let b1 = sufficient_ring_count(&seq("tet\nU e5")).unwrap();
    assert_eq!(b0.f, 13);
    assert!(b0.n >= 1 && b1.n > b0.n, "{b0:?} {b1:?}");
}

#[test]
fn one_unzip_matches_closed_form_at_five() {
    let base = seq("tet\nU e5");
    let bound = sufficient_ring_count(&base).unwrap();
    let s = augment(&base, &RingSpec::Uniform(bound.n)).unwrap();
    let e = build_expression(&s, TwistMode::Strict).unwrap();
    let single = augment(&base, &RingSpec::Uniform(1)).unwrap();
    for n in [3, 5, 7] {
        let v = eval_at_root(&e, n, &cfg()).unwrap().value;
        let c = augmented_closed_form(&s, n).unwrap();
        assert!((v - c).norm() <= 1e-9 * c.norm(), "N={n}: {v} vs {c}");
        let v1 = eval_at_root(&build_expression(&single, TwistMode::Strict).unwrap(), n, &cfg()).unwrap().value;
        eprintln!("N={n} one ring: {v1} closed {}", augmented_closed_form(&single, n).unwrap());
    }
    let c5 = augmented_closed_form(&augment(&base, &RingSpec::Uniform(1)).unwrap(), 5).unwrap();
    assert!((c5.re - 44.27).abs() < 0.01, "{c5}");
}

#[test]
fn only_the_all_n_channel_survives() {
    let base = seq("tet\nA v1\nU e1\nU e8");
    let bound = sufficient_ring_count(&base).unwrap();
    let s = augment(&base, &RingSpec::Uniform(bound.n)).unwrap();
    let e = build_expression(&s, TwistMode::Strict).unwrap();
    for n in [3, 5] {
        for (assignment, jet) in summand_jets(&e, n, 4, &cfg()).unwrap() {
            // One more than the normalizing unknot.
            let v = jet.valuation().unwrap_or(i64::MAX);
            if assignment.iter().all(|&c| c == n) {
                assert_eq!(v, 1, "N={n}");
            } else {
                assert!(v > 1, "N={n} {assignment:?}: valuation {v}");
            }
        }
    }
}

#[test]
fn generic_point_agrees_with_exact_value() {
    use num_complex::Complex64;
    use ktg_core::jonesengine::eval_at_point;
    let s = seq("tet\nA v1\nU e1\nU e8");
    let e = build_expression(&s, TwistMode::Strict).unwrap();
    let a = Complex64::from_polar(1.1, 0.3);
    let exact = normalize_generic(&eval_generic(&e, 3, &cfg()).unwrap(), 3, 1).eval(a).unwrap();
    let num = eval_at_point(&e, 3, a, &cfg()).unwrap();
    assert!((exact - num).norm() < 1e-9 * exact.norm());
}
