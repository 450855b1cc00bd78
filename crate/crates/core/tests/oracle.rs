mod common;

use common::{channels, colorings6, fused, parallel, trace_closure, vertex_closure};
use ktg_core::qarith::{RatFun, TwistLaurent};
use ktg_core::qsymbols::{
    admissible, halftwist_coeff, ring_coeff, tet_value, theta_value, unknot_value, QMonomial,
    Sign, TetLabels,
};
use ktg_core::tloracle::{bracket_primitive, Primitive, TlError};

#[test]
fn mobius_band_color_three() {
    let v = bracket_primitive(Primitive::TwistedEdge(3, Sign::Plus)).unwrap();
    let expect = -(TwistLaurent::a_pow(8) + TwistLaurent::a_pow(4) + TwistLaurent::one());
    assert_eq!(v.as_poly(), Some(&expect));
}

#[test]
fn theta_formula_matches_oracle() {
    let mut checked = 0;
    for a in 1..=3 {
        for b in 1..=3 {
            for c in 1..=3 {
                if !admissible(a, b, c) {
                    assert_eq!(
                        bracket_primitive(Primitive::Theta(a, b, c)).unwrap_err(),
                        TlError::InadmissibleTriple(a, b, c)
                    );
                    continue;
                }
                let oracle = bracket_primitive(Primitive::Theta(a, b, c)).unwrap();
                assert_eq!(theta_value(a, b, c).unwrap(), oracle, "({a},{b},{c})");
                checked += 1;
            }
        }
    }
    assert!(checked >= 7);
}

#[test]
fn tet_formula_matches_oracle() {
    let mut checked = 0;
    for j in colorings6(3) {
        let Ok(labels) = TetLabels::new(j) else {
            continue;
        };
        let oracle = bracket_primitive(Primitive::Tet(j)).unwrap();
        assert_eq!(tet_value(&labels), oracle, "{j:?}");
        checked += 1;
    }
    assert!(checked > 20, "{checked}");
}

#[test]
fn twisted_band_equals_coefficient_times_band() {
    for k in 1..=4 {
        for s in [Sign::Plus, Sign::Minus] {
            let v = bracket_primitive(Primitive::TwistedEdge(k, s)).unwrap();
            let expect = RatFun::from_poly(&halftwist_coeff(k, s) * &unknot_value(k));
            assert_eq!(v, expect, "k = {k}, {s:?}");
        }
    }
}

#[test]
fn ring_around_an_edge() {
    for (k, n) in [(2, 2), (1, 3), (2, 3), (3, 2), (3, 3)] {
        let v = bracket_primitive(Primitive::Encircled { k, n }).unwrap();
        let expect = ring_coeff(k, n) * RatFun::from_poly(unknot_value(k));
        assert_eq!(v, expect, "k = {k}, N = {n}");
    }
}

#[test]
fn fusion_identity_in_both_closures() {
    for a in 1..=3 {
        for b in 1..=3 {
            let lhs = trace_closure(a, b, |d| {
                parallel(d, 2, false);
            });
            let mut rhs = RatFun::zero();
            for c in channels(a, b) {
                let f = QMonomial::fusion(a, b, c).unwrap().to_ratfun();
                rhs = rhs + f * trace_closure(a, b, |d| fused(d, 2, a, b, c, false));
            }
            assert_eq!(lhs, rhs, "trace closure ({a},{b})");
            for e in channels(a, b) {
                let lhs = vertex_closure(a, b, e, |d| {
                    parallel(d, 1, false);
                });
                let mut rhs = RatFun::zero();
                for c in channels(a, b) {
                    let f = QMonomial::fusion(a, b, c).unwrap().to_ratfun();
                    rhs = rhs + f * vertex_closure(a, b, e, |d| fused(d, 1, a, b, c, false));
                }
                assert_eq!(lhs, rhs, "vertex closure ({a},{b}) -> {e}");
            }
        }
    }
}

/// Unzipping a half-twisted edge leaves two strands that cross once and
/// each carry a half twist; fusing them back yields the twisted edge with
/// no further correction.
#[test]
fn twisted_pair_fuses_to_twisted_edge() {
    for a in 1..=3 {
        for b in 1..=3 {
            for e in channels(a, b) {
                let lhs = vertex_closure(a, b, e, |d| {
                    parallel(d, 1, true);
                });
                let mut rhs = RatFun::zero();
                for c in channels(a, b) {
                    let f = QMonomial::fusion(a, b, c)
                        .unwrap()
                        .mul(&QMonomial::halftwist(c, Sign::Plus))
                        .to_ratfun();
                    rhs = rhs + f * vertex_closure(a, b, e, |d| fused(d, 1, a, b, c, true));
                }
                assert_eq!(lhs, rhs, "twisted ({a},{b}) -> {e}");
                let direct = QMonomial::halftwist(e, Sign::Plus)
                    .mul(&QMonomial::theta(a, b, e).unwrap())
                    .to_ratfun();
                assert_eq!(lhs, direct, "twisted ({a},{b}) -> {e}");
            }
        }
    }
}
