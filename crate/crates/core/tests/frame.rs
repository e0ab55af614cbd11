mod common;

use common::genus;
use heatframe::frame::*;
use heatframe::grammar::parse_polynomial;
use heatframe::operator::{dl, mult};
use heatframe::rational::ratio;
use heatframe::report::Status;
use heatframe::{Polynomial, Var};

fn p(s: &str) -> Polynomial {
    parse_polynomial(s).unwrap()
}

#[test]
fn genus_one_fields_by_hand() {
    let l = build_l(genus(1));
    let l0 = &mult(p("4*l4")).compose(&dl(4)) + &mult(p("6*l6")).compose(&dl(6));
    let l2 = &mult(p("6*l6")).compose(&dl(4)) + &mult(p("-4/3*l4^2")).compose(&dl(6));
    assert_eq!(l, vec![l0, l2]);
}

#[test]
fn t_matches_printed_for_every_genus() {
    for (g, entries) in [(1, 4), (2, 16), (3, 36)] {
        let report = check_t_against_printed(genus(g));
        assert_eq!(report.checks.len(), entries);
        assert!(report.passed(), "{:?}", report.failures().next());
    }
}

#[test]
fn t_is_symmetric_with_euler_first_row() {
    for g in 1..=3 {
        let t = build_t(genus(g));
        for r in 0..t.size() {
            for c in 0..t.size() {
                assert_eq!(t.at(r, c), t.at(c, r));
            }
        }
        for (c, s) in genus(g).lambda_labels().into_iter().enumerate() {
            assert_eq!(t.at(0, c), &(&Polynomial::var(Var::Lambda(s)) * &ratio(s as i64, 1)));
        }
    }
}

#[test]
fn frame_relations_hold_for_both_framings() {
    for g in 1..=3 {
        let fam = build_q(genus(g)).unwrap();
        for kind in [FrameKind::L, FrameKind::Q] {
            let report = verify_frame_relations(&fam, kind);
            assert!(report.passed(), "g{g} {}: {:?}", kind.name(), report.failures().next());
        }
    }
}

#[test]
fn genus_two_lists_all_brackets() {
    let fam = build_q(genus(2)).unwrap();
    let report = verify_frame_relations(&fam, FrameKind::L);
    for id in ["g2/[L2,L4]", "g2/[L2,L6]", "g2/[L4,L6]", "g2/[L2,L4]/unique"] {
        assert_eq!(report.find(id).map(|c| c.status), Some(Status::Pass), "{id}");
    }
}

#[test]
fn perturbed_heat_operator_is_caught() {
    let fam = build_q(genus(2)).unwrap();
    let bad = &fam.h[1] + &mult(p("l4*z1^2"));
    let report = verify_frame_relations(&fam.with_h(1, bad), FrameKind::Q);
    let failure = report.failures().next().expect("a corrupted H must fail");
    assert_ne!(failure.witness, "0");
    assert!(!failure.witness.is_empty());
}

#[test]
fn isomorphism_of_framings() {
    for g in 1..=3 {
        let report = check_isomorphism(&build_q(genus(g)).unwrap());
        assert!(report.passed(), "{:?}", report.failures().next());
    }
}

#[test]
fn lie_axioms_on_samples() {
    let fam = build_q(genus(2)).unwrap();
    for kind in [FrameKind::L, FrameKind::Q] {
        let report = check_polynomial_lie_axioms(&fam, kind, 20, 7);
        assert!(report.passed(), "{:?}", report.failures().next());
    }
}

#[test]
fn shape_constants() {
    let expected: [&[&str]; 3] = [&["-1", "0"], &["-3", "0", "-1", "-1/2"], &["-6", "0", "-3", "-2", "-1", "-1/2"]];
    for (g, want) in (1..=3).zip(expected) {
        let shape = shape_check(&build_q(genus(g)).unwrap()).unwrap();
        assert!(shape.report.passed());
        let got: Vec<&str> = shape.constants.iter().map(|c| c.constant.as_str()).collect();
        assert_eq!(got, want, "g{g}");
    }
}

#[test]
fn genus_two_q6_from_lower_operators() {
    let fam = build_q(genus(2)).unwrap();
    let q = &fam.q;
    let expr = &(&q[1].commutator(&q[2]).scale(&ratio(1, 2)) - &q[0].left_mul(&p("4/5*l6"))) + &q[1].left_mul(&p("4/5*l4"));
    assert_eq!(expr, q[3]);
    let red = sufficiency_reduction(&fam).unwrap();
    assert!(red.residuals(&fam).iter().all(|r| r.is_zero()));
}

#[test]
fn genus_three_reductions() {
    let fam = build_q(genus(3)).unwrap();
    let q = &fam.q;
    let cases = [(3, 2, "1/2", "8/7*l6", "8/7*l4"), (4, 3, "1/4", "3/7*l8", "3/7*l4"), (5, 4, "1/6", "4/21*l10", "4/21*l4")];
    for (target, other, half, c0, c) in cases {
        let bracket = q[1].commutator(&q[other]).scale(&parse_polynomial(half).unwrap().as_constant().unwrap());
        let expr = &(&bracket - &q[0].left_mul(&p(c0))) + &q[target - 2].left_mul(&p(c));
        assert_eq!(expr, q[target], "Q{}", 2 * target);
    }
    let red = sufficiency_reduction(&fam).unwrap();
    assert_eq!(red.steps.len(), 3);
    assert!(red.residuals(&fam).iter().all(|r| r.is_zero()));
}

#[test]
fn unsupported_genus() {
    assert!(heatframe::Genus::new(4).is_err() || build_q(heatframe::Genus::new(4).unwrap()).is_err());
}

#[test]
fn determinant_small() {
    let rows = vec![vec![p("l4"), p("1")], vec![p("2"), p("l6")]];
    assert_eq!(determinant(&rows), p("l4*l6 - 2"));
}
