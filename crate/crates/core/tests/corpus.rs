//! Replays the checked-in fuzz seeds through the parsers.

use std::fs;
use std::path::Path;

use heatframe::grammar::{parse_operator, parse_polynomial};

fn seeds(target: &str) -> Vec<String> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<String> = fs::read_dir(dir).unwrap().map(|e| fs::read_to_string(e.unwrap().path()).unwrap()).collect();
    out.sort();
    assert!(!out.is_empty());
    out
}

#[test]
fn polynomial_seeds_round_trip() {
    for src in seeds("parse_polynomial") {
        let p = parse_polynomial(&src).unwrap_or_else(|e| panic!("{src:?}: {e}"));
        assert_eq!(parse_polynomial(&p.to_string()).unwrap(), p);
    }
}

#[test]
fn operator_seeds_round_trip() {
    for src in seeds("parse_operator") {
        let op = parse_operator(&src).unwrap_or_else(|e| panic!("{src:?}: {e}"));
        assert_eq!(parse_operator(&op.to_string()).unwrap(), op);
    }
}

#[test]
fn garbage_is_rejected_without_panicking() {
    for src in ["", "*", "z2", "l3", "psi[]", "psi[2]", "1/0", "d/dz", "z1^", "((z1)", "d/dl5", "\u{0}", "z1 z3 +"] {
        let _ = parse_polynomial(src);
        let _ = parse_operator(src);
    }
    assert!(parse_polynomial("z2").is_err());
    assert!(parse_polynomial("1/0").is_err());
}
