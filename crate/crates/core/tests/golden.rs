//! M(s,t) against the matrices transcribed into tests/golden.

use fatsph::arith::{Evaluator, GuardConfig};
use fatsph::patmat::{self, BinaryMatrix, DEFAULT_SIZE_CAP};
use std::path::PathBuf;

fn golden(s: u64, t: u64) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "golden", &format!("M_{s}_{t}.txt")].iter().collect();
    std::fs::read_to_string(p).unwrap()
}

const CASES: [(u64, u64); 11] = [(1, 1), (1, 2), (1, 3), (1, 4), (2, 1), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (3, 3)];

#[test]
fn matrices_match_golden_files() {
    let mut ev = Evaluator::new(GuardConfig::default());
    for (s, t) in CASES {
        let (m, _) = patmat::build_m(&mut ev, s, t, DEFAULT_SIZE_CAP).unwrap();
        assert_eq!(m.to_text(None), golden(s, t), "M({s},{t})");
    }
}

#[test]
fn golden_weights() {
    let w = [1, 2, 3, 4, 2, 6, 10, 14, 2, 14, 50];
    for ((s, t), w) in CASES.into_iter().zip(w) {
        let (m, _) = BinaryMatrix::from_text(&golden(s, t)).unwrap();
        assert_eq!(m.weight(), w, "M({s},{t})");
    }
}

#[test]
fn text_with_blocks_round_trips() {
    let mut ev = Evaluator::new(GuardConfig::default());
    for (s, t) in [(2, 3), (3, 3), (4, 2)] {
        let (m, b) = patmat::build_m(&mut ev, s, t, DEFAULT_SIZE_CAP).unwrap();
        let (m2, b2) = BinaryMatrix::from_text(&m.to_text(Some(&b))).unwrap();
        assert_eq!(m2, m);
        assert_eq!(b2.as_ref(), Some(&b));
        assert!(patmat::verify_blocks(&m2, &b, &mut ev, s, t));
    }
}

#[test]
fn extension_matches_direct_build() {
    let mut ev = Evaluator::new(GuardConfig::default());
    for s in 2..=4 {
        let mut prev = patmat::build_m(&mut ev, s, 1, DEFAULT_SIZE_CAP).unwrap();
        for t in 2..=4 {
            let Ok(next) = patmat::extend_m(&mut ev, s, &prev, DEFAULT_SIZE_CAP) else { break };
            assert_eq!(next, patmat::build_m(&mut ev, s, t, DEFAULT_SIZE_CAP).unwrap(), "M({s},{t})");
            prev = next;
        }
    }
}
