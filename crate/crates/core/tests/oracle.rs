//! Independent evaluations of the recursive functions, checked against the
//! library and against counts on built complexes.

use fatsph::arith::{Evaluator, FVector, GuardConfig};
use fatsph::build;
use num_bigint::BigUint;
use num_traits::One;
use std::collections::HashMap;

type N = BigUint;

fn n(v: u64) -> N {
    N::from(v)
}

fn small(v: &N) -> u64 {
    v.to_u64_digits().first().copied().unwrap_or(0)
}

/// Naive A, no shortcuts.
fn a(s: u64, t: u64) -> N {
    if s == 1 {
        return n(2 * t);
    }
    if t == 1 {
        return n(2);
    }
    let inner = a(s, t - 1);
    a(s - 1, small(&inner))
}

fn c(s: u64, t: u64) -> N {
    if s == 1 {
        return N::one();
    }
    if t == 1 {
        return n(2);
    }
    let p = c(s, t - 1);
    let q = c(s - 1, small(&p));
    p * q
}

#[derive(Default)]
struct Kt {
    memo: HashMap<(u64, u64), (N, N)>,
    r: HashMap<(u64, u64), N>,
    f: HashMap<(u64, u64), [N; 4]>,
}

impl Kt {
    /// Fills `K(s,1..=t)` bottom-up so the recursion depth stays in `s`.
    fn kk(&mut self, s: u64, t: u64) -> (N, N) {
        if let Some(v) = self.memo.get(&(s, t)) {
            return v.clone();
        }
        if s == 1 {
            return (n(2), n(5));
        }
        let mut u = t;
        while u > 1 && !self.memo.contains_key(&(s, u - 1)) {
            u -= 1;
        }
        for u in u.max(1)..=t {
            let v = if u == 1 {
                (n(1 << s), n((1 << s) + 3))
            } else {
                let (k, kp) = self.memo[&(s, u - 1)].clone();
                let (x, y) = self.kk(s - 1, small(&kp));
                (&k * &x, &kp * &x + y)
            };
            self.memo.insert((s, u), v);
        }
        self.memo[&(s, t)].clone()
    }

    fn r(&mut self, s: u64, t: u64) -> N {
        if s == 1 || t == 1 {
            return n(0);
        }
        if let Some(v) = self.r.get(&(s, t)) {
            return v.clone();
        }
        let kp = small(&self.kk(s, t - 1).1);
        let v = n(2) * self.kk(s - 1, kp).0 + self.r(s - 1, kp);
        self.r.insert((s, t), v.clone());
        v
    }

    fn f(&mut self, s: u64, t: u64) -> [N; 4] {
        if s == 1 && t > 1 {
            return [n(2 * t + 7), n(10 * t + 15), n(16 * t + 12), n(8 * t + 4)];
        }
        if t == 1 {
            let p = 1u64 << s;
            return [n(2 * p + 5), n(6 * p + 9), n(8 * p + 8), n(4 * p + 4)];
        }
        if let Some(v) = self.f.get(&(s, t)) {
            return v.clone();
        }
        let kp = self.kk(s, t - 1).1;
        let m = self.kk(s - 1, small(&kp)).0;
        let r = self.r(s, t - 1);
        let p = self.f(s, t - 1);
        let q = self.f(s - 1, small(&kp));
        let v = [
            &m * (&p[0] + &r - n(2)) + &q[0],
            &m * (&p[1] + n(3) * &kp + n(3) * &r - n(4)) + &q[1],
            &m * (&p[2] + n(3) * &kp + n(4) * &r + n(1)) + &q[2],
            &m * (&p[3] + n(2) * &r + n(3)) + &q[3],
        ];
        self.f.insert((s, t), v.clone());
        v
    }
}

fn fv(v: [N; 4]) -> FVector {
    let [a, b, c, d] = v;
    FVector::new(a, b, c, d)
}

#[test]
fn ackermann_and_c_agree_with_naive_recursion() {
    let mut ev = Evaluator::new(GuardConfig::default());
    for s in 1..=4 {
        for t in 1..=4 {
            if (s, t) != (4, 4) {
                assert_eq!(ev.ackermann(s, t).unwrap(), a(s, t), "A({s},{t})");
            }
            if s < 4 || t < 4 {
                assert_eq!(ev.c_fn(s, t).unwrap(), c(s, t), "C({s},{t})");
            }
        }
    }
    for t in 1..=12 {
        assert_eq!(ev.ackermann(2, t).unwrap(), n(1 << t));
        assert_eq!(ev.c_fn(3, t).unwrap(), n(1 << t));
    }
}

#[test]
fn k_r_f_agree_with_naive_recursion() {
    let mut ev = Evaluator::new(GuardConfig::default());
    let mut o = Kt::default();
    let grid: Vec<(u64, u64)> = (1..=3).flat_map(|s| (1..=8).map(move |t| (s, t))).filter(|&(s, t)| s < 3 || t <= 3).collect();
    for (s, t) in grid {
        let (k, kp) = o.kk(s, t);
        assert_eq!(ev.k_fn(s, t).unwrap(), k, "K({s},{t})");
        assert_eq!(ev.kprime_fn(s, t).unwrap(), kp, "K'({s},{t})");
        assert_eq!(ev.r_fn(s, t).unwrap(), o.r(s, t), "R({s},{t})");
        if s < 3 || t <= 2 {
            assert_eq!(ev.f_vec(s, t).unwrap(), fv(o.f(s, t)), "F({s},{t})");
        }
    }
}

/// Frozen from the naive recursion above.
const S2: [(u64, [u64; 4]); 7] = [
    (2, [43, 185, 248, 106]),
    (3, [135, 705, 960, 390]),
    (4, [367, 2129, 2912, 1150]),
    (5, [927, 5745, 7872, 3054]),
    (6, [2239, 14513, 19904, 7630]),
    (7, [5247, 35121, 48192, 18318]),
    (8, [12031, 82481, 113216, 42766]),
];

#[test]
fn frozen_face_numbers() {
    let mut o = Kt::default();
    for (t, f) in S2 {
        assert_eq!(fv(o.f(2, t)), FVector::from_u64(f));
    }
    assert_eq!(fv(o.f(3, 2)), FVector::from_u64([210943, 1306673, 1744960, 649230]));
    assert_eq!(o.r(3, 2), n(8196));
    assert_eq!(o.kk(2, 8), (n(512), n(1531)));
}

#[test]
fn built_spheres_match_frozen_values() {
    for (t, f) in S2.iter().take(5) {
        assert_eq!(build::build_s(2, *t).unwrap().complex.f_vector(), *f, "S(2,{t})");
    }
    for t in 2..=12u64 {
        let x = build::build_s(1, t).unwrap();
        assert_eq!(x.complex.f_vector(), [2 * t + 7, 10 * t + 15, 16 * t + 12, 8 * t + 4]);
    }
}

#[test]
fn ball_counts_match_k() {
    let mut o = Kt::default();
    for (s, t) in [(1, 3), (1, 7), (2, 2), (2, 3), (2, 4)] {
        let x = build::build_x(s, t).unwrap();
        let (k, kp) = o.kk(s, t);
        assert_eq!(n(x.meta.fillets.len() as u64), k, "fillets of X({s},{t})");
        assert_eq!(n(x.meta.roots.len() as u64), kp, "roots of X({s},{t})");
        let r = x.meta.root_triangles.len() as i64 - x.meta.teeth.len() as i64;
        assert_eq!(n(r as u64), o.r(s, t), "R of X({s},{t})");
    }
}
