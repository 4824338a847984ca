//! Acceptance criteria 1 to 12, with their time and memory limits.
//!
//! Built complexes are cached across criteria so that a full run builds each
//! ball once.

use crate::arith::{ArithError, BigNat, Evaluator, FVector, GuardConfig, Magnitude};
use crate::build::{self, BallComplex, SphereComplex};
use crate::cw::{CwComplex, RegularityMode};
use crate::metrics;
use crate::patmat::{self, patterns};
use crate::realize;
use crate::shelling;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::{Duration, Instant};

pub const ALL: [u8; 12] = [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12];

const NAMES: [&str; 12] = [
    "table-1",
    "table-3",
    "inequality-grids",
    "matrix-suite",
    "moment-suite",
    "sphere-f-vectors",
    "construction-invariants",
    "shellings",
    "face-bands",
    "ziegler",
    "realize-s12",
    "euler-and-boundaries",
];

/// Named groups of criteria.
pub fn suite(name: &str) -> Option<&'static [u8]> {
    Some(match name {
        "all" => &ALL,
        "arith" => &[1, 2, 3],
        "arith-lemmas" => &[3],
        "tables" => &[1, 2],
        "matrix" => &[4, 5],
        "spheres-small" => &[6, 8],
        "construction" => &[7, 12],
        "metrics" => &[9, 10],
        "realize" => &[11],
        _ => {
            let n: u8 = name.parse().ok()?;
            return ALL.iter().position(|&k| k == n).map(|i| &ALL[i..=i]);
        }
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub pass: bool,
    pub seconds: f64,
    pub detail: String,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!(
            "criterion {:>2} {:<24} {}  {:>8.2} s  {}",
            self.id,
            self.name,
            if self.pass { "PASS" } else { "FAIL" },
            self.seconds,
            self.detail
        )
    }
}

/// Runs the given criteria in order, reporting each as it finishes.
pub fn run(ids: &[u8], on_each: &mut dyn FnMut(&CriterionResult)) -> Vec<CriterionResult> {
    let mut ctx = Ctx::default();
    let mut out = Vec::new();
    for &id in ids {
        let t0 = Instant::now();
        let r = match id {
            1 => c01(),
            2 => c02(),
            3 => c03(),
            4 => c04(),
            5 => c05(),
            6 => c06(&mut ctx),
            7 => c07(&mut ctx),
            8 => c08(&mut ctx),
            9 => c09(&mut ctx),
            10 => c10(&mut ctx),
            11 => c11(&mut ctx),
            12 => c12(&mut ctx),
            _ => Outcome::fail(format!("no criterion {id}")),
        };
        let res = CriterionResult {
            id,
            name: NAMES.get(id as usize - 1).copied().unwrap_or("?"),
            pass: r.pass,
            seconds: t0.elapsed().as_secs_f64(),
            detail: r.detail,
        };
        on_each(&res);
        out.push(res);
    }
    out
}

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn fail(d: impl Into<String>) -> Self {
        Outcome { pass: false, detail: d.into() }
    }
}

/// Collects checks; the first few failures are kept for the report.
#[derive(Default)]
struct Tally {
    checked: usize,
    undecided: usize,
    failures: Vec<String>,
    nfail: usize,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.nfail += 1;
            if self.failures.len() < 5 {
                self.failures.push(what());
            }
        }
    }
    fn maybe(&mut self, ok: Option<bool>, what: impl FnOnce() -> String) {
        match ok {
            Some(b) => self.check(b, what),
            None => self.undecided += 1,
        }
    }
    fn time(&mut self, el: Duration, limit: Duration, what: &str) {
        self.check(el < limit, || format!("{what} took {:.2} s, limit {:.0} s", el.as_secs_f64(), limit.as_secs_f64()));
    }
    fn outcome(self, extra: &str) -> Outcome {
        let mut d = format!("{} checks", self.checked);
        if self.undecided > 0 {
            let _ = write!(d, ", {} beyond the guard", self.undecided);
        }
        if !extra.is_empty() {
            let _ = write!(d, ", {extra}");
        }
        if self.nfail > 0 {
            let _ = write!(d, "; {} failed: {}", self.nfail, self.failures.join("; "));
        }
        Outcome { pass: self.nfail == 0 && self.checked > 0, detail: d }
    }
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

fn ev() -> Evaluator {
    Evaluator::new(GuardConfig::default())
}

fn pow2(e: u64) -> BigNat {
    BigNat::one() << e
}

fn nat(v: u64) -> BigNat {
    BigNat::from(v)
}

// ---------------------------------------------------------------------------
// 1, 2: tables

fn c01() -> Outcome {
    let t0 = Instant::now();
    let mut e = ev();
    let mut ty = Tally::default();
    let a_rows: [[Option<BigNat>; 4]; 4] = [
        [Some(nat(2)), Some(nat(4)), Some(nat(6)), Some(nat(8))],
        [Some(nat(2)), Some(nat(4)), Some(nat(8)), Some(nat(16))],
        [Some(nat(2)), Some(nat(4)), Some(nat(16)), Some(pow2(16))],
        [Some(nat(2)), Some(nat(4)), Some(pow2(16)), None],
    ];
    let c_rows: [[BigNat; 4]; 4] = [
        [nat(1), nat(1), nat(1), nat(1)],
        [nat(2), nat(2), nat(2), nat(2)],
        [nat(2), nat(4), nat(8), nat(16)],
        [nat(2), nat(8), pow2(11), pow2(11 + 2048)],
    ];
    for s in 1..=4u64 {
        for t in 1..=4u64 {
            let (i, j) = (s as usize - 1, t as usize - 1);
            let got = e.ackermann(s, t);
            match &a_rows[i][j] {
                Some(v) => ty.check(got.as_ref() == Ok(v), || format!("A({s},{t})")),
                None => ty.check(got.as_ref().is_err_and(|e| e.is_guard()), || format!("A({s},{t}) not guarded")),
            }
            ty.check(e.c_fn(s, t).as_ref() == Ok(&c_rows[i][j]), || format!("C({s},{t})"));
        }
    }
    let mut sink = Vec::new();
    let code = super::dispatch_to(["fatsph", "fn", "eval", "--which", "A", "--s", "4", "--t", "4"], &mut sink, &mut Vec::new());
    ty.check(code == super::EXIT_GUARD, || format!("A(4,4) exit code {code}"));
    ty.time(t0.elapsed(), secs(1), "tables");
    ty.outcome("")
}

fn c02() -> Outcome {
    let t0 = Instant::now();
    let mut e = ev();
    let mut ty = Tally::default();
    let k: [[BigNat; 3]; 3] = [
        [nat(2), nat(2), nat(2)],
        [nat(4), nat(8), nat(16)],
        [nat(8), pow2(15), pow2(7 * 8192 + 11)],
    ];
    let kp: [[BigNat; 3]; 3] = [
        [nat(5), nat(5), nat(5)],
        [nat(7), nat(19), nat(43)],
        [nat(11), nat(7 * 8192 - 5), (nat(7 * 4096 - 1) << (7 * 8192 - 3)) - nat(5)],
    ];
    for s in 1..=3u64 {
        for t in 1..=3u64 {
            let (i, j) = (s as usize - 1, t as usize - 1);
            ty.check(e.k_fn(s, t).as_ref() == Ok(&k[i][j]), || format!("K({s},{t})"));
            ty.check(e.kprime_fn(s, t).as_ref() == Ok(&kp[i][j]), || format!("K'({s},{t})"));
        }
    }
    let bits = e.k_fn(3, 3).map(|v| v.bits()).unwrap_or(0);
    ty.time(t0.elapsed(), secs(5), "tables");
    ty.outcome(&format!("K(3,3) has {bits} bits"))
}

// ---------------------------------------------------------------------------
// 3: inequality grids

/// Guarded value; `None` when even the size bound is out of reach.
fn mag(r: Result<BigNat, ArithError>) -> Option<Magnitude> {
    match Magnitude::from_result(r) {
        Ok(m) => Some(m),
        Err(_) => None,
    }
}

fn scale(m: &Magnitude, k: u64) -> Magnitude {
    match m {
        Magnitude::Exact(v) => Magnitude::Exact(v * k),
        Magnitude::Above(b) => Magnitude::Above(*b),
    }
}

fn lt(a: &Option<Magnitude>, b: &Option<Magnitude>) -> Option<bool> {
    a.as_ref()?.lt(b.as_ref()?)
}

fn le(a: &Option<Magnitude>, b: &Option<Magnitude>) -> Option<bool> {
    a.as_ref()?.le(b.as_ref()?)
}

fn exact(v: BigNat) -> Option<Magnitude> {
    Some(Magnitude::Exact(v))
}

fn c03() -> Outcome {
    let t0 = Instant::now();
    let mut e = ev();
    let mut ty = Tally::default();
    let a = |e: &mut Evaluator, s, t| mag(e.ackermann(s, t));
    // ackermann-properties
    for s in 1..=6u64 {
        for t in 1..=6u64 {
            let v = a(&mut e, s, t);
            let next = a(&mut e, s, t + 1);
            ty.maybe(lt(&v, &next), || format!("A({s},{t}) < A({s},{})", t + 1));
            if t > 1 {
                ty.maybe(le(&exact(nat(t + 2)), &v), || format!("A({s},{t}) >= t+2"));
            }
            if t > 2 {
                let up = a(&mut e, s + 1, t);
                ty.maybe(le(&next, &up), || format!("A({},{t}) >= A({s},{})", s + 1, t + 1));
            }
            if t == 3 {
                ty.maybe(le(&exact(pow2(s + 1)), &v), || format!("A({s},3) >= 2^{}", s + 1));
            }
        }
    }
    // c-properties
    for s in 1..=6u64 {
        for t in 1..=6u64 {
            let v = mag(e.c_fn(s, t));
            let next = mag(e.c_fn(s, t + 1));
            ty.maybe(le(&v, &next), || format!("C({s},{}) >= C({s},{t})", t + 1));
            if s > 2 {
                ty.maybe(le(&v.as_ref().map(|m| scale(m, 2)), &next), || format!("C({s},{}) >= 2C({s},{t})", t + 1));
            }
        }
    }
    // inverse-ackermann sandwich
    for s in 2..=4u64 {
        for t in 1..=6u64 {
            let tc = mag(e.c_fn(s, t)).map(|m| scale(&m, t));
            let lo = a(&mut e, s - 1, t);
            let hi = a(&mut e, s, t + 1);
            ty.maybe(le(&lo, &tc), || format!("A({},{t}) <= tC({s},{t})", s - 1));
            ty.maybe(lt(&tc, &hi), || format!("tC({s},{t}) < A({s},{})", t + 1));
        }
    }
    // K inequalities
    for s in 1..=3u64 {
        for t in 1..=6u64 {
            let k = mag(e.k_fn(s, t));
            let kp = mag(e.kprime_fn(s, t));
            let k1 = mag(e.k_fn(s, t + 1));
            let kp1 = mag(e.kprime_fn(s, t + 1));
            ty.maybe(le(&k, &k1), || format!("K({s},{}) >= K({s},{t})", t + 1));
            ty.maybe(le(&kp, &kp1), || format!("K'({s},{}) >= K'({s},{t})", t + 1));
            if s > 1 {
                ty.maybe(lt(&kp.as_ref().map(|m| scale(m, 2)), &kp1), || format!("K'({s},{}) > 2K'({s},{t})", t + 1));
            }
            ty.maybe(lt(&k, &kp), || format!("K'({s},{t}) > K({s},{t})"));
            ty.maybe(le(&exact(pow2(s * t - t + 1)), &k), || format!("K({s},{t}) >= 2^(st-t+1)"));
            // quotient: K < K' < (1 + 2^(3-s)) K
            if let (Some(Magnitude::Exact(kv)), Some(Magnitude::Exact(kpv))) = (&k, &kp) {
                let q = BigRational::new(BigInt::from(kpv.clone()), BigInt::from(kv.clone()));
                let hi = BigRational::one() + BigRational::new(BigInt::from(8), BigInt::from(1u64 << s));
                ty.check(BigRational::one() < q && q < hi, || format!("K'/K at ({s},{t})"));
            } else {
                ty.undecided += 1;
            }
            // A(s,t) <= tK < tK' < A(s+1,t+2)
            let tk = k.as_ref().map(|m| scale(m, t));
            let tkp = kp.as_ref().map(|m| scale(m, t));
            let lo = a(&mut e, s, t);
            let hi = a(&mut e, s + 1, t + 2);
            ty.maybe(le(&lo, &tk), || format!("A({s},{t}) <= tK"));
            ty.maybe(lt(&tk, &tkp), || format!("tK < tK' at ({s},{t})"));
            ty.maybe(lt(&tkp, &hi), || format!("tK'({s},{t}) < A({},{})", s + 1, t + 2));
            // 2K(s,t) <= R K(s,t-1) < 3K(s,t)
            if s > 1 && t > 1 {
                match (e.r_fn(s, t), e.k_fn(s, t), e.k_fn(s, t - 1)) {
                    (Ok(r), Ok(kv), Ok(kprev)) => {
                        let rk = &r * &kprev;
                        ty.check(&kv * 2u32 <= rk && rk < &kv * 3u32, || format!("R-bounds at ({s},{t})"));
                    }
                    _ => ty.undecided += 1,
                }
            }
        }
    }
    ty.time(t0.elapsed(), secs(10), "grids");
    ty.outcome("")
}

// ---------------------------------------------------------------------------
// 4, 5: matrices

const GOLDEN: [((u64, u64), &str); 11] = [
    ((1, 1), include_str!("../../tests/golden/M_1_1.txt")),
    ((1, 2), include_str!("../../tests/golden/M_1_2.txt")),
    ((1, 3), include_str!("../../tests/golden/M_1_3.txt")),
    ((1, 4), include_str!("../../tests/golden/M_1_4.txt")),
    ((2, 1), include_str!("../../tests/golden/M_2_1.txt")),
    ((2, 2), include_str!("../../tests/golden/M_2_2.txt")),
    ((2, 3), include_str!("../../tests/golden/M_2_3.txt")),
    ((2, 4), include_str!("../../tests/golden/M_2_4.txt")),
    ((3, 1), include_str!("../../tests/golden/M_3_1.txt")),
    ((3, 2), include_str!("../../tests/golden/M_3_2.txt")),
    ((3, 3), include_str!("../../tests/golden/M_3_3.txt")),
];

/// Largest side `tC(s,t)` of the pattern-avoidance grid; rows `s > 12` repeat `s = 12`.
pub const AVOID_SIDE: u64 = 4096;
pub const AVOID_SMAX: u64 = 12;

fn c04() -> Outcome {
    let t0 = Instant::now();
    let mut e = ev();
    let mut ty = Tally::default();
    for ((s, t), text) in GOLDEN {
        let got = patmat::build_m(&mut e, s, t, patmat::DEFAULT_SIZE_CAP).map(|(m, _)| m.to_text(None));
        ty.check(got.as_deref() == Ok(text), || format!("golden M({s},{t})"));
    }
    let (n, np) = (patterns::n(), patterns::n_prime());
    let mut instances = 0;
    for s in 1..=AVOID_SMAX {
        let mut prev: Option<(patmat::BinaryMatrix, patmat::BlockStructure)> = None;
        for t in 1.. {
            match patmat::side(&mut e, s, t) {
                Ok(side) if side <= nat(AVOID_SIDE) => {}
                _ => break,
            }
            instances += 1;
            let built = match &prev {
                Some(p) => patmat::extend_m(&mut e, s, p, AVOID_SIDE),
                None => patmat::build_m(&mut e, s, t, AVOID_SIDE),
            };
            let (m, b) = match built {
                Ok(x) => prev.insert(x),
                Err(err) => {
                    ty.check(false, || format!("M({s},{t}): {err}"));
                    break;
                }
            };
            ty.check(!patmat::contains(&m, &n), || format!("M({s},{t}) contains N"));
            ty.check(!patmat::contains(&m, &np), || format!("M({s},{t}) contains N'"));
            ty.check(patmat::verify_blocks(&m, &b, &mut e, s, t), || format!("M({s},{t}) blocks"));
            let w = patmat::weight(&m);
            ty.check(patmat::weight_formula(&mut e, s, t).as_ref() == Ok(&w), || format!("M({s},{t}) weight recursion"));
            if t >= s {
                // s/3 < w/n <= s
                let n = m.nrows as u64;
                let w = w.to_u64().unwrap_or(u64::MAX);
                ty.check(s * n < 3 * w && w <= s * n, || format!("M({s},{t}) weight band {w}/{n}"));
            }
        }
    }
    ty.time(t0.elapsed(), secs(30), "matrix suite");
    ty.outcome(&format!("{instances} matrices with side at most {AVOID_SIDE}, s at most {AVOID_SMAX}"))
}

/// Largest side of the moment-curve instances.
pub const MOMENT_SIDE: u64 = 8192;

/// Rows of `M(s,t)` carry at most `s` ones, so deleting rows with fewer than four
/// ones empties every instance with `s ≤ 3`. The moment complexes are checked for
/// `s = 4..=6`; growth across `s = 2, 3` is checked on the density `|M|/(tC)`.
fn c05() -> Outcome {
    let mut e = ev();
    let mut ty = Tally::default();
    let mut shown = Vec::new();
    let mut nonempty = 0;
    let mut empty_small = 0;
    for s in 2..=6u64 {
        let mut prev: Option<(patmat::BinaryMatrix, patmat::BlockStructure)> = None;
        for t in 1.. {
            match patmat::side(&mut e, s, t) {
                Ok(side) if side <= nat(MOMENT_SIDE) => {}
                _ => break,
            }
            let built = match &prev {
                Some(p) => patmat::extend_m(&mut e, s, p, MOMENT_SIDE),
                None => patmat::build_m(&mut e, s, t, MOMENT_SIDE),
            };
            let m = match built {
                Ok(x) => &prev.insert(x).0,
                Err(err) => {
                    ty.check(false, || format!("M({s},{t}): {err}"));
                    break;
                }
            };
            let widest = m.rows.iter().map(Vec::len).max().unwrap_or(0);
            ty.check(widest <= s as usize, || format!("M({s},{t}) has a row with {widest} ones"));
            let thin = m.delete_thin_rows(4);
            if thin.nrows == 0 {
                if s <= 3 {
                    empty_small += 1;
                }
                continue;
            }
            nonempty += 1;
            ty.check(patmat::validate_moment_matrix(&thin) == Ok(true), || format!("M({s},{t}) after deletion"));
            let Ok(st) = patmat::moment_stats(&thin) else {
                ty.check(false, || format!("M({s},{t}) statistics"));
                continue;
            };
            ty.check(st.f03 == thin.weight() && st.f3 == thin.nrows as u64, || format!("f03 of M({s},{t})"));
            let cx = metrics::complexity_from(&nat(st.f0), &nat(st.f3), &nat(st.f03));
            let cx = cx.map(|c| metrics::to_decimal(&c, 4)).unwrap_or_else(|_| "undefined".into());
            shown.push(format!("M({s},{t}) f0 {} f3 {} f03 {} complexity {cx}", st.f0, st.f3, st.f03));
        }
    }
    ty.check(nonempty > 0, || "no nonempty moment complex".into());
    // density growth from s = 2 to s = 3
    let mut pairs = 0;
    for t in 1.. {
        let (Ok(a), Ok(b)) = (patmat::side(&mut e, 3, t), patmat::side(&mut e, 2, t)) else { break };
        if a > nat(MOMENT_SIDE) {
            break;
        }
        let (Ok(w3), Ok(w2)) = (patmat::weight_formula(&mut e, 3, t), patmat::weight_formula(&mut e, 2, t)) else {
            break;
        };
        pairs += 1;
        let d3 = BigRational::new(BigInt::from(w3), BigInt::from(a));
        let d2 = BigRational::new(BigInt::from(w2), BigInt::from(b));
        let ok = if t == 1 { d3 >= d2 } else { d3 > d2 };
        ty.check(ok, || format!("density M(3,{t}) {d3} vs M(2,{t}) {d2}"));
    }
    ty.check(pairs > 0, || "no s = 2, 3 pair".into());
    ty.outcome(&format!(
        "{nonempty} nonempty moment complexes, {empty_small} empty for s <= 3, density grows from s = 2 to 3 on {pairs} t; {}",
        shown.join("; ")
    ))
}
// ---------------------------------------------------------------------------
// built complexes

#[derive(Default)]
struct Ctx {
    balls: BTreeMap<(u64, u64), BallComplex>,
    spheres: BTreeMap<(u64, u64), SphereComplex>,
}

impl Ctx {
    fn ball(&mut self, s: u64, t: u64) -> Result<&BallComplex, String> {
        if !self.balls.contains_key(&(s, t)) {
            let x = build::build_x(s, t).map_err(|e| format!("X({s},{t}): {e}"))?;
            self.balls.insert((s, t), x);
        }
        Ok(&self.balls[&(s, t)])
    }

    fn sphere(&mut self, s: u64, t: u64) -> Result<&SphereComplex, String> {
        if !self.spheres.contains_key(&(s, t)) {
            let b = self.ball(s, t)?;
            let copy = BallComplex { complex: b.complex.clone(), meta: b.meta.clone() };
            self.spheres.insert((s, t), build::sphere_from_ball(copy));
        }
        Ok(&self.spheres[&(s, t)])
    }
}

fn built_list() -> Vec<(u64, u64)> {
    let mut v: Vec<(u64, u64)> = (2..=10).map(|t| (1, t)).collect();
    v.extend((2..=5).map(|t| (2, t)));
    v.push((3, 2));
    v
}

/// Peak resident set size in KiB, where the platform reports it.
pub fn peak_rss_kib() -> Option<u64> {
    let s = std::fs::read_to_string("/proc/self/status").ok()?;
    let line = s.lines().find(|l| l.starts_with("VmHWM:"))?;
    line.split_whitespace().nth(1)?.parse().ok()
}

fn c06(ctx: &mut Ctx) -> Outcome {
    let mut e = ev();
    let mut ty = Tally::default();
    for t in 2..=64u64 {
        match ctx.sphere(1, t) {
            Ok(x) => {
                let want = [2 * t + 7, 10 * t + 15, 16 * t + 12, 8 * t + 4];
                ty.check(x.complex.f_vector() == want, || format!("f(S(1,{t})) = {:?}", x.complex.f_vector()));
            }
            Err(err) => ty.check(false, || err),
        }
    }
    let mut extra = String::new();
    for (s, t) in (2..=8).map(|t| (2, t)).chain([(3, 2)]) {
        let t0 = Instant::now();
        let f = match ctx.sphere(s, t) {
            Ok(x) => x.complex.f_vector(),
            Err(err) => {
                ty.check(false, || err);
                continue;
            }
        };
        let el = t0.elapsed();
        let want = e.f_vec(s, t).ok();
        ty.check(want == Some(FVector::from_u64(f)), || format!("f(S({s},{t})) = {f:?}"));
        match (s, t) {
            (2, 8) => {
                ty.time(el, secs(10), "S(2,8)");
                let _ = write!(extra, "S(2,8) in {:.2} s", el.as_secs_f64());
            }
            (3, 2) => {
                ty.time(el, secs(600), "S(3,2)");
                let rss = peak_rss_kib();
                if let Some(kib) = rss {
                    ty.check(kib < 8 << 20, || format!("peak RSS {kib} KiB"));
                }
                let mem = rss.map(|k| format!("{:.0} MiB", k as f64 / 1024.0)).unwrap_or_else(|| "unknown".into());
                let _ = write!(extra, ", S(3,2) in {:.2} s, peak RSS {mem}", el.as_secs_f64());
            }
            _ => {}
        }
    }
    ty.outcome(&extra)
}

fn full_regularity(s: u64, t: u64) -> bool {
    (s == 1 && t <= 6) || (s == 2 && t <= 3)
}

fn c07(ctx: &mut Ctx) -> Outcome {
    let mut ty = Tally::default();
    let mut sampled = 0;
    for (s, t) in built_list() {
        let mode = if full_regularity(s, t) {
            RegularityMode::Full
        } else {
            sampled += 1;
            RegularityMode::Sampled { stride: 97, per_face: 64 }
        };
        match ctx.ball(s, t) {
            Ok(x) => {
                let r = build::verify_properties(x);
                for i in r.items.iter().filter(|i| !i.pass) {
                    ty.check(false, || format!("X({s},{t}) {}: {}", i.label, i.detail));
                }
                ty.check(r.all_pass(), || format!("X({s},{t}) properties"));
                let reg = x.complex.check_strong_regularity(mode);
                ty.check(reg.is_ok(), || format!("X({s},{t}) regularity: {reg:?}"));
            }
            Err(err) => ty.check(false, || err),
        }
        match ctx.sphere(s, t) {
            Ok(x) => {
                let reg = x.complex.check_strong_regularity(mode);
                ty.check(reg.is_ok(), || format!("S({s},{t}) regularity: {reg:?}"));
            }
            Err(err) => ty.check(false, || err),
        }
    }
    ty.outcome(&format!("{sampled} sampled regularity checks"))
}

fn c08(ctx: &mut Ctx) -> Outcome {
    let mut ty = Tally::default();
    for (s, t) in built_list() {
        let x = match ctx.sphere(s, t) {
            Ok(x) => x,
            Err(err) => {
                ty.check(false, || err);
                continue;
            }
        };
        match shelling::shelling_order(x) {
            Ok(o) => {
                let c = shelling::verify_shelling(&x.complex, &o);
                ty.check(c.verified, || format!("S({s},{t}) shelling: {:?}", c.failure));
            }
            Err(err) => ty.check(false, || format!("S({s},{t}) shelling order: {err}")),
        }
        if s == 1 || (s == 2 && t <= 4) {
            let d = shelling::dual_shelling_order(x);
            let c = shelling::verify_dual_shelling(&x.complex, &d);
            ty.check(c.verified, || format!("S({s},{t}) dual shelling: {:?}", c.failure));
        }
    }
    let mut located = Vec::new();
    for (s, t) in [(1, 2), (2, 2)] {
        let Ok(x) = ctx.sphere(s, t) else { continue };
        if let Ok(o) = shelling::shelling_order(x) {
            let far = far_top_facet(x, &o);
            let mut bad: Vec<u32> = o.iter().copied().filter(|&f| f != far).collect();
            bad.insert(1, far);
            let c = shelling::verify_shelling(&x.complex, &bad);
            let idx = c.failure.as_ref().map(|f| f.index);
            ty.check(idx == Some(2), || format!("S({s},{t}) perturbed shelling failure at {idx:?}"));
            located.push(format!("shelling S({s},{t}) at {}", idx.unwrap_or(0)));
        }
        let d = shelling::dual_shelling_order(x);
        if let Some(k) = d.iter().position(|&v| !adjacent(&x.complex, d[0], v)) {
            let mut bad = d.clone();
            let v = bad.remove(k);
            bad.insert(1, v);
            let c = shelling::verify_dual_shelling(&x.complex, &bad);
            let idx = c.failure.as_ref().map(|f| f.index);
            ty.check(idx == Some(2), || format!("S({s},{t}) perturbed dual shelling failure at {idx:?}"));
            located.push(format!("dual S({s},{t}) at {}", idx.unwrap_or(0)));
        }
    }
    ty.outcome(&format!("negative controls fail: {}", located.join(", ")))
}

/// The last cone facet over the top of the ball in `o`.
fn far_top_facet(x: &SphereComplex, o: &[u32]) -> u32 {
    let tops: Vec<u32> = x.meta.boundary_top.iter().filter_map(|&f| x.pyramid_over(f)).collect();
    *o.iter().rev().find(|f| tops.contains(f)).unwrap_or(&o[o.len() - 1])
}

fn adjacent(x: &CwComplex, a: u32, b: u32) -> bool {
    a == b || x.cofaces(a).iter().any(|&e| x.dim_of(e) == 1 && x.has_vertex(e, b))
}

fn c09(ctx: &mut Ctx) -> Outcome {
    let mut e = ev();
    let mut ty = Tally::default();
    let mut formula = 0;
    for s in 1..=3u64 {
        for t in s + 1..=64 {
            match (e.f_vec(s, t), e.k_fn(s, t)) {
                (Ok(f), Ok(k)) => {
                    formula += 1;
                    let b = metrics::band_check(s, t, &f, &k);
                    ty.check(b.pass, || format!("bands F({s},{t})"));
                }
                _ => ty.undecided += 1,
            }
        }
    }
    let mut built = 0;
    for (s, t) in built_list().into_iter().filter(|&(s, t)| t > s) {
        let Ok(x) = ctx.sphere(s, t) else { continue };
        let f = metrics::count_f(&x.complex);
        let Ok(k) = e.k_fn(s, t) else { continue };
        built += 1;
        ty.check(metrics::band_check(s, t, &f, &k).pass, || format!("bands S({s},{t})"));
    }
    let fat = |ctx: &mut Ctx, s, t| -> Option<BigRational> {
        metrics::fatness(&metrics::count_f(&ctx.sphere(s, t).ok()?.complex)).ok()
    };
    let (a, b) = (fat(ctx, 1, 2), fat(ctx, 2, 3));
    ty.check(matches!((&a, &b), (Some(a), Some(b)) if b > a), || "fatness S(2,3) > S(1,2)".into());
    let show = |r: &Option<BigRational>| r.as_ref().map(|r| metrics::to_decimal(r, 6)).unwrap_or_default();
    ty.outcome(&format!(
        "{formula} formula and {built} built f-vectors, fatness S(1,2) {} < S(2,3) {}",
        show(&a),
        show(&b)
    ))
}

fn all_spheres(ctx: &mut Ctx) -> Vec<(u64, u64)> {
    for (s, t) in built_list() {
        let _ = ctx.sphere(s, t);
    }
    ctx.spheres.keys().copied().collect()
}

fn c10(ctx: &mut Ctx) -> Outcome {
    let mut ty = Tally::default();
    let keys = all_spheres(ctx);
    for (s, t) in &keys {
        let x = &ctx.spheres[&(*s, *t)].complex;
        let f = metrics::count_f(x);
        let f03 = metrics::count_f03(x);
        ty.check(metrics::ziegler_check(&f, &f03) == Ok(true), || format!("S({s},{t})"));
    }
    ty.outcome(&format!("{} spheres", keys.len()))
}

fn c11(ctx: &mut Ctx) -> Outcome {
    let t0 = Instant::now();
    let mut ty = Tally::default();
    let p = match realize::hull4(&realize::s12_points()) {
        Ok(p) => p,
        Err(err) => return Outcome::fail(err.to_string()),
    };
    let lat = realize::face_lattice(&p);
    ty.check(lat.f_vector() == [11, 35, 44, 20], || format!("hull f = {:?}", lat.f_vector()));
    let sp = match ctx.sphere(1, 2) {
        Ok(x) => x,
        Err(err) => return Outcome::fail(err),
    };
    match realize::iso_map(&sp.complex, &lat) {
        Some(map) => {
            ty.check(true, String::new);
            match shelling::shelling_order(sp) {
                Ok(o) => {
                    let moved: Vec<u32> = o.iter().map(|&f| map[f as usize]).collect();
                    let c = shelling::verify_shelling(&lat, &moved);
                    ty.check(c.verified, || format!("transported shelling: {:?}", c.failure));
                }
                Err(err) => ty.check(false, || err.to_string()),
            }
        }
        None => ty.check(false, || "hull is not isomorphic to S(1,2)".into()),
    }
    ty.time(t0.elapsed(), secs(10), "realization");
    ty.outcome("")
}

fn c12(ctx: &mut Ctx) -> Outcome {
    let mut ty = Tally::default();
    all_spheres(ctx);
    for ((s, t), x) in &ctx.spheres {
        ty.check(x.complex.euler_char() == 0, || format!("Euler S({s},{t})"));
    }
    for ((s, t), x) in &ctx.balls {
        ty.check(x.complex.euler_char() == 1, || format!("chi X({s},{t})"));
        ty.check(build::boundary_of(x).is_2_sphere(), || format!("boundary X({s},{t})"));
    }
    ty.outcome(&format!("{} spheres, {} balls", ctx.spheres.len(), ctx.balls.len()))
}
