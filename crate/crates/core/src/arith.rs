//! Exact evaluation of the function tower `A`, `α`, `C`, `K`, `K′`, `R`, `F`.
//!
//! Every value is an arbitrary-precision natural number. A [`GuardConfig`]
//! bounds the bit length of anything this module is willing to build; calls
//! that would exceed it fail with [`ArithError::MagnitudeGuard`] instead of
//! running out of memory.
//!
//! An [`Evaluator`] owns its memo table and is single-threaded (`&mut self`
//! on every entry point). Threads that want to evaluate concurrently each
//! create their own evaluator.

use std::collections::HashMap;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

pub type BigNat = BigUint;

/// Default bit bound for every intermediate value.
pub const DEFAULT_MAX_BITS: u64 = 1 << 20;
/// Default cap on memo entries.
pub const DEFAULT_MEMO_BUDGET: usize = 1 << 16;
/// Default cap on loop steps when unfolding a recursion in its second argument.
pub const DEFAULT_MAX_UNFOLD: u64 = 1 << 17;

/// Environment variable overriding [`GuardConfig::max_bits`].
pub const MAX_BITS_ENV: &str = "FATSPH_MAX_BITS";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GuardConfig {
    pub max_bits: u64,
    pub memo_budget: usize,
    pub max_unfold: u64,
}

impl Default for GuardConfig {
    fn default() -> Self {
        GuardConfig {
            max_bits: DEFAULT_MAX_BITS,
            memo_budget: DEFAULT_MEMO_BUDGET,
            max_unfold: DEFAULT_MAX_UNFOLD,
        }
    }
}

impl GuardConfig {
    /// Builds a config with the given bit bound; values below 64 are rejected.
    pub fn with_max_bits(max_bits: u64) -> Result<Self, ArithError> {
        if max_bits < 64 {
            return Err(ArithError::InvalidArgument(format!(
                "max_bits must be at least 64, got {max_bits}"
            )));
        }
        Ok(GuardConfig {
            max_bits,
            ..GuardConfig::default()
        })
    }

    /// Default config, with `max_bits` taken from `FATSPH_MAX_BITS` when set.
    pub fn from_env() -> Result<Self, ArithError> {
        match std::env::var(MAX_BITS_ENV) {
            Ok(v) => {
                let bits: u64 = v.trim().parse().map_err(|_| {
                    ArithError::InvalidArgument(format!("{MAX_BITS_ENV}={v:?} is not an integer"))
                })?;
                GuardConfig::with_max_bits(bits)
            }
            Err(_) => Ok(GuardConfig::default()),
        }
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ArithError {
    #[error("magnitude guard: {call} needs at least {bits} bits (limit {max_bits})")]
    MagnitudeGuard { call: String, bits: u64, max_bits: u64 },
    #[error("recursion depth: {call} needs {steps} unfolding steps (limit {max})")]
    RecursionDepth { call: String, steps: String, max: u64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl ArithError {
    pub fn is_guard(&self) -> bool {
        matches!(self, ArithError::MagnitudeGuard { .. })
    }
}

/// Face counts by dimension.
#[derive(Debug, Clone, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct FVector {
    #[serde(with = "crate::serde_big")]
    pub f0: BigNat,
    #[serde(with = "crate::serde_big")]
    pub f1: BigNat,
    #[serde(with = "crate::serde_big")]
    pub f2: BigNat,
    #[serde(with = "crate::serde_big")]
    pub f3: BigNat,
}

impl FVector {
    pub fn new(f0: BigNat, f1: BigNat, f2: BigNat, f3: BigNat) -> Self {
        FVector { f0, f1, f2, f3 }
    }

    pub fn from_u64(f: [u64; 4]) -> Self {
        FVector::new(f[0].into(), f[1].into(), f[2].into(), f[3].into())
    }

    pub fn as_array(&self) -> [&BigNat; 4] {
        [&self.f0, &self.f1, &self.f2, &self.f3]
    }

    /// `f0 − f1 + f2 − f3`.
    pub fn euler(&self) -> BigInt {
        let [a, b, c, d] = self.as_array().map(|x| BigInt::from(x.clone()));
        a - b + c - d
    }
}

impl fmt::Display for FVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.f0, self.f1, self.f2, self.f3)
    }
}

/// Result of a guarded evaluation: either the exact value, or the knowledge
/// that the value has more than `max_bits` bits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Magnitude {
    Exact(BigNat),
    Above(u64),
}

impl Magnitude {
    pub fn from_result(r: Result<BigNat, ArithError>) -> Result<Self, ArithError> {
        match r {
            Ok(v) => Ok(Magnitude::Exact(v)),
            Err(ArithError::MagnitudeGuard { max_bits, .. }) => Ok(Magnitude::Above(max_bits)),
            Err(e) => Err(e),
        }
    }

    pub fn exact(&self) -> Option<&BigNat> {
        match self {
            Magnitude::Exact(v) => Some(v),
            Magnitude::Above(_) => None,
        }
    }

    /// `Some(self < other)` when decidable.
    pub fn lt(&self, other: &Magnitude) -> Option<bool> {
        match (self, other) {
            (Magnitude::Exact(a), Magnitude::Exact(b)) => Some(a < b),
            (Magnitude::Exact(a), Magnitude::Above(m)) => Some(a.bits() <= *m),
            (Magnitude::Above(m), Magnitude::Exact(b)) => {
                if b.bits() <= *m {
                    Some(false)
                } else {
                    None
                }
            }
            (Magnitude::Above(_), Magnitude::Above(_)) => None,
        }
    }

    /// `Some(self <= other)` when decidable.
    pub fn le(&self, other: &Magnitude) -> Option<bool> {
        other.lt(self).map(|b| !b)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Func {
    A,
    C,
    K,
    R,
    F,
}

#[derive(Debug, Clone)]
enum Memo {
    One(BigNat),
    Pair(BigNat, BigNat),
    Vec(FVector),
}

/// Memoizing evaluator for the whole tower.
#[derive(Debug)]
pub struct Evaluator {
    guard: GuardConfig,
    memo: HashMap<(Func, u64, BigNat), Memo>,
    memo_enabled: bool,
}

impl Default for Evaluator {
    fn default() -> Self {
        Evaluator::new(GuardConfig::default())
    }
}

fn u(v: u64) -> BigNat {
    BigNat::from(v)
}

fn check_pos(name: &str, s: u64, t: &BigNat) -> Result<(), ArithError> {
    if s == 0 || t.is_zero() {
        return Err(ArithError::InvalidArgument(format!(
            "{name}({s},{t}) needs positive arguments"
        )));
    }
    Ok(())
}

impl Evaluator {
    pub fn new(guard: GuardConfig) -> Self {
        Evaluator {
            guard,
            memo: HashMap::new(),
            memo_enabled: true,
        }
    }

    /// Evaluator that never caches. Used to cross-check the memo table.
    pub fn without_memo(guard: GuardConfig) -> Self {
        Evaluator {
            memo_enabled: false,
            ..Evaluator::new(guard)
        }
    }

    pub fn guard(&self) -> &GuardConfig {
        &self.guard
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    fn lookup(&self, f: Func, s: u64, t: &BigNat) -> Option<&Memo> {
        if !self.memo_enabled {
            return None;
        }
        self.memo.get(&(f, s, t.clone()))
    }

    fn store(&mut self, f: Func, s: u64, t: &BigNat, m: Memo) {
        if self.memo_enabled && self.memo.len() < self.guard.memo_budget {
            self.memo.insert((f, s, t.clone()), m);
        }
    }

    fn guard_bits(&self, call: impl Fn() -> String, bits: u64) -> Result<(), ArithError> {
        if bits > self.guard.max_bits {
            return Err(ArithError::MagnitudeGuard {
                call: call(),
                bits,
                max_bits: self.guard.max_bits,
            });
        }
        Ok(())
    }

    fn check_value(&self, call: impl Fn() -> String, v: &BigNat) -> Result<(), ArithError> {
        self.guard_bits(call, v.bits())
    }

    /// Converts a loop bound to `u64`, failing when the unfolding budget is exceeded.
    fn unfold_bound(&self, call: impl Fn() -> String, t: &BigNat) -> Result<u64, ArithError> {
        match t.to_u64() {
            Some(n) if n <= self.guard.max_unfold => Ok(n),
            _ => Err(ArithError::RecursionDepth {
                call: call(),
                steps: t.to_string(),
                max: self.guard.max_unfold,
            }),
        }
    }

    // ----- A -----

    pub fn ackermann(&mut self, s: u64, t: u64) -> Result<BigNat, ArithError> {
        self.ackermann_big(s, &u(t))
    }

    pub fn ackermann_big(&mut self, s: u64, t: &BigNat) -> Result<BigNat, ArithError> {
        check_pos("A", s, t)?;
        let call = || format!("A({s},{t})");
        if s == 1 {
            let v = t << 1u32;
            self.check_value(call, &v)?;
            return Ok(v);
        }
        if t.is_one() {
            return Ok(u(2));
        }
        if let Some(Memo::One(v)) = self.lookup(Func::A, s, t) {
            return Ok(v.clone());
        }
        // A(s,t) >= A(2,t) = 2^t for s >= 2.
        match t.to_u64() {
            Some(n) => self.guard_bits(call, n.saturating_add(1))?,
            None => self.guard_bits(call, u64::MAX)?,
        }
        let steps = self.unfold_bound(call, t)?;
        let mut v = u(2);
        for _ in 2..=steps {
            v = self.ackermann_big(s - 1, &v)?;
        }
        self.check_value(call, &v)?;
        self.store(Func::A, s, t, Memo::One(v.clone()));
        Ok(v)
    }

    /// Least `s` with `A(s,s) >= n`.
    pub fn inverse_ackermann(&mut self, n: &BigNat) -> Result<u64, ArithError> {
        if n.is_zero() {
            return Err(ArithError::InvalidArgument("alpha(0) is undefined".into()));
        }
        self.check_value(|| format!("alpha({n})"), n)?;
        let mut s = 1u64;
        loop {
            match self.ackermann(s, s) {
                Ok(v) if &v >= n => return Ok(s),
                Ok(_) => s += 1,
                // Guarded values exceed 2^max_bits >= n.
                Err(ArithError::MagnitudeGuard { .. }) => return Ok(s),
                Err(e) => return Err(e),
            }
        }
    }

    // ----- C -----

    pub fn c_fn(&mut self, s: u64, t: u64) -> Result<BigNat, ArithError> {
        self.c_big(s, &u(t))
    }

    pub fn c_big(&mut self, s: u64, t: &BigNat) -> Result<BigNat, ArithError> {
        check_pos("C", s, t)?;
        let call = || format!("C({s},{t})");
        if s == 1 {
            return Ok(BigNat::one());
        }
        if t.is_one() {
            return Ok(u(2));
        }
        if let Some(Memo::One(v)) = self.lookup(Func::C, s, t) {
            return Ok(v.clone());
        }
        if s >= 3 {
            // C(s,t+1) >= 2C(s,t) for s > 2, so C(s,t) >= 2^t.
            match t.to_u64() {
                Some(n) => self.guard_bits(call, n.saturating_add(1))?,
                None => self.guard_bits(call, u64::MAX)?,
            }
        }
        let mut v = u(2);
        let mut k = BigNat::one();
        while &k < t {
            let next = &v * self.c_big(s - 1, &v)?;
            self.check_value(call, &next)?;
            k += 1u32;
            if next == v {
                // C(s,k) = C(s,k-1) makes every later step identical.
                break;
            }
            if k > u(self.guard.max_unfold) {
                return Err(ArithError::RecursionDepth {
                    call: call(),
                    steps: t.to_string(),
                    max: self.guard.max_unfold,
                });
            }
            v = next;
        }
        self.store(Func::C, s, t, Memo::One(v.clone()));
        Ok(v)
    }

    // ----- K, K' -----

    pub fn k_fn(&mut self, s: u64, t: u64) -> Result<BigNat, ArithError> {
        Ok(self.k_pair(s, &u(t))?.0)
    }

    pub fn kprime_fn(&mut self, s: u64, t: u64) -> Result<BigNat, ArithError> {
        Ok(self.k_pair(s, &u(t))?.1)
    }

    /// `(K(s,t), K′(s,t))`, computed jointly.
    pub fn k_pair(&mut self, s: u64, t: &BigNat) -> Result<(BigNat, BigNat), ArithError> {
        check_pos("K", s, t)?;
        let call = || format!("K({s},{t})");
        if s == 1 {
            return Ok((u(2), u(5)));
        }
        let base = || -> Result<(BigNat, BigNat), ArithError> {
            let k = BigNat::one() << s;
            Ok((k.clone(), k + 3u32))
        };
        if t.is_one() {
            self.guard_bits(call, s.saturating_add(2))?;
            return base();
        }
        if let Some(Memo::Pair(k, kp)) = self.lookup(Func::K, s, t) {
            return Ok((k.clone(), kp.clone()));
        }
        // K(s,t) >= 2^(st-t+1).
        match t.to_u64() {
            Some(n) => {
                let lb = n.saturating_mul(s - 1).saturating_add(2);
                self.guard_bits(call, lb)?
            }
            None => self.guard_bits(call, u64::MAX)?,
        }
        self.guard_bits(call, s.saturating_add(2))?;
        let steps = self.unfold_bound(call, t)?;
        let (mut k, mut kp) = base()?;
        for _ in 2..=steps {
            let (a, b) = self.k_pair(s - 1, &kp)?;
            let nk = &k * &a;
            let nkp = &kp * &a + b;
            self.check_value(call, &nkp)?;
            k = nk;
            kp = nkp;
        }
        self.store(Func::K, s, t, Memo::Pair(k.clone(), kp.clone()));
        Ok((k, kp))
    }

    // ----- R -----

    pub fn r_fn(&mut self, s: u64, t: u64) -> Result<BigNat, ArithError> {
        self.r_big(s, &u(t))
    }

    pub fn r_big(&mut self, s: u64, t: &BigNat) -> Result<BigNat, ArithError> {
        check_pos("R", s, t)?;
        if s == 1 || t.is_one() {
            return Ok(BigNat::zero());
        }
        if let Some(Memo::One(v)) = self.lookup(Func::R, s, t) {
            return Ok(v.clone());
        }
        let (_, kp) = self.k_pair(s, &(t - 1u32))?;
        let (k, _) = self.k_pair(s - 1, &kp)?;
        let v = (k << 1u32) + self.r_big(s - 1, &kp)?;
        self.check_value(|| format!("R({s},{t})"), &v)?;
        self.store(Func::R, s, t, Memo::One(v.clone()));
        Ok(v)
    }

    // ----- F -----

    pub fn f_vec(&mut self, s: u64, t: u64) -> Result<FVector, ArithError> {
        self.f_big(s, &u(t))
    }

    pub fn f_big(&mut self, s: u64, t: &BigNat) -> Result<FVector, ArithError> {
        check_pos("F", s, t)?;
        let call = || format!("F({s},{t})");
        // F(1,t) has its own closed form for t > 1; F(1,1) follows the t = 1 row.
        if s == 1 && !t.is_one() {
            let v = FVector::new(
                t * 2u32 + 7u32,
                t * 10u32 + 15u32,
                t * 16u32 + 12u32,
                t * 8u32 + 4u32,
            );
            self.check_value(call, &v.f2)?;
            return Ok(v);
        }
        if let Some(Memo::Vec(v)) = self.lookup(Func::F, s, t) {
            return Ok(v.clone());
        }
        self.guard_bits(call, s.saturating_add(4))?;
        let p = BigNat::one() << (s + 1);
        let mut f = FVector::new(
            &p + 5u32,
            &p * 3u32 + 9u32,
            (&p << 2u32) + 8u32,
            (&p << 1u32) + 4u32,
        );
        if !t.is_one() {
            // Bits of F(s,t) are at least those of K(s,t).
            self.k_pair(s, t)?;
            let steps = self.unfold_bound(call, t)?;
            let (_, mut kp) = self.k_pair(s, &BigNat::one())?;
            let mut r = BigNat::zero();
            for _ in 2..=steps {
                let (k, kp_low) = self.k_pair(s - 1, &kp)?;
                let g = self.f_big(s - 1, &kp)?;
                let r_low = self.r_big(s - 1, &kp)?;
                let ki = BigInt::from(k.clone());
                let kpi = BigInt::from(kp.clone());
                let ri = BigInt::from(r.clone());
                let step = |old: &BigNat, add: BigInt, g: &BigNat| -> BigNat {
                    let v = &ki * (BigInt::from(old.clone()) + add) + BigInt::from(g.clone());
                    debug_assert!(v.sign() != Sign::Minus);
                    v.to_biguint().expect("face counts stay positive")
                };
                let nf = FVector::new(
                    step(&f.f0, &ri - 2, &g.f0),
                    step(&f.f1, &kpi * 3 + &ri * 3 - 4, &g.f1),
                    step(&f.f2, &kpi * 3 + &ri * 4 + 1, &g.f2),
                    step(&f.f3, &ri * 2 + 3, &g.f3),
                );
                self.check_value(call, &nf.f2)?;
                // Advance R(s,·) and K′(s,·) to the current index.
                r = (&k << 1u32) + r_low;
                kp = &kp * &k + kp_low;
                f = nf;
            }
        }
        self.store(Func::F, s, t, Memo::Vec(f.clone()));
        Ok(f)
    }
}

/// Which function a CLI call names.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Which {
    A,
    Alpha,
    C,
    K,
    Kp,
    R,
    F,
}

impl std::str::FromStr for Which {
    type Err = ArithError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "A" => Which::A,
            "alpha" => Which::Alpha,
            "C" => Which::C,
            "K" => Which::K,
            "Kp" | "K'" => Which::Kp,
            "R" => Which::R,
            "F" => Which::F,
            other => {
                return Err(ArithError::InvalidArgument(format!(
                    "unknown function {other:?}"
                )))
            }
        })
    }
}

/// Renders a natural number: decimal up to 10,000 digits, `2^e ± r` within
/// 2^64 of a power of two, otherwise a bit/digit summary.
pub fn render(v: &BigNat) -> String {
    // 10,000 decimal digits is about 33,220 bits.
    if v.bits() <= 33_000 {
        return v.to_string();
    }
    let b = v.bits();
    let lo = BigNat::one() << (b - 1);
    let hi = BigNat::one() << b;
    let below = v - &lo;
    if below.bits() <= 64 {
        return if below.is_zero() {
            format!("2^{}", b - 1)
        } else {
            format!("2^{}+{}", b - 1, below)
        };
    }
    let above = &hi - v;
    if above.bits() <= 64 {
        return format!("2^{}-{}", b, above);
    }
    let digits = (b as f64 * std::f64::consts::LOG10_2).floor() as u64 + 1;
    format!("<{b}-bit integer, about {digits} digits>")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        let mut e = Evaluator::default();
        assert_eq!(e.ackermann(1, 4).unwrap(), u(8));
        assert_eq!(e.ackermann(3, 4).unwrap(), u(1 << 16));
        assert_eq!(e.ackermann(7, 1).unwrap(), u(2));
        assert_eq!(e.c_fn(4, 3).unwrap(), u(1 << 11));
        assert_eq!(e.c_fn(1, 9).unwrap(), u(1));
        assert_eq!(e.c_fn(3, 4).unwrap(), u(16));
        assert_eq!(e.k_fn(3, 2).unwrap(), u(1 << 15));
        assert_eq!(e.kprime_fn(3, 1).unwrap(), u(11));
        assert_eq!(e.k_fn(2, 5).unwrap(), u(64));
        assert_eq!(e.kprime_fn(2, 2).unwrap(), u(19));
        assert_eq!(e.r_fn(1, 6).unwrap(), u(0));
        assert_eq!(e.r_fn(5, 1).unwrap(), u(0));
        assert_eq!(e.r_fn(2, 2).unwrap(), u(4));
    }

    #[test]
    fn alpha_values() {
        let mut e = Evaluator::default();
        assert_eq!(e.inverse_ackermann(&u(2)).unwrap(), 1);
        assert_eq!(e.inverse_ackermann(&u(16)).unwrap(), 3);
        assert_eq!(e.inverse_ackermann(&u(17)).unwrap(), 4);
    }

    #[test]
    fn f_examples() {
        let mut e = Evaluator::default();
        assert_eq!(e.f_vec(1, 2).unwrap(), FVector::from_u64([11, 35, 44, 20]));
        assert_eq!(e.f_vec(2, 1).unwrap(), FVector::from_u64([13, 33, 40, 20]));
        assert_eq!(e.f_vec(2, 2).unwrap(), FVector::from_u64([43, 185, 248, 106]));
        assert_eq!(e.f_vec(1, 1).unwrap(), FVector::from_u64([9, 21, 24, 12]));
    }

    #[test]
    fn guard_rejects_towers() {
        let mut e = Evaluator::default();
        assert!(e.ackermann(4, 4).unwrap_err().is_guard());
        assert!(e.k_fn(4, 2).unwrap_err().is_guard());
        assert!(e.c_fn(4, 5).unwrap_err().is_guard());
    }

    #[test]
    fn guard_config_floor() {
        assert!(GuardConfig::with_max_bits(63).is_err());
        assert!(GuardConfig::with_max_bits(64).is_ok());
    }

    #[test]
    fn rendering() {
        assert_eq!(render(&u(12345)), "12345");
        assert_eq!(render(&(BigNat::one() << 40_000u32)), "2^40000");
        assert_eq!(render(&((BigNat::one() << 40_000u32) - 5u32)), "2^40000-5");
        assert_eq!(render(&((BigNat::one() << 40_000u32) + 7u32)), "2^40000+7");
    }
}
