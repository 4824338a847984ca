//! f-vectors, vertex-facet incidences, fatness and complexity.
//!
//! All ratios are exact; [`to_decimal`] is for display only.

use crate::arith::{BigNat, FVector};
use crate::cw::CwComplex;
use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MetricsError {
    #[error("f0 + f3 = 10: the ratio is undefined")]
    DegenerateDenominator,
}

pub fn count_f(x: &CwComplex) -> FVector {
    FVector::from_u64(x.f_vector())
}

/// Σ over facets of their vertex counts.
pub fn count_f03(x: &CwComplex) -> BigNat {
    let n: u64 = x.ids_of_dim(3).map(|f| x.vertices(f).len() as u64).sum();
    n.into()
}

/// The same count taken vertex by vertex, as a cross-check.
pub fn count_f03_by_stars(x: &CwComplex) -> BigNat {
    let n: u64 = x
        .ids_of_dim(0)
        .map(|v| x.star(v).into_iter().filter(|&f| x.dim_of(f) == 3).count() as u64)
        .sum();
    n.into()
}

fn int(v: &BigNat) -> BigInt {
    BigInt::from(v.clone())
}

fn denominator(f0: &BigNat, f3: &BigNat) -> Result<BigInt, MetricsError> {
    let d: BigInt = int(f0) + int(f3) - 10;
    if d.is_zero() {
        return Err(MetricsError::DegenerateDenominator);
    }
    Ok(d)
}

/// `(f1 + f2 − 20) / (f0 + f3 − 10)`.
pub fn fatness(f: &FVector) -> Result<BigRational, MetricsError> {
    let d = denominator(&f.f0, &f.f3)?;
    Ok(BigRational::new(int(&f.f1) + int(&f.f2) - 20, d))
}

/// `(f03 − 20) / (f0 + f3 − 10)`.
pub fn complexity(f: &FVector, f03: &BigNat) -> Result<BigRational, MetricsError> {
    complexity_from(&f.f0, &f.f3, f03)
}

/// Complexity from the three counts it depends on (e.g. moment-matrix statistics).
pub fn complexity_from(f0: &BigNat, f3: &BigNat, f03: &BigNat) -> Result<BigRational, MetricsError> {
    let d = denominator(f0, f3)?;
    Ok(BigRational::new(int(f03) - 20, d))
}

/// `C ≤ 2F − 2` and `F ≤ 2C − 2`.
pub fn ziegler_check(f: &FVector, f03: &BigNat) -> Result<bool, MetricsError> {
    let fat = fatness(f)?;
    let c = complexity(f, f03)?;
    let two = BigRational::from_integer(2.into());
    Ok(c <= &two * &fat - &two && fat <= &two * &c - &two)
}

/// Ratios `f_k / (tK)` for the face-count bands.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BandReport {
    pub ratios: [BigRational; 4],
    pub pass: bool,
}

/// `1 < f0/(tK) < f3/(tK) < 72` and `3s/2 < f1/(tK) < f2/(tK) < 158s`.
pub fn band_check(s: u64, t: u64, f: &FVector, k: &BigNat) -> BandReport {
    let tk = BigInt::from(t) * int(k);
    let ratios = f.as_array().map(|x| BigRational::new(int(x), tk.clone()));
    let q = |n: i64| BigRational::from_integer(n.into());
    let s = s as i64;
    let mid = BigRational::new((3 * s).into(), 2.into());
    let pass = q(1) < ratios[0]
        && ratios[0] < ratios[3]
        && ratios[3] < q(72)
        && mid < ratios[1]
        && ratios[1] < ratios[2]
        && ratios[2] < q(158 * s);
    BandReport { ratios, pass }
}

#[derive(Clone, Debug, Serialize)]
pub struct FatnessReport {
    pub schema: &'static str,
    pub f: FVector,
    #[serde(serialize_with = "ser_nat")]
    pub f03: BigNat,
    #[serde(serialize_with = "ser_rat")]
    pub fatness: BigRational,
    #[serde(serialize_with = "ser_rat")]
    pub complexity: BigRational,
    pub ziegler: bool,
    pub euler: i64,
}

fn ser_nat<S: serde::Serializer>(v: &BigNat, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn ser_rat<S: serde::Serializer>(v: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format!("{}/{}", v.numer(), v.denom()))
}

pub const REPORT_SCHEMA: &str = "fatness-report/1";

pub fn report(x: &CwComplex) -> Result<FatnessReport, MetricsError> {
    let f = count_f(x);
    let f03 = count_f03(x);
    Ok(FatnessReport {
        schema: REPORT_SCHEMA,
        fatness: fatness(&f)?,
        complexity: complexity(&f, &f03)?,
        ziegler: ziegler_check(&f, &f03)?,
        euler: x.euler_char(),
        f,
        f03,
    })
}

/// Decimal rendering with `sig` significant digits, rounding half away from zero.
pub fn to_decimal(r: &BigRational, sig: usize) -> String {
    let sig = sig.max(1);
    if r.is_zero() {
        return "0".into();
    }
    let neg = r.is_negative();
    let a = r.abs();
    let (n, d) = (a.numer().clone(), a.denom().clone());
    // e with 10^e ≤ a < 10^(e+1)
    let mut e = n.to_string().len() as i64 - d.to_string().len() as i64;
    let ten = BigInt::from(10);
    let pow = |k: i64| ten.pow(k.unsigned_abs() as u32);
    let ge = |k: i64| if k >= 0 { n.clone() >= &d * pow(k) } else { &n * pow(k) >= d };
    while !ge(e) {
        e -= 1;
    }
    while ge(e + 1) {
        e += 1;
    }
    // digits = round(a · 10^(sig−1−e))
    let shift = sig as i64 - 1 - e;
    let (num, den) = if shift >= 0 { (&n * pow(shift), d.clone()) } else { (n.clone(), &d * pow(shift)) };
    let (q, rem) = num.div_rem(&den);
    let mut digits = if rem * 2 >= den { q + 1 } else { q };
    if digits.to_string().len() > sig {
        digits /= 10;
        e += 1;
    }
    let ds = digits.to_string();
    let body = if (-5..15).contains(&e) {
        if e >= 0 {
            let int_len = (e + 1) as usize;
            if ds.len() > int_len {
                format!("{}.{}", &ds[..int_len], &ds[int_len..])
            } else {
                format!("{}{}", ds, "0".repeat(int_len - ds.len()))
            }
        } else {
            format!("0.{}{}", "0".repeat((-e - 1) as usize), ds)
        }
    } else {
        let tail = if ds.len() > 1 { format!(".{}", &ds[1..]) } else { String::new() };
        format!("{}{}e{}", &ds[..1], tail, e)
    };
    let body = if body.contains('.') && !body.contains('e') {
        body.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        body
    };
    if neg && digits.sign() != Sign::NoSign {
        format!("-{body}")
    } else {
        body
    }
}

/// `p/q` with `q = 1` printed as an integer.
pub fn rational_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cw::from_simplices;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn simplex4_boundary() -> CwComplex {
        let facets: Vec<Vec<u32>> = (0..5u32).map(|k| (0..5u32).filter(|&v| v != k).collect()).collect();
        from_simplices(5, &facets)
    }

    #[test]
    fn simplex_is_degenerate() {
        let x = simplex4_boundary();
        let f = count_f(&x);
        assert_eq!(f, FVector::from_u64([5, 10, 10, 5]));
        assert_eq!(count_f03(&x), 20u32.into());
        assert_eq!(fatness(&f), Err(MetricsError::DegenerateDenominator));
        assert_eq!(complexity(&f, &20u32.into()), Err(MetricsError::DegenerateDenominator));
    }

    #[test]
    fn fatness_example() {
        let f = FVector::from_u64([11, 35, 44, 20]);
        assert_eq!(fatness(&f).unwrap(), r(59, 21));
        assert_eq!(to_decimal(&r(59, 21), 6), "2.80952");
    }

    #[test]
    fn ziegler_counterexample() {
        let f = FVector::from_u64([11, 12, 12, 20]);
        assert!(!ziegler_check(&f, &10_000u32.into()).unwrap());
    }

    #[test]
    fn decimals() {
        assert_eq!(to_decimal(&r(1, 3), 3), "0.333");
        assert_eq!(to_decimal(&r(-2, 3), 2), "-0.67");
        assert_eq!(to_decimal(&r(999_999, 1), 3), "1000000");
        assert_eq!(to_decimal(&r(3, 1).pow(40), 3), "1.22e19");
        assert_eq!(to_decimal(&r(12, 1), 6), "12");
        assert_eq!(to_decimal(&r(1, 1_000_000), 2), "1.0e-6");
        assert_eq!(to_decimal(&r(995, 1000), 2), "1");
    }
}
