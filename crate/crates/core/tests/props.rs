//! Property tests.

use fatsph::arith::{Evaluator, FVector, GuardConfig};
use fatsph::build;
use fatsph::cw::CwComplex;
use fatsph::metrics;
use fatsph::patmat::{self, patterns, BinaryMatrix};
use fatsph::realize;
use fatsph::shelling;
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn matrix() -> impl Strategy<Value = BinaryMatrix> {
    (1usize..7, 1usize..9).prop_flat_map(|(r, c)| {
        proptest::collection::vec(proptest::collection::vec(any::<bool>(), c), r).prop_map(move |d| {
            let rows: Vec<Vec<u32>> = d
                .iter()
                .map(|row| row.iter().enumerate().filter(|(_, &b)| b).map(|(j, _)| j as u32 + 1).collect())
                .collect();
            BinaryMatrix::new(r, c, rows).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn specialized_containment_matches_generic(m in matrix()) {
        for name in ["N", "Np", "ones24", "alt25a", "alt25b"] {
            let p = patterns::by_name(name).unwrap();
            prop_assert_eq!(patmat::contains(&m, &p), patmat::contains_generic(&m, &p), "{}", name);
        }
    }

    #[test]
    fn containment_is_transpose_invariant_for_ones(m in matrix()) {
        let p = patterns::ones24();
        let pt = p.transpose();
        prop_assert_eq!(patmat::contains_generic(&m, &p), patmat::contains_generic(&m.transpose(), &pt));
    }

    #[test]
    fn matrix_text_round_trips(m in matrix()) {
        let (back, b) = BinaryMatrix::from_text(&m.to_text(None)).unwrap();
        prop_assert_eq!(back, m);
        prop_assert!(b.is_none());
    }

    #[test]
    fn memo_does_not_change_values(s in 1u64..4, t in 1u64..6) {
        let mut a = Evaluator::new(GuardConfig::default());
        let mut b = Evaluator::without_memo(GuardConfig::default());
        prop_assert_eq!(a.ackermann(s, t).ok(), b.ackermann(s, t).ok());
        prop_assert_eq!(a.c_fn(s, t).ok(), b.c_fn(s, t).ok());
        prop_assert_eq!(a.k_fn(s, t).ok(), b.k_fn(s, t).ok());
        prop_assert_eq!(a.kprime_fn(s, t).ok(), b.kprime_fn(s, t).ok());
        prop_assert_eq!(a.r_fn(s, t).ok(), b.r_fn(s, t).ok());
        prop_assert_eq!(a.f_vec(s, t).ok(), b.f_vec(s, t).ok());
    }

    #[test]
    fn thin_row_deletion(m in matrix(), k in 1usize..5) {
        let d = m.delete_thin_rows(k);
        prop_assert!(d.rows.iter().all(|r| r.len() >= k));
        prop_assert_eq!(d.nrows, m.rows.iter().filter(|r| r.len() >= k).count());
        prop_assert_eq!(d.ncols, m.ncols);
    }

    #[test]
    fn ziegler_is_the_two_sided_band(f0 in 6u64..400, f3 in 6u64..400, d1 in 0u64..800, d2 in 0u64..800, c in 0u64..4000) {
        let f = FVector::from_u64([f0, f0 + d1, f3 + d2, f3]);
        prop_assume!(f0 + f3 != 10);
        let fat = metrics::fatness(&f).unwrap();
        let cx = metrics::complexity(&f, &c.into()).unwrap();
        let two = BigRational::from_integer(BigInt::from(2));
        let want = cx <= &two * &fat - &two && fat <= &two * &cx - &two;
        prop_assert_eq!(metrics::ziegler_check(&f, &c.into()).unwrap(), want);
        let num = BigInt::from(f0 + d1 + f3 + d2) - 20;
        prop_assert_eq!(fat, BigRational::new(num, BigInt::from(f0 + f3) - 10));
    }

    #[test]
    fn decimal_of_small_integers_is_exact(v in 0i64..1_000_000) {
        let r = BigRational::from_integer(BigInt::from(v));
        prop_assert_eq!(metrics::to_decimal(&r, 7), v.to_string());
    }

    #[test]
    fn decimal_has_bounded_relative_error(n in 1i64..10_000_000, d in 1i64..10_000_000) {
        let r = BigRational::new(BigInt::from(n), BigInt::from(d));
        let s = metrics::to_decimal(&r, 6);
        let x: f64 = s.parse().unwrap();
        let exact = n as f64 / d as f64;
        prop_assert!(((x - exact) / exact).abs() <= 5.1e-6, "{} vs {}", s, exact);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn hull_is_independent_of_point_order(perm in Just((0..11usize).collect::<Vec<_>>()).prop_shuffle()) {
        let pts = realize::s12_points();
        let shuffled: Vec<_> = perm.iter().map(|&i| pts[i].clone()).collect();
        let a = realize::face_lattice(&realize::hull4(&pts).unwrap());
        let b = realize::face_lattice(&realize::hull4(&shuffled).unwrap());
        prop_assert!(realize::iso_check(&a, &b));
    }

    #[test]
    fn incidence_counts_agree(t in 2u64..20) {
        let x = build::build_s(1, t).unwrap();
        prop_assert_eq!(metrics::count_f03(&x.complex), metrics::count_f03_by_stars(&x.complex));
        prop_assert_eq!(x.complex.euler_char(), 0);
    }

    #[test]
    fn reversed_shelling_is_a_shelling(t in 2u64..9) {
        let x = build::build_s(1, t).unwrap();
        let mut o = shelling::shelling_order(&x).unwrap();
        prop_assert!(shelling::verify_shelling(&x.complex, &o).verified);
        o.reverse();
        prop_assert!(shelling::verify_shelling(&x.complex, &o).verified);
    }

    #[test]
    fn json_round_trip_is_identical(t in 2u64..6, s in 1u64..3) {
        prop_assume!(s == 1 || t <= 3);
        let x = build::build_x(s, t).unwrap();
        let mut buf = Vec::new();
        x.complex.write_json(&mut buf, &x.meta.to_json("ball", None)).unwrap();
        let (c, meta) = CwComplex::read_json(&buf[..]).unwrap();
        prop_assert_eq!(c.len(), x.complex.len());
        for id in 0..c.len() as u32 {
            prop_assert_eq!(c.face(id), x.complex.face(id));
        }
        prop_assert_eq!(build::BallMeta::from_json(&meta).unwrap(), x.meta.clone());
        let mut again = Vec::new();
        c.write_json(&mut again, &meta).unwrap();
        prop_assert_eq!(again, buf);
    }
}
