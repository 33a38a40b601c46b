use num_bigint::BigInt;
use num_traits::{One, Zero};
use origami_core::algebra::{
    cyclotomic, irreducible_over_q, isolate_real_roots, sturm_count, Bound, Certificate, QPoly, Status,
};
use origami_core::numerics::Rational;
use proptest::prelude::*;

fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `∏ (x − r)` times `x² + c` (no real roots for `c > 0`).
fn with_roots(roots: &[i64], c: i64) -> QPoly {
    let lin = QPoly::from_roots(&roots.iter().map(|r| q(*r)).collect::<Vec<_>>());
    &lin * &QPoly::from_i64s(&[c, 0, 1])
}

fn distinct(mut v: Vec<i64>) -> Vec<i64> {
    v.sort_unstable();
    v.dedup();
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn sturm_counts_constructed_roots(roots in prop::collection::vec(-20i64..=20, 1..6), c in 1i64..50, lo in -25i64..25, span in 0i64..30) {
        let f = with_roots(&roots, c);
        let d = distinct(roots.clone());
        let total = sturm_count(&f, &Bound::NegInf, &Bound::PosInf).unwrap().count;
        prop_assert_eq!(total, d.len());
        let hi = lo + span;
        let brute = d.iter().filter(|r| **r > lo && **r <= hi).count();
        let got = sturm_count(&f, &Bound::Finite(q(lo)), &Bound::Finite(q(hi))).unwrap().count;
        prop_assert_eq!(got, brute);
    }

    #[test]
    fn isolation_is_sound(roots in prop::collection::vec(-30i64..=30, 1..7)) {
        let f = with_roots(&roots, 3);
        let d = distinct(roots);
        let iso = isolate_real_roots(&f).unwrap();
        prop_assert_eq!(iso.intervals.len(), d.len());
        for (k, (lo, hi)) in iso.intervals.iter().enumerate() {
            prop_assert!(lo < hi);
            let inside: Vec<&i64> = d.iter().filter(|r| q(**r) > *lo && q(**r) <= *hi).collect();
            prop_assert_eq!(inside, vec![&d[k]]);
        }
    }

    #[test]
    fn reducible_witness_divides(a in prop::collection::vec(-9i64..=9, 2..4), b in prop::collection::vec(-9i64..=9, 2..4), la in 1i64..4, lb in 1i64..4) {
        let mut a = a; a.push(la);
        let mut b = b; b.push(lb);
        let f = &QPoly::from_i64s(&a) * &QPoly::from_i64s(&b);
        let v = irreducible_over_q(&f);
        prop_assert_ne!(v.status, Status::Irreducible);
        if let Some(Certificate::Factor { factor }) = &v.witness {
            prop_assert!(f.exact_div(factor).is_some());
            let deg = factor.degree().unwrap();
            prop_assert!(deg >= 1 && deg < f.degree().unwrap());
        }
        prop_assert!(v.verify(&f));
    }

    #[test]
    fn cyclotomic_product(n in 1usize..=40) {
        let mut prod = QPoly::one();
        for d in (1..=n).filter(|d| n % d == 0) {
            prod = &prod * &cyclotomic(d);
        }
        let mut c = vec![Rational::zero(); n + 1];
        c[0] = -Rational::one();
        c[n] = Rational::one();
        prop_assert_eq!(prod, QPoly::new(c));
    }
}

#[test]
fn pd_certificate_verifies() {
    let pd: QPoly = "4x^7+51x^6+160x^5-246x^4-1836x^3-1785x^2+1800x+2160".parse().unwrap();
    let v = irreducible_over_q(&pd);
    assert_eq!(v.status, Status::Irreducible);
    assert!(v.verify(&pd));
    assert_eq!(sturm_count(&pd, &Bound::NegInf, &Bound::PosInf).unwrap().count, 5);
}
