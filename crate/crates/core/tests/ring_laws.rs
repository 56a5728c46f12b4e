use coreseq::ring::{rat, LaurentPoly, Rational, UniPoly};
use proptest::prelude::*;

fn laurent() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-4i64..=4, -5i64..=5), 0..6)
        .prop_map(|t| LaurentPoly::from_terms(t.into_iter().map(|(e, c)| (e, rat(c)))))
}

fn unipoly() -> impl Strategy<Value = UniPoly> {
    prop::collection::vec(-6i64..=6, 0..6).prop_map(|c| UniPoly::from_i64s(&c))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn laurent_ring_axioms(a in laurent(), b in laurent(), c in laurent()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &LaurentPoly::one(), a.clone());
    }

    #[test]
    fn laurent_text_round_trip(a in laurent()) {
        let back = LaurentPoly::parse(&a.to_string()).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn laurent_evaluation_is_a_homomorphism(a in laurent(), b in laurent(), x in 1i64..=4) {
        let x = rat(x);
        prop_assert_eq!((&a * &b).eval(&x), a.eval(&x) * b.eval(&x));
        prop_assert_eq!((&a + &b).eval_one(), a.eval_one() + b.eval_one());
    }

    #[test]
    fn shift_moves_every_exponent(a in laurent(), k in -5i64..=5) {
        let shifted = a.shift(k);
        prop_assert_eq!(shifted.min_exp(), a.min_exp().map(|e| e + k));
        prop_assert_eq!(shifted, &a * &LaurentPoly::monomial(rat(1), k));
    }

    #[test]
    fn unipoly_division(a in unipoly(), d in unipoly()) {
        prop_assume!(!d.is_zero());
        let (q, r) = a.div_rem(&d);
        prop_assert_eq!(&(&q * &d) + &r, a);
        prop_assert!(r.is_zero() || r.degree() < d.degree());
    }

    #[test]
    fn gcd_divides_both(a in unipoly(), b in unipoly()) {
        prop_assume!(!a.is_zero() && !b.is_zero());
        let g = a.gcd(&b);
        prop_assert!(a.div_exact(&g).is_some());
        prop_assert!(b.div_exact(&g).is_some());
    }

    #[test]
    fn series_division_inverts_multiplication(num in unipoly(), den in unipoly()) {
        prop_assume!(den.coeff(0) != rat(0));
        let series = num.series_div(&den, 12).unwrap();
        let back = &UniPoly::new(series) * &den;
        prop_assert_eq!(back.truncate(12), num.truncate(12));
    }
}

#[test]
fn parses_mixed_signs_and_rationals() {
    let p = LaurentPoly::parse("3*w^-1 - 3*w^3 + 1/2").unwrap();
    assert_eq!(p.coeff(-1), rat(3));
    assert_eq!(p.coeff(3), rat(-3));
    assert_eq!(p.coeff(0), Rational::new(1.into(), 2.into()));
    assert!(!p.is_natural());
    assert!(LaurentPoly::parse("w - w").unwrap().is_zero());
}
