use coreseq::cfinite::{CFiniteSeq, HilbertSeries};
use coreseq::guess::{guess_algebraic, guess_cfinite, guess_precursive, verify_relation, Relation, DEFAULT_MARGIN};
use coreseq::multiseq::{bi_hadamard, BiSequence, CFinite2Seq, RatBiSeries};
use coreseq::quasipoly::{qp_fit, QuasiPoly};
use coreseq::ring::{rat, Rational, UniPoly};
use proptest::prelude::*;

fn cfinite() -> impl Strategy<Value = CFiniteSeq> {
    (1usize..=3)
        .prop_flat_map(|order| {
            (
                prop::collection::vec(-3i64..=3, order),
                prop::collection::vec(-4i64..=4, order),
                0usize..=2,
                prop::collection::vec(-4i64..=4, 2),
            )
        })
        .prop_filter("genuine order", |(c, ..)| *c.last().unwrap() != 0)
        .prop_map(|(c, init, extra, tail)| {
            let mut prefix: Vec<Rational> = init.iter().map(|&v| rat(v)).collect();
            prefix.extend(tail[..extra].iter().map(|&v| rat(v)));
            let from = prefix.len();
            CFiniteSeq::new(c.iter().map(|&v| rat(v)).collect(), from, prefix).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn sum_and_product_are_termwise(a in cfinite(), b in cfinite()) {
        let (ta, tb) = (a.terms(40), b.terms(40));
        let s = a.add(&b).terms(40);
        let h = a.hadamard(&b).terms(40);
        for n in 0..40 {
            prop_assert_eq!(&s[n], &(&ta[n] + &tb[n]));
            prop_assert_eq!(&h[n], &(&ta[n] * &tb[n]));
        }
    }

    #[test]
    fn partial_sums_then_differences(a in cfinite()) {
        let t = a.terms(40);
        let ps = a.partial_sums().terms(40);
        prop_assert_eq!(&ps[0], &t[0]);
        for n in 1..40 {
            prop_assert_eq!(&(&ps[n] - &ps[n - 1]), &t[n]);
        }
    }

    #[test]
    fn dilation_samples(a in cfinite(), d in 1usize..=4) {
        let t = a.terms(4 * 30);
        let dl = a.dilate(d).unwrap().terms(30);
        for n in 0..30 {
            prop_assert_eq!(&dl[n], &t[d * n]);
        }
    }

    #[test]
    fn hilbert_series_round_trip(a in cfinite()) {
        let h = a.hilbert_series();
        prop_assert_eq!(h.expand(40), a.terms(40));
        let back = CFiniteSeq::from_hilbert(&h).unwrap();
        prop_assert!(back.agrees_with(&a, 40));
    }

    #[test]
    fn guess_finds_a_relation_that_keeps_holding(a in cfinite()) {
        let fit = 2 * 6 + 3 + DEFAULT_MARGIN;
        let r = guess_cfinite(&a.terms(fit), 6, 3).unwrap();
        prop_assert!(r.found());
        prop_assert!(verify_relation(&a.terms(fit + 60), &r));
        let order = r.recurrence().unwrap().len();
        prop_assert!(order <= a.order());
    }

    #[test]
    fn quasipolynomials_are_refit(polys in prop::collection::vec(prop::collection::vec(-3i64..=3, 1..=3), 1..=3)) {
        let qp = QuasiPoly::new(polys.iter().map(|c| UniPoly::from_i64s(c)).collect(), 0).unwrap();
        let samples: Vec<(usize, Rational)> = (0..30).map(|n| (n, qp.eval(n).unwrap())).collect();
        let fit = qp_fit(&samples, 3, 2, 0).unwrap().expect("fit exists");
        for n in 0..60 {
            prop_assert_eq!(fit.eval(n).unwrap(), qp.eval(n).unwrap());
        }
        prop_assert!(fit.quasiperiod() <= qp.quasiperiod());
    }

    #[test]
    fn quasipolynomial_as_cfinite(polys in prop::collection::vec(prop::collection::vec(-3i64..=3, 1..=3), 1..=3)) {
        let qp = QuasiPoly::new(polys.iter().map(|c| UniPoly::from_i64s(c)).collect(), 0).unwrap();
        let seq = qp.to_cfinite();
        let t = seq.terms(40);
        for n in 0..40 {
            prop_assert_eq!(&t[n], &qp.eval(n).unwrap());
        }
    }

    #[test]
    fn bivariate_outer_products_round_trip(a in cfinite(), b in cfinite()) {
        let s = CFinite2Seq::outer(&a, &b);
        let r = s.to_rational().unwrap();
        let block = r.expand(12, 12).unwrap();
        let (ta, tb) = (a.terms(12), b.terms(12));
        for m in 0..12 {
            for n in 0..12 {
                prop_assert_eq!(&block[m][n], &(&ta[m] * &tb[n]));
            }
        }
    }

    #[test]
    fn bivariate_hadamard_is_symmetric(a in cfinite(), b in cfinite(), c in cfinite()) {
        let x = CFinite2Seq::outer(&a, &b);
        let y = CFinite2Seq::outer(&b, &c);
        prop_assert_eq!(bi_hadamard(&x, &y, 10).unwrap(), bi_hadamard(&y, &x, 10).unwrap());
        let h = x.hadamard(&y).unwrap();
        prop_assert_eq!(h.block(10, 10).unwrap(), bi_hadamard(&x, &y, 10).unwrap());
    }
}

#[test]
fn fibonacci_by_hand() {
    let fib = CFiniteSeq::from_i64(&[1, 1], &[0, 1]).unwrap();
    let t: Vec<Rational> = [0, 1, 1, 2, 3, 5, 8, 13, 21, 34].iter().map(|&v| rat(v)).collect();
    assert_eq!(fib.terms(10), t);
    assert_eq!(fib.hilbert_series(), HilbertSeries::parse("(t) / (1 - t - t^2)").unwrap());
    let sq = fib.hadamard(&fib);
    assert_eq!(sq.term(10), rat(55 * 55));
    assert_eq!(fib.partial_sums().term(9), rat(88));
    assert_eq!(fib.dilate(2).unwrap().term(5), rat(55));
}

#[test]
fn catalan_is_algebraic_and_holonomic() {
    let mut cat = vec![rat(1)];
    for n in 0..40i64 {
        let next = &cat[n as usize] * rat(2 * (2 * n + 1)) / rat(n + 2);
        cat.push(next);
    }
    let r = guess_algebraic(&cat, 1, 2, DEFAULT_MARGIN).unwrap();
    assert!(r.found());
    assert!(matches!(r.relation, Some(Relation::Algebraic { .. })));
    assert!(r.machine_line().starts_with("#eq "));
    let p = guess_precursive(&cat, 1, 1).unwrap();
    assert!(p.found());
    assert!(verify_relation(&cat, &p));
    assert!(!guess_cfinite(&cat, 10, 2).unwrap().found());
}

#[test]
fn central_binomials_from_the_rational_diagonal() {
    let r = RatBiSeries::parse("1 / (1 - t1 - t2)").unwrap();
    let d = r.diagonal(8).unwrap();
    let want: Vec<Rational> = [1, 2, 6, 20, 70, 252, 924, 3432].iter().map(|&v| rat(v)).collect();
    assert_eq!(d, want);
    assert_eq!(r.coeff(2, 3).unwrap(), rat(10));
    let h = r.substitute_one(0);
    assert!(h.is_err(), "1 - 1 - t2 has no constant term");
}

#[test]
fn short_data_is_rejected() {
    let terms: Vec<Rational> = (0..5).map(rat).collect();
    assert!(guess_cfinite(&terms, 4, 0).is_err());
}
