use coreseq::convolve::GuessRequest;
use coreseq::guess::verify_relation;
use coreseq::lmatrix::LMatrix;
use coreseq::omega::{
    load_builtin, parse_scenario, ChannelSide, DimensionChannel, InvariantKind, OmegaClass, OrbitRep, Scenario,
    TensorSystem, BUILTINS,
};
use coreseq::quasipoly::QuasiPoly;
use coreseq::ring::{rat, LaurentPoly, Rational, UniPoly};
use coreseq::Error;
use proptest::prelude::*;

fn natural() -> impl Strategy<Value = LaurentPoly> {
    natural_in(-2..=2)
}

fn natural_in(exps: std::ops::RangeInclusive<i64>) -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((exps, 0i64..=2), 0..3)
        .prop_map(|t| LaurentPoly::from_terms(t.into_iter().map(|(e, c)| (e, rat(c)))))
}

fn matrix(size: usize) -> impl Strategy<Value = LMatrix> {
    prop::collection::vec(prop::collection::vec(natural(), size), size)
        .prop_map(|rows| LMatrix::new(rows).unwrap())
}

fn plus_matrix(size: usize) -> impl Strategy<Value = LMatrix> {
    prop::collection::vec(prop::collection::vec(natural_in(0..=2), size), size)
        .prop_map(|rows| LMatrix::new(rows).unwrap())
}

fn channel(a: u64, b: u64) -> DimensionChannel {
    let qp = |start| QuasiPoly::new(vec![UniPoly::from_i64s(&[a as i64, b as i64])], start).unwrap();
    DimensionChannel::new(
        "dim",
        ChannelSide::new(vec![], Some(qp(0))),
        ChannelSide::new(vec![], Some(qp(1))),
    )
    .unwrap()
}

fn system() -> impl Strategy<Value = TensorSystem> {
    system_over(false)
}

fn system_over(plus: bool) -> impl Strategy<Value = TensorSystem> {
    (1usize..=3)
        .prop_flat_map(move |s| {
            let t = if plus { plus_matrix(s).boxed() } else { matrix(s).boxed() };
            (t, prop::collection::vec((1u64..=3, 0u64..=2), s))
        })
        .prop_map(|(t, dims)| {
            let s = t.size();
            let orbits = dims
                .iter()
                .enumerate()
                .map(|(j, &(a, b))| OrbitRep::new(&format!("N{j}"), &format!("N{j}"), vec![channel(a, b)]).unwrap())
                .collect();
            let mut initial = vec![LaurentPoly::zero(); s];
            initial[0] = LaurentPoly::one();
            TensorSystem::new("random", orbits, t, initial).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn cayley_hamilton(t in matrix(3)) {
        prop_assert!(t.cayley_hamilton_check());
        let cp = t.char_poly();
        prop_assert_eq!(cp.degree(), 3);
        prop_assert_eq!(cp.eval_one(), t.eval_one().char_poly().unwrap());
    }

    #[test]
    fn rows_advance_by_the_matrix(sys in system()) {
        let rows = sys.core_rows(6).unwrap();
        for n in 1..6 {
            prop_assert_eq!(&rows[n], &sys.matrix().row_advance(&rows[n - 1]).unwrap());
        }
        prop_assert_eq!(&rows[3], &sys.core_row(4).unwrap());
    }

    #[test]
    fn summand_counts_follow_their_recurrence(sys in system()) {
        let s = sys.invariant_seq(InvariantKind::S, 16).unwrap();
        let rec = sys.s_recurrence().unwrap();
        prop_assert_eq!(rec.terms(16), s);
    }

    #[test]
    fn plus_dimensions_are_cfinite(sys in system_over(true)) {
        prop_assert_ne!(sys.classify(), OmegaClass::Minus);
        let request = GuessRequest::CFinite { max_order: 9, max_offset: 3 };
        let r = sys.invariant_guess(InvariantKind::C, 2 * 9 + 3 + 8, request).unwrap();
        prop_assert!(r.found());
        prop_assert!(verify_relation(&sys.invariant_seq(InvariantKind::C, 50).unwrap(), &r));
    }

    #[test]
    fn scenario_text_round_trip(sys in system()) {
        let text = sys.to_scenario();
        let Scenario::System(back) = parse_scenario(&text).unwrap() else {
            panic!("system expected");
        };
        prop_assert_eq!(back.to_scenario(), text);
        prop_assert_eq!(
            back.invariant_seq(InvariantKind::C, 6).unwrap(),
            sys.invariant_seq(InvariantKind::C, 6).unwrap()
        );
    }
}

#[test]
fn builtins_load_and_round_trip() {
    for id in BUILTINS {
        match load_builtin(id).unwrap() {
            Scenario::System(sys) => {
                let Scenario::System(back) = parse_scenario(&sys.to_scenario()).unwrap() else {
                    panic!("{id} round trip");
                };
                assert_eq!(back.to_scenario(), sys.to_scenario(), "{id}");
            }
            Scenario::Prefix(p) => assert_eq!(p.terms.len(), 6, "{id}"),
        }
    }
}

#[test]
fn classes_of_the_builtins() {
    let Scenario::System(c7) = load_builtin("c7").unwrap() else { panic!() };
    assert_eq!(c7.classify(), OmegaClass::Plus);
    let Scenario::System(z) = load_builtin("z3z3").unwrap() else { panic!() };
    assert_eq!(z.classify(), OmegaClass::Neither);
    let (gamma, _) = z.gamma_estimate(12).unwrap();
    assert!((gamma - 3.0).abs() < 0.5);
}

#[test]
fn scenario_errors_name_the_problem() {
    let bad = "# bad entry\n[system] name=t size=1\n[orbit A] name=A\n\
channel dim forward prefix=[1] tail=quasipoly T=1 start=0 polys=[1]\n\
channel dim backward prefix=[] tail=quasipoly T=1 start=1 polys=[1]\n\
[matrix]\n\nT[1][1] = \"0 - w\"\n[initial] v[1] = \"1\"\n";
    let err = parse_scenario(bad).unwrap_err();
    match err {
        Error::Scenario { line, msg } => {
            assert_eq!(line, 8);
            assert!(msg.contains("T[1][1]"), "{msg}");
        }
        other => panic!("unexpected {other}"),
    }
    let missing = "[system] name=t size=2\n";
    assert!(parse_scenario(missing).is_err());
}

#[test]
fn c7_engine_values() {
    let Scenario::System(c7) = load_builtin("c7").unwrap() else { panic!() };
    let c = c7.invariant_seq(InvariantKind::C, 14).unwrap();
    let want: Vec<Rational> = [2, 4, 8, 16, 32, 57, 114, 193, 386, 639, 1278, 2094, 4188, 6829]
        .iter()
        .map(|&v| rat(v))
        .collect();
    assert_eq!(c, want);
}
