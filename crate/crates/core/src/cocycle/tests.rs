use proptest::prelude::*;

use super::*;
use crate::algebra::{Algebra, BasisElement, Parameters};
use crate::arith::Rational;
use crate::dsl::preset;

fn q(s: &str) -> Rational {
    s.parse().unwrap()
}

fn svir(lambda: &str, mu: &str) -> Algebra {
    preset("svir", &Parameters::lambda_mu(q(lambda), q(mu))).unwrap()
}

fn witt() -> Algebra {
    preset("witt", &Parameters::new()).unwrap()
}

fn el(alg: &Algebra, fam: &str, i: i64) -> BasisElement {
    BasisElement::new(alg.spec().family_id(fam).unwrap(), i)
}

fn labels(alg: &Algebra, pairs: &PairIndexing) -> Vec<String> {
    pairs
        .pairs()
        .iter()
        .map(|&(x, y)| format!("{},{}", alg.label(x), alg.label(y)))
        .collect()
}

fn window(n: u32) -> Window {
    Window::new(n, 3).unwrap()
}

#[test]
fn window_validation() {
    assert!(Window::new(12, 0).is_err());
    assert!(Window::new(5, 3).is_err());
    let w = Window::new(6, 3).unwrap();
    assert_eq!(w.core_half_width(), 3);
    assert!(w.core_contains(-3) && !w.core_contains(4));
    assert_eq!(w.widened(2).half_width(), 10);
    assert_eq!(Window::default(), Window::new(12, 3).unwrap());
}

#[test]
fn pair_enumeration_examples() {
    let zero = Rational::zero();
    let third = svir("2", "1/3");
    let pairs = enumerate_pairs(&third, 2, &zero);
    assert_eq!(
        labels(&third, &pairs),
        ["L_-2,L_2", "L_-1,L_1", "Y_-2,M_1", "Y_-1,M_0", "Y_0,M_-1", "Y_1,M_-2"]
    );

    let fifth = svir("2", "1/5");
    assert_eq!(labels(&fifth, &enumerate_pairs(&fifth, 2, &zero)), ["L_-2,L_2", "L_-1,L_1"]);

    let one = svir("2", "1");
    assert_eq!(
        labels(&one, &enumerate_pairs(&one, 1, &zero)),
        ["L_-1,L_1", "L_-1,Y_0", "L_-1,M_-1", "L_0,Y_-1"]
    );
}

#[test]
fn witt_row_example() {
    let w = witt();
    let pairs = enumerate_pairs(&w, 3, &Rational::zero());
    let row = constraint_row(&w, &pairs, [el(&w, "L", 1), el(&w, "L", 2), el(&w, "L", -3)]).unwrap();
    let col = |a: i64, b: i64| pairs.column(el(&w, "L", a), el(&w, "L", b)).unwrap();
    let mut expected = vec![(col(-3, 3), q("-1")), (col(-1, 1), q("-5")), (col(-2, 2), q("4"))];
    expected.sort();
    assert_eq!(row, expected);
}

#[test]
fn window_exit_drops_row() {
    let w = witt();
    let pairs = enumerate_pairs(&w, 3, &Rational::zero());
    // [L_2, L_3] = L_5 leaves the window.
    assert_eq!(constraint_row(&w, &pairs, [el(&w, "L", 2), el(&w, "L", 3), el(&w, "L", -5)]), None);
}

#[test]
fn yy_row_has_no_yy_entry_at_half_integral_mu() {
    let a = svir("2", "1/2");
    let pairs = enumerate_pairs(&a, 6, &Rational::zero());
    for m in -2..=2 {
        let n = -m - 1;
        let row = constraint_row(&a, &pairs, [el(&a, "L", 0), el(&a, "Y", m), el(&a, "Y", n)]).unwrap();
        let lm = pairs.column(el(&a, "L", 0), el(&a, "M", -1)).unwrap();
        let expected: Vec<(usize, Rational)> = if m == n { vec![] } else { vec![(lm, Rational::from(m - n))] };
        assert_eq!(row, expected, "m = {m}");
    }
}

#[test]
fn vacuous_triple_emits_no_row() {
    let a = svir("1", "1");
    let pairs = enumerate_pairs(&a, 4, &q("3"));
    let triple = [el(&a, "Y", 0), el(&a, "M", -1), el(&a, "M", 0)];
    assert_eq!(constraint_row(&a, &pairs, triple), Some(vec![]));
    let system = assemble_constraints(&a, 4, &q("3"));
    assert!(!system.triples.contains(&triple));
}

#[test]
fn cocycle_space_examples() {
    let zero = Rational::zero();
    assert_eq!(cocycle_space(&witt(), 12, &zero).len(), 2);
    assert_eq!(cocycle_space(&svir("5/2", "1/5"), 12, &zero).len(), 2);
    let empty = cocycle_space(&svir("2", "1/5"), 6, &q("1/7"));
    assert_eq!((empty.dimension(), empty.len()), (0, 0));
}

#[test]
fn coboundary_space_examples() {
    let zero = Rational::zero();
    let a = svir("2", "1/5");
    let pairs = enumerate_pairs(&a, 3, &zero);
    let gens = coboundary_generators(&a, &pairs);
    assert_eq!(gens.len(), 1);
    assert_eq!(gens[0].0, el(&a, "L", 0));
    let psi = CocycleAssignment::from_vector(&pairs, &gens[0].1);
    for n in -3..=3i64 {
        assert_eq!(psi.get(el(&a, "L", n), el(&a, "L", -n)), Rational::from(-2 * n));
    }
    assert_eq!(coboundary_space(&a, 3, &zero).len(), 1);

    let b = svir("2", "1");
    let pairs = enumerate_pairs(&b, 4, &zero);
    let gens: Vec<String> = coboundary_generators(&b, &pairs)
        .iter()
        .map(|(z, _)| b.label(*z))
        .collect();
    assert_eq!(gens, ["L_0", "Y_-1", "M_-2"]);
    assert!(coboundary_space(&b, 4, &zero).len() <= 3);

    assert!(coboundary_space(&a, 6, &q("1/7")).is_empty());
}

#[test]
fn h2_examples() {
    let zero = Rational::zero();
    for (lambda, mu, expected) in [("-1", "1/3", 2), ("-1", "1", 3), ("0", "1", 1)] {
        let report = h2(&svir(lambda, mu), Window::default(), &zero, 1).unwrap();
        assert_eq!(report.core_h2_dim, expected, "lambda={lambda} mu={mu}");
        assert_eq!(report.predicted_dim, Some(expected));
        assert_eq!(report.agree, Some(true));
        assert_eq!(report.h2_dim, report.cocycle_dim - report.coboundary_dim);
        assert!(report.core_h2_dim <= report.h2_dim);
    }
    let report = h2(&witt(), Window::default(), &zero, 2).unwrap();
    assert_eq!((report.core_h2_dim, report.stabilized), (1, true));
    assert_eq!(report.matched_names(), ["virasoro"]);
    assert!(h2(&witt(), Window::default(), &zero, 0).is_err());
}

#[test]
fn predicted_dim_table() {
    let p = |l: &str, m: &str| predicted_dim(&q(l), &q(m));
    assert_eq!(p("2", "0"), None);
    assert_eq!(p("-1", "1/5"), Some(1));
    assert_eq!(p("-1", "1/2"), Some(1));
    assert_eq!(p("-1", "4/3"), Some(2));
    assert_eq!(p("5", "2/3"), Some(1));
    assert_eq!(p("-1", "-2"), Some(3));
    assert_eq!(p("-3", "1"), Some(2));
    assert_eq!(p("1", "-1"), Some(2));
    assert_eq!(p("0", "1"), Some(1));
}

fn virasoro() -> KnownCocycle {
    find_known("virasoro").unwrap()
}

#[test]
fn virasoro_verifies_on_witt() {
    let w = witt();
    let (psi, report) = verify_known(&w, 20, &virasoro()).unwrap();
    assert!(report.passed());
    assert!(report.triples_checked > 0);
    assert_eq!(psi.get(el(&w, "L", 3), el(&w, "L", -3)), q("2"));
    assert_eq!(psi.get(el(&w, "L", -3), el(&w, "L", 3)), q("-2"));
    assert!(!is_coboundary(&w, &Window::new(20, 3).unwrap(), &psi).unwrap());
}

#[test]
fn corrupted_virasoro_fails() {
    let w = witt();
    let mut bad = virasoro();
    // n^5 / 12 written in m = -n.
    bad.coefficient = crate::dsl::parse_polynomial("-m*m*m*m*m/12", &COEFFICIENT_VARIABLES).unwrap();
    let (psi, report) = verify_known(&w, 12, &bad).unwrap();
    assert!(!report.passed());
    let witness = report.witness.unwrap();
    assert_eq!(identity_residual(&w, &psi, witness.triple, 12), Some(witness.residual));
    let triple = [el(&w, "L", 1), el(&w, "L", 2), el(&w, "L", -3)];
    assert!(!identity_residual(&w, &psi, triple, 12).unwrap().is_zero());
}

#[test]
fn c2_verifies_and_integrality_is_checked() {
    let c2 = find_known("c2").unwrap();
    let a = svir("-1", "1");
    let (psi, report) = verify_known(&a, 12, &c2).unwrap();
    assert!(report.passed());
    assert_eq!(psi.get(el(&a, "M", -3), el(&a, "Y", 0)), q("1"));
    assert!(!is_coboundary(&a, &Window::default(), &psi).unwrap());

    let err = verify_known(&svir("-1", "1/5"), 12, &c2).unwrap_err();
    assert!(err.to_string().contains("requires 3*mu integer"), "{err}");
    assert!(matches!(
        find_known("c1").unwrap().instantiate(&svir("-1", "1/3"), 4),
        Err(CocycleError::Integrality { .. })
    ));
}

#[test]
fn coboundary_detection() {
    let a = svir("-1", "1");
    let win = window(8);
    let mut f = LinearFunctional::new();
    f.set(el(&a, "L", 0), q("3/2"));
    f.set(el(&a, "Y", -1), q("-2"));
    f.set(el(&a, "M", -2), q("5"));
    let psi = f.coboundary(&a, 8);
    assert!(!psi.is_empty());
    assert!(is_coboundary(&a, &win, &psi).unwrap());
    assert!(is_coboundary(&a, &win, &CocycleAssignment::new()).unwrap());

    let mut mixed = psi.clone();
    mixed.set(el(&a, "L", 1), el(&a, "L", 2), q("1")).unwrap();
    assert_eq!(is_coboundary(&a, &win, &mixed), Err(CocycleError::NotHomogeneous));
}

#[test]
fn degree_reduce_kills_nonzero_degrees() {
    let a = svir("2", "1");
    let win = window(8);
    let mut g = LinearFunctional::new();
    g.set(el(&a, "L", 2), q("1"));
    g.set(el(&a, "Y", 3), q("-7/3"));
    g.set(el(&a, "M", -5), q("2"));
    let psi = g.coboundary(&a, 8);
    let reduced = degree_reduce(&a, &win, &psi).unwrap();
    let interior = reduced.filter(|x, y| {
        let sum = x.index + y.index;
        x.index.abs() <= 5 && y.index.abs() <= 5 && sum.abs() <= 8
    });
    assert!(interior.is_empty(), "{interior:?}");
}

#[test]
fn degree_reduce_leaves_degree_zero_alone() {
    let a = svir("-1", "1");
    let c1 = find_known("c1").unwrap().instantiate(&a, 8).unwrap();
    assert_eq!(degree_reduce(&a, &window(8), &c1).unwrap(), c1);
}

#[test]
fn degree_reduce_on_mixture() {
    let w = witt();
    let win = window(10);
    let xi = virasoro().instantiate(&w, 10).unwrap();
    let mut g = LinearFunctional::new();
    g.set(el(&w, "L", 1), q("4"));
    g.set(el(&w, "L", -2), q("-1/3"));
    g.set(el(&w, "L", 0), q("2"));
    let psi = xi.add_scaled(&Rational::one(), &g.coboundary(&w, 10));
    let reduced = degree_reduce(&w, &win, &psi).unwrap();
    let zero = Rational::zero();
    let degree_zero = reduced.restrict_to_degree(&w, &zero);
    let system = DegreeSystem::build(&w, win, &zero);
    assert!(system.in_cocycle_space(&degree_zero));
    assert!(is_coboundary(&w, &win, &degree_zero.sub(&xi)).unwrap());
    assert!(!is_coboundary(&w, &win, &degree_zero).unwrap());
}

#[test]
fn degree_reduce_rejects_non_cocycles() {
    let w = witt();
    let mut psi = CocycleAssignment::new();
    psi.set(el(&w, "L", -1), el(&w, "L", 1), q("1")).unwrap();
    psi.set(el(&w, "L", -2), el(&w, "L", 2), q("1")).unwrap();
    assert!(matches!(
        degree_reduce(&w, &window(6), &psi),
        Err(CocycleError::NotACocycle { .. })
    ));
}

#[test]
fn grading_element_is_l0() {
    let a = svir("1/2", "1/3");
    assert_eq!(grading_element(&a, 4), Some(el(&a, "L", 0)));
}

/// The weight-0 functional on `M_{-2mu}` is pinned down by the single value
/// `psi(L_1, M_{-2mu-1}) = -(lambda + 1) f(M_{-2mu})`, and quotienting makes
/// no use of that normalisation.
#[test]
fn weight_zero_normalisation_branch() {
    let a = svir("2", "1/2");
    let m0 = el(&a, "M", -1);
    let mut g = LinearFunctional::new();
    g.set(m0, q("5/7"));
    let psi = g.coboundary(&a, 8);
    let recovered = -psi.get(el(&a, "L", 1), el(&a, "M", -2)) / q("3");
    assert_eq!(recovered, q("5/7"));
    assert_eq!(degree_reduce(&a, &window(8), &psi).unwrap(), psi);
    assert!(is_coboundary(&a, &window(8), &psi).unwrap());
}

#[test]
fn nonzero_degree_examples() {
    assert_eq!(
        nonzero_degree_triviality(&witt(), window(10), &Rational::zero()),
        Err(CocycleError::DegreeZero)
    );
    assert!(nonzero_degree_triviality(&witt(), window(10), &q("3")).unwrap());
    assert!(nonzero_degree_triviality(&svir("-1", "1"), window(10), &q("1")).unwrap());
    assert!(nonzero_degree_triviality(&svir("1", "2"), window(10), &q("-2")).unwrap());
}

#[test]
fn match_known_examples() {
    let zero = Rational::zero();
    let report = h2(&svir("-3", "2"), Window::default(), &zero, 1).unwrap();
    assert_eq!(report.matched_names(), ["virasoro", "c-minus3"]);
    let report = h2(&svir("1", "-1"), Window::default(), &zero, 1).unwrap();
    assert_eq!(report.matched_names(), ["virasoro", "c-plus1"]);
    let report = h2(&svir("7", "1/4"), Window::default(), &zero, 1).unwrap();
    assert_eq!(report.matched_names(), ["virasoro"]);
    assert_eq!(report.core_h2_dim, 1);
    assert_eq!(report.matched_known.len(), 1);
}

#[test]
fn assignment_json_round_trip() {
    let a = svir("-1", "1");
    let psi = find_known("c1").unwrap().instantiate(&a, 5).unwrap();
    let json = psi.to_json(a.spec());
    assert_eq!(json["L:-3,Y:2"], serde_json::json!("6"));
    assert_eq!(CocycleAssignment::from_json(a.spec(), &json).unwrap(), psi);

    let flipped = serde_json::json!({"Y:0,L:-1": "2/3"});
    let parsed = CocycleAssignment::from_json(a.spec(), &flipped).unwrap();
    assert_eq!(parsed.get(el(&a, "L", -1), el(&a, "Y", 0)), q("-2/3"));

    for bad in [
        serde_json::json!([1]),
        serde_json::json!({"L:1": "1"}),
        serde_json::json!({"Q:1,L:2": "1"}),
        serde_json::json!({"L:1,L:2": 1}),
        serde_json::json!({"L:1,L:2": "0.5"}),
        serde_json::json!({"L:1,L:1": "1"}),
    ] {
        assert!(CocycleAssignment::from_json(a.spec(), &bad).is_err(), "{bad}");
    }
}

#[test]
fn report_and_registry_serialize() {
    let report = h2(&svir("-1", "1/3"), window(8), &Rational::zero(), 1).unwrap();
    let text = serde_json::to_string(&report).unwrap();
    let back: H2Report = serde_json::from_str(&text).unwrap();
    assert_eq!(back, report);
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(value["mu"], serde_json::json!("1/3"));
    assert_eq!(value["registry"][1]["coefficient"], serde_json::json!("1"));

    let registry = known_registry();
    let text = serde_json::to_string(&registry).unwrap();
    let back: Vec<KnownCocycle> = serde_json::from_str(&text).unwrap();
    assert_eq!(back, registry);
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| Rational::new(n, d).unwrap())
}

fn grid_mu() -> impl Strategy<Value = Rational> {
    prop::sample::select(vec!["1", "-1", "2", "1/2", "1/3", "2/3", "1/4", "3/2"]).prop_map(q)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn coboundaries_are_cocycles(lambda in small_rational(), mu in grid_mu(), n in 6u32..9) {
        let a = preset("svir", &Parameters::lambda_mu(lambda, mu)).unwrap();
        let system = DegreeSystem::build(&a, window(n), &Rational::zero());
        for v in system.coboundaries.vectors() {
            prop_assert!(system.cocycles.contains(v).unwrap());
        }
        for v in system.cocycles.vectors() {
            let psi = CocycleAssignment::from_vector(system.pairs(), v);
            prop_assert!(verify_cocycle(&a, i64::from(n), &psi).passed());
        }
    }

    #[test]
    fn dimensions_ignore_basis_scaling(lambda in small_rational(), mu in grid_mu(), scale in small_rational()) {
        prop_assume!(!scale.is_zero());
        let a = preset("svir", &Parameters::lambda_mu(lambda, mu)).unwrap();
        let system = DegreeSystem::build(&a, window(7), &Rational::zero());
        let mut scaled: Vec<Vec<Rational>> = system.cocycles.vectors().to_vec();
        if let Some(first) = scaled.first_mut() {
            for x in first.iter_mut() {
                *x *= &scale;
            }
        }
        let rescaled = crate::linalg::VectorBasis::from_independent(system.pairs().len(), scaled).unwrap();
        prop_assert_eq!(rescaled.project_dimension(&system.core).unwrap(), system.core_cocycle_dim());
    }

    #[test]
    fn functional_coboundaries_are_detected(
        lambda in small_rational(),
        mu in grid_mu(),
        values in prop::collection::vec(small_rational(), 3),
    ) {
        let a = preset("svir", &Parameters::lambda_mu(lambda, mu)).unwrap();
        let zero = Rational::zero();
        let mut f = LinearFunctional::new();
        for (family, v) in a.spec().family_ids().zip(values) {
            if let Some(z) = a.element_of_weight(family, &zero) {
                f.set(z, v);
            }
        }
        let psi = f.coboundary(&a, 7).restrict_to_degree(&a, &zero);
        prop_assert!(is_coboundary(&a, &window(7), &psi).unwrap());
    }
}
