mod common;

use std::collections::BTreeMap;

use common::*;
use lieext_core::algebra::check_jacobi_symbolic;
use lieext_core::dsl::{parse, parse_bytes, parse_polynomial, render, svir_spec, witt_spec, SVIR_SOURCE, WITT_SOURCE};
use lieext_core::{IndexPolynomial, Rational};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn presets_round_trip() {
    for spec in [svir_spec(), witt_spec()] {
        let text = render(&spec);
        let back = parse(&text).unwrap();
        assert_eq!(back.spec, spec);
        assert_eq!(render(&back.spec), text);
    }
}

#[test]
fn presets_satisfy_jacobi_symbolically() {
    assert!(check_jacobi_symbolic(&svir_spec()).passed());
    assert!(check_jacobi_symbolic(&witt_spec()).passed());
}

fn poly_from_seed(seed: u64, vars: &[&str]) -> IndexPolynomial {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut p = IndexPolynomial::zero();
    for _ in 0..rand::Rng::gen_range(&mut rng, 0..5) {
        let mut t = IndexPolynomial::constant(random_rational(&mut rng, 12));
        for v in vars {
            for _ in 0..rand::Rng::gen_range(&mut rng, 0..3) {
                t = &t * &IndexPolynomial::var(v);
            }
        }
        p = p + t;
    }
    p
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_specs_round_trip(seed in any::<u64>()) {
        let spec = random_spec(&mut ChaCha8Rng::seed_from_u64(seed), 0);
        let text = render(&spec);
        let parsed = parse(&text).map_err(|d| TestCaseError::fail(format!("{d:?}\n{text}")))?;
        prop_assert_eq!(&parsed.spec, &spec);
        prop_assert_eq!(render(&parsed.spec), text);
    }

    #[test]
    fn evaluation_is_a_ring_homomorphism(a in any::<u64>(), b in any::<u64>(), x in -9i64..9, y in -9i64..9) {
        let vars = ["m", "n"];
        let (p, r) = (poly_from_seed(a, &vars), poly_from_seed(b, &vars));
        let at: BTreeMap<String, Rational> =
            [("m".to_string(), Rational::from(x)), ("n".to_string(), Rational::from(y))].into();
        let (pv, rv) = (p.eval(&at).unwrap(), r.eval(&at).unwrap());
        prop_assert_eq!((&p + &r).eval(&at).unwrap(), &pv + &rv);
        prop_assert_eq!((&p - &r).eval(&at).unwrap(), &pv - &rv);
        prop_assert_eq!((&p * &r).eval(&at).unwrap(), &pv * &rv);
        prop_assert_eq!((-&p).eval(&at).unwrap(), -pv);
    }

    #[test]
    fn polynomial_text_round_trip(a in any::<u64>()) {
        let vars = ["m", "mu", "lambda"];
        let p = poly_from_seed(a, &vars);
        prop_assert_eq!(parse_polynomial(&p.to_string(), &vars).unwrap(), p);
    }

    #[test]
    fn arbitrary_bytes_never_panic(bytes in prop::collection::vec(any::<u8>(), 0..256)) {
        match parse_bytes(&bytes) {
            Ok(parsed) => prop_assert!(parse(&render(&parsed.spec)).is_ok()),
            Err(diagnostics) => prop_assert!(!diagnostics.is_empty()),
        }
    }
}

#[test]
fn mutated_sources_yield_diagnostics_or_specs() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..2000 {
        let bytes = fuzz_input(&mut rng, &[SVIR_SOURCE, WITT_SOURCE]);
        match parse_bytes(&bytes) {
            Ok(parsed) => assert_eq!(parse(&render(&parsed.spec)).unwrap().spec, parsed.spec),
            Err(diagnostics) => assert!(diagnostics.iter().any(|d| d.is_error())),
        }
    }
}

#[test]
fn deeply_nested_input_is_rejected_cleanly() {
    let src = format!("algebra g() {{ family A weight {}0{}; }}", "(".repeat(5000), ")".repeat(5000));
    assert!(parse(&src).is_err());
}
