//! `.lie` text format for graded Lie algebra presentations.
//!
//! ```text
//! algebra NAME(param, ...) {
//!   family F weight EXPR;
//!   bracket [F i, G j] = EXPR H(i+j);
//!   bracket [F i, G j] = 0;
//! }
//! ```
//!
//! Weight expressions are polynomials in the parameters; bracket
//! coefficients are polynomials in the parameters and the two index
//! symbols. Division is allowed only by nonzero rational constants, and the
//! output index must be exactly the sum of the two index symbols. `#`
//! starts a line comment.

mod diagnostic;
mod parser;
mod presets;
mod render;

pub use diagnostic::{Diagnostic, DiagnosticCode, Position, Severity};
pub use parser::{parse, parse_bytes, parse_polynomial, ParsedAlgebra};
pub use presets::{
    load_file, preset, svir_spec, witt_spec, PresetError, PresetRegistry, BUILTIN_PRESETS, SVIR_SOURCE,
    WITT_SOURCE,
};
pub use render::render;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{BasisElement, BracketRule, Parameters};
    use crate::arith::Rational;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn errors(src: &str) -> Vec<Diagnostic> {
        parse(src).expect_err("source should be rejected")
    }

    #[test]
    fn svir_source_shape() {
        let parsed = parse(SVIR_SOURCE).unwrap();
        assert_eq!(parsed.spec.families().len(), 3);
        assert_eq!(parsed.spec.rules().len(), 6);
        assert!(parsed.warnings.is_empty());
    }

    #[test]
    fn empty_algebra_is_valid() {
        let parsed = parse("algebra a(){}").unwrap();
        assert!(parsed.spec.families().is_empty());
        assert!(parsed.spec.rules().is_empty());
    }

    #[test]
    fn non_additive_index_rejected() {
        let errs = errors("algebra w() { family L weight 0; bracket [L n, L m] = (m-n) L(n*m); }");
        assert_eq!(errs[0].code, DiagnosticCode::NonAdditiveIndex);
        assert!(errs[0].message.contains("non-additive output index"));
        assert_eq!((errs[0].line, errs[0].column), (1, 63));
    }

    #[test]
    fn distinct_error_codes() {
        let cases = [
            ("algebra w() { family L weight 0 }", DiagnosticCode::Syntax),
            ("algebra w() { family L weight 0; bracket [L n, K m] = 0; }", DiagnosticCode::UndeclaredFamily),
            ("algebra w() { family L weight 0; bracket [L n, L m] = (1/m) L(n+m); }", DiagnosticCode::NonPolynomial),
            ("algebra w() { family L weight 0; bracket [L n, L m] = (q) L(n+m); }", DiagnosticCode::UnknownIdentifier),
            ("algebra w(n) { }", DiagnosticCode::ReservedName),
            ("algebra w() { family L weight 0; family L weight 0; }", DiagnosticCode::Duplicate),
            (
                "algebra w() { family A weight 0; family B weight 0; bracket [B n, A m] = 0; }",
                DiagnosticCode::RuleOrder,
            ),
            ("algebra w() { family L weight 0; bracket [L n, L m] = (n+m) L(n+m); }", DiagnosticCode::NotAntisymmetric),
            (
                "algebra w(a) { family A weight 0; family B weight a; bracket [A n, B m] = (m) A(n+m); }",
                DiagnosticCode::NotGraded,
            ),
            ("algebra w() { family L weight 0 ; } extra", DiagnosticCode::Syntax),
            ("algebra w() { family L weight 0 ; bracket [L n, L m] = (m-n) L(n+m); ? }", DiagnosticCode::Syntax),
        ];
        for (src, code) in cases {
            let errs = errors(src);
            assert_eq!(errs[0].code, code, "{src}");
        }
    }

    #[test]
    fn invalid_utf8_reports_position() {
        let errs = parse_bytes(b"algebra a() {\n  \xff }").unwrap_err();
        assert_eq!(errs[0].code, DiagnosticCode::InvalidUtf8);
        assert_eq!((errs[0].line, errs[0].column), (2, 3));
    }

    #[test]
    fn missing_pairs_warn() {
        let parsed = parse("algebra t() { family A weight 0; family B weight 0; bracket [A n, A m] = (m-n) A(n+m); }").unwrap();
        let warned: Vec<&str> = parsed.warnings.iter().map(|d| d.message.as_str()).collect();
        assert_eq!(warned.len(), 2);
        assert!(warned[0].contains("[A, B]"));
        assert!(parsed.warnings.iter().all(|d| d.severity == Severity::Warning));
    }

    #[test]
    fn index_symbols_are_canonicalised() {
        let a = parse("algebra w() { family L weight 0; bracket [L i, L j] = (j - i) L(j+i); }").unwrap();
        let b = parse("algebra w() { family L weight 0; bracket [L m, L n] = (n - m) L(m+n); }").unwrap();
        assert_eq!(a.spec, b.spec);
        let witt = witt_spec();
        assert_eq!(a.spec.rules(), witt.rules());
        assert_eq!(a.spec.families(), witt.families());
    }

    #[test]
    fn render_examples() {
        assert_eq!(
            render(&witt_spec()),
            "algebra witt() {\n  family L weight 0;\n  bracket [L n, L m] = (m - n) L(n+m);\n}\n"
        );
        let spec = parse("algebra h() { family A weight 0; bracket [A n, A m] = (2/4*m - 1/2*n) A(n+m); }")
            .unwrap()
            .spec;
        assert!(render(&spec).contains("(1/2*m - 1/2*n) A(n+m)"));
        for spec in [svir_spec(), witt_spec()] {
            assert_eq!(parse(&render(&spec)).unwrap().spec, spec);
        }
    }

    #[test]
    fn zero_coefficient_with_family_is_a_zero_rule() {
        let spec = parse("algebra z() { family A weight 0; bracket [A n, A m] = (m - m) A(n+m); }")
            .unwrap()
            .spec;
        let a = spec.family_id("A").unwrap();
        assert_eq!(spec.rule(a, a), Some(&BracketRule::Zero));
    }

    #[test]
    fn presets() {
        let alg = preset("svir", &Parameters::lambda_mu(r("-1"), r("1/3"))).unwrap();
        let l = alg.spec().family_id("L").unwrap();
        let y = alg.spec().family_id("Y").unwrap();
        for m in -3..=3 {
            let (c, out) = alg
                .bracket_term(BasisElement::new(l, 0), BasisElement::new(y, m))
                .unwrap();
            assert_eq!(out, BasisElement::new(y, m));
            assert_eq!(c, Rational::from(m) + r("1/3"));
        }
        let witt = preset("witt", &Parameters::new()).unwrap();
        assert_eq!(witt.spec().families().len(), 1);
        assert_eq!(preset("virasoro-sector", &Parameters::new()).unwrap().spec(), witt.spec());
        assert!(matches!(preset("nope", &Parameters::new()), Err(PresetError::Unknown(_))));
        let err = preset("svir", &Parameters::lambda_mu(r("2"), r("0"))).unwrap_err();
        assert_eq!(err.to_string(), "mu=0 out of scope");
        assert!(preset("witt", &Parameters::new().with("mu", r("1"))).is_err());
    }

    #[test]
    fn registry_searches_extra_dirs() {
        let dir = std::env::temp_dir().join(format!("lieext-presets-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        std::fs::write(dir.join("abel.lie"), "algebra abel() { family A weight 0; }").unwrap();
        let reg = PresetRegistry::with_dirs([dir.clone()]);
        assert_eq!(reg.spec("abel").unwrap().name(), "abel");
        assert!(matches!(reg.spec("missing"), Err(PresetError::Unknown(_))));
        std::fs::remove_dir_all(dir).unwrap();
    }

    #[test]
    fn standalone_polynomials() {
        let p = parse_polynomial("(m + mu)*(m + mu + 1)/2", &["m", "mu"]).unwrap();
        assert_eq!(p.to_string(), "1/2*m*m + m*mu + 1/2*mu*mu + 1/2*m + 1/2*mu");
        assert!(parse_polynomial("m + x", &["m"]).is_err());
        assert!(parse_polynomial("m +", &["m"]).is_err());
    }
}
