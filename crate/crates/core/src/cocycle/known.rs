use std::collections::BTreeMap;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::{Algebra, BasisElement};
use crate::arith::{IndexPolynomial, Rational};
use crate::dsl::parse_polynomial;

use super::assignment::CocycleAssignment;
use super::CocycleError;

/// Closed-form cocycle `c(A_n, B_m) = coefficient(m, params)` supported on
/// `n = -m - mu_multiple * mu + shift`, zero elsewhere.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnownCocycle {
    pub name: String,
    pub first: String,
    pub second: String,
    #[serde(serialize_with = "poly_to_text", deserialize_with = "poly_from_text")]
    pub coefficient: IndexPolynomial,
    pub mu_multiple: i64,
    pub shift: i64,
    /// The `lambda` at which this class is an independent generator, if specific.
    pub lambda: Option<Rational>,
}

/// Variables a registry coefficient may mention.
pub const COEFFICIENT_VARIABLES: [&str; 3] = ["m", "mu", "lambda"];

fn poly_to_text<S: Serializer>(p: &IndexPolynomial, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(p)
}

fn poly_from_text<'de, D: Deserializer<'de>>(d: D) -> Result<IndexPolynomial, D::Error> {
    let text = String::deserialize(d)?;
    parse_polynomial(&text, &COEFFICIENT_VARIABLES).map_err(serde::de::Error::custom)
}

fn m_plus_mu(shift: i64) -> IndexPolynomial {
    IndexPolynomial::var("m") + IndexPolynomial::var("mu") + IndexPolynomial::constant(Rational::from(shift))
}

fn half() -> Rational {
    Rational::new(1, 2).expect("nonzero")
}

/// The explicit generators of degree-0 cohomology for `svir`, plus the
/// Virasoro cocycle (which also applies to `witt`).
pub fn known_registry() -> Vec<KnownCocycle> {
    let m = IndexPolynomial::var("m");
    vec![
        // xi(L_n, L_{-n}) = (n^3 - n)/12, written in m = -n.
        KnownCocycle {
            name: "virasoro".into(),
            first: "L".into(),
            second: "L".into(),
            coefficient: (&m - &m.pow(3)).scale(&Rational::new(1, 12).expect("nonzero")),
            mu_multiple: 0,
            shift: 0,
            lambda: None,
        },
        KnownCocycle {
            name: "c-minus3".into(),
            first: "L".into(),
            second: "Y".into(),
            coefficient: m_plus_mu(1).scale(&half()),
            mu_multiple: 1,
            shift: 0,
            lambda: Some(Rational::from(-3)),
        },
        KnownCocycle {
            name: "c-plus1".into(),
            first: "L".into(),
            second: "Y".into(),
            coefficient: &(&m_plus_mu(-1) * &m_plus_mu(0)) * &m_plus_mu(1),
            mu_multiple: 1,
            shift: 0,
            lambda: Some(Rational::from(1)),
        },
        KnownCocycle {
            name: "c1".into(),
            first: "L".into(),
            second: "Y".into(),
            coefficient: (&m_plus_mu(0) * &m_plus_mu(1)).scale(&half()),
            mu_multiple: 1,
            shift: 0,
            lambda: Some(Rational::from(-1)),
        },
        KnownCocycle {
            name: "c2".into(),
            first: "M".into(),
            second: "Y".into(),
            coefficient: IndexPolynomial::constant(Rational::one()),
            mu_multiple: 3,
            shift: 0,
            lambda: Some(Rational::from(-1)),
        },
    ]
}

pub fn find_known(name: &str) -> Option<KnownCocycle> {
    known_registry().into_iter().find(|k| k.name == name)
}

impl KnownCocycle {
    /// The integrality condition on `mu`, e.g. `3*mu integer`.
    pub fn condition(&self) -> Option<String> {
        match self.mu_multiple {
            0 => None,
            1 => Some("mu integer".into()),
            k => Some(format!("{k}*mu integer")),
        }
    }

    /// The index shift `-mu_multiple * mu + shift`, when it is an integer.
    fn index_shift(&self, alg: &Algebra) -> Result<i64, CocycleError> {
        if self.mu_multiple == 0 {
            return Ok(self.shift);
        }
        let requires = || CocycleError::Integrality {
            cocycle: self.name.clone(),
            condition: format!("requires {}", self.condition().expect("nonzero multiple")),
        };
        let mu = alg.params().get("mu").ok_or_else(requires)?;
        let offset = -(mu * &Rational::from(self.mu_multiple)) + Rational::from(self.shift);
        offset.to_i64().ok_or_else(requires)
    }

    /// Restriction to pairs with both indices in `[-half_width, half_width]`.
    pub fn instantiate(&self, alg: &Algebra, half_width: i64) -> Result<CocycleAssignment, CocycleError> {
        let spec = alg.spec();
        let family = |name: &str| {
            spec.family_id(name).ok_or_else(|| CocycleError::NotApplicable {
                cocycle: self.name.clone(),
                reason: format!("algebra `{}` has no family {name}", spec.name()),
            })
        };
        let (a, b) = (family(&self.first)?, family(&self.second)?);
        let shift = self.index_shift(alg)?;
        let mut env: BTreeMap<String, Rational> = alg.params().values().clone();
        let mut out = CocycleAssignment::new();
        for mi in -half_width..=half_width {
            let ni = -mi + shift;
            if ni.abs() > half_width {
                continue;
            }
            let (x, y) = (BasisElement::new(a, ni), BasisElement::new(b, mi));
            if x == y {
                continue;
            }
            env.insert("m".into(), Rational::from(mi));
            let value = self.coefficient.eval(&env).map_err(|e| CocycleError::NotApplicable {
                cocycle: self.name.clone(),
                reason: e.to_string(),
            })?;
            let existing = out.get(x, y);
            if !existing.is_zero() {
                debug_assert_eq!(existing, value, "closed form must be skew-symmetric");
                continue;
            }
            out.set(x, y, value)?;
        }
        Ok(out)
    }
}
