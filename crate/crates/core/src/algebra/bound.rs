use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::arith::{Rational};

use super::spec::{AlgebraSpec, BasisElement, BracketRule, FamilyId, INDEX_FIRST, INDEX_SECOND};
use super::AlgebraError;

/// Parameter values, keyed by name.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Parameters(BTreeMap<String, Rational>);

impl Parameters {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, name: &str, value: Rational) -> Self {
        self.0.insert(name.to_string(), value);
        self
    }

    /// The `lambda`, `mu` pair used by the Schrödinger–Virasoro presets.
    pub fn lambda_mu(lambda: Rational, mu: Rational) -> Self {
        Self::new().with("lambda", lambda).with("mu", mu)
    }

    pub fn insert(&mut self, name: &str, value: Rational) {
        self.0.insert(name.to_string(), value);
    }

    pub fn get(&self, name: &str) -> Option<&Rational> {
        self.0.get(name)
    }

    pub fn values(&self) -> &BTreeMap<String, Rational> {
        &self.0
    }
}

impl fmt::Display for Parameters {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(k, v)| format!("{k}={v}")).collect();
        f.write_str(&parts.join(", "))
    }
}

/// Nonzero linear combination of basis elements; zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LinearCombination(BTreeMap<BasisElement, Rational>);

impl LinearCombination {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(coeff: Rational, x: BasisElement) -> Self {
        let mut lc = Self::zero();
        lc.add_term(coeff, x);
        lc
    }

    pub fn add_term(&mut self, coeff: Rational, x: BasisElement) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.0.entry(x).or_default();
        *slot += coeff;
        if slot.is_zero() {
            self.0.remove(&x);
        }
    }

    pub fn add_scaled(&mut self, coeff: &Rational, other: &LinearCombination) {
        for (x, c) in &other.0 {
            self.add_term(coeff * c, *x);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BasisElement, &Rational)> {
        self.0.iter()
    }

    pub fn coefficient(&self, x: &BasisElement) -> Rational {
        self.0.get(x).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

#[derive(Clone, Debug)]
struct CompiledRule {
    output: FamilyId,
    /// `(coefficient, exponent of n, exponent of m)` with parameters substituted.
    terms: Vec<(Rational, u32, u32)>,
}

impl CompiledRule {
    fn eval(&self, n: i64, m: i64) -> Rational {
        let mut total = Rational::zero();
        for (c, en, em) in &self.terms {
            let monomial = num_traits::pow(BigInt::from(n), *en as usize) * num_traits::pow(BigInt::from(m), *em as usize);
            total += c * &Rational::from_integer(monomial);
        }
        total
    }
}

/// An [`AlgebraSpec`] with every parameter bound to a rational value.
#[derive(Clone, Debug)]
pub struct Algebra {
    spec: Arc<AlgebraSpec>,
    params: Parameters,
    offsets: Vec<Rational>,
    rules: BTreeMap<(FamilyId, FamilyId), CompiledRule>,
}

impl Algebra {
    pub fn new(spec: impl Into<Arc<AlgebraSpec>>, params: Parameters) -> Result<Self, AlgebraError> {
        let spec = spec.into();
        for name in spec.parameters() {
            if params.get(name).is_none() {
                return Err(AlgebraError::MissingParameter(name.clone()));
            }
        }
        if let Some(extra) = params.values().keys().find(|k| !spec.parameters().contains(k)) {
            return Err(AlgebraError::UnexpectedParameter(extra.clone()));
        }
        if spec.name() == "svir" && params.get("mu").is_some_and(Rational::is_zero) {
            return Err(AlgebraError::MuZeroOutOfScope);
        }
        let values = params.values();
        let offsets = spec
            .families()
            .iter()
            .map(|f| f.weight_offset.eval(values))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| AlgebraError::Arith(e.to_string()))?;
        let mut rules = BTreeMap::new();
        for (&(f, g), rule) in spec.rules() {
            let BracketRule::Term { coefficient, output } = rule else {
                continue;
            };
            let bound = coefficient.partial_eval(values);
            let terms: Vec<(Rational, u32, u32)> = bound
                .terms()
                .map(|(mono, c)| (c.clone(), mono.exponent(INDEX_FIRST), mono.exponent(INDEX_SECOND)))
                .collect();
            if !terms.is_empty() {
                rules.insert((f, g), CompiledRule { output: *output, terms });
            }
        }
        Ok(Algebra {
            spec,
            params,
            offsets,
            rules,
        })
    }

    pub fn spec(&self) -> &AlgebraSpec {
        &self.spec
    }

    pub fn params(&self) -> &Parameters {
        &self.params
    }

    pub fn num_families(&self) -> usize {
        self.offsets.len()
    }

    pub fn weight_offset(&self, family: FamilyId) -> &Rational {
        &self.offsets[family.0]
    }

    /// L_0-eigenvalue: `index + weight_offset(family)`.
    pub fn weight(&self, x: BasisElement) -> Rational {
        Rational::from(x.index) + &self.offsets[x.family.0]
    }

    /// The single term of `[x, y]`, or `None` when the bracket vanishes.
    pub fn bracket_term(&self, x: BasisElement, y: BasisElement) -> Option<(Rational, BasisElement)> {
        let (rule, coeff) = if x.family <= y.family {
            let rule = self.rules.get(&(x.family, y.family))?;
            (rule, rule.eval(x.index, y.index))
        } else {
            let rule = self.rules.get(&(y.family, x.family))?;
            (rule, -rule.eval(y.index, x.index))
        };
        if coeff.is_zero() {
            return None;
        }
        Some((coeff, BasisElement::new(rule.output, x.index + y.index)))
    }

    pub fn bracket(&self, x: BasisElement, y: BasisElement) -> LinearCombination {
        match self.bracket_term(x, y) {
            Some((c, z)) => LinearCombination::term(c, z),
            None => LinearCombination::zero(),
        }
    }

    /// Bracket extended bilinearly.
    pub fn bracket_lc(&self, a: &LinearCombination, b: &LinearCombination) -> LinearCombination {
        let mut out = LinearCombination::zero();
        for (x, cx) in a.terms() {
            for (y, cy) in b.terms() {
                if let Some((c, z)) = self.bracket_term(*x, *y) {
                    out.add_term(c * cx * cy, z);
                }
            }
        }
        out
    }

    pub fn label(&self, x: BasisElement) -> String {
        self.spec.element_label(x)
    }

    /// Elements of `family` with indices in `[-half_width, half_width]`.
    pub fn window_elements(&self, half_width: i64) -> Vec<BasisElement> {
        self.spec
            .family_ids()
            .flat_map(|f| (-half_width..=half_width).map(move |i| BasisElement::new(f, i)))
            .collect()
    }

    /// The element of `family` with weight `w`, if that weight lies on the family's lattice.
    pub fn element_of_weight(&self, family: FamilyId, w: &Rational) -> Option<BasisElement> {
        (w - &self.offsets[family.0]).to_i64().map(|i| BasisElement::new(family, i))
    }
}

/// Integrality of small multiples of `mu`; these decide which weight-matched
/// pairs exist in each degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MuClass {
    pub integral: bool,
    pub half_integral: bool,
    pub third_integral: bool,
    pub quarter_integral: bool,
}

impl MuClass {
    pub fn of(mu: &Rational) -> Self {
        MuClass {
            integral: mu.is_integer(),
            half_integral: mu.is_multiple_integral(2),
            third_integral: mu.is_multiple_integral(3),
            quarter_integral: mu.is_multiple_integral(4),
        }
    }
}
