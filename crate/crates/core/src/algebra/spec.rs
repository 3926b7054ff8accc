use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::IndexPolynomial;

use super::AlgebraError;

/// Symbol for the index of the left argument of a bracket rule.
pub const INDEX_FIRST: &str = "n";
/// Symbol for the index of the right argument of a bracket rule.
pub const INDEX_SECOND: &str = "m";
/// Third index symbol, used only by the symbolic Jacobi expansion.
pub const INDEX_THIRD: &str = "p";

pub const RESERVED_NAMES: [&str; 3] = [INDEX_FIRST, INDEX_SECOND, INDEX_THIRD];

/// Position of a family in declaration order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FamilyId(pub usize);

/// Basis element `F_index`. The derived order (family, then index) is the
/// canonical order used to orient pairs and triples.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasisElement {
    pub family: FamilyId,
    pub index: i64,
}

impl BasisElement {
    pub fn new(family: FamilyId, index: i64) -> Self {
        BasisElement { family, index }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Family {
    pub name: String,
    /// Weight of `F_n` is `n + weight_offset`; a polynomial in the parameters.
    pub weight_offset: IndexPolynomial,
}

/// `[F_n, G_m] = coefficient(n, m, params) * H_{n+m}`, or zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BracketRule {
    Zero,
    Term {
        coefficient: IndexPolynomial,
        output: FamilyId,
    },
}

/// A presentation of an integer-graded Lie algebra with polynomial
/// structure constants.
///
/// Rules are stored only for ordered family pairs `(F, G)` with `F <= G`;
/// the reverse order is derived by antisymmetry. Pairs without a rule
/// bracket to zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraSpec {
    name: String,
    parameters: Vec<String>,
    families: Vec<Family>,
    rules: BTreeMap<(FamilyId, FamilyId), BracketRule>,
}

impl AlgebraSpec {
    pub fn new(name: impl Into<String>, parameters: Vec<String>) -> Result<Self, AlgebraError> {
        let mut seen = BTreeSet::new();
        for p in &parameters {
            if RESERVED_NAMES.contains(&p.as_str()) {
                return Err(AlgebraError::ReservedName(p.clone()));
            }
            if !seen.insert(p.as_str()) {
                return Err(AlgebraError::DuplicateParameter(p.clone()));
            }
        }
        Ok(AlgebraSpec {
            name: name.into(),
            parameters,
            families: Vec::new(),
            rules: BTreeMap::new(),
        })
    }

    pub fn add_family(&mut self, name: &str, weight_offset: IndexPolynomial) -> Result<FamilyId, AlgebraError> {
        if self.family_id(name).is_some() {
            return Err(AlgebraError::DuplicateFamily(name.to_string()));
        }
        if let Some(v) = weight_offset.variables().into_iter().find(|v| !self.parameters.contains(v)) {
            return Err(AlgebraError::UnknownVariable(v));
        }
        self.families.push(Family {
            name: name.to_string(),
            weight_offset,
        });
        Ok(FamilyId(self.families.len() - 1))
    }

    pub fn add_rule(&mut self, left: FamilyId, right: FamilyId, rule: BracketRule) -> Result<(), AlgebraError> {
        for id in [left, right] {
            if id.0 >= self.families.len() {
                return Err(AlgebraError::UnknownFamily(format!("#{}", id.0)));
            }
        }
        if left > right {
            return Err(AlgebraError::ReversedRule {
                left: self.families[left.0].name.clone(),
                right: self.families[right.0].name.clone(),
            });
        }
        if self.rules.contains_key(&(left, right)) {
            return Err(AlgebraError::DuplicateRule {
                left: self.families[left.0].name.clone(),
                right: self.families[right.0].name.clone(),
            });
        }
        if let BracketRule::Term { coefficient, output } = &rule {
            if output.0 >= self.families.len() {
                return Err(AlgebraError::UnknownFamily(format!("#{}", output.0)));
            }
            let allowed = |v: &String| {
                self.parameters.contains(v) || v == INDEX_FIRST || v == INDEX_SECOND
            };
            if let Some(v) = coefficient.variables().into_iter().find(|v| !allowed(v)) {
                return Err(AlgebraError::UnknownVariable(v));
            }
            if left == right {
                let swapped = swap_indices(coefficient);
                if !(coefficient + &swapped).is_zero() {
                    return Err(AlgebraError::NotAntisymmetric(self.families[left.0].name.clone()));
                }
            }
            let drift = &(&self.families[output.0].weight_offset - &self.families[left.0].weight_offset)
                - &self.families[right.0].weight_offset;
            if !drift.is_zero() {
                return Err(AlgebraError::NotGraded {
                    left: self.families[left.0].name.clone(),
                    right: self.families[right.0].name.clone(),
                });
            }
        }
        self.rules.insert((left, right), rule);
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn parameters(&self) -> &[String] {
        &self.parameters
    }

    pub fn families(&self) -> &[Family] {
        &self.families
    }

    pub fn family(&self, id: FamilyId) -> &Family {
        &self.families[id.0]
    }

    pub fn family_id(&self, name: &str) -> Option<FamilyId> {
        self.families.iter().position(|f| f.name == name).map(FamilyId)
    }

    pub fn family_ids(&self) -> impl Iterator<Item = FamilyId> {
        (0..self.families.len()).map(FamilyId)
    }

    /// Explicitly stated rules, keyed by ordered family pair.
    pub fn rules(&self) -> &BTreeMap<(FamilyId, FamilyId), BracketRule> {
        &self.rules
    }

    pub fn rule(&self, left: FamilyId, right: FamilyId) -> Option<&BracketRule> {
        self.rules.get(&(left, right))
    }

    /// Replaces a rule; used to build deliberately broken variants in tests and tooling.
    pub fn with_rule_replaced(&self, left: FamilyId, right: FamilyId, rule: BracketRule) -> AlgebraSpec {
        let mut out = self.clone();
        out.rules.insert((left, right), rule);
        out
    }

    pub fn element_label(&self, x: BasisElement) -> String {
        format!("{}_{}", self.families[x.family.0].name, x.index)
    }
}

impl fmt::Display for AlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.name, self.parameters.join(", "))
    }
}

/// `p(n, m) -> p(m, n)`.
pub(crate) fn swap_indices(p: &IndexPolynomial) -> IndexPolynomial {
    let bindings = BTreeMap::from([
        (INDEX_FIRST.to_string(), IndexPolynomial::var(INDEX_SECOND)),
        (INDEX_SECOND.to_string(), IndexPolynomial::var(INDEX_FIRST)),
    ]);
    p.substitute(&bindings)
}
