use std::collections::{BTreeMap, BTreeSet};

use crate::algebra::{Algebra, AlgebraSpec, BasisElement};
use crate::arith::Rational;

use super::pairs::PairIndexing;
use super::CocycleError;

/// Skew-symmetric bilinear form given by its values on canonical pairs
/// `x < y`; the reversed orientation is the negation and `psi(x, x) = 0`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CocycleAssignment {
    values: BTreeMap<(BasisElement, BasisElement), Rational>,
}

impl CocycleAssignment {
    pub fn new() -> Self {
        Self::default()
    }

    /// Sets `psi(x, y) = value` (and so `psi(y, x) = -value`).
    pub fn set(&mut self, x: BasisElement, y: BasisElement, value: Rational) -> Result<(), CocycleError> {
        if x == y {
            if value.is_zero() {
                return Ok(());
            }
            return Err(CocycleError::DiagonalValue);
        }
        let (key, value) = if x < y { ((x, y), value) } else { ((y, x), -value) };
        if value.is_zero() {
            self.values.remove(&key);
        } else {
            self.values.insert(key, value);
        }
        Ok(())
    }

    pub fn get(&self, x: BasisElement, y: BasisElement) -> Rational {
        match x.cmp(&y) {
            std::cmp::Ordering::Less => self.values.get(&(x, y)).cloned().unwrap_or_default(),
            std::cmp::Ordering::Greater => -self.values.get(&(y, x)).cloned().unwrap_or_default(),
            std::cmp::Ordering::Equal => Rational::zero(),
        }
    }

    /// Nonzero values on canonical pairs.
    pub fn values(&self) -> impl Iterator<Item = (&(BasisElement, BasisElement), &Rational)> {
        self.values.iter()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Total weights of the pairs in the support.
    pub fn degrees(&self, alg: &Algebra) -> BTreeSet<Rational> {
        self.values.keys().map(|&(x, y)| alg.weight(x) + alg.weight(y)).collect()
    }

    pub fn restrict_to_degree(&self, alg: &Algebra, degree: &Rational) -> CocycleAssignment {
        self.filter(|x, y| &(alg.weight(x) + alg.weight(y)) == degree)
    }

    pub fn filter(&self, mut keep: impl FnMut(BasisElement, BasisElement) -> bool) -> CocycleAssignment {
        CocycleAssignment {
            values: self
                .values
                .iter()
                .filter(|((x, y), _)| keep(*x, *y))
                .map(|(k, v)| (*k, v.clone()))
                .collect(),
        }
    }

    pub fn scaled(&self, factor: &Rational) -> CocycleAssignment {
        if factor.is_zero() {
            return CocycleAssignment::new();
        }
        CocycleAssignment {
            values: self.values.iter().map(|(k, v)| (*k, v * factor)).collect(),
        }
    }

    /// `self + factor * other`.
    pub fn add_scaled(&self, factor: &Rational, other: &CocycleAssignment) -> CocycleAssignment {
        let mut out = self.clone();
        for (k, v) in &other.values {
            let sum = out.values.get(k).cloned().unwrap_or_default() + v * factor;
            if sum.is_zero() {
                out.values.remove(k);
            } else {
                out.values.insert(*k, sum);
            }
        }
        out
    }

    pub fn sub(&self, other: &CocycleAssignment) -> CocycleAssignment {
        self.add_scaled(&-Rational::one(), other)
    }

    /// Coordinates on `pairs`; values on pairs outside the indexing are dropped.
    pub fn to_vector(&self, pairs: &PairIndexing) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); pairs.len()];
        for (&(x, y), value) in &self.values {
            if let Some(c) = pairs.column(x, y) {
                v[c] = value.clone();
            }
        }
        v
    }

    pub fn from_vector(pairs: &PairIndexing, v: &[Rational]) -> CocycleAssignment {
        CocycleAssignment {
            values: pairs
                .pairs()
                .iter()
                .zip(v)
                .filter(|(_, x)| !x.is_zero())
                .map(|(p, x)| (*p, x.clone()))
                .collect(),
        }
    }

    /// JSON object mapping `"F:i,G:j"` to `"p/q"`, canonical orientation.
    pub fn to_json(&self, spec: &AlgebraSpec) -> serde_json::Value {
        let map: serde_json::Map<String, serde_json::Value> = self
            .values
            .iter()
            .map(|(&(x, y), v)| (pair_key(spec, x, y), serde_json::Value::String(v.to_string())))
            .collect();
        serde_json::Value::Object(map)
    }

    /// Reads the [`to_json`](Self::to_json) format; keys may use either orientation.
    pub fn from_json(spec: &AlgebraSpec, json: &serde_json::Value) -> Result<CocycleAssignment, CocycleError> {
        let obj = json
            .as_object()
            .ok_or_else(|| CocycleError::Json("expected an object of pair -> value".into()))?;
        let mut out = CocycleAssignment::new();
        for (key, value) in obj {
            let (x, y) = parse_pair_key(spec, key)?;
            let text = value
                .as_str()
                .ok_or_else(|| CocycleError::Json(format!("value for `{key}` must be a \"p/q\" string")))?;
            let value: Rational = text
                .parse()
                .map_err(|e| CocycleError::Json(format!("value for `{key}`: {e}")))?;
            if out.get(x, y) != Rational::zero() {
                return Err(CocycleError::Json(format!("pair `{key}` given twice")));
            }
            out.set(x, y, value)?;
        }
        Ok(out)
    }
}

fn element_key(spec: &AlgebraSpec, x: BasisElement) -> String {
    format!("{}:{}", spec.family(x.family).name, x.index)
}

pub fn pair_key(spec: &AlgebraSpec, x: BasisElement, y: BasisElement) -> String {
    format!("{},{}", element_key(spec, x), element_key(spec, y))
}

fn parse_element_key(spec: &AlgebraSpec, text: &str) -> Result<BasisElement, CocycleError> {
    let bad = || CocycleError::Json(format!("bad basis element `{text}` (expected FAMILY:index)"));
    let (fam, idx) = text.trim().split_once(':').ok_or_else(bad)?;
    let family = spec
        .family_id(fam)
        .ok_or_else(|| CocycleError::UnknownFamily(fam.to_string()))?;
    let index = idx.trim().parse().map_err(|_| bad())?;
    Ok(BasisElement::new(family, index))
}

pub fn parse_pair_key(spec: &AlgebraSpec, key: &str) -> Result<(BasisElement, BasisElement), CocycleError> {
    let (a, b) = key
        .split_once(',')
        .ok_or_else(|| CocycleError::Json(format!("bad pair key `{key}` (expected F:i,G:j)")))?;
    Ok((parse_element_key(spec, a)?, parse_element_key(spec, b)?))
}

/// Linear functional on basis elements with finite support.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LinearFunctional {
    values: BTreeMap<BasisElement, Rational>,
}

impl LinearFunctional {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, x: BasisElement, value: Rational) {
        if value.is_zero() {
            self.values.remove(&x);
        } else {
            self.values.insert(x, value);
        }
    }

    pub fn get(&self, x: BasisElement) -> Rational {
        self.values.get(&x).cloned().unwrap_or_default()
    }

    pub fn support(&self) -> impl Iterator<Item = (&BasisElement, &Rational)> {
        self.values.iter()
    }

    /// The coboundary `psi_f(x, y) = f([x, y])` on every pair of window elements.
    pub fn coboundary(&self, alg: &Algebra, half_width: i64) -> CocycleAssignment {
        let elements = alg.window_elements(half_width);
        let mut out = CocycleAssignment::new();
        for (a, &x) in elements.iter().enumerate() {
            for &y in &elements[a + 1..] {
                if let Some((c, z)) = alg.bracket_term(x, y) {
                    if let Some(fz) = self.values.get(&z) {
                        out.set(x, y, c * fz).expect("x < y");
                    }
                }
            }
        }
        out
    }
}
