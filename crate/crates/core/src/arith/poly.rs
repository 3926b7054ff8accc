use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{ArithError, Rational};

/// Product of variables with positive exponents, sorted by variable name.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(String, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(name: &str) -> Self {
        Monomial(vec![(name.to_string(), 1)])
    }

    pub fn from_powers<I, S>(powers: I) -> Self
    where
        I: IntoIterator<Item = (S, u32)>,
        S: Into<String>,
    {
        let mut map: BTreeMap<String, u32> = BTreeMap::new();
        for (name, exp) in powers {
            *map.entry(name.into()).or_default() += exp;
        }
        Monomial(map.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn powers(&self) -> &[(String, u32)] {
        &self.0
    }

    pub fn exponent(&self, name: &str) -> u32 {
        self.0
            .iter()
            .find(|(v, _)| v == name)
            .map_or(0, |&(_, e)| e)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial::from_powers(self.0.iter().chain(&other.0).map(|(v, e)| (v.clone(), *e)))
    }
}

impl Ord for Monomial {
    /// Graded lexicographic order, variables ranked by name.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let (mut a, mut b) = (self.0.iter(), other.0.iter());
            loop {
                match (a.next(), b.next()) {
                    (None, None) => return Ordering::Equal,
                    (Some(_), None) => return Ordering::Greater,
                    (None, Some(_)) => return Ordering::Less,
                    (Some((va, ea)), Some((vb, eb))) => {
                        // The monomial using the earlier variable is the larger one.
                        match va.cmp(vb) {
                            Ordering::Less => return Ordering::Greater,
                            Ordering::Greater => return Ordering::Less,
                            Ordering::Equal => match ea.cmp(eb) {
                                Ordering::Equal => continue,
                                ord => return ord,
                            },
                        }
                    }
                }
            }
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (name, exp) in &self.0 {
            for _ in 0..*exp {
                if !first {
                    f.write_str("*")?;
                }
                f.write_str(name)?;
                first = false;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Multivariate polynomial with rational coefficients over named variables
/// (index symbols such as `m`, `n` and algebra parameters such as `mu`).
///
/// The term map never stores a zero coefficient, so structural equality is
/// polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IndexPolynomial {
    terms: BTreeMap<Monomial, Rational>,
}

pub type Assignment = BTreeMap<String, Rational>;

impl IndexPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(value: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(Monomial::one(), value);
        p
    }

    pub fn var(name: &str) -> Self {
        let mut p = Self::zero();
        p.add_term(Monomial::var(name), Rational::one());
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, monomial: Monomial, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(monomial) {
            Entry::Vacant(slot) => {
                slot.insert(coeff);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += coeff;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    /// True iff the polynomial is identically zero.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn variables(&self) -> BTreeSet<String> {
        self.terms
            .keys()
            .flat_map(|m| m.0.iter().map(|(v, _)| v.clone()))
            .collect()
    }

    /// The constant value, if the polynomial has no variables.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        if factor.is_zero() {
            return Self::zero();
        }
        IndexPolynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * factor)).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        (0..exp).fold(Self::constant(Rational::one()), |acc, _| &acc * self)
    }

    /// Exact value under `assignment`, which may bind extra variables.
    pub fn eval(&self, assignment: &Assignment) -> Result<Rational, ArithError> {
        let mut total = Rational::zero();
        for (mono, coeff) in &self.terms {
            let mut term = coeff.clone();
            for (name, exp) in &mono.0 {
                let value = assignment
                    .get(name)
                    .ok_or_else(|| ArithError::UnboundVariable(name.clone()))?;
                term *= &value.pow(*exp);
            }
            total += term;
        }
        Ok(total)
    }

    /// Replaces each bound variable by a polynomial; unbound variables stay symbolic.
    pub fn substitute(&self, bindings: &BTreeMap<String, IndexPolynomial>) -> Self {
        let mut out = Self::zero();
        for (mono, coeff) in &self.terms {
            let mut term = IndexPolynomial::constant(coeff.clone());
            let mut rest = Vec::new();
            for (name, exp) in &mono.0 {
                match bindings.get(name) {
                    Some(p) => term = &term * &p.pow(*exp),
                    None => rest.push((name.clone(), *exp)),
                }
            }
            let rest = IndexPolynomial::from_terms([(Monomial(rest), Rational::one())]);
            out = out + &term * &rest;
        }
        out
    }

    /// Substitutes rational values for the bound variables.
    pub fn partial_eval(&self, assignment: &Assignment) -> Self {
        let bindings = assignment
            .iter()
            .map(|(k, v)| (k.clone(), IndexPolynomial::constant(v.clone())))
            .collect();
        self.substitute(&bindings)
    }
}

impl fmt::Display for IndexPolynomial {
    /// Canonical text, highest monomial first, e.g. `-1/2*lambda*n + m + mu`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (mono, coeff)) in self.terms.iter().rev().enumerate() {
            let magnitude = coeff.abs();
            if i == 0 {
                if coeff.is_negative() {
                    f.write_str("-")?;
                }
            } else if coeff.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            if mono.is_one() {
                write!(f, "{magnitude}")?;
            } else if magnitude.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{magnitude}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IndexPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IndexPolynomial({self})")
    }
}

impl Add for IndexPolynomial {
    type Output = IndexPolynomial;
    fn add(mut self, rhs: IndexPolynomial) -> IndexPolynomial {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl Add for &IndexPolynomial {
    type Output = IndexPolynomial;
    fn add(self, rhs: &IndexPolynomial) -> IndexPolynomial {
        self.clone() + rhs.clone()
    }
}

impl Neg for IndexPolynomial {
    type Output = IndexPolynomial;
    fn neg(self) -> IndexPolynomial {
        IndexPolynomial {
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl Neg for &IndexPolynomial {
    type Output = IndexPolynomial;
    fn neg(self) -> IndexPolynomial {
        -self.clone()
    }
}

impl Sub for IndexPolynomial {
    type Output = IndexPolynomial;
    fn sub(self, rhs: IndexPolynomial) -> IndexPolynomial {
        self + (-rhs)
    }
}

impl Sub for &IndexPolynomial {
    type Output = IndexPolynomial;
    fn sub(self, rhs: &IndexPolynomial) -> IndexPolynomial {
        self.clone() - rhs.clone()
    }
}

impl Mul for &IndexPolynomial {
    type Output = IndexPolynomial;
    fn mul(self, rhs: &IndexPolynomial) -> IndexPolynomial {
        let mut out = IndexPolynomial::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Mul for IndexPolynomial {
    type Output = IndexPolynomial;
    fn mul(self, rhs: IndexPolynomial) -> IndexPolynomial {
        &self * &rhs
    }
}
