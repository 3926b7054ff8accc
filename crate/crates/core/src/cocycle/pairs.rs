use std::collections::HashMap;

use crate::algebra::{Algebra, BasisElement};
use crate::arith::Rational;

/// Canonically ordered pairs `x < y` of window elements with total weight
/// `degree`; list positions are the columns of the constraint system.
#[derive(Clone, Debug)]
pub struct PairIndexing {
    degree: Rational,
    half_width: i64,
    pairs: Vec<(BasisElement, BasisElement)>,
    columns: HashMap<(BasisElement, BasisElement), usize>,
}

impl PairIndexing {
    pub fn degree(&self) -> &Rational {
        &self.degree
    }

    pub fn half_width(&self) -> i64 {
        self.half_width
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn pairs(&self) -> &[(BasisElement, BasisElement)] {
        &self.pairs
    }

    pub fn pair(&self, column: usize) -> (BasisElement, BasisElement) {
        self.pairs[column]
    }

    /// Column of the canonical pair `x < y`.
    pub fn column(&self, x: BasisElement, y: BasisElement) -> Option<usize> {
        self.columns.get(&(x, y)).copied()
    }

    /// Column and orientation sign for `psi(x, y)`; `None` when `x == y`
    /// (skew-symmetry forces zero) or the pair is not indexed.
    pub fn oriented(&self, x: BasisElement, y: BasisElement) -> Option<(usize, bool)> {
        match x.cmp(&y) {
            std::cmp::Ordering::Less => self.column(x, y).map(|c| (c, false)),
            std::cmp::Ordering::Greater => self.column(y, x).map(|c| (c, true)),
            std::cmp::Ordering::Equal => None,
        }
    }
}

fn in_window(half_width: i64, x: BasisElement) -> bool {
    x.index.abs() <= half_width
}

/// All unordered pairs of window elements with `weight(x) + weight(y) = degree`.
pub fn enumerate_pairs(alg: &Algebra, half_width: i64, degree: &Rational) -> PairIndexing {
    let mut pairs = Vec::new();
    for x in alg.window_elements(half_width) {
        let need = degree - alg.weight(x);
        for family in alg.spec().family_ids().filter(|&f| f >= x.family) {
            if let Some(y) = alg.element_of_weight(family, &need) {
                if y > x && in_window(half_width, y) {
                    pairs.push((x, y));
                }
            }
        }
    }
    pairs.sort();
    let columns = pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    PairIndexing {
        degree: degree.clone(),
        half_width,
        pairs,
        columns,
    }
}

/// All triples `x < y < z` of window elements with total weight `degree`.
pub fn enumerate_triples(alg: &Algebra, half_width: i64, degree: &Rational) -> Vec<[BasisElement; 3]> {
    let elements = alg.window_elements(half_width);
    let weights: Vec<Rational> = elements.iter().map(|&x| alg.weight(x)).collect();
    let mut triples = Vec::new();
    for (a, &x) in elements.iter().enumerate() {
        for (b, &y) in elements.iter().enumerate().skip(a + 1) {
            let need = degree - &weights[a] - &weights[b];
            for family in alg.spec().family_ids().filter(|&f| f >= y.family) {
                if let Some(z) = alg.element_of_weight(family, &need) {
                    if z > y && in_window(half_width, z) {
                        triples.push([x, y, z]);
                    }
                }
            }
        }
    }
    triples.sort();
    triples
}
