use std::collections::BTreeMap;

use crate::arith::IndexPolynomial;

use super::bound::{Algebra, LinearCombination};
use super::spec::{AlgebraSpec, BasisElement, BracketRule, FamilyId, INDEX_FIRST, INDEX_SECOND, INDEX_THIRD};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiWitness {
    pub triple: [BasisElement; 3],
    pub residual: LinearCombination,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiWindowReport {
    pub half_width: i64,
    pub triples_checked: usize,
    pub witness: Option<JacobiWitness>,
}

impl JacobiWindowReport {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

/// `[[x,y],z] + [[y,z],x] + [[z,x],y]`.
pub fn jacobiator(alg: &Algebra, x: BasisElement, y: BasisElement, z: BasisElement) -> LinearCombination {
    let mut out = LinearCombination::zero();
    for (a, b, c) in [(x, y, z), (y, z, x), (z, x, y)] {
        if let Some((coeff, ab)) = alg.bracket_term(a, b) {
            if let Some((coeff2, w)) = alg.bracket_term(ab, c) {
                out.add_term(coeff * coeff2, w);
            }
        }
    }
    out
}

/// Evaluates the Jacobi identity on every triple `x < y < z` whose indices,
/// pairwise index sums and total index sum all lie in `[-half_width, half_width]`.
pub fn check_jacobi_window(alg: &Algebra, half_width: i64) -> JacobiWindowReport {
    let inside = |i: i64| (-half_width..=half_width).contains(&i);
    let elements = alg.window_elements(half_width);
    let mut checked = 0;
    for (a, &x) in elements.iter().enumerate() {
        for (b, &y) in elements.iter().enumerate().skip(a + 1) {
            if !inside(x.index + y.index) {
                continue;
            }
            for &z in &elements[b + 1..] {
                let (i, j, k) = (x.index, y.index, z.index);
                if !(inside(j + k) && inside(i + k) && inside(i + j + k)) {
                    continue;
                }
                checked += 1;
                let residual = jacobiator(alg, x, y, z);
                if !residual.is_zero() {
                    return JacobiWindowReport {
                        half_width,
                        triples_checked: checked,
                        witness: Some(JacobiWitness {
                            triple: [x, y, z],
                            residual,
                        }),
                    };
                }
            }
        }
    }
    JacobiWindowReport {
        half_width,
        triples_checked: checked,
        witness: None,
    }
}

/// Nonzero coefficient of output family `output` in the symbolic Jacobi
/// expansion of the family triple `families` (indices `n`, `m`, `p`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicResidual {
    pub families: [FamilyId; 3],
    pub output: FamilyId,
    pub residual: IndexPolynomial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicJacobiReport {
    pub triples_checked: usize,
    pub residuals: Vec<SymbolicResidual>,
}

impl SymbolicJacobiReport {
    pub fn passed(&self) -> bool {
        self.residuals.is_empty()
    }
}

struct SymbolicTerm {
    coefficient: IndexPolynomial,
    family: FamilyId,
    index: IndexPolynomial,
}

fn symbolic_bracket(
    spec: &AlgebraSpec,
    (fx, ix): (FamilyId, &IndexPolynomial),
    (fy, iy): (FamilyId, &IndexPolynomial),
) -> Option<SymbolicTerm> {
    let (rule, left, right, sign) = if fx <= fy {
        (spec.rule(fx, fy)?, ix, iy, false)
    } else {
        (spec.rule(fy, fx)?, iy, ix, true)
    };
    let BracketRule::Term { coefficient, output } = rule else {
        return None;
    };
    let bindings = BTreeMap::from([
        (INDEX_FIRST.to_string(), left.clone()),
        (INDEX_SECOND.to_string(), right.clone()),
    ]);
    let mut coefficient = coefficient.substitute(&bindings);
    if sign {
        coefficient = -coefficient;
    }
    Some(SymbolicTerm {
        coefficient,
        family: *output,
        index: ix + iy,
    })
}

/// Verifies the Jacobi identity as a polynomial identity in symbolic indices
/// and symbolic parameters, for every multiset of three families.
pub fn check_jacobi_symbolic(spec: &AlgebraSpec) -> SymbolicJacobiReport {
    let idx = [
        IndexPolynomial::var(INDEX_FIRST),
        IndexPolynomial::var(INDEX_SECOND),
        IndexPolynomial::var(INDEX_THIRD),
    ];
    let ids: Vec<FamilyId> = spec.family_ids().collect();
    let mut residuals = Vec::new();
    let mut checked = 0;
    for (a, &fa) in ids.iter().enumerate() {
        for (b, &fb) in ids.iter().enumerate().skip(a) {
            for &fc in &ids[b..] {
                checked += 1;
                let args = [(fa, &idx[0]), (fb, &idx[1]), (fc, &idx[2])];
                let mut by_family: BTreeMap<FamilyId, IndexPolynomial> = BTreeMap::new();
                for (x, y, z) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
                    let Some(inner) = symbolic_bracket(spec, args[x], args[y]) else {
                        continue;
                    };
                    let Some(outer) = symbolic_bracket(spec, (inner.family, &inner.index), args[z]) else {
                        continue;
                    };
                    let term = &inner.coefficient * &outer.coefficient;
                    let slot = by_family.entry(outer.family).or_default();
                    *slot = &*slot + &term;
                }
                for (output, residual) in by_family {
                    if !residual.is_zero() {
                        residuals.push(SymbolicResidual {
                            families: [fa, fb, fc],
                            output,
                            residual,
                        });
                    }
                }
            }
        }
    }
    SymbolicJacobiReport {
        triples_checked: checked,
        residuals,
    }
}
