use std::collections::{BTreeMap, BTreeSet};

use crate::algebra::{Algebra, BasisElement};
use crate::arith::Rational;
use crate::linalg::{Echelon, SparseMatrix, SparseRow, VectorBasis};

use super::assignment::CocycleAssignment;
use super::pairs::{enumerate_pairs, enumerate_triples, PairIndexing};
use super::window::Window;
use super::CocycleError;

/// The cocycle identity `psi([x,y],z) + psi([y,z],x) + psi([z,x],y) = 0` for
/// the ordered triple `(x, y, z)`, expanded on canonical pair columns.
///
/// Returns `None` when some nonzero bracket leaves the window (the identity
/// would involve unknowns that are not indexed). An all-zero identity is
/// returned as an empty row.
pub fn constraint_row(alg: &Algebra, pairs: &PairIndexing, triple: [BasisElement; 3]) -> Option<SparseRow> {
    let [x, y, z] = triple;
    let mut row: BTreeMap<usize, Rational> = BTreeMap::new();
    for (a, b, c) in [(x, y, z), (y, z, x), (z, x, y)] {
        let Some((coeff, u)) = alg.bracket_term(a, b) else {
            continue;
        };
        if u.index.abs() > pairs.half_width() {
            return None;
        }
        let Some((col, flip)) = pairs.oriented(u, c) else {
            continue;
        };
        let entry = row.entry(col).or_default();
        if flip {
            *entry -= &coeff;
        } else {
            *entry += &coeff;
        }
    }
    Some(row.into_iter().filter(|(_, v)| !v.is_zero()).collect())
}

/// The linear system whose nullspace is the space of degree-`d` cocycles on
/// the window, one row per admissible canonical triple.
#[derive(Clone, Debug)]
pub struct ConstraintSystem {
    pub pairs: PairIndexing,
    pub matrix: SparseMatrix,
    /// The triple that produced each row.
    pub triples: Vec<[BasisElement; 3]>,
}

pub fn assemble_constraints(alg: &Algebra, half_width: i64, degree: &Rational) -> ConstraintSystem {
    let pairs = enumerate_pairs(alg, half_width, degree);
    let mut rows = Vec::new();
    let mut triples = Vec::new();
    for triple in enumerate_triples(alg, half_width, degree) {
        if let Some(row) = constraint_row(alg, &pairs, triple) {
            if !row.is_empty() {
                rows.push(row);
                triples.push(triple);
            }
        }
    }
    let matrix = SparseMatrix::from_sparse_rows(pairs.len(), rows).expect("rows are canonical");
    ConstraintSystem { pairs, matrix, triples }
}

pub fn cocycle_space(alg: &Algebra, half_width: i64, degree: &Rational) -> VectorBasis {
    crate::linalg::nullspace(&assemble_constraints(alg, half_width, degree).matrix)
}

/// One generator per window element `z` of weight `degree`: the values
/// `f([x, y])` for the functional `f = z*`.
pub fn coboundary_generators(alg: &Algebra, pairs: &PairIndexing) -> Vec<(BasisElement, Vec<Rational>)> {
    let mut generators: BTreeMap<BasisElement, Vec<Rational>> = BTreeMap::new();
    for f in alg.spec().family_ids() {
        if let Some(z) = alg.element_of_weight(f, pairs.degree()) {
            if z.index.abs() <= pairs.half_width() {
                generators.insert(z, vec![Rational::zero(); pairs.len()]);
            }
        }
    }
    for (col, &(x, y)) in pairs.pairs().iter().enumerate() {
        if let Some((c, z)) = alg.bracket_term(x, y) {
            if let Some(v) = generators.get_mut(&z) {
                v[col] = c;
            }
        }
    }
    generators.into_iter().collect()
}

pub fn coboundary_space(alg: &Algebra, half_width: i64, degree: &Rational) -> VectorBasis {
    let pairs = enumerate_pairs(alg, half_width, degree);
    coboundary_basis(alg, &pairs)
}

pub(crate) fn coboundary_basis(alg: &Algebra, pairs: &PairIndexing) -> VectorBasis {
    let gens: Vec<Vec<Rational>> = coboundary_generators(alg, pairs).into_iter().map(|(_, v)| v).collect();
    VectorBasis::span_of(pairs.len(), &gens).expect("generators have the pair dimension")
}

/// Everything computed for one (window, degree): the constraint system,
/// cocycle and coboundary spaces, and the core coordinates.
#[derive(Clone, Debug)]
pub struct DegreeSystem {
    pub window: Window,
    pub constraints: ConstraintSystem,
    pub cocycles: VectorBasis,
    pub coboundaries: VectorBasis,
    pub core: BTreeSet<usize>,
}

impl DegreeSystem {
    pub fn build(alg: &Algebra, window: Window, degree: &Rational) -> DegreeSystem {
        let constraints = assemble_constraints(alg, window.half_width(), degree);
        let cocycles = VectorBasis::from_independent_unchecked(
            constraints.pairs.len(),
            Echelon::compute(&constraints.matrix).nullspace(),
        );
        let coboundaries = coboundary_basis(alg, &constraints.pairs);
        let core = core_columns(&window, &constraints.pairs);
        DegreeSystem {
            window,
            constraints,
            cocycles,
            coboundaries,
            core,
        }
    }

    pub fn pairs(&self) -> &PairIndexing {
        &self.constraints.pairs
    }

    pub fn degree(&self) -> &Rational {
        self.constraints.pairs.degree()
    }

    pub fn core_cocycle_dim(&self) -> usize {
        self.cocycles.project_dimension(&self.core).expect("core coordinates are in range")
    }

    pub fn core_coboundary_dim(&self) -> usize {
        self.coboundaries.project_dimension(&self.core).expect("core coordinates are in range")
    }

    pub fn core_h2_dim(&self) -> usize {
        self.core_cocycle_dim() - self.core_coboundary_dim()
    }

    pub fn h2_dim(&self) -> usize {
        self.cocycles.len() - self.coboundaries.len()
    }

    /// Whether the core restriction of `psi` lies in the core restriction of the coboundaries.
    pub fn is_coboundary(&self, alg: &Algebra, psi: &CocycleAssignment) -> Result<bool, CocycleError> {
        let degrees = psi.degrees(alg);
        if degrees.len() > 1 || degrees.iter().any(|d| d != self.degree()) {
            return Err(CocycleError::NotHomogeneous);
        }
        Ok(core_in_span(&self.coboundaries, &self.core, &psi.to_vector(self.pairs())))
    }

    /// Whether `psi` restricted to this degree's pairs lies in the cocycle space.
    pub fn in_cocycle_space(&self, psi: &CocycleAssignment) -> bool {
        self.cocycles
            .contains(&psi.to_vector(self.pairs()))
            .expect("vector has the pair dimension")
    }
}

/// Whether the restriction of `v` to `core` lies in the restriction of `basis`.
pub(crate) fn core_in_span(basis: &VectorBasis, core: &BTreeSet<usize>, v: &[Rational]) -> bool {
    let core_v: SparseRow = core
        .iter()
        .enumerate()
        .filter(|(_, &c)| !v[c].is_zero())
        .map(|(k, &c)| (k, v[c].clone()))
        .collect();
    if core_v.is_empty() {
        return true;
    }
    let projected = basis.project(core);
    let base = crate::linalg::rank(&projected);
    let mut rows = projected.rows().to_vec();
    rows.push(core_v);
    let stacked = SparseMatrix::from_sparse_rows(core.len(), rows).expect("rows are canonical");
    crate::linalg::rank(&stacked) == base
}

/// Columns of `pairs` whose two indices both lie in the window core.
pub(crate) fn core_columns(window: &Window, pairs: &PairIndexing) -> BTreeSet<usize> {
    pairs
        .pairs()
        .iter()
        .enumerate()
        .filter(|(_, (x, y))| window.core_contains(x.index) && window.core_contains(y.index))
        .map(|(i, _)| i)
        .collect()
}
