use crate::algebra::{Algebra, BasisElement};
use crate::arith::Rational;

use super::assignment::{CocycleAssignment, LinearFunctional};
use super::known::KnownCocycle;
use super::pairs::{enumerate_pairs, enumerate_triples};
use super::system::{coboundary_basis, core_columns, core_in_span, DegreeSystem};
use super::window::Window;
use super::CocycleError;

/// A triple on which the cocycle identity fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocycleWitness {
    pub triple: [BasisElement; 3],
    pub residual: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub half_width: i64,
    pub triples_checked: usize,
    /// The first failing triple in canonical order.
    pub witness: Option<CocycleWitness>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

/// `psi([x,y],z) + psi([y,z],x) + psi([z,x],y)`, or `None` when some nonzero
/// bracket leaves `[-half_width, half_width]`.
pub fn identity_residual(
    alg: &Algebra,
    psi: &CocycleAssignment,
    triple: [BasisElement; 3],
    half_width: i64,
) -> Option<Rational> {
    let [x, y, z] = triple;
    let mut total = Rational::zero();
    for (a, b, c) in [(x, y, z), (y, z, x), (z, x, y)] {
        if let Some((coeff, u)) = alg.bracket_term(a, b) {
            if u.index.abs() > half_width {
                return None;
            }
            total += coeff * psi.get(u, c);
        }
    }
    Some(total)
}

/// Checks the cocycle identity on every admissible window triple in each
/// degree of the support of `psi`.
pub fn verify_cocycle(alg: &Algebra, half_width: i64, psi: &CocycleAssignment) -> VerifyReport {
    let mut triples_checked = 0;
    for degree in psi.degrees(alg) {
        for triple in enumerate_triples(alg, half_width, &degree) {
            let Some(residual) = identity_residual(alg, psi, triple, half_width) else {
                continue;
            };
            triples_checked += 1;
            if !residual.is_zero() {
                return VerifyReport {
                    half_width,
                    triples_checked,
                    witness: Some(CocycleWitness { triple, residual }),
                };
            }
        }
    }
    VerifyReport {
        half_width,
        triples_checked,
        witness: None,
    }
}

/// Instantiates `known` on the window and verifies it.
pub fn verify_known(
    alg: &Algebra,
    half_width: i64,
    known: &KnownCocycle,
) -> Result<(CocycleAssignment, VerifyReport), CocycleError> {
    let psi = known.instantiate(alg, half_width)?;
    let report = verify_cocycle(alg, half_width, &psi);
    Ok((psi, report))
}

/// Whether the core restriction of a degree-homogeneous `psi` is a
/// coboundary restriction. The zero form is a coboundary.
pub fn is_coboundary(alg: &Algebra, window: &Window, psi: &CocycleAssignment) -> Result<bool, CocycleError> {
    let degrees = psi.degrees(alg);
    let Some(degree) = degrees.first() else {
        return Ok(true);
    };
    if degrees.len() > 1 {
        return Err(CocycleError::NotHomogeneous);
    }
    let pairs = enumerate_pairs(alg, window.half_width(), degree);
    let basis = coboundary_basis(alg, &pairs);
    let core = core_columns(window, &pairs);
    Ok(core_in_span(&basis, &core, &psi.to_vector(&pairs)))
}

/// A weight-0 element `h` with `[h, x] = weight(x) x` for every element of
/// the window (`L_0` for the bundled presets).
pub fn grading_element(alg: &Algebra, half_width: i64) -> Option<BasisElement> {
    let zero = Rational::zero();
    let elements = alg.window_elements(half_width);
    alg.spec()
        .family_ids()
        .filter_map(|f| alg.element_of_weight(f, &zero))
        .filter(|h| h.index.abs() <= half_width)
        .find(|&h| {
            elements.iter().all(|&x| {
                let w = alg.weight(x);
                match alg.bracket_term(h, x) {
                    Some((c, y)) => y == x && c == w,
                    None => w.is_zero(),
                }
            })
        })
}

/// Subtracts the coboundary of `f(z) = psi(h, z) / weight(z)` (zero on
/// weight-0 elements), which removes every nonzero-degree component whose
/// constraint triple with `h` fits the window. The degree-0 part is unchanged.
pub fn degree_reduce(
    alg: &Algebra,
    window: &Window,
    psi: &CocycleAssignment,
) -> Result<CocycleAssignment, CocycleError> {
    let n = window.half_width();
    let h = grading_element(alg, n).ok_or(CocycleError::NoGradingElement)?;
    let report = verify_cocycle(alg, n, psi);
    if let Some(w) = report.witness {
        return Err(CocycleError::NotACocycle {
            triple: w.triple.map(|x| alg.label(x)).join(", "),
            residual: w.residual.to_string(),
        });
    }
    let mut f = LinearFunctional::new();
    for z in alg.window_elements(n) {
        let w = alg.weight(z);
        if !w.is_zero() {
            f.set(z, psi.get(h, z) / w);
        }
    }
    Ok(psi.sub(&f.coboundary(alg, n)))
}

/// Whether degree-`d` cocycles are all coboundaries on the window core.
pub fn nonzero_degree_triviality(alg: &Algebra, window: Window, degree: &Rational) -> Result<bool, CocycleError> {
    if degree.is_zero() {
        return Err(CocycleError::DegreeZero);
    }
    let system = DegreeSystem::build(alg, window, degree);
    Ok(system.core_cocycle_dim() == system.core_coboundary_dim())
}
