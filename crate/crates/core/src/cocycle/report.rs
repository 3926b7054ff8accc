use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, Parameters};
use crate::arith::Rational;

use super::known::{known_registry, KnownCocycle};
use super::system::DegreeSystem;
use super::verify::is_coboundary;
use super::window::Window;
use super::CocycleError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnownMatch {
    pub name: String,
    pub matched: bool,
}

/// Core dimension at one window of the stabilization sequence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowDims {
    pub window: i64,
    pub core_cocycle_dim: usize,
    pub core_coboundary_dim: usize,
    pub core_h2_dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct H2Report {
    pub algebra: String,
    pub lambda: Option<Rational>,
    pub mu: Option<Rational>,
    pub parameters: Parameters,
    pub window: i64,
    pub margin: i64,
    pub degree: Rational,
    pub cocycle_dim: usize,
    pub coboundary_dim: usize,
    pub h2_dim: usize,
    pub core_h2_dim: usize,
    pub stabilized: bool,
    pub matched_known: Vec<KnownMatch>,
    pub predicted_dim: Option<usize>,
    pub agree: Option<bool>,
    /// The known cocycles applicable at these parameters.
    pub registry: Vec<KnownCocycle>,
    pub stabilization: Vec<WindowDims>,
}

impl H2Report {
    pub fn matched_names(&self) -> Vec<&str> {
        self.matched_known
            .iter()
            .filter(|m| m.matched)
            .map(|m| m.name.as_str())
            .collect()
    }
}

/// The classification for `svir` in degree 0: one class unless `3*mu` is an
/// integer, with extra classes at `lambda = -1` (and `-3`, `1` for integral `mu`).
/// `None` for `mu = 0`, which the classification excludes.
pub fn predicted_dim(lambda: &Rational, mu: &Rational) -> Option<usize> {
    if mu.is_zero() {
        return None;
    }
    let is = |v: i64| lambda == &Rational::from(v);
    Some(if !mu.is_multiple_integral(3) {
        1
    } else if !mu.is_integer() {
        if is(-1) {
            2
        } else {
            1
        }
    } else if is(-1) {
        3
    } else if is(-3) || is(1) {
        2
    } else {
        1
    })
}

fn prediction(alg: &Algebra, degree: &Rational) -> Option<usize> {
    let params = alg.params();
    let base = match alg.spec().name() {
        "svir" => predicted_dim(params.get("lambda")?, params.get("mu")?)?,
        "witt" => 1,
        _ => return None,
    };
    Some(if degree.is_zero() { base } else { 0 })
}

/// Registry cocycles whose families exist, whose `lambda` (if specific)
/// matches, and whose index condition is integral.
pub fn applicable_known(alg: &Algebra) -> Vec<KnownCocycle> {
    let lambda = alg.params().get("lambda");
    known_registry()
        .into_iter()
        .filter(|k| k.lambda.is_none() || k.lambda.as_ref() == lambda)
        .filter(|k| k.instantiate(alg, 0).is_ok())
        .collect()
}

/// For each applicable known cocycle of the system's degree: whether its
/// window restriction lies in the cocycle space and is not a coboundary.
pub fn match_known(alg: &Algebra, system: &DegreeSystem) -> Vec<KnownMatch> {
    if !system.degree().is_zero() {
        return Vec::new();
    }
    applicable_known(alg)
        .into_iter()
        .map(|k| {
            let matched = k
                .instantiate(alg, system.window.half_width())
                .map(|psi| {
                    system.in_cocycle_space(&psi) && !is_coboundary(alg, &system.window, &psi).unwrap_or(true)
                })
                .unwrap_or(false);
            KnownMatch { name: k.name, matched }
        })
        .collect()
}

/// Cohomology in one degree on `window`, with core dimensions recomputed on
/// the widened windows `N + 2k` for `k < steps`.
pub fn h2(alg: &Algebra, window: Window, degree: &Rational, steps: usize) -> Result<H2Report, CocycleError> {
    if steps == 0 {
        return Err(CocycleError::InvalidWindow("stabilization needs at least one step".into()));
    }
    let system = DegreeSystem::build(alg, window, degree);
    let dims = |s: &DegreeSystem| WindowDims {
        window: s.window.half_width(),
        core_cocycle_dim: s.core_cocycle_dim(),
        core_coboundary_dim: s.core_coboundary_dim(),
        core_h2_dim: s.core_h2_dim(),
    };
    let mut stabilization = vec![dims(&system)];
    for step in 1..steps {
        stabilization.push(dims(&DegreeSystem::build(alg, window.widened(step), degree)));
    }
    let core_h2_dim = stabilization[0].core_h2_dim;
    let stabilized = stabilization.iter().all(|d| d.core_h2_dim == core_h2_dim);
    let predicted_dim = prediction(alg, degree);
    let params = alg.params();
    Ok(H2Report {
        algebra: alg.spec().name().to_string(),
        lambda: params.get("lambda").cloned(),
        mu: params.get("mu").cloned(),
        parameters: params.clone(),
        window: window.half_width(),
        margin: window.margin(),
        degree: degree.clone(),
        cocycle_dim: system.cocycles.len(),
        coboundary_dim: system.coboundaries.len(),
        h2_dim: system.h2_dim(),
        core_h2_dim,
        stabilized,
        matched_known: match_known(alg, &system),
        predicted_dim,
        agree: predicted_dim.map(|p| p == core_h2_dim),
        registry: if degree.is_zero() { applicable_known(alg) } else { Vec::new() },
        stabilization,
    })
}
