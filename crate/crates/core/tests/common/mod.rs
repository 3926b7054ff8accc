//! Shared fixtures: a dense reference eliminator, random matrices and
//! random algebra presentations.
#![allow(dead_code)]

use lieext_core::algebra::{AlgebraSpec, BracketRule, FamilyId};
use lieext_core::{IndexPolynomial, Rational, SparseMatrix};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn q(s: &str) -> Rational {
    s.parse().unwrap()
}

/// Textbook Gauss-Jordan on a dense copy; returns the RREF rows and pivot columns.
pub fn dense_rref(rows: &[Vec<Rational>], n_cols: usize) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n_cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip().unwrap();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let factor = m[i][c].clone();
                let pivot_row = m[r].clone();
                for (x, p) in m[i].iter_mut().zip(&pivot_row) {
                    *x -= &(&factor * p);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    (m, pivots)
}

pub fn dense_rank(rows: &[Vec<Rational>], n_cols: usize) -> usize {
    dense_rref(rows, n_cols).1.len()
}

/// One basis vector per free column, read off the RREF.
pub fn dense_nullspace(rows: &[Vec<Rational>], n_cols: usize) -> Vec<Vec<Rational>> {
    let (rref, pivots) = dense_rref(rows, n_cols);
    (0..n_cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![Rational::zero(); n_cols];
            v[free] = Rational::one();
            for (row, &p) in rref.iter().zip(&pivots) {
                v[p] = -row[free].clone();
            }
            v
        })
        .collect()
}

pub fn dense_in_span(basis: &[Vec<Rational>], v: &[Rational], n_cols: usize) -> bool {
    let mut rows = basis.to_vec();
    rows.push(v.to_vec());
    dense_rank(&rows, n_cols) == dense_rank(basis, n_cols)
}

pub fn random_rational<R: Rng>(rng: &mut R, bound: i64) -> Rational {
    Rational::new(rng.gen_range(-bound..=bound), rng.gen_range(1..=bound)).unwrap()
}

/// A random matrix up to `max_dim` square with roughly the given fill;
/// some rows are combinations of others so that rank deficiency is common.
pub fn random_matrix<R: Rng>(rng: &mut R, max_dim: usize) -> (usize, Vec<Vec<Rational>>) {
    let n_rows = rng.gen_range(1..=max_dim);
    let n_cols = rng.gen_range(1..=max_dim);
    let fill: f64 = rng.gen_range(0.1..0.8);
    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(n_rows);
    for _ in 0..n_rows {
        if rows.len() >= 2 && rng.gen_bool(0.3) {
            let a = rows.choose(rng).unwrap().clone();
            let b = rows.choose(rng).unwrap().clone();
            let (s, t) = (random_rational(rng, 5), random_rational(rng, 5));
            rows.push(a.iter().zip(&b).map(|(x, y)| x * &s + y * &t).collect());
        } else {
            rows.push(
                (0..n_cols)
                    .map(|_| if rng.gen_bool(fill) { random_rational(rng, 50) } else { Rational::zero() })
                    .collect(),
            );
        }
    }
    (n_cols, rows)
}

pub fn sparse(n_cols: usize, rows: &[Vec<Rational>]) -> SparseMatrix {
    SparseMatrix::from_dense(n_cols, rows).unwrap()
}

fn small_poly<R: Rng>(rng: &mut R, vars: &[&str], terms: usize) -> IndexPolynomial {
    let mut p = IndexPolynomial::zero();
    for _ in 0..terms {
        let mut t = IndexPolynomial::constant(random_rational(rng, 9));
        for _ in 0..rng.gen_range(0..=2) {
            t = &t * &IndexPolynomial::var(vars.choose(rng).unwrap());
        }
        p = p + t;
    }
    p
}

/// A random valid presentation: weights are integer multiples of the first
/// parameter (or integers), each bracket lands in a family of matching
/// weight, and same-family brackets are `(m - n)` times a symmetric factor.
pub fn random_spec<R: Rng>(rng: &mut R, serial: usize) -> AlgebraSpec {
    let params: Vec<String> = ["a", "b"][..rng.gen_range(0..=2)].iter().map(|s| s.to_string()).collect();
    let mut spec = AlgebraSpec::new(format!("g{serial}"), params.clone()).unwrap();
    let unit = match params.first() {
        Some(a) => IndexPolynomial::var(a),
        None => IndexPolynomial::constant(Rational::one()),
    };
    let names = ["A", "B", "Cx", "D"];
    let count = rng.gen_range(1..=names.len());
    let mut offsets = Vec::new();
    for name in &names[..count] {
        let k = if offsets.is_empty() { 0 } else { rng.gen_range(0..=2) };
        let offset = unit.scale(&Rational::from(k));
        spec.add_family(name, offset.clone()).unwrap();
        offsets.push(offset);
    }
    let mut vars: Vec<&str> = vec!["n", "m"];
    vars.extend(params.iter().map(String::as_str));
    for f in 0..count {
        for g in f..count {
            if rng.gen_bool(0.15) {
                continue;
            }
            let target = &offsets[f] + &offsets[g];
            let outputs: Vec<usize> = (0..count).filter(|&h| offsets[h] == target).collect();
            let rule = match outputs.choose(rng) {
                Some(&h) if rng.gen_bool(0.8) => {
                    let coefficient = if f == g {
                        let n = IndexPolynomial::var("n");
                        let m = IndexPolynomial::var("m");
                        let symmetric = IndexPolynomial::constant(random_rational(rng, 9))
                            + (&n + &m).scale(&random_rational(rng, 9))
                            + (&n * &m).scale(&random_rational(rng, 9));
                        &(&m - &n) * &symmetric
                    } else {
                        let terms = rng.gen_range(1..=3);
                        small_poly(rng, &vars, terms)
                    };
                    if coefficient.is_zero() {
                        BracketRule::Zero
                    } else {
                        BracketRule::Term { coefficient, output: FamilyId(h) }
                    }
                }
                _ => BracketRule::Zero,
            };
            spec.add_rule(FamilyId(f), FamilyId(g), rule).unwrap();
        }
    }
    spec
}

/// Random bytes, or a valid source with a few bytes replaced, deleted or duplicated.
pub fn fuzz_input<R: Rng>(rng: &mut R, seeds: &[&str]) -> Vec<u8> {
    if rng.gen_bool(0.4) {
        let len = rng.gen_range(0..200);
        let alphabet = b"algebra family weight bracket (){}[],;=+-*/# nmLYM0123456789\n\t";
        return (0..len)
            .map(|_| if rng.gen_bool(0.7) { *alphabet.choose(rng).unwrap() } else { rng.gen() })
            .collect();
    }
    let mut bytes = seeds.choose(rng).unwrap().as_bytes().to_vec();
    for _ in 0..rng.gen_range(1..=4) {
        if bytes.is_empty() {
            break;
        }
        let i = rng.gen_range(0..bytes.len());
        match rng.gen_range(0..3) {
            0 => bytes[i] = rng.gen(),
            1 => {
                bytes.remove(i);
            }
            _ => {
                let j = rng.gen_range(i..bytes.len().min(i + 12));
                let chunk = bytes[i..=j].to_vec();
                bytes.splice(i..i, chunk);
            }
        }
    }
    bytes
}
