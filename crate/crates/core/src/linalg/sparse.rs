use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::arith::Rational;

use super::LinalgError;

/// Sparse row: strictly increasing column indices, no stored zeros.
pub type SparseRow = Vec<(usize, Rational)>;

/// Row-major sparse matrix over the rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    n_rows: usize,
    n_cols: usize,
    rows: Vec<SparseRow>,
}

impl SparseMatrix {
    pub fn zeros(n_rows: usize, n_cols: usize) -> Self {
        SparseMatrix {
            n_rows,
            n_cols,
            rows: vec![Vec::new(); n_rows],
        }
    }

    /// Builds from `(row, col, value)` entries. Zero values are dropped;
    /// a repeated position is an error.
    pub fn from_triplets<I>(n_rows: usize, n_cols: usize, entries: I) -> Result<Self, LinalgError>
    where
        I: IntoIterator<Item = (usize, usize, Rational)>,
    {
        let mut rows = vec![Vec::new(); n_rows];
        for (r, c, v) in entries {
            if r >= n_rows || c >= n_cols {
                return Err(LinalgError::EntryOutOfBounds { row: r, col: c, n_rows, n_cols });
            }
            if !v.is_zero() {
                rows[r].push((c, v));
            }
        }
        for (r, row) in rows.iter_mut().enumerate() {
            row.sort_by_key(|&(c, _)| c);
            if let Some(w) = row.windows(2).find(|w| w[0].0 == w[1].0) {
                return Err(LinalgError::DuplicateEntry { row: r, col: w[0].0 });
            }
        }
        Ok(SparseMatrix { n_rows, n_cols, rows })
    }

    /// Builds from rows that already satisfy the [`SparseRow`] invariants.
    pub fn from_sparse_rows(n_cols: usize, rows: Vec<SparseRow>) -> Result<Self, LinalgError> {
        for (r, row) in rows.iter().enumerate() {
            for w in row.windows(2) {
                if w[0].0 >= w[1].0 {
                    return Err(LinalgError::DuplicateEntry { row: r, col: w[1].0 });
                }
            }
            if let Some((c, _)) = row.iter().find(|(c, v)| *c >= n_cols || v.is_zero()) {
                return Err(LinalgError::EntryOutOfBounds { row: r, col: *c, n_rows: rows.len(), n_cols });
            }
        }
        Ok(SparseMatrix { n_rows: rows.len(), n_cols, rows })
    }

    pub fn from_dense(n_cols: usize, dense: &[Vec<Rational>]) -> Result<Self, LinalgError> {
        let mut rows = Vec::with_capacity(dense.len());
        for row in dense {
            if row.len() != n_cols {
                return Err(LinalgError::DimensionMismatch { expected: n_cols, found: row.len() });
            }
            rows.push(
                row.iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(c, v)| (c, v.clone()))
                    .collect(),
            );
        }
        Ok(SparseMatrix { n_rows: dense.len(), n_cols, rows })
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn row(&self, r: usize) -> &[(usize, Rational)] {
        &self.rows[r]
    }

    pub fn rows(&self) -> &[SparseRow] {
        &self.rows
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, *c, v)))
    }

    pub fn get(&self, r: usize, c: usize) -> Rational {
        self.rows[r]
            .binary_search_by_key(&c, |&(col, _)| col)
            .map(|i| self.rows[r][i].1.clone())
            .unwrap_or_default()
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut rows = vec![Vec::new(); self.n_cols];
        for (r, c, v) in self.entries() {
            rows[c].push((r, v.clone()));
        }
        SparseMatrix {
            n_rows: self.n_cols,
            n_cols: self.n_rows,
            rows,
        }
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>, LinalgError> {
        if v.len() != self.n_cols {
            return Err(LinalgError::DimensionMismatch { expected: self.n_cols, found: v.len() });
        }
        Ok(self
            .rows
            .iter()
            .map(|row| row.iter().map(|(c, a)| a * &v[*c]).sum())
            .collect())
    }

    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        let mut out = vec![vec![Rational::zero(); self.n_cols]; self.n_rows];
        for (r, c, v) in self.entries() {
            out[r][c] = v.clone();
        }
        out
    }

    /// Coordinate text: header `rows cols nnz`, then one `row col value` line per entry.
    pub fn to_coordinate_text(&self) -> String {
        let mut out = format!("{} {} {}\n", self.n_rows, self.n_cols, self.nnz());
        for (r, c, v) in self.entries() {
            let _ = writeln!(out, "{r} {c} {v}");
        }
        out
    }

    pub fn from_coordinate_text(text: &str) -> Result<Self, LinalgError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let parse_err = |line: usize, msg: &str| LinalgError::Parse { line, message: msg.to_string() };
        let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "missing header"))?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(str::parse)
            .collect::<Result<_, _>>()
            .map_err(|_| parse_err(hline, "header must be `rows cols nnz`"))?;
        let [n_rows, n_cols, nnz] = dims[..] else {
            return Err(parse_err(hline, "header must be `rows cols nnz`"));
        };
        let mut entries = Vec::with_capacity(nnz);
        for (ln, line) in lines {
            let fields: Vec<&str> = line.split_whitespace().collect();
            let [r, c, v] = fields[..] else {
                return Err(parse_err(ln, "entry must be `row col value`"));
            };
            let r = r.parse().map_err(|_| parse_err(ln, "bad row index"))?;
            let c = c.parse().map_err(|_| parse_err(ln, "bad column index"))?;
            let v: Rational = v.parse().map_err(|_| parse_err(ln, "bad rational value"))?;
            if v.is_zero() {
                return Err(parse_err(ln, "explicit zero entry"));
            }
            entries.push((r, c, v));
        }
        if entries.len() != nnz {
            return Err(parse_err(hline, "entry count does not match header"));
        }
        SparseMatrix::from_triplets(n_rows, n_cols, entries)
    }
}

/// `a + factor * b` on sparse rows.
pub(crate) fn axpy(a: &[(usize, Rational)], factor: &Rational, b: &[(usize, Rational)]) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, factor * &b[j].1));
            j += 1;
        } else {
            let v = &a[i].1 + factor * &b[j].1;
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Reduced row echelon form: each pivot row has coefficient 1 in its pivot
/// column and zero in every other pivot column.
#[derive(Clone, Debug)]
pub struct Echelon {
    n_cols: usize,
    pivots: Vec<(usize, SparseRow)>,
}

impl Echelon {
    /// Gaussian elimination with Markowitz pivoting: each step picks the
    /// entry minimising `(row_nnz - 1) * (col_nnz - 1)` among active rows,
    /// ties broken by `(row, col)`.
    pub fn compute(matrix: &SparseMatrix) -> Echelon {
        let n_cols = matrix.n_cols();
        let mut active: Vec<Option<SparseRow>> = matrix
            .rows()
            .iter()
            .map(|r| (!r.is_empty()).then(|| r.clone()))
            .collect();
        let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n_cols];
        for (r, row) in active.iter().enumerate() {
            for (c, _) in row.iter().flatten() {
                col_rows[*c].insert(r);
            }
        }
        let mut live: BTreeSet<usize> = (0..active.len()).filter(|&r| active[r].is_some()).collect();
        let mut pivots = Vec::new();

        while !live.is_empty() {
            let mut best: Option<(usize, usize, usize)> = None;
            'search: for &r in &live {
                let row = active[r].as_ref().expect("live row");
                let row_cost = row.len() - 1;
                for (c, _) in row {
                    let cost = row_cost * (col_rows[*c].len() - 1);
                    if best.is_none_or(|(b, _, _)| cost < b) {
                        best = Some((cost, r, *c));
                        if cost == 0 {
                            break 'search;
                        }
                    }
                }
            }
            let (_, pr, pc) = best.expect("live rows are non-empty");

            let mut prow = active[pr].take().expect("pivot row");
            live.remove(&pr);
            for (c, _) in &prow {
                col_rows[*c].remove(&pr);
            }
            let scale = prow
                .iter()
                .find(|(c, _)| *c == pc)
                .map(|(_, v)| v.recip().expect("stored entries are nonzero"))
                .expect("pivot column present");
            for (_, v) in prow.iter_mut() {
                *v *= &scale;
            }

            let targets: Vec<usize> = col_rows[pc].iter().copied().collect();
            for s in targets {
                let old = active[s].take().expect("target row");
                let factor = -old
                    .iter()
                    .find(|(c, _)| *c == pc)
                    .map(|(_, v)| v.clone())
                    .expect("column index is consistent");
                let new = axpy(&old, &factor, &prow);
                for (c, _) in &old {
                    col_rows[*c].remove(&s);
                }
                for (c, _) in &new {
                    col_rows[*c].insert(s);
                }
                if new.is_empty() {
                    live.remove(&s);
                } else {
                    active[s] = Some(new);
                }
            }
            pivots.push((pc, prow));
        }

        // Back-substitution: later pivot rows never contain earlier pivot columns.
        let mut pivot_pos = vec![usize::MAX; n_cols];
        for (k, (c, _)) in pivots.iter().enumerate() {
            pivot_pos[*c] = k;
        }
        for k in (0..pivots.len()).rev() {
            let own = pivots[k].0;
            let hits: Vec<(usize, Rational)> = pivots[k]
                .1
                .iter()
                .filter(|(c, _)| *c != own && pivot_pos[*c] != usize::MAX)
                .map(|(c, v)| (pivot_pos[*c], v.clone()))
                .collect();
            for (j, coeff) in hits {
                let reduced = axpy(&pivots[k].1, &-coeff, &pivots[j].1);
                pivots[k].1 = reduced;
            }
        }
        pivots.sort_by_key(|(c, _)| *c);
        Echelon { n_cols, pivots }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.iter().map(|(c, _)| *c)
    }

    pub fn pivot_rows(&self) -> &[(usize, SparseRow)] {
        &self.pivots
    }

    /// Nullspace basis, one vector per free column in increasing order,
    /// each scaled so its first nonzero coordinate is 1.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let mut is_pivot = vec![false; self.n_cols];
        for (c, _) in &self.pivots {
            is_pivot[*c] = true;
        }
        let free: Vec<usize> = (0..self.n_cols).filter(|&c| !is_pivot[c]).collect();
        let mut free_pos = vec![usize::MAX; self.n_cols];
        for (k, &f) in free.iter().enumerate() {
            free_pos[f] = k;
        }
        let mut vectors: Vec<Vec<Rational>> = free
            .iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.n_cols];
                v[f] = Rational::one();
                v
            })
            .collect();
        for (p, row) in &self.pivots {
            for (c, a) in row {
                if *c != *p {
                    vectors[free_pos[*c]][*p] = -a;
                }
            }
        }
        for v in &mut vectors {
            normalize_leading(v);
        }
        vectors
    }
}

pub(crate) fn normalize_leading(v: &mut [Rational]) {
    if let Some(lead) = v.iter().find(|x| !x.is_zero()).cloned() {
        if !lead.is_one() {
            let inv = lead.recip().expect("nonzero");
            for x in v.iter_mut() {
                *x *= &inv;
            }
        }
    }
}
