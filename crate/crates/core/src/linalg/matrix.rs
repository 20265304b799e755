//! Sparse rational matrices and Gaussian elimination.

use std::collections::BTreeMap;

use super::{LinalgError, Rational};

/// Sparse vector: index -> nonzero coefficient.
pub type SparseVec = BTreeMap<usize, Rational>;

/// Adds `c * src` into `dst`, dropping entries that cancel.
pub fn axpy(dst: &mut SparseVec, c: &Rational, src: &SparseVec) {
    if c.is_zero() {
        return;
    }
    for (k, v) in src {
        add_entry(dst, *k, c * v);
    }
}

pub fn add_entry(dst: &mut SparseVec, k: usize, v: Rational) {
    if v.is_zero() {
        return;
    }
    match dst.entry(k) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(v);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += v;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, entries: BTreeMap::new() }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_dense(rows: &[Vec<Rational>]) -> Result<Self, LinalgError> {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Matrix::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(LinalgError::Shape(format!(
                    "row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        Ok(m)
    }

    /// Builds a matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(rows: usize, columns: &[SparseVec]) -> Result<Self, LinalgError> {
        let mut m = Matrix::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            for (i, v) in col {
                if *i >= rows {
                    return Err(LinalgError::Shape(format!("row index {i} out of range {rows}")));
                }
                m.set(*i, j, v.clone());
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        self.entries.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        if v.is_zero() {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), v);
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &Rational)> {
        self.entries.iter()
    }

    pub fn column(&self, j: usize) -> SparseVec {
        self.entries
            .iter()
            .filter(|((_, c), _)| *c == j)
            .map(|((r, _), v)| (*r, v.clone()))
            .collect()
    }

    pub fn mul_vec(&self, x: &[Rational]) -> Result<Vec<Rational>, LinalgError> {
        if x.len() != self.cols {
            return Err(LinalgError::Shape(format!(
                "vector of length {} against {} columns",
                x.len(),
                self.cols
            )));
        }
        let mut out = vec![Rational::zero(); self.rows];
        for ((i, j), v) in &self.entries {
            if !x[*j].is_zero() {
                out[*i] += v * &x[*j];
            }
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::Shape(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut by_row: BTreeMap<usize, Vec<(usize, &Rational)>> = BTreeMap::new();
        for ((i, j), v) in &other.entries {
            by_row.entry(*i).or_default().push((*j, v));
        }
        let mut acc: BTreeMap<(usize, usize), Rational> = BTreeMap::new();
        for ((i, k), a) in &self.entries {
            if let Some(row) = by_row.get(k) {
                for (j, b) in row {
                    *acc.entry((*i, *j)).or_default() += a * *b;
                }
            }
        }
        acc.retain(|_, v| !v.is_zero());
        Ok(Matrix { rows: self.rows, cols: other.cols, entries: acc })
    }

    fn sparse_rows(&self) -> Vec<SparseVec> {
        let mut rows = vec![SparseVec::new(); self.rows];
        for ((i, j), v) in &self.entries {
            rows[*i].insert(*j, v.clone());
        }
        rows
    }

    pub fn rank(&self) -> usize {
        Echelon::reduce(self.sparse_rows(), self.cols).pivots.len()
    }

    /// Basis of the kernel: one vector per free column, in increasing
    /// column order, with that free variable set to 1.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let ech = Echelon::reduce(self.sparse_rows(), self.cols);
        let pivot_cols: Vec<usize> = ech.pivots.iter().map(|(c, _)| *c).collect();
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivot_cols.contains(c)) {
            let mut x = vec![Rational::zero(); self.cols];
            x[free] = Rational::one();
            for (pc, row) in &ech.pivots {
                if let Some(v) = row.get(&free) {
                    x[*pc] = -v;
                }
            }
            basis.push(x);
        }
        basis
    }

    /// Inverse of a square matrix, `None` when singular.
    pub fn inverse(&self) -> Result<Option<Matrix>, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::Shape(format!("{}x{} is not square", self.rows, self.cols)));
        }
        let n = self.rows;
        let mut rows = self.sparse_rows();
        for (i, row) in rows.iter_mut().enumerate() {
            row.insert(n + i, Rational::one());
        }
        let ech = Echelon::reduce(rows, n);
        if ech.pivots.len() < n {
            return Ok(None);
        }
        let mut inv = Matrix::zeros(n, n);
        for (pc, row) in &ech.pivots {
            for (j, v) in row.range(n..) {
                inv.set(*pc, j - n, v.clone());
            }
        }
        Ok(Some(inv))
    }
}

/// Reduced row echelon form restricted to the first `ncols` columns;
/// trailing columns are carried along as augmentation.
struct Echelon {
    /// (pivot column, normalised row) in increasing pivot order.
    pivots: Vec<(usize, SparseVec)>,
    /// Rows left over after elimination, zero on the first `ncols` columns.
    residual: Vec<SparseVec>,
}

impl Echelon {
    fn reduce(mut rows: Vec<SparseVec>, ncols: usize) -> Self {
        let mut pivots: Vec<(usize, SparseVec)> = Vec::new();
        let mut remaining: Vec<usize> = (0..rows.len()).collect();
        for col in 0..ncols {
            let Some(pos) = remaining.iter().position(|&r| rows[r].contains_key(&col)) else {
                continue;
            };
            let r = remaining.remove(pos);
            let inv = rows[r][&col].recip();
            let mut prow = std::mem::take(&mut rows[r]);
            for v in prow.values_mut() {
                *v *= &inv;
            }
            for &o in &remaining {
                if let Some(f) = rows[o].get(&col).cloned() {
                    axpy(&mut rows[o], &-f, &prow);
                }
            }
            for (_, q) in pivots.iter_mut() {
                if let Some(f) = q.get(&col).cloned() {
                    axpy(q, &-f, &prow);
                }
            }
            pivots.push((col, prow));
        }
        let residual = remaining.into_iter().map(|r| std::mem::take(&mut rows[r])).collect();
        Echelon { pivots, residual }
    }
}

/// Solves `m x = b`. Returns `None` when inconsistent. Pivots are chosen
/// column by column, first available row, and free variables are set to 0,
/// so the answer is deterministic and `b = 0` yields `x = 0`.
pub fn solve_linear(m: &Matrix, b: &[Rational]) -> Result<Option<Vec<Rational>>, LinalgError> {
    if b.len() != m.rows {
        return Err(LinalgError::Shape(format!(
            "right-hand side of length {} for {} rows",
            b.len(),
            m.rows
        )));
    }
    let n = m.cols;
    let mut rows = m.sparse_rows();
    for (i, v) in b.iter().enumerate() {
        if !v.is_zero() {
            rows[i].insert(n, v.clone());
        }
    }
    let ech = Echelon::reduce(rows, n);
    if ech.residual.iter().any(|r| !r.is_empty()) {
        return Ok(None);
    }
    let mut x = vec![Rational::zero(); n];
    for (pc, row) in &ech.pivots {
        if let Some(v) = row.get(&n) {
            x[*pc] = v.clone();
        }
    }
    Ok(Some(x))
}
