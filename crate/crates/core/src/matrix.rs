//! Exact integer matrices: a sparse column-major form for boundary maps and a
//! dense form for the small transforms used to extract homology bases.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Sparse integer matrix stored by columns; row indices ascending within a column.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    columns: Vec<Vec<(usize, BigInt)>>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, columns: vec![Vec::new(); cols] }
    }

    /// Build from `(row, col, value)` triplets; repeated positions are summed.
    pub fn from_triplets(rows: usize, cols: usize, triplets: impl IntoIterator<Item = (usize, usize, BigInt)>) -> Result<Self> {
        let mut m = Self::zeros(rows, cols);
        for (r, c, v) in triplets {
            if r >= rows || c >= cols {
                return Err(Error::OutOfRange(format!("entry ({r}, {c}) outside {rows}x{cols}")));
            }
            m.columns[c].push((r, v));
        }
        for col in &mut m.columns {
            col.sort_by_key(|e| e.0);
            let mut merged: Vec<(usize, BigInt)> = Vec::with_capacity(col.len());
            for (r, v) in col.drain(..) {
                match merged.last_mut() {
                    Some(last) if last.0 == r => last.1 += v,
                    _ => merged.push((r, v)),
                }
            }
            merged.retain(|e| !e.1.is_zero());
            *col = merged;
        }
        Ok(m)
    }

    /// Build from already sorted, nonzero columns.
    pub fn from_columns(rows: usize, columns: Vec<Vec<(usize, BigInt)>>) -> Self {
        debug_assert!(columns.iter().all(|c| c.windows(2).all(|w| w[0].0 < w[1].0) && c.iter().all(|e| e.0 < rows)));
        Self { rows, cols: columns.len(), columns }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, c: usize) -> &[(usize, BigInt)] {
        &self.columns[c]
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn get(&self, r: usize, c: usize) -> BigInt {
        self.columns[c]
            .binary_search_by_key(&r, |e| e.0)
            .map(|i| self.columns[c][i].1.clone())
            .unwrap_or_else(|_| BigInt::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> {
        self.columns.iter().enumerate().flat_map(|(c, col)| col.iter().map(move |(r, v)| (*r, c, v)))
    }

    pub fn transpose(&self) -> Self {
        let mut columns = vec![Vec::new(); self.rows];
        for (r, c, v) in self.triplets() {
            columns[r].push((c, v.clone()));
        }
        Self { rows: self.cols, cols: self.rows, columns }
    }

    /// `self * other`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::SizeMismatch { expected: self.cols, got: other.rows });
        }
        let mut columns = Vec::with_capacity(other.cols);
        let mut acc: Vec<BigInt> = vec![BigInt::zero(); self.rows];
        let mut touched: Vec<usize> = Vec::new();
        for col in &other.columns {
            for (k, b) in col {
                for (r, a) in &self.columns[*k] {
                    if acc[*r].is_zero() {
                        touched.push(*r);
                    }
                    acc[*r] += a * b;
                }
            }
            touched.sort_unstable();
            touched.dedup();
            let mut out = Vec::new();
            for &r in &touched {
                let v = std::mem::take(&mut acc[r]);
                if !v.is_zero() {
                    out.push((r, v));
                }
            }
            touched.clear();
            columns.push(out);
        }
        Ok(Self { rows: self.rows, cols: other.cols, columns })
    }

    pub fn mul_vec(&self, x: &[BigInt]) -> Result<Vec<BigInt>> {
        if x.len() != self.cols {
            return Err(Error::SizeMismatch { expected: self.cols, got: x.len() });
        }
        let mut out = vec![BigInt::zero(); self.rows];
        for (c, xc) in x.iter().enumerate() {
            if xc.is_zero() {
                continue;
            }
            for (r, v) in &self.columns[c] {
                out[*r] += v * xc;
            }
        }
        Ok(out)
    }

    /// Keep the listed rows and columns, renumbered in the given order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut row_map = vec![usize::MAX; self.rows];
        for (i, &r) in rows.iter().enumerate() {
            row_map[r] = i;
        }
        let columns = cols
            .iter()
            .map(|&c| {
                let mut col: Vec<(usize, BigInt)> = self.columns[c]
                    .iter()
                    .filter(|(r, _)| row_map[*r] != usize::MAX)
                    .map(|(r, v)| (row_map[*r], v.clone()))
                    .collect();
                col.sort_by_key(|e| e.0);
                col
            })
            .collect();
        Self { rows: rows.len(), cols: cols.len(), columns }
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let mut d = DenseMatrix::zeros(self.rows, self.cols);
        for (r, c, v) in self.triplets() {
            d.data[r][c] = v.clone();
        }
        d
    }
}

/// Dense integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    pub(crate) data: Vec<Vec<BigInt>>,
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![vec![BigInt::zero(); cols]; rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DegreeMismatch("ragged rows".into()));
        }
        Ok(Self { rows: rows.len(), cols, data: rows })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let data: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        let cols = data.first().map_or(0, Vec::len);
        Self { rows: data.len(), cols, data }
    }

    /// Columns given as vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<BigInt>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            for (r, v) in col.iter().enumerate() {
                m.data[r][c] = v.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r][c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.data[r][c] = v;
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.data[r]
    }

    pub fn column(&self, c: usize) -> Vec<BigInt> {
        self.data.iter().map(|row| row[c].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c][r] = self.data[r][c].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::SizeMismatch { expected: self.cols, got: other.rows });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[r][k];
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = &other.data[k][c];
                    if !b.is_zero() {
                        out.data[r][c] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, x: &[BigInt]) -> Result<Vec<BigInt>> {
        if x.len() != self.cols {
            return Err(Error::SizeMismatch { expected: self.cols, got: x.len() });
        }
        Ok(self
            .data
            .iter()
            .map(|row| row.iter().zip(x).filter(|(a, b)| !a.is_zero() && !b.is_zero()).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// Rows `range` as a new matrix.
    pub fn row_block(&self, range: std::ops::Range<usize>) -> Self {
        Self { rows: range.len(), cols: self.cols, data: self.data[range].to_vec() }
    }

    pub fn col_block(&self, range: std::ops::Range<usize>) -> Self {
        let data = self.data.iter().map(|row| row[range.clone()].to_vec()).collect();
        Self { rows: self.rows, cols: range.len(), data }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.iter().all(Zero::is_zero))
    }

    pub fn trace(&self) -> BigInt {
        (0..self.rows.min(self.cols)).map(|i| self.data[i][i].clone()).sum()
    }

    pub fn to_sparse(&self) -> IntMatrix {
        let columns = (0..self.cols)
            .map(|c| {
                (0..self.rows)
                    .filter(|&r| !self.data[r][c].is_zero())
                    .map(|r| (r, self.data[r][c].clone()))
                    .collect()
            })
            .collect();
        IntMatrix { rows: self.rows, cols: self.cols, columns }
    }

    // Elementary operations used by the Smith form.

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        self.data.swap(a, b);
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        for row in &mut self.data {
            row.swap(a, b);
        }
    }

    /// `row[target] += k * row[source]`.
    pub(crate) fn add_row_multiple(&mut self, target: usize, source: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        let src = self.data[source].clone();
        for (t, s) in self.data[target].iter_mut().zip(src.iter()) {
            if !s.is_zero() {
                *t += k * s;
            }
        }
    }

    /// `col[target] += k * col[source]`.
    pub(crate) fn add_col_multiple(&mut self, target: usize, source: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for row in &mut self.data {
            if !row[source].is_zero() {
                let add = k * &row[source];
                row[target] += add;
            }
        }
    }

    pub(crate) fn negate_row(&mut self, r: usize) {
        for v in &mut self.data[r] {
            *v = -std::mem::take(v);
        }
    }

    pub(crate) fn negate_col(&mut self, c: usize) {
        for row in &mut self.data {
            row[c] = -std::mem::take(&mut row[c]);
        }
    }
}
