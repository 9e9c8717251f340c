use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::scalar::{IntScalar, Overflow};
use crate::error::{Error, Result};
use crate::serial::{self, JsonInt};

/// Dense sparse-switch: matrices with density below this and a dimension
/// above [`SPARSE_MIN_DIM`] are stored column-sparse.
pub const SPARSE_DENSITY: f64 = 0.05;
pub const SPARSE_MIN_DIM: usize = 500;

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenseMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: IntScalar> DenseMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMatrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = T::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |v| v.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        DenseMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&v| T::from_small(v)).collect()).collect())
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    #[inline]
    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut T {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[dst] -= q * row[src]` on columns `from..`.
    pub fn row_sub_mul(&mut self, dst: usize, src: usize, q: &T, from: usize) -> Result<(), Overflow> {
        if q.is_zero() {
            return Ok(());
        }
        let c = self.cols;
        for j in from..c {
            let s = &self.data[src * c + j];
            if s.is_zero() {
                continue;
            }
            let v = self.data[dst * c + j].sub_mul_c(q, s)?;
            self.data[dst * c + j] = v;
        }
        Ok(())
    }

    /// `col[dst] -= q * col[src]` on rows `from..`.
    pub fn col_sub_mul(&mut self, dst: usize, src: usize, q: &T, from: usize) -> Result<(), Overflow> {
        if q.is_zero() {
            return Ok(());
        }
        let c = self.cols;
        for i in from..self.rows {
            let s = &self.data[i * c + src];
            if s.is_zero() {
                continue;
            }
            let v = self.data[i * c + dst].sub_mul_c(q, s)?;
            self.data[i * c + dst] = v;
        }
        Ok(())
    }

    pub fn negate_row(&mut self, i: usize) -> Result<(), Overflow> {
        for j in 0..self.cols {
            let v = self.get(i, j).neg_c()?;
            self.set(i, j, v);
        }
        Ok(())
    }

    pub fn negate_col(&mut self, j: usize) -> Result<(), Overflow> {
        for i in 0..self.rows {
            let v = self.get(i, j).neg_c()?;
            self.set(i, j, v);
        }
        Ok(())
    }

    pub fn mul(&self, rhs: &DenseMatrix<T>) -> Result<DenseMatrix<T>, Overflow> {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(i, j).add_c(&a.mul_c(b)?)?;
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[T]) -> Result<Vec<T>, Overflow> {
        assert_eq!(self.cols, v.len());
        let mut out = vec![T::zero(); self.rows];
        for (i, o) in out.iter_mut().enumerate() {
            for (a, b) in self.row(i).iter().zip(v) {
                if !a.is_zero() && !b.is_zero() {
                    *o = o.add_c(&a.mul_c(b)?)?;
                }
            }
        }
        Ok(out)
    }

    pub fn map<U: IntScalar>(&self, f: impl Fn(&T) -> U) -> DenseMatrix<U> {
        DenseMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn try_map<U: IntScalar>(&self, f: impl Fn(&T) -> Option<U>) -> Option<DenseMatrix<U>> {
        let data: Option<Vec<U>> = self.data.iter().map(f).collect();
        Some(DenseMatrix { rows: self.rows, cols: self.cols, data: data? })
    }

    pub fn widen(&self) -> DenseMatrix<BigInt> {
        self.map(|v| v.to_int())
    }
}

/// Column-major sparse matrix; each column sorted by row with no explicit zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix<T> {
    rows: usize,
    cols: usize,
    columns: Vec<Vec<(usize, T)>>,
}

impl<T: IntScalar> SparseMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, columns: vec![Vec::new(); cols] }
    }

    /// Duplicate coordinates accumulate.
    pub fn from_triplets(rows: usize, cols: usize, triplets: impl IntoIterator<Item = (usize, usize, T)>) -> Self {
        let mut acc: Vec<BTreeMap<usize, T>> = vec![BTreeMap::new(); cols];
        for (i, j, v) in triplets {
            assert!(i < rows && j < cols, "triplet ({i},{j}) outside {rows}x{cols}");
            let e = acc[j].entry(i).or_insert_with(T::zero);
            *e = e.clone() + v;
        }
        let columns = acc
            .into_iter()
            .map(|c| c.into_iter().filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        SparseMatrix { rows, cols, columns }
    }

    /// Builds from already canonical columns (sorted rows, no zeros).
    pub fn from_columns(rows: usize, columns: Vec<Vec<(usize, T)>>) -> Self {
        debug_assert!(columns
            .iter()
            .all(|c| c.windows(2).all(|w| w[0].0 < w[1].0) && c.iter().all(|(i, v)| *i < rows && !v.is_zero())));
        SparseMatrix { rows, cols: columns.len(), columns }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, j: usize) -> &[(usize, T)] {
        &self.columns[j]
    }

    pub fn columns(&self) -> &[Vec<(usize, T)>] {
        &self.columns
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        match self.columns[j].binary_search_by_key(&i, |(r, _)| *r) {
            Ok(k) => self.columns[j][k].1.clone(),
            Err(_) => T::zero(),
        }
    }

    pub fn transpose(&self) -> Self {
        let mut cols: Vec<Vec<(usize, T)>> = vec![Vec::new(); self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for (i, v) in col {
                cols[*i].push((j, v.clone()));
            }
        }
        SparseMatrix { rows: self.cols, cols: self.rows, columns: cols }
    }
}

/// An integer matrix in whichever layout suits its density.
#[derive(Debug, Clone)]
pub enum IntMatrix<T> {
    Dense(DenseMatrix<T>),
    Sparse(SparseMatrix<T>),
}

impl<T: IntScalar> IntMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        if rows.max(cols) > SPARSE_MIN_DIM {
            IntMatrix::Sparse(SparseMatrix::zeros(rows, cols))
        } else {
            IntMatrix::Dense(DenseMatrix::zeros(rows, cols))
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_triplets(n, n, (0..n).map(|i| (i, i, T::one())))
    }

    pub fn from_triplets(rows: usize, cols: usize, triplets: impl IntoIterator<Item = (usize, usize, T)>) -> Self {
        Self::choose_layout(SparseMatrix::from_triplets(rows, cols, triplets))
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        IntMatrix::Dense(DenseMatrix::from_rows(rows))
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        IntMatrix::Dense(DenseMatrix::from_i64_rows(rows))
    }

    /// Picks the layout by the density threshold.
    pub fn choose_layout(s: SparseMatrix<T>) -> Self {
        if Self::wants_sparse(s.rows, s.cols, s.nnz()) {
            IntMatrix::Sparse(s)
        } else {
            IntMatrix::Dense(Self::Sparse(s).to_dense())
        }
    }

    fn wants_sparse(rows: usize, cols: usize, nnz: usize) -> bool {
        let cells = (rows * cols).max(1) as f64;
        rows.max(cols) > SPARSE_MIN_DIM && (nnz as f64) / cells < SPARSE_DENSITY
    }

    pub fn nrows(&self) -> usize {
        match self {
            IntMatrix::Dense(d) => d.nrows(),
            IntMatrix::Sparse(s) => s.nrows(),
        }
    }

    pub fn ncols(&self) -> usize {
        match self {
            IntMatrix::Dense(d) => d.ncols(),
            IntMatrix::Sparse(s) => s.ncols(),
        }
    }

    pub fn is_sparse(&self) -> bool {
        matches!(self, IntMatrix::Sparse(_))
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        match self {
            IntMatrix::Dense(d) => d.get(i, j).clone(),
            IntMatrix::Sparse(s) => s.get(i, j),
        }
    }

    pub fn nnz(&self) -> usize {
        match self {
            IntMatrix::Dense(d) => d.data.iter().filter(|v| !v.is_zero()).count(),
            IntMatrix::Sparse(s) => s.nnz(),
        }
    }

    pub fn to_dense(&self) -> DenseMatrix<T> {
        match self {
            IntMatrix::Dense(d) => d.clone(),
            IntMatrix::Sparse(s) => {
                let mut d = DenseMatrix::zeros(s.rows, s.cols);
                for (j, col) in s.columns.iter().enumerate() {
                    for (i, v) in col {
                        d.set(*i, j, v.clone());
                    }
                }
                d
            }
        }
    }

    pub fn to_sparse(&self) -> SparseMatrix<T> {
        match self {
            IntMatrix::Sparse(s) => s.clone(),
            IntMatrix::Dense(d) => {
                let columns = (0..d.cols)
                    .map(|j| {
                        (0..d.rows)
                            .filter_map(|i| {
                                let v = d.get(i, j);
                                (!v.is_zero()).then(|| (i, v.clone()))
                            })
                            .collect()
                    })
                    .collect();
                SparseMatrix { rows: d.rows, cols: d.cols, columns }
            }
        }
    }

    /// Nonzero entries of column `j`.
    pub fn column_entries(&self, j: usize) -> Vec<(usize, T)> {
        match self {
            IntMatrix::Sparse(s) => s.columns[j].clone(),
            IntMatrix::Dense(d) => (0..d.rows)
                .filter_map(|i| {
                    let v = d.get(i, j);
                    (!v.is_zero()).then(|| (i, v.clone()))
                })
                .collect(),
        }
    }

    /// All nonzero entries as `(row, col, value)` in column-major order.
    pub fn triplets(&self) -> Vec<(usize, usize, T)> {
        let s = self.to_sparse();
        s.columns
            .into_iter()
            .enumerate()
            .flat_map(|(j, c)| c.into_iter().map(move |(i, v)| (i, j, v)))
            .collect()
    }

    pub fn transpose(&self) -> Self {
        match self {
            IntMatrix::Dense(d) => IntMatrix::Dense(d.transpose()),
            IntMatrix::Sparse(s) => IntMatrix::Sparse(s.transpose()),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            IntMatrix::Dense(d) => d.is_zero(),
            IntMatrix::Sparse(s) => s.columns.iter().all(Vec::is_empty),
        }
    }

    /// Exact product, computed column by column through the sparse layout.
    pub fn mul(&self, rhs: &IntMatrix<T>) -> Result<IntMatrix<T>> {
        if self.ncols() != rhs.nrows() {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.nrows(),
                self.ncols(),
                rhs.nrows(),
                rhs.ncols()
            )));
        }
        let a = self.to_sparse();
        let b = rhs.to_sparse();
        let mut triplets = Vec::new();
        for (j, col) in b.columns.iter().enumerate() {
            let mut acc: BTreeMap<usize, T> = BTreeMap::new();
            for (k, bv) in col {
                for (i, av) in &a.columns[*k] {
                    let e = acc.entry(*i).or_insert_with(T::zero);
                    *e = e.clone() + av.clone() * bv.clone();
                }
            }
            triplets.extend(acc.into_iter().filter(|(_, v)| !v.is_zero()).map(|(i, v)| (i, j, v)));
        }
        Ok(Self::from_triplets(a.rows, b.cols, triplets))
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.ncols(), v.len());
        let mut out = vec![T::zero(); self.nrows()];
        for (j, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (i, a) in self.column_entries(j) {
                out[i] = out[i].clone() + a * x.clone();
            }
        }
        out
    }

    /// Horizontal concatenation `[self | rhs]`.
    pub fn hstack(&self, rhs: &IntMatrix<T>) -> Self {
        assert_eq!(self.nrows(), rhs.nrows());
        let off = self.ncols();
        let mut t = self.triplets();
        t.extend(rhs.triplets().into_iter().map(|(i, j, v)| (i, j + off, v)));
        Self::from_triplets(self.nrows(), off + rhs.ncols(), t)
    }

    pub fn try_map<U: IntScalar>(&self, f: impl Fn(&T) -> Option<U>) -> Option<IntMatrix<U>> {
        Some(match self {
            IntMatrix::Dense(d) => IntMatrix::Dense(d.try_map(f)?),
            IntMatrix::Sparse(s) => {
                let mut columns = Vec::with_capacity(s.cols);
                for c in &s.columns {
                    let col: Option<Vec<(usize, U)>> = c.iter().map(|(i, v)| f(v).map(|u| (*i, u))).collect();
                    columns.push(col?);
                }
                IntMatrix::Sparse(SparseMatrix { rows: s.rows, cols: s.cols, columns })
            }
        })
    }

    pub fn widen(&self) -> IntMatrix<BigInt> {
        self.try_map(|v| Some(v.to_int())).expect("widening never fails")
    }

    /// Narrow to another scalar type if every entry fits.
    pub fn narrow<U: IntScalar>(&self) -> Option<IntMatrix<U>> {
        self.try_map(|v| U::from_int(&v.to_int()))
    }
}

impl<T: IntScalar> PartialEq for IntMatrix<T> {
    fn eq(&self, other: &Self) -> bool {
        self.nrows() == other.nrows() && self.ncols() == other.ncols() && self.to_sparse() == other.to_sparse()
    }
}

impl<T: IntScalar> Eq for IntMatrix<T> {}

/// Matrix wire form: dense nested arrays or a sparse triplet list.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MatrixJson {
    Dense(Vec<Vec<JsonInt>>),
    Sparse { rows: usize, cols: usize, entries: Vec<(usize, usize, JsonInt)> },
}

impl From<&IntMatrix<BigInt>> for MatrixJson {
    fn from(m: &IntMatrix<BigInt>) -> Self {
        match m {
            IntMatrix::Dense(d) => MatrixJson::Dense(d.to_rows().iter().map(|r| serial::wrap(r)).collect()),
            IntMatrix::Sparse(_) => MatrixJson::Sparse {
                rows: m.nrows(),
                cols: m.ncols(),
                entries: m.triplets().into_iter().map(|(i, j, v)| (i, j, JsonInt(v))).collect(),
            },
        }
    }
}

impl TryFrom<MatrixJson> for IntMatrix<BigInt> {
    type Error = Error;

    fn try_from(j: MatrixJson) -> Result<Self> {
        match j {
            MatrixJson::Dense(rows) => {
                let c = rows.first().map_or(0, Vec::len);
                if rows.iter().any(|r| r.len() != c) {
                    return Err(Error::DimensionMismatch("ragged dense matrix rows".into()));
                }
                Ok(IntMatrix::Dense(DenseMatrix::from_rows(rows.into_iter().map(serial::unwrap).collect())))
            }
            MatrixJson::Sparse { rows, cols, entries } => {
                if let Some((i, j, _)) = entries.iter().find(|(i, j, _)| *i >= rows || *j >= cols) {
                    return Err(Error::DimensionMismatch(format!("entry ({i},{j}) outside {rows}x{cols}")));
                }
                Ok(IntMatrix::from_triplets(rows, cols, entries.into_iter().map(|(i, j, v)| (i, j, v.0))))
            }
        }
    }
}
