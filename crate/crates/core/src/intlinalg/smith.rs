//! Dense Smith normal form with optional unimodular transforms.
//!
//! Pivot strategy: smallest nonzero absolute value in the active block,
//! row/column reduction, then a divisibility fix-up that folds an offending
//! row into the pivot row. The result satisfies `U * A * V = S` with
//! `d1 | d2 | ... | dr` and all `di >= 0`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::{DenseMatrix, IntMatrix};
use super::scalar::{IntScalar, Overflow};

/// Which transforms to record.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Transforms {
    pub left: bool,
    pub left_inv: bool,
    pub right: bool,
    pub right_inv: bool,
}

impl Transforms {
    pub const NONE: Transforms = Transforms { left: false, left_inv: false, right: false, right_inv: false };
    pub const ALL: Transforms = Transforms { left: true, left_inv: true, right: true, right_inv: true };
    pub const LEFT: Transforms = Transforms { left: true, left_inv: true, right: false, right_inv: false };
    pub const RIGHT: Transforms = Transforms { left: false, left_inv: false, right: true, right_inv: true };
}

#[derive(Debug, Clone)]
pub struct SmithForm<T> {
    pub rows: usize,
    pub cols: usize,
    /// Diagonal of `S`, length `min(rows, cols)`; nonzero entries first.
    pub diagonal: Vec<T>,
    /// `U`, with `U * A * V = S`.
    pub left: Option<DenseMatrix<T>>,
    pub left_inv: Option<DenseMatrix<T>>,
    /// `V`.
    pub right: Option<DenseMatrix<T>>,
    pub right_inv: Option<DenseMatrix<T>>,
}

impl<T: IntScalar> SmithForm<T> {
    pub fn rank(&self) -> usize {
        self.diagonal.iter().take_while(|d| !d.is_zero()).count()
    }

    /// The nonzero diagonal entries.
    pub fn factors(&self) -> &[T] {
        &self.diagonal[..self.rank()]
    }

    pub fn diagonal_matrix(&self) -> DenseMatrix<T> {
        let mut s = DenseMatrix::zeros(self.rows, self.cols);
        for (i, d) in self.diagonal.iter().enumerate() {
            s.set(i, i, d.clone());
        }
        s
    }

    pub fn widen(&self) -> SmithForm<BigInt> {
        SmithForm {
            rows: self.rows,
            cols: self.cols,
            diagonal: self.diagonal.iter().map(|d| d.to_int()).collect(),
            left: self.left.as_ref().map(DenseMatrix::widen),
            left_inv: self.left_inv.as_ref().map(DenseMatrix::widen),
            right: self.right.as_ref().map(DenseMatrix::widen),
            right_inv: self.right_inv.as_ref().map(DenseMatrix::widen),
        }
    }
}

struct Calc<T> {
    a: DenseMatrix<T>,
    u: Option<DenseMatrix<T>>,
    ui: Option<DenseMatrix<T>>,
    v: Option<DenseMatrix<T>>,
    vi: Option<DenseMatrix<T>>,
}

impl<T: IntScalar> Calc<T> {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap_rows(i, j);
        if let Some(u) = &mut self.u {
            u.swap_rows(i, j);
        }
        if let Some(ui) = &mut self.ui {
            ui.swap_cols(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap_cols(i, j);
        if let Some(v) = &mut self.v {
            v.swap_cols(i, j);
        }
        if let Some(vi) = &mut self.vi {
            vi.swap_rows(i, j);
        }
    }

    /// `row[dst] -= q * row[src]`
    fn row_sub(&mut self, dst: usize, src: usize, q: &T, from: usize) -> Result<(), Overflow> {
        self.a.row_sub_mul(dst, src, q, from)?;
        if let Some(u) = &mut self.u {
            u.row_sub_mul(dst, src, q, 0)?;
        }
        if let Some(ui) = &mut self.ui {
            ui.col_sub_mul(src, dst, &q.neg_c()?, 0)?;
        }
        Ok(())
    }

    /// `col[dst] -= q * col[src]`
    fn col_sub(&mut self, dst: usize, src: usize, q: &T, from: usize) -> Result<(), Overflow> {
        self.a.col_sub_mul(dst, src, q, from)?;
        if let Some(v) = &mut self.v {
            v.col_sub_mul(dst, src, q, 0)?;
        }
        if let Some(vi) = &mut self.vi {
            vi.row_sub_mul(src, dst, &q.neg_c()?, 0)?;
        }
        Ok(())
    }

    fn negate_row(&mut self, i: usize) -> Result<(), Overflow> {
        self.a.negate_row(i)?;
        if let Some(u) = &mut self.u {
            u.negate_row(i)?;
        }
        if let Some(ui) = &mut self.ui {
            ui.negate_col(i)?;
        }
        Ok(())
    }

    fn min_in_block(&self, t: usize) -> Result<Option<(usize, usize)>, Overflow> {
        let mut best: Option<(T, usize, usize)> = None;
        for i in t..self.a.nrows() {
            for j in t..self.a.ncols() {
                let v = self.a.get(i, j);
                if v.is_zero() {
                    continue;
                }
                let av = v.abs_c()?;
                if best.as_ref().is_none_or(|(b, _, _)| av < *b) {
                    let unit = av.is_one();
                    best = Some((av, i, j));
                    if unit {
                        return Ok(best.map(|(_, i, j)| (i, j)));
                    }
                }
            }
        }
        Ok(best.map(|(_, i, j)| (i, j)))
    }

    fn run(&mut self) -> Result<(), Overflow> {
        let (m, n) = (self.a.nrows(), self.a.ncols());
        for t in 0..m.min(n) {
            let Some((pi, pj)) = self.min_in_block(t)? else { break };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let p = self.a.get(t, t).clone();
                let mut smallest: Option<(T, bool, usize)> = None;
                for i in t + 1..m {
                    let x = self.a.get(i, t);
                    if x.is_zero() {
                        continue;
                    }
                    let q = x.div_floor(&p);
                    self.row_sub(i, t, &q, t)?;
                    let r = self.a.get(i, t);
                    if !r.is_zero() {
                        let ar = r.abs_c()?;
                        if smallest.as_ref().is_none_or(|(s, _, _)| ar < *s) {
                            smallest = Some((ar, true, i));
                        }
                    }
                }
                for j in t + 1..n {
                    let x = self.a.get(t, j);
                    if x.is_zero() {
                        continue;
                    }
                    let q = x.div_floor(&p);
                    self.col_sub(j, t, &q, t)?;
                    let r = self.a.get(t, j);
                    if !r.is_zero() {
                        let ar = r.abs_c()?;
                        if smallest.as_ref().is_none_or(|(s, _, _)| ar < *s) {
                            smallest = Some((ar, false, j));
                        }
                    }
                }
                if let Some((_, is_row, k)) = smallest {
                    if is_row {
                        self.swap_rows(t, k);
                    } else {
                        self.swap_cols(t, k);
                    }
                    continue;
                }
                // row t and column t are clear; enforce divisibility of the block
                let offending = (t + 1..m).find(|&i| (t + 1..n).any(|j| !self.a.get(i, j).is_multiple_of(&p)));
                match offending {
                    Some(i) => self.row_sub(t, i, &T::one().neg_c()?, t)?,
                    None => break,
                }
            }
            if self.a.get(t, t).is_negative() {
                self.negate_row(t)?;
            }
        }
        Ok(())
    }
}

/// Smith normal form over any scalar; fails only on machine-integer overflow.
pub fn smith_dense<T: IntScalar>(a: DenseMatrix<T>, tr: Transforms) -> Result<SmithForm<T>, Overflow> {
    let (m, n) = (a.nrows(), a.ncols());
    let id = |k: usize, on: bool| on.then(|| DenseMatrix::identity(k));
    let mut calc = Calc { a, u: id(m, tr.left), ui: id(m, tr.left_inv), v: id(n, tr.right), vi: id(n, tr.right_inv) };
    calc.run()?;
    let diagonal = (0..m.min(n)).map(|i| calc.a.get(i, i).clone()).collect();
    Ok(SmithForm { rows: m, cols: n, diagonal, left: calc.u, left_inv: calc.ui, right: calc.v, right_inv: calc.vi })
}

/// Exact Smith form of an arbitrary-precision matrix, trying 64-bit arithmetic first.
pub fn smith_with(a: &IntMatrix<BigInt>, tr: Transforms) -> SmithForm<BigInt> {
    if let Some(small) = a.narrow::<i64>() {
        if let Ok(s) = smith_dense(small.to_dense(), tr) {
            return s.widen();
        }
    }
    if let Some(mid) = a.narrow::<i128>() {
        if let Ok(s) = smith_dense(mid.to_dense(), tr) {
            return s.widen();
        }
    }
    smith_dense(a.to_dense(), tr).expect("BigInt arithmetic cannot overflow")
}

/// Smith normal form with all four transforms recorded.
pub fn smith_normal_form(a: &IntMatrix<BigInt>) -> SmithForm<BigInt> {
    smith_with(a, Transforms::ALL)
}

/// Exact determinant by fraction-free (Bareiss) elimination.
pub fn determinant(m: &DenseMatrix<BigInt>) -> BigInt {
    assert_eq!(m.nrows(), m.ncols(), "determinant of a non-square matrix");
    let n = m.nrows();
    if n == 0 {
        return BigInt::from(1);
    }
    let mut a = m.clone();
    let mut sign = BigInt::from(1);
    let mut prev = BigInt::from(1);
    for k in 0..n - 1 {
        if a.get(k, k).is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a.get(i, k).is_zero()) else {
                return BigInt::zero();
            };
            a.swap_rows(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                a.set(i, j, v);
            }
        }
        prev = a.get(k, k).clone();
    }
    sign * a.get(n - 1, n - 1)
}

/// Checks `U A V = S`, unimodularity and the divisibility chain.
pub fn verify_smith(a: &IntMatrix<BigInt>, s: &SmithForm<BigInt>) -> bool {
    let (Some(u), Some(v)) = (&s.left, &s.right) else { return false };
    let Ok(uav) = u.mul(&a.to_dense()).and_then(|ua| ua.mul(v)) else { return false };
    if uav != s.diagonal_matrix() {
        return false;
    }
    if !determinant(u).abs().is_one() || !determinant(v).abs().is_one() {
        return false;
    }
    if let (Some(ui), Some(vi)) = (&s.left_inv, &s.right_inv) {
        let idm = DenseMatrix::identity(s.rows);
        let idn = DenseMatrix::identity(s.cols);
        if u.mul(ui).ok() != Some(idm) || v.mul(vi).ok() != Some(idn) {
            return false;
        }
    }
    let r = s.rank();
    s.diagonal[r..].iter().all(Zero::is_zero)
        && s.diagonal.iter().all(|d| !d.is_negative())
        && s.diagonal[..r].windows(2).all(|w| w[1].is_multiple_of(&w[0]))
}
