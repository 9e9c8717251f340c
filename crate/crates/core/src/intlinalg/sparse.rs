//! Sparse row elimination on unit pivots.
//!
//! Each row carries a modulus `m` (zero for an exact equation). A pivot is an
//! entry that is a unit modulo its row's modulus (`±1` for exact rows). The
//! pivot column is cleared from every other row containing it, which is a
//! unimodular row operation that preserves the solution set of
//! `row · x ≡ 0 (mod m)` provided the target row's modulus divides the pivot
//! row's. What is left after the units run out is a small core that the dense
//! Smith form finishes.



use super::scalar::{reduce_symmetric, IntScalar, Overflow};
use super::smith::{smith_dense, Transforms};
use super::matrix::DenseMatrix;

pub type SparseRow<T> = Vec<(usize, T)>;

#[derive(Debug, Clone)]
pub(crate) struct Pivot<T> {
    /// The pivot row as it stood when chosen.
    pub row: SparseRow<T>,
    pub col: usize,
    /// Inverse of the pivot entry modulo `modulus` (the entry itself when exact).
    pub inv: T,
    pub modulus: T,
}

pub(crate) struct Eliminator<T> {
    ncols: usize,
    rows: Vec<SparseRow<T>>,
    moduli: Vec<T>,
    active: Vec<bool>,
    col_rows: Vec<Vec<usize>>,
    col_dead: Vec<bool>,
    pub pivots: Vec<Pivot<T>>,
}

/// `a^{-1} mod m`, or `a` itself when `m == 0` and `a = ±1`.
fn unit_inverse<T: IntScalar>(a: &T, m: &T) -> Option<T> {
    if m.is_zero() {
        return (a.is_one() || (-a.clone()).is_one()).then(|| a.clone());
    }
    if m.is_one() {
        return None;
    }
    let eg = a.extended_gcd(m);
    if !eg.gcd.is_one() && !(-eg.gcd.clone()).is_one() {
        return None;
    }
    let x = if eg.gcd.is_one() { eg.x } else { -eg.x };
    Some(x.mod_floor(m))
}

impl<T: IntScalar> Eliminator<T> {
    pub fn new(ncols: usize, rows: Vec<SparseRow<T>>, moduli: Vec<T>) -> Self {
        assert_eq!(rows.len(), moduli.len());
        let mut col_rows = vec![Vec::new(); ncols];
        let mut rows_red = Vec::with_capacity(rows.len());
        for (i, (row, m)) in rows.into_iter().zip(&moduli).enumerate() {
            let row: SparseRow<T> = row
                .into_iter()
                .map(|(j, v)| (j, reduce_symmetric(&v, m)))
                .filter(|(_, v)| !v.is_zero())
                .collect();
            debug_assert!(row.windows(2).all(|w| w[0].0 < w[1].0));
            for (j, _) in &row {
                col_rows[*j].push(i);
            }
            rows_red.push(row);
        }
        let active = rows_red.iter().map(|r| !r.is_empty()).collect();
        Eliminator {
            ncols,
            rows: rows_red,
            moduli,
            active,
            col_rows,
            col_dead: vec![false; ncols],
            pivots: Vec::new(),
        }
    }

    fn entry(&self, r: usize, c: usize) -> Option<&T> {
        self.rows[r].binary_search_by_key(&c, |(j, _)| *j).ok().map(|k| &self.rows[r][k].1)
    }

    fn rows_with(&mut self, c: usize) -> Vec<usize> {
        let mut v = std::mem::take(&mut self.col_rows[c]);
        v.sort_unstable();
        v.dedup();
        v.retain(|&i| self.active[i] && self.entry(i, c).is_some());
        self.col_rows[c] = v.clone();
        v
    }

    fn allowed(&mut self, r: usize, c: usize) -> bool {
        let mr = self.moduli[r].clone();
        if mr.is_zero() {
            return true;
        }
        let others = self.rows_with(c);
        others.iter().all(|&i| {
            i == r || {
                let mi = &self.moduli[i];
                !mi.is_zero() && mr.is_multiple_of(mi)
            }
        })
    }

    /// `rows[i] -= f * pivot_row`, reduced modulo the row's modulus.
    fn axpy(&mut self, i: usize, f: &T, prow: &SparseRow<T>) -> Result<(), Overflow> {
        let m = self.moduli[i].clone();
        let old = std::mem::take(&mut self.rows[i]);
        let mut out = Vec::with_capacity(old.len() + prow.len());
        let (mut a, mut b) = (0, 0);
        while a < old.len() || b < prow.len() {
            let ja = old.get(a).map(|e| e.0).unwrap_or(usize::MAX);
            let jb = prow.get(b).map(|e| e.0).unwrap_or(usize::MAX);
            let (j, v, fresh) = if ja < jb {
                a += 1;
                (ja, old[a - 1].1.clone(), false)
            } else if jb < ja {
                b += 1;
                (jb, T::zero().sub_mul_c(f, &prow[b - 1].1)?, true)
            } else {
                a += 1;
                b += 1;
                (ja, old[a - 1].1.sub_mul_c(f, &prow[b - 1].1)?, false)
            };
            let v = reduce_symmetric(&v, &m);
            if !v.is_zero() {
                if fresh {
                    self.col_rows[j].push(i);
                }
                out.push((j, v));
            }
        }
        if out.is_empty() {
            self.active[i] = false;
        }
        self.rows[i] = out;
        Ok(())
    }

    fn pivot(&mut self, r: usize, c: usize, inv: T) -> Result<(), Overflow> {
        let targets = self.rows_with(c);
        let prow = std::mem::take(&mut self.rows[r]);
        self.active[r] = false;
        let m = self.moduli[r].clone();
        for i in targets {
            if i == r {
                continue;
            }
            let a = self.entry(i, c).cloned().expect("rows_with filters on the entry");
            let mut f = a.mul_c(&inv)?;
            if !m.is_zero() {
                f = f.mod_floor(&m);
            }
            self.axpy(i, &f, &prow)?;
        }
        self.col_dead[c] = true;
        self.col_rows[c].clear();
        self.pivots.push(Pivot { row: prow, col: c, inv, modulus: m });
        Ok(())
    }

    /// Pivots until no unit entry is usable.
    pub fn run(&mut self) -> Result<(), Overflow> {
        loop {
            let mut order: Vec<usize> = (0..self.rows.len()).filter(|&i| self.active[i]).collect();
            order.sort_by_key(|&i| (self.rows[i].len(), i));
            let mut progress = false;
            for r in order {
                if !self.active[r] {
                    continue;
                }
                let m = self.moduli[r].clone();
                let mut cands: Vec<(usize, usize, T)> = self.rows[r]
                    .iter()
                    .filter_map(|(c, v)| unit_inverse(v, &m).map(|inv| (self.col_rows[*c].len(), *c, inv)))
                    .collect();
                cands.sort_by_key(|(n, c, _)| (*n, *c));
                let mut chosen = None;
                for (_, c, inv) in cands {
                    if self.allowed(r, c) {
                        chosen = Some((c, inv));
                        break;
                    }
                }
                if let Some((c, inv)) = chosen {
                    self.pivot(r, c, inv)?;
                    progress = true;
                }
            }
            if !progress {
                return Ok(());
            }
        }
    }

    /// Rows still carrying entries, with their moduli.
    pub fn core_rows(&self) -> Vec<(SparseRow<T>, T)> {
        (0..self.rows.len())
            .filter(|&i| self.active[i])
            .map(|i| (self.rows[i].clone(), self.moduli[i].clone()))
            .collect()
    }

    pub fn live_columns(&self) -> Vec<usize> {
        (0..self.ncols).filter(|&j| !self.col_dead[j]).collect()
    }
}

/// Nonzero Smith diagonal of an exact sparse matrix given by rows.
/// Returns `(number_of_unit_pivots, core_factors)`; the full diagonal is
/// that many ones followed by the core factors.
pub(crate) fn elementary_divisors<T: IntScalar>(
    ncols: usize,
    rows: Vec<SparseRow<T>>,
) -> Result<(usize, Vec<T>), Overflow> {
    let n = rows.len();
    let mut el = Eliminator::new(ncols, rows, vec![T::zero(); n]);
    el.run()?;
    let core = el.core_rows();
    if core.is_empty() {
        return Ok((el.pivots.len(), Vec::new()));
    }
    let mut cols: Vec<usize> = core.iter().flat_map(|(r, _)| r.iter().map(|e| e.0)).collect();
    cols.sort_unstable();
    cols.dedup();
    let mut dense = DenseMatrix::zeros(core.len(), cols.len());
    for (i, (row, _)) in core.iter().enumerate() {
        for (j, v) in row {
            let k = cols.binary_search(j).expect("column collected above");
            dense.set(i, k, v.clone());
        }
    }
    let snf = smith_dense(dense, Transforms::NONE)?;
    Ok((el.pivots.len(), snf.factors().to_vec()))
}

/// Number of pivots when every row is read modulo the prime `p`.
pub(crate) fn rank_mod<T: IntScalar>(ncols: usize, rows: Vec<SparseRow<T>>, p: &T) -> Result<usize, Overflow> {
    let n = rows.len();
    let mut el = Eliminator::new(ncols, rows, vec![p.clone(); n]);
    el.run()?;
    debug_assert!(el.core_rows().is_empty(), "every nonzero residue is a unit modulo a prime");
    Ok(el.pivots.len())
}

/// Generators of the lattice `{x in Z^ncols : row_i · x ≡ 0 (mod m_i) for all i}`.
pub(crate) fn kernel_mod<T: IntScalar>(
    ncols: usize,
    rows: Vec<SparseRow<T>>,
    moduli: Vec<T>,
) -> Result<Vec<Vec<T>>, Overflow> {
    let mut el = Eliminator::new(ncols, rows, moduli);
    el.run()?;
    let live = el.live_columns();
    let core = el.core_rows();

    // kernel of [C | diag(m)] on the core, projected to the live columns
    let extra: Vec<usize> = (0..core.len()).filter(|&i| !core[i].1.is_zero()).collect();
    let width = live.len() + extra.len();
    let mut core_kernel: Vec<Vec<T>> = Vec::new();
    if core.is_empty() {
        for k in 0..live.len() {
            let mut v = vec![T::zero(); live.len()];
            v[k] = T::one();
            core_kernel.push(v);
        }
    } else {
        let mut dense = DenseMatrix::zeros(core.len(), width);
        for (i, (row, _)) in core.iter().enumerate() {
            for (j, v) in row {
                let k = live.binary_search(j).expect("core rows only touch live columns");
                dense.set(i, k, v.clone());
            }
        }
        for (e, &i) in extra.iter().enumerate() {
            dense.set(i, live.len() + e, core[i].1.clone());
        }
        let snf = smith_dense(dense, Transforms { right: true, ..Transforms::NONE })?;
        let rank = snf.rank();
        let v = snf.right.expect("requested");
        for k in rank..width {
            let col: Vec<T> = (0..live.len()).map(|i| v.get(i, k).clone()).collect();
            if col.iter().any(|x| !x.is_zero()) {
                core_kernel.push(col);
            }
        }
    }

    let mut gens = Vec::with_capacity(core_kernel.len() + el.pivots.len());
    for kv in core_kernel {
        let mut x = vec![T::zero(); ncols];
        for (k, &j) in live.iter().enumerate() {
            x[j] = kv[k].clone();
        }
        back_substitute(&el.pivots, &mut x, None)?;
        gens.push(x);
    }
    for (p, piv) in el.pivots.iter().enumerate() {
        if piv.modulus.is_zero() {
            continue;
        }
        let mut x = vec![T::zero(); ncols];
        back_substitute(&el.pivots, &mut x, Some(p))?;
        gens.push(x);
    }
    Ok(gens)
}

/// Fills pivot coordinates from the later ones, in reverse pivot order.
/// With `bump = Some(p)`, pivot `p` additionally receives its modulus.
fn back_substitute<T: IntScalar>(pivots: &[Pivot<T>], x: &mut [T], bump: Option<usize>) -> Result<(), Overflow> {
    for (p, piv) in pivots.iter().enumerate().rev() {
        let mut s = T::zero();
        for (j, v) in &piv.row {
            if *j != piv.col && !x[*j].is_zero() {
                s = s.add_c(&v.mul_c(&x[*j])?)?;
            }
        }
        // a * x_c + s ≡ 0  =>  x_c ≡ -inv * s
        let mut xc = T::zero().sub_mul_c(&piv.inv, &s)?;
        if !piv.modulus.is_zero() {
            xc = reduce_symmetric(&xc, &piv.modulus);
        }
        if bump == Some(p) {
            xc = xc.add_c(&piv.modulus)?;
        }
        x[piv.col] = xc;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rows(d: &[Vec<i64>]) -> Vec<SparseRow<i64>> {
        d.iter()
            .map(|r| r.iter().enumerate().filter(|(_, v)| **v != 0).map(|(j, v)| (j, *v)).collect())
            .collect()
    }

    fn dot(r: &[i64], x: &[i64]) -> i64 {
        r.iter().zip(x).map(|(a, b)| a * b).sum()
    }

    #[test]
    fn divisors_of_small_matrix() {
        let d = vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]];
        let (ones, core) = elementary_divisors(3, rows(&d)).unwrap();
        let mut all = vec![1; ones];
        all.extend(core);
        assert_eq!(all, vec![2, 6, 12]);
    }

    #[test]
    fn unit_heavy_matrix() {
        let d = vec![vec![1, -1, 0, 0], vec![0, 1, -1, 0], vec![0, 0, 1, -1], vec![-1, 0, 0, 1]];
        let (ones, core) = elementary_divisors(4, rows(&d)).unwrap();
        assert_eq!(ones + core.len(), 3);
        assert!(core.iter().all(|c| *c == 1));
    }

    #[test]
    fn kernel_exact() {
        let d = vec![vec![1, 1, 1, 0], vec![0, 2, 0, 2]];
        let gens = kernel_mod(4, rows(&d), vec![0, 0]).unwrap();
        assert_eq!(gens.len(), 2);
        for g in &gens {
            for r in &d {
                assert_eq!(dot(r, g), 0);
            }
        }
    }

    #[test]
    fn kernel_modular() {
        // 2x ≡ 0 mod 4 has solutions x ∈ 2Z
        let gens = kernel_mod(1, rows(&[vec![2]]), vec![4]).unwrap();
        let g = gens.iter().map(|v| v[0].abs()).filter(|v| *v != 0).fold(0, num_integer::gcd);
        assert_eq!(g, 2);
        // x + y ≡ 0 mod 3: lattice of index 3
        let gens = kernel_mod(2, rows(&[vec![1, 1]]), vec![3]).unwrap();
        for g in &gens {
            assert_eq!((g[0] + g[1]).rem_euclid(3), 0);
        }
        assert!(gens.iter().any(|g| g[0] == 3 || g[1] == 3 || g[0] == -3 || g[1] == -3));
    }

    #[test]
    fn rank_over_gf2_and_gf5() {
        let d = vec![vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]];
        assert_eq!(rank_mod(3, rows(&d), &2).unwrap(), 2);
        assert_eq!(rank_mod(3, rows(&d), &5).unwrap(), 3);
        assert_eq!(rank_mod(2, rows(&[vec![2, 4]]), &5).unwrap(), 1);
        assert_eq!(rank_mod(2, rows(&[vec![5, 10]]), &5).unwrap(), 0);
    }

    #[test]
    fn unit_inverses() {
        assert_eq!(unit_inverse(&3i64, &7), Some(5));
        assert_eq!(unit_inverse(&2i64, &4), None);
        assert_eq!(unit_inverse(&-1i64, &0), Some(-1));
        assert_eq!(unit_inverse(&2i64, &0), None);
    }
}
