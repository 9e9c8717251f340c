//! Exact integer linear algebra: Smith forms, kernels, homology of
//! complexes of finitely generated abelian groups, ranks modulo primes.

pub mod invariants;
pub mod lattice;
pub mod matrix;
pub mod scalar;
pub mod smith;
pub(crate) mod sparse;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

pub use invariants::{factorize, is_prime, AbelianInvariants};
pub use lattice::{Lattice, Subquotient};
pub use matrix::{DenseMatrix, IntMatrix, MatrixJson, SparseMatrix};
pub use scalar::{IntScalar, Overflow};
pub use smith::{smith_normal_form, smith_with, verify_smith, SmithForm, Transforms};

use crate::error::{Error, Result};
use sparse::SparseRow;

/// Below this many cells the dense Smith form is used directly.
const DENSE_CELLS: usize = 40_000;

/// Rows of `a` as sorted sparse vectors.
fn rows_of(a: &IntMatrix<BigInt>) -> Vec<SparseRow<BigInt>> {
    let mut rows = vec![Vec::new(); a.nrows()];
    for j in 0..a.ncols() {
        for (i, v) in a.column_entries(j) {
            rows[i].push((j, v));
        }
    }
    rows
}

/// Columns of `a` as sorted sparse vectors.
fn cols_of(a: &IntMatrix<BigInt>) -> Vec<SparseRow<BigInt>> {
    (0..a.ncols()).map(|j| a.column_entries(j)).collect()
}

fn narrow_rows<T: IntScalar>(rows: &[SparseRow<BigInt>]) -> Option<Vec<SparseRow<T>>> {
    rows.iter()
        .map(|r| r.iter().map(|(j, v)| T::from_int(v).map(|t| (*j, t))).collect())
        .collect()
}

fn widen_vec<T: IntScalar>(v: Vec<T>) -> Vec<BigInt> {
    v.into_iter().map(|t| t.to_int()).collect()
}

/// Runs a generic computation on `i64`, then `i128`, then `BigInt` data.
macro_rules! with_fallback {
    ($rows:expr, $extra:expr, |$r:ident, $e:ident| $body:expr) => {{
        let rows: &[SparseRow<BigInt>] = $rows;
        let extra: &[BigInt] = $extra;
        let mut out = None;
        if let (Some($r), Some($e)) = (narrow_rows::<i64>(rows), scalar::narrow::<i64>(extra)) {
            out = $body.ok().map(|x| x.map_widen());
        }
        if out.is_none() {
            if let (Some($r), Some($e)) = (narrow_rows::<i128>(rows), scalar::narrow::<i128>(extra)) {
                out = $body.ok().map(|x| x.map_widen());
            }
        }
        match out {
            Some(x) => x,
            None => {
                let $r = rows.to_vec();
                let $e = extra.to_vec();
                $body.expect("BigInt arithmetic cannot overflow").map_widen()
            }
        }
    }};
}

trait MapWiden {
    type Out;
    fn map_widen(self) -> Self::Out;
}

impl<T: IntScalar> MapWiden for (usize, Vec<T>) {
    type Out = (usize, Vec<BigInt>);
    fn map_widen(self) -> Self::Out {
        (self.0, widen_vec(self.1))
    }
}

impl<T: IntScalar> MapWiden for Vec<Vec<T>> {
    type Out = Vec<Vec<BigInt>>;
    fn map_widen(self) -> Self::Out {
        self.into_iter().map(widen_vec).collect()
    }
}

/// Nonzero Smith diagonal entries of `a`, in divisibility order.
pub fn elementary_divisors(a: &IntMatrix<BigInt>) -> Vec<BigInt> {
    if a.nrows() * a.ncols() <= DENSE_CELLS {
        return smith_with(a, Transforms::NONE).factors().to_vec();
    }
    // eliminate along the longer dimension so that rows stay short
    let (rows, width) = if a.ncols() > a.nrows() { (cols_of(a), a.nrows()) } else { (rows_of(a), a.ncols()) };
    let (ones, core) = with_fallback!(&rows, &[], |r, _e| sparse::elementary_divisors(width, r));
    let mut out = vec![BigInt::from(1); ones];
    // the core factors are already a divisibility chain; every entry is at least 1
    out.extend(core);
    out.sort();
    out
}

pub fn rank(a: &IntMatrix<BigInt>) -> usize {
    elementary_divisors(a).len()
}

/// Rank of `a` over the field with `p` elements.
pub fn rank_mod_p(a: &IntMatrix<BigInt>, p: u64) -> Result<usize> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let (rows, width) = if a.ncols() > a.nrows() { (cols_of(a), a.nrows()) } else { (rows_of(a), a.ncols()) };
    let pb = BigInt::from(p);
    let reduce = |rows: Vec<SparseRow<BigInt>>| -> Vec<SparseRow<BigInt>> {
        rows.into_iter()
            .map(|r| r.into_iter().map(|(j, v)| (j, v.mod_floor(&pb))).filter(|(_, v)| !v.is_zero()).collect())
            .collect()
    };
    let rows = reduce(rows);
    if p < (1 << 31) {
        let small = narrow_rows::<i64>(&rows).expect("residues fit in i64");
        return Ok(sparse::rank_mod(width, small, &(p as i64)).expect("products of residues fit in i64"));
    }
    Ok(sparse::rank_mod(width, rows, &pb).expect("BigInt arithmetic cannot overflow"))
}

/// Generators of `{x : a x ≡ 0}` where row `i` is read modulo `moduli[i]` (0 = exact).
pub fn kernel_mod(a: &IntMatrix<BigInt>, moduli: &[BigInt]) -> Vec<Vec<BigInt>> {
    assert_eq!(a.nrows(), moduli.len(), "one modulus per row");
    let rows = rows_of(a);
    let width = a.ncols();
    with_fallback!(&rows, moduli, |r, m| sparse::kernel_mod(width, r, m))
}

/// Generators of the integer kernel of `a`.
pub fn kernel(a: &IntMatrix<BigInt>) -> Vec<Vec<BigInt>> {
    kernel_mod(a, &vec![BigInt::zero(); a.nrows()])
}

fn check_composable(d_n: &IntMatrix<BigInt>, d_next: &IntMatrix<BigInt>) -> Result<()> {
    if d_n.ncols() != d_next.nrows() {
        return Err(Error::DimensionMismatch(format!(
            "d_n has {} columns but d_(n+1) has {} rows",
            d_n.ncols(),
            d_next.nrows()
        )));
    }
    Ok(())
}

/// Homology `ker d_n / im d_(n+1)` of free abelian groups.
///
/// The torsion is that of the cokernel of `d_(n+1)` (the quotient by the
/// cycles is free), and the free rank is `dim - rank d_n - rank d_(n+1)`.
pub fn homology_of_pair(d_n: &IntMatrix<BigInt>, d_next: &IntMatrix<BigInt>) -> Result<AbelianInvariants> {
    check_composable(d_n, d_next)?;
    if !d_n.mul(d_next)?.is_zero() {
        return Err(Error::Precondition("d_n * d_(n+1) is not zero".into()));
    }
    let incoming = elementary_divisors(d_next);
    let outgoing = rank(d_n);
    let dim = d_n.ncols();
    let torsion: Vec<BigInt> = incoming.iter().filter(|d| d.to_i64() != Some(1)).cloned().collect();
    Ok(AbelianInvariants::new(dim - outgoing - incoming.len(), torsion))
}

/// Cycles and boundaries of a complex of presented groups `Z^r / diag(m)`.
///
/// `rel_n` presents the middle group (the source of `d_n`), `rel_prev` the
/// target of `d_n`.
pub fn homology_subquotient(
    d_n: &IntMatrix<BigInt>,
    d_next: &IntMatrix<BigInt>,
    rel_n: &[BigInt],
    rel_prev: &[BigInt],
) -> Result<Subquotient> {
    check_composable(d_n, d_next)?;
    if rel_n.len() != d_n.ncols() || rel_prev.len() != d_n.nrows() {
        return Err(Error::DimensionMismatch("one relation per generator of each chain group".into()));
    }
    let dim = d_n.ncols();
    let cycles = kernel_mod(d_n, rel_prev);
    let mut bounds: Vec<Vec<BigInt>> = (0..d_next.ncols())
        .map(|j| {
            let mut v = vec![BigInt::zero(); dim];
            for (i, x) in d_next.column_entries(j) {
                v[i] = x;
            }
            v
        })
        .filter(|v| v.iter().any(|x| !x.is_zero()))
        .collect();
    for (i, m) in rel_n.iter().enumerate() {
        if !m.is_zero() {
            let mut v = vec![BigInt::zero(); dim];
            v[i] = m.clone();
            bounds.push(v);
        }
    }
    Subquotient::new(dim, &cycles, &bounds).map_err(|e| match e {
        Error::Precondition(_) => Error::Precondition("boundaries do not respect the relations".into()),
        other => other,
    })
}

/// Homology of a complex of presented groups; see [`homology_subquotient`].
pub fn homology_with_relations(
    d_n: &IntMatrix<BigInt>,
    d_next: &IntMatrix<BigInt>,
    rel_n: &[BigInt],
    rel_prev: &[BigInt],
) -> Result<AbelianInvariants> {
    if rel_n.iter().chain(rel_prev).all(Zero::is_zero) {
        return homology_of_pair(d_n, d_next);
    }
    Ok(homology_subquotient(d_n, d_next, rel_n, rel_prev)?.invariants())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> IntMatrix<BigInt> {
        IntMatrix::<i64>::from_i64_rows(rows).widen()
    }

    fn b(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn cyclic_degree_one() {
        let h = homology_of_pair(&m(&[vec![0]]), &m(&[vec![4]])).unwrap();
        assert_eq!(h, AbelianInvariants::from_i64(0, &[4]));
    }

    #[test]
    fn point_h0() {
        let h = homology_of_pair(&IntMatrix::zeros(0, 1), &IntMatrix::zeros(1, 0)).unwrap();
        assert_eq!(h, AbelianInvariants::free(1));
    }

    #[test]
    fn zero_maps_give_free() {
        let h = homology_of_pair(&IntMatrix::zeros(2, 3), &IntMatrix::zeros(3, 4)).unwrap();
        assert_eq!(h, AbelianInvariants::free(3));
    }

    #[test]
    fn rejects_bad_pairs() {
        assert!(homology_of_pair(&m(&[vec![1]]), &m(&[vec![1]])).is_err());
        assert!(homology_of_pair(&m(&[vec![1, 0]]), &m(&[vec![1]])).is_err());
    }

    #[test]
    fn relations_only() {
        let h = homology_with_relations(&IntMatrix::zeros(0, 3), &IntMatrix::zeros(3, 0), &b(&[5, 5, 5]), &[]).unwrap();
        assert_eq!(h, AbelianInvariants::from_i64(0, &[5, 5, 5]));
    }

    #[test]
    fn cyclic_cochains_mod_two() {
        // C^1 -(2)-> C^2 -(0)-> C^3 over Z/2: H^2 = Z/2
        let h = homology_with_relations(&m(&[vec![0]]), &m(&[vec![2]]), &b(&[2]), &b(&[2])).unwrap();
        assert_eq!(h, AbelianInvariants::from_i64(0, &[2]));
    }

    #[test]
    fn relation_violation_detected() {
        // Z -(1)-> Z/2 with source relation 3: 3 does not map into 2Z
        assert!(homology_subquotient(&m(&[vec![1]]), &IntMatrix::zeros(1, 0), &b(&[3]), &b(&[2])).is_err());
    }

    #[test]
    fn ranks_mod_p() {
        assert_eq!(rank_mod_p(&IntMatrix::identity(5), 2).unwrap(), 5);
        assert_eq!(rank_mod_p(&m(&[vec![2]]), 2).unwrap(), 0);
        assert!(rank_mod_p(&m(&[vec![2]]), 4).is_err());
    }

    #[test]
    fn large_sparse_divisors_match_dense() {
        // a long bidiagonal matrix closed into a cycle
        let n = 600;
        let mut trip = Vec::new();
        for i in 0..n {
            trip.push((i, i, BigInt::from(1)));
            if i + 1 < n {
                trip.push((i, i + 1, BigInt::from(-1)));
            }
        }
        trip.push((n - 1, 0, BigInt::from(-1)));
        trip.push((n - 1, n - 1, BigInt::from(2)));
        let a = IntMatrix::from_triplets(n, n, trip);
        let ed = elementary_divisors(&a);
        assert_eq!(ed, smith_with(&a, Transforms::NONE).factors().to_vec());
        assert_eq!(ed.len(), n);
    }
}
