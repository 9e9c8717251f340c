//! Sublattices of `Z^n` and their quotients.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::invariants::AbelianInvariants;
use super::matrix::{DenseMatrix, IntMatrix};
use super::smith::{smith_with, Transforms};
use crate::error::{Error, Result};

/// The lattice spanned by a set of integer vectors, with a basis and a
/// coordinate map.
#[derive(Debug, Clone)]
pub struct Lattice {
    ambient: usize,
    /// `U` from `U G V = D`; the first `rank` rows give coordinates.
    u: DenseMatrix<BigInt>,
    d: Vec<BigInt>,
    basis: Vec<Vec<BigInt>>,
}

fn column_matrix(ambient: usize, gens: &[Vec<BigInt>]) -> IntMatrix<BigInt> {
    let trip = gens
        .iter()
        .enumerate()
        .flat_map(|(j, g)| g.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(move |(i, v)| (i, j, v.clone())));
    IntMatrix::from_triplets(ambient, gens.len(), trip)
}

impl Lattice {
    pub fn new(ambient: usize, gens: &[Vec<BigInt>]) -> Result<Self> {
        if let Some(g) = gens.iter().find(|g| g.len() != ambient) {
            return Err(Error::DimensionMismatch(format!("generator of length {} in Z^{ambient}", g.len())));
        }
        let g = column_matrix(ambient, gens);
        let snf = smith_with(&g, Transforms::LEFT);
        let rank = snf.rank();
        let u = snf.left.expect("requested");
        let ui = snf.left_inv.expect("requested");
        let d: Vec<BigInt> = snf.diagonal[..rank].to_vec();
        let basis = (0..rank).map(|i| (0..ambient).map(|r| ui.get(r, i) * &d[i]).collect()).collect();
        Ok(Lattice { ambient, u, d, basis })
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.d.len()
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    /// Coordinates in [`Lattice::basis`], or `None` when `x` is not in the lattice.
    pub fn coordinates(&self, x: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(x.len(), self.ambient);
        let ux = self.u.mul_vec(x).expect("BigInt arithmetic cannot overflow");
        let mut out = Vec::with_capacity(self.rank());
        for (i, v) in ux.iter().enumerate() {
            if i < self.rank() {
                let (q, r) = v.div_rem(&self.d[i]);
                if !r.is_zero() {
                    return None;
                }
                out.push(q);
            } else if !v.is_zero() {
                return None;
            }
        }
        Some(out)
    }

    pub fn contains(&self, x: &[BigInt]) -> bool {
        self.coordinates(x).is_some()
    }

    /// Coordinates of a vector expressed as a combination of basis vectors.
    pub fn vector(&self, coords: &[BigInt]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.ambient];
        for (c, b) in coords.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (o, v) in out.iter_mut().zip(b) {
                *o += c * v;
            }
        }
        out
    }
}

/// The quotient `Z / B` of two lattices `B ⊆ Z ⊆ Z^n`, with explicit
/// generators and a coordinate map onto them.
#[derive(Debug, Clone)]
pub struct Subquotient {
    outer: Lattice,
    /// `P` and `P^{-1}` from the Smith form of `B` in `Z`-coordinates.
    p: DenseMatrix<BigInt>,
    p_inv: DenseMatrix<BigInt>,
    /// Snf indices of nontrivial generators, and their orders (0 = free).
    index: Vec<usize>,
    orders: Vec<BigInt>,
}

impl Subquotient {
    /// Fails if some generator of `B` is not in `Z`.
    pub fn new(ambient: usize, z_gens: &[Vec<BigInt>], b_gens: &[Vec<BigInt>]) -> Result<Self> {
        let outer = Lattice::new(ambient, z_gens)?;
        let mut coords = Vec::with_capacity(b_gens.len());
        for (k, b) in b_gens.iter().enumerate() {
            if b.len() != ambient {
                return Err(Error::DimensionMismatch(format!("relation of length {} in Z^{ambient}", b.len())));
            }
            match outer.coordinates(b) {
                Some(c) => coords.push(c),
                None => return Err(Error::Precondition(format!("boundary generator {k} is not a cycle"))),
            }
        }
        let r = outer.rank();
        let bm = column_matrix(r, &coords);
        let snf = smith_with(&bm, Transforms::LEFT);
        let mut index = Vec::new();
        let mut orders = Vec::new();
        for i in 0..r {
            let t = snf.diagonal.get(i).cloned().unwrap_or_else(BigInt::zero);
            if !t.is_one() {
                index.push(i);
                orders.push(t);
            }
        }
        Ok(Subquotient { outer, p: snf.left.expect("requested"), p_inv: snf.left_inv.expect("requested"), index, orders })
    }

    /// Cyclic orders of the generators: torsion ascending, then zeros for free ones.
    pub fn orders(&self) -> &[BigInt] {
        &self.orders
    }

    pub fn ngens(&self) -> usize {
        self.orders.len()
    }

    pub fn invariants(&self) -> AbelianInvariants {
        AbelianInvariants::new(0, self.orders.clone())
    }

    pub fn outer(&self) -> &Lattice {
        &self.outer
    }

    /// Generator `k` as a vector of the ambient lattice.
    pub fn generator(&self, k: usize) -> Vec<BigInt> {
        let i = self.index[k];
        let coords: Vec<BigInt> = (0..self.outer.rank()).map(|r| self.p_inv.get(r, i).clone()).collect();
        self.outer.vector(&coords)
    }

    /// Coordinates of a cycle on the generators, reduced modulo their orders.
    pub fn coordinates(&self, x: &[BigInt]) -> Result<Vec<BigInt>> {
        let y = self
            .outer
            .coordinates(x)
            .ok_or_else(|| Error::Precondition("vector is not in the cycle lattice".into()))?;
        let z = self.p.mul_vec(&y).expect("BigInt arithmetic cannot overflow");
        Ok(self
            .index
            .iter()
            .zip(&self.orders)
            .map(|(&i, t)| if t.is_zero() { z[i].clone() } else { z[i].mod_floor(t) })
            .collect())
    }

    /// Whether a cycle is zero in the quotient.
    pub fn is_zero(&self, x: &[BigInt]) -> Result<bool> {
        Ok(self.coordinates(x)?.iter().all(Zero::is_zero))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: &[i64]) -> Vec<BigInt> {
        x.iter().map(|&a| BigInt::from(a)).collect()
    }

    #[test]
    fn lattice_coordinates() {
        let l = Lattice::new(2, &[v(&[2, 0]), v(&[0, 3]), v(&[2, 3])]).unwrap();
        assert_eq!(l.rank(), 2);
        assert!(l.contains(&v(&[4, -3])));
        assert!(!l.contains(&v(&[1, 0])));
        let c = l.coordinates(&v(&[4, -3])).unwrap();
        assert_eq!(l.vector(&c), v(&[4, -3]));
    }

    #[test]
    fn quotient_z2_by_relations() {
        // Z^2 / <(2,0),(0,4)> = Z/2 + Z/4
        let sq = Subquotient::new(2, &[v(&[1, 0]), v(&[0, 1])], &[v(&[2, 0]), v(&[0, 4])]).unwrap();
        assert_eq!(sq.invariants(), AbelianInvariants::from_i64(0, &[2, 4]));
        for k in 0..sq.ngens() {
            let g = sq.generator(k);
            let c = sq.coordinates(&g).unwrap();
            for (j, cj) in c.iter().enumerate() {
                assert_eq!(*cj, BigInt::from((j == k) as i64));
            }
        }
        assert!(sq.is_zero(&v(&[2, 4])).unwrap());
        assert!(!sq.is_zero(&v(&[1, 0])).unwrap());
    }

    #[test]
    fn free_part_and_missing_cycle() {
        let sq = Subquotient::new(3, &[v(&[1, 0, 0]), v(&[0, 1, 0])], &[v(&[0, 6, 0])]).unwrap();
        assert_eq!(sq.invariants(), AbelianInvariants::from_i64(1, &[6]));
        assert_eq!(sq.orders().last().unwrap(), &BigInt::zero());
        assert!(Subquotient::new(2, &[v(&[1, 0])], &[v(&[0, 1])]).is_err());
        assert!(sq.coordinates(&v(&[0, 0, 1])).is_err());
    }
}
