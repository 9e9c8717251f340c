//! First and second cohomology from explicit inhomogeneous cocycles and
//! coboundaries, independent of any resolution.

use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::functors::{budget_from_env, GModule};
use crate::groups::FiniteGroup;
use crate::intlinalg::{homology_with_relations, AbelianInvariants, IntMatrix};
use crate::{Int, Matrix};

/// Largest group order accepted for the degree-2 system.
pub const MAX_H2_ORDER: usize = 24;

/// The linear systems for `Z^n / B^n`: `cocycle` is `δ^n : C^n -> C^(n+1)`
/// and `coboundary` is `δ^(n-1) : C^(n-1) -> C^n`. A cochain of degree `k`
/// is the stack of its values on the `k`-tuples, each a vector of `A`.
#[derive(Clone, Debug)]
pub struct CocycleSystem {
    pub degree: usize,
    pub normalized: bool,
    pub cocycle: Matrix,
    pub coboundary: Matrix,
    /// Relations of `C^(n+1)`, `C^n` and `C^(n-1)`.
    pub relations: [Vec<Int>; 3],
}

/// Enumerates `k`-tuples of elements, skipping the identity when normalized.
struct Tuples {
    order: usize,
    normalized: bool,
}

impl Tuples {
    fn base(&self) -> usize {
        if self.normalized {
            self.order - 1
        } else {
            self.order
        }
    }

    fn count(&self, k: usize) -> usize {
        self.base().pow(k as u32)
    }

    fn tuple(&self, k: usize, mut idx: usize) -> Vec<usize> {
        let b = self.base();
        let off = usize::from(self.normalized);
        let mut t = vec![0; k];
        for slot in t.iter_mut().rev() {
            *slot = idx % b + off;
            idx /= b;
        }
        t
    }

    fn index(&self, t: &[usize]) -> Option<usize> {
        let off = usize::from(self.normalized);
        let mut idx = 0;
        for &g in t {
            if g < off {
                return None;
            }
            idx = idx * self.base() + (g - off);
        }
        Some(idx)
    }
}

/// `δ^k` for inhomogeneous cochains:
/// `(δf)(g1..g(k+1)) = g1 f(g2..) + Σ (-1)^i f(..g_i g_(i+1)..) + (-1)^(k+1) f(g1..gk)`.
fn coboundary(g: &FiniteGroup, a: &GModule, tup: &Tuples, k: usize) -> Matrix {
    let r = a.rank();
    let rel = a.relations();
    let rows = tup.count(k + 1) * r;
    let cols = tup.count(k) * r;
    let mut trip: Vec<(usize, usize, Int)> = Vec::new();
    for row in 0..tup.count(k + 1) {
        let t = tup.tuple(k + 1, row);
        let mut add = |src: Vec<usize>, sign: i64, act: Option<usize>| {
            let Some(col) = tup.index(&src) else { return };
            for p in 0..r {
                for q in 0..r {
                    let v = match act {
                        Some(e) => a.action(e).get(p, q).clone(),
                        None if p == q => Int::from(1),
                        None => continue,
                    };
                    if !v.is_zero() {
                        trip.push((row * r + p, col * r + q, v * sign));
                    }
                }
            }
        };
        add(t[1..].to_vec(), 1, Some(t[0]));
        for i in 1..=k {
            let mut s = t[..i - 1].to_vec();
            s.push(g.mul(t[i - 1], t[i]));
            s.extend_from_slice(&t[i + 1..]);
            add(s, if i % 2 == 0 { 1 } else { -1 }, None);
        }
        add(t[..k].to_vec(), if (k + 1) % 2 == 0 { 1 } else { -1 }, None);
    }
    let summed = IntMatrix::from_triplets(rows, cols, trip);
    let reduced = summed.triplets().into_iter().filter_map(|(i, j, v)| {
        let m = &rel[i % r];
        let v = if m.is_zero() { v } else { v.mod_floor(m) };
        (!v.is_zero()).then_some((i, j, v))
    });
    IntMatrix::from_triplets(rows, cols, reduced)
}

impl CocycleSystem {
    pub fn new(g: &FiniteGroup, a: &GModule, degree: usize, normalized: bool) -> Result<Self> {
        if a.group() != g {
            return Err(Error::GroupMismatch("module is over a different group".into()));
        }
        if !(1..=2).contains(&degree) {
            return Err(Error::Unsupported(format!("cocycle systems of degree {degree}")));
        }
        let n = g.order();
        let rows = (n as u128).pow(degree as u32 + 1) * a.rank().max(1) as u128;
        let nonzeros = rows * (degree as u128 + 2) * (a.rank().max(1) as u128);
        let budget = budget_from_env();
        if (degree == 2 && n > MAX_H2_ORDER) || nonzeros > budget {
            return Err(Error::Infeasible { degree: degree + 1, rank: rows as usize, nonzeros, budget });
        }
        let tup = Tuples { order: n, normalized };
        let tile = |k: usize| -> Vec<Int> {
            let mut v = Vec::new();
            for _ in 0..tup.count(k) {
                v.extend(a.relations().iter().cloned());
            }
            v
        };
        Ok(CocycleSystem {
            degree,
            normalized,
            cocycle: coboundary(g, a, &tup, degree),
            coboundary: coboundary(g, a, &tup, degree - 1),
            relations: [tile(degree + 1), tile(degree), tile(degree - 1)],
        })
    }

    /// Whether every coboundary satisfies the cocycle relations.
    pub fn coboundaries_are_cocycles(&self) -> Result<bool> {
        let prod = self.cocycle.mul(&self.coboundary)?;
        let rel = &self.relations[0];
        Ok(prod.triplets().iter().all(|(i, _, v)| {
            let m = &rel[*i];
            if m.is_zero() {
                v.is_zero()
            } else {
                v.mod_floor(m).is_zero()
            }
        }))
    }

    pub fn invariants(&self) -> Result<AbelianInvariants> {
        homology_with_relations(&self.cocycle, &self.coboundary, &self.relations[1], &self.relations[0])
    }
}

/// `H^1(G, A)` as crossed homomorphisms modulo principal ones.
pub fn h1_via_cocycles(g: &FiniteGroup, a: &GModule) -> Result<AbelianInvariants> {
    CocycleSystem::new(g, a, 1, false)?.invariants()
}

/// `H^2(G, A)` as 2-cocycles modulo 2-coboundaries.
pub fn h2_via_cocycles(g: &FiniteGroup, a: &GModule) -> Result<AbelianInvariants> {
    CocycleSystem::new(g, a, 2, false)?.invariants()
}

/// The same computation restricted to normalized cochains.
pub fn normalized_via_cocycles(g: &FiniteGroup, a: &GModule, degree: usize) -> Result<AbelianInvariants> {
    CocycleSystem::new(g, a, degree, true)?.invariants()
}
