//! Finitely generated abelian groups in canonical form.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::serial::JsonInt;

/// `Z^free_rank ⊕ Z/d1 ⊕ ... ⊕ Z/dk` with `1 < d1 | d2 | ... | dk`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

#[derive(Serialize, Deserialize)]
struct Wire {
    free_rank: usize,
    torsion: Vec<JsonInt>,
}

impl Serialize for AbelianInvariants {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        Wire { free_rank: self.free_rank, torsion: crate::serial::wrap(&self.torsion) }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for AbelianInvariants {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let w = Wire::deserialize(d)?;
        Ok(AbelianInvariants::new(w.free_rank, crate::serial::unwrap(w.torsion)))
    }
}

impl AbelianInvariants {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        AbelianInvariants { free_rank: rank, torsion: Vec::new() }
    }

    /// Canonicalizes an arbitrary list of cyclic orders (0 = infinite, 1 = trivial).
    pub fn new(free_rank: usize, orders: Vec<BigInt>) -> Self {
        let mut inv = Self::from_orders(orders.into_iter().map(|o| o.abs()));
        inv.free_rank += free_rank;
        inv
    }

    pub fn from_orders(orders: impl IntoIterator<Item = BigInt>) -> Self {
        let mut free_rank = 0;
        let mut by_prime: BTreeMap<BigInt, Vec<BigInt>> = BTreeMap::new();
        for o in orders {
            if o.is_zero() {
                free_rank += 1;
                continue;
            }
            for (p, e) in factorize(&o.abs()) {
                by_prime.entry(p.clone()).or_default().push(num_traits::pow(p, e));
            }
        }
        let len = by_prime.values().map(Vec::len).max().unwrap_or(0);
        let mut torsion = vec![BigInt::one(); len];
        for powers in by_prime.values_mut() {
            powers.sort();
            // largest powers go to the end of the chain
            let off = len - powers.len();
            for (k, q) in powers.iter().enumerate() {
                torsion[off + k] *= q;
            }
        }
        AbelianInvariants { free_rank, torsion }
    }

    pub fn from_i64(free_rank: usize, torsion: &[i64]) -> Self {
        Self::new(free_rank, torsion.iter().map(|&t| BigInt::from(t)).collect())
    }

    pub fn cyclic(m: u64) -> Self {
        Self::from_orders([BigInt::from(m)])
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Group order, if finite.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.torsion.iter().product())
    }

    /// Prime-power decomposition, grouped by prime, ascending (e.g. `[2, 4, 3]`).
    pub fn primary(&self) -> Vec<BigInt> {
        let mut by_prime: BTreeMap<BigInt, Vec<BigInt>> = BTreeMap::new();
        for t in &self.torsion {
            for (p, e) in factorize(t) {
                by_prime.entry(p.clone()).or_default().push(num_traits::pow(p, e));
            }
        }
        by_prime
            .into_values()
            .flat_map(|mut v| {
                v.sort();
                v
            })
            .collect()
    }

    /// Direct sum.
    pub fn sum(&self, other: &Self) -> Self {
        let mut all = self.torsion.clone();
        all.extend(other.torsion.iter().cloned());
        Self::new(self.free_rank + other.free_rank, all)
    }

    /// The `p`-primary part.
    pub fn p_part(&self, p: u64) -> Self {
        let p = BigInt::from(p);
        let orders = self.primary().into_iter().filter(|q| q.is_multiple_of(&p)).collect::<Vec<_>>();
        Self::new(0, orders)
    }

    pub fn torsion_u64(&self) -> Vec<u64> {
        self.torsion.iter().map(|t| t.to_u64().expect("torsion coefficient exceeds u64")).collect()
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts: Vec<String> = self.torsion.iter().map(|t| format!("Z/{t}")).collect();
        if self.free_rank == 1 {
            parts.push("Z".into());
        } else if self.free_rank > 1 {
            parts.push(format!("Z^{}", self.free_rank));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Trial-division factorization of a positive integer.
pub fn factorize(n: &BigInt) -> Vec<(BigInt, usize)> {
    let mut n = n.abs();
    let mut out = Vec::new();
    if n <= BigInt::one() {
        return out;
    }
    let mut p = BigInt::from(2);
    while &p * &p <= n {
        let mut e = 0;
        while n.is_multiple_of(&p) {
            n /= &p;
            e += 1;
        }
        if e > 0 {
            out.push((p.clone(), e));
        }
        p += if p == BigInt::from(2) { 1 } else { 2 };
    }
    if n > BigInt::one() {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}
