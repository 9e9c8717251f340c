//! Elements of finite free `Z[G]`-modules.
//!
//! A word is a sum of terms `c * g_e * f_i` with `f_i` a free generator and
//! `g_e` a group element. Internally generators and elements are 0-based;
//! the pair and triple I/O forms are 1-based.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groups::FiniteGroup;
use crate::intlinalg::IntScalar;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupRingWord<T> {
    rank: usize,
    /// Sorted by `(gen, elt)`, unique, nonzero coefficients.
    terms: Vec<(usize, usize, T)>,
}

impl<T: IntScalar> GroupRingWord<T> {
    pub fn zero(rank: usize) -> Self {
        GroupRingWord { rank, terms: Vec::new() }
    }

    /// `g_elt * f_gen` (0-based).
    pub fn basis(rank: usize, gen: usize, elt: usize) -> Self {
        assert!(gen < rank, "generator {gen} out of range for rank {rank}");
        GroupRingWord { rank, terms: vec![(gen, elt, T::one())] }
    }

    /// Canonicalizes arbitrary 0-based terms.
    pub fn from_terms(rank: usize, terms: impl IntoIterator<Item = (usize, usize, T)>) -> Self {
        let mut t: Vec<(usize, usize, T)> = terms.into_iter().collect();
        debug_assert!(t.iter().all(|x| x.0 < rank));
        t.sort_by_key(|x| (x.0, x.1));
        let mut out: Vec<(usize, usize, T)> = Vec::with_capacity(t.len());
        for (g, e, c) in t {
            match out.last_mut() {
                Some(last) if last.0 == g && last.1 == e => last.2 = last.2.clone() + c,
                _ => out.push((g, e, c)),
            }
        }
        out.retain(|x| !x.2.is_zero());
        GroupRingWord { rank, terms: out }
    }

    /// From 1-based signed pairs `[i, e]`: `e` is an element index and the
    /// sign of `i` is the coefficient.
    pub fn from_pairs(pairs: &[(i64, usize)], rank: usize) -> Result<Self> {
        let mut terms = Vec::with_capacity(pairs.len());
        for &(i, e) in pairs {
            let g = i.unsigned_abs() as usize;
            if i == 0 || g > rank || e == 0 {
                return Err(Error::IndexOutOfRange(format!("pair [{i},{e}] in a module of rank {rank}")));
            }
            let c = if i > 0 { T::one() } else { -T::one() };
            terms.push((g - 1, e - 1, c));
        }
        Ok(Self::from_terms(rank, terms))
    }

    /// From 1-based triples `[i, e, c]`.
    pub fn from_triples(triples: &[(i64, usize, T)], rank: usize) -> Result<Self> {
        let mut terms = Vec::with_capacity(triples.len());
        for (i, e, c) in triples {
            let g = i.unsigned_abs() as usize;
            if *i == 0 || g > rank || *e == 0 {
                return Err(Error::IndexOutOfRange(format!("triple [{i},{e},{c}] in a module of rank {rank}")));
            }
            let c = if *i > 0 { c.clone() } else { -c.clone() };
            terms.push((g - 1, e - 1, c));
        }
        Ok(Self::from_terms(rank, terms))
    }

    /// 1-based pair form, each term repeated `|c|` times. `None` if a
    /// coefficient exceeds `max_repeat`.
    pub fn to_pairs(&self, max_repeat: u64) -> Option<Vec<(i64, usize)>> {
        let mut out = Vec::new();
        for (g, e, c) in &self.terms {
            let n = c.abs().to_u64().filter(|&n| n <= max_repeat)?;
            let i = if c.is_positive() { *g as i64 + 1 } else { -(*g as i64 + 1) };
            out.extend(std::iter::repeat((i, e + 1)).take(n as usize));
        }
        Some(out)
    }

    /// 1-based triple form with positive generator numbers.
    pub fn to_triples(&self) -> Vec<(i64, usize, T)> {
        self.terms.iter().map(|(g, e, c)| (*g as i64 + 1, e + 1, c.clone())).collect()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn terms(&self) -> &[(usize, usize, T)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn check_rank(&self, other: &Self) -> Result<()> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch(self.rank, other.rank));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_rank(other)?;
        let mut out = Vec::with_capacity(self.len() + other.len());
        let (mut a, mut b) = (0, 0);
        while a < self.len() || b < other.len() {
            let ka = self.terms.get(a).map(|t| (t.0, t.1));
            let kb = other.terms.get(b).map(|t| (t.0, t.1));
            match (ka, kb) {
                (Some(x), Some(y)) if x == y => {
                    let c = self.terms[a].2.clone() + other.terms[b].2.clone();
                    if !c.is_zero() {
                        out.push((x.0, x.1, c));
                    }
                    a += 1;
                    b += 1;
                }
                (Some(x), Some(y)) if x < y => {
                    out.push(self.terms[a].clone());
                    a += 1;
                }
                (Some(_), None) => {
                    out.push(self.terms[a].clone());
                    a += 1;
                }
                _ => {
                    out.push(other.terms[b].clone());
                    b += 1;
                }
            }
        }
        Ok(GroupRingWord { rank: self.rank, terms: out })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-T::one())
    }

    pub fn scale(&self, c: &T) -> Self {
        if c.is_zero() {
            return Self::zero(self.rank);
        }
        GroupRingWord { rank: self.rank, terms: self.terms.iter().map(|(g, e, x)| (*g, *e, x.clone() * c.clone())).collect() }
    }

    /// Left multiplication by the group element `g`.
    pub fn act(&self, g: usize, group: &FiniteGroup) -> Self {
        if g == 0 {
            return self.clone();
        }
        Self::from_terms(self.rank, self.terms.iter().map(|(i, e, c)| (*i, group.mul(g, *e), c.clone())))
    }

    /// `Z[G]`-linear substitution of `images[i]` for the generator `f_i`.
    pub fn substitute(&self, images: &[GroupRingWord<T>], group: &FiniteGroup) -> Result<Self> {
        if images.len() != self.rank {
            return Err(Error::RankMismatch(images.len(), self.rank));
        }
        let target_rank = images.first().map_or(0, |w| w.rank);
        if let Some(w) = images.iter().find(|w| w.rank != target_rank) {
            return Err(Error::RankMismatch(w.rank, target_rank));
        }
        let mut acc = Vec::new();
        for (i, e, c) in &self.terms {
            for (j, f, d) in &images[*i].terms {
                acc.push((*j, group.mul(*e, *f), c.clone() * d.clone()));
            }
        }
        Ok(Self::from_terms(target_rank, acc))
    }

    /// Sum of coefficients on each generator (the group elements erased).
    pub fn erase(&self) -> Vec<(usize, T)> {
        let mut out: Vec<(usize, T)> = Vec::new();
        for (g, _, c) in &self.terms {
            match out.last_mut() {
                Some(last) if last.0 == *g => last.1 = last.1.clone() + c.clone(),
                _ => out.push((*g, c.clone())),
            }
        }
        out.retain(|x| !x.1.is_zero());
        out
    }

    /// Sum of all coefficients (the augmentation in degree 0).
    pub fn augmentation(&self) -> T {
        self.terms.iter().fold(T::zero(), |a, t| a + t.2.clone())
    }
}

impl<T: IntScalar> fmt::Display for GroupRingWord<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (g, e, c)) in self.terms.iter().enumerate() {
            let sign = if c.is_negative() { "-" } else if k > 0 { "+" } else { "" };
            let abs = c.abs();
            let coeff = if abs.is_one() { String::new() } else { format!("{abs}*") };
            let sep = if k > 0 { " " } else { "" };
            write!(f, "{sep}{sign}{coeff}g{}*f{}", e + 1, g + 1)?;
        }
        Ok(())
    }
}

/// JSON form of a word: triples `[[i, e, c], ...]`, 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordJson(pub Vec<(i64, usize, crate::serial::JsonInt)>);

impl From<&GroupRingWord<crate::Int>> for WordJson {
    fn from(w: &GroupRingWord<crate::Int>) -> Self {
        WordJson(w.to_triples().into_iter().map(|(i, e, c)| (i, e, c.into())).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::symmetric;
    use crate::Int;

    type W = GroupRingWord<Int>;

    #[test]
    fn pairs_accumulate_and_cancel() {
        let w = W::from_pairs(&[(1, 2), (-1, 1)], 1).unwrap();
        assert_eq!(w.to_triples(), vec![(1, 1, Int::from(-1)), (1, 2, Int::from(1))]);
        assert!(W::from_pairs(&[(1, 1), (-1, 1)], 1).unwrap().is_zero());
        let d = W::from_pairs(&[(2, 5), (-3, 3), (2, 4), (-1, 4), (2, 1), (-3, 1)], 4).unwrap();
        assert_eq!(d.len(), 6);
        assert!(W::from_pairs(&[(5, 1)], 4).is_err());
        assert!(W::from_pairs(&[(1, 0)], 4).is_err());
    }

    #[test]
    fn pair_round_trip() {
        let w = W::from_pairs(&[(2, 3), (2, 3), (-1, 1)], 2).unwrap();
        let back = W::from_pairs(&w.to_pairs(10).unwrap(), 2).unwrap();
        assert_eq!(w, back);
        assert!(w.scale(&Int::from(100)).to_pairs(10).is_none());
    }

    #[test]
    fn module_laws() {
        let g = symmetric(3).unwrap();
        let w = W::from_triples(&[(1, 2, Int::from(3)), (2, 5, Int::from(-1))], 2).unwrap();
        assert!(w.add(&w.scale(&Int::from(-1))).unwrap().is_zero());
        assert_eq!(w.act(0, &g), w);
        for a in 0..6 {
            for b in 0..6 {
                assert_eq!(w.act(b, &g).act(a, &g), w.act(g.mul(a, b), &g));
            }
        }
        assert!(w.add(&W::zero(3)).is_err());
    }

    #[test]
    fn substitution() {
        let g = symmetric(3).unwrap();
        let w = W::from_triples(&[(1, 2, Int::from(3)), (2, 5, Int::from(-1))], 2).unwrap();
        let units = vec![W::basis(2, 0, 0), W::basis(2, 1, 0)];
        assert_eq!(w.substitute(&units, &g).unwrap(), w);
        assert!(W::zero(2).substitute(&units, &g).unwrap().is_zero());
        assert!(w.substitute(&units[..1], &g).is_err());
    }

    #[test]
    fn display() {
        let w = W::from_triples(&[(1, 1, Int::from(-1)), (1, 2, Int::from(2))], 1).unwrap();
        assert_eq!(w.to_string(), "-g1*f1 +2*g2*f1");
    }
}
