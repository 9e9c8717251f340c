//! Explicit free `Z[G]`-resolutions of the trivial module.
//!
//! Free generators of degree `n` are numbered from 0. For the bar kinds the
//! generator number is the lexicographic index of its cell:
//!
//! * bar: `[g1..gn]` has index `sum g_i |G|^(n-i)`;
//! * normalized bar: cells avoid the identity, index `sum (g_i - 1)(|G|-1)^(n-i)`;
//! * homogeneous: the tuple `(1, h1..hn)` takes the bar index of `[h1..hn]`;
//! * cyclic: one generator per degree.
//!
//! Boundaries are computed on demand and cached.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groups::FiniteGroup;
use crate::intlinalg::{homology_of_pair, AbelianInvariants, IntMatrix};
use crate::serial::JsonInt;
use crate::{Int, Word};

/// Largest free rank a resolution will index.
pub const MAX_RANK: usize = 1 << 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ResolutionKind {
    Bar,
    NormalizedBar,
    Homogeneous,
    Cyclic,
}

impl ResolutionKind {
    pub const ALL: [ResolutionKind; 4] =
        [ResolutionKind::Bar, ResolutionKind::NormalizedBar, ResolutionKind::Homogeneous, ResolutionKind::Cyclic];

    pub fn short_name(self) -> &'static str {
        match self {
            ResolutionKind::Bar => "bar",
            ResolutionKind::NormalizedBar => "nbar",
            ResolutionKind::Homogeneous => "homog",
            ResolutionKind::Cyclic => "cyclic",
        }
    }

    /// Free rank in degree `k` for a group of order `n`, if it fits.
    pub fn rank_for(self, n: usize, k: usize) -> Option<usize> {
        let base = match self {
            ResolutionKind::Bar | ResolutionKind::Homogeneous => n,
            ResolutionKind::NormalizedBar => n - 1,
            ResolutionKind::Cyclic => 1,
        };
        base.checked_pow(k as u32).filter(|&r| r <= MAX_RANK)
    }
}

impl fmt::Display for ResolutionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

impl FromStr for ResolutionKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bar" => Ok(ResolutionKind::Bar),
            "nbar" | "normalized_bar" | "normalized" => Ok(ResolutionKind::NormalizedBar),
            "homog" | "homogeneous" => Ok(ResolutionKind::Homogeneous),
            "cyclic" => Ok(ResolutionKind::Cyclic),
            _ => Err(Error::Parse { pos: 0, msg: format!("unknown resolution kind '{s}'") }),
        }
    }
}

pub struct Resolution {
    group: FiniteGroup,
    kind: ResolutionKind,
    max_degree: usize,
    ranks: Vec<usize>,
    /// Generator of a cyclic group and its powers.
    powers: Vec<usize>,
    memo: Vec<OnceLock<Vec<OnceLock<Word>>>>,
}

impl fmt::Debug for Resolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Resolution")
            .field("group", &self.group.name())
            .field("kind", &self.kind)
            .field("ranks", &self.ranks)
            .finish()
    }
}

impl Resolution {
    pub fn new(group: &FiniteGroup, kind: ResolutionKind, max_degree: usize) -> Result<Self> {
        let n = group.order();
        let mut ranks = Vec::with_capacity(max_degree + 1);
        for k in 0..=max_degree {
            match kind.rank_for(n, k) {
                Some(r) => ranks.push(r),
                None => {
                    return Err(Error::Infeasible {
                        degree: k,
                        rank: usize::MAX,
                        nonzeros: (n as u128).saturating_pow(k as u32),
                        budget: MAX_RANK as u128,
                    })
                }
            }
        }
        let powers = if kind == ResolutionKind::Cyclic {
            let t = group.cyclic_generator().ok_or(Error::NotCyclic(n))?;
            let mut p = vec![0];
            for _ in 1..n {
                p.push(group.mul(*p.last().expect("nonempty"), t));
            }
            p
        } else {
            Vec::new()
        };
        let memo = (0..=max_degree).map(|_| OnceLock::new()).collect();
        Ok(Resolution { group: group.clone(), kind, max_degree, ranks, powers, memo })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn kind(&self) -> ResolutionKind {
        self.kind
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn rank(&self, k: usize) -> usize {
        self.ranks[k]
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    fn check(&self, k: usize, j: usize) {
        assert!(k >= 1 && k <= self.max_degree, "degree {k} outside 1..={}", self.max_degree);
        assert!(j < self.ranks[k], "generator {j} outside rank {}", self.ranks[k]);
    }

    /// `∂_k` of free generator `j`, a word in `X_(k-1)`; cached.
    pub fn boundary(&self, k: usize, j: usize) -> &Word {
        self.check(k, j);
        let slots = self.memo[k].get_or_init(|| (0..self.ranks[k]).map(|_| OnceLock::new()).collect());
        slots[j].get_or_init(|| self.compute_boundary(k, j))
    }

    /// `∂_k` of generator `j` without touching the cache.
    pub fn boundary_uncached(&self, k: usize, j: usize) -> Word {
        self.check(k, j);
        if let Some(w) = self.memo[k].get().and_then(|s| s[j].get()) {
            return w.clone();
        }
        self.compute_boundary(k, j)
    }

    /// Replaces a boundary word; for negative controls in verification.
    pub fn override_boundary(&mut self, k: usize, j: usize, w: Word) {
        self.check(k, j);
        let ranks = self.ranks[k];
        let slots = self.memo[k].get_or_init(|| (0..ranks).map(|_| OnceLock::new()).collect());
        let mut fresh: Vec<OnceLock<Word>> = (0..ranks).map(|_| OnceLock::new()).collect();
        for (i, s) in slots.iter().enumerate() {
            if let Some(v) = s.get() {
                let _ = fresh[i].set(v.clone());
            }
        }
        fresh[j] = OnceLock::from(w);
        self.memo[k] = OnceLock::from(fresh);
    }

    /// Element tuple of generator `j` in degree `k` (empty for the cyclic kind).
    pub fn cell(&self, k: usize, j: usize) -> Vec<usize> {
        let n = self.group.order();
        match self.kind {
            ResolutionKind::Bar | ResolutionKind::Homogeneous => decode(j, n, k, 0),
            ResolutionKind::NormalizedBar => decode(j, n - 1, k, 1),
            ResolutionKind::Cyclic => Vec::new(),
        }
    }

    /// Generator number of a cell, or `None` for a degenerate normalized cell.
    pub fn cell_index(&self, cell: &[usize]) -> Option<usize> {
        let n = self.group.order();
        match self.kind {
            ResolutionKind::Bar | ResolutionKind::Homogeneous => Some(cell.iter().fold(0, |a, &x| a * n + x)),
            ResolutionKind::NormalizedBar => {
                if cell.contains(&0) {
                    None
                } else {
                    Some(cell.iter().fold(0, |a, &x| a * (n - 1) + x - 1))
                }
            }
            ResolutionKind::Cyclic => Some(0),
        }
    }

    fn compute_boundary(&self, k: usize, j: usize) -> Word {
        let g = &self.group;
        let rank = self.ranks[k - 1];
        match self.kind {
            ResolutionKind::Bar | ResolutionKind::NormalizedBar => {
                let c = self.cell(k, j);
                let mut terms = Vec::with_capacity(k + 1);
                let mut push = |cell: &[usize], elt: usize, sign: i64| {
                    if let Some(idx) = self.cell_index(cell) {
                        terms.push((idx, elt, Int::from(sign)));
                    }
                };
                push(&c[1..], c[0], 1);
                for i in 1..k {
                    let mut m = Vec::with_capacity(k - 1);
                    m.extend_from_slice(&c[..i - 1]);
                    m.push(g.mul(c[i - 1], c[i]));
                    m.extend_from_slice(&c[i + 1..]);
                    push(&m, 0, if i % 2 == 0 { 1 } else { -1 });
                }
                push(&c[..k - 1], 0, if k % 2 == 0 { 1 } else { -1 });
                Word::from_terms(rank, terms)
            }
            ResolutionKind::Homogeneous => {
                // basis tuple (1, h1..hk); face i drops position i
                let h = self.cell(k, j);
                let mut terms = Vec::with_capacity(k + 1);
                let first: Vec<usize> = h[1..].iter().map(|&x| g.ldiv(h[0], x)).collect();
                terms.push((self.cell_index(&first).expect("bar index"), h[0], Int::one()));
                for i in 1..=k {
                    let mut face = h.clone();
                    face.remove(i - 1);
                    let sign = if i % 2 == 0 { 1 } else { -1 };
                    terms.push((self.cell_index(&face).expect("bar index"), 0, Int::from(sign)));
                }
                Word::from_terms(rank, terms)
            }
            ResolutionKind::Cyclic => {
                if k % 2 == 1 {
                    let t = self.powers.get(1).copied().unwrap_or(0);
                    Word::from_terms(1, [(0, t, Int::one()), (0, 0, -Int::one())])
                } else {
                    Word::from_terms(1, self.powers.iter().map(|&p| (0, p, Int::one())))
                }
            }
        }
    }

    fn require_bar(&self) -> Result<()> {
        if self.kind != ResolutionKind::Bar {
            return Err(Error::Unsupported(format!("contracting homotopy of the {} resolution", self.kind)));
        }
        Ok(())
    }

    /// `D_k : X_k -> X_(k+1)`, `D(g[g1..gk]) = [g, g1..gk]`. Only Z-linear.
    pub fn contracting_homotopy(&self, k: usize, w: &Word) -> Result<Word> {
        self.require_bar()?;
        if k >= self.max_degree {
            return Err(Error::IndexOutOfRange(format!("homotopy out of degree {k} needs degree {}", k + 1)));
        }
        if w.rank() != self.ranks[k] {
            return Err(Error::RankMismatch(w.rank(), self.ranks[k]));
        }
        let shift = self.ranks[k];
        let terms = w.terms().iter().map(|(i, e, c)| (e * shift + i, 0, c.clone()));
        Ok(Word::from_terms(self.ranks[k + 1], terms))
    }

    /// `D_(-1)(m) = m [.]`.
    pub fn homotopy_augmentation(&self, m: &Int) -> Result<Word> {
        self.require_bar()?;
        Ok(Word::from_terms(1, [(0, 0, m.clone())]))
    }

    /// `∂_k` applied to an arbitrary word of `X_k`.
    pub fn boundary_of(&self, k: usize, w: &Word) -> Result<Word> {
        if k == 0 || k > self.max_degree {
            return Err(Error::IndexOutOfRange(format!("boundary in degree {k}")));
        }
        if w.rank() != self.ranks[k] {
            return Err(Error::RankMismatch(w.rank(), self.ranks[k]));
        }
        let mut acc = Vec::new();
        for (i, e, c) in w.terms() {
            for (j, f, d) in self.boundary(k, *i).terms() {
                acc.push((*j, self.group.mul(*e, *f), c * d));
            }
        }
        Ok(Word::from_terms(self.ranks[k - 1], acc))
    }

    /// The underlying free Z-module map `∂_k`, on the basis `(gen, elt)` numbered `gen * |G| + elt`.
    pub fn underlying_matrix(&self, k: usize) -> IntMatrix<Int> {
        let n = self.group.order();
        let rows = if k == 0 { 0 } else { self.ranks[k - 1] * n };
        let cols = self.ranks[k] * n;
        if k == 0 {
            return IntMatrix::zeros(0, cols);
        }
        let mut trip = Vec::new();
        for j in 0..self.ranks[k] {
            let b = self.boundary_uncached(k, j);
            for e in 0..n {
                for (i, f, c) in b.terms() {
                    trip.push((i * n + self.group.mul(e, *f), j * n + e, c.clone()));
                }
            }
        }
        IntMatrix::from_triplets(rows, cols, trip)
    }

    /// JSON dump of the first `depth` degrees.
    pub fn dump(&self, depth: usize) -> ResolutionDump {
        let depth = depth.min(self.max_degree);
        let boundaries = (1..=depth)
            .map(|k| (0..self.ranks[k]).map(|j| WordOut::new(self.boundary(k, j))).collect())
            .collect();
        ResolutionDump {
            kind: self.kind,
            group: self.group.name(),
            order: self.group.order(),
            elements: self.group.elements().iter().map(|p| p.images()).collect(),
            ranks: self.ranks[..=depth].to_vec(),
            boundaries,
        }
    }
}

fn decode(mut j: usize, base: usize, k: usize, offset: usize) -> Vec<usize> {
    let mut out = vec![0; k];
    for slot in out.iter_mut().rev() {
        *slot = j % base + offset;
        j /= base;
    }
    out
}

pub fn bar_resolution(g: &FiniteGroup, k: usize) -> Result<Resolution> {
    Resolution::new(g, ResolutionKind::Bar, k)
}

pub fn normalized_bar_resolution(g: &FiniteGroup, k: usize) -> Result<Resolution> {
    Resolution::new(g, ResolutionKind::NormalizedBar, k)
}

pub fn homogeneous_resolution(g: &FiniteGroup, k: usize) -> Result<Resolution> {
    Resolution::new(g, ResolutionKind::Homogeneous, k)
}

pub fn cyclic_resolution(g: &FiniteGroup, k: usize) -> Result<Resolution> {
    Resolution::new(g, ResolutionKind::Cyclic, k)
}

/// A boundary word in pair form when its coefficients are small, triples otherwise.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum WordOut {
    Pairs(Vec<(i64, usize)>),
    Triples(Vec<(i64, usize, JsonInt)>),
}

impl WordOut {
    pub fn new(w: &Word) -> Self {
        match w.to_pairs(3) {
            Some(p) => WordOut::Pairs(p),
            None => WordOut::Triples(w.to_triples().into_iter().map(|(i, e, c)| (i, e, c.into())).collect()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionDump {
    pub kind: ResolutionKind,
    pub group: String,
    pub order: usize,
    /// 1-based image tuples, in element order.
    pub elements: Vec<Vec<usize>>,
    pub ranks: Vec<usize>,
    /// `boundaries[k-1][j]` is the boundary of generator `j + 1` in degree `k`.
    pub boundaries: Vec<Vec<WordOut>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeCheck {
    pub degree: usize,
    pub ok: bool,
    /// Number of generators whose boundary fails the check.
    pub failures: usize,
    /// 1-based generator number of the first failure.
    pub first_failure: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub group: String,
    pub kind: ResolutionKind,
    pub max_degree: usize,
    /// Degree 1 checks `ε ∂_1 = 0`; degree `k >= 2` checks `∂_(k-1) ∂_k = 0`.
    pub d_squared: Vec<DegreeCheck>,
    /// Homology of the underlying Z-complex in degrees `0..K-1`.
    pub homology: Vec<AbelianInvariants>,
    pub acyclic: bool,
    pub ok: bool,
}

/// Checks `∂∂ = 0` by substitution and acyclicity of the underlying Z-complex.
pub fn verify_resolution(r: &Resolution) -> Result<VerifyReport> {
    let kmax = r.max_degree();
    let mut d_squared = Vec::new();
    for k in 1..=kmax {
        let mut failures = 0;
        let mut first = None;
        let prev: Vec<Word> = if k >= 2 { (0..r.rank(k - 1)).map(|j| r.boundary(k - 1, j).clone()).collect() } else { Vec::new() };
        for j in 0..r.rank(k) {
            let b = r.boundary(k, j);
            let bad = if k == 1 {
                !b.augmentation().is_zero()
            } else {
                !b.substitute(&prev, r.group())?.is_zero()
            };
            if bad {
                failures += 1;
                first.get_or_insert(j + 1);
            }
        }
        d_squared.push(DegreeCheck { degree: k, ok: failures == 0, failures, first_failure: first });
    }
    let mut homology = Vec::new();
    let mut acyclic = true;
    if d_squared.iter().all(|c| c.ok) {
        let mats: Vec<IntMatrix<Int>> = (0..=kmax).map(|k| r.underlying_matrix(k)).collect();
        for k in 0..kmax {
            let h = homology_of_pair(&mats[k], &mats[k + 1])?;
            let expect = if k == 0 { AbelianInvariants::free(1) } else { AbelianInvariants::trivial() };
            acyclic &= h == expect;
            homology.push(h);
        }
    } else {
        acyclic = false;
    }
    let ok = acyclic && d_squared.iter().all(|c| c.ok);
    Ok(VerifyReport { group: r.group().name(), kind: r.kind(), max_degree: kmax, d_squared, homology, acyclic, ok })
}
