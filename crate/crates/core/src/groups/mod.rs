//! Finite permutation groups, enumerated in full.

mod expr;
mod families;
mod hom;
mod perm;
mod subgroups;

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

pub use expr::GroupExpr;
pub use families::{alternating, cyclic, dihedral, direct_product, from_cycles, from_permutations, quaternion, symmetric};
pub use hom::GroupHom;
pub use perm::Permutation;
pub use subgroups::{abelianization_invariants, commutator_subgroup, quotient_group, subgroup, sylow_subgroup};

use crate::error::{Error, Result};

pub const DEFAULT_ELEMENT_CAP: usize = 20160;

/// Groups up to this order keep a full multiplication table.
const TABLE_LIMIT: usize = 2048;

#[derive(Debug)]
struct Inner {
    degree: usize,
    generators: Vec<Permutation>,
    gen_index: Vec<usize>,
    elements: Vec<Permutation>,
    lookup: HashMap<Permutation, usize>,
    table: Option<Vec<u32>>,
    inverse: Vec<usize>,
    /// BFS tree: element `e` is `parent[e].0 * generator[parent[e].1]`.
    parent: Vec<(usize, usize)>,
    name: Option<String>,
}

/// An enumerated finite group. Elements are indexed from 0 (the identity)
/// in breadth-first order over the generators, each layer sorted by image
/// tuple. Clones are cheap.
#[derive(Clone, Debug)]
pub struct FiniteGroup(Arc<Inner>);

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.generators == other.0.generators && self.0.elements == other.0.elements)
    }
}

impl Eq for FiniteGroup {}

impl FiniteGroup {
    pub fn enumerate(generators: Vec<Permutation>) -> Result<Self> {
        Self::enumerate_with_cap(generators, DEFAULT_ELEMENT_CAP)
    }

    pub fn enumerate_with_cap(generators: Vec<Permutation>, cap: usize) -> Result<Self> {
        let Some(first) = generators.first() else {
            return Err(Error::InvalidPermutation("at least one generator is required".into()));
        };
        let degree = first.degree();
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::DegreeMismatch(degree, g.degree()));
        }
        let id = Permutation::identity(degree);
        let mut elements = vec![id.clone()];
        let mut lookup = HashMap::from([(id, 0usize)]);
        let mut parent = vec![(0, usize::MAX)];
        let mut layer = vec![0usize];
        while !layer.is_empty() {
            let mut fresh: HashMap<Permutation, (usize, usize)> = HashMap::new();
            for &x in &layer {
                for (s, g) in generators.iter().enumerate() {
                    let y = elements[x].mul(g);
                    if !lookup.contains_key(&y) {
                        fresh.entry(y).or_insert((x, s));
                    }
                }
            }
            let mut next: Vec<(Permutation, (usize, usize))> = fresh.into_iter().collect();
            next.sort_by(|a, b| a.0.cmp(&b.0));
            if elements.len() + next.len() > cap {
                return Err(Error::GroupTooLarge { cap });
            }
            layer = Vec::with_capacity(next.len());
            for (p, par) in next {
                let k = elements.len();
                lookup.insert(p.clone(), k);
                elements.push(p);
                parent.push(par);
                layer.push(k);
            }
        }
        let n = elements.len();
        let inverse = elements.iter().map(|p| lookup[&p.inverse()]).collect();
        let gen_index = generators.iter().map(|g| lookup[g]).collect();
        let table = (n <= TABLE_LIMIT).then(|| {
            let mut t = Vec::with_capacity(n * n);
            for a in &elements {
                for b in &elements {
                    t.push(lookup[&a.mul(b)] as u32);
                }
            }
            t
        });
        Ok(FiniteGroup(Arc::new(Inner {
            degree,
            generators,
            gen_index,
            elements,
            lookup,
            table,
            inverse,
            parent,
            name: None,
        })))
    }

    /// The right regular representation of a multiplication table on `0..n`
    /// whose element 0 is the identity.
    pub fn from_table(table: &[Vec<usize>]) -> Result<Self> {
        let n = table.len();
        if n == 0 || table.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidPermutation("multiplication table must be square and nonempty".into()));
        }
        let mut gens = Vec::new();
        for g in 0..n {
            let images: Vec<usize> = (0..n).map(|x| table[x][g] + 1).collect();
            gens.push(Permutation::from_images(&images)?);
        }
        Self::enumerate(gens)
    }

    pub(crate) fn with_name(self, name: impl Into<String>) -> Self {
        let inner = Arc::try_unwrap(self.0).unwrap_or_else(|a| Inner {
            degree: a.degree,
            generators: a.generators.clone(),
            gen_index: a.gen_index.clone(),
            elements: a.elements.clone(),
            lookup: a.lookup.clone(),
            table: a.table.clone(),
            inverse: a.inverse.clone(),
            parent: a.parent.clone(),
            name: a.name.clone(),
        });
        FiniteGroup(Arc::new(Inner { name: Some(name.into()), ..inner }))
    }

    pub fn name(&self) -> String {
        self.0.name.clone().unwrap_or_else(|| {
            let gens: Vec<String> = self.0.generators.iter().map(ToString::to_string).collect();
            format!("perm:[{}]", gens.join(","))
        })
    }

    pub fn order(&self) -> usize {
        self.0.elements.len()
    }

    pub fn degree(&self) -> usize {
        self.0.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.0.generators
    }

    pub fn ngens(&self) -> usize {
        self.0.generators.len()
    }

    /// Element index of generator `s`.
    pub fn gen(&self, s: usize) -> usize {
        self.0.gen_index[s]
    }

    pub fn gen_indices(&self) -> &[usize] {
        &self.0.gen_index
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.0.elements
    }

    pub fn element(&self, i: usize) -> &Permutation {
        &self.0.elements[i]
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.0.lookup.get(p).copied()
    }

    pub const fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.0.table {
            Some(t) => t[a * self.order() + b] as usize,
            None => self.0.lookup[&self.0.elements[a].mul(&self.0.elements[b])],
        }
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.0.inverse[a]
    }

    /// `a^-1 * b`
    #[inline]
    pub fn ldiv(&self, a: usize, b: usize) -> usize {
        self.mul(self.inv(a), b)
    }

    /// `b a b^-1`
    pub fn conj(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(b, a), self.inv(b))
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        (0..k).fold(0, |acc, _| self.mul(acc, a))
    }

    pub fn element_order(&self, a: usize) -> usize {
        self.0.elements[a].order()
    }

    /// BFS parent and generator: `e = parent * generator`, or `None` for the identity.
    pub fn parent(&self, e: usize) -> Option<(usize, usize)> {
        (e != 0).then(|| self.0.parent[e])
    }

    pub fn is_abelian(&self) -> bool {
        let g = self.gen_indices();
        g.iter().all(|&a| g.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// First element (by index) generating the whole group, if any.
    pub fn cyclic_generator(&self) -> Option<usize> {
        let n = self.order();
        if n == 1 {
            return Some(0);
        }
        if !self.is_abelian() {
            return None;
        }
        (1..n).find(|&a| self.element_order(a) == n)
    }

    pub fn is_cyclic(&self) -> bool {
        self.cyclic_generator().is_some()
    }

    /// Closure of a set of element indices, as a membership mask.
    pub fn closure(&self, gens: &[usize]) -> Vec<bool> {
        let mut inside = vec![false; self.order()];
        inside[0] = true;
        let mut stack = vec![0];
        while let Some(x) = stack.pop() {
            for &s in gens {
                let y = self.mul(x, s);
                if !inside[y] {
                    inside[y] = true;
                    stack.push(y);
                }
            }
        }
        inside
    }

    /// 1-based image tuple of element `i`.
    pub fn images(&self, i: usize) -> Vec<usize> {
        self.element(i).images()
    }
}

impl fmt::Display for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (order {})", self.name(), self.order())
    }
}
