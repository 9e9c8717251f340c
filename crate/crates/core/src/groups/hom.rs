use super::FiniteGroup;
use crate::error::{Error, Result};

/// A validated homomorphism, with the full element table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    source: FiniteGroup,
    target: FiniteGroup,
    gen_images: Vec<usize>,
    images: Vec<usize>,
}

impl GroupHom {
    /// Extends generator images along the enumeration tree and checks
    /// `f(x s) = f(x) f(s)` for every element `x` and generator `s`.
    pub fn new(source: &FiniteGroup, target: &FiniteGroup, gen_images: Vec<usize>) -> Result<Self> {
        if gen_images.len() != source.ngens() {
            return Err(Error::NotHomomorphism(format!(
                "{} generator images given for {} generators",
                gen_images.len(),
                source.ngens()
            )));
        }
        if let Some(&bad) = gen_images.iter().find(|&&i| i >= target.order()) {
            return Err(Error::IndexOutOfRange(format!("element {} of a group of order {}", bad + 1, target.order())));
        }
        let mut images = vec![0; source.order()];
        for e in 1..source.order() {
            let (p, s) = source.parent(e).expect("non-identity");
            images[e] = target.mul(images[p], gen_images[s]);
        }
        for x in 0..source.order() {
            for (s, &gs) in source.gen_indices().iter().enumerate() {
                let lhs = images[source.mul(x, gs)];
                let rhs = target.mul(images[x], gen_images[s]);
                if lhs != rhs {
                    return Err(Error::NotHomomorphism(format!(
                        "f({} * {}) = {} but f({}) * f({}) = {}",
                        source.element(x),
                        source.element(gs),
                        target.element(lhs),
                        source.element(x),
                        source.element(gs),
                        target.element(rhs)
                    )));
                }
            }
        }
        Ok(GroupHom { source: source.clone(), target: target.clone(), gen_images, images })
    }

    /// Generator images given as permutations of the target.
    pub fn from_permutations(source: &FiniteGroup, target: &FiniteGroup, perms: &[super::Permutation]) -> Result<Self> {
        let idx = perms
            .iter()
            .map(|p| {
                let p = p.extended(target.degree());
                target
                    .index_of(&p)
                    .ok_or_else(|| Error::NotHomomorphism(format!("{p} is not an element of the target")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(source, target, idx)
    }

    pub fn identity(g: &FiniteGroup) -> Self {
        GroupHom { source: g.clone(), target: g.clone(), gen_images: g.gen_indices().to_vec(), images: (0..g.order()).collect() }
    }

    pub fn trivial(source: &FiniteGroup, target: &FiniteGroup) -> Self {
        Self::new(source, target, vec![0; source.ngens()]).expect("the trivial map is a homomorphism")
    }

    pub fn source(&self) -> &FiniteGroup {
        &self.source
    }

    pub fn target(&self) -> &FiniteGroup {
        &self.target
    }

    pub fn gen_images(&self) -> &[usize] {
        &self.gen_images
    }

    #[inline]
    pub fn apply(&self, e: usize) -> usize {
        self.images[e]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &GroupHom) -> Result<GroupHom> {
        if self.target != other.source {
            return Err(Error::GroupMismatch("composition of maps that do not meet".into()));
        }
        let gen_images = self.gen_images.iter().map(|&e| other.apply(e)).collect();
        Ok(GroupHom {
            source: self.source.clone(),
            target: other.target.clone(),
            gen_images,
            images: self.images.iter().map(|&e| other.apply(e)).collect(),
        })
    }

    pub fn kernel(&self) -> Vec<usize> {
        (0..self.source.order()).filter(|&e| self.images[e] == 0).collect()
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().len() == 1
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.target.order()];
        for &i in &self.images {
            hit[i] = true;
        }
        hit.into_iter().all(|h| h)
    }
}
