//! Equivariant chain maps between resolutions and the maps they induce on
//! homology and cohomology, including restriction and inflation.

use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::functors::{
    budget_from_env, check_feasible, hom_with_module, tensor_with_module, ChainComplexZ, GModule, ResolutionChoice,
};
use crate::groups::{quotient_group, FiniteGroup, GroupHom};
use crate::intlinalg::{kernel_mod, AbelianInvariants, DenseMatrix, IntMatrix, Lattice, Subquotient};
use crate::resolutions::{Resolution, ResolutionKind};
use crate::serial::{wrap, JsonInt};
use crate::{Int, Matrix, Word};

/// A family `A_k : X_k -> X'_k` of maps equivariant over `phi`, stored as
/// the image of every free generator of the source.
#[derive(Debug)]
pub struct EquivariantChainMap<'a> {
    phi: GroupHom,
    source: &'a Resolution,
    target: &'a Resolution,
    images: Vec<Vec<Word>>,
}

/// `Σ c g_e f_i ↦ Σ c φ(g_e) images[i]`.
fn transport(w: &Word, phi: &GroupHom, images: &[Word], rank: usize) -> Word {
    let g = phi.target();
    let mut acc = Vec::new();
    for (i, e, c) in w.terms() {
        let pe = phi.apply(*e);
        for (j, f, d) in images[*i].terms() {
            acc.push((*j, g.mul(pe, *f), c * d));
        }
    }
    Word::from_terms(rank, acc)
}

fn check_pair(source: &Resolution, target: &Resolution, phi: &GroupHom) -> Result<usize> {
    if phi.source() != source.group() || phi.target() != target.group() {
        return Err(Error::GroupMismatch("homomorphism does not match the resolutions' groups".into()));
    }
    Ok(source.max_degree().min(target.max_degree()))
}

impl<'a> EquivariantChainMap<'a> {
    pub fn phi(&self) -> &GroupHom {
        &self.phi
    }

    pub fn source(&self) -> &'a Resolution {
        self.source
    }

    pub fn target(&self) -> &'a Resolution {
        self.target
    }

    pub fn max_degree(&self) -> usize {
        self.images.len() - 1
    }

    /// Image of source generator `j` in degree `k`.
    pub fn image(&self, k: usize, j: usize) -> &Word {
        &self.images[k][j]
    }

    /// `A_k` applied to an arbitrary word of the source.
    pub fn apply(&self, k: usize, w: &Word) -> Word {
        transport(w, &self.phi, &self.images[k], self.target.rank(k))
    }

    /// Checks `ε' A_0 = ε` and `∂' A_k = A_(k-1) ∂` on every generator.
    pub fn verify(&self) -> Result<()> {
        for (j, w) in self.images[0].iter().enumerate() {
            if !w.augmentation().is_one() {
                return Err(Error::Precondition(format!("augmentation of A_0 on generator {} is {}", j + 1, w.augmentation())));
            }
        }
        for k in 1..=self.max_degree() {
            for j in 0..self.source.rank(k) {
                let lhs = self.target.boundary_of(k, &self.images[k][j])?;
                let rhs = self.apply(k - 1, self.source.boundary(k, j));
                if lhs != rhs {
                    return Err(Error::Precondition(format!(
                        "chain map fails to commute with the boundary on generator {} of degree {k}",
                        j + 1
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Lifts `phi` through the target's contracting homotopy:
/// `A_0 [.] = [.]`, `A_k f = D'(A_(k-1) ∂ f)`.
pub fn chain_map_lift<'a>(source: &'a Resolution, target: &'a Resolution, phi: &GroupHom) -> Result<EquivariantChainMap<'a>> {
    let top = check_pair(source, target, phi)?;
    if target.kind() != ResolutionKind::Bar {
        return Err(Error::Unsupported(format!("lifting into the {} resolution", target.kind())));
    }
    let mut images = vec![vec![target.homotopy_augmentation(&Int::one())?; source.rank(0)]];
    for k in 1..=top {
        let mut level = Vec::with_capacity(source.rank(k));
        for j in 0..source.rank(k) {
            let below = transport(source.boundary(k, j), phi, &images[k - 1], target.rank(k - 1));
            level.push(target.contracting_homotopy(k - 1, &below)?);
        }
        images.push(level);
    }
    Ok(EquivariantChainMap { phi: phi.clone(), source, target, images })
}

/// The direct cell map `[g1..gn] ↦ [φ g1..φ gn]` between two bar, two
/// normalized bar or two homogeneous resolutions.
pub fn bar_cell_map<'a>(source: &'a Resolution, target: &'a Resolution, phi: &GroupHom) -> Result<EquivariantChainMap<'a>> {
    let top = check_pair(source, target, phi)?;
    let kind = source.kind();
    if kind != target.kind() || kind == ResolutionKind::Cyclic {
        return Err(Error::Unsupported(format!("cell map from {} to {}", source.kind(), target.kind())));
    }
    let mut images = Vec::with_capacity(top + 1);
    for k in 0..=top {
        let rank = target.rank(k);
        let level = (0..source.rank(k))
            .map(|j| {
                let cell: Vec<usize> = source.cell(k, j).iter().map(|&g| phi.apply(g)).collect();
                match target.cell_index(&cell) {
                    Some(i) => Word::basis(rank, i, 0),
                    None => Word::zero(rank),
                }
            })
            .collect();
        images.push(level);
    }
    Ok(EquivariantChainMap { phi: phi.clone(), source, target, images })
}

/// Chain map between resolutions of the given kinds, by cell map when the
/// kinds agree and by lifting otherwise.
pub fn chain_map<'a>(source: &'a Resolution, target: &'a Resolution, phi: &GroupHom) -> Result<EquivariantChainMap<'a>> {
    if source.kind() == target.kind() && source.kind() != ResolutionKind::Cyclic {
        bar_cell_map(source, target, phi)
    } else {
        chain_map_lift(source, target, phi)
    }
}

/// `A_k ⊗ γ : X_k ⊗ A -> X'_k ⊗ A'`, where `γ : A -> A'` is equivariant over phi.
fn tensored_map(cm: &EquivariantChainMap, k: usize, a: &GModule, a_tgt: &GModule, gamma: &DenseMatrix<Int>) -> Matrix {
    let (r, s) = (a.rank(), a_tgt.rank());
    let g = cm.target.group();
    let rel = a_tgt.relations();
    let mut trip = Vec::new();
    for j in 0..cm.source.rank(k) {
        for (i, e, c) in cm.image(k, j).terms() {
            let m = a_tgt.action(g.inv(*e)).mul(gamma).expect("BigInt arithmetic cannot overflow");
            for p in 0..s {
                for q in 0..r {
                    let v = m.get(p, q);
                    if !v.is_zero() {
                        trip.push((i * s + p, j * r + q, c * v));
                    }
                }
            }
        }
    }
    reduce_triplets(cm.target.rank(k) * s, cm.source.rank(k) * r, trip, |i| &rel[i % s])
}

/// `f ↦ β ∘ f ∘ A_k : Hom_G'(X'_k, B) -> Hom_G(X_k, A)`, with `β : B -> A`.
fn cochain_map(cm: &EquivariantChainMap, k: usize, b: &GModule, a: &GModule, beta: &DenseMatrix<Int>) -> Matrix {
    let (r, s) = (a.rank(), b.rank());
    let rel = a.relations();
    let mut trip = Vec::new();
    for j in 0..cm.source.rank(k) {
        for (i, e, c) in cm.image(k, j).terms() {
            let m = beta.mul(b.action(*e)).expect("BigInt arithmetic cannot overflow");
            for p in 0..r {
                for q in 0..s {
                    let v = m.get(p, q);
                    if !v.is_zero() {
                        trip.push((j * r + p, i * s + q, c * v));
                    }
                }
            }
        }
    }
    reduce_triplets(cm.source.rank(k) * r, cm.target.rank(k) * s, trip, |i| &rel[i % r])
}

fn reduce_triplets<'r>(
    rows: usize,
    cols: usize,
    trip: Vec<(usize, usize, Int)>,
    rel: impl Fn(usize) -> &'r Int,
) -> Matrix {
    let summed = IntMatrix::from_triplets(rows, cols, trip);
    let reduced = summed.triplets().into_iter().filter_map(|(i, j, v)| {
        let m = rel(i);
        let v = if m.is_zero() { v } else { v.mod_floor(m) };
        (!v.is_zero()).then_some((i, j, v))
    });
    IntMatrix::from_triplets(rows, cols, reduced)
}

/// A homomorphism between two (co)homology groups, written on their
/// canonical generators: column `k` is the image of domain generator `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedMap {
    pub degree: usize,
    /// Orders of the domain generators (0 = infinite order).
    pub domain_orders: Vec<Int>,
    pub codomain_orders: Vec<Int>,
    pub matrix: DenseMatrix<Int>,
}

impl InducedMap {
    /// Pushes the subquotient generators of the domain through `m`.
    pub fn from_chain_level(degree: usize, domain: &Subquotient, codomain: &Subquotient, m: &Matrix) -> Result<Self> {
        let mut matrix = DenseMatrix::zeros(codomain.ngens(), domain.ngens());
        for k in 0..domain.ngens() {
            let img = m.mul_vec(&domain.generator(k));
            for (i, v) in codomain.coordinates(&img)?.into_iter().enumerate() {
                matrix.set(i, k, v);
            }
        }
        let out = InducedMap {
            degree,
            domain_orders: domain.orders().to_vec(),
            codomain_orders: codomain.orders().to_vec(),
            matrix,
        };
        if !out.is_well_defined() {
            return Err(Error::Precondition("induced matrix does not respect the relations".into()));
        }
        Ok(out)
    }

    pub fn domain(&self) -> AbelianInvariants {
        AbelianInvariants::new(0, self.domain_orders.clone())
    }

    pub fn codomain(&self) -> AbelianInvariants {
        AbelianInvariants::new(0, self.codomain_orders.clone())
    }

    fn reduce(&self, i: usize, v: Int) -> Int {
        let m = &self.codomain_orders[i];
        if m.is_zero() {
            v
        } else {
            v.mod_floor(m)
        }
    }

    /// Each domain relation `d_k e_k` maps into the codomain relations.
    pub fn is_well_defined(&self) -> bool {
        (0..self.domain_orders.len()).all(|k| {
            (0..self.codomain_orders.len()).all(|i| self.reduce(i, self.matrix.get(i, k) * &self.domain_orders[k]).is_zero())
        })
    }

    fn relation_vectors(orders: &[Int]) -> Vec<Vec<Int>> {
        (0..orders.len())
            .filter(|&i| !orders[i].is_zero())
            .map(|i| {
                let mut v = vec![Int::zero(); orders.len()];
                v[i] = orders[i].clone();
                v
            })
            .collect()
    }

    /// The image plus the codomain relations, as a lattice in codomain coordinates.
    pub fn image_lattice(&self) -> Lattice {
        let mut gens: Vec<Vec<Int>> = (0..self.matrix.ncols()).map(|k| self.matrix.column(k)).collect();
        gens.extend(Self::relation_vectors(&self.codomain_orders));
        Lattice::new(self.codomain_orders.len(), &gens).expect("consistent dimensions")
    }

    /// Preimage of the codomain relations, as a lattice in domain coordinates.
    pub fn kernel_lattice(&self) -> Lattice {
        let a = IntMatrix::from_rows(self.matrix.to_rows());
        let a = if self.codomain_orders.is_empty() { IntMatrix::zeros(0, self.domain_orders.len()) } else { a };
        let gens = kernel_mod(&a, &self.codomain_orders);
        Lattice::new(self.domain_orders.len(), &gens).expect("consistent dimensions")
    }

    pub fn image(&self) -> AbelianInvariants {
        let rels = Self::relation_vectors(&self.codomain_orders);
        let mut gens: Vec<Vec<Int>> = (0..self.matrix.ncols()).map(|k| self.matrix.column(k)).collect();
        gens.extend(rels.iter().cloned());
        Subquotient::new(self.codomain_orders.len(), &gens, &rels).expect("relations lie in the image lattice").invariants()
    }

    pub fn kernel(&self) -> AbelianInvariants {
        let gens = self.kernel_lattice().basis().to_vec();
        let rels = Self::relation_vectors(&self.domain_orders);
        Subquotient::new(self.domain_orders.len(), &gens, &rels).expect("well-defined map").invariants()
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().is_trivial()
    }

    pub fn is_surjective(&self) -> bool {
        let img = self.image_lattice();
        (0..self.codomain_orders.len()).all(|i| {
            let mut e = vec![Int::zero(); self.codomain_orders.len()];
            e[i] = Int::one();
            img.contains(&e)
        })
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    pub fn is_zero(&self) -> bool {
        (0..self.matrix.nrows()).all(|i| (0..self.matrix.ncols()).all(|k| self.reduce(i, self.matrix.get(i, k).clone()).is_zero()))
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &InducedMap) -> Result<InducedMap> {
        if self.codomain_orders != next.domain_orders {
            return Err(Error::DimensionMismatch("codomain and domain of composed maps differ".into()));
        }
        let prod = next.matrix.mul(&self.matrix).expect("BigInt arithmetic cannot overflow");
        let mut out = InducedMap {
            degree: next.degree,
            domain_orders: self.domain_orders.clone(),
            codomain_orders: next.codomain_orders.clone(),
            matrix: prod,
        };
        for i in 0..out.matrix.nrows() {
            for k in 0..out.matrix.ncols() {
                let v = out.reduce(i, out.matrix.get(i, k).clone());
                out.matrix.set(i, k, v);
            }
        }
        Ok(out)
    }

    pub fn to_json(&self) -> InducedMapJson {
        InducedMapJson {
            degree: self.degree,
            domain: self.domain(),
            codomain: self.codomain(),
            domain_orders: wrap(&self.domain_orders),
            codomain_orders: wrap(&self.codomain_orders),
            matrix: self.matrix.to_rows().iter().map(|r| wrap(r)).collect(),
            image: self.image(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InducedMapJson {
    pub degree: usize,
    pub domain: AbelianInvariants,
    pub codomain: AbelianInvariants,
    pub domain_orders: Vec<JsonInt>,
    pub codomain_orders: Vec<JsonInt>,
    pub matrix: Vec<Vec<JsonInt>>,
    pub image: AbelianInvariants,
}

/// Whether two lattices of the same ambient space coincide.
pub fn same_lattice(a: &Lattice, b: &Lattice) -> bool {
    a.ambient() == b.ambient() && a.basis().iter().all(|v| b.contains(v)) && b.basis().iter().all(|v| a.contains(v))
}

fn need(cm: &EquivariantChainMap, n: usize) -> Result<()> {
    if n + 1 > cm.max_degree() {
        return Err(Error::IndexOutOfRange(format!("degree {n} needs the chain map through degree {}", n + 1)));
    }
    Ok(())
}

/// `H_n(phi) : H_n(G, A|_G) -> H_n(G', A)` for a `G'`-module `A`.
pub fn induced_homology_map(cm: &EquivariantChainMap, n: usize, a: &GModule) -> Result<InducedMap> {
    need(cm, n)?;
    let a_src = a.restrict(cm.phi())?;
    let src = tensor_with_module(cm.source(), &a_src, n + 1)?;
    let tgt = tensor_with_module(cm.target(), a, n + 1)?;
    let m = tensored_map(cm, n, &a_src, a, &DenseMatrix::identity(a.rank()));
    InducedMap::from_chain_level(n, &src.subquotient(n)?, &tgt.subquotient(n)?, &m)
}

/// `H^n(phi) : H^n(G', B) -> H^n(G, A)` induced by the chain map and an
/// equivariant coefficient map `β : B -> A` (columns of `beta`).
pub fn induced_cohomology_map(
    cm: &EquivariantChainMap,
    n: usize,
    b: &GModule,
    a: &GModule,
    beta: &DenseMatrix<Int>,
) -> Result<InducedMap> {
    need(cm, n)?;
    if b.group() != cm.target().group() || a.group() != cm.source().group() {
        return Err(Error::GroupMismatch("coefficient modules do not match the chain map".into()));
    }
    let tgt: ChainComplexZ = hom_with_module(cm.target(), b, n + 1)?;
    let src = hom_with_module(cm.source(), a, n + 1)?;
    let m = cochain_map(cm, n, b, a, beta);
    InducedMap::from_chain_level(n, &tgt.subquotient(n)?, &src.subquotient(n)?, &m)
}

/// Functorial maps need matching cell structures, so `Auto` means normalized bar.
fn kind_for(choice: ResolutionChoice) -> ResolutionKind {
    match choice {
        ResolutionChoice::Auto => ResolutionKind::NormalizedBar,
        ResolutionChoice::Kind(k) => k,
    }
}

/// `Res : H^n(G, A) -> H^n(H, A)` along an injective `incl : H -> G`.
pub fn restriction_map(incl: &GroupHom, a: &GModule, n: usize, kind: ResolutionChoice) -> Result<InducedMap> {
    if !incl.is_injective() {
        return Err(Error::NotSubgroup("restriction needs an injective inclusion".into()));
    }
    let (h, g) = (incl.source(), incl.target());
    let kind = kind_for(kind);
    let budget = budget_from_env();
    check_feasible(kind, g, n + 1, a.rank(), budget)?;
    let rg = Resolution::new(g, kind, n + 1)?;
    let rh = Resolution::new(h, kind, n + 1)?;
    let cm = chain_map(&rh, &rg, incl)?;
    let a_h = a.restrict(incl)?;
    induced_cohomology_map(&cm, n, a, &a_h, &DenseMatrix::identity(a.rank()))
}

/// `Inf : H^n(G/N, A^N) -> H^n(G, A)` for a normal subgroup `N` given by its elements.
pub fn inflation_map(g: &FiniteGroup, normal: &[usize], a: &GModule, n: usize, kind: ResolutionChoice) -> Result<InducedMap> {
    let (q, proj) = quotient_group(g, normal)?;
    let fixed = a.fixed_points(normal)?;
    let b = fixed.over_quotient(&proj)?;
    let kind = kind_for(kind);
    let budget = budget_from_env();
    check_feasible(kind, g, n + 1, a.rank(), budget)?;
    let rg = Resolution::new(g, kind, n + 1)?;
    let rq = Resolution::new(&q, kind, n + 1)?;
    let cm = chain_map(&rg, &rq, &proj)?;
    induced_cohomology_map(&cm, n, &b, a, &fixed.inclusion)
}
