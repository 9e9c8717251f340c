//! Coefficient modules and the two functors applied to a resolution:
//! `X ⊗_{Z[G]} A` for homology and `Hom_G(X, A)` for cohomology.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groups::{FiniteGroup, GroupHom};
use crate::intlinalg::{
    homology_subquotient, homology_with_relations, kernel_mod, rank_mod_p, AbelianInvariants, DenseMatrix,
    IntMatrix, SparseMatrix, Subquotient,
};
use crate::resolutions::{Resolution, ResolutionKind};
use crate::serial::JsonInt;
use crate::{Int, Matrix};

/// Default ceiling on the nonzero entries of any single tensored matrix.
pub const DEFAULT_BUDGET: u128 = 50_000_000;

/// The budget from `HOMOCALC_BUDGET`, or the default.
pub fn budget_from_env() -> u128 {
    std::env::var("HOMOCALC_BUDGET").ok().and_then(|v| v.trim().parse().ok()).unwrap_or(DEFAULT_BUDGET)
}

/// A finitely generated `G`-module `Z^r / diag(m)`, with `G` acting by
/// integer matrices on column vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GModule {
    group: FiniteGroup,
    relations: Vec<Int>,
    gen_action: Vec<DenseMatrix<Int>>,
    elt_action: Vec<DenseMatrix<Int>>,
    label: String,
}

fn reduce_entry(v: &Int, m: &Int) -> Int {
    if m.is_zero() {
        v.clone()
    } else {
        v.mod_floor(m)
    }
}

fn reduce_rows(a: &DenseMatrix<Int>, rel: &[Int]) -> DenseMatrix<Int> {
    let mut out = a.clone();
    for i in 0..a.nrows() {
        for j in 0..a.ncols() {
            out.set(i, j, reduce_entry(a.get(i, j), &rel[i]));
        }
    }
    out
}

fn mat_mul(a: &DenseMatrix<Int>, b: &DenseMatrix<Int>) -> DenseMatrix<Int> {
    a.mul(b).expect("BigInt arithmetic cannot overflow")
}

impl GModule {
    /// Validates that the generator matrices respect the relations and
    /// extend to a homomorphism into the automorphisms of `A`.
    pub fn new(group: &FiniteGroup, relations: Vec<Int>, gen_action: Vec<DenseMatrix<Int>>, label: impl Into<String>) -> Result<Self> {
        let r = relations.len();
        if gen_action.len() != group.ngens() {
            return Err(Error::InvalidModule(format!("{} action matrices for {} generators", gen_action.len(), group.ngens())));
        }
        if relations.iter().any(|m| m < &Int::zero()) {
            return Err(Error::InvalidModule("relations must be nonnegative".into()));
        }
        for (s, m) in gen_action.iter().enumerate() {
            if m.nrows() != r || m.ncols() != r {
                return Err(Error::InvalidModule(format!("action of generator {} is not {r}x{r}", s + 1)));
            }
            for j in 0..r {
                for i in 0..r {
                    let v = m.get(i, j) * &relations[j];
                    if !reduce_entry(&v, &relations[i]).is_zero() {
                        return Err(Error::InvalidModule(format!(
                            "generator {} does not preserve the relation on coordinate {}",
                            s + 1,
                            j + 1
                        )));
                    }
                }
            }
        }
        let gen_action: Vec<DenseMatrix<Int>> = gen_action.iter().map(|m| reduce_rows(m, &relations)).collect();
        let mut elt_action = vec![DenseMatrix::identity(r); group.order()];
        for e in 1..group.order() {
            let (p, s) = group.parent(e).expect("non-identity");
            elt_action[e] = reduce_rows(&mat_mul(&elt_action[p], &gen_action[s]), &relations);
        }
        for x in 0..group.order() {
            for (s, &gs) in group.gen_indices().iter().enumerate() {
                let lhs = &elt_action[group.mul(x, gs)];
                let rhs = reduce_rows(&mat_mul(&elt_action[x], &gen_action[s]), &relations);
                if *lhs != rhs {
                    return Err(Error::InvalidModule(format!(
                        "the action is not a homomorphism at {} * {}",
                        group.element(x),
                        group.element(gs)
                    )));
                }
            }
        }
        Ok(GModule { group: group.clone(), relations, gen_action, elt_action, label: label.into() })
    }

    /// `(Z/m)^r` with trivial action; `m = 0` gives `Z^r`.
    pub fn trivial_power(group: &FiniteGroup, m: u64, r: usize) -> Self {
        let label = match (m, r) {
            (0, 1) => "Z".to_string(),
            (0, _) => format!("Z^{r}"),
            (_, 1) => format!("Z/{m}"),
            _ => format!("Z/{m}^{r}"),
        };
        GModule::new(group, vec![Int::from(m); r], vec![DenseMatrix::identity(r); group.ngens()], label)
            .expect("trivial modules are valid")
    }

    pub fn integers(group: &FiniteGroup) -> Self {
        Self::trivial_power(group, 0, 1)
    }

    pub fn trivial(group: &FiniteGroup, m: u64) -> Self {
        Self::trivial_power(group, m, 1)
    }

    pub fn zero(group: &FiniteGroup) -> Self {
        GModule::new(group, Vec::new(), vec![DenseMatrix::zeros(0, 0); group.ngens()], "0").expect("zero module")
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn rank(&self) -> usize {
        self.relations.len()
    }

    pub fn relations(&self) -> &[Int] {
        &self.relations
    }

    pub fn action(&self, e: usize) -> &DenseMatrix<Int> {
        &self.elt_action[e]
    }

    pub fn gen_action(&self, s: usize) -> &DenseMatrix<Int> {
        &self.gen_action[s]
    }

    pub fn is_trivial_action(&self) -> bool {
        let id = DenseMatrix::identity(self.rank());
        self.gen_action.iter().all(|m| *m == reduce_rows(&id, &self.relations))
    }

    /// The abelian group `A` itself.
    pub fn invariants(&self) -> AbelianInvariants {
        AbelianInvariants::new(0, self.relations.clone())
    }

    pub fn direct_sum(&self, other: &GModule) -> Result<GModule> {
        if self.group != other.group {
            return Err(Error::GroupMismatch("direct sum of modules over different groups".into()));
        }
        let (a, b) = (self.rank(), other.rank());
        let mut relations = self.relations.clone();
        relations.extend(other.relations.iter().cloned());
        let gen_action = (0..self.group.ngens())
            .map(|s| {
                let mut m = DenseMatrix::zeros(a + b, a + b);
                for i in 0..a {
                    for j in 0..a {
                        m.set(i, j, self.gen_action[s].get(i, j).clone());
                    }
                }
                for i in 0..b {
                    for j in 0..b {
                        m.set(a + i, a + j, other.gen_action[s].get(i, j).clone());
                    }
                }
                m
            })
            .collect();
        GModule::new(&self.group, relations, gen_action, format!("{}+{}", self.label, other.label))
    }

    /// Pullback along `phi: H -> G`.
    pub fn restrict(&self, phi: &GroupHom) -> Result<GModule> {
        if *phi.target() != self.group {
            return Err(Error::GroupMismatch("module and homomorphism target differ".into()));
        }
        let h = phi.source();
        let gen_action = (0..h.ngens()).map(|s| self.elt_action[phi.gen_images()[s]].clone()).collect();
        GModule::new(h, self.relations.clone(), gen_action, self.label.clone())
    }

    /// `A^N` for a normal subgroup `N` (given by its elements), presented on
    /// its own generators, with the inclusion into `A`.
    pub fn fixed_points(&self, normal: &[usize]) -> Result<FixedPoints> {
        let r = self.rank();
        // rows (ρ(n) - 1) for n in N, each read modulo the relation of its coordinate
        let mut trip = Vec::new();
        let mut moduli = Vec::new();
        for (k, &n) in normal.iter().enumerate() {
            let m = self.action(n);
            for i in 0..r {
                for j in 0..r {
                    let mut v = m.get(i, j).clone();
                    if i == j {
                        v -= 1;
                    }
                    if !v.is_zero() {
                        trip.push((k * r + i, j, v));
                    }
                }
                moduli.push(self.relations[i].clone());
            }
        }
        let a = IntMatrix::from_triplets(normal.len() * r, r, trip);
        let lattice = kernel_mod(&a, &moduli);
        let rels: Vec<Vec<Int>> = (0..r)
            .filter(|&i| !self.relations[i].is_zero())
            .map(|i| {
                let mut v = vec![Int::zero(); r];
                v[i] = self.relations[i].clone();
                v
            })
            .collect();
        let sq = Subquotient::new(r, &lattice, &rels)?;
        let s = sq.ngens();
        let mut inclusion = DenseMatrix::zeros(r, s);
        let gens: Vec<Vec<Int>> = (0..s).map(|k| sq.generator(k)).collect();
        for (k, g) in gens.iter().enumerate() {
            for i in 0..r {
                inclusion.set(i, k, reduce_entry(&g[i], &self.relations[i]));
            }
        }
        let act = |e: usize| -> Result<DenseMatrix<Int>> {
            let mut m = DenseMatrix::zeros(s, s);
            for (k, g) in gens.iter().enumerate() {
                let img = self.action(e).mul_vec(g).expect("BigInt arithmetic cannot overflow");
                let c = sq.coordinates(&img)?;
                for (i, v) in c.into_iter().enumerate() {
                    m.set(i, k, v);
                }
            }
            Ok(m)
        };
        let gen_action = self.group.gen_indices().iter().map(|&g| act(g)).collect::<Result<Vec<_>>>()?;
        let module = GModule::new(&self.group, sq.orders().to_vec(), gen_action, format!("{}^N", self.label))?;
        Ok(FixedPoints { module, inclusion })
    }
}

/// `A^N` as a `G`-module together with its inclusion `β : A^N -> A`.
#[derive(Clone, Debug)]
pub struct FixedPoints {
    pub module: GModule,
    /// `r x s` matrix whose columns are the generators of `A^N` in `A`.
    pub inclusion: DenseMatrix<Int>,
}

impl FixedPoints {
    /// The same module regarded over `G/N`, via the projection.
    pub fn over_quotient(&self, proj: &GroupHom) -> Result<GModule> {
        let q = proj.target();
        let g = proj.source();
        if *g != self.module.group {
            return Err(Error::GroupMismatch("projection source differs from the module group".into()));
        }
        let mut preimage = vec![usize::MAX; q.order()];
        for e in (0..g.order()).rev() {
            preimage[proj.apply(e)] = e;
        }
        let gen_action = q.gen_indices().iter().map(|&t| self.module.action(preimage[t]).clone()).collect();
        GModule::new(q, self.module.relations.clone(), gen_action, self.module.label.clone())
    }
}

/// Coefficient specification `Z`, `Z/m` or `Z/m^r` (trivial action).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Coefficients {
    Integers,
    Cyclic(u64),
    CyclicPower(u64, usize),
}

impl Coefficients {
    pub fn module(&self, g: &FiniteGroup) -> GModule {
        match *self {
            Coefficients::Integers => GModule::integers(g),
            Coefficients::Cyclic(m) => GModule::trivial(g, m),
            Coefficients::CyclicPower(m, r) => GModule::trivial_power(g, m, r),
        }
    }
}

impl FromStr for Coefficients {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let t = t.strip_prefix('ℤ').map(|r| format!("Z{r}")).unwrap_or_else(|| t.to_string());
        let bad = |pos: usize, msg: &str| Error::Parse { pos, msg: msg.to_string() };
        let Some(rest) = t.strip_prefix('Z') else {
            return Err(bad(0, "coefficients start with Z"));
        };
        if rest.is_empty() {
            return Ok(Coefficients::Integers);
        }
        let Some(rest) = rest.strip_prefix('/') else {
            return Err(bad(1, "expected '/'"));
        };
        let (m, r) = match rest.split_once('^') {
            Some((m, r)) => (m, Some(r)),
            None => (rest, None),
        };
        let m: u64 = m.parse().map_err(|_| bad(2, "expected a modulus"))?;
        if m == 0 {
            return Err(bad(2, "modulus must be positive"));
        }
        match r {
            None => Ok(Coefficients::Cyclic(m)),
            Some(r) => {
                let r: usize = r.parse().map_err(|_| bad(3 + m.to_string().len(), "expected an exponent"))?;
                if r == 0 {
                    return Err(bad(3 + m.to_string().len(), "exponent must be positive"));
                }
                Ok(if r == 1 { Coefficients::Cyclic(m) } else { Coefficients::CyclicPower(m, r) })
            }
        }
    }
}

impl fmt::Display for Coefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficients::Integers => write!(f, "Z"),
            Coefficients::Cyclic(m) => write!(f, "Z/{m}"),
            Coefficients::CyclicPower(m, r) => write!(f, "Z/{m}^{r}"),
        }
    }
}

/// Which resolution to use; `Auto` picks the cyclic one for cyclic groups
/// and the normalized bar resolution otherwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ResolutionChoice {
    #[default]
    Auto,
    Kind(ResolutionKind),
}

impl ResolutionChoice {
    pub fn resolve(self, g: &FiniteGroup) -> ResolutionKind {
        match self {
            ResolutionChoice::Kind(k) => k,
            ResolutionChoice::Auto if g.is_cyclic() => ResolutionKind::Cyclic,
            ResolutionChoice::Auto => ResolutionKind::NormalizedBar,
        }
    }
}

impl From<ResolutionKind> for ResolutionChoice {
    fn from(k: ResolutionKind) -> Self {
        ResolutionChoice::Kind(k)
    }
}

impl FromStr for ResolutionChoice {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        if s == "auto" {
            Ok(ResolutionChoice::Auto)
        } else {
            s.parse().map(ResolutionChoice::Kind)
        }
    }
}

/// A complex of presented groups `Z^r / diag(m)`.
///
/// Chain complexes store `maps[k] = ∂_k : C_k -> C_(k-1)`; cochain complexes
/// store `maps[k] = δ^k : C^(k-1) -> C^k`. `maps[0]` is the zero map from or
/// to the zero group.
#[derive(Clone, Debug)]
pub struct ChainComplexZ {
    pub cochain: bool,
    pub relations: Vec<Vec<Int>>,
    pub maps: Vec<Matrix>,
}

impl ChainComplexZ {
    pub fn top_degree(&self) -> usize {
        self.relations.len() - 1
    }

    pub fn dim(&self, k: usize) -> usize {
        self.relations[k].len()
    }

    /// `(out, in, rel_here, rel_out)` for the (co)homology at `n`.
    fn pair(&self, n: usize) -> Result<(&Matrix, &Matrix, &[Int], &[Int])> {
        if n + 1 > self.top_degree() {
            return Err(Error::IndexOutOfRange(format!("degree {n} needs the complex through degree {}", n + 1)));
        }
        if self.cochain {
            Ok((&self.maps[n + 1], &self.maps[n], &self.relations[n], &self.relations[n + 1]))
        } else {
            let prev: &[Int] = if n == 0 { &[] } else { &self.relations[n - 1] };
            Ok((&self.maps[n], &self.maps[n + 1], &self.relations[n], prev))
        }
    }

    pub fn homology(&self, n: usize) -> Result<AbelianInvariants> {
        let (out, inc, here, there) = self.pair(n)?;
        homology_with_relations(out, inc, here, there)
    }

    /// Cycles modulo boundaries at `n`, with explicit generators.
    pub fn subquotient(&self, n: usize) -> Result<Subquotient> {
        let (out, inc, here, there) = self.pair(n)?;
        homology_subquotient(out, inc, here, there)
    }

    /// Whether consecutive maps compose to zero modulo the relations.
    pub fn is_complex(&self) -> Result<bool> {
        for k in 1..self.maps.len() - 1 {
            let (first, second, rel) = if self.cochain {
                (&self.maps[k], &self.maps[k + 1], &self.relations[k + 1])
            } else {
                (&self.maps[k + 1], &self.maps[k], &self.relations[k - 1])
            };
            let prod = second.mul(first)?;
            if prod.triplets().iter().any(|(i, _, v)| !reduce_entry(v, &rel[*i]).is_zero()) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Upper bound on the nonzeros of the tensored degree-`k` map.
pub fn estimated_nonzeros(kind: ResolutionKind, order: usize, k: usize, module_rank: usize) -> Option<u128> {
    if k == 0 {
        return Some(0);
    }
    let rank = kind.rank_for(order, k)? as u128;
    let terms = match kind {
        ResolutionKind::Cyclic if k % 2 == 0 => order as u128,
        ResolutionKind::Cyclic => 2,
        _ => k as u128 + 1,
    };
    let r = module_rank as u128;
    Some(rank * terms * r.max(1) * r.max(1))
}

/// Refuses when some map through degree `top` would exceed the budget.
pub fn check_feasible(kind: ResolutionKind, g: &FiniteGroup, top: usize, module_rank: usize, budget: u128) -> Result<()> {
    for k in 1..=top {
        let rank = kind.rank_for(g.order(), k);
        let nnz = estimated_nonzeros(kind, g.order(), k, module_rank);
        match (rank, nnz) {
            (Some(_), Some(n)) if n <= budget => {}
            _ => {
                return Err(Error::Infeasible {
                    degree: k,
                    rank: rank.unwrap_or(usize::MAX),
                    nonzeros: nnz.unwrap_or(u128::MAX),
                    budget,
                })
            }
        }
    }
    Ok(())
}

/// Assembles a block matrix column by column: `blocks(j)` yields
/// `(row_block, r x r block)` contributions to column block `j`.
fn assemble(
    rows: usize,
    ncol_blocks: usize,
    r: usize,
    rel: &[Int],
    mut blocks: impl FnMut(usize, &mut Vec<(usize, usize, Int)>),
) -> Matrix {
    let mut columns: Vec<Vec<(usize, Int)>> = Vec::with_capacity(ncol_blocks * r);
    let mut buf = Vec::new();
    for jb in 0..ncol_blocks {
        buf.clear();
        blocks(jb, &mut buf);
        // buf holds (row, col_within_block, value)
        let mut per: Vec<Vec<(usize, Int)>> = vec![Vec::new(); r];
        for (i, c, v) in buf.drain(..) {
            per[c].push((i, v));
        }
        for mut col in per {
            col.sort_by_key(|e| e.0);
            let mut merged: Vec<(usize, Int)> = Vec::with_capacity(col.len());
            for (i, v) in col {
                match merged.last_mut() {
                    Some(last) if last.0 == i => last.1 += v,
                    _ => merged.push((i, v)),
                }
            }
            let merged = merged
                .into_iter()
                .map(|(i, v)| (i, reduce_entry(&v, &rel[i])))
                .filter(|(_, v)| !v.is_zero())
                .collect();
            columns.push(merged);
        }
    }
    IntMatrix::choose_layout(SparseMatrix::from_columns(rows, columns))
}

fn tile(rel: &[Int], times: usize) -> Vec<Int> {
    let mut out = Vec::with_capacity(rel.len() * times);
    for _ in 0..times {
        out.extend(rel.iter().cloned());
    }
    out
}

fn check_degree(r: &Resolution, k: usize) -> Result<()> {
    if k > r.max_degree() {
        return Err(Error::IndexOutOfRange(format!("degree {k} beyond the resolution's {}", r.max_degree())));
    }
    Ok(())
}

/// `X ⊗_{Z[G]} Z`: group elements are erased.
pub fn tensor_with_integers(r: &Resolution, k: usize) -> Result<ChainComplexZ> {
    check_degree(r, k)?;
    let relations: Vec<Vec<Int>> = (0..=k).map(|d| vec![Int::zero(); r.rank(d)]).collect();
    let mut maps = vec![IntMatrix::zeros(0, r.rank(0))];
    for d in 1..=k {
        let rows = r.rank(d - 1);
        let rel = &relations[d - 1];
        maps.push(assemble(rows, r.rank(d), 1, rel, |j, buf| {
            for (i, c) in r.boundary_uncached(d, j).erase() {
                buf.push((i, 0, c));
            }
        }));
    }
    Ok(ChainComplexZ { cochain: false, relations, maps })
}

fn check_group(r: &Resolution, a: &GModule) -> Result<()> {
    if r.group() != a.group() {
        return Err(Error::GroupMismatch(format!("resolution of {} with a module over {}", r.group().name(), a.group().name())));
    }
    Ok(())
}

/// `X ⊗_{Z[G]} A` with `x g ⊗ a = x ⊗ g a`; the word term `c g_e f_i`
/// contributes `c ρ(g_e^-1)` to block `(i, j)`.
pub fn tensor_with_module(r: &Resolution, a: &GModule, k: usize) -> Result<ChainComplexZ> {
    check_degree(r, k)?;
    check_group(r, a)?;
    let ar = a.rank();
    let g = r.group();
    let relations: Vec<Vec<Int>> = (0..=k).map(|d| tile(a.relations(), r.rank(d))).collect();
    let mut maps = vec![IntMatrix::zeros(0, r.rank(0) * ar)];
    for d in 1..=k {
        let rows = r.rank(d - 1) * ar;
        let rel = &relations[d - 1];
        maps.push(assemble(rows, r.rank(d), ar, rel, |j, buf| {
            for (i, e, c) in r.boundary_uncached(d, j).terms() {
                let m = a.action(g.inv(*e));
                for p in 0..ar {
                    for q in 0..ar {
                        let v = m.get(p, q);
                        if !v.is_zero() {
                            buf.push((i * ar + p, q, c * v));
                        }
                    }
                }
            }
        }));
    }
    Ok(ChainComplexZ { cochain: false, relations, maps })
}

/// `Hom_G(X, A)`: a cochain is the list of images of the free generators;
/// the word term `c g_e f_i` of `∂ f_j` contributes `c ρ(g_e)` to block `(j, i)`.
pub fn hom_with_module(r: &Resolution, a: &GModule, k: usize) -> Result<ChainComplexZ> {
    check_degree(r, k)?;
    check_group(r, a)?;
    let ar = a.rank();
    let relations: Vec<Vec<Int>> = (0..=k).map(|d| tile(a.relations(), r.rank(d))).collect();
    let mut maps = vec![IntMatrix::zeros(r.rank(0) * ar, 0)];
    for d in 1..=k {
        // δ^d : C^(d-1) -> C^d, built row block by row block then transposed
        let rows = r.rank(d - 1) * ar;
        let zero_rel = vec![Int::zero(); rows];
        let t = assemble(rows, r.rank(d), ar, &zero_rel, |j, buf| {
            for (i, e, c) in r.boundary_uncached(d, j).terms() {
                let m = a.action(*e);
                for p in 0..ar {
                    for q in 0..ar {
                        let v = m.get(p, q);
                        if !v.is_zero() {
                            // entry (row j*ar+p, col i*ar+q) of δ, stored transposed
                            buf.push((i * ar + q, p, c * v));
                        }
                    }
                }
            }
        });
        let rel = &relations[d];
        let trip = t
            .transpose()
            .triplets()
            .into_iter()
            .map(|(i, j, v)| (i, j, reduce_entry(&v, &rel[i])))
            .filter(|(_, _, v)| !v.is_zero());
        maps.push(IntMatrix::from_triplets(r.rank(d) * ar, rows, trip));
    }
    Ok(ChainComplexZ { cochain: true, relations, maps })
}

/// `H_n(G, A)`, with the budget read from the environment.
pub fn group_homology(g: &FiniteGroup, n: usize, a: &GModule, kind: ResolutionChoice) -> Result<AbelianInvariants> {
    group_homology_with(g, n, a, kind, budget_from_env())
}

pub fn group_homology_with(
    g: &FiniteGroup,
    n: usize,
    a: &GModule,
    kind: ResolutionChoice,
    budget: u128,
) -> Result<AbelianInvariants> {
    let kind = kind.resolve(g);
    check_feasible(kind, g, n + 1, a.rank(), budget)?;
    let r = Resolution::new(g, kind, n + 1)?;
    if a.rank() == 1 && a.relations()[0].is_zero() && a.is_trivial_action() {
        return tensor_with_integers(&r, n + 1)?.homology(n);
    }
    tensor_with_module(&r, a, n + 1)?.homology(n)
}

/// `H^n(G, A)`, with the budget read from the environment.
pub fn group_cohomology(g: &FiniteGroup, n: usize, a: &GModule, kind: ResolutionChoice) -> Result<AbelianInvariants> {
    group_cohomology_with(g, n, a, kind, budget_from_env())
}

pub fn group_cohomology_with(
    g: &FiniteGroup,
    n: usize,
    a: &GModule,
    kind: ResolutionChoice,
    budget: u128,
) -> Result<AbelianInvariants> {
    let kind = kind.resolve(g);
    check_feasible(kind, g, n + 1, a.rank(), budget)?;
    let r = Resolution::new(g, kind, n + 1)?;
    hom_with_module(&r, a, n + 1)?.homology(n)
}

/// `H_2(G, Z)`.
pub fn schur_multiplier(g: &FiniteGroup) -> Result<AbelianInvariants> {
    group_homology(g, 2, &GModule::integers(g), ResolutionChoice::Auto)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PoincareDims {
    pub group: String,
    pub prime: u64,
    /// `dims[k-1] = dim H_k(G, Z/p)`.
    pub dims: Vec<usize>,
    pub requested: usize,
    pub complete: bool,
    /// Why the sequence stops early, if it does.
    pub stopped: Option<String>,
}

/// `dim_{GF(p)} H_k(G, Z/p)` for `k = 1..count`, via ranks modulo `p`.
pub fn poincare_dims(g: &FiniteGroup, p: u64, count: usize) -> Result<PoincareDims> {
    poincare_dims_with(g, p, count, ResolutionChoice::Auto, budget_from_env())
}

pub fn poincare_dims_with(
    g: &FiniteGroup,
    p: u64,
    count: usize,
    kind: ResolutionChoice,
    budget: u128,
) -> Result<PoincareDims> {
    if !crate::intlinalg::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let kind = kind.resolve(g);
    // the largest degree whose map fits the budget
    let mut top = 0;
    let mut stopped = None;
    for k in 1..=count + 1 {
        match check_feasible(kind, g, k, 1, budget) {
            Ok(()) => top = k,
            Err(e) => {
                stopped = Some(e.to_string());
                break;
            }
        }
    }
    let mut dims = Vec::new();
    if top >= 1 {
        let r = Resolution::new(g, kind, top)?;
        let c = tensor_with_integers(&r, top)?;
        let ranks: Vec<usize> = (0..=top).map(|k| rank_mod_p(&c.maps[k], p)).collect::<Result<_>>()?;
        for k in 1..top.min(count + 1) {
            dims.push(c.dim(k) - ranks[k] - ranks[k + 1]);
        }
    }
    Ok(PoincareDims {
        group: g.name(),
        prime: p,
        complete: dims.len() == count,
        dims,
        requested: count,
        stopped,
    })
}

/// Machine-readable (co)homology result.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyRecord {
    pub group: String,
    pub degree: usize,
    pub coefficients: String,
    pub resolution: String,
    pub invariants: AbelianInvariants,
    pub primary: Vec<JsonInt>,
}

impl HomologyRecord {
    pub fn new(g: &FiniteGroup, degree: usize, coefficients: &str, kind: ResolutionKind, inv: AbelianInvariants) -> Self {
        HomologyRecord {
            group: g.name(),
            degree,
            coefficients: coefficients.to_string(),
            resolution: kind.short_name().to_string(),
            primary: crate::serial::wrap(&inv.primary()),
            invariants: inv,
        }
    }
}

/// Exponent of a finite invariant list, for law checks.
pub fn torsion_divides(inv: &AbelianInvariants, order: usize) -> bool {
    inv.torsion.iter().all(|t| t.to_u64().is_some_and(|t| order as u64 % t == 0)) && !inv.torsion.iter().any(One::is_one)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{cyclic, symmetric};
    use crate::resolutions::{bar_resolution, cyclic_resolution};

    fn inv(f: usize, t: &[i64]) -> AbelianInvariants {
        AbelianInvariants::from_i64(f, t)
    }

    #[test]
    fn tensored_bar_d1_is_zero() {
        let g = symmetric(3).unwrap();
        let r = bar_resolution(&g, 2).unwrap();
        let c = tensor_with_integers(&r, 2).unwrap();
        assert!(c.maps[1].is_zero());
        assert_eq!(c.homology(0).unwrap(), inv(1, &[]));
        assert!(c.is_complex().unwrap());
    }

    #[test]
    fn cyclic_tensored_alternates() {
        let g = cyclic(4).unwrap();
        let r = cyclic_resolution(&g, 4).unwrap();
        let c = tensor_with_integers(&r, 4).unwrap();
        assert!(c.maps[1].is_zero() && c.maps[3].is_zero());
        assert_eq!(c.maps[2].get(0, 0), Int::from(4));
        let m = tensor_with_module(&r, &GModule::integers(&g), 4).unwrap();
        for k in 0..=4 {
            assert_eq!(m.maps[k], c.maps[k]);
        }
        let z2 = tensor_with_module(&r, &GModule::trivial(&g, 2), 4).unwrap();
        assert_eq!(z2.homology(1).unwrap(), inv(0, &[2]));
    }

    #[test]
    fn cohomology_of_cyclic() {
        let g = cyclic(6).unwrap();
        let z = GModule::integers(&g);
        assert_eq!(group_cohomology(&g, 2, &z, ResolutionChoice::Auto).unwrap(), inv(0, &[6]));
        assert_eq!(group_cohomology(&g, 1, &z, ResolutionChoice::Auto).unwrap(), inv(0, &[]));
        assert_eq!(group_cohomology(&g, 0, &z, ResolutionChoice::Auto).unwrap(), inv(1, &[]));
        let z4 = GModule::trivial(&g, 4);
        assert_eq!(group_cohomology(&g, 3, &z4, ResolutionChoice::Auto).unwrap(), inv(0, &[2]));
    }

    #[test]
    fn h3_of_s3() {
        let g = symmetric(3).unwrap();
        let z = GModule::integers(&g);
        let h = group_homology(&g, 3, &z, ResolutionChoice::Auto).unwrap();
        assert_eq!(h, inv(0, &[6]));
        assert_eq!(h.primary(), vec![Int::from(2), Int::from(3)]);
    }

    #[test]
    fn coefficient_parsing() {
        assert_eq!("Z".parse::<Coefficients>().unwrap(), Coefficients::Integers);
        assert_eq!("Z/5".parse::<Coefficients>().unwrap(), Coefficients::Cyclic(5));
        assert_eq!("Z/2^3".parse::<Coefficients>().unwrap(), Coefficients::CyclicPower(2, 3));
        assert_eq!("ℤ/7".parse::<Coefficients>().unwrap(), Coefficients::Cyclic(7));
        assert!("Q".parse::<Coefficients>().is_err());
        assert!("Z/0".parse::<Coefficients>().is_err());
        assert_eq!(Coefficients::CyclicPower(3, 2).to_string(), "Z/3^2");
    }

    #[test]
    fn invalid_modules_rejected() {
        let g = cyclic(2).unwrap();
        // swap on (Z/3)^2 is fine; multiplication by 2 on Z is not an automorphism of order 2
        let swap = DenseMatrix::<Int>::from_i64_rows(&[vec![0, 1], vec![1, 0]]);
        assert!(GModule::new(&g, vec![Int::from(3), Int::from(3)], vec![swap], "P").is_ok());
        let two = DenseMatrix::<Int>::from_i64_rows(&[vec![2]]);
        assert!(GModule::new(&g, vec![Int::zero()], vec![two], "bad").is_err());
        // an action that mixes Z into Z/2 without respecting the relation
        let mix = DenseMatrix::<Int>::from_i64_rows(&[vec![1, 0], vec![1, 1]]);
        assert!(GModule::new(&g, vec![Int::from(2), Int::zero()], vec![mix], "bad").is_err());
    }

    #[test]
    fn fixed_points_of_swap() {
        let g = cyclic(2).unwrap();
        let swap = DenseMatrix::<Int>::from_i64_rows(&[vec![0, 1], vec![1, 0]]);
        let a = GModule::new(&g, vec![Int::from(3), Int::from(3)], vec![swap], "P").unwrap();
        let all: Vec<usize> = (0..2).collect();
        let fp = a.fixed_points(&all).unwrap();
        assert_eq!(fp.module.invariants(), inv(0, &[3]));
        assert!(fp.module.is_trivial_action());
    }

    #[test]
    fn feasibility_refusal() {
        let g = symmetric(4).unwrap();
        let z = GModule::integers(&g);
        let err = group_homology_with(&g, 3, &z, ResolutionKind::Bar.into(), 1000).unwrap_err();
        assert!(matches!(err, Error::Infeasible { degree: 2, rank: 576, .. }), "{err:?}");
    }

    #[test]
    fn poincare_c2() {
        let g = cyclic(2).unwrap();
        let d = poincare_dims(&g, 2, 10).unwrap();
        assert_eq!(d.dims, vec![1; 10]);
        assert!(d.complete);
        let g3 = cyclic(3).unwrap();
        assert_eq!(poincare_dims(&g3, 2, 5).unwrap().dims, vec![0; 5]);
        assert!(poincare_dims(&g3, 4, 5).is_err());
    }
}
