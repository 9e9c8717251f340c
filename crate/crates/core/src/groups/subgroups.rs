use num_bigint::BigInt;

use super::{FiniteGroup, GroupHom, Permutation};
use crate::error::{Error, Result};
use crate::intlinalg::{elementary_divisors, is_prime, AbelianInvariants, IntMatrix};

/// The subgroup generated by some elements, with its inclusion.
pub fn subgroup(g: &FiniteGroup, elts: &[usize]) -> Result<(FiniteGroup, GroupHom)> {
    // keep only elements that enlarge the closure
    let mut gens: Vec<usize> = Vec::new();
    let mut inside = g.closure(&[]);
    for &e in elts {
        if e >= g.order() {
            return Err(Error::IndexOutOfRange(format!("element {} of a group of order {}", e + 1, g.order())));
        }
        if !inside[e] {
            gens.push(e);
            inside = g.closure(&gens);
        }
    }
    if gens.is_empty() {
        gens.push(0);
    }
    let h = FiniteGroup::enumerate(gens.iter().map(|&e| g.element(e).clone()).collect())?;
    let emb = GroupHom::new(&h, g, gens)?;
    Ok((h, emb))
}

fn mask_to_list(mask: &[bool]) -> Vec<usize> {
    mask.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i).collect()
}

/// Smallest normal subgroup containing `elts`.
fn normal_closure(g: &FiniteGroup, elts: &[usize]) -> Vec<bool> {
    let mut gens: Vec<usize> = elts.to_vec();
    loop {
        let inside = g.closure(&gens);
        let mut grew = false;
        for x in mask_to_list(&inside) {
            for &s in g.gen_indices() {
                let c = g.conj(x, s);
                if !inside[c] && !gens.contains(&c) {
                    gens.push(c);
                    grew = true;
                }
            }
            if grew {
                break;
            }
        }
        if !grew {
            return inside;
        }
    }
}

/// `[G,G]`: the normal closure of the commutators of generator pairs.
pub fn commutator_subgroup(g: &FiniteGroup) -> Result<(FiniteGroup, GroupHom)> {
    let mut comms = Vec::new();
    for &a in g.gen_indices() {
        for &b in g.gen_indices() {
            let c = g.mul(g.mul(a, b), g.mul(g.inv(a), g.inv(b)));
            if c != 0 && !comms.contains(&c) {
                comms.push(c);
            }
        }
    }
    let mask = normal_closure(g, &comms);
    subgroup(g, &mask_to_list(&mask))
}

fn is_p_power(mut n: usize, p: usize) -> bool {
    while n % p == 0 {
        n /= p;
    }
    n == 1
}

/// A Sylow `p`-subgroup, grown inside successive normalizers.
pub fn sylow_subgroup(g: &FiniteGroup, p: u64) -> Result<(FiniteGroup, GroupHom)> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let p = p as usize;
    let mut target = 1;
    let mut n = g.order();
    while n % p == 0 {
        n /= p;
        target *= p;
    }
    let mut gens: Vec<usize> = Vec::new();
    let mut inside = g.closure(&gens);
    let mut size = 1;
    while size < target {
        let members = mask_to_list(&inside);
        let normalizes = |x: usize| members.iter().all(|&h| inside[g.conj(h, x)]);
        let next = (0..g.order())
            .find(|&x| !inside[x] && is_p_power(g.element_order(x), p) && normalizes(x))
            .expect("a proper p-subgroup has p-elements in its normalizer outside it");
        gens.push(next);
        inside = g.closure(&gens);
        size = inside.iter().filter(|&&b| b).count();
    }
    subgroup(g, &gens)
}

/// `G/N` acting on the cosets of `N`, numbered by their smallest element index.
pub fn quotient_group(g: &FiniteGroup, normal: &[usize]) -> Result<(FiniteGroup, GroupHom)> {
    let mut mask = vec![false; g.order()];
    for &e in normal {
        if e >= g.order() {
            return Err(Error::IndexOutOfRange(format!("element {} of a group of order {}", e + 1, g.order())));
        }
        mask[e] = true;
    }
    if !mask[0] || g.closure(normal) != mask {
        return Err(Error::NotSubgroup("the given elements are not closed under multiplication".into()));
    }
    for &x in normal {
        for &s in g.gen_indices() {
            let c = g.conj(x, s);
            if !mask[c] {
                return Err(Error::NotNormal(format!(
                    "{} * {} * {} = {} lies outside the subgroup",
                    g.element(s),
                    g.element(x),
                    g.element(g.inv(s)),
                    g.element(c)
                )));
            }
        }
    }
    // coset number of every element
    let mut coset = vec![usize::MAX; g.order()];
    let mut reps = Vec::new();
    for e in 0..g.order() {
        if coset[e] != usize::MAX {
            continue;
        }
        let k = reps.len();
        reps.push(e);
        for &x in normal {
            coset[g.mul(e, x)] = k;
        }
    }
    let m = reps.len();
    let act = |s: usize| -> Permutation {
        let images: Vec<usize> = reps.iter().map(|&r| coset[g.mul(r, s)] + 1).collect();
        Permutation::from_images(&images).expect("cosets are permuted")
    };
    let perms: Vec<Permutation> = g.gen_indices().iter().map(|&s| act(s)).collect();
    let q = FiniteGroup::enumerate(if m == 1 { vec![Permutation::identity(1)] } else { perms.clone() })?;
    let gen_images = if m == 1 {
        vec![0; g.ngens()]
    } else {
        perms.iter().map(|p| q.index_of(p).expect("generator of the quotient")).collect()
    };
    let proj = GroupHom::new(g, &q, gen_images)?;
    Ok((q, proj))
}

/// Invariants of `G/[G,G]` from a presentation of the abelian quotient:
/// every edge of its Cayley graph off the spanning tree gives a relation.
pub fn abelianization_invariants(g: &FiniteGroup) -> Result<AbelianInvariants> {
    let (_, emb) = commutator_subgroup(g)?;
    let (q, proj) = quotient_group(g, &emb.images().to_vec())?;
    let k = g.ngens();
    // tree coordinates in Z^k, generator s of G maps to proj(s)
    let mut coords = vec![vec![0i64; k]; q.order()];
    let mut seen = vec![false; q.order()];
    seen[0] = true;
    let mut order = vec![0usize];
    let mut head = 0;
    while head < order.len() {
        let x = order[head];
        head += 1;
        for s in 0..k {
            let y = q.mul(x, proj.gen_images()[s]);
            if !seen[y] {
                seen[y] = true;
                let mut c = coords[x].clone();
                c[s] += 1;
                coords[y] = c;
                order.push(y);
            }
        }
    }
    let mut trip = Vec::new();
    let mut row = 0;
    for x in 0..q.order() {
        for s in 0..k {
            let y = q.mul(x, proj.gen_images()[s]);
            let mut r = coords[x].clone();
            r[s] += 1;
            for (j, (a, b)) in r.iter().zip(&coords[y]).enumerate() {
                if a != b {
                    trip.push((row, j, BigInt::from(a - b)));
                }
            }
            row += 1;
        }
    }
    let rel = IntMatrix::from_triplets(row, k, trip);
    let divisors = elementary_divisors(&rel);
    let free = k - divisors.len();
    Ok(AbelianInvariants::new(free, divisors))
}
