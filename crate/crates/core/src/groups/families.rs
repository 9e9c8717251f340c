//! Standard permutation generators for the named families.

use super::{FiniteGroup, Permutation};
use crate::error::{Error, Result};

fn cycle(points: &[usize], degree: usize) -> Permutation {
    Permutation::from_cycle_list(&[points.to_vec()], degree).expect("valid cycle")
}

fn need(n: usize, what: &str) -> Result<()> {
    if n == 0 {
        return Err(Error::Precondition(format!("{what} needs a positive parameter")));
    }
    Ok(())
}

pub fn cyclic(m: usize) -> Result<FiniteGroup> {
    need(m, "cyclic group")?;
    let g = if m == 1 { Permutation::identity(1) } else { cycle(&(1..=m).collect::<Vec<_>>(), m) };
    Ok(FiniteGroup::enumerate(vec![g])?.with_name(format!("C{m}")))
}

pub fn symmetric(n: usize) -> Result<FiniteGroup> {
    need(n, "symmetric group")?;
    let gens = match n {
        1 => vec![Permutation::identity(1)],
        2 => vec![cycle(&[1, 2], 2)],
        _ => vec![cycle(&(1..=n).collect::<Vec<_>>(), n), cycle(&[1, 2], n)],
    };
    Ok(FiniteGroup::enumerate(gens)?.with_name(format!("S{n}")))
}

/// Generated by the 3-cycles `(1,2,k)`.
pub fn alternating(n: usize) -> Result<FiniteGroup> {
    need(n, "alternating group")?;
    let gens = if n < 3 { vec![Permutation::identity(n)] } else { (3..=n).map(|k| cycle(&[1, 2, k], n)).collect() };
    Ok(FiniteGroup::enumerate(gens)?.with_name(format!("A{n}")))
}

/// Dihedral group of order `2n`.
pub fn dihedral(n: usize) -> Result<FiniteGroup> {
    need(n, "dihedral group")?;
    let gens = match n {
        1 => vec![cycle(&[1, 2], 2)],
        2 => vec![cycle(&[1, 2], 4), cycle(&[3, 4], 4)],
        _ => {
            let rot = cycle(&(1..=n).collect::<Vec<_>>(), n);
            let pairs: Vec<Vec<usize>> = (1..=n / 2).map(|i| vec![i, n + 1 - i]).collect();
            let refl = Permutation::from_cycle_list(&pairs, n).expect("disjoint transpositions");
            vec![rot, refl]
        }
    };
    Ok(FiniteGroup::enumerate(gens)?.with_name(format!("D{n}")))
}

pub fn quaternion() -> Result<FiniteGroup> {
    let i = Permutation::parse("(1,2,3,4)(5,6,7,8)")?;
    let j = Permutation::parse("(1,5,3,7)(2,8,4,6)")?;
    Ok(FiniteGroup::enumerate(vec![i, j])?.with_name("Q8"))
}

/// Direct product acting on disjoint blocks of points.
pub fn direct_product(factors: &[FiniteGroup]) -> Result<FiniteGroup> {
    let degree: usize = factors.iter().map(FiniteGroup::degree).sum();
    let mut gens = Vec::new();
    let mut offset = 0;
    for f in factors {
        for g in f.generators() {
            gens.push(g.shifted(offset, degree));
        }
        offset += f.degree();
    }
    let name = factors.iter().map(FiniteGroup::name).collect::<Vec<_>>().join("x");
    Ok(FiniteGroup::enumerate(gens)?.with_name(name))
}

/// Group generated by permutations given in cycle notation.
pub fn from_cycles(gens: &[&str]) -> Result<FiniteGroup> {
    let perms = gens.iter().map(|t| Permutation::parse(t)).collect::<Result<Vec<_>>>()?;
    from_permutations(perms)
}

/// Pads all generators to a common degree before enumerating.
pub fn from_permutations(perms: Vec<Permutation>) -> Result<FiniteGroup> {
    let degree = perms.iter().map(Permutation::degree).max().unwrap_or(1).max(1);
    FiniteGroup::enumerate(perms.into_iter().map(|p| p.extended(degree)).collect())
}
