//! Group expressions: `C4`, `S5`, `A5`, `D4`, `Q8`, `perm:[(1,2,3),(1,2)]`,
//! and direct products such as `C2xC2`.

use std::fmt;
use std::str::FromStr;

use super::perm::CycleParser;
use super::{families, FiniteGroup, Permutation};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupExpr {
    Cyclic(usize),
    Symmetric(usize),
    Alternating(usize),
    Dihedral(usize),
    Quaternion,
    Perm(Vec<Permutation>),
    Product(Vec<GroupExpr>),
}

impl GroupExpr {
    pub fn parse(text: &str) -> Result<Self> {
        let mut p = CycleParser { s: text.as_bytes(), pos: 0 };
        let mut factors = vec![factor(&mut p)?];
        while p.peek() == Some(b'x') {
            p.pos += 1;
            factors.push(factor(&mut p)?);
        }
        p.skip_ws();
        if p.pos != p.s.len() {
            return Err(p.err("unexpected trailing input"));
        }
        Ok(if factors.len() == 1 { factors.pop().expect("one factor") } else { GroupExpr::Product(factors) })
    }

    pub fn build(&self) -> Result<FiniteGroup> {
        let g = match self {
            GroupExpr::Cyclic(n) => families::cyclic(*n)?,
            GroupExpr::Symmetric(n) => families::symmetric(*n)?,
            GroupExpr::Alternating(n) => families::alternating(*n)?,
            GroupExpr::Dihedral(n) => families::dihedral(*n)?,
            GroupExpr::Quaternion => families::quaternion()?,
            GroupExpr::Perm(gens) => families::from_permutations(gens.clone())?,
            GroupExpr::Product(fs) => families::direct_product(&fs.iter().map(|f| f.build()).collect::<Result<Vec<_>>>()?)?,
        };
        Ok(g.with_name(self.to_string()))
    }
}

fn factor(p: &mut CycleParser) -> Result<GroupExpr> {
    let at = p.pos;
    let Some(c) = p.peek() else {
        return Err(p.err("expected a group"));
    };
    let family = |p: &mut CycleParser| -> Result<usize> {
        p.pos += 1;
        if !p.s.get(p.pos).is_some_and(u8::is_ascii_digit) {
            return Err(p.err("expected a number"));
        }
        let n = p.number()?;
        if n == 0 {
            return Err(Error::Parse { pos: at, msg: "parameter must be positive".into() });
        }
        Ok(n)
    };
    match c {
        b'C' => family(p).map(GroupExpr::Cyclic),
        b'S' => family(p).map(GroupExpr::Symmetric),
        b'A' => family(p).map(GroupExpr::Alternating),
        b'D' => family(p).map(GroupExpr::Dihedral),
        b'Q' => {
            let n = family(p)?;
            if n != 8 {
                return Err(Error::Parse { pos: at, msg: "only Q8 is supported".into() });
            }
            Ok(GroupExpr::Quaternion)
        }
        b'p' => {
            if !p.s[p.pos..].starts_with(b"perm:") {
                return Err(p.err("expected 'perm:'"));
            }
            p.pos += 5;
            p.expect(b'[')?;
            let mut gens = Vec::new();
            loop {
                let cycles = p.cycles()?;
                gens.push(Permutation::from_cycle_list(&cycles, 0)?);
                match p.peek() {
                    Some(b',') => p.pos += 1,
                    Some(b']') => {
                        p.pos += 1;
                        break;
                    }
                    _ => return Err(p.err("expected ',' or ']'")),
                }
            }
            let degree = gens.iter().map(Permutation::degree).max().unwrap_or(1).max(1);
            Ok(GroupExpr::Perm(gens.into_iter().map(|g| g.extended(degree)).collect()))
        }
        _ => Err(p.err("expected C, S, A, D, Q8 or perm:[...]")),
    }
}

impl FromStr for GroupExpr {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

impl fmt::Display for GroupExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupExpr::Cyclic(n) => write!(f, "C{n}"),
            GroupExpr::Symmetric(n) => write!(f, "S{n}"),
            GroupExpr::Alternating(n) => write!(f, "A{n}"),
            GroupExpr::Dihedral(n) => write!(f, "D{n}"),
            GroupExpr::Quaternion => write!(f, "Q8"),
            GroupExpr::Perm(gens) => {
                let parts: Vec<String> = gens.iter().map(ToString::to_string).collect();
                write!(f, "perm:[{}]", parts.join(","))
            }
            GroupExpr::Product(fs) => {
                let parts: Vec<String> = fs.iter().map(ToString::to_string).collect();
                write!(f, "{}", parts.join("x"))
            }
        }
    }
}
