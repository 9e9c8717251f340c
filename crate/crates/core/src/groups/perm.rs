use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};

/// A permutation of `{1..n}`, stored 0-based.
///
/// Products follow the left-to-right convention: `p * q` applies `p` first,
/// so `(p * q)[i] = q[p[i]]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation { images: (0..degree as u32).collect() }
    }

    /// From 1-based images.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in images {
            if x == 0 || x > n || seen[x - 1] {
                return Err(Error::InvalidPermutation(format!("{images:?} is not a bijection on 1..{n}")));
            }
            seen[x - 1] = true;
        }
        Ok(Permutation { images: images.iter().map(|&x| (x - 1) as u32).collect() })
    }

    /// Builds from disjoint cycles of 1-based points; `degree` is raised to the largest point if needed.
    pub fn from_cycle_list(cycles: &[Vec<usize>], degree: usize) -> Result<Self> {
        let top = cycles.iter().flatten().copied().max().unwrap_or(0).max(degree);
        let mut images: Vec<u32> = (0..top as u32).collect();
        let mut moved = vec![false; top];
        for c in cycles {
            for (k, &a) in c.iter().enumerate() {
                if a == 0 {
                    return Err(Error::InvalidPermutation("points are numbered from 1".into()));
                }
                if moved[a - 1] {
                    return Err(Error::InvalidPermutation(format!("point {a} appears twice")));
                }
                moved[a - 1] = true;
                let b = c[(k + 1) % c.len()];
                images[a - 1] = (b - 1) as u32;
            }
        }
        Ok(Permutation { images })
    }

    /// Parses cycle notation such as `(1,2,3)(4,5)`; `()` is the identity.
    pub fn parse(text: &str) -> Result<Self> {
        let mut p = CycleParser { s: text.as_bytes(), pos: 0 };
        let cycles = p.cycles()?;
        p.skip_ws();
        if p.pos != p.s.len() {
            return Err(p.err("unexpected trailing input"));
        }
        Self::from_cycle_list(&cycles, 0)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// 0-based image of 0-based point `i`.
    #[inline]
    pub fn image(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x as usize + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// Pads with fixed points up to `degree`.
    pub fn extended(&self, degree: usize) -> Self {
        let mut images = self.images.clone();
        images.extend(self.images.len() as u32..degree.max(self.images.len()) as u32);
        Permutation { images }
    }

    /// Shifts all points by `offset` inside a larger degree.
    pub fn shifted(&self, offset: usize, degree: usize) -> Self {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        for (i, &x) in self.images.iter().enumerate() {
            images[i + offset] = x + offset as u32;
        }
        Permutation { images }
    }

    pub fn mul(&self, rhs: &Permutation) -> Permutation {
        assert_eq!(self.degree(), rhs.degree(), "degree mismatch in product");
        Permutation { images: self.images.iter().map(|&i| rhs.images[i as usize]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x as usize] = i as u32;
        }
        Permutation { images }
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.image(start) == start {
                continue;
            }
            let mut c = vec![start + 1];
            seen[start] = true;
            let mut x = self.image(start);
            while x != start {
                seen[x] = true;
                c.push(x + 1);
                x = self.image(x);
            }
            out.push(c);
        }
        out
    }

    pub fn order(&self) -> usize {
        self.cycles().iter().fold(1, |acc, c| acc.lcm(&c.len()))
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(ToString::to_string).collect();
            write!(f, "({})", parts.join(","))?;
        }
        Ok(())
    }
}

pub(crate) struct CycleParser<'a> {
    pub s: &'a [u8],
    pub pos: usize,
}

impl CycleParser<'_> {
    pub fn err(&self, msg: &str) -> Error {
        Error::Parse { pos: self.pos, msg: msg.to_string() }
    }

    pub fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    pub fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    pub fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", c as char)))
        }
    }

    pub fn number(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .expect("digits are ascii")
            .parse()
            .map_err(|_| Error::Parse { pos: start, msg: "number too large".into() })
    }

    /// One or more parenthesized cycles.
    pub fn cycles(&mut self) -> Result<Vec<Vec<usize>>> {
        let mut out = Vec::new();
        if self.peek() != Some(b'(') {
            return Err(self.err("expected '('"));
        }
        while self.peek() == Some(b'(') {
            self.pos += 1;
            let mut c = Vec::new();
            if self.peek() == Some(b')') {
                self.pos += 1;
                continue;
            }
            loop {
                let at = self.pos;
                let x = self.number()?;
                if x == 0 {
                    return Err(Error::Parse { pos: at, msg: "points are numbered from 1".into() });
                }
                if c.contains(&x) || out.iter().any(|o: &Vec<usize>| o.contains(&x)) {
                    return Err(Error::Parse { pos: at, msg: format!("point {x} repeated") });
                }
                c.push(x);
                match self.peek() {
                    Some(b',') => self.pos += 1,
                    Some(b')') => {
                        self.pos += 1;
                        break;
                    }
                    _ => return Err(self.err("expected ',' or ')'")),
                }
            }
            out.push(c);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_order() {
        let p = Permutation::parse("(1,2,3)(4,5)").unwrap();
        assert_eq!(p.order(), 6);
        assert_eq!(p.images(), vec![2, 3, 1, 5, 4]);
        assert_eq!(p.to_string(), "(1,2,3)(4,5)");
        assert_eq!(Permutation::parse(" ( 1 , 2 ) ").unwrap().images(), vec![2, 1]);
        assert!(Permutation::parse("()").unwrap().is_identity());
    }

    #[test]
    fn parse_errors_carry_position() {
        match Permutation::parse("(1,2,)") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 5),
            other => panic!("{other:?}"),
        }
        assert!(matches!(Permutation::parse("(1,1)"), Err(Error::Parse { pos: 3, .. })));
        assert!(Permutation::parse("(1,2)x").is_err());
        assert!(Permutation::parse("(0,1)").is_err());
    }

    #[test]
    fn product_convention() {
        // (1,2)*(1,3): 1 -> 2 -> 2, 2 -> 1 -> 3, 3 -> 3 -> 1
        let a = Permutation::parse("(1,2)").unwrap().extended(3);
        let b = Permutation::parse("(1,3)").unwrap();
        assert_eq!(a.mul(&b).images(), vec![2, 3, 1]);
        assert!(a.mul(&a.inverse()).is_identity());
    }

    #[test]
    fn images_validation() {
        assert!(Permutation::from_images(&[2, 1, 3]).is_ok());
        assert!(Permutation::from_images(&[2, 2, 3]).is_err());
        assert!(Permutation::from_images(&[0, 1]).is_err());
    }
}
