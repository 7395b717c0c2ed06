//! Permutations of `{1, ..., n}` with left-to-right composition.
//!
//! `p.compose(q)` applies `p` first: `(p·q)(x) = q(p(x))`. Cycle notation
//! uses 1-based points, `()` for the identity.

use std::fmt;

use crate::error::{Error, ParseError, Result};
use crate::word::Word;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    // 0-based images
    images: Vec<u32>,
}

impl Perm {
    pub fn identity(degree: usize) -> Perm {
        Perm {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from 1-based images of `1..=n`.
    pub fn from_images(images: &[usize]) -> Result<Perm> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in images {
            if x == 0 || x > n || std::mem::replace(&mut seen[x - 1], true) {
                return Err(Error::InvalidPermutation(format!("{images:?}")));
            }
        }
        Ok(Perm {
            images: images.iter().map(|&x| (x - 1) as u32).collect(),
        })
    }

    pub(crate) fn from_zero_based(images: Vec<u32>) -> Perm {
        debug_assert!({
            let mut s = images.clone();
            s.sort_unstable();
            s.iter().enumerate().all(|(i, &x)| i as u32 == x)
        });
        Perm { images }
    }

    /// Parses cycle notation such as `(1 2)(3 4)` on `degree` points.
    pub fn parse_cycles(src: &str, degree: usize) -> Result<Perm> {
        let mut images: Vec<usize> = (1..=degree).collect();
        let mut used = vec![false; degree];
        let bytes = src.as_bytes();
        let mut i = 0;
        let err = |at: usize, msg: &str| Error::Parse(ParseError::new(1, at + 1, msg));
        while i < bytes.len() {
            match bytes[i] {
                c if c.is_ascii_whitespace() => i += 1,
                b'(' => {
                    let close = src[i..]
                        .find(')')
                        .map(|k| i + k)
                        .ok_or_else(|| err(i, "unclosed cycle"))?;
                    let mut cycle = Vec::new();
                    for tok in src[i + 1..close].split(|c: char| c.is_whitespace() || c == ',') {
                        if tok.is_empty() {
                            continue;
                        }
                        let x: usize = tok.parse().map_err(|_| err(i, "expected a point"))?;
                        if x == 0 || x > degree {
                            return Err(err(i, "point outside the permutation domain"));
                        }
                        if std::mem::replace(&mut used[x - 1], true) {
                            return Err(err(i, "point repeated across cycles"));
                        }
                        cycle.push(x);
                    }
                    for (k, &x) in cycle.iter().enumerate() {
                        images[x - 1] = cycle[(k + 1) % cycle.len()];
                    }
                    i = close + 1;
                }
                _ => return Err(err(i, "expected `(`")),
            }
        }
        Perm::from_images(&images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the 1-based point `x`.
    pub fn apply(&self, x: usize) -> usize {
        self.images[x - 1] as usize + 1
    }

    pub(crate) fn apply0(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    pub fn compose(&self, other: &Perm) -> Result<Perm> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(self.then(other))
    }

    pub(crate) fn then(&self, other: &Perm) -> Perm {
        Perm {
            images: self
                .images
                .iter()
                .map(|&x| other.images[x as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Perm { images: inv }
    }

    pub fn pow(&self, k: i64) -> Perm {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        (0..k.unsigned_abs()).fold(Perm::identity(self.degree()), |acc, _| acc.then(&base))
    }

    /// Disjoint cycles of length at least 2, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start + 1];
            seen[start] = true;
            let mut x = self.images[start] as usize;
            while x != start {
                seen[x] = true;
                cycle.push(x + 1);
                x = self.images[x] as usize;
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// Least `k >= 1` with `p^k = id`.
    pub fn order(&self) -> u64 {
        let mut seen = vec![false; self.degree()];
        let mut order = 1u64;
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len = 0u64;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x] as usize;
                len += 1;
            }
            order = lcm(order, len);
        }
        order
    }

    /// True when the generated group acts transitively on the points.
    pub fn is_transitive(&self) -> bool {
        self.degree() <= 1
            || self
                .cycles()
                .first()
                .is_some_and(|c| c.len() == self.degree())
    }

    /// Direct sum: `self` on the first points, `other` on the following ones.
    pub fn direct_sum(&self, other: &Perm) -> Perm {
        let shift = self.degree() as u32;
        let mut images = self.images.clone();
        images.extend(other.images.iter().map(|&x| x + shift));
        Perm { images }
    }

    /// All permutations of degree `n` in lexicographic order of image tuples.
    pub fn all(n: usize) -> Vec<Perm> {
        let mut current: Vec<u32> = (0..n as u32).collect();
        let mut out = vec![Perm {
            images: current.clone(),
        }];
        // next_permutation
        while let Some(i) = (1..n).rev().find(|&i| current[i - 1] < current[i]) {
            let j = (i..n)
                .rev()
                .find(|&j| current[j] > current[i - 1])
                .expect("pivot");
            current.swap(i - 1, j);
            current[i..].reverse();
            out.push(Perm {
                images: current.clone(),
            });
        }
        out
    }

    /// The identity and every element of order 2 in `S_n`, lexicographically.
    pub fn involutions(n: usize) -> Vec<Perm> {
        Perm::all(n)
            .into_iter()
            .filter(|p| p.then(p).is_identity())
            .collect()
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            f.write_str("(")?;
            for (i, x) in c.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// Left-to-right product of generator images along `word`.
pub fn word_image(word: &Word, images: &[Perm]) -> Result<Perm> {
    let degree = match images.first() {
        Some(p) => p.degree(),
        None if word.is_identity() => 0,
        None => {
            return Err(Error::MissingImage(
                word.alphabet().name(word.letters()[0].generator).into(),
            ))
        }
    };
    if let Some(p) = images.iter().find(|p| p.degree() != degree) {
        return Err(Error::DegreeMismatch(degree, p.degree()));
    }
    let mut acc = Perm::identity(degree);
    for l in word.letters() {
        let p = images
            .get(l.generator)
            .ok_or_else(|| Error::MissingImage(word.alphabet().name(l.generator).into()))?;
        acc = if l.inverse {
            acc.then(&p.inverse())
        } else {
            acc.then(p)
        };
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::{Alphabet, Mode};

    fn p(s: &str) -> Perm {
        Perm::parse_cycles(s, 4).unwrap()
    }

    #[test]
    fn compose_is_left_to_right() {
        // pointwise, (3 4) first: 1->1, 2->2->3, 3->4->4, 4->3->2
        let prod = p("(3 4)").compose(&p("(2 3)")).unwrap();
        let oracle: Vec<usize> = (1..=4)
            .map(|x| p("(2 3)").apply(p("(3 4)").apply(x)))
            .collect();
        assert_eq!(oracle, vec![1, 3, 4, 2]);
        assert_eq!(prod, Perm::from_images(&oracle).unwrap());
        assert_eq!(prod.to_string(), "(2 3 4)");
        // the opposite order gives the inverse cycle
        assert_eq!(
            p("(2 3)").compose(&p("(3 4)")).unwrap().to_string(),
            "(2 4 3)"
        );
    }

    #[test]
    fn orders() {
        assert_eq!(p("(1 2)(3 4)").order(), 2);
        assert_eq!(p("(1 2 3 4)").order(), 4);
        assert_eq!(p("()").order(), 1);
        let q = p("(1 3 2)");
        assert!(q.compose(&q.inverse()).unwrap().is_identity());
    }

    #[test]
    fn cycle_notation_round_trip() {
        for s in ["()", "(1 2)", "(1 4 3 2)", "(1 2)(3 4)"] {
            assert_eq!(p(s).to_string(), s);
        }
        assert!(Perm::parse_cycles("(1 5)", 4).is_err());
        assert!(Perm::parse_cycles("(1 2)(2 3)", 4).is_err());
        assert!(Perm::parse_cycles("1 2", 4).is_err());
    }

    #[test]
    fn enumerations() {
        assert_eq!(Perm::all(4).len(), 24);
        let all = Perm::all(4);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(Perm::involutions(4).len(), 10);
    }

    #[test]
    fn transitivity() {
        assert!(p("(1 4 3 2)").is_transitive());
        assert!(!p("(1 4)(2 3)").is_transitive());
        assert!(!p("(1 2 3)").is_transitive());
    }

    #[test]
    fn word_images() {
        let alpha = Alphabet::gammas(4);
        let psi = [p("(1 2)"), p("(2 3)"), p("(2 3)"), p("(3 4)")];
        let u = Word::parse("g1 g2 g3 g4", &alpha, Mode::Involutory).unwrap();
        assert_eq!(word_image(&u, &psi).unwrap(), p("(1 2)(3 4)"));
        let e = Word::identity(&alpha, Mode::Involutory);
        assert!(word_image(&e, &psi).unwrap().is_identity());
        let free = Word::parse("g1 g2^-1", &alpha, Mode::Free).unwrap();
        let cyc = [p("(1 2 3)"), p("(1 2 3)"), p("()"), p("()")];
        assert!(word_image(&free, &cyc).unwrap().is_identity());
    }
}
