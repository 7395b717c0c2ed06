//! The Artin action of the braid group `B_n` on the punctured disk.
//!
//! Loops `g1..gn` encircle the punctures; a based path `w·rho_j` runs from the
//! basepoint along the loop word `w` and then along `rho_j` to puncture `j`.
//! Braid words act on the left, so the rightmost letter is applied first.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, ParseError, Result};
use crate::perm::Perm;
use crate::word::{Alphabet, Letter, Mode, Word};

pub const DEFAULT_STRANDS: usize = 4;

/// `sigma_index^{+-1}`, with `index` in `1..n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BraidLetter {
    pub index: usize,
    pub inverse: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<BraidLetter>,
}

impl BraidWord {
    pub fn identity(strands: usize) -> BraidWord {
        BraidWord {
            strands,
            letters: Vec::new(),
        }
    }

    pub fn new(strands: usize, letters: Vec<BraidLetter>) -> Result<BraidWord> {
        for l in &letters {
            if l.index == 0 || l.index >= strands {
                return Err(Error::IndexOutOfRange {
                    index: l.index,
                    max: strands.saturating_sub(1),
                });
            }
        }
        Ok(BraidWord { strands, letters })
    }

    /// Parses whitespace-separated terms `s<i>` or `s<i>^<int>`.
    pub fn parse(src: &str, strands: usize) -> Result<BraidWord> {
        let mut letters = Vec::new();
        let mut offset = 0;
        for tok in src.split_inclusive(char::is_whitespace) {
            let col = offset + 1;
            offset += tok.len();
            let tok = tok.trim_end();
            if tok.is_empty() {
                continue;
            }
            let err = |msg: String| Error::Parse(ParseError::new(1, col, msg));
            let body = tok
                .strip_prefix('s')
                .ok_or_else(|| err(format!("expected `s<i>`, found `{tok}`")))?;
            let (index, exponent) = match body.split_once('^') {
                Some((i, e)) => (
                    i,
                    e.parse::<i64>()
                        .map_err(|_| err(format!("bad exponent in `{tok}`")))?,
                ),
                None => (body, 1),
            };
            if index.is_empty() || !index.bytes().all(|b| b.is_ascii_digit()) {
                return Err(err(format!("bad generator index in `{tok}`")));
            }
            let index: usize = index
                .parse()
                .map_err(|_| err(format!("bad generator index in `{tok}`")))?;
            if index == 0 || index >= strands {
                return Err(err(format!("generator s{index} outside B_{strands}")));
            }
            for _ in 0..exponent.unsigned_abs() {
                letters.push(BraidLetter {
                    index,
                    inverse: exponent < 0,
                });
            }
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[BraidLetter] {
        &self.letters
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord {
            strands: self.strands,
            letters: self
                .letters
                .iter()
                .rev()
                .map(|l| BraidLetter {
                    index: l.index,
                    inverse: !l.inverse,
                })
                .collect(),
        }
    }

    /// `self` followed on the right by `other` (so `other` acts first).
    pub fn concat(&self, other: &BraidWord) -> BraidWord {
        assert_eq!(self.strands, other.strands);
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        BraidWord {
            strands: self.strands,
            letters,
        }
    }

    pub fn loop_alphabet(&self) -> Arc<Alphabet> {
        Alphabet::gammas(self.strands)
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let mut i = 0;
        while i < self.letters.len() {
            let l = self.letters[i];
            let run = self.letters[i..].iter().take_while(|m| **m == l).count();
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            let exp = if l.inverse { -(run as i64) } else { run as i64 };
            if exp == 1 {
                write!(f, "s{}", l.index)?;
            } else {
                write!(f, "s{}^{}", l.index, exp)?;
            }
            i += run;
        }
        Ok(())
    }
}

/// The path `prefix · rho_terminal`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasedPath {
    pub prefix: Word,
    pub terminal: usize,
}

impl BasedPath {
    pub fn rho(alphabet: &Arc<Alphabet>, j: usize, mode: Mode) -> BasedPath {
        BasedPath {
            prefix: Word::identity(alphabet, mode),
            terminal: j,
        }
    }
}

impl fmt::Display for BasedPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.prefix.is_identity() {
            write!(f, "rho{}", self.terminal)
        } else {
            write!(f, "{} rho{}", self.prefix, self.terminal)
        }
    }
}

fn check_loop_word(b: &BraidWord, w: &Word) -> Result<()> {
    if w.alphabet().len() != b.strands {
        return Err(Error::IndexOutOfRange {
            index: w.alphabet().len(),
            max: b.strands,
        });
    }
    Ok(())
}

/// Image of one letter `g_k^{+-1}` under `sigma_i^{+-1}`, free mode, appended to `out`.
fn push_letter_image(s: BraidLetter, l: Letter, out: &mut Vec<Letter>) {
    let i = s.index - 1;
    let image: &[Letter] = match (s.inverse, l.generator) {
        (false, k) if k == i => &[Letter::pos(i), Letter::pos(i + 1), Letter::neg(i)],
        (false, k) if k == i + 1 => &[Letter::pos(i)],
        (true, k) if k == i => &[Letter::pos(i + 1)],
        (true, k) if k == i + 1 => &[Letter::neg(i + 1), Letter::pos(i), Letter::pos(i + 1)],
        _ => {
            out.push(l);
            return;
        }
    };
    if l.inverse {
        out.extend(image.iter().rev().map(|x| x.inv()));
    } else {
        out.extend_from_slice(image);
    }
}

fn apply_letter(s: BraidLetter, w: &Word) -> Word {
    let mut out = Vec::with_capacity(w.len() + 2);
    for &l in w.letters() {
        push_letter_image(s, l, &mut out);
    }
    Word::reduce(w.alphabet(), Mode::Free, out).expect("braid action stays in the alphabet")
}

/// Artin action of `b` on a loop word; the result is reduced in `mode`.
pub fn act_on_loop(b: &BraidWord, w: &Word, mode: Mode) -> Result<Word> {
    check_loop_word(b, w)?;
    let mut cur = w.to_mode(Mode::Free);
    for &s in b.letters.iter().rev() {
        cur = apply_letter(s, &cur);
    }
    Ok(cur.to_mode(mode))
}

/// Action of `b` on a based path; the prefix is reduced in `mode`.
pub fn act_on_path(b: &BraidWord, p: &BasedPath) -> Result<BasedPath> {
    act_on_path_in(b, p, p.prefix.mode())
}

pub fn act_on_path_in(b: &BraidWord, p: &BasedPath, mode: Mode) -> Result<BasedPath> {
    check_loop_word(b, &p.prefix)?;
    if p.terminal == 0 || p.terminal > b.strands {
        return Err(Error::IndexOutOfRange {
            index: p.terminal,
            max: b.strands,
        });
    }
    let alphabet = p.prefix.alphabet();
    let mut prefix = p.prefix.to_mode(Mode::Free);
    let mut j = p.terminal;
    for &s in b.letters.iter().rev() {
        prefix = apply_letter(s, &prefix);
        let i = s.index;
        let extra = match (s.inverse, j) {
            (false, j0) if j0 == i => {
                j = i + 1;
                Some(Letter::pos(i - 1))
            }
            (false, j0) if j0 == i + 1 => {
                j = i;
                None
            }
            (true, j0) if j0 == i => {
                j = i + 1;
                None
            }
            (true, j0) if j0 == i + 1 => {
                j = i;
                Some(Letter::neg(i))
            }
            _ => None,
        };
        if let Some(x) = extra {
            let mut letters = prefix.letters().to_vec();
            letters.push(x);
            prefix = Word::reduce(alphabet, Mode::Free, letters)?;
        }
    }
    Ok(BasedPath {
        prefix: prefix.to_mode(mode),
        terminal: j,
    })
}

/// The reflection `g_i -> g_{n+1-i}`; defined on the involutory quotient only.
pub fn reflect_loop(w: &Word) -> Result<Word> {
    if w.mode() != Mode::Involutory {
        return Err(Error::Unsupported(
            "the reflection is only defined on involutory words",
        ));
    }
    let n = w.alphabet().len();
    w.relabel(|k| n - 1 - k)
}

/// `(w, j) -> (r(w), n+1-j)`.
pub fn reflect_path(p: &BasedPath) -> Result<BasedPath> {
    let n = p.prefix.alphabet().len();
    if p.terminal == 0 || p.terminal > n {
        return Err(Error::IndexOutOfRange {
            index: p.terminal,
            max: n,
        });
    }
    Ok(BasedPath {
        prefix: reflect_loop(&p.prefix)?,
        terminal: n + 1 - p.terminal,
    })
}

/// `r(b(g_i))` in the involutory quotient.
pub fn r_beta_gamma(b: &BraidWord, i: usize) -> Result<Word> {
    let alphabet = b.loop_alphabet();
    if i == 0 || i > b.strands {
        return Err(Error::IndexOutOfRange {
            index: i,
            max: b.strands,
        });
    }
    let g = Word::generator(&alphabet, i - 1, Mode::Free)?;
    reflect_loop(&act_on_loop(b, &g, Mode::Involutory)?)
}

/// Strand permutation `j -> b(j)`, optionally followed by `j -> n+1-j`.
pub fn induced_permutation(b: &BraidWord, with_reflection: bool) -> Perm {
    let n = b.strands;
    let images: Vec<usize> = (1..=n)
        .map(|start| {
            let mut j = start;
            for s in b.letters.iter().rev() {
                if j == s.index {
                    j += 1;
                } else if j == s.index + 1 {
                    j -= 1;
                }
            }
            if with_reflection {
                n + 1 - j
            } else {
                j
            }
        })
        .collect();
    Perm::from_images(&images).expect("strand images form a permutation")
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) const BETA: &str = "s1^2 s3 s2 s3^-1 s1^-2";

    fn beta() -> BraidWord {
        BraidWord::parse(BETA, 4).unwrap()
    }

    fn gw(src: &str, mode: Mode) -> Word {
        Word::parse(src, &Alphabet::gammas(4), mode).unwrap()
    }

    #[test]
    fn parse_and_print() {
        let b = beta();
        assert_eq!(b.letters().len(), 7);
        assert_eq!(b.to_string(), BETA);
        assert!(BraidWord::parse("", 4).unwrap().is_empty());
        assert!(BraidWord::parse("s4", 4).is_err());
        assert!(BraidWord::parse("s0", 4).is_err());
        let err = BraidWord::parse("s1 t2", 4).unwrap_err();
        assert!(matches!(err, Error::Parse(ParseError { column: 4, .. })));
    }

    #[test]
    fn single_generator_on_loops() {
        let s3 = BraidWord::parse("s3", 4).unwrap();
        assert_eq!(
            act_on_loop(&s3, &gw("g4", Mode::Free), Mode::Free).unwrap(),
            gw("g3", Mode::Free)
        );
        assert_eq!(
            act_on_loop(&s3, &gw("g3", Mode::Free), Mode::Free).unwrap(),
            gw("g3 g4 g3^-1", Mode::Free)
        );
        let s3i = BraidWord::parse("s3^-1", 4).unwrap();
        assert_eq!(
            act_on_loop(&s3i, &gw("g4", Mode::Free), Mode::Free).unwrap(),
            gw("g4^-1 g3 g4", Mode::Free)
        );
    }

    #[test]
    fn beta_fixes_g3() {
        assert_eq!(
            act_on_loop(&beta(), &gw("g3", Mode::Free), Mode::Free).unwrap(),
            gw("g3", Mode::Free)
        );
        let w = gw("g1 g2^-1 g4", Mode::Free);
        assert_eq!(
            act_on_loop(&BraidWord::identity(4), &w, Mode::Free).unwrap(),
            w
        );
    }

    #[test]
    fn reflection_on_loops() {
        assert_eq!(
            reflect_loop(&gw("g3", Mode::Involutory)).unwrap(),
            gw("g2", Mode::Involutory)
        );
        assert_eq!(
            reflect_loop(&gw("g1 g2 g3 g4", Mode::Involutory)).unwrap(),
            gw("g4 g3 g2 g1", Mode::Involutory)
        );
        assert!(reflect_loop(&gw("e", Mode::Involutory))
            .unwrap()
            .is_identity());
        assert!(matches!(
            reflect_loop(&gw("g1", Mode::Free)),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn r_beta_images() {
        let b = beta();
        let expect = [
            "g4 g3 g4 g2 g1 g2 g4 g2 g1 g2 g4 g3 g4",
            "g4 g3 g4 g2 g1 g2 g4 g2 g1 g2 g4 g2 g1 g2 g4 g3 g4",
            "g2",
            "g2 g4 g3 g4 g2",
        ];
        for (i, e) in expect.iter().enumerate() {
            assert_eq!(
                r_beta_gamma(&b, i + 1).unwrap().to_string(),
                *e,
                "i = {}",
                i + 1
            );
        }
        assert!(r_beta_gamma(&b, 5).is_err());
    }

    #[test]
    fn beta_on_paths() {
        let b = beta();
        let alpha = b.loop_alphabet();
        let expect = [
            ("g1 g2 g1 g3 g4 g3", 1),
            ("g1 g2 g1 g3 g4 g3 g1 g3 g4", 4),
            ("e", 3),
            ("g3 g1", 2),
        ];
        for (j, (prefix, term)) in expect.iter().enumerate() {
            let p = act_on_path(&b, &BasedPath::rho(&alpha, j + 1, Mode::Involutory)).unwrap();
            assert_eq!(p.prefix.to_string(), *prefix, "rho{}", j + 1);
            assert_eq!(p.terminal, *term);
        }
    }

    #[test]
    fn reflection_on_paths() {
        let alpha = Alphabet::gammas(4);
        let p = BasedPath::rho(&alpha, 3, Mode::Involutory);
        assert_eq!(
            reflect_path(&p).unwrap(),
            BasedPath::rho(&alpha, 2, Mode::Involutory)
        );
        let q = BasedPath {
            prefix: gw("g3 g1", Mode::Involutory),
            terminal: 2,
        };
        let r = reflect_path(&q).unwrap();
        assert_eq!((r.prefix.to_string(), r.terminal), ("g2 g4".to_string(), 3));
        let one = BasedPath::rho(&alpha, 1, Mode::Involutory);
        assert_eq!(reflect_path(&one).unwrap().terminal, 4);
    }

    #[test]
    fn strand_permutations() {
        let b = beta();
        assert_eq!(induced_permutation(&b, false).to_string(), "(2 4)");
        assert_eq!(induced_permutation(&b, true).to_string(), "(1 4 3 2)");
        assert!(induced_permutation(&BraidWord::identity(4), false).is_identity());
    }
}
