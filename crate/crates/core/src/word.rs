//! Words in free groups and in free products of order-two groups.
//!
//! A [`Word`] is always stored reduced. In [`Mode::Free`] no letter sits next
//! to its inverse; in [`Mode::Involutory`] every letter is its own inverse, so
//! all letters carry a positive sign and no two neighbours coincide.

use std::fmt;
use std::ops::Add;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, ParseError, Result};

/// Identifier reserved for the identity word in the text grammar.
pub const IDENTITY_TOKEN: &str = "e";

/// Upper bound on the number of letters a parsed word may expand to.
const MAX_PARSED_LETTERS: usize = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Free,
    Involutory,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Free => f.write_str("free"),
            Mode::Involutory => f.write_str("involutory"),
        }
    }
}

/// An ordered set of generator names.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    names: Vec<String>,
}

pub(crate) fn is_generator_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => chars.all(|c| c.is_ascii_alphanumeric()),
        _ => false,
    }
}

impl Alphabet {
    pub fn new<I, S>(names: I) -> Result<Arc<Alphabet>>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut out: Vec<String> = Vec::new();
        for name in names {
            let name = name.into();
            if !is_generator_name(&name) || name == IDENTITY_TOKEN {
                return Err(Error::InvalidGeneratorName(name));
            }
            if out.contains(&name) {
                return Err(Error::DuplicateGenerator(name));
            }
            out.push(name);
        }
        Ok(Arc::new(Alphabet { names: out }))
    }

    /// The loop alphabet `g1 .. gn`.
    pub fn gammas(n: usize) -> Arc<Alphabet> {
        Arc::new(Alphabet {
            names: (1..=n).map(|i| format!("g{i}")).collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, index: usize) -> &str {
        &self.names[index]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

/// A generator or its inverse, addressed by index into an [`Alphabet`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        Letter { generator, inverse }
    }

    pub fn pos(generator: usize) -> Self {
        Letter::new(generator, false)
    }

    pub fn neg(generator: usize) -> Self {
        Letter::new(generator, true)
    }

    pub fn inv(self) -> Self {
        Letter::new(self.generator, !self.inverse)
    }

    pub fn sign(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }
}

/// Single left-to-right stack pass.
fn reduce_letters(letters: impl IntoIterator<Item = Letter>, mode: Mode) -> Vec<Letter> {
    let mut stack: Vec<Letter> = Vec::new();
    for mut letter in letters {
        if mode == Mode::Involutory {
            letter.inverse = false;
        }
        let cancels = match (stack.last(), mode) {
            (Some(top), Mode::Free) => *top == letter.inv(),
            (Some(top), Mode::Involutory) => *top == letter,
            (None, _) => false,
        };
        if cancels {
            stack.pop();
        } else {
            stack.push(letter);
        }
    }
    stack
}

/// A reduced group word. Immutable; every operation returns a new word.
#[derive(Debug, Clone)]
pub struct Word {
    alphabet: Arc<Alphabet>,
    mode: Mode,
    letters: Vec<Letter>,
}

impl PartialEq for Word {
    fn eq(&self, other: &Self) -> bool {
        self.mode == other.mode
            && self.letters == other.letters
            && same_alphabet(&self.alphabet, &other.alphabet)
    }
}

impl Eq for Word {}

pub(crate) fn same_alphabet(a: &Arc<Alphabet>, b: &Arc<Alphabet>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl Word {
    pub fn identity(alphabet: &Arc<Alphabet>, mode: Mode) -> Word {
        Word {
            alphabet: Arc::clone(alphabet),
            mode,
            letters: Vec::new(),
        }
    }

    pub fn generator(alphabet: &Arc<Alphabet>, index: usize, mode: Mode) -> Result<Word> {
        Word::reduce(alphabet, mode, [Letter::pos(index)])
    }

    /// Reduces an arbitrary letter sequence into normal form.
    pub fn reduce(
        alphabet: &Arc<Alphabet>,
        mode: Mode,
        letters: impl IntoIterator<Item = Letter>,
    ) -> Result<Word> {
        let letters: Vec<Letter> = letters.into_iter().collect();
        if let Some(bad) = letters.iter().find(|l| l.generator >= alphabet.len()) {
            return Err(Error::UnknownGenerator(format!("#{}", bad.generator)));
        }
        Ok(Word {
            alphabet: Arc::clone(alphabet),
            mode,
            letters: reduce_letters(letters, mode),
        })
    }

    /// Parses `src` with the word grammar and reduces the result.
    pub fn parse(src: &str, alphabet: &Arc<Alphabet>, mode: Mode) -> Result<Word> {
        let letters = parse_letters(src, alphabet)?;
        Ok(Word {
            alphabet: Arc::clone(alphabet),
            mode,
            letters: reduce_letters(letters, mode),
        })
    }

    /// Parses a word from generator names, e.g. `["g1", "g2"]`.
    pub fn from_names(names: &[&str], alphabet: &Arc<Alphabet>, mode: Mode) -> Result<Word> {
        let letters = names
            .iter()
            .map(|n| {
                alphabet
                    .index_of(n)
                    .map(Letter::pos)
                    .ok_or_else(|| Error::UnknownGenerator(n.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        Word::reduce(alphabet, mode, letters)
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    fn check_compatible(&self, other: &Word) -> Result<()> {
        if !same_alphabet(&self.alphabet, &other.alphabet) {
            return Err(Error::AlphabetMismatch);
        }
        if self.mode != other.mode {
            return Err(Error::ModeMismatch(self.mode, other.mode));
        }
        Ok(())
    }

    pub fn multiply(&self, other: &Word) -> Result<Word> {
        self.check_compatible(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Word) -> Word {
        Word {
            alphabet: Arc::clone(&self.alphabet),
            mode: self.mode,
            letters: reduce_letters(
                self.letters.iter().chain(other.letters.iter()).copied(),
                self.mode,
            ),
        }
    }

    pub fn invert(&self) -> Word {
        let letters = self
            .letters
            .iter()
            .rev()
            .map(|l| match self.mode {
                Mode::Free => l.inv(),
                Mode::Involutory => *l,
            })
            .collect();
        Word {
            alphabet: Arc::clone(&self.alphabet),
            mode: self.mode,
            letters,
        }
    }

    pub fn pow(&self, exponent: i64) -> Word {
        let base = if exponent < 0 {
            self.invert()
        } else {
            self.clone()
        };
        let mut out = Word::identity(&self.alphabet, self.mode);
        for _ in 0..exponent.unsigned_abs() {
            out = out.mul_unchecked(&base);
        }
        out
    }

    /// `conjugator * self * conjugator^-1`.
    pub fn conjugate_by(&self, conjugator: &Word) -> Result<Word> {
        conjugator.multiply(self)?.multiply(&conjugator.invert())
    }

    /// Maps the word into another mode over the same alphabet.
    pub fn to_mode(&self, mode: Mode) -> Word {
        Word {
            alphabet: Arc::clone(&self.alphabet),
            mode,
            letters: reduce_letters(self.letters.iter().copied(), mode),
        }
    }

    /// Applies the homomorphism sending generator `i` to `images[i]`.
    pub fn substitute(&self, images: &[Word]) -> Result<Word> {
        let Some(first) = images.first() else {
            return match self.letters.first() {
                Some(l) => Err(Error::MissingImage(self.alphabet.name(l.generator).into())),
                None => Ok(self.clone()),
            };
        };
        for image in &images[1..] {
            first.check_compatible(image)?;
        }
        let mut letters = Vec::new();
        for l in &self.letters {
            let image = images
                .get(l.generator)
                .ok_or_else(|| Error::MissingImage(self.alphabet.name(l.generator).into()))?;
            if l.inverse {
                letters.extend(image.invert().letters);
            } else {
                letters.extend(image.letters.iter().copied());
            }
        }
        Ok(Word {
            alphabet: Arc::clone(&first.alphabet),
            mode: first.mode,
            letters: reduce_letters(letters, first.mode),
        })
    }

    /// Relabels generator `i` as `mapping[i]` within the same alphabet.
    pub fn relabel(&self, mapping: impl Fn(usize) -> usize) -> Result<Word> {
        let letters: Vec<Letter> = self
            .letters
            .iter()
            .map(|l| Letter::new(mapping(l.generator), l.inverse))
            .collect();
        Word::reduce(&self.alphabet, self.mode, letters)
    }

    pub fn exponent_vector(&self) -> Result<ExponentVector> {
        if self.mode == Mode::Involutory {
            return Err(Error::Unsupported(
                "exponent sums of involutory words are only defined mod 2",
            ));
        }
        let mut sums = vec![0i64; self.alphabet.len()];
        for l in &self.letters {
            sums[l.generator] += l.sign();
        }
        Ok(ExponentVector(sums))
    }

    /// Highest generator index used, if any.
    pub fn max_generator(&self) -> Option<usize> {
        self.letters.iter().map(|l| l.generator).max()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str(IDENTITY_TOKEN);
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str(self.alphabet.name(l.generator))?;
            if l.inverse {
                f.write_str("^-1")?;
            }
        }
        Ok(())
    }
}

/// Signed exponent sums, one entry per generator.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExponentVector(pub Vec<i64>);

impl ExponentVector {
    pub fn zero(len: usize) -> Self {
        ExponentVector(vec![0; len])
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }
}

impl Add for &ExponentVector {
    type Output = ExponentVector;

    fn add(self, rhs: &ExponentVector) -> ExponentVector {
        assert_eq!(
            self.0.len(),
            rhs.0.len(),
            "exponent vectors of different length"
        );
        ExponentVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

// Grammar:
//   word := term {term} | "e"
//   term := atom ["^" int]
//   atom := gen | "(" word ")"
//   gen  := letter {letter|digit}
//   int  := ["-"] digit {digit}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    alphabet: &'a Alphabet,
}

impl<'a> Parser<'a> {
    fn err(&self, at: usize, msg: impl Into<String>) -> ParseError {
        ParseError::new(1, at + 1, msg)
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn ident(&mut self) -> &'a str {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).expect("ascii")
    }

    fn word(&mut self, nested: bool) -> std::result::Result<Vec<Letter>, ParseError> {
        self.skip_ws();
        let start = self.pos;
        if self.peek().is_some_and(|c| c.is_ascii_alphabetic()) {
            let save = self.pos;
            let id = self.ident();
            if id == IDENTITY_TOKEN {
                self.skip_ws();
                return match self.peek() {
                    None if !nested => Ok(Vec::new()),
                    Some(b')') if nested => Ok(Vec::new()),
                    _ => Err(self.err(start, "the identity `e` must stand alone")),
                };
            }
            self.pos = save;
        }
        let mut letters = Vec::new();
        loop {
            self.skip_ws();
            match self.peek() {
                None => break,
                Some(b')') if nested => break,
                _ => {}
            }
            let mut term = self.term()?;
            letters.append(&mut term);
            if letters.len() > MAX_PARSED_LETTERS {
                return Err(self.err(start, "word expands to too many letters"));
            }
        }
        if letters.is_empty() && self.pos == start {
            return Err(self.err(self.pos, "expected a word"));
        }
        Ok(letters)
    }

    fn term(&mut self) -> std::result::Result<Vec<Letter>, ParseError> {
        let at = self.pos;
        let atom = match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.word(true)?;
                self.skip_ws();
                if self.peek() != Some(b')') {
                    return Err(self.err(self.pos, "expected `)`"));
                }
                self.pos += 1;
                inner
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let name = self.ident();
                if name == IDENTITY_TOKEN {
                    return Err(self.err(at, "the identity `e` must stand alone"));
                }
                match self.alphabet.index_of(name) {
                    Some(i) => vec![Letter::pos(i)],
                    None => return Err(self.err(at, format!("unknown generator `{name}`"))),
                }
            }
            Some(c) => {
                return Err(self.err(at, format!("unexpected character `{}`", c as char)));
            }
            None => return Err(self.err(at, "unexpected end of input")),
        };
        self.skip_ws();
        if self.peek() != Some(b'^') {
            return Ok(atom);
        }
        self.pos += 1;
        let exponent = self.int()?;
        let base: Vec<Letter> = if exponent < 0 {
            atom.iter().rev().map(|l| l.inv()).collect()
        } else {
            atom
        };
        let reps = exponent.unsigned_abs() as usize;
        if base.len().saturating_mul(reps) > MAX_PARSED_LETTERS {
            return Err(self.err(at, "word expands to too many letters"));
        }
        Ok(base.repeat(reps))
    }

    fn int(&mut self) -> std::result::Result<i64, ParseError> {
        let start = self.pos;
        if self.peek() == Some(b'-') {
            self.pos += 1;
        }
        let digits = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == digits {
            return Err(self.err(self.pos, "expected an integer exponent"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .expect("ascii")
            .parse()
            .map_err(|_| self.err(start, "exponent out of range"))
    }
}

/// Parses `src` into an unreduced letter sequence over `alphabet`.
pub fn parse_letters(
    src: &str,
    alphabet: &Alphabet,
) -> std::result::Result<Vec<Letter>, ParseError> {
    if let Some((i, c)) = src.char_indices().find(|(_, c)| !c.is_ascii()) {
        return Err(ParseError::new(
            1,
            i + 1,
            format!("unexpected character `{c}`"),
        ));
    }
    let mut p = Parser {
        src: src.as_bytes(),
        pos: 0,
        alphabet,
    };
    let letters = p.word(false)?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err(p.pos, "unexpected `)`"));
    }
    Ok(letters)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g4() -> Arc<Alphabet> {
        Alphabet::gammas(4)
    }

    fn w(src: &str, mode: Mode) -> Word {
        Word::parse(src, &g4(), mode).unwrap()
    }

    #[test]
    fn free_cancellation() {
        assert_eq!(w("g1 g2 g2^-1 g3", Mode::Free).to_string(), "g1 g3");
    }

    #[test]
    fn involutory_square_vanishes() {
        assert!(w("g2 g2", Mode::Involutory).is_identity());
    }

    #[test]
    fn involutory_long_cancellation() {
        let word = w("g1 g2 g1 g3 g4 g3 g3 g4 g3 g1 g2 g1", Mode::Involutory);
        assert!(word.is_identity());
    }

    #[test]
    fn multiply_and_invert() {
        let a = w("g1 g2", Mode::Free);
        let b = w("g2^-1 g1^-1", Mode::Free);
        assert!(a.multiply(&b).unwrap().is_identity());
        assert_eq!(
            w("g1 g2 g3", Mode::Involutory).invert().to_string(),
            "g3 g2 g1"
        );
        let d1 = w("g4 g3 g4 g2 g1 g2", Mode::Involutory);
        let d4 = w("g2 g4", Mode::Involutory);
        assert_eq!(d1.multiply(&d4).unwrap().to_string(), "g4 g3 g4 g2 g1 g4");
    }

    #[test]
    fn multiply_rejects_mixed_inputs() {
        let a = w("g1", Mode::Free);
        let b = w("g1", Mode::Involutory);
        assert!(matches!(a.multiply(&b), Err(Error::ModeMismatch(..))));
        let other = Alphabet::new(["a", "b"]).unwrap();
        let c = Word::parse("a", &other, Mode::Free).unwrap();
        assert!(matches!(a.multiply(&c), Err(Error::AlphabetMismatch)));
    }

    #[test]
    fn substitution() {
        let ab = Alphabet::new(["g1", "g2"]).unwrap();
        let target = Alphabet::new(["a"]).unwrap();
        let a = Word::parse("a", &target, Mode::Free).unwrap();
        let word = Word::parse("g1 g2", &ab, Mode::Free).unwrap();
        assert!(word
            .substitute(&[a.clone(), a.invert()])
            .unwrap()
            .is_identity());

        let alpha = g4();
        let images: Vec<Word> = (0..4)
            .map(|i| Word::generator(&alpha, 3 - i, Mode::Free).unwrap())
            .collect();
        assert_eq!(
            w("g3", Mode::Free).substitute(&images).unwrap().to_string(),
            "g2"
        );

        let inv: Vec<Word> = (0..4)
            .map(|i| Word::generator(&alpha, i, Mode::Involutory).unwrap())
            .collect();
        assert!(w("g1 g1", Mode::Free)
            .substitute(&inv)
            .unwrap()
            .is_identity());
    }

    #[test]
    fn substitution_missing_image() {
        let a = w("g1 g3", Mode::Free);
        let img = vec![w("g2", Mode::Free)];
        assert!(matches!(a.substitute(&img), Err(Error::MissingImage(n)) if n == "g3"));
    }

    #[test]
    fn exponent_vectors() {
        assert_eq!(
            w("g1 g2 g1^-1", Mode::Free).exponent_vector().unwrap().0,
            vec![0, 1, 0, 0]
        );
        assert_eq!(
            w("e", Mode::Free).exponent_vector().unwrap(),
            ExponentVector::zero(4)
        );
        assert_eq!(
            w("g1 g2 g1 g3 g4 g3", Mode::Free)
                .exponent_vector()
                .unwrap()
                .0,
            vec![2, 1, 2, 1]
        );
        assert!(matches!(
            w("g1", Mode::Involutory).exponent_vector(),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn grammar_powers_and_groups() {
        let alpha = Alphabet::new(["a1", "a2"]).unwrap();
        let lambda = Word::parse("(a2 a1)^12 a1^-3", &alpha, Mode::Free).unwrap();
        // the trailing a1 of the power cancels one a1^-1
        assert_eq!(lambda.len(), 25);
        assert_eq!(lambda.exponent_vector().unwrap().0, vec![9, 12]);
        let inv = Word::parse("(a1 a2)^-1", &alpha, Mode::Free).unwrap();
        assert_eq!(inv.to_string(), "a2^-1 a1^-1");
        assert!(Word::parse("(e)^5", &alpha, Mode::Free)
            .unwrap()
            .is_identity());
    }

    #[test]
    fn grammar_errors_carry_columns() {
        let alpha = g4();
        let err = parse_letters("g1 g9", &alpha).unwrap_err();
        assert_eq!((err.line, err.column), (1, 4));
        let err = parse_letters("g1 (g2", &alpha).unwrap_err();
        assert_eq!(err.column, 7);
        let err = parse_letters("g1^", &alpha).unwrap_err();
        assert_eq!(err.column, 4);
        assert!(parse_letters("g1 e", &alpha).is_err());
        assert!(parse_letters("", &alpha).is_err());
        assert!(parse_letters("g1)", &alpha).is_err());
    }

    #[test]
    fn alphabet_validation() {
        assert!(matches!(
            Alphabet::new(["e"]),
            Err(Error::InvalidGeneratorName(_))
        ));
        assert!(matches!(
            Alphabet::new(["1a"]),
            Err(Error::InvalidGeneratorName(_))
        ));
        assert!(matches!(
            Alphabet::new(["a", "a"]),
            Err(Error::DuplicateGenerator(_))
        ));
    }

    #[test]
    fn display_round_trips() {
        for (src, mode) in [
            ("g1 g2^-1 g3", Mode::Free),
            ("g4 g3 g4", Mode::Involutory),
            ("e", Mode::Free),
        ] {
            let word = w(src, mode);
            assert_eq!(w(&word.to_string(), mode), word);
        }
    }
}
