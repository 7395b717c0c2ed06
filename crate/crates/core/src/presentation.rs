//! Finite presentations and their line-oriented file format.
//!
//! ```text
//! # comment
//! gens: a b
//! rel: a^2
//! rel: (a b)^3
//! ```

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, ParseError, Result};
use crate::word::{same_alphabet, Alphabet, Mode, Word};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    alphabet: Arc<Alphabet>,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new(alphabet: Arc<Alphabet>, relators: Vec<Word>) -> Result<Presentation> {
        for r in &relators {
            if !same_alphabet(r.alphabet(), &alphabet) {
                return Err(Error::AlphabetMismatch);
            }
            if r.mode() != Mode::Free {
                return Err(Error::ModeMismatch(Mode::Free, r.mode()));
            }
        }
        Ok(Presentation { alphabet, relators })
    }

    /// Builds a presentation from generator names and relator strings.
    pub fn from_strs(gens: &[&str], relators: &[&str]) -> Result<Presentation> {
        let alphabet = Alphabet::new(gens.iter().copied())?;
        let relators = relators
            .iter()
            .map(|r| Word::parse(r, &alphabet, Mode::Free))
            .collect::<Result<Vec<_>>>()?;
        Presentation::new(alphabet, relators)
    }

    pub fn parse(src: &str) -> Result<Presentation> {
        let mut alphabet: Option<Arc<Alphabet>> = None;
        let mut relators = Vec::new();
        for (idx, raw) in src.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("");
            if line.trim().is_empty() {
                continue;
            }
            let indent = line.len() - line.trim_start().len();
            let body = line.trim_start();
            let err = |col: usize, msg: &str| Error::Parse(ParseError::new(line_no, col, msg));
            if let Some(rest) = body.strip_prefix("gens:") {
                if alphabet.is_some() {
                    return Err(err(indent + 1, "duplicate `gens:` line"));
                }
                let names: Vec<&str> = rest.split_whitespace().collect();
                for n in &names {
                    if !crate::word::is_generator_name(n) || *n == crate::word::IDENTITY_TOKEN {
                        let col = indent + 5 + rest.find(n).unwrap_or(0) + 1;
                        return Err(err(col, &format!("invalid generator name `{n}`")));
                    }
                }
                alphabet = Some(Alphabet::new(names).map_err(|e| {
                    Error::Parse(ParseError::new(line_no, indent + 1, e.to_string()))
                })?);
            } else if let Some(rest) = body.strip_prefix("rel:") {
                let Some(alpha) = &alphabet else {
                    return Err(err(indent + 1, "`rel:` before `gens:`"));
                };
                let letters = crate::word::parse_letters(rest, alpha)
                    .map_err(|e| e.relocate(line_no, indent + 4))?;
                relators.push(Word::reduce(alpha, Mode::Free, letters)?);
            } else {
                return Err(err(indent + 1, "expected `gens:` or `rel:`"));
            }
        }
        let alphabet =
            alphabet.ok_or_else(|| Error::Parse(ParseError::new(1, 1, "missing `gens:` line")))?;
        Presentation::new(alphabet, relators)
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn generator_count(&self) -> usize {
        self.alphabet.len()
    }

    /// Parses a word over this presentation's generators.
    pub fn word(&self, src: &str) -> Result<Word> {
        Word::parse(src, &self.alphabet, Mode::Free)
    }

    /// Appends relators; no simplification.
    pub fn quotient(&self, extra: &[Word]) -> Result<Presentation> {
        let mut relators = self.relators.clone();
        relators.extend(extra.iter().map(|w| w.to_mode(Mode::Free)));
        Presentation::new(Arc::clone(&self.alphabet), relators)
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "gens: {}", self.alphabet.names().join(" "))?;
        for r in &self.relators {
            writeln!(f, "rel: {r}")?;
        }
        Ok(())
    }
}

/// Knot group of a torus knot with its peripheral words.
#[derive(Debug, Clone)]
pub struct TorusKnot {
    pub presentation: Presentation,
    pub meridian: Word,
    pub longitude: Word,
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// `<a1, a2 | a1^p a2^q>` with meridian `a1^-1 a2^-1` and longitude
/// `(a2 a1)^(pq) a1^-p`.
///
/// Only the `(3, 4)` instance is backed by a geometric derivation; other
/// parameters reuse the same formula. In homology the meridian maps to
/// `p - q` and the longitude to `pq(q - p - 1)` times a generator, so the
/// words are peripheral-looking only when `q = p + 1`.
pub fn torus_knot_presentation(p: i64, q: i64) -> Result<TorusKnot> {
    if p < 2 || q < 2 || gcd(p, q) != 1 {
        return Err(Error::InvalidTorusKnot(p, q));
    }
    let presentation = Presentation::from_strs(&["a1", "a2"], &[&format!("a1^{p} a2^{q}")])?;
    let meridian = presentation.word("a1^-1 a2^-1")?;
    let longitude = presentation.word(&format!("(a2 a1)^{} a1^-{p}", p * q))?;
    Ok(TorusKnot {
        presentation,
        meridian,
        longitude,
    })
}
