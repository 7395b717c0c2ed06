//! Homomorphisms from finitely presented groups: checking and enumeration.
//!
//! A map on generators defines a homomorphism from the presented group iff
//! every relator maps to the identity. [`search`] enumerates all such maps
//! into `S_n` by backtracking over generators in alphabet order, checking
//! each relator as soon as all of its generators have images.

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::perm::{word_image, Perm};
use crate::presentation::Presentation;
use crate::word::{same_alphabet, Alphabet, Word};

pub const MAX_SEARCH_DEGREE: usize = 6;

/// Group elements usable as homomorphism targets.
pub trait GroupElement: Clone + PartialEq {
    /// `self` followed by `other`.
    fn then_op(&self, other: &Self) -> Self;
    fn inverse_element(&self) -> Self;
    fn is_identity_element(&self) -> bool;
    fn identity_like(&self) -> Self;
}

impl GroupElement for Perm {
    fn then_op(&self, other: &Self) -> Self {
        self.then(other)
    }

    fn inverse_element(&self) -> Self {
        self.inverse()
    }

    fn is_identity_element(&self) -> bool {
        self.is_identity()
    }

    fn identity_like(&self) -> Self {
        Perm::identity(self.degree())
    }
}

impl GroupElement for Word {
    fn then_op(&self, other: &Self) -> Self {
        self.multiply(other)
            .expect("images share one alphabet and mode")
    }

    fn inverse_element(&self) -> Self {
        self.invert()
    }

    fn is_identity_element(&self) -> bool {
        self.is_identity()
    }

    fn identity_like(&self) -> Self {
        Word::identity(self.alphabet(), self.mode())
    }
}

fn check_word_images(images: &[Word]) -> Result<()> {
    if let Some(first) = images.first() {
        for w in &images[1..] {
            if !same_alphabet(w.alphabet(), first.alphabet()) {
                return Err(Error::AlphabetMismatch);
            }
            if w.mode() != first.mode() {
                return Err(Error::ModeMismatch(first.mode(), w.mode()));
            }
        }
    }
    Ok(())
}

/// Left-to-right evaluation of `word` under generator images.
pub fn evaluate<T: GroupElement>(word: &Word, images: &[T], identity: &T) -> Result<T> {
    let mut acc = identity.clone();
    for l in word.letters() {
        let g = images
            .get(l.generator)
            .ok_or_else(|| Error::MissingImage(word.alphabet().name(l.generator).into()))?;
        acc = if l.inverse {
            acc.then_op(&g.inverse_element())
        } else {
            acc.then_op(g)
        };
    }
    Ok(acc)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelatorFailure {
    pub index: usize,
    pub relator: Word,
    pub image: String,
}

/// Outcome of checking that a generator map respects every relator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomCheck {
    pub failure: Option<RelatorFailure>,
}

impl HomCheck {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Checks that `images` (one per generator) kill every relator of `pres`.
pub fn verify_hom<T>(pres: &Presentation, images: &[T]) -> Result<HomCheck>
where
    T: GroupElement + fmt::Display,
{
    if images.len() < pres.generator_count() {
        return Err(Error::MissingImage(
            pres.alphabet().name(images.len()).into(),
        ));
    }
    let Some(first) = images.first() else {
        return Ok(HomCheck { failure: None });
    };
    let identity = first.identity_like();
    for (index, r) in pres.relators().iter().enumerate() {
        let image = evaluate(r, images, &identity)?;
        if !image.is_identity_element() {
            return Ok(HomCheck {
                failure: Some(RelatorFailure {
                    index,
                    relator: r.clone(),
                    image: image.to_string(),
                }),
            });
        }
    }
    Ok(HomCheck { failure: None })
}

/// [`verify_hom`] for images given as words in a common target group.
pub fn verify_hom_words(pres: &Presentation, images: &[Word]) -> Result<HomCheck> {
    check_word_images(images)?;
    verify_hom(pres, images)
}

/// A homomorphism into `S_degree`, given by generator images.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomCandidate {
    pub alphabet: Arc<Alphabet>,
    pub degree: usize,
    pub images: Vec<Perm>,
}

impl HomCandidate {
    pub fn new(alphabet: Arc<Alphabet>, images: Vec<Perm>) -> Result<HomCandidate> {
        if images.len() < alphabet.len() {
            return Err(Error::MissingImage(alphabet.name(images.len()).into()));
        }
        if images.len() > alphabet.len() {
            return Err(Error::AlphabetMismatch);
        }
        let degree = images.first().map_or(0, Perm::degree);
        if let Some(p) = images.iter().find(|p| p.degree() != degree) {
            return Err(Error::DegreeMismatch(degree, p.degree()));
        }
        Ok(HomCandidate {
            alphabet,
            degree,
            images,
        })
    }

    pub fn image_of(&self, word: &Word) -> Result<Perm> {
        if word.is_identity() {
            return Ok(Perm::identity(self.degree));
        }
        word_image(word, &self.images)
    }
}

impl fmt::Display for HomCandidate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.images.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}={}", self.alphabet.name(i), p)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct SearchSpec {
    pub presentation: Presentation,
    pub degree: usize,
    pub restrict_to_involutions: bool,
    pub require_nontrivial: Option<Word>,
    pub require_order_two: Vec<Word>,
}

impl SearchSpec {
    pub fn new(presentation: Presentation, degree: usize) -> SearchSpec {
        SearchSpec {
            presentation,
            degree,
            restrict_to_involutions: false,
            require_nontrivial: None,
            require_order_two: Vec::new(),
        }
    }
}

enum Constraint {
    Relator(Word),
    Nontrivial(Word),
    OrderTwo(Word),
}

impl Constraint {
    fn word(&self) -> &Word {
        match self {
            Constraint::Relator(w) | Constraint::Nontrivial(w) | Constraint::OrderTwo(w) => w,
        }
    }

    fn holds(&self, images: &[Perm], degree: usize) -> bool {
        let w = self.word();
        let image = if w.is_identity() {
            Perm::identity(degree)
        } else {
            word_image(w, images).expect("constraint generators are assigned")
        };
        match self {
            Constraint::Relator(_) => image.is_identity(),
            Constraint::Nontrivial(_) => !image.is_identity(),
            Constraint::OrderTwo(_) => image.order() == 2,
        }
    }
}

struct Searcher {
    choices: Vec<Perm>,
    // constraints[k]: checked once generators 0..=k are assigned
    constraints: Vec<Vec<Constraint>>,
    upfront: Vec<Constraint>,
    degree: usize,
    generators: usize,
}

impl Searcher {
    fn dfs(&self, images: &mut Vec<Perm>, out: &mut Vec<Vec<Perm>>) {
        let level = images.len();
        if level == self.generators {
            out.push(images.clone());
            return;
        }
        for p in &self.choices {
            images.push(p.clone());
            if self.constraints[level]
                .iter()
                .all(|c| c.holds(images, self.degree))
            {
                self.dfs(images, out);
            }
            images.pop();
        }
    }
}

/// All homomorphisms to `S_degree` satisfying the search constraints, in
/// lexicographic order of image tuples.
pub fn search(spec: &SearchSpec) -> Result<Vec<HomCandidate>> {
    if spec.degree > MAX_SEARCH_DEGREE {
        return Err(Error::DegreeGuard(spec.degree, MAX_SEARCH_DEGREE));
    }
    let pres = &spec.presentation;
    let alphabet = pres.alphabet();
    let mut all: Vec<Constraint> = pres
        .relators()
        .iter()
        .cloned()
        .map(Constraint::Relator)
        .collect();
    if let Some(w) = &spec.require_nontrivial {
        all.push(Constraint::Nontrivial(w.clone()));
    }
    all.extend(
        spec.require_order_two
            .iter()
            .cloned()
            .map(Constraint::OrderTwo),
    );
    for c in &all {
        if !same_alphabet(c.word().alphabet(), alphabet) {
            return Err(Error::AlphabetMismatch);
        }
    }

    let generators = alphabet.len();
    let mut constraints: Vec<Vec<Constraint>> = (0..generators).map(|_| Vec::new()).collect();
    let mut upfront = Vec::new();
    for c in all {
        match c.word().max_generator() {
            Some(k) => constraints[k].push(c),
            None => upfront.push(c),
        }
    }
    let choices = if spec.restrict_to_involutions {
        Perm::involutions(spec.degree)
    } else {
        Perm::all(spec.degree)
    };
    let searcher = Searcher {
        choices,
        constraints,
        upfront,
        degree: spec.degree,
        generators,
    };
    if !searcher.upfront.iter().all(|c| c.holds(&[], spec.degree)) {
        return Ok(Vec::new());
    }
    let tuples: Vec<Vec<Perm>> = if generators == 0 {
        vec![Vec::new()]
    } else {
        searcher
            .choices
            .par_iter()
            .map(|first| {
                let mut images = vec![first.clone()];
                let mut out = Vec::new();
                if searcher.constraints[0]
                    .iter()
                    .all(|c| c.holds(&images, spec.degree))
                {
                    searcher.dfs(&mut images, &mut out);
                }
                out
            })
            .collect::<Vec<_>>()
            .into_iter()
            .flatten()
            .collect()
    };
    Ok(tuples
        .into_iter()
        .map(|images| HomCandidate {
            alphabet: Arc::clone(alphabet),
            degree: spec.degree,
            images,
        })
        .collect())
}

/// Number of homomorphisms to `S_n`, by unpruned enumeration of all tuples.
pub fn count_all_homs(pres: &Presentation, n: usize) -> Result<u64> {
    if n > MAX_SEARCH_DEGREE {
        return Err(Error::DegreeGuard(n, MAX_SEARCH_DEGREE));
    }
    let all = Perm::all(n);
    let k = pres.generator_count();
    let mut odometer = vec![0usize; k];
    let mut count = 0u64;
    loop {
        let images: Vec<Perm> = odometer.iter().map(|&i| all[i].clone()).collect();
        let ok = pres.relators().iter().all(|r| {
            r.is_identity()
                || word_image(r, &images)
                    .map(|p| p.is_identity())
                    .unwrap_or(false)
        });
        if ok {
            count += 1;
        }
        let mut pos = 0;
        loop {
            if pos == k {
                return Ok(count);
            }
            odometer[pos] += 1;
            if odometer[pos] < all.len() {
                break;
            }
            odometer[pos] = 0;
            pos += 1;
        }
    }
}
