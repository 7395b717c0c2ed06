//! Finite-quotient certificates for braids, and an affine certificate of
//! infinite order.
//!
//! For a braid `b` on `n` strands let `rb` be the reflection composed with
//! `b`. The *key quotient* is the free product of `n` copies of `C2` on
//! `g1..gn` modulo `g_i · rb(g_i)` for each `i`. Imposing the relation only
//! on generators is enough: in that quotient `rb` fixes every generator, so
//! the endomorphism it induces is the identity and `g^-1 rb(g)` dies for
//! every element `g`.
//!
//! A certificate is a homomorphism from the key quotient to `S_d` under which
//! the boundary word `u = g1 g2 ... gn` stays nontrivial, together with the
//! image checks on the gluing words `f` and `a = g1`.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::braid::{
    act_on_path_in, induced_permutation, r_beta_gamma, reflect_path, BasedPath, BraidWord,
};
use crate::error::{Error, Result};
use crate::hom::{search, verify_hom, HomCandidate, SearchSpec, MAX_SEARCH_DEGREE};
use crate::perm::Perm;
use crate::presentation::Presentation;
use crate::word::{same_alphabet, Alphabet, Letter, Mode, Word};

/// `<g1..gn | g_i^2, g_i · rb(g_i)>` as a free presentation.
pub fn key_quotient(b: &BraidWord) -> Result<Presentation> {
    let alphabet = b.loop_alphabet();
    let mut relators = Vec::new();
    for i in 0..b.strands() {
        relators.push(Word::reduce(
            &alphabet,
            Mode::Free,
            [Letter::pos(i), Letter::pos(i)],
        )?);
    }
    for i in 0..b.strands() {
        let image = r_beta_gamma(b, i + 1)?;
        let mut letters = vec![Letter::pos(i)];
        letters.extend_from_slice(image.letters());
        relators.push(Word::reduce(&alphabet, Mode::Free, letters)?);
    }
    Presentation::new(alphabet, relators)
}

/// The boundary word `g1 g2 ... gn` in the involutory quotient.
pub fn boundary_word(alphabet: &Arc<Alphabet>) -> Word {
    Word::reduce(
        alphabet,
        Mode::Involutory,
        (0..alphabet.len()).map(Letter::pos),
    )
    .expect("generators of the alphabet")
}

/// Loop words of the connecting paths: the prefix of `r(b(rho_i))` for each `i`.
pub fn delta_words(b: &BraidWord) -> Result<Vec<Word>> {
    let alphabet = b.loop_alphabet();
    (1..=b.strands())
        .map(|i| {
            let rho = BasedPath::rho(&alphabet, i, Mode::Involutory);
            Ok(reflect_path(&act_on_path_in(b, &rho, Mode::Involutory)?)?.prefix)
        })
        .collect()
}

/// Orbit of strand 1 under `rb`, if `rb` is transitive.
pub fn transitive_orbit(b: &BraidWord) -> Option<Vec<usize>> {
    let rb = induced_permutation(b, true);
    let mut orbit = vec![1];
    let mut x = rb.apply(1);
    while x != 1 {
        orbit.push(x);
        x = rb.apply(x);
    }
    (orbit.len() == b.strands()).then_some(orbit)
}

/// Product of the delta words along the `rb`-orbit of strand 1, or `None`
/// when `rb` is not transitive.
pub fn f_word(b: &BraidWord) -> Result<Option<Word>> {
    let Some(orbit) = transitive_orbit(b) else {
        return Ok(None);
    };
    let deltas = delta_words(b)?;
    let mut acc = Word::identity(&b.loop_alphabet(), Mode::Involutory);
    for i in orbit {
        acc = acc.multiply(&deltas[i - 1])?;
    }
    Ok(Some(acc))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorImage {
    pub generator: String,
    pub image: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionFlags {
    /// `rb` is transitive on the strands.
    pub transitive: bool,
    /// The homomorphism kills `g_i^2` and `g_i · rb(g_i)`.
    pub relators_killed: bool,
    /// Images of `f` and `a` generate a Klein four-group.
    pub klein_four_fa: bool,
    /// The image of `u` is an involution.
    pub u_nontrivial_involution: bool,
}

impl ConditionFlags {
    pub fn all(&self) -> bool {
        self.transitive
            && self.relators_killed
            && self.klein_four_fa
            && self.u_nontrivial_involution
    }
}

/// The outcome of checking one candidate homomorphism against a braid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BraidCertificate {
    pub braid: BraidWord,
    pub hom: HomCandidate,
    pub f_word: Option<Word>,
    pub u_word: Word,
    pub a_word: Word,
    pub f_image: Option<Perm>,
    pub a_image: Perm,
    pub u_image: Perm,
    pub flags: ConditionFlags,
}

impl BraidCertificate {
    pub fn is_valid(&self) -> bool {
        self.flags.all()
    }

    pub fn to_json(&self) -> CertificateJson {
        CertificateJson {
            braid: self.braid.to_string(),
            degree: self.hom.degree,
            images: self
                .hom
                .images
                .iter()
                .enumerate()
                .map(|(i, p)| GeneratorImage {
                    generator: self.hom.alphabet.name(i).to_string(),
                    image: p.to_string(),
                })
                .collect(),
            flags: self.flags,
            valid: self.is_valid(),
            f_word: self.f_word.as_ref().map(Word::to_string),
            u_word: self.u_word.to_string(),
            a_word: self.a_word.to_string(),
        }
    }
}

impl fmt::Display for BraidCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "braid: {}", self.braid)?;
        writeln!(
            f,
            "status: {}",
            if self.is_valid() { "VALID" } else { "INVALID" }
        )?;
        writeln!(f, "degree: {}", self.hom.degree)?;
        writeln!(f, "images: {}", self.hom)?;
        match (&self.f_word, &self.f_image) {
            (Some(w), Some(p)) => writeln!(f, "f: {w} -> {p}")?,
            _ => writeln!(f, "f: undefined (rb not transitive)")?,
        }
        writeln!(f, "a: {} -> {}", self.a_word, self.a_image)?;
        writeln!(f, "u: {} -> {}", self.u_word, self.u_image)?;
        let fl = &self.flags;
        write!(
            f,
            "transitive={} relators_killed={} klein_four_fa={} u_nontrivial_involution={}",
            fl.transitive, fl.relators_killed, fl.klein_four_fa, fl.u_nontrivial_involution
        )
    }
}

/// Wire form of a [`BraidCertificate`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub braid: String,
    pub degree: usize,
    pub images: Vec<GeneratorImage>,
    pub flags: ConditionFlags,
    pub valid: bool,
    pub f_word: Option<String>,
    pub u_word: String,
    pub a_word: String,
}

fn klein_four(o: &Perm, p: &Perm) -> bool {
    !o.is_identity()
        && !p.is_identity()
        && o != p
        && o.then(o).is_identity()
        && p.then(p).is_identity()
        && o.then(p) == p.then(o)
}

/// Evaluates the certificate conditions for `hom` against braid `b`.
pub fn check_certificate(b: &BraidWord, hom: &HomCandidate) -> Result<BraidCertificate> {
    let alphabet = b.loop_alphabet();
    if !same_alphabet(&hom.alphabet, &alphabet) {
        return Err(Error::AlphabetMismatch);
    }
    let transitive = transitive_orbit(b).is_some();
    let relators_killed = verify_hom(&key_quotient(b)?, &hom.images)?.passed();
    let f = f_word(b)?;
    let a_word = Word::generator(&alphabet, 0, Mode::Involutory)?;
    let u_word = boundary_word(&alphabet);
    let a_image = hom.image_of(&a_word)?;
    let u_image = hom.image_of(&u_word)?;
    let f_image = f.as_ref().map(|w| hom.image_of(w)).transpose()?;
    let klein_four_fa = f_image.as_ref().is_some_and(|o| klein_four(o, &a_image));
    let u_nontrivial_involution = !u_image.is_identity() && u_image.then(&u_image).is_identity();
    Ok(BraidCertificate {
        braid: b.clone(),
        hom: hom.clone(),
        f_word: f,
        u_word,
        a_word,
        f_image,
        a_image,
        u_image,
        flags: ConditionFlags {
            transitive,
            relators_killed,
            klein_four_fa,
            u_nontrivial_involution,
        },
    })
}

/// Every valid certificate in `S_degree`, in search order.
pub fn certificates_at_degree(b: &BraidWord, degree: usize) -> Result<Vec<BraidCertificate>> {
    if transitive_orbit(b).is_none() {
        return Ok(Vec::new());
    }
    let pres = key_quotient(b)?;
    let mut spec = SearchSpec::new(pres, degree);
    spec.restrict_to_involutions = true;
    spec.require_nontrivial = Some(boundary_word(&b.loop_alphabet()).to_mode(Mode::Free));
    let mut out = Vec::new();
    for hom in search(&spec)? {
        let cert = check_certificate(b, &hom)?;
        if cert.is_valid() {
            out.push(cert);
        }
    }
    Ok(out)
}

/// First valid certificate over degrees `2..=degree_max`. `None` means no
/// certificate was found, not that the braid lacks the property.
pub fn certify_braid(b: &BraidWord, degree_max: usize) -> Result<Option<BraidCertificate>> {
    if degree_max > MAX_SEARCH_DEGREE {
        return Err(Error::DegreeGuard(degree_max, MAX_SEARCH_DEGREE));
    }
    for degree in 2..=degree_max {
        if let Some(cert) = certificates_at_degree(b, degree)?.into_iter().next() {
            return Ok(Some(cert));
        }
    }
    Ok(None)
}

/// `x -> sign·x + shift` on the integers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AffineMap {
    pub sign: i64,
    pub shift: i64,
}

impl AffineMap {
    pub const IDENTITY: AffineMap = AffineMap { sign: 1, shift: 0 };

    pub fn reflection(shift: i64) -> AffineMap {
        AffineMap { sign: -1, shift }
    }

    pub fn apply(&self, x: i64) -> i64 {
        self.sign * x + self.shift
    }

    /// `self` first, then `other`.
    pub fn then(&self, other: &AffineMap) -> AffineMap {
        AffineMap {
            sign: other.sign * self.sign,
            shift: other.sign * self.shift + other.shift,
        }
    }

    pub fn inverse(&self) -> AffineMap {
        AffineMap {
            sign: self.sign,
            shift: -self.sign * self.shift,
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == AffineMap::IDENTITY
    }
}

pub const PERIPHERAL_GENERATORS: [&str; 3] = ["u1", "u2", "v"];

/// Alphabet `u1 u2 v` for the peripheral subgroup certificate.
pub fn peripheral_alphabet() -> Arc<Alphabet> {
    Alphabet::new(PERIPHERAL_GENERATORS).expect("valid names")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrderCertificate {
    pub map: AffineMap,
    /// `|shift|` for a translation, 0 for a reflection.
    pub translation_length: u64,
    pub reflection: bool,
}

impl OrderCertificate {
    /// A nonzero translation has infinite order.
    pub fn certifies_infinite_order(&self) -> bool {
        !self.reflection && self.translation_length != 0
    }
}

fn affine_image(name: &str) -> Option<AffineMap> {
    match name {
        "u1" => Some(AffineMap::reflection(0)),
        "u2" => Some(AffineMap::reflection(2)),
        "v" => Some(AffineMap::IDENTITY),
        _ => None,
    }
}

/// Image of `word` under `u1 -> -x`, `u2 -> 2 - x`, `v -> x`.
pub fn infinite_order_certificate(word: &Word) -> Result<OrderCertificate> {
    let mut map = AffineMap::IDENTITY;
    for l in word.letters() {
        let name = word.alphabet().name(l.generator);
        let g = affine_image(name).ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
        map = map.then(&if l.inverse { g.inverse() } else { g });
    }
    let reflection = map.sign == -1;
    Ok(OrderCertificate {
        map,
        translation_length: if reflection {
            0
        } else {
            map.shift.unsigned_abs()
        },
        reflection,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const BETA: &str = "s1^2 s3 s2 s3^-1 s1^-2";

    fn beta() -> BraidWord {
        BraidWord::parse(BETA, 4).unwrap()
    }

    fn psi_bar() -> HomCandidate {
        let images = ["(1 2)", "(2 3)", "(2 3)", "(3 4)"]
            .iter()
            .map(|s| Perm::parse_cycles(s, 4).unwrap())
            .collect();
        HomCandidate::new(Alphabet::gammas(4), images).unwrap()
    }

    #[test]
    fn delta_words_of_beta() {
        let d: Vec<String> = delta_words(&beta())
            .unwrap()
            .iter()
            .map(Word::to_string)
            .collect();
        assert_eq!(
            d,
            [
                "g4 g3 g4 g2 g1 g2",
                "g4 g3 g4 g2 g1 g2 g4 g2 g1",
                "e",
                "g2 g4"
            ]
        );
        for w in delta_words(&BraidWord::identity(4)).unwrap() {
            assert!(w.is_identity());
        }
    }

    #[test]
    fn f_word_of_beta() {
        assert_eq!(transitive_orbit(&beta()), Some(vec![1, 4, 3, 2]));
        let f = f_word(&beta()).unwrap().unwrap();
        assert_eq!(f.to_string(), "g4 g3 g4 g2 g1 g3 g4 g2 g1 g2 g4 g2 g1");
    }

    #[test]
    fn non_transitive_braid_has_no_f_word() {
        let s2 = BraidWord::parse("s2", 4).unwrap();
        // s2 swaps strands 2 and 3, the reflection swaps them back
        assert_eq!(induced_permutation(&s2, true).to_string(), "(1 4)");
        assert!(f_word(&s2).unwrap().is_none());
        assert!(f_word(&BraidWord::identity(4)).unwrap().is_none());
    }

    #[test]
    fn psi_bar_is_valid() {
        let cert = check_certificate(&beta(), &psi_bar()).unwrap();
        assert!(cert.is_valid(), "{cert}");
        assert_eq!(cert.f_image.as_ref().unwrap().to_string(), "(3 4)");
        assert_eq!(cert.a_image.to_string(), "(1 2)");
        assert_eq!(cert.u_image.to_string(), "(1 2)(3 4)");
    }

    #[test]
    fn trivial_hom_is_invalid() {
        let hom = HomCandidate::new(Alphabet::gammas(4), vec![Perm::identity(4); 4]).unwrap();
        let cert = check_certificate(&beta(), &hom).unwrap();
        assert!(cert.flags.relators_killed);
        assert!(!cert.flags.u_nontrivial_involution);
        assert!(!cert.is_valid());
    }

    #[test]
    fn identity_braid_has_no_certificate() {
        let id = BraidWord::identity(4);
        // exhaustive over involution assignments: u always dies in the quotient
        let mut spec = SearchSpec::new(key_quotient(&id).unwrap(), 4);
        spec.restrict_to_involutions = true;
        spec.require_nontrivial = Some(boundary_word(&id.loop_alphabet()).to_mode(Mode::Free));
        assert!(search(&spec).unwrap().is_empty());
        assert!(certify_braid(&id, 4).unwrap().is_none());
        assert!(!check_certificate(&id, &psi_bar()).unwrap().is_valid());
    }

    #[test]
    fn certify_beta_finds_psi_bar() {
        let cert = certify_braid(&beta(), 4).unwrap().expect("certificate");
        assert!(cert.is_valid());
        assert_eq!(cert.hom.degree, 4);
        let all = certificates_at_degree(&beta(), 4).unwrap();
        assert!(all.iter().any(|c| c.hom == psi_bar()));
        assert!(matches!(
            certify_braid(&beta(), 7),
            Err(Error::DegreeGuard(7, 6))
        ));
    }

    #[test]
    fn certificate_json_shape() {
        let cert = check_certificate(&beta(), &psi_bar()).unwrap();
        let json = serde_json::to_value(cert.to_json()).unwrap();
        assert_eq!(json["braid"], BETA);
        assert_eq!(json["images"][0]["image"], "(1 2)");
        assert_eq!(json["flags"]["klein_four_fa"], true);
        assert_eq!(json["u_word"], "g1 g2 g3 g4");
    }

    #[test]
    fn affine_certificates() {
        let alpha = peripheral_alphabet();
        let w = |s: &str| Word::parse(s, &alpha, Mode::Free).unwrap();
        let c = infinite_order_certificate(&w("u1 u2")).unwrap();
        assert_eq!(c.translation_length, 2);
        assert!(c.certifies_infinite_order());
        let c = infinite_order_certificate(&w("v")).unwrap();
        assert!(c.map.is_identity() && !c.certifies_infinite_order());
        let c = infinite_order_certificate(&w("u1")).unwrap();
        assert!(c.reflection && !c.certifies_infinite_order());
        assert_eq!(c.map.then(&c.map), AffineMap::IDENTITY);

        let other = Alphabet::new(["x"]).unwrap();
        let x = Word::parse("x", &other, Mode::Free).unwrap();
        assert!(matches!(
            infinite_order_certificate(&x),
            Err(Error::UnknownGenerator(_))
        ));
    }

    #[test]
    fn affine_action_respects_relators() {
        let alpha = peripheral_alphabet();
        for r in ["u1^2", "u2^2", "v^2", "u1 v u1^-1 v^-1", "u2 v u2^-1 v^-1"] {
            let w = Word::parse(r, &alpha, Mode::Free).unwrap();
            assert!(
                infinite_order_certificate(&w).unwrap().map.is_identity(),
                "{r}"
            );
        }
    }
}
