//! Fixed presentations shipped with the crate, plus a small-group corpus with
//! faithful permutation representations for cross-checking enumeration.

use crate::braid::BraidWord;
use crate::error::Result;
use crate::perm::Perm;
use crate::presentation::{torus_knot_presentation, Presentation};

pub const BETA: &str = "s1^2 s3 s2 s3^-1 s1^-2";

pub const T34Q_PRES: &str = include_str!("../fixtures/t34q.pres");
pub const Q8_PRES: &str = include_str!("../fixtures/q8.pres");
pub const BOUNDARY_Q_PRES: &str = include_str!("../fixtures/boundary_q.pres");
pub const KLEIN_G_PRES: [&str; 4] = [
    include_str!("../fixtures/klein_g_k0.pres"),
    include_str!("../fixtures/klein_g_k1.pres"),
    include_str!("../fixtures/klein_g_k2.pres"),
    include_str!("../fixtures/klein_g_k3.pres"),
];

/// The four-strand braid `s1^2 s3 s2 s3^-1 s1^-2`.
pub fn beta() -> BraidWord {
    BraidWord::parse(BETA, 4).expect("valid braid")
}

/// Generator images `g1..g4 -> (1 2), (2 3), (2 3), (3 4)` in `S_4`.
pub fn psi_bar_images() -> Vec<Perm> {
    ["(1 2)", "(2 3)", "(2 3)", "(3 4)"]
        .iter()
        .map(|s| Perm::parse_cycles(s, 4).expect("valid cycle"))
        .collect()
}

/// T(3,4) knot group with `mu^2` and `lambda^2` imposed.
pub fn t34_quotient() -> Result<Presentation> {
    let knot = torus_knot_presentation(3, 4)?;
    knot.presentation
        .quotient(&[knot.meridian.pow(2), knot.longitude.pow(2)])
}

pub fn q8() -> Presentation {
    Presentation::parse(Q8_PRES).expect("bundled fixture")
}

pub fn boundary_q() -> Presentation {
    Presentation::parse(BOUNDARY_Q_PRES).expect("bundled fixture")
}

/// `<v2, w1, w2 | [w1,v2], [w2,v2], w1^2 v2^k, w2^2, v2^2>`.
pub fn klein_g(k: i64) -> Result<Presentation> {
    let third = match k {
        0 => "w1^2".to_string(),
        1 => "w1^2 v2".to_string(),
        _ => format!("w1^2 v2^{k}"),
    };
    Presentation::from_strs(
        &["v2", "w1", "w2"],
        &[
            "w1 v2 w1^-1 v2^-1",
            "w2 v2 w2^-1 v2^-1",
            &third,
            "w2^2",
            "v2^2",
        ],
    )
}

pub struct CorpusGroup {
    pub name: &'static str,
    pub order: usize,
    pub presentation: Presentation,
    /// Faithful permutation images of the generators.
    pub perms: Vec<Perm>,
}

fn corpus_entry(
    name: &'static str,
    order: usize,
    gens: &[&str],
    rels: &[&str],
    degree: usize,
    perms: &[&str],
) -> CorpusGroup {
    CorpusGroup {
        name,
        order,
        presentation: Presentation::from_strs(gens, rels).expect("corpus presentation"),
        perms: perms
            .iter()
            .map(|p| Perm::parse_cycles(p, degree).expect("corpus permutation"))
            .collect(),
    }
}

/// S3, C6, C2xC2, D4, Q8 and S4.
pub fn small_group_corpus() -> Vec<CorpusGroup> {
    vec![
        corpus_entry(
            "S3",
            6,
            &["a", "b"],
            &["a^2", "b^2", "(a b)^3"],
            3,
            &["(1 2)", "(2 3)"],
        ),
        corpus_entry("C6", 6, &["a"], &["a^6"], 6, &["(1 2 3 4 5 6)"]),
        corpus_entry(
            "C2xC2",
            4,
            &["a", "b"],
            &["a^2", "b^2", "(a b)^2"],
            4,
            &["(1 2)", "(3 4)"],
        ),
        corpus_entry(
            "D4",
            8,
            &["a", "b"],
            &["a^4", "b^2", "(a b)^2"],
            4,
            &["(1 2 3 4)", "(1 3)"],
        ),
        // right-regular action on 1, -1, i, -i, j, -j, k, -k
        corpus_entry(
            "Q8",
            8,
            &["x", "y"],
            &["x^4", "x^2 y^-2", "y^-1 x y x"],
            8,
            &["(1 3 2 4)(5 8 6 7)", "(1 5 2 6)(3 7 4 8)"],
        ),
        corpus_entry(
            "S4",
            24,
            &["a", "b"],
            &["a^2", "b^4", "(a b)^3"],
            4,
            &["(1 2)", "(1 2 3 4)"],
        ),
    ]
}
