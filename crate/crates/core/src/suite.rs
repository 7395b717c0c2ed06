//! The named battery of reproduction checks.
//!
//! Expected values are stored as literal data and compared against freshly
//! computed values, so a regression anywhere below shows up as a `fail` with
//! both strings in the report.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::braid::{act_on_path_in, induced_permutation, r_beta_gamma, BasedPath, BraidWord};
use crate::certificate::{
    boundary_word, certificates_at_degree, certify_braid, delta_words, f_word,
    infinite_order_certificate, key_quotient, peripheral_alphabet,
};
use crate::coset::{todd_coxeter, CosetTable, EnumResult, DEFAULT_MAX_COSETS};
use crate::error::{Error, Result};
use crate::fixtures;
use crate::hom::HomCandidate;
use crate::perm::{word_image, Perm};
use crate::presentation::Presentation;
use crate::word::{Alphabet, Mode, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    pub description: String,
    pub paper_ref: String,
    pub status: Status,
    pub expected: String,
    pub actual: String,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub inconclusive: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub version: String,
    pub checks: Vec<Check>,
    pub summary: Summary,
}

impl Report {
    pub fn new(checks: Vec<Check>) -> Report {
        let mut summary = Summary::default();
        for c in &checks {
            match c.status {
                Status::Pass => summary.pass += 1,
                Status::Fail => summary.fail += 1,
                Status::Inconclusive => summary.inconclusive += 1,
            }
        }
        Report {
            version: env!("CARGO_PKG_VERSION").to_string(),
            checks,
            summary,
        }
    }

    /// Canonical JSON form; byte-identical across runs with equal inputs.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// 0 when everything passed, 1 on any failure, 2 when only inconclusive
    /// checks stand in the way.
    pub fn exit_code(&self) -> i32 {
        if self.summary.fail > 0 {
            1
        } else if self.summary.inconclusive > 0 {
            2
        } else {
            0
        }
    }

    pub fn render_table(&self) -> String {
        let width = self.checks.iter().map(|c| c.id.len()).max().unwrap_or(2);
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&format!(
                "{:<width$}  {:<12}  {}\n",
                c.id,
                c.status.to_string(),
                c.description
            ));
            if c.status != Status::Pass {
                out.push_str(&format!("{:<width$}    expected: {}\n", "", c.expected));
                out.push_str(&format!("{:<width$}    actual:   {}\n", "", c.actual));
            }
        }
        out.push_str(&format!(
            "\n{} passed, {} failed, {} inconclusive\n",
            self.summary.pass, self.summary.fail, self.summary.inconclusive
        ));
        out
    }
}

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub max_cosets: usize,
    pub braid: BraidWord,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            max_cosets: DEFAULT_MAX_COSETS,
            braid: fixtures::beta(),
        }
    }
}

pub const CHECK_IDS: [&str; 15] = [
    "T34-ORDER",
    "T34-ELEMENT-ORDERS",
    "RBETA-WORDS",
    "BETA-RHO-WORDS",
    "DELTA-WORDS",
    "F-WORD",
    "PSI-WELLDEF",
    "PSI-VALUES",
    "PERMS",
    "BOUNDARY-QUOTIENT",
    "Q8-CENTER",
    "C8-INJECT",
    "KLEIN-QUOTIENTS",
    "INFINITE-PERIPHERAL",
    "CERT-SELF",
];

struct Spec {
    description: &'static str,
    paper_ref: &'static str,
    expected: &'static str,
}

fn spec_for(id: &str) -> Option<Spec> {
    let (description, paper_ref, expected) = match id {
        "T34-ORDER" => (
            "order of the T(3,4) knot group modulo mu^2, lambda^2",
            "Order(G)=48",
            "48",
        ),
        "T34-ELEMENT-ORDERS" => (
            "orders of mu, lambda, mu*lambda in that quotient; e, mu, lambda, mu*lambda distinct",
            "Order(lambda)=2, Order(mu)=2, Order(lambda*mu)=2",
            "mu=2 lambda=2 mu*lambda=2 distinct=4",
        ),
        "RBETA-WORDS" => (
            "r(b(g_i)) in the free product of four C2's",
            "r\\beta(\\gamma_{3}) & =\\gamma_{2}",
            "g1 -> g4 g3 g4 g2 g1 g2 g4 g2 g1 g2 g4 g3 g4; \
             g2 -> g4 g3 g4 g2 g1 g2 g4 g2 g1 g2 g4 g2 g1 g2 g4 g3 g4; \
             g3 -> g2; \
             g4 -> g2 g4 g3 g4 g2",
        ),
        "BETA-RHO-WORDS" => (
            "b(rho_j) modulo squares",
            "\\beta(\\rho_{4})=\\gamma_{3}\\gamma_{1}\\rho_{2}",
            "rho1 -> g1 g2 g1 g3 g4 g3 rho1; \
             rho2 -> g1 g2 g1 g3 g4 g3 g1 g3 g4 rho4; \
             rho3 -> rho3; \
             rho4 -> g3 g1 rho2",
        ),
        "DELTA-WORDS" => (
            "loop words of the connecting paths delta_i",
            "\\Phi(\\delta_{3})=e",
            "d1 = g4 g3 g4 g2 g1 g2; d2 = g4 g3 g4 g2 g1 g2 g4 g2 g1; d3 = e; d4 = g2 g4",
        ),
        "F-WORD" => (
            "f = d1 d4 d3 d2 along the rb-orbit of strand 1",
            "\\Phi(f)=\\Phi(\\delta _1) \\Phi (\\delta _4 )\\Phi (\\delta _3 )\\Phi (\\delta_2 )",
            "orbit 1 4 3 2; f = g4 g3 g4 g2 g1 g3 g4 g2 g1 g2 g4 g2 g1",
        ),
        "PSI-WELLDEF" => (
            "psi-bar kills g_i^2 and g_i rb(g_i) for all i",
            "\\overline{\\psi}(\\gamma_{1})=(1\\ 2)",
            "killed 8/8",
        ),
        "PSI-VALUES" => (
            "images of f, a, u under psi",
            "\\psi(f)=(3\\ 4)",
            "f -> (3 4); a -> (1 2); u -> (1 2)(3 4)",
        ),
        "PERMS" => (
            "strand permutations of b and rb",
            "$r\\beta$ is the cycle $(1\\ 4\\ 3\\ 2)$",
            "b = (2 4); rb = (1 4 3 2); transitive = true",
        ),
        "BOUNDARY-QUOTIENT" => (
            "boundary group modulo w is C2 x C2",
            "u\\mapsto u,\\ v\\mapsto v ,\\ w\\mapsto e",
            "order=4 max_element_order=2",
        ),
        "Q8-CENTER" => (
            "Q8 has order 8 and Q8/<x^2> has order 4 and exponent 2",
            "\\{\\pm1\\} \\subset Q_8",
            "order=8 quotient_order=4 quotient_max_element_order=2",
        ),
        "C8-INJECT" => (
            "the 8 products of {e,psi(f)} x {e,psi(a)} x {e,t} in S4 x C2 are distinct",
            "f\\mapsto(3\\ 4)$, $a\\mapsto(1\\ 2)$, and $v\\mapsto t",
            "distinct=8",
        ),
        "KLEIN-QUOTIENTS" => (
            "G/<<w2>> and G/<<v2 w2>> for k = 0..3: order and largest element order",
            "depending on the parity of $k_1+k_2$",
            "k=0: w2 order=4 max=2, v2w2 order=4 max=2; \
             k=1: w2 order=4 max=4, v2w2 order=4 max=4; \
             k=2: w2 order=4 max=2, v2w2 order=4 max=2; \
             k=3: w2 order=4 max=4, v2w2 order=4 max=4",
        ),
        "INFINITE-PERIPHERAL" => (
            "u1 u2 acts on Z as a nonzero translation",
            "H_1 \\ast _{C_2 \\{v'\\}} H_2$ is infinite",
            "u1 u2 -> translation by 2 (infinite order)",
        ),
        "CERT-SELF" => (
            "certificate search recovers psi-bar for b in S4",
            "\\overline{\\psi}(\\gamma_{4})=(3\\ 4)",
            "VALID degree=4 contains_psi_bar=true",
        ),
        _ => return None,
    };
    Some(Spec {
        description,
        paper_ref,
        expected,
    })
}

/// What a check computed: a comparable value, or a reason it could not.
enum Outcome {
    Value(String),
    Inconclusive(String),
}

fn enumerate(
    pres: &Presentation,
    cfg: &SuiteConfig,
) -> Result<std::result::Result<CosetTable, String>> {
    let r: EnumResult = todd_coxeter(pres, &[], cfg.max_cosets)?;
    Ok(r.table
        .ok_or_else(|| format!("limit_exceeded ({} cosets)", cfg.max_cosets)))
}

fn max_order(table: &CosetTable) -> u64 {
    table.element_order_profile().into_iter().max().unwrap_or(1)
}

fn loop_alphabet(cfg: &SuiteConfig) -> std::sync::Arc<Alphabet> {
    cfg.braid.loop_alphabet()
}

fn psi_bar(cfg: &SuiteConfig) -> Result<HomCandidate> {
    HomCandidate::new(loop_alphabet(cfg), fixtures::psi_bar_images())
}

fn compute(id: &str, cfg: &SuiteConfig) -> Result<Outcome> {
    use Outcome::*;
    let out = match id {
        "T34-ORDER" => match enumerate(&fixtures::t34_quotient()?, cfg)? {
            Ok(t) => Value(t.len().to_string()),
            Err(why) => Inconclusive(why),
        },
        "T34-ELEMENT-ORDERS" => {
            let pres = fixtures::t34_quotient()?;
            match enumerate(&pres, cfg)? {
                Ok(t) => {
                    let mu = pres.word("a1^-1 a2^-1")?;
                    let lambda = pres.word("(a2 a1)^12 a1^-3")?;
                    let ml = mu.multiply(&lambda)?;
                    let e = Word::identity(pres.alphabet(), Mode::Free);
                    let perms: Vec<Perm> = [&e, &mu, &lambda, &ml]
                        .iter()
                        .map(|w| t.word_perm(w))
                        .collect();
                    let mut distinct = perms.clone();
                    distinct.sort();
                    distinct.dedup();
                    Value(format!(
                        "mu={} lambda={} mu*lambda={} distinct={}",
                        perms[1].order(),
                        perms[2].order(),
                        perms[3].order(),
                        distinct.len()
                    ))
                }
                Err(why) => Inconclusive(why),
            }
        }
        "RBETA-WORDS" => {
            let parts = (1..=cfg.braid.strands())
                .map(|i| Ok(format!("g{i} -> {}", r_beta_gamma(&cfg.braid, i)?)))
                .collect::<Result<Vec<_>>>()?;
            Value(parts.join("; "))
        }
        "BETA-RHO-WORDS" => {
            let alphabet = loop_alphabet(cfg);
            let parts = (1..=cfg.braid.strands())
                .map(|j| {
                    let rho = BasedPath::rho(&alphabet, j, Mode::Involutory);
                    Ok(format!(
                        "rho{j} -> {}",
                        act_on_path_in(&cfg.braid, &rho, Mode::Involutory)?
                    ))
                })
                .collect::<Result<Vec<_>>>()?;
            Value(parts.join("; "))
        }
        "DELTA-WORDS" => {
            let parts: Vec<String> = delta_words(&cfg.braid)?
                .iter()
                .enumerate()
                .map(|(i, w)| format!("d{} = {w}", i + 1))
                .collect();
            Value(parts.join("; "))
        }
        "F-WORD" => match (
            crate::certificate::transitive_orbit(&cfg.braid),
            f_word(&cfg.braid)?,
        ) {
            (Some(orbit), Some(f)) => {
                let orbit: Vec<String> = orbit.iter().map(usize::to_string).collect();
                Value(format!("orbit {}; f = {f}", orbit.join(" ")))
            }
            _ => Value("rb not transitive; f undefined".into()),
        },
        "PSI-WELLDEF" => {
            let pres = key_quotient(&cfg.braid)?;
            let images = fixtures::psi_bar_images();
            let killed = pres
                .relators()
                .iter()
                .filter(|r| word_image(r, &images).is_ok_and(|p| p.is_identity()))
                .count();
            Value(format!("killed {killed}/{}", pres.relators().len()))
        }
        "PSI-VALUES" => {
            let psi = psi_bar(cfg)?;
            let alphabet = loop_alphabet(cfg);
            let f = match f_word(&cfg.braid)? {
                Some(f) => psi.image_of(&f)?.to_string(),
                None => "undefined".into(),
            };
            let a = psi.image_of(&Word::generator(&alphabet, 0, Mode::Involutory)?)?;
            let u = psi.image_of(&boundary_word(&alphabet))?;
            Value(format!("f -> {f}; a -> {a}; u -> {u}"))
        }
        "PERMS" => {
            let b = induced_permutation(&cfg.braid, false);
            let rb = induced_permutation(&cfg.braid, true);
            Value(format!(
                "b = {b}; rb = {rb}; transitive = {}",
                rb.is_transitive()
            ))
        }
        "BOUNDARY-QUOTIENT" => {
            let pres = fixtures::boundary_q();
            let w = pres.word("w")?;
            match enumerate(&pres.quotient(&[w])?, cfg)? {
                Ok(t) => Value(format!(
                    "order={} max_element_order={}",
                    t.len(),
                    max_order(&t)
                )),
                Err(why) => Inconclusive(why),
            }
        }
        "Q8-CENTER" => {
            let pres = fixtures::q8();
            let x2 = pres.word("x^2")?;
            match (
                enumerate(&pres, cfg)?,
                enumerate(&pres.quotient(&[x2])?, cfg)?,
            ) {
                (Ok(full), Ok(q)) => Value(format!(
                    "order={} quotient_order={} quotient_max_element_order={}",
                    full.len(),
                    q.len(),
                    max_order(&q)
                )),
                (Err(why), _) | (_, Err(why)) => Inconclusive(why),
            }
        }
        "C8-INJECT" => {
            let psi = psi_bar(cfg)?;
            let Some(f) = f_word(&cfg.braid)? else {
                return Ok(Value("rb not transitive; f undefined".into()));
            };
            let alphabet = loop_alphabet(cfg);
            let o = psi.image_of(&f)?;
            let p = psi.image_of(&Word::generator(&alphabet, 0, Mode::Involutory)?)?;
            let t = Perm::parse_cycles("(1 2)", 2)?;
            let e4 = Perm::identity(4);
            let e2 = Perm::identity(2);
            let mut products = Vec::new();
            for x in [&e4, &o] {
                for y in [&e4, &p] {
                    for z in [&e2, &t] {
                        products.push(x.then(y).direct_sum(z));
                    }
                }
            }
            products.sort();
            products.dedup();
            Value(format!("distinct={}", products.len()))
        }
        "KLEIN-QUOTIENTS" => {
            let mut parts = Vec::new();
            for k in 0..=3 {
                let g = fixtures::klein_g(k)?;
                let mut row = Vec::new();
                for (label, kernel) in [("w2", "w2"), ("v2w2", "v2 w2")] {
                    let q = g.quotient(&[g.word(kernel)?])?;
                    match enumerate(&q, cfg)? {
                        Ok(t) => {
                            row.push(format!("{label} order={} max={}", t.len(), max_order(&t)))
                        }
                        Err(why) => return Ok(Inconclusive(why)),
                    }
                }
                parts.push(format!("k={k}: {}", row.join(", ")));
            }
            Value(parts.join("; "))
        }
        "INFINITE-PERIPHERAL" => {
            let word = Word::parse("u1 u2", &peripheral_alphabet(), Mode::Free)?;
            let cert = infinite_order_certificate(&word)?;
            if cert.certifies_infinite_order() {
                Value(format!(
                    "u1 u2 -> translation by {} (infinite order)",
                    cert.translation_length
                ))
            } else {
                Value("u1 u2 -> no translation".into())
            }
        }
        "CERT-SELF" => {
            let first = certify_braid(&cfg.braid, 4)?;
            let psi = psi_bar(cfg)?;
            let contains = certificates_at_degree(&cfg.braid, 4)?
                .iter()
                .any(|c| c.hom == psi);
            match first {
                Some(c) => Value(format!(
                    "VALID degree={} contains_psi_bar={contains}",
                    c.hom.degree
                )),
                None => Value("UNKNOWN (no certificate up to degree 4)".into()),
            }
        }
        other => return Err(Error::UnknownCheck(other.to_string())),
    };
    Ok(out)
}

/// Runs one check by id.
pub fn run_check(id: &str, cfg: &SuiteConfig) -> Result<Check> {
    let spec = spec_for(id).ok_or_else(|| Error::UnknownCheck(id.to_string()))?;
    let (status, actual) = match compute(id, cfg)? {
        Outcome::Value(actual) if actual == spec.expected => (Status::Pass, actual),
        Outcome::Value(actual) => (Status::Fail, actual),
        Outcome::Inconclusive(why) => (Status::Inconclusive, why),
    };
    Ok(Check {
        id: id.to_string(),
        description: spec.description.to_string(),
        paper_ref: spec.paper_ref.to_string(),
        status,
        expected: spec.expected.to_string(),
        actual,
    })
}

/// Runs every check in the fixed order. Check failures are reported, not raised.
pub fn run_all(cfg: &SuiteConfig) -> Result<Report> {
    let checks = CHECK_IDS
        .par_iter()
        .map(|id| run_check(id, cfg))
        .collect::<Result<Vec<_>>>()?;
    Ok(Report::new(checks))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_run_passes() {
        let report = run_all(&SuiteConfig::default()).unwrap();
        for c in &report.checks {
            assert_eq!(
                c.status,
                Status::Pass,
                "{}: expected {:?}, got {:?}",
                c.id,
                c.expected,
                c.actual
            );
        }
        assert_eq!(report.summary.fail, 0);
        assert_eq!(report.exit_code(), 0);
    }

    #[test]
    fn tiny_coset_budget_is_inconclusive() {
        let cfg = SuiteConfig {
            max_cosets: 10,
            ..SuiteConfig::default()
        };
        let report = run_all(&cfg).unwrap();
        let status = |id: &str| report.checks.iter().find(|c| c.id == id).unwrap().status;
        assert_eq!(status("T34-ORDER"), Status::Inconclusive);
        assert_eq!(status("T34-ELEMENT-ORDERS"), Status::Inconclusive);
        for id in [
            "RBETA-WORDS",
            "BETA-RHO-WORDS",
            "DELTA-WORDS",
            "F-WORD",
            "PSI-VALUES",
        ] {
            assert_eq!(status(id), Status::Pass, "{id}");
        }
        assert_eq!(report.summary.fail, 0);
        assert_eq!(report.exit_code(), 2);
    }

    #[test]
    fn mutated_braid_fails_word_checks() {
        // drop the leading s1^2
        let cfg = SuiteConfig {
            braid: BraidWord::parse("s3 s2 s3^-1 s1^-2", 4).unwrap(),
            ..SuiteConfig::default()
        };
        let check = run_check("RBETA-WORDS", &cfg).unwrap();
        assert_eq!(check.status, Status::Fail);
        assert_ne!(check.expected, check.actual);
    }

    #[test]
    fn unknown_id() {
        assert!(matches!(
            run_check("NO-SUCH", &SuiteConfig::default()),
            Err(Error::UnknownCheck(_))
        ));
    }

    #[test]
    fn summary_matches_checks_and_refs_are_present() {
        let report = run_all(&SuiteConfig::default()).unwrap();
        assert_eq!(report.checks.len(), CHECK_IDS.len());
        let s = report.summary;
        assert_eq!(s.pass + s.fail + s.inconclusive, report.checks.len());
        assert!(report.checks.iter().all(|c| !c.paper_ref.is_empty()));
    }
}
