use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use braidcert_core::braid::{
    act_on_loop, act_on_path_in, reflect_loop, reflect_path, BasedPath, BraidWord, DEFAULT_STRANDS,
};
use braidcert_core::certificate::certify_braid;
use braidcert_core::coset::{todd_coxeter, EnumStatus, DEFAULT_MAX_COSETS};
use braidcert_core::error::{Error, Result};
use braidcert_core::fixtures::klein_g;
use braidcert_core::hom::{search, SearchSpec};
use braidcert_core::presentation::Presentation;
use braidcert_core::suite::{run_all, run_check, Report, SuiteConfig};
use braidcert_core::word::{Mode, Word};

const EXIT_OK: u8 = 0;
const EXIT_FAIL: u8 = 1;
const EXIT_INCONCLUSIVE: u8 = 2;
const EXIT_USAGE: u8 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "braidcert",
    version,
    about = "Group-theoretic certificates for braid-built surfaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run every reproduction check.
    VerifyAll {
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = DEFAULT_MAX_COSETS)]
        max_cosets: usize,
    },
    /// Run one check by id.
    Check {
        id: String,
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = DEFAULT_MAX_COSETS)]
        max_cosets: usize,
    },
    /// Braid operations.
    Braid {
        #[command(subcommand)]
        op: BraidOp,
    },
    /// Enumerate cosets of a subgroup.
    CosetEnum {
        #[arg(long)]
        presentation: PathBuf,
        /// Subgroup generators separated by `;`.
        #[arg(long)]
        subgroup: Option<String>,
        #[arg(long, default_value_t = DEFAULT_MAX_COSETS)]
        max_cosets: usize,
    },
    /// Order of an element.
    Order {
        #[arg(long)]
        presentation: PathBuf,
        #[arg(long)]
        word: String,
        #[arg(long, default_value_t = DEFAULT_MAX_COSETS)]
        max_cosets: usize,
    },
    /// List homomorphisms into S_n.
    HomSearch {
        #[arg(long)]
        presentation: PathBuf,
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        involutions: bool,
        #[arg(long)]
        require_nontrivial: Option<String>,
    },
    /// Search for a certificate for a braid.
    Certify {
        #[arg(long)]
        braid: String,
        #[arg(long, default_value_t = 4)]
        degree_max: usize,
        #[arg(long, default_value_t = DEFAULT_STRANDS)]
        strands: usize,
        #[arg(long)]
        json: bool,
    },
    /// Both order-4 quotients of the Klein bottle group for a given k.
    Klein {
        #[arg(long, allow_negative_numbers = true)]
        k: i64,
        #[arg(long, default_value_t = DEFAULT_MAX_COSETS)]
        max_cosets: usize,
    },
}

#[derive(Debug, Subcommand)]
enum BraidOp {
    /// Apply a braid to a loop word or a based path.
    Act(ActArgs),
}

#[derive(Debug, Args)]
struct ActArgs {
    #[arg(long)]
    braid: String,
    /// `gamma<i>`, `rho<i>`, or a word in g1..gn.
    #[arg(long)]
    target: String,
    #[arg(long)]
    reflect: bool,
    #[arg(long)]
    involutory: bool,
    #[arg(long, default_value_t = DEFAULT_STRANDS)]
    strands: usize,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { EXIT_OK });
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(Error::CosetLimit(n)) => {
            eprintln!("error: coset enumeration exceeded {n} cosets");
            ExitCode::from(EXIT_INCONCLUSIVE)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn report_code(report: &Report) -> u8 {
    match report.exit_code() {
        0 => EXIT_OK,
        1 => EXIT_FAIL,
        _ => EXIT_INCONCLUSIVE,
    }
}

fn print_report(report: &Report, json: bool) {
    if json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.render_table());
    }
}

fn load(path: &Path) -> Result<Presentation> {
    Presentation::parse(&fs::read_to_string(path)?)
}

fn run(command: Command) -> Result<u8> {
    match command {
        Command::VerifyAll { json, max_cosets } => {
            let cfg = SuiteConfig {
                max_cosets,
                ..SuiteConfig::default()
            };
            let report = run_all(&cfg)?;
            print_report(&report, json);
            Ok(report_code(&report))
        }
        Command::Check {
            id,
            json,
            max_cosets,
        } => {
            let cfg = SuiteConfig {
                max_cosets,
                ..SuiteConfig::default()
            };
            let report = Report::new(vec![run_check(&id, &cfg)?]);
            print_report(&report, json);
            Ok(report_code(&report))
        }
        Command::Braid {
            op: BraidOp::Act(args),
        } => braid_act(&args),
        Command::CosetEnum {
            presentation,
            subgroup,
            max_cosets,
        } => {
            let pres = load(&presentation)?;
            let subgroup = match subgroup {
                Some(s) => s
                    .split(';')
                    .filter(|w| !w.trim().is_empty())
                    .map(|w| pres.word(w.trim()))
                    .collect::<Result<Vec<_>>>()?,
                None => Vec::new(),
            };
            let result = todd_coxeter(&pres, &subgroup, max_cosets)?;
            println!("total_defined: {}", result.stats.total_defined);
            println!("max_active: {}", result.stats.max_active);
            match (result.status, &result.table) {
                (EnumStatus::Finite, Some(table)) => {
                    println!("index: {}", result.coset_count);
                    for g in 0..table.generator_count() {
                        println!("{}: {}", pres.alphabet().name(g), table.generator_perm(g));
                    }
                    Ok(EXIT_OK)
                }
                _ => {
                    println!("status: limit_exceeded");
                    Ok(EXIT_INCONCLUSIVE)
                }
            }
        }
        Command::Order {
            presentation,
            word,
            max_cosets,
        } => {
            let pres = load(&presentation)?;
            let w = pres.word(&word)?;
            println!(
                "{}",
                braidcert_core::coset::element_order(&pres, &w, max_cosets)?
            );
            Ok(EXIT_OK)
        }
        Command::HomSearch {
            presentation,
            degree,
            involutions,
            require_nontrivial,
        } => {
            let pres = load(&presentation)?;
            let mut spec = SearchSpec::new(pres.clone(), degree);
            spec.restrict_to_involutions = involutions;
            spec.require_nontrivial = require_nontrivial.map(|w| pres.word(&w)).transpose()?;
            let homs = search(&spec)?;
            for h in &homs {
                println!("{h}");
            }
            println!("count: {}", homs.len());
            Ok(EXIT_OK)
        }
        Command::Certify {
            braid,
            degree_max,
            strands,
            json,
        } => {
            let b = BraidWord::parse(&braid, strands)?;
            match certify_braid(&b, degree_max)? {
                Some(cert) => {
                    if json {
                        println!(
                            "{}",
                            serde_json::to_string_pretty(&cert.to_json())
                                .expect("certificate serializes")
                        );
                    } else {
                        println!("{cert}");
                    }
                    Ok(EXIT_OK)
                }
                None => {
                    if json {
                        println!(
                            "{}",
                            serde_json::json!({ "braid": b.to_string(), "valid": false, "degree_max": degree_max })
                        );
                    } else {
                        println!("braid: {b}");
                        println!("status: UNKNOWN (no certificate up to degree {degree_max})");
                    }
                    Ok(EXIT_INCONCLUSIVE)
                }
            }
        }
        Command::Klein { k, max_cosets } => {
            let g = klein_g(k)?;
            let mut code = EXIT_OK;
            for (label, kernel) in [("w2", "w2"), ("v2w2", "v2 w2")] {
                let q = g.quotient(&[g.word(kernel)?])?;
                let result = todd_coxeter(&q, &[], max_cosets)?;
                match result.table {
                    Some(t) => {
                        let max = t.element_order_profile().into_iter().max().unwrap_or(1);
                        println!("G/<<{label}>>: order={} max_element_order={max}", t.len());
                    }
                    None => {
                        println!("G/<<{label}>>: limit_exceeded");
                        code = EXIT_INCONCLUSIVE;
                    }
                }
            }
            Ok(code)
        }
    }
}

fn parse_indexed(target: &str, stem: &str) -> Option<usize> {
    let rest = target.strip_prefix(stem)?;
    let rest = rest.strip_prefix('_').unwrap_or(rest);
    rest.parse().ok()
}

fn braid_act(args: &ActArgs) -> Result<u8> {
    let b = BraidWord::parse(&args.braid, args.strands)?;
    let mode = if args.involutory {
        Mode::Involutory
    } else {
        Mode::Free
    };
    let alphabet = b.loop_alphabet();
    let target = args.target.trim();
    if let Some(j) = parse_indexed(target, "rho") {
        let p = act_on_path_in(&b, &BasedPath::rho(&alphabet, j, mode), mode)?;
        let p = if args.reflect { reflect_path(&p)? } else { p };
        println!("{p}");
        return Ok(EXIT_OK);
    }
    let w = match parse_indexed(target, "gamma") {
        Some(i) if (1..=alphabet.len()).contains(&i) => Word::generator(&alphabet, i - 1, mode)?,
        Some(i) => {
            return Err(Error::IndexOutOfRange {
                index: i,
                max: alphabet.len(),
            })
        }
        None => Word::parse(target, &alphabet, mode)?,
    };
    let image = act_on_loop(&b, &w, mode)?;
    let image = if args.reflect {
        reflect_loop(&image)?
    } else {
        image
    };
    println!("{image}");
    Ok(EXIT_OK)
}
