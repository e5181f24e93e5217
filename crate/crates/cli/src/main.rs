//! Command line front end: every library operation behind a subcommand,
//! with deterministic plain or JSON output.
//!
//! Exit codes: 0 on success (and on verified identities), 1 when an identity
//! check fails, 2 on usage or input errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use weylchar::crystal::{product_monomial_crystal, DEFAULT_VERTEX_CAP};
use weylchar::dbar::{dbar_minus_seq, dbar_plus_seq, Seq};
use weylchar::exec::Mode;
use weylchar::json;
use weylchar::rootsys::{
    lowest_in_orbit, positive_roots, reduced_words, CartanDatum, WeightVec, WeylElement,
};
use weylchar::verify;

#[derive(Parser)]
#[command(
    name = "weylchar",
    about = "Exact root-system, crystal and character computations",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the positive roots of a Dynkin type.
    Roots {
        /// Type name ("A2", "D4") or a JSON {"nodes", "edges", "parity"} object.
        dynkin: String,
    },
    /// All reduced words of the Weyl element given by a word.
    Redwords {
        dynkin: String,
        /// Comma-separated node indices, e.g. "1,2,1".
        word: String,
    },
    /// The plus- or minus-side product formula of a sequence.
    Dbar {
        side: Side,
        dynkin: String,
        /// Comma-separated node indices.
        seq: String,
    },
    /// Generate a product monomial crystal.
    Crystal {
        dynkin: String,
        /// Per-node parameter lists as JSON, e.g. "[[0],[1]]".
        #[arg(long)]
        params: String,
        /// Write a DOT rendering to this path.
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Filter to one weight space (comma-separated fundamental coordinates).
        #[arg(long)]
        mu: Option<String>,
        /// Vertex cap for crystal generation.
        #[arg(long, default_value_t = DEFAULT_VERTEX_CAP)]
        cap: usize,
    },
    /// Asymptotic character of a graded character given as JSON.
    Achi {
        #[arg(long = "char")]
        character: String,
    },
    /// Multidegree of a monomial quotient given as JSON.
    Multidegree {
        #[arg(long)]
        ideal: String,
    },
    /// Verify the colored hook formula at a minuscule extremal weight.
    Hook {
        #[arg(long = "type")]
        dynkin: String,
        /// Node index (1-based).
        #[arg(long)]
        node: usize,
        /// "lowest" or comma-separated fundamental coordinates.
        #[arg(long)]
        mu: String,
    },
    /// Run the whole verification suite.
    VerifyAll {
        #[arg(long, default_value_t = 5)]
        rank_cap: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Side {
    Plus,
    Minus,
}

/// Print a line, exiting quietly when the consumer closes the pipe.
macro_rules! outln {
    ($($arg:tt)*) => {{
        use std::io::Write;
        let mut out = std::io::stdout().lock();
        if writeln!(out, $($arg)*).is_err() {
            std::process::exit(0);
        }
    }};
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn parse_indices(datum: &CartanDatum, text: &str, what: &str) -> weylchar::Result<Vec<usize>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|part| {
            let n: usize = part
                .trim()
                .parse()
                .map_err(|_| weylchar::Error::Json(format!("field '{what}': bad index '{part}'")))?;
            if n < 1 || n > datum.rank() {
                return Err(weylchar::Error::Json(format!(
                    "field '{what}': node {n} out of range 1..={}",
                    datum.rank()
                )));
            }
            Ok(n - 1)
        })
        .collect()
}

fn parse_weight(datum: &CartanDatum, text: &str, what: &str) -> weylchar::Result<WeightVec> {
    let fund: weylchar::Result<Vec<weylchar::Rat>> = text
        .split(',')
        .map(|part| {
            weylchar::rat::parse_rat(part).ok_or_else(|| {
                weylchar::Error::Json(format!("field '{what}': bad coordinate '{part}'"))
            })
        })
        .collect();
    let fund = fund?;
    if fund.len() != datum.rank() {
        return Err(weylchar::Error::Json(format!(
            "field '{what}': expected {} coordinates",
            datum.rank()
        )));
    }
    Ok(WeightVec::from_fundamental(datum, &fund))
}

fn run(command: Command) -> weylchar::Result<ExitCode> {
    match command {
        Command::Roots { dynkin } => {
            let datum = json::parse_datum_arg(&dynkin)?;
            for root in positive_roots(&datum) {
                outln!("{root}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Redwords { dynkin, word } => {
            let datum = json::parse_datum_arg(&dynkin)?;
            let word = parse_indices(&datum, &word, "word")?;
            let element = WeylElement::from_word(&datum, &word);
            for word in reduced_words(&datum, &element) {
                let parts: Vec<String> = word.iter().map(|i| (i + 1).to_string()).collect();
                outln!("{}", parts.join(","));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Dbar { side, dynkin, seq } => {
            let datum = json::parse_datum_arg(&dynkin)?;
            let seq = Seq(parse_indices(&datum, &seq, "seq")?);
            let value = match side {
                Side::Plus => dbar_plus_seq(&datum, &seq),
                Side::Minus => dbar_minus_seq(&datum, &seq),
            };
            outln!("{value}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Crystal {
            dynkin,
            params,
            dot,
            mu,
            cap,
        } => {
            let datum = json::parse_datum_arg(&dynkin)?;
            let params = json::parse_param_set(&params, datum.rank())?;
            let graph = product_monomial_crystal(&datum, &params, cap)?;
            if let Some(path) = dot {
                std::fs::write(&path, graph.to_dot())
                    .map_err(|e| weylchar::Error::Json(format!("cannot write DOT file: {e}")))?;
            }
            match mu {
                Some(mu) => {
                    let weight = parse_weight(&datum, &mu, "mu")?;
                    let fund: Vec<i64> = weight
                        .to_fundamental(&datum)
                        .iter()
                        .map(|c| {
                            if c.is_integer() {
                                Ok(i64::try_from(c.to_integer()).unwrap_or(i64::MAX))
                            } else {
                                Err(weylchar::Error::Json(
                                    "field 'mu': weight-space filter needs integer coordinates"
                                        .into(),
                                ))
                            }
                        })
                        .collect::<weylchar::Result<_>>()?;
                    for m in graph.weight_space(&datum, &fund) {
                        outln!("{m}");
                    }
                }
                None => {
                    outln!(
                        "{}",
                        serde_json::to_string_pretty(&json::crystal_to_value(&datum, &graph))
                            .expect("crystal serializes")
                    );
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Achi { character } => {
            let gc = json::parse_graded_character(&character)?;
            let achi = weylchar::asympchar::asymptotic_character(&gc)?;
            outln!("{achi}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Multidegree { ideal } => {
            let mq = json::parse_monomial_quotient(&ideal)?;
            let k = weylchar::asympchar::k_polynomial(&mq)?;
            let (p, d) = weylchar::asympchar::equiv_hilbert_poly(&k)?;
            outln!("multidegree = {p}");
            outln!("dimension = {d}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Hook { dynkin, node, mu } => {
            let datum = json::parse_datum_arg(&dynkin)?;
            if node < 1 || node > datum.rank() {
                return Err(weylchar::Error::Json(format!(
                    "field 'node': {node} out of range 1..={}",
                    datum.rank()
                )));
            }
            let node = node - 1;
            let mu = if mu.trim() == "lowest" {
                lowest_in_orbit(&datum, &WeightVec::fundamental(&datum, node))
            } else {
                parse_weight(&datum, &mu, "mu")?
            };
            let (equal, report) = verify::verify_nakada(&datum, node, &mu)?;
            outln!("lhs = {}", report.lhs);
            outln!("rhs = {}", report.rhs);
            outln!("{}", report.to_json());
            Ok(if equal {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
        Command::VerifyAll { rank_cap } => {
            let (all_ok, reports) = verify::verify_all(rank_cap, Mode::auto())?;
            let mut passed = 0usize;
            for report in &reports {
                let expected_unequal = report.case.starts_with("sl3-sibling");
                let ok = report.equal != expected_unequal;
                if ok {
                    passed += 1;
                } else {
                    outln!("FAIL {}", report.to_json());
                }
            }
            outln!("{passed}/{} checks passed", reports.len());
            Ok(if all_ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
    }
}
