use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use hilden::braid::{BraidError, BraidWord};
use hilden::phi::PhiError;
use hilden::presentation::SWord;
use hilden::proof::{self, DerivationScript, ProofError};
use hilden::tl;
use hilden::verify::{self, Config, Report, VerifyError};
use serde_json::json;

const OK: u8 = 0;
const CHECK_FAILED: u8 = 1;
const USAGE: u8 = 2;
const RESOURCE: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "hilden", version, about = "Verification harness for the Hilden group presentation")]
struct Cli {
    /// Emit JSON on standard out.
    #[arg(long, global = true)]
    json: bool,
    /// Handle-reduction step budget per equality check.
    #[arg(long, global = true, env = "HF_BUDGET", value_parser = clap::value_parser!(u64).range(1..))]
    budget: Option<u64>,
    /// Worker threads for the suites; 0 picks the number of cores.
    #[arg(long, global = true, env = "HF_WORKERS")]
    workers: Option<usize>,
    /// Fixture directory holding `phi_cases/` and `proofs/`.
    #[arg(long, global = true)]
    fixtures: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Free-reduce and handle-reduce a braid word such as "6 | 1 -2 5".
    Reduce { word: String },
    /// Decide whether two braid words are equal.
    Equal { w1: String, w2: String },
    /// Check every relation instance at the given n with both oracles.
    VerifyRelations {
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..=6))]
        n: u64,
    },
    /// Brute-force the (α, β, γ) triples for which C2 holds.
    TableC2 {
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(3..=6))]
        n: u64,
    },
    /// Check a property of the Φ action.
    PhiCheck {
        #[arg(long, value_enum)]
        prop: Prop,
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u64).range(2..))]
        n: u64,
        /// Random products per framed letter for property B.
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run the cap-state membership test on a braid word, or on an S-word with --n.
    CapTest {
        word: String,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Replay a derivation script.
    Prove { script: PathBuf },
    /// Check that every S-letter realizes to a pure braid.
    Purity {
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        n: u64,
    },
    /// Cap test on all generators, r_λ words, controls and random samples.
    Membership {
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        n: u64,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Prop {
    #[value(name = "A")]
    A,
    #[value(name = "B")]
    B,
    #[value(name = "inv")]
    Inv,
    #[value(name = "sq")]
    Sq,
    #[value(name = "C")]
    C,
    #[value(name = "D")]
    D,
}

enum Failure {
    Usage(String),
    Resource(String),
    Check(String),
}

impl From<BraidError> for Failure {
    fn from(e: BraidError) -> Self {
        match e {
            BraidError::BudgetExceeded(_) => Failure::Resource(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<VerifyError> for Failure {
    fn from(e: VerifyError) -> Self {
        match e {
            e if e.is_resource_limit() => Failure::Resource(e.to_string()),
            VerifyError::Range { .. } => Failure::Usage(e.to_string()),
            e => Failure::Check(e.to_string()),
        }
    }
}

impl From<PhiError> for Failure {
    fn from(e: PhiError) -> Self {
        match e {
            PhiError::Braid(b) => b.into(),
            e => Failure::Usage(e.to_string()),
        }
    }
}

fn proof_failure(e: ProofError) -> Failure {
    match e {
        ProofError::Braid(b @ BraidError::BudgetExceeded(_)) => Failure::Resource(b.to_string()),
        ProofError::Script { .. } => Failure::Usage(e.to_string()),
        ProofError::Step { index, source } => match proof_failure(*source) {
            Failure::Resource(m) => Failure::Resource(format!("step {index}: {m}")),
            Failure::Usage(m) | Failure::Check(m) => Failure::Check(format!("step {index}: {m}")),
        },
        e => Failure::Check(e.to_string()),
    }
}

fn default_fixtures() -> PathBuf {
    PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/../core/fixtures"))
}

fn parse_braid(text: &str) -> Result<BraidWord, Failure> {
    text.parse().map_err(|e: BraidError| Failure::Usage(format!("{text:?}: {e}")))
}

fn emit_report(r: &Report, json: bool) -> bool {
    if json {
        println!("{}", serde_json::to_string_pretty(r).expect("serializable"));
    } else {
        println!("{}", r.summary());
    }
    r.ok()
}

fn run(cli: Cli) -> Result<bool, Failure> {
    let mut cfg = Config::default();
    if let Some(b) = cli.budget {
        cfg.budget = b;
    }
    if let Some(w) = cli.workers {
        cfg.workers = w;
    }
    let fixtures = cli.fixtures.clone().unwrap_or_else(default_fixtures);
    let json = cli.json;
    match cli.cmd {
        Cmd::Reduce { word } => {
            let w = parse_braid(&word)?;
            let free = w.free_reduce();
            let reduced = w.handle_reduce(cfg.budget)?;
            if json {
                let out = json!({ "input": w, "free_reduced": free, "handle_reduced": reduced, "trivial": reduced.is_empty() });
                println!("{}", serde_json::to_string_pretty(&out).expect("serializable"));
            } else {
                println!("free:   {free}");
                println!("handle: {reduced}");
                println!("trivial: {}", reduced.is_empty());
            }
            Ok(true)
        }
        Cmd::Equal { w1, w2 } => {
            let (a, b) = (parse_braid(&w1)?, parse_braid(&w2)?);
            let eq = a.equals_with_budget(&b, cfg.budget)?;
            if json {
                println!("{}", json!({ "equal": eq }));
            } else {
                println!("{}", if eq { "equal" } else { "not equal" });
            }
            Ok(eq)
        }
        Cmd::VerifyRelations { n } => {
            let r = verify::verify_relations(n as usize, &cfg)?;
            Ok(emit_report(&r, json))
        }
        Cmd::TableC2 { n } => {
            let t = verify::bruteforce_c2(n as usize, &cfg)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&t).expect("serializable"));
            } else {
                println!("C2 brute force n={}: {} checks in {} ms", t.n, t.checked, t.ms);
                for row in &t.rows {
                    let triples: Vec<String> =
                        row.found.iter().map(|(a, b, c)| format!("{}{}{}", a.as_char(), b.as_char(), c.as_char())).collect();
                    let mark = if row.matches { "ok" } else { "MISMATCH" };
                    println!("{:<6} {}  [{mark}]", row.class.label(), triples.join(" "));
                }
            }
            Ok(t.ok())
        }
        Cmd::PhiCheck { prop, n, samples, seed } => {
            let n = n as usize;
            let r = match prop {
                Prop::A => verify::phi_property_a(n, &cfg)?,
                Prop::B => verify::phi_property_b(n, samples, seed),
                Prop::Inv => verify::phi_inverse(n),
                Prop::Sq => verify::phi_inverse_squared(n, &cfg)?,
                Prop::C => verify::phi_cases(&fixtures.join("phi_cases"), &cfg)?,
                Prop::D => verify::phi_property_d(n, &cfg)?,
            };
            Ok(emit_report(&r, json))
        }
        Cmd::CapTest { word, n } => {
            let w = match n {
                Some(n) => SWord::parse(n, &word).map_err(|e| Failure::Usage(e.to_string()))?.realize(),
                None => parse_braid(&word)?,
            };
            let report = tl::cap_report(&w).map_err(|e| Failure::Usage(e.to_string()))?;
            println!("{}", serde_json::to_string(&report).expect("serializable"));
            Ok(report.result == "pass")
        }
        Cmd::Prove { script } => {
            let d = DerivationScript::load(&script).map_err(proof_failure)?;
            proof::check_derivation_budget(&d, cfg.budget).map_err(proof_failure)?;
            if json {
                println!("{}", json!({ "script": script, "anchor": d.anchor, "steps": d.steps.len(), "ok": true }));
            } else {
                println!("ok: {} ({} steps)", d.anchor, d.steps.len());
            }
            Ok(true)
        }
        Cmd::Purity { n } => Ok(emit_report(&verify::purity_suite(n as usize), json)),
        Cmd::Membership { n } => {
            let n = n as usize;
            let reports = [verify::membership_suite(n, &cfg), verify::edge_family_closure(n)];
            if json {
                println!("{}", serde_json::to_string_pretty(&reports).expect("serializable"));
            } else {
                reports.iter().for_each(|r| println!("{}", r.summary()));
            }
            Ok(reports.iter().all(Report::ok))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { USAGE } else { OK });
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::from(OK),
        Ok(false) => ExitCode::from(CHECK_FAILED),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(USAGE)
        }
        Err(Failure::Check(m)) => {
            eprintln!("check failed: {m}");
            ExitCode::from(CHECK_FAILED)
        }
        Err(Failure::Resource(m)) => {
            eprintln!("resource limit: {m}");
            ExitCode::from(RESOURCE)
        }
    }
}
