//! The `lstar` command line.

use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use lstar::enrichment::{cut_combine, EnrichmentLevel};
use lstar::lang::{encode_nat, parse_formula, parse_term, print_formula, print_term, Godel};
use lstar::prenex::{classify, to_prenex};
use lstar::semantics::{decide_delta0, eval_term, Environment};
use lstar::systems::{
    classify_type, consistency_search, self_ref_extend, Attempt, ConsistencyMode, GeneralizedArithmetic,
};
use lstar::tableaux::{check_proof, prove, Verdict};
use num_bigint::BigUint;
use serde_json::json;

use crate::basis_file::resolve;
use crate::bench::bench_chain;
use crate::gen::{Gen, DEFAULT_SEED};
use crate::proof_file::{load_proof, save_proof, write_proof};
use crate::run_record::RunRecord;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "lstar", version, about = "Bounded arithmetic, enriched tableaux and self-justification experiments")]
pub struct Cli {
    /// Output style.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Args, Debug, Clone)]
pub struct SystemArgs {
    /// Built-in basis (empty, relational-arith, chain:N) or a basis file.
    #[arg(long, default_value = "empty")]
    pub basis: String,
    #[arg(long, default_value = "none")]
    pub level: EnrichmentLevel,
}

#[derive(Args, Debug, Clone)]
pub struct BudgetArg {
    /// Node expansions allowed.
    #[arg(long, env = "LSTAR_BUDGET", default_value_t = lstar::tableaux::DEFAULT_BUDGET)]
    pub budget: u64,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate a ground term.
    Eval { term: String },
    /// Decide a bounded sentence.
    Decide { sentence: String },
    /// Prefix class of a prenex sentence.
    Classify { sentence: String },
    /// Prenex normal form.
    Prenex { sentence: String },
    /// Search for a tableau proof.
    Prove {
        goal: String,
        #[command(flatten)]
        system: SystemArgs,
        #[command(flatten)]
        budget: BudgetArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a proof file.
    Check {
        file: PathBuf,
        /// Defaults to the basis named in the file.
        #[arg(long)]
        basis: Option<String>,
        /// Defaults to the level recorded in the file.
        #[arg(long)]
        level: Option<EnrichmentLevel>,
    },
    /// Combine proofs of `P` and `P -> Q` into a proof of `Q`.
    Cut {
        psi: PathBuf,
        implication: PathBuf,
        #[arg(long)]
        basis: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Binary-like numeral for a natural number.
    Encode { n: String },
    /// Gödel number of a sentence.
    Godel { sentence: String },
    /// Operations on generalized arithmetics.
    #[command(subcommand)]
    System(SystemCommand),
    /// Benchmarks.
    #[command(subcommand)]
    Bench(BenchCommand),
    /// Random sentences for experiments.
    Gen {
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        depth: u32,
        /// Bounded quantifiers only.
        #[arg(long)]
        delta0: bool,
    },
}

#[derive(Subcommand, Debug)]
pub enum SystemCommand {
    /// Type-S/A/M/NS by proved totality sentences.
    Classify {
        #[command(flatten)]
        system: SystemArgs,
        #[command(flatten)]
        budget: BudgetArg,
    },
    /// Add the self-referential consistency axiom.
    Selfref {
        #[command(flatten)]
        system: SystemArgs,
        /// Write the extended basis here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Bounded search for a refutation.
    Consearch {
        #[command(flatten)]
        system: SystemArgs,
        #[command(flatten)]
        budget: BudgetArg,
        /// `level0-` or `level:N`.
        #[arg(long, default_value = "level0-")]
        mode: String,
        /// Also extend the basis with its self-referential axiom first.
        #[arg(long)]
        selfref: bool,
        /// Run record path; witness proofs go beside it.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Summarize a run record.
    Report { file: PathBuf },
}

#[derive(Subcommand, Debug)]
pub enum BenchCommand {
    /// Implication-chain family.
    Chain {
        #[arg(long, default_value_t = 10)]
        n_max: u64,
        #[arg(long, default_value = "rank0")]
        level: EnrichmentLevel,
        #[command(flatten)]
        budget: BudgetArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_mode(s: &str) -> anyhow::Result<ConsistencyMode> {
    if s == "level0-" {
        return Ok(ConsistencyMode::Level0Minus);
    }
    let n = s.strip_prefix("level:").and_then(|n| n.parse().ok());
    n.map(ConsistencyMode::Level).ok_or_else(|| anyhow!("unknown mode `{s}` (expected level0- or level:N)"))
}

fn system(args: &SystemArgs) -> anyhow::Result<GeneralizedArithmetic> {
    Ok(GeneralizedArithmetic::new(resolve(&args.basis)?, args.level))
}

struct Out<'a> {
    w: &'a mut dyn Write,
    format: Format,
}

impl Out<'_> {
    /// Prints `text` or `value` according to the format.
    fn emit(&mut self, text: impl std::fmt::Display, value: serde_json::Value) -> anyhow::Result<()> {
        match self.format {
            Format::Text => writeln!(self.w, "{text}")?,
            Format::Structured => writeln!(self.w, "{value}")?,
        }
        Ok(())
    }
}

/// Parses `argv` and runs the command; returns the exit status.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    let mut o = Out { w: out, format: cli.format };
    match execute(cli.command, &mut o) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            EXIT_USAGE
        }
    }
}

fn status(ok: bool) -> i32 {
    if ok {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    }
}

fn execute(command: Command, o: &mut Out<'_>) -> anyhow::Result<i32> {
    match command {
        Command::Eval { term } => {
            let t = parse_term(&term)?;
            let v = eval_term(&t, &Environment::new())?;
            o.emit(&v, json!({ "term": print_term(&t), "value": v.to_string() }))?;
            Ok(EXIT_OK)
        }
        Command::Decide { sentence } => {
            let f = parse_formula(&sentence)?;
            let v = decide_delta0(&f)?;
            o.emit(v, json!({ "sentence": print_formula(&f), "value": v }))?;
            Ok(status(v))
        }
        Command::Classify { sentence } => {
            let f = parse_formula(&sentence)?;
            let c = classify(&f).with_context(|| "use `lstar prenex` to normalize first")?;
            o.emit(c, json!({ "sentence": print_formula(&f), "class": c.to_string() }))?;
            Ok(EXIT_OK)
        }
        Command::Prenex { sentence } => {
            let f = parse_formula(&sentence)?;
            if !f.is_closed() {
                return Err(anyhow!("not a sentence"));
            }
            let g = to_prenex(&f);
            let class = classify(&g)?;
            o.emit(print_formula(&g), json!({ "prenex": print_formula(&g), "class": class.to_string() }))?;
            Ok(EXIT_OK)
        }
        Command::Prove { goal, system: s, budget, out } => {
            let goal = parse_formula(&goal)?;
            if !goal.is_closed() {
                return Err(anyhow!("goal is not a sentence"));
            }
            let g = system(&s)?;
            match prove(&goal, &g.basis, g.level, budget.budget) {
                Ok(found) => {
                    if let Some(path) = &out {
                        save_proof(path, &found.proof)?;
                    }
                    let text = format!("{}proved: {} nodes, {} expansions", found.proof, found.proof.size(), found.expansions);
                    o.emit(
                        text,
                        json!({ "result": "proved", "size": found.proof.size(), "expansions": found.expansions,
                                "proof": write_proof(&found.proof) }),
                    )?;
                    Ok(EXIT_OK)
                }
                Err(e) => {
                    o.emit(e, json!({ "result": "not-found", "budget": e.budget, "expansions": e.expansions }))?;
                    Ok(EXIT_NEGATIVE)
                }
            }
        }
        Command::Check { file, basis, level } => {
            let p = load_proof(&file).with_context(|| file.display().to_string())?;
            let basis = resolve(basis.as_deref().unwrap_or(&p.basis))?;
            let level = level.unwrap_or(p.level);
            let v = check_proof(&p, &basis, level);
            let value = match &v {
                Verdict::Valid => json!({ "verdict": "valid", "size": p.size() }),
                Verdict::Invalid { reason, node } => {
                    json!({ "verdict": "invalid", "reason": reason.to_string(), "node": node })
                }
            };
            o.emit(&v, value)?;
            Ok(status(v.is_valid()))
        }
        Command::Cut { psi, implication, basis, out } => {
            let p1 = load_proof(&psi).with_context(|| psi.display().to_string())?;
            let p2 = load_proof(&implication).with_context(|| implication.display().to_string())?;
            let basis = resolve(basis.as_deref().unwrap_or(&p1.basis))?;
            match cut_combine(&p1, &p2, &basis) {
                Ok(p) => {
                    if let Some(path) = &out {
                        save_proof(path, &p)?;
                    }
                    let text = format!("{p}combined: {} nodes at level {}", p.size(), p.level);
                    o.emit(text, json!({ "result": "combined", "size": p.size(), "level": p.level.to_string(),
                                         "proof": write_proof(&p) }))?;
                    Ok(EXIT_OK)
                }
                Err(e) => {
                    o.emit(format!("cut failed: {e}"), json!({ "result": "failed", "reason": e.to_string() }))?;
                    Ok(EXIT_NEGATIVE)
                }
            }
        }
        Command::Encode { n } => {
            let n: BigUint = n.parse().map_err(|_| anyhow!("`{n}` is not a natural number"))?;
            let t = encode_nat(&n);
            o.emit(print_term(&t), json!({ "n": n.to_string(), "term": print_term(&t), "functions": t.function_count() }))?;
            Ok(EXIT_OK)
        }
        Command::Godel { sentence } => {
            let f = parse_formula(&sentence)?;
            let g = f.godel_number();
            o.emit(&g, json!({ "sentence": print_formula(&f), "godel": g.to_string() }))?;
            Ok(EXIT_OK)
        }
        Command::System(c) => system_command(c, o),
        Command::Bench(BenchCommand::Chain { n_max, level, budget, out }) => {
            if n_max == 0 {
                return Err(anyhow!("--n-max must be at least 1"));
            }
            let report = bench_chain(n_max, level, budget.budget);
            if let Some(path) = &out {
                std::fs::write(path, report.to_json())?;
            }
            let value: serde_json::Value = serde_json::from_str(&report.to_json())?;
            o.emit(report.to_table().trim_end(), value)?;
            Ok(status(report.rows.iter().all(|r| r.enriched_size.is_some())))
        }
        Command::Gen { count, seed, depth, delta0 } => {
            let mut g = Gen::new(seed);
            let sentences: Vec<String> = (0..count)
                .map(|_| print_formula(&if delta0 { g.delta0_sentence(depth, 8) } else { g.sentence(depth) }))
                .collect();
            o.emit(sentences.join("\n"), json!({ "seed": seed, "sentences": sentences }))?;
            Ok(EXIT_OK)
        }
    }
}

fn system_command(c: SystemCommand, o: &mut Out<'_>) -> anyhow::Result<i32> {
    match c {
        SystemCommand::Classify { system: s, budget } => {
            let g = system(&s)?;
            let class = classify_type(&g, budget.budget);
            let mut text = format!("{}: {}", g, class.kind);
            let mut evidence = Vec::new();
            for (t, a) in &class.evidence {
                let (line, value) = match a {
                    Attempt::Proved { proof, expansions } => (
                        format!("{} totality: proved ({} nodes, {expansions} expansions)", t.name(), proof.size()),
                        json!({ "totality": t.name(), "result": "proved", "size": proof.size(), "expansions": expansions }),
                    ),
                    Attempt::UnprovenWithinBudget { budget, expansions } => (
                        format!("{} totality: unproven within budget {budget} ({expansions} expansions)", t.name()),
                        json!({ "totality": t.name(), "result": "unproven-within-budget", "budget": budget, "expansions": expansions }),
                    ),
                };
                text += &format!("\n  {line}");
                evidence.push(value);
            }
            o.emit(text, json!({ "system": g.basis.name(), "level": g.level.to_string(), "type": class.kind.to_string(), "evidence": evidence }))?;
            Ok(EXIT_OK)
        }
        SystemCommand::Selfref { system: s, out } => {
            let g = system(&s)?;
            let ext = self_ref_extend(&g);
            let (idx, record) = ext.basis.self_refs().last().expect("extension adds a record").clone();
            if let Some(path) = &out {
                std::fs::write(path, crate::basis_file::write_basis(&ext.basis))?;
            }
            let text = format!(
                "{}: {} axioms, self-reference at index {idx}\n  claim: {}\n  code: {}\n  fixed point: {}",
                ext.basis.name(),
                ext.basis.len(),
                record.claim(),
                record.godel_number(),
                record.is_fixed_point()
            );
            o.emit(text, json!({ "system": ext.basis.name(), "axioms": ext.basis.len(), "index": idx,
                                 "claim": record.claim(), "godel": record.godel_number().to_string(),
                                 "fixed_point": record.is_fixed_point() }))?;
            Ok(status(record.is_fixed_point()))
        }
        SystemCommand::Consearch { system: s, budget, mode, selfref, out } => {
            let mode = parse_mode(&mode)?;
            let mut g = system(&s)?;
            if selfref {
                g = self_ref_extend(&g);
            }
            let start = Instant::now();
            let verdict = consistency_search(&g, mode, budget.budget);
            let dir = out.as_ref().map(|p| p.parent().unwrap_or(std::path::Path::new(".")).to_path_buf());
            let record = RunRecord::from_verdict(&g, mode, budget.budget, &verdict, start.elapsed(), dir.as_deref())?;
            if let Some(path) = &out {
                std::fs::write(path, record.to_text())?;
            }
            o.emit(record.summary(), serde_json::to_value(&record)?)?;
            Ok(status(verdict.refutation().is_none()))
        }
        SystemCommand::Report { file } => {
            let text = std::fs::read_to_string(&file).with_context(|| file.display().to_string())?;
            let record = RunRecord::from_text(&text)?;
            o.emit(record.summary(), serde_json::to_value(&record)?)?;
            Ok(EXIT_OK)
        }
    }
}
