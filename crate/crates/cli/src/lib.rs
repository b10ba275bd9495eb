//! The `lps` command line.
//!
//! Exit codes: `0` for an affirmative verdict or plain success, `1` for a
//! negative verdict (a countermodel, an unsatisfied theory, a vicious
//! operator), `2` for usage and input errors.

mod files;

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use lps_core::classical::{consistency_schema, schema_forces_consistency};
use lps_core::definability::{
    closure, default_atoms, fixed_points, function_of, synthesize, ConnectiveBasis, TruthFunction,
};
use lps_core::embedding::{check_embedding, embed_translate, Embedding, SentenceCheck};
use lps_core::fo::{
    check_formula, entails_bounded, satisfies_formula, BoundedVerdict, Model, ModelBudget,
};
use lps_core::prop::{eval_prop, PropChecker, Valuation};
use lps_core::syntax::{parse_formula_inferring, Formula, Signature};
use lps_core::{Entailment, Tautology, TruthValue};

pub use files::{parse_theory, Theory};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandResult {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CommandResult {
    fn ok(stdout: String) -> Self {
        Self::verdict(true, stdout)
    }

    fn verdict(affirmative: bool, stdout: String) -> Self {
        CommandResult {
            exit_code: if affirmative { 0 } else { 1 },
            stdout,
            stderr: String::new(),
        }
    }

    fn error(message: impl std::fmt::Display) -> Self {
        CommandResult {
            exit_code: 2,
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "lps",
    version,
    about = "Workbench for the paraconsistent logics LP and strong LP"
)]
struct Cli {
    /// Print structured JSON instead of text
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a propositional formula under a valuation
    Eval {
        formula: String,
        /// Comma-separated atom=value pairs, e.g. p=T,q=P
        #[arg(long, default_value = "")]
        assign: String,
    },
    /// Print the full truth table of a formula
    Table { formula: String },
    /// Decide whether a formula is valid
    Taut { formula: String },
    /// Decide a propositional entailment written "P1; P2 |- C"
    Entail { sequent: String },
    /// List the unary or binary functions a basis defines
    Closure {
        #[arg(long, value_enum, default_value = "lp")]
        basis: BasisName,
        #[arg(long, default_value_t = 1)]
        arity: usize,
    },
    /// Build a formula computing a truth table given as a T/P/F string
    Synth { table: String },
    /// Fixed points of the unary operator a formula in `p` defines
    Paradox { formula: String },
    /// Inspect a model file
    Model {
        #[command(subcommand)]
        command: ModelCommand,
    },
    /// Search small models for a countermodel to a first-order entailment
    FoEntail {
        theory: PathBuf,
        conclusion: String,
        #[arg(long, default_value_t = 2)]
        max_size: usize,
        /// Maximum number of models to enumerate
        #[arg(long, default_value_t = lps_core::fo::DEFAULT_MODEL_BUDGET)]
        budget: u128,
    },
    /// Print the consistency schema for the signature of a file
    Schema {
        signature: PathBuf,
        /// Also check the schema against every model up to this size
        #[arg(long)]
        verify: Option<usize>,
    },
    /// Translate or check classical theories under an embedding
    Embed {
        #[command(subcommand)]
        command: EmbedCommand,
    },
}

#[derive(Subcommand)]
enum ModelCommand {
    /// Check that a model satisfies every formula of a theory file
    Check { model: PathBuf, theory: PathBuf },
    /// Check that no relation of a model takes the value P
    Consistent { model: PathBuf },
}

#[derive(Subcommand)]
enum EmbedCommand {
    /// Print the translation of a classical formula
    Translate { embedding: PathBuf, formula: String },
    /// Check translated sentences for consistency in a model
    Check {
        embedding: PathBuf,
        model: PathBuf,
        sentences: PathBuf,
        /// Classical theorems whose translations must hold in the model
        #[arg(long)]
        theorems: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum BasisName {
    Lp,
    Lps,
}

/// Runs one command. `args` includes the program name.
pub fn run<I, T>(args: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    CommandResult::ok(text)
                }
                _ => CommandResult {
                    exit_code: 2,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    let out = Output { json: cli.json };
    match dispatch(cli.command, out) {
        Ok(result) => result,
        Err(message) => CommandResult::error(message),
    }
}

#[derive(Clone, Copy)]
struct Output {
    json: bool,
}

impl Output {
    fn emit(&self, affirmative: bool, value: impl Serialize, text: String) -> CommandResult {
        let stdout = if self.json {
            let mut s = serde_json::to_string_pretty(&value).expect("serializable");
            s.push('\n');
            s
        } else {
            text
        };
        CommandResult::verdict(affirmative, stdout)
    }
}

type Outcome = Result<CommandResult, String>;

fn dispatch(command: Command, out: Output) -> Outcome {
    match command {
        Command::Eval { formula, assign } => eval(&formula, &assign, out),
        Command::Table { formula } => {
            let table = PropChecker::default()
                .truth_table(&parse(&formula)?)
                .map_err(err)?;
            Ok(out.emit(true, &table, table.to_string()))
        }
        Command::Taut { formula } => {
            let verdict = PropChecker::default()
                .is_tautology(&parse(&formula)?)
                .map_err(err)?;
            let text = match &verdict {
                Tautology::Valid => "valid\n".to_string(),
                Tautology::Countermodel(v) => format!("countermodel: {v}\n"),
            };
            Ok(out.emit(verdict == Tautology::Valid, &verdict, text))
        }
        Command::Entail { sequent } => entail(&sequent, out),
        Command::Closure { basis, arity } => {
            let basis = match basis {
                BasisName::Lp => ConnectiveBasis::lp(),
                BasisName::Lps => ConnectiveBasis::lps(),
            };
            let c = closure(&basis, arity).map_err(err)?;
            let text: String = c
                .members
                .iter()
                .map(|d| format!("{}  {}\n", d.function, d.witness))
                .collect();
            Ok(out.emit(true, &c, text))
        }
        Command::Synth { table } => {
            let f: TruthFunction = table.parse().map_err(err)?;
            let formula = synthesize(&f);
            let check = function_of(&formula, &default_atoms(f.arity())).map_err(err)?;
            if check != f {
                return Err(format!("synthesized formula computes {check}, not {f}"));
            }
            let value = json!({"function": f, "formula": formula});
            Ok(out.emit(true, value, format!("{formula}\n")))
        }
        Command::Paradox { formula } => paradox(&formula, out),
        Command::Model { command } => match command {
            ModelCommand::Check { model, theory } => model_check(&model, &theory, out),
            ModelCommand::Consistent { model } => {
                let m = load_model(&model)?;
                let cells = inconsistent_cells(&m);
                let mut text = String::from(if cells.is_empty() {
                    "consistent\n"
                } else {
                    "inconsistent\n"
                });
                for cell in &cells {
                    text.push_str(&format!("  {cell} = P\n"));
                }
                let value = json!({"consistent": cells.is_empty(), "inconsistent_cells": cells});
                Ok(out.emit(cells.is_empty(), value, text))
            }
        },
        Command::FoEntail {
            theory,
            conclusion,
            max_size,
            budget,
        } => fo_entail(&theory, &conclusion, max_size, budget, out),
        Command::Schema { signature, verify } => schema(&signature, verify, out),
        Command::Embed { command } => match command {
            EmbedCommand::Translate { embedding, formula } => {
                let e = load_embedding(&embedding)?;
                let phi = parse(&formula)?;
                let t = embed_translate(&phi, &e).map_err(err)?;
                let value = json!({"formula": phi, "translation": t});
                Ok(out.emit(true, value, format!("{t}\n")))
            }
            EmbedCommand::Check {
                embedding,
                model,
                sentences,
                theorems,
            } => embed_check(&embedding, &model, &sentences, theorems.as_deref(), out),
        },
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn parse(text: &str) -> Result<Formula, String> {
    parse_formula_inferring(text, &mut Signature::new()).map_err(err)
}

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_model(path: &Path) -> Result<Model, String> {
    Model::from_json(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_theory(path: &Path, base: Signature) -> Result<Theory, String> {
    parse_theory(&read(path)?, base).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_embedding(path: &Path) -> Result<Embedding, String> {
    Embedding::from_json(&read(path)?, &mut Signature::new())
        .map_err(|e| format!("{}: {e}", path.display()))
}

fn eval(formula: &str, assign: &str, out: Output) -> Outcome {
    let f = parse(formula)?;
    let mut v = Valuation::new();
    for pair in assign.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (atom, value) = pair
            .split_once('=')
            .ok_or_else(|| format!("expected ATOM=VALUE, found `{pair}`"))?;
        let value: TruthValue = value.trim().parse().map_err(err)?;
        v.set(atom.trim(), value);
    }
    let value = eval_prop(&f, &v).map_err(err)?;
    let payload = json!({"formula": f, "valuation": v, "value": value});
    Ok(out.emit(true, payload, format!("{value}\n")))
}

fn entail(sequent: &str, out: Output) -> Outcome {
    let (lhs, rhs) = sequent
        .split_once("|-")
        .ok_or("expected a sequent of the form \"P1; P2 |- C\"")?;
    let premises = lhs
        .split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(parse)
        .collect::<Result<Vec<_>, _>>()?;
    let conclusion = parse(rhs.trim())?;
    let verdict = PropChecker::default()
        .entails(&premises, &conclusion)
        .map_err(err)?;
    let text = match &verdict {
        Entailment::Entailed => "entailed\n".to_string(),
        Entailment::Countermodel(v) => format!("countermodel: {v}\n"),
    };
    Ok(out.emit(verdict == Entailment::Entailed, &verdict, text))
}

fn paradox(formula: &str, out: Output) -> Outcome {
    let f = parse(formula)?;
    let g = function_of(&f, &["p".to_string()]).map_err(err)?;
    let points = fixed_points(&g).map_err(err)?;
    let vicious = points.is_empty();
    let mut text = format!("function: {g}\nfixed points: ");
    if vicious {
        text.push_str("none\nvicious\n");
    } else {
        let letters: Vec<String> = points.iter().map(|v| v.to_string()).collect();
        text.push_str(&letters.join(" "));
        text.push('\n');
    }
    let value = json!({"function": g, "fixed_points": points, "vicious": vicious});
    Ok(out.emit(!vicious, value, text))
}

fn model_check(model: &Path, theory: &Path, out: Output) -> Outcome {
    let m = load_model(model)?;
    let t = load_theory(theory, m.signature())?;
    let mut failing = Vec::new();
    for f in &t.formulas {
        check_formula(f, &m.signature()).map_err(err)?;
        if !satisfies_formula(&m, f).map_err(err)? {
            failing.push(f.clone());
        }
    }
    let mut text = String::from(if failing.is_empty() {
        "satisfied\n"
    } else {
        "not satisfied\n"
    });
    for f in &failing {
        text.push_str(&format!("  fails: {f}\n"));
    }
    let value = json!({"satisfied": failing.is_empty(), "failing": failing});
    Ok(out.emit(failing.is_empty(), value, text))
}

fn inconsistent_cells(m: &Model) -> Vec<String> {
    let mut cells = Vec::new();
    for (name, _) in m.signature().relations() {
        let rel = m.relation(name).expect("relation of the model");
        for (args, v) in m.tuples(rel.arity()).zip(rel.values()) {
            if *v == TruthValue::Both {
                let args: Vec<&str> = args.iter().map(|&e| m.element_name(e)).collect();
                cells.push(if args.is_empty() {
                    name.to_string()
                } else {
                    format!("{name}({})", args.join(", "))
                });
            }
        }
    }
    cells
}

fn fo_entail(
    theory: &Path,
    conclusion: &str,
    max_size: usize,
    budget: u128,
    out: Output,
) -> Outcome {
    let mut t = load_theory(theory, Signature::new())?;
    let conclusion = parse_formula_inferring(conclusion, &mut t.signature).map_err(err)?;
    let verdict = entails_bounded(
        &t.formulas,
        &conclusion,
        &t.signature,
        max_size,
        &ModelBudget { max_models: budget },
    )
    .map_err(err)?;
    let text = match &verdict {
        BoundedVerdict::Countermodel { model } => format!("countermodel:\n{}\n", model.to_json()),
        BoundedVerdict::NoCounterexampleUpTo { max_size } => {
            format!("no countermodel up to size {max_size}\n")
        }
    };
    let affirmative = matches!(verdict, BoundedVerdict::NoCounterexampleUpTo { .. });
    Ok(out.emit(affirmative, &verdict, text))
}

fn schema(path: &Path, verify: Option<usize>, out: Output) -> Outcome {
    let t = load_theory(path, Signature::new())?;
    let schema = consistency_schema(&t.signature);
    let mut text: String = schema.iter().map(|f| format!("{f}\n")).collect();
    let Some(k) = verify else {
        return Ok(out.emit(true, json!({"schema": schema}), text));
    };
    let report =
        schema_forces_consistency(&t.signature, k, &ModelBudget::default()).map_err(err)?;
    text.push_str(&format!(
        "checked {} models up to size {k}: {} consistent, {} satisfy the schema, {} violations\n",
        report.models_checked,
        report.consistent_models,
        report.schema_models,
        report.violations.len()
    ));
    Ok(out.emit(report.holds(), &report, text))
}

fn embed_check(
    embedding: &Path,
    model: &Path,
    sentences: &Path,
    theorems: Option<&Path>,
    out: Output,
) -> Outcome {
    let e = load_embedding(embedding)?;
    let m = load_model(model)?;
    let sentences = load_theory(sentences, Signature::new())?.formulas;
    let theorems = match theorems {
        Some(path) => load_theory(path, Signature::new())?.formulas,
        None => Vec::new(),
    };
    let report = check_embedding(&e, &sentences, &m, &theorems).map_err(err)?;
    let mut text = String::new();
    let mut line = |kind: &str, c: &SentenceCheck| {
        let status = if c.passed { "ok  " } else { "FAIL" };
        text.push_str(&format!("{status} {kind} {}\n", c.sentence));
    };
    report
        .consistency
        .iter()
        .for_each(|c| line("consistent", c));
    report.theorems.iter().for_each(|c| line("theorem   ", c));
    let failed = report
        .consistency
        .iter()
        .chain(&report.theorems)
        .filter(|c| !c.passed)
        .count();
    text.push_str(&format!(
        "{} checks, {failed} failed\n",
        report.consistency.len() + report.theorems.len()
    ));
    Ok(out.emit(report.passed(), &report, text))
}
