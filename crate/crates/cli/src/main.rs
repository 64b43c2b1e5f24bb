//! `argclass`: classify constraint languages and solve argumentation instances.
//!
//! Exit codes: 0 success, 2 parse error, 3 semantic error, 4 oracle disagreement.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use argclass_core::argumentation::{
    check_argument, exists_argument, exists_argument_rel, generate_from_1in3, ArgEngine, ArgVerdict,
    OneInThreeVariant,
};
use argclass_core::classify::{complexity_table, TableRow};
use argclass_core::coclone::{construct_eq_tf, equality_available, pp_define, Closure, PpOutcome};
use argclass_core::entailment::{implies, ImpEngine};
use argclass_core::formulas::{language_of, parse_cnf, Document, GammaFormula, KnowledgeBase};
use argclass_core::limits::Limits;
use argclass_core::relations::{classify_language, BooleanRelation, ConstraintLanguage, PropertySet};
use argclass_core::xcheck::{run_suite, XcheckReport};
use argclass_core::Error;

#[derive(Parser)]
#[command(name = "argclass", version, about = "Argumentation over Boolean constraint languages")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the language's structural flags and its complexity table.
    Classify { file: PathBuf },
    /// Decide an instance.
    Solve {
        #[arg(long, value_enum)]
        problem: ProblemArg,
        #[arg(long, value_enum, default_value = "auto")]
        engine: EngineArg,
        /// Clause width bound for the wsat engine.
        #[arg(long, default_value_t = 2)]
        r: usize,
        file: PathBuf,
    },
    /// Look for a primitive positive definition of a target relation.
    Implement {
        file: PathBuf,
        #[arg(long, value_enum)]
        target: TargetArg,
        #[arg(long, default_value_t = 2)]
        max_aux: usize,
        #[arg(long, default_value_t = 3)]
        max_constraints: usize,
    },
    /// Build an ARG instance from a positive 3-CNF.
    Generate {
        #[arg(long = "from-1in3")]
        from_1in3: PathBuf,
        #[arg(long, value_enum, default_value = "eq-tf")]
        variant: VariantArg,
    },
    /// Run an oracle-agreement sweep.
    Xcheck {
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ProblemArg {
    Arg,
    ArgCheck,
    ArgRel,
    Imp,
}

#[derive(Clone, Copy, ValueEnum)]
enum EngineArg {
    Auto,
    Brute,
    Subset,
    Clique,
    Wsat,
    Schaefer,
}

#[derive(Clone, Copy, ValueEnum)]
enum TargetArg {
    Eq,
    Neq,
    T,
    F,
    EqTf,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    EqTf,
    Neq,
    Ess,
}

enum Failure {
    Core(Error),
    Io(String),
    Disagreement,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

fn main() -> ExitCode {
    Limits::from_env().install();
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Disagreement) => ExitCode::from(4),
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            match e {
                Error::Parse { .. } => ExitCode::from(2),
                _ => ExitCode::from(3),
            }
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn json(value: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable report");
    s.push('\n');
    s
}

fn run(command: Command) -> Result<String, Failure> {
    match command {
        Command::Classify { file } => classify(&Document::parse(&read(&file)?)?),
        Command::Solve {
            problem,
            engine,
            r,
            file,
        } => solve(problem, engine, r, &Document::parse(&read(&file)?)?),
        Command::Implement {
            file,
            target,
            max_aux,
            max_constraints,
        } => implement(&Document::parse(&read(&file)?)?, target, max_aux, max_constraints),
        Command::Generate { from_1in3, variant } => generate(&read(&from_1in3)?, variant),
        Command::Xcheck { suite, seed } => {
            let report: XcheckReport = run_suite(&suite, seed)?;
            let out = json(&report);
            if report.passed() {
                Ok(out)
            } else {
                print!("{out}");
                Err(Failure::Disagreement)
            }
        }
    }
}

/// The declared relations, or the relations the formulas use when none are declared.
fn language(doc: &Document) -> Result<ConstraintLanguage, Failure> {
    if !doc.relations.is_empty() {
        return Ok(doc.declared_language()?);
    }
    let formulas = doc.formulas.iter().chain(&doc.claim).chain(&doc.psi);
    Ok(language_of(formulas)?)
}

#[derive(Serialize)]
struct ClassifyReport {
    relations: Vec<String>,
    properties: PropertySet,
    flags: Vec<&'static str>,
    complexity: Vec<TableRow>,
}

fn classify(doc: &Document) -> Result<String, Failure> {
    let lang = language(doc)?;
    let properties = classify_language(&lang)?;
    Ok(json(&ClassifyReport {
        relations: lang.iter().map(|r| r.name().to_string()).collect(),
        properties,
        flags: properties.set_flags(),
        complexity: complexity_table(&lang)?,
    }))
}

#[derive(Serialize)]
struct SupportItem {
    index: usize,
    formula: String,
}

#[derive(Serialize)]
struct SolveReport {
    problem: &'static str,
    engine: &'static str,
    decision: bool,
    certificate: Option<String>,
    support: Option<Vec<SupportItem>>,
}

fn engine_name(e: EngineArg) -> &'static str {
    match e {
        EngineArg::Auto => "auto",
        EngineArg::Brute => "brute",
        EngineArg::Subset => "subset",
        EngineArg::Clique => "clique",
        EngineArg::Wsat => "wsat",
        EngineArg::Schaefer => "schaefer",
    }
}

fn unsupported(problem: &str, engine: EngineArg) -> Failure {
    Failure::Core(Error::Dispatch(format!(
        "engine {} is not available for {problem}",
        engine_name(engine)
    )))
}

fn solve(problem: ProblemArg, engine: EngineArg, r: usize, doc: &Document) -> Result<String, Failure> {
    let delta = doc.knowledge_base();
    let claim = doc
        .claim
        .clone()
        .ok_or_else(|| Failure::Core(Error::parse(0, "instance has no claim line")))?;
    let verdict_report = |name, v: ArgVerdict, delta: &KnowledgeBase| SolveReport {
        problem: name,
        engine: engine_name(engine),
        decision: v.decision,
        certificate: Some(v.certificate.to_string()),
        support: v.support.map(|s| {
            s.into_iter()
                .map(|index| SupportItem {
                    index,
                    formula: delta.formulas()[index].to_string(),
                })
                .collect()
        }),
    };
    let report = match problem {
        ProblemArg::Arg => {
            let e = match engine {
                EngineArg::Auto => ArgEngine::Auto,
                EngineArg::Brute => ArgEngine::Brute,
                EngineArg::Subset => ArgEngine::Subset,
                EngineArg::Clique => ArgEngine::Clique,
                EngineArg::Wsat => ArgEngine::Wsat { r },
                EngineArg::Schaefer => return Err(unsupported("arg", engine)),
            };
            verdict_report("arg", exists_argument(&delta, &claim, e)?, &delta)
        }
        ProblemArg::ArgCheck => {
            if !matches!(engine, EngineArg::Auto | EngineArg::Brute) {
                return Err(unsupported("arg-check", engine));
            }
            verdict_report("arg-check", check_argument(&delta, &claim)?, &delta)
        }
        ProblemArg::ArgRel => {
            if !matches!(engine, EngineArg::Auto | EngineArg::Brute) {
                return Err(unsupported("arg-rel", engine));
            }
            let psi: &GammaFormula = doc
                .psi
                .as_ref()
                .ok_or_else(|| Failure::Core(Error::parse(0, "arg-rel needs a rel: line")))?;
            verdict_report("arg-rel", exists_argument_rel(&delta, psi, &claim)?, &delta)
        }
        ProblemArg::Imp => {
            let e = match engine {
                EngineArg::Auto => ImpEngine::Auto,
                EngineArg::Brute => ImpEngine::Brute,
                EngineArg::Schaefer => ImpEngine::Schaefer,
                _ => return Err(unsupported("imp", engine)),
            };
            SolveReport {
                problem: "imp",
                engine: engine_name(engine),
                decision: implies(&delta, &claim, e)?,
                certificate: None,
                support: None,
            }
        }
    };
    Ok(json(&report))
}

#[derive(Serialize)]
struct ImplementReport {
    target: String,
    method: &'static str,
    closure: &'static str,
    outcome: &'static str,
    definition: Option<String>,
}

fn closure_name(c: Closure) -> &'static str {
    match c {
        Closure::Full => "full",
        Closure::NoEq => "no_eq",
        Closure::NoExistsNoEq => "no_exists_no_eq",
    }
}

fn implement(doc: &Document, target: TargetArg, max_aux: usize, max_constraints: usize) -> Result<String, Failure> {
    let lang = language(doc)?;
    let (rel, closure) = match target {
        TargetArg::Eq => (BooleanRelation::equality(), Closure::NoEq),
        TargetArg::Neq => (BooleanRelation::disequality(), Closure::NoExistsNoEq),
        TargetArg::T => (BooleanRelation::truth(), Closure::NoExistsNoEq),
        TargetArg::F => (BooleanRelation::falsity(), Closure::NoExistsNoEq),
        TargetArg::EqTf => (BooleanRelation::eq_tf(), Closure::NoExistsNoEq),
    };
    let constructed = match target {
        TargetArg::Eq => match equality_available(&lang) {
            Ok(PpOutcome::Found(d)) => Some(d),
            Ok(_) | Err(Error::Domain(_)) => None,
            Err(e) => return Err(e.into()),
        },
        TargetArg::EqTf => lang.iter().find_map(|r| construct_eq_tf(r).ok()),
        _ => None,
    };
    let by_construction = lang.iter().any(|r| construct_eq_tf(r).is_ok());
    let (method, outcome) = match constructed {
        Some(d) if by_construction => ("construction", PpOutcome::Found(d)),
        Some(d) => ("search", PpOutcome::Found(d)),
        None => ("search", pp_define(&lang, &rel, closure, max_aux, max_constraints)?),
    };
    Ok(json(&ImplementReport {
        target: rel.name().to_string(),
        method,
        closure: closure_name(closure),
        outcome: outcome.tag(),
        definition: outcome.found().map(|d| d.to_string()),
    }))
}

fn generate(cnf_text: &str, variant: VariantArg) -> Result<String, Failure> {
    let phi = parse_cnf(cnf_text)?;
    let (v, name) = match variant {
        VariantArg::EqTf => (OneInThreeVariant::EqTf, "eq-tf"),
        VariantArg::Neq => (OneInThreeVariant::Neq, "neq"),
        VariantArg::Ess => (OneInThreeVariant::Ess, "ess"),
    };
    let inst = generate_from_1in3(&phi, v)?;
    let mut doc = Document::instance(&inst.delta, &inst.alpha, None);
    doc.header.push(format!("generated from positive 3-CNF: {phi}"));
    doc.header.push(format!("variant: {name}"));
    if inst.degenerate {
        doc.header.push("degenerate: no clauses".into());
    }
    Ok(doc.to_text())
}
