//! `argcl`: classification, solving, gadgets, reductions and source oracles
//! for argumentation over Boolean constraint languages.
//!
//! Exit status: 0 YES or success, 1 NO, 2 usage or input error, 3 budget
//! exceeded.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use argcl_core::expressibility::{express, verify_expresses, GadgetTarget};
use argcl_core::formulas::{parse_instance_file, serialize_instance};
use argcl_core::reductions::{
    parse_abduction_file, parse_dimacs, reduce, solve_source, ReductionKind, Source, SourceKind,
    SourceProblem,
};
use argcl_core::relations::{parse_language, serialize_language};
use argcl_core::{
    classify_complexity, ArgInstance, ConstraintLanguage, Engine, Error, GammaFormula, Limits,
    ParseError, ParseErrorKind, Solver,
};
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "argcl", version, about = "Argumentation over Boolean constraint languages")]
struct Cli {
    /// Cap on assignments visited by one enumeration.
    #[arg(long, global = true, default_value_t = Limits::default().max_models)]
    max_models: u64,
    /// Largest knowledge base searched exactly.
    #[arg(long, global = true, default_value_t = Limits::default().max_kb)]
    max_kb: usize,
    /// `generic` forces exhaustive enumeration everywhere.
    #[arg(long, global = true, value_enum, default_value_t = EngineArg::Auto)]
    engine: EngineArg,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum EngineArg {
    Auto,
    Generic,
}

#[derive(Subcommand)]
enum Command {
    /// Print the algebraic flags of each relation and of the language.
    Props { relfile: PathBuf },
    /// Print the complexity of ARG, ARGCHECK and ARGREL for the language.
    Classify { relfile: PathBuf },
    /// Decide one question about an instance; prints YES or NO.
    Solve {
        #[arg(value_enum)]
        question: Question,
        instance: PathBuf,
    },
    /// Print a minimal support of the claim, or every one with `--all`.
    Supports {
        instance: PathBuf,
        #[arg(long)]
        all: bool,
    },
    /// Build a gadget for `target` over the language and verify it.
    Express {
        /// One of: neq, impl, and-not, t, f, eq, eq-and-t, eq-and-f, eq-exists.
        target: String,
        relfile: PathBuf,
    },
    /// Write the target instance of a reduction as `<prefix>.rel` + `<prefix>.arg`.
    Reduce {
        /// Reduction name; see the README for the list.
        kind: String,
        source: PathBuf,
        /// Output prefix; defaults to the source path with the kind as extension.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide a source problem by brute force; prints YES or NO.
    Oracle {
        /// One of: 3sat, pos1in3, critsat, abd, abdp.
        problem: String,
        source: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Question {
    /// Is the knowledge base consistent?
    Sat,
    /// Does the knowledge base entail the claim?
    Imp,
    /// Does the claim have an argument?
    Arg,
    /// Is the whole knowledge base an argument for the claim?
    Check,
    /// Is the relevant formula in some argument for the claim?
    Rel,
}

enum Outcome {
    Done,
    Answer(bool),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let limits = Limits {
        max_models: cli.max_models,
        max_kb: cli.max_kb,
    };
    let engine = match cli.engine {
        EngineArg::Auto => Engine::Auto,
        EngineArg::Generic => Engine::Generic,
    };
    match run(cli.command, engine, limits) {
        Ok(Outcome::Done) | Ok(Outcome::Answer(true)) => ExitCode::SUCCESS,
        Ok(Outcome::Answer(false)) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_budget() { 3 } else { 2 })
        }
    }
}

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| io_error(path, e))
}

fn io_error(path: &Path, e: std::io::Error) -> Error {
    ParseError::new(0, ParseErrorKind::Io(format!("{}: {e}", path.display()))).into()
}

fn load_language(path: &Path) -> Result<ConstraintLanguage, Error> {
    Ok(parse_language(&read(path)?)?)
}

fn yes_no(answer: bool) -> Outcome {
    println!("{}", if answer { "YES" } else { "NO" });
    Outcome::Answer(answer)
}

fn run(command: Command, engine: Engine, limits: Limits) -> Result<Outcome, Error> {
    match command {
        Command::Props { relfile } => {
            let lang = load_language(&relfile)?;
            for r in lang.relations() {
                print_flags(r.name(), &r.properties().flags());
            }
            print_flags("language", &lang.properties().flags());
            Ok(Outcome::Done)
        }
        Command::Classify { relfile } => {
            let report = classify_complexity(&load_language(&relfile)?);
            println!("ARG: {}", report.arg);
            println!("ARGCHECK: {}", report.argcheck);
            println!("ARGREL: {}", report.argrel);
            Ok(Outcome::Done)
        }
        Command::Solve { question, instance } => {
            let inst = parse_instance_file(&instance)?;
            let solver = Solver::for_instance(&inst, engine, limits);
            let answer = match question {
                Question::Sat => solver.is_consistent(&inst.delta)?,
                Question::Imp => solver.entails(&inst.delta, &inst.alpha)?,
                Question::Arg => solver.arg_exists(&inst.delta, &inst.alpha)?,
                Question::Check => {
                    let all: Vec<&GammaFormula> = inst.delta.iter().collect();
                    solver.argcheck(&all, &inst.alpha)?
                }
                Question::Rel => solver.argrel(&inst.delta, &inst.alpha, inst.require_relevant()?)?,
            };
            Ok(yes_no(answer))
        }
        Command::Supports { instance, all } => {
            let inst = parse_instance_file(&instance)?;
            let solver = Solver::for_instance(&inst, engine, limits);
            let supports = if all {
                solver.enumerate_minimal_supports(&inst.delta, &inst.alpha)?
            } else {
                solver.find_minimal_support(&inst.delta, &inst.alpha)?.into_iter().collect()
            };
            if supports.is_empty() {
                println!("no support");
                return Ok(Outcome::Answer(false));
            }
            for s in &supports {
                let labels: Vec<&str> = s.indices().iter().map(|&i| inst.labels[i].as_str()).collect();
                println!("support: {{{}}}", labels.join(", "));
            }
            Ok(Outcome::Answer(true))
        }
        Command::Express { target, relfile } => {
            let target = GadgetTarget::from_name(&target)
                .ok_or_else(|| Error::Precondition(format!("unknown gadget target `{target}`")))?;
            let lang = load_language(&relfile)?;
            let expr = express(target, &lang)?;
            let verified = verify_expresses(&expr.formula, &target.reference(), &limits)?;
            println!("{}", expr.formula);
            println!("verified: {verified}");
            Ok(Outcome::Answer(verified))
        }
        Command::Reduce { kind, source, out } => {
            let kind = ReductionKind::from_name(&kind)
                .ok_or_else(|| Error::Precondition(format!("unknown reduction `{kind}`")))?;
            let src = load_source(kind.source(), &source)?;
            let target = reduce(kind, &src)?;
            let prefix = out.unwrap_or_else(|| source.with_extension(kind.name()));
            write_pair(&prefix, &target)?;
            Ok(Outcome::Done)
        }
        Command::Oracle { problem, source } => {
            let problem = SourceProblem::from_name(&problem)
                .ok_or_else(|| Error::Precondition(format!("unknown source problem `{problem}`")))?;
            let src = load_source(SourceKind::Problem(problem), &source)?;
            Ok(yes_no(solve_source(problem, &src)?))
        }
    }
}

fn print_flags(title: &str, flags: &[(&str, bool)]) {
    println!("[{title}]");
    for (name, value) in flags {
        println!("  {name}: {value}");
    }
}

fn load_source(kind: SourceKind, path: &Path) -> Result<Source, Error> {
    Ok(match kind {
        SourceKind::Problem(p) if p.takes_cnf() => Source::Cnf(parse_dimacs(&read(path)?)?),
        SourceKind::Problem(_) => Source::Abd(parse_abduction_file(path)?),
        SourceKind::Arg | SourceKind::ArgCheck => Source::Arg(parse_instance_file(path)?),
    })
}

/// Writes `<prefix>.rel` and `<prefix>.arg`, the latter referencing the former.
fn write_pair(prefix: &Path, inst: &ArgInstance) -> Result<(), Error> {
    let with_ext = |ext: &str| {
        let mut p = prefix.as_os_str().to_owned();
        p.push(ext);
        PathBuf::from(p)
    };
    let rel = with_ext(".rel");
    let arg = with_ext(".arg");
    let rel_name = rel
        .file_name()
        .and_then(|n| n.to_str())
        .ok_or_else(|| Error::Precondition(format!("bad output prefix {}", prefix.display())))?
        .to_string();
    fs::write(&rel, serialize_language(&inst.language)).map_err(|e| io_error(&rel, e))?;
    fs::write(&arg, serialize_instance(inst, Some(&rel_name))).map_err(|e| io_error(&arg, e))?;
    println!("wrote {}", rel.display());
    println!("wrote {}", arg.display());
    Ok(())
}
