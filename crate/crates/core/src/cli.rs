//! Command-line driver. Exit codes: 0 success, 1 semantic failure,
//! 2 usage or parse failure.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use crate::conjecture::{run_judgment, ConjectureReport, DEFAULT_MAX_STEPS};
use crate::corpus;
use crate::kernel::{check_proof, infer_sort, Rejection};
use crate::rewrite::{normalize_term, normalize_traced, StepBudget};
use crate::surface::{judgment_line, parse_file, parse_term, Decl, ParseOptions, SourceFile, TheoremDecl};
use crate::syntax::{Judgment, Logic, Term};
use crate::translate::{translate_judgment, TranslateError, TranslationUnit};

pub const EXIT_OK: i32 = 0;
pub const EXIT_SEMANTIC: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "hawk", version, about = "Proof checker and extensionality-eliminating translator for higher type arithmetic")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum LogicArg {
    Lhaw,
    Lehaw,
}

impl From<LogicArg> for Logic {
    fn from(l: LogicArg) -> Logic {
        match l {
            LogicArg::Lhaw => Logic::Lhaw,
            LogicArg::Lehaw => Logic::Lehaw,
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check every theorem of a file.
    Check {
        file: PathBuf,
        /// Check in this logic instead of the file's `logic` line.
        #[arg(long, value_enum)]
        logic: Option<LogicArg>,
    },
    /// Translate a file into lhaw; the output is re-checked before it is written.
    Translate {
        file: PathBuf,
        #[arg(short, long)]
        out: PathBuf,
        #[arg(long, value_enum)]
        logic: Option<LogicArg>,
    },
    /// Print the normal form of a closed term.
    Normalize {
        #[arg(short, long)]
        expr: String,
        /// Print every contraction.
        #[arg(long)]
        trace: bool,
        /// Take definitions from this file.
        #[arg(long)]
        defs: Option<PathBuf>,
        /// Print numerals as iterated successors.
        #[arg(long)]
        unary: bool,
    },
    /// Test whether translation respects proof reduction (experimental).
    Conjecture {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_MAX_STEPS)]
        max_steps: usize,
    },
    /// Run the bundled corpus.
    Corpus {
        /// Item name, bare item name, or suite name.
        #[arg(long)]
        filter: Option<String>,
    },
}

/// Runs one invocation, writing to the given streams.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return code;
        }
    };
    let mut io = Io { out, err };
    let result = match cli.command {
        Command::Check { file, logic } => cmd_check(&mut io, &file, logic.map(Into::into)),
        Command::Translate { file, out, logic } => cmd_translate(&mut io, &file, &out, logic.map(Into::into)),
        Command::Normalize { expr, trace, defs, unary } => cmd_normalize(&mut io, &expr, trace, defs.as_deref(), unary),
        Command::Conjecture { file, max_steps } => cmd_conjecture(&mut io, &file, max_steps),
        Command::Corpus { filter } => cmd_corpus(&mut io, filter.as_deref()),
    };
    match result {
        Ok(code) => code,
        Err(Failure(code, message)) => {
            let _ = writeln!(io.err, "error: {message}");
            code
        }
    }
}

struct Io<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

/// Early exit with a code and a message for stderr.
struct Failure(i32, String);

type CmdResult = Result<i32, Failure>;

fn usage(message: impl Into<String>) -> Failure {
    Failure(EXIT_USAGE, message.into())
}

fn io_error(e: std::io::Error) -> Failure {
    Failure(EXIT_USAGE, e.to_string())
}

fn load(path: &Path) -> Result<SourceFile, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    parse_file(&text).map_err(|e| usage(format!("{}:{e}", path.display())))
}

fn judgment_of(logic: Logic, t: &TheoremDecl) -> Judgment {
    Judgment { logic, sig: t.sig.clone(), ctx: t.ctx.clone(), proof: t.proof.clone(), goal: t.goal.clone() }
}

fn dump_rejection(err: &mut dyn Write, what: &str, j: &Judgment, r: &Rejection) -> std::io::Result<()> {
    writeln!(err, "{what}")?;
    writeln!(err, "  judgment: {}", judgment_line(j.logic, &j.sig, &j.ctx, &j.goal))?;
    writeln!(err, "  rule:     {}", r.rule)?;
    writeln!(err, "  at:       {}", r.path_string())?;
    writeln!(err, "  error:    {} ({})", r.error, r.error.code())
}

fn cmd_check(io: &mut Io, path: &Path, logic: Option<Logic>) -> CmdResult {
    let file = load(path)?;
    let logic = logic.unwrap_or(file.logic);
    let mut rejected = 0;
    let mut total = 0;
    for t in file.theorems() {
        total += 1;
        let report = check_proof(logic, &t.sig, &t.ctx, &t.proof, &t.goal);
        match &report.rejection {
            None => writeln!(io.out, "{}\taccepted", t.name).map_err(io_error)?,
            Some(r) => {
                rejected += 1;
                writeln!(io.out, "{}\trejected\t{}\t{} at {}", t.name, r.error.code(), r.error, r.path_string())
                    .map_err(io_error)?;
            }
        }
    }
    writeln!(io.out, "{total} theorems, {} accepted, {rejected} rejected [{logic}]", total - rejected).map_err(io_error)?;
    Ok(if rejected == 0 { EXIT_OK } else { EXIT_SEMANTIC })
}

fn cmd_translate(io: &mut Io, path: &Path, out_path: &Path, logic: Option<Logic>) -> CmdResult {
    let file = load(path)?;
    let logic = logic.unwrap_or(file.logic);
    let mut units: Vec<(String, TranslationUnit)> = Vec::new();
    for t in file.theorems() {
        let j = judgment_of(logic, t);
        match translate_judgment(&j) {
            Ok(unit) => units.push((t.name.clone(), unit)),
            Err(TranslateError::SourceRejected(r)) => {
                dump_rejection(io.err, &format!("source theorem `{}` rejected", t.name), &j, &r).map_err(io_error)?;
                return Ok(EXIT_SEMANTIC);
            }
            Err(e) => {
                writeln!(io.err, "theorem `{}`: {e}", t.name).map_err(io_error)?;
                return Ok(EXIT_SEMANTIC);
            }
        }
    }

    let mut target = SourceFile::new(Logic::Lhaw);
    target.generated = true;
    for (name, unit) in &units {
        let j = &unit.target;
        target.decls.push(Decl::Theorem(TheoremDecl {
            name: name.clone(),
            sig: j.sig.clone(),
            ctx: j.ctx.clone(),
            goal: j.goal.clone(),
            proof: j.proof.clone(),
            pos: Default::default(),
        }));
    }
    let mut text = format!("-- translated from {}\n", path.display());
    for (name, unit) in &units {
        for note in &unit.notes {
            text.push_str(&format!("-- {name}: {note}\n"));
        }
    }
    text.push_str(&target.to_string());

    // Re-check what will actually be written, not the in-memory terms.
    let reparsed = parse_file(&text).map_err(|e| Failure(EXIT_SEMANTIC, format!("translated output does not parse: {e}")))?;
    for ((name, unit), t) in units.iter().zip(reparsed.theorems()) {
        let j = judgment_of(Logic::Lhaw, t);
        if let Some(r) = check_proof(Logic::Lhaw, &j.sig, &j.ctx, &j.proof, &j.goal).rejection {
            dump_rejection(io.err, &format!("translation of `{name}` rejected by the lhaw kernel"), &j, &r)
                .map_err(io_error)?;
            writeln!(io.err, "  source:   {}", judgment_line(logic, &unit.source.sig, &unit.source.ctx, &unit.source.goal))
                .map_err(io_error)?;
            return Ok(EXIT_SEMANTIC);
        }
    }
    std::fs::write(out_path, text).map_err(|e| usage(format!("{}: {e}", out_path.display())))?;
    writeln!(io.out, "{} theorems translated to {} and re-checked in lhaw", units.len(), out_path.display())
        .map_err(io_error)?;
    Ok(EXIT_OK)
}

/// `S (S 0)` rather than `2`.
pub fn unary(t: &Term) -> String {
    match t {
        Term::Zero => "0".into(),
        Term::Succ(inner) if matches!(**inner, Term::Zero) => "S 0".into(),
        Term::Succ(inner) => format!("S ({})", unary(inner)),
        other => other.to_string(),
    }
}

fn cmd_normalize(io: &mut Io, expr: &str, trace: bool, defs: Option<&Path>, unary_out: bool) -> CmdResult {
    let term = parse_term(expr, ParseOptions::default()).map_err(|e| usage(format!("expression: {e}")))?;
    let term = match defs {
        Some(path) => term.subst(&load(path)?.def_substitution()),
        None => term,
    };
    let sort = infer_sort(&Default::default(), &term).map_err(|e| usage(format!("expression is ill-sorted: {e}")))?;
    let budget = StepBudget::from_env();
    let show = |t: &Term| if unary_out { unary(t) } else { t.to_string() };
    let nf = if trace {
        let (nf, steps) = normalize_traced(&term, budget).map_err(|e| Failure(EXIT_SEMANTIC, e.to_string()))?;
        for (i, s) in steps.steps.iter().enumerate() {
            let pos: Vec<String> = s.position.iter().map(usize::to_string).collect();
            writeln!(io.out, "{:>4}  {:<10} @[{}]  {}", i + 1, s.rule.name(), pos.join("."), show(&s.after))
                .map_err(io_error)?;
        }
        nf
    } else {
        normalize_term(&term).map_err(|e| Failure(EXIT_SEMANTIC, e.to_string()))?
    };
    writeln!(io.out, "{}", show(&nf)).map_err(io_error)?;
    if trace {
        writeln!(io.err, "sort {sort}").map_err(io_error)?;
    }
    Ok(EXIT_OK)
}

fn cmd_conjecture(io: &mut Io, path: &Path, max_steps: usize) -> CmdResult {
    let file = load(path)?;
    let theorems: Vec<&TheoremDecl> = file.theorems().collect();
    for t in &theorems {
        if let Some(r) = check_proof(file.logic, &t.sig, &t.ctx, &t.proof, &t.goal).rejection {
            dump_rejection(io.err, &format!("theorem `{}` rejected", t.name), &judgment_of(file.logic, t), &r)
                .map_err(io_error)?;
            return Ok(EXIT_SEMANTIC);
        }
    }
    let parts: Vec<ConjectureReport> =
        theorems.par_iter().map(|t| run_judgment(&t.name, &judgment_of(file.logic, t), max_steps)).collect();
    let mut report = ConjectureReport::default();
    for p in parts {
        report.merge(p);
    }
    writeln!(io.out, "{report}").map_err(io_error)?;
    Ok(EXIT_OK)
}

fn cmd_corpus(io: &mut Io, filter: Option<&str>) -> CmdResult {
    let results = corpus::run(filter);
    if results.is_empty() {
        return Err(usage(format!("no corpus item matches `{}`", filter.unwrap_or(""))));
    }
    let mut failed = 0;
    for r in &results {
        writeln!(io.out, "{r}").map_err(io_error)?;
        if !r.passed {
            failed += 1;
            writeln!(io.err, "{}: {}", r.name, r.detail().unwrap_or("failed")).map_err(io_error)?;
        }
    }
    writeln!(io.err, "{} items, {} passed, {failed} failed", results.len(), results.len() - failed).map_err(io_error)?;
    Ok(if failed == 0 { EXIT_OK } else { EXIT_SEMANTIC })
}
