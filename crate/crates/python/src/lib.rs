//! Python bindings. Sources are passed as text; terms, formulas and
//! proofs come back in concrete syntax.

use hawk_core::conjecture::{run_judgment, ConjectureReport, DEFAULT_MAX_STEPS};
use hawk_core::corpus;
use hawk_core::kernel::{check_proof, infer_sort as kernel_infer_sort};
use hawk_core::rewrite::normalize_term;
use hawk_core::surface::{parse_file, parse_term, Decl, ParseOptions, SourceFile, TheoremDecl};
use hawk_core::syntax::{Judgment, Logic, Signature, Term};
use hawk_core::translate::translate_judgment;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

/// `(name, accepted, code, message)`
type TheoremVerdict = (String, bool, Option<String>, Option<String>);

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn logic_arg(logic: Option<&str>, default: Logic) -> PyResult<Logic> {
    match logic {
        None => Ok(default),
        Some("lhaw") => Ok(Logic::Lhaw),
        Some("lehaw") => Ok(Logic::Lehaw),
        Some(other) => Err(value_error(format!("unknown logic `{other}`"))),
    }
}

fn load(source: &str) -> PyResult<SourceFile> {
    parse_file(source).map_err(value_error)
}

fn judgment(logic: Logic, t: &TheoremDecl) -> Judgment {
    Judgment { logic, sig: t.sig.clone(), ctx: t.ctx.clone(), proof: t.proof.clone(), goal: t.goal.clone() }
}

fn closed_term(expr: &str, defs: Option<&str>) -> PyResult<Term> {
    let term = parse_term(expr, ParseOptions::default()).map_err(value_error)?;
    Ok(match defs {
        Some(text) => term.subst(&load(text)?.def_substitution()),
        None => term,
    })
}

/// Sort of a closed term, e.g. `"N -> N"`.
#[pyfunction]
#[pyo3(signature = (expr, defs=None))]
fn infer_sort(expr: &str, defs: Option<&str>) -> PyResult<String> {
    let term = closed_term(expr, defs)?;
    kernel_infer_sort(&Signature::new(), &term).map(|s| s.to_string()).map_err(value_error)
}

/// Normal form of a closed term. `defs` is the text of a file whose
/// definitions may be used in `expr`.
#[pyfunction]
#[pyo3(signature = (expr, defs=None))]
fn normalize(expr: &str, defs: Option<&str>) -> PyResult<String> {
    let term = closed_term(expr, defs)?;
    kernel_infer_sort(&Signature::new(), &term).map_err(value_error)?;
    normalize_term(&term).map(|t| t.to_string()).map_err(|e| PyRuntimeError::new_err(e.to_string()))
}

/// Checks every theorem. Returns `(name, accepted, code, message)` per
/// theorem; `code` and `message` are `None` for accepted ones.
#[pyfunction]
#[pyo3(signature = (source, logic=None))]
fn check(source: &str, logic: Option<&str>) -> PyResult<Vec<TheoremVerdict>> {
    let file = load(source)?;
    let logic = logic_arg(logic, file.logic)?;
    Ok(file
        .theorems()
        .map(|t| match check_proof(logic, &t.sig, &t.ctx, &t.proof, &t.goal).rejection {
            None => (t.name.clone(), true, None, None),
            Some(r) => (t.name.clone(), false, Some(r.error.code().to_string()), Some(r.to_string())),
        })
        .collect())
}

/// Translates every theorem into lhaw and returns the generated file.
/// Raises `RuntimeError` if a source theorem or a translation is rejected.
#[pyfunction]
#[pyo3(signature = (source, logic=None))]
fn translate(source: &str, logic: Option<&str>) -> PyResult<String> {
    let file = load(source)?;
    let logic = logic_arg(logic, file.logic)?;
    let mut out = SourceFile::new(Logic::Lhaw);
    out.generated = true;
    for t in file.theorems() {
        let unit = translate_judgment(&judgment(logic, t))
            .map_err(|e| PyRuntimeError::new_err(format!("theorem `{}`: {e}", t.name)))?;
        if let Some(r) = unit.recheck().rejection {
            return Err(PyRuntimeError::new_err(format!("translation of `{}` rejected: {r}", t.name)));
        }
        let j = unit.target;
        out.decls.push(Decl::Theorem(TheoremDecl {
            name: t.name.clone(),
            sig: j.sig,
            ctx: j.ctx,
            goal: j.goal,
            proof: j.proof,
            pos: Default::default(),
        }));
    }
    Ok(out.to_string())
}

/// Runs the conjecture harness; returns `(total, joinable, unknown,
/// errors, skipped, report_text)`.
#[pyfunction]
#[pyo3(signature = (source, max_steps=DEFAULT_MAX_STEPS))]
fn conjecture(source: &str, max_steps: usize) -> PyResult<(usize, usize, usize, usize, usize, String)> {
    let file = load(source)?;
    let mut report = ConjectureReport::default();
    for t in file.theorems() {
        if let Some(r) = check_proof(file.logic, &t.sig, &t.ctx, &t.proof, &t.goal).rejection {
            return Err(PyRuntimeError::new_err(format!("theorem `{}` rejected: {r}", t.name)));
        }
        report.merge(run_judgment(&t.name, &judgment(file.logic, t), max_steps));
    }
    Ok((
        report.instances.len(),
        report.joinable(),
        report.unknown(),
        report.errors(),
        report.skipped.len(),
        report.to_string(),
    ))
}

/// Runs the bundled corpus; returns `(name, passed, line)` per item.
#[pyfunction]
#[pyo3(signature = (filter=None))]
fn run_corpus(py: Python<'_>, filter: Option<&str>) -> Vec<(String, bool, String)> {
    let results = py.detach(|| corpus::run(filter));
    results.iter().map(|r| (r.name.clone(), r.passed, r.to_string())).collect()
}

#[pymodule]
fn hawk(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_function(wrap_pyfunction!(infer_sort, m)?)?;
    m.add_function(wrap_pyfunction!(normalize, m)?)?;
    m.add_function(wrap_pyfunction!(check, m)?)?;
    m.add_function(wrap_pyfunction!(translate, m)?)?;
    m.add_function(wrap_pyfunction!(conjecture, m)?)?;
    m.add_function(wrap_pyfunction!(run_corpus, m)?)?;
    Ok(())
}
