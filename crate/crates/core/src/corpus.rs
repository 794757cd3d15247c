//! The bundled corpus: term, theorem, equivalence, witness and negative
//! suites, runnable end to end.

use std::fmt;
use std::time::Instant;

use rayon::prelude::*;

use crate::kernel::{check_proof, infer_sort, CheckReport};
use crate::surface::{parse_file, parse_formula, ParseOptions, SourceFile};
use crate::syntax::{Context, Formula, Judgment, Logic, Signature, Sort, Term};
use crate::translate::{
    collaps, collaps_type, elim_formula, elim_formula_type, eqpm, equiv_pair, equiv_type, per_witness,
    translate_judgment, translate_term, witness_type, Witness,
};

pub const TERMS: &str = include_str!("../corpus/terms.haw");
pub const LHAW: &str = include_str!("../corpus/lhaw.haw");
pub const LEHAW: &str = include_str!("../corpus/lehaw.haw");
pub const EQUIV: &str = include_str!("../corpus/equiv.txt");
pub const CONJECTURE: &str = include_str!("../corpus/conjecture.haw");

/// Deliberately broken inputs. Each starts with `-- expect: <code>`.
pub const NEGATIVES: &[(&str, &str)] = &[
    ("refl_arrow_lhaw", include_str!("../corpus/negative/refl_arrow_lhaw.haw")),
    ("arrow_goal_lhaw", include_str!("../corpus/negative/arrow_goal_lhaw.haw")),
    ("eigenvariable_capture", include_str!("../corpus/negative/eigenvariable_capture.haw")),
    ("unpack_capture", include_str!("../corpus/negative/unpack_capture.haw")),
    ("peel_motive_mismatch", include_str!("../corpus/negative/peel_motive_mismatch.haw")),
    ("efq_free_variables", include_str!("../corpus/negative/efq_free_variables.haw")),
    ("ill_sorted_rec", include_str!("../corpus/negative/ill_sorted_rec.haw")),
    ("ext_in_lhaw", include_str!("../corpus/negative/ext_in_lhaw.haw")),
    ("unbound_variable", include_str!("../corpus/negative/unbound_variable.haw")),
    ("unbound_proof_variable", include_str!("../corpus/negative/unbound_proof_variable.haw")),
    ("not_a_function", include_str!("../corpus/negative/not_a_function.haw")),
    ("domain_mismatch", include_str!("../corpus/negative/domain_mismatch.haw")),
    ("wrong_refl", include_str!("../corpus/negative/wrong_refl.haw")),
    ("refl_arrow_lehaw_mismatch", include_str!("../corpus/negative/refl_arrow_lehaw_mismatch.haw")),
];

/// Largest sort depth covered by the witness suite.
pub const WITNESS_DEPTH: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Term,
    Lhaw,
    Lehaw,
    Equiv,
    Witness,
    Negative,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Term => "term",
            Suite::Lhaw => "lhaw",
            Suite::Lehaw => "lehaw",
            Suite::Equiv => "equiv",
            Suite::Witness => "witness",
            Suite::Negative => "negative",
        }
    }
}

#[derive(Clone, Debug)]
enum Task {
    Term { sort: Sort, term: Term },
    Theorem(Judgment),
    Equiv(Formula),
    Witness(Sort),
    Negative { text: &'static str, expected: String },
}

#[derive(Clone, Debug)]
pub struct Item {
    /// `suite/name`
    pub name: String,
    pub suite: Suite,
    pub logic: Logic,
    task: Task,
}

impl Item {
    /// Exact name, bare name after the suite prefix, or suite name.
    pub fn matches(&self, filter: &str) -> bool {
        self.name == filter || self.name.split_once('/').is_some_and(|(_, n)| n == filter) || self.suite.name() == filter
    }
}

/// Outcome of one phase of an item.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Phase {
    Ok,
    /// Rejected with the given diagnostic code, as a negative item expects.
    Rejected(String),
    Skip,
    Fail(String),
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Phase::Ok => f.write_str("ok"),
            Phase::Rejected(code) => write!(f, "rejected:{code}"),
            Phase::Skip => f.write_str("skip"),
            Phase::Fail(_) => f.write_str("FAIL"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ItemResult {
    pub name: String,
    pub suite: Suite,
    pub logic: Logic,
    pub check: Phase,
    pub translate: Phase,
    pub ms: u128,
    pub passed: bool,
}

impl ItemResult {
    /// Failure detail, if any phase failed.
    pub fn detail(&self) -> Option<&str> {
        [&self.check, &self.translate].into_iter().find_map(|p| match p {
            Phase::Fail(d) => Some(d.as_str()),
            _ => None,
        })
    }
}

impl fmt::Display for ItemResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}\t{}\tcheck={}\ttranslate={}\tms={}",
            self.name, self.logic, self.check, self.translate, self.ms
        )
    }
}

fn parse_bundled(name: &str, text: &str) -> SourceFile {
    parse_file(text).unwrap_or_else(|e| panic!("bundled corpus file {name} does not parse: {e}"))
}

/// `-- expect: code` header of a negative file.
pub fn expected_code(text: &str) -> Option<&str> {
    text.lines().find_map(|l| l.trim().strip_prefix("-- expect:")).map(str::trim)
}

/// Closed formulas of the equivalence suite.
pub fn equiv_formulas() -> Vec<Formula> {
    EQUIV
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with("--"))
        .map(|l| parse_formula(l, ParseOptions::default()).unwrap_or_else(|e| panic!("equiv corpus line `{l}`: {e}")))
        .collect()
}

/// Term definitions of the term suite, with their declared sorts.
pub fn corpus_terms() -> Vec<(String, Sort, Term)> {
    parse_bundled("terms.haw", TERMS).defs().map(|d| (d.name.clone(), d.sort.clone(), d.body.clone())).collect()
}

/// Named theorems of a bundled file as judgments.
pub fn theorems_of(name: &str, text: &str) -> Vec<(String, Judgment)> {
    let file = parse_bundled(name, text);
    file.theorems()
        .map(|t| {
            let j = Judgment {
                logic: file.logic,
                sig: t.sig.clone(),
                ctx: t.ctx.clone(),
                proof: t.proof.clone(),
                goal: t.goal.clone(),
            };
            (t.name.clone(), j)
        })
        .collect()
}

pub fn items() -> Vec<Item> {
    let mut out = Vec::new();
    for (name, sort, term) in corpus_terms() {
        out.push(Item {
            name: format!("term/{name}"),
            suite: Suite::Term,
            logic: Logic::Lhaw,
            task: Task::Term { sort, term },
        });
    }
    for (suite, file, text) in [(Suite::Lhaw, "lhaw.haw", LHAW), (Suite::Lehaw, "lehaw.haw", LEHAW)] {
        for (name, j) in theorems_of(file, text) {
            out.push(Item { name: format!("{}/{name}", suite.name()), suite, logic: j.logic, task: Task::Theorem(j) });
        }
    }
    for (i, phi) in equiv_formulas().into_iter().enumerate() {
        out.push(Item {
            name: format!("equiv/f{:02}", i + 1),
            suite: Suite::Equiv,
            logic: Logic::Lehaw,
            task: Task::Equiv(phi),
        });
    }
    for s in Sort::all_up_to_depth(WITNESS_DEPTH) {
        out.push(Item {
            name: format!("witness/{}", sort_slug(&s)),
            suite: Suite::Witness,
            logic: Logic::Lhaw,
            task: Task::Witness(s),
        });
    }
    for (name, text) in NEGATIVES {
        let expected = expected_code(text).unwrap_or_else(|| panic!("negative {name} has no expect header")).to_string();
        let logic = parse_file(text).map(|f| f.logic).unwrap_or(Logic::Lhaw);
        out.push(Item {
            name: format!("negative/{name}"),
            suite: Suite::Negative,
            logic,
            task: Task::Negative { text, expected },
        });
    }
    out
}

/// `N`, `N>N`, `(N>N)>N`: a tab- and space-free rendering for item names.
fn sort_slug(s: &Sort) -> String {
    match s.as_arrow() {
        None => "N".into(),
        Some((d, c)) if d.is_nat() => format!("N>{}", sort_slug(c)),
        Some((d, c)) => format!("({})>{}", sort_slug(d), sort_slug(c)),
    }
}

fn verdict(report: CheckReport) -> Phase {
    match report.rejection {
        None => Phase::Ok,
        Some(r) => Phase::Fail(r.to_string()),
    }
}

/// A closed inhabitant: `0`, or a constant function.
fn default_term(s: &Sort) -> Term {
    match s.as_arrow() {
        None => Term::Zero,
        Some((d, c)) => Term::lam("d", d.clone(), default_term(c)),
    }
}

/// `x` applied to default arguments until it has sort N.
fn saturate(x: &str, s: &Sort) -> Term {
    let mut t = Term::var(x);
    let mut s = s;
    while let Some((d, c)) = s.as_arrow() {
        t = Term::app(t, default_term(d));
        s = c;
    }
    t
}

/// Motives over `x : σ` exercising every connective, used for `Elim`.
pub fn elim_family(x: &str, s: &Sort) -> Vec<Formula> {
    let sat = saturate(x, s);
    let xv = Term::var(x);
    vec![
        Formula::Eq(s.clone(), xv.clone(), xv.clone()),
        Formula::eq_nat(sat.clone(), Term::Zero),
        Formula::Null(sat.clone()),
        Formula::imp(Formula::Null(Term::succ(sat.clone())), Formula::Bot),
        Formula::and(
            Formula::forall("y", s.clone(), Formula::Eq(s.clone(), Term::var("y"), xv.clone())),
            Formula::exists("n", Sort::Nat, Formula::eq_nat(Term::var("n"), sat)),
        ),
    ]
}

fn check_witnesses(s: &Sort) -> Phase {
    let empty = (Signature::new(), Context::new());
    let mut jobs: Vec<(Logic, _, Formula, String)> = [Witness::Sym, Witness::Trans, Witness::Refl]
        .into_iter()
        .map(|w| (Logic::Lhaw, per_witness(w, s), witness_type(w, s), format!("{w:?}")))
        .collect();
    jobs.push((Logic::Lehaw, collaps(s), collaps_type(s), "Collaps".into()));
    for phi in elim_family("x", s) {
        match elim_formula(&empty.0, "x", s, &phi) {
            Ok(p) => jobs.push((Logic::Lhaw, p, elim_formula_type("x", s, &phi), format!("Elim {phi}"))),
            Err(e) => return Phase::Fail(format!("Elim {phi}: {e}")),
        }
    }
    for (logic, proof, ty, what) in jobs {
        if let Some(r) = check_proof(logic, &empty.0, &empty.1, &proof, &ty).rejection {
            return Phase::Fail(format!("{what}: {r}"));
        }
    }
    Phase::Ok
}

fn run_theorem(j: &Judgment) -> (Phase, Phase) {
    let check = verdict(check_proof(j.logic, &j.sig, &j.ctx, &j.proof, &j.goal));
    if check != Phase::Ok {
        return (check, Phase::Skip);
    }
    let translate = match translate_judgment(j) {
        Ok(unit) => verdict(unit.recheck()),
        Err(e) => Phase::Fail(e.to_string()),
    };
    (check, translate)
}

fn run_negative(text: &str, expected: &str) -> Phase {
    let file = match parse_file(text) {
        Ok(f) => f,
        Err(e) => return Phase::Fail(format!("does not parse: {e}")),
    };
    let Some(t) = file.theorems().next() else {
        return Phase::Fail("no theorem".into());
    };
    let report = check_proof(file.logic, &t.sig, &t.ctx, &t.proof, &t.goal);
    match report.rejection {
        None => Phase::Fail("accepted".into()),
        Some(r) if r.error.code() == expected => Phase::Rejected(expected.to_string()),
        Some(r) => Phase::Fail(format!("expected {expected}, got {}: {r}", r.error.code())),
    }
}

pub fn run_item(item: &Item) -> ItemResult {
    let start = Instant::now();
    let (check, translate) = match &item.task {
        Task::Term { sort, term } => {
            let empty = Signature::new();
            match infer_sort(&empty, term) {
                Ok(found) if &found == sort => match translate_term(&empty, term, sort) {
                    Ok(p) => {
                        let goal = eqpm(sort, term, term);
                        (Phase::Ok, verdict(check_proof(Logic::Lhaw, &empty, &Context::new(), &p, &goal)))
                    }
                    Err(e) => (Phase::Ok, Phase::Fail(e.to_string())),
                },
                Ok(found) => (Phase::Fail(format!("declared {sort}, inferred {found}")), Phase::Skip),
                Err(e) => (Phase::Fail(e.to_string()), Phase::Skip),
            }
        }
        Task::Theorem(j) => run_theorem(j),
        Task::Equiv(phi) => {
            let empty = Signature::new();
            let check = match equiv_pair(&empty, phi) {
                Ok(p) => verdict(check_proof(Logic::Lehaw, &empty, &Context::new(), &p, &equiv_type(phi))),
                Err(e) => Phase::Fail(e.to_string()),
            };
            (check, Phase::Skip)
        }
        Task::Witness(s) => (check_witnesses(s), Phase::Skip),
        Task::Negative { text, expected } => (run_negative(text, expected), Phase::Skip),
    };
    let passed = !matches!(check, Phase::Fail(_)) && !matches!(translate, Phase::Fail(_));
    ItemResult {
        name: item.name.clone(),
        suite: item.suite,
        logic: item.logic,
        check,
        translate,
        ms: start.elapsed().as_millis(),
        passed,
    }
}

/// Runs the selected items in parallel; results keep corpus order.
pub fn run(filter: Option<&str>) -> Vec<ItemResult> {
    let selected: Vec<Item> = items().into_iter().filter(|i| filter.is_none_or(|f| i.matches(f))).collect();
    selected.par_iter().map(run_item).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_files_parse() {
        assert!(corpus_terms().len() >= 15);
        assert!(theorems_of("lhaw.haw", LHAW).len() >= 10);
        assert!(theorems_of("lehaw.haw", LEHAW).len() >= 8);
        assert!(equiv_formulas().len() >= 6);
        assert!(NEGATIVES.len() >= 10);
    }

    #[test]
    fn filter_selects_one_item() {
        let hits: Vec<_> = items().into_iter().filter(|i| i.matches("peano4")).collect();
        assert_eq!(hits.len(), 1);
        assert_eq!(hits[0].name, "lhaw/peano4");
    }

    #[test]
    fn sort_slugs_have_no_whitespace() {
        for s in Sort::all_up_to_depth(3) {
            assert!(!sort_slug(&s).contains(char::is_whitespace));
        }
    }
}
