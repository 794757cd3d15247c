//! Reduction of System T terms and the conversion relations on terms and
//! formulas.
//!
//! `step_term` contracts the leftmost-outermost redex and is what traces
//! are made of. `normalize_term` computes the same normal form with a
//! normal-order evaluator that avoids re-scanning the term after every
//! contraction.

use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

use crate::syntax::{alpha_eq_formula, alpha_eq_term, Formula, Term};

/// Default cap on contractions per normalization.
pub const DEFAULT_STEP_BUDGET: u64 = 1_000_000;

/// Environment variable overriding [`DEFAULT_STEP_BUDGET`].
pub const STEP_BUDGET_ENV: &str = "HAWK_STEP_BUDGET";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StepBudget(pub u64);

impl StepBudget {
    /// `HAWK_STEP_BUDGET` if set to a positive integer, else the default.
    pub fn from_env() -> StepBudget {
        static CACHED: OnceLock<StepBudget> = OnceLock::new();
        *CACHED.get_or_init(|| {
            std::env::var(STEP_BUDGET_ENV)
                .ok()
                .and_then(|v| v.trim().parse::<u64>().ok())
                .filter(|n| *n >= 1)
                .map(StepBudget)
                .unwrap_or(StepBudget(DEFAULT_STEP_BUDGET))
        })
    }
}

impl Default for StepBudget {
    fn default() -> Self {
        StepBudget::from_env()
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum RewriteError {
    /// Never a semantic answer: well-typed terms are strongly normalizing.
    #[error("internal error: rewrite step budget of {budget} exhausted")]
    BudgetExceeded { budget: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    Beta,
    RecZero,
    RecSucc,
    NullZero,
    NullSucc,
}

impl Rule {
    pub fn name(self) -> &'static str {
        match self {
            Rule::Beta => "beta",
            Rule::RecZero => "rec-zero",
            Rule::RecSucc => "rec-succ",
            Rule::NullZero => "null-zero",
            Rule::NullSucc => "null-succ",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Child indices from the root: `Lam` body 0; `App` function 0, argument
/// 1; `Succ` 0; `Rec` base 0, step 1, scrutinee 2.
pub type Position = Vec<usize>;

#[derive(Clone, Debug)]
pub struct TraceStep {
    pub position: Position,
    pub rule: Rule,
    pub before: Term,
    pub after: Term,
}

#[derive(Clone, Debug, Default)]
pub struct RewriteTrace {
    pub steps: Vec<TraceStep>,
}

impl RewriteTrace {
    /// Re-runs every recorded contraction and checks the chain links up.
    pub fn replays(&self) -> bool {
        let mut current: Option<&Term> = None;
        for step in &self.steps {
            if let Some(prev) = current {
                if prev != &step.before {
                    return false;
                }
            }
            match contract_at(&step.before, &step.position) {
                Some((rule, after)) if rule == step.rule && after == step.after => {}
                _ => return false,
            }
            current = Some(&step.after);
        }
        true
    }
}

/// Contracts a redex at the root, if there is one.
pub fn contract_root(t: &Term) -> Option<(Rule, Term)> {
    match t {
        Term::App(f, a) => match &**f {
            Term::Lam(x, _, body) => Some((Rule::Beta, body.subst1(x, a))),
            _ => None,
        },
        Term::Rec(s, base, step, scrut) => match &**scrut {
            Term::Zero => Some((Rule::RecZero, (**base).clone())),
            Term::Succ(v) => Some((
                Rule::RecSucc,
                Term::app(
                    Term::app(
                        (**step).clone(),
                        Term::Rec(s.clone(), base.clone(), step.clone(), v.clone()),
                    ),
                    (**v).clone(),
                ),
            )),
            _ => None,
        },
        _ => None,
    }
}

fn children(t: &Term) -> Vec<&Term> {
    match t {
        Term::Var(_) | Term::Zero => vec![],
        Term::Lam(_, _, b) => vec![b],
        Term::App(f, a) => vec![f, a],
        Term::Succ(a) => vec![a],
        Term::Rec(_, b, s, n) => vec![b, s, n],
    }
}

fn replace_child(t: &Term, i: usize, new: Term) -> Term {
    match (t, i) {
        (Term::Lam(x, s, _), 0) => Term::lam(x.clone(), s.clone(), new),
        (Term::App(_, a), 0) => Term::app(new, (**a).clone()),
        (Term::App(f, _), 1) => Term::app((**f).clone(), new),
        (Term::Succ(_), 0) => Term::succ(new),
        (Term::Rec(s, _, st, n), 0) => Term::rec(s.clone(), new, (**st).clone(), (**n).clone()),
        (Term::Rec(s, b, _, n), 1) => Term::rec(s.clone(), (**b).clone(), new, (**n).clone()),
        (Term::Rec(s, b, st, _), 2) => Term::rec(s.clone(), (**b).clone(), (**st).clone(), new),
        _ => panic!("no child {i}"),
    }
}

/// Contracts the redex at `pos`, if `pos` addresses one.
pub fn contract_at(t: &Term, pos: &[usize]) -> Option<(Rule, Term)> {
    match pos.split_first() {
        None => contract_root(t),
        Some((&i, rest)) => {
            let child = *children(t).get(i)?;
            let (rule, new) = contract_at(child, rest)?;
            Some((rule, replace_child(t, i, new)))
        }
    }
}

/// Positions of every redex, in leftmost-outermost order.
pub fn redex_positions(t: &Term) -> Vec<Position> {
    fn go(t: &Term, path: &mut Position, acc: &mut Vec<Position>) {
        if contract_root(t).is_some() {
            acc.push(path.clone());
        }
        for (i, c) in children(t).into_iter().enumerate() {
            path.push(i);
            go(c, path, acc);
            path.pop();
        }
    }
    let mut acc = Vec::new();
    go(t, &mut Vec::new(), &mut acc);
    acc
}

fn leftmost_outermost(t: &Term) -> Option<(Position, Rule, Term)> {
    if let Some((rule, new)) = contract_root(t) {
        return Some((vec![], rule, new));
    }
    for (i, c) in children(t).into_iter().enumerate() {
        if let Some((mut pos, rule, new)) = leftmost_outermost(c) {
            pos.insert(0, i);
            return Some((pos, rule, replace_child(t, i, new)));
        }
    }
    None
}

/// One leftmost-outermost step, or `None` if `t` is normal.
pub fn step_term(t: &Term) -> Option<Term> {
    leftmost_outermost(t).map(|(_, _, t)| t)
}

/// Like [`step_term`] but also reports where and which rule fired.
pub fn step_term_traced(t: &Term) -> Option<TraceStep> {
    leftmost_outermost(t).map(|(position, rule, after)| TraceStep {
        position,
        rule,
        before: t.clone(),
        after,
    })
}

pub fn is_normal(t: &Term) -> bool {
    leftmost_outermost(t).is_none()
}

struct Normalizer {
    budget: u64,
    used: u64,
}

impl Normalizer {
    fn new(budget: StepBudget) -> Self {
        Normalizer { budget: budget.0, used: 0 }
    }

    fn tick(&mut self) -> Result<(), RewriteError> {
        self.used += 1;
        if self.used > self.budget {
            Err(RewriteError::BudgetExceeded { budget: self.budget })
        } else {
            Ok(())
        }
    }

    fn whnf(&mut self, t: &Term) -> Result<Term, RewriteError> {
        stacker::maybe_grow(crate::kernel::RED_ZONE, crate::kernel::STACK_CHUNK, || self.whnf_node(t))
    }

    fn whnf_node(&mut self, t: &Term) -> Result<Term, RewriteError> {
        let mut t = t.clone();
        loop {
            let next = match &t {
                Term::App(f, a) => {
                    let f = self.whnf(f)?;
                    match &f {
                        Term::Lam(x, _, body) => {
                            self.tick()?;
                            body.subst1(x, a)
                        }
                        _ => return Ok(Term::App(f.into(), a.clone())),
                    }
                }
                Term::Rec(s, base, step, scrut) => {
                    let n = self.whnf(scrut)?;
                    match &n {
                        Term::Zero => {
                            self.tick()?;
                            (**base).clone()
                        }
                        Term::Succ(v) => {
                            self.tick()?;
                            Term::app(
                                Term::app(
                                    (**step).clone(),
                                    Term::Rec(s.clone(), base.clone(), step.clone(), v.clone()),
                                ),
                                (**v).clone(),
                            )
                        }
                        _ => return Ok(Term::Rec(s.clone(), base.clone(), step.clone(), n.into())),
                    }
                }
                _ => return Ok(t),
            };
            t = next;
        }
    }

    fn nf(&mut self, t: &Term) -> Result<Term, RewriteError> {
        stacker::maybe_grow(crate::kernel::RED_ZONE, crate::kernel::STACK_CHUNK, || self.nf_node(t))
    }

    fn nf_node(&mut self, t: &Term) -> Result<Term, RewriteError> {
        Ok(match self.whnf(t)? {
            Term::Lam(x, s, b) => Term::lam(x, s, self.nf(&b)?),
            Term::App(f, a) => Term::app(self.nf(&f)?, self.nf(&a)?),
            Term::Succ(a) => Term::succ(self.nf(&a)?),
            Term::Rec(s, b, st, n) => Term::rec(s, self.nf(&b)?, self.nf(&st)?, self.nf(&n)?),
            other => other,
        })
    }
}

/// Normal form under the default budget.
pub fn normalize_term(t: &Term) -> Result<Term, RewriteError> {
    normalize_term_with(t, StepBudget::default())
}

pub fn normalize_term_with(t: &Term, budget: StepBudget) -> Result<Term, RewriteError> {
    Normalizer::new(budget).nf(t)
}

/// Normalizes by iterating [`step_term`], recording each contraction.
pub fn normalize_traced(t: &Term, budget: StepBudget) -> Result<(Term, RewriteTrace), RewriteError> {
    let mut trace = RewriteTrace::default();
    let mut current = t.clone();
    while let Some(step) = step_term_traced(&current) {
        if trace.steps.len() as u64 >= budget.0 {
            return Err(RewriteError::BudgetExceeded { budget: budget.0 });
        }
        current = step.after.clone();
        trace.steps.push(step);
    }
    Ok((current, trace))
}

/// Decides `t ≅ u` by comparing normal forms up to renaming.
pub fn term_congruent(t: &Term, u: &Term) -> Result<bool, RewriteError> {
    term_congruent_with(t, u, StepBudget::default())
}

pub fn term_congruent_with(t: &Term, u: &Term, budget: StepBudget) -> Result<bool, RewriteError> {
    if alpha_eq_term(t, u) {
        return Ok(true);
    }
    Ok(alpha_eq_term(&normalize_term_with(t, budget)?, &normalize_term_with(u, budget)?))
}

/// Normalizes every embedded term and rewrites `null 0 ≻ ⊤`,
/// `null (S t) ≻ ⊥` everywhere.
pub fn normalize_formula(phi: &Formula) -> Result<Formula, RewriteError> {
    normalize_formula_with(phi, StepBudget::default())
}

pub fn normalize_formula_with(phi: &Formula, budget: StepBudget) -> Result<Formula, RewriteError> {
    let mut n = Normalizer::new(budget);
    normalize_formula_inner(&mut n, phi)
}

fn normalize_formula_inner(n: &mut Normalizer, phi: &Formula) -> Result<Formula, RewriteError> {
    Ok(match phi {
        Formula::Eq(s, a, b) => Formula::Eq(s.clone(), n.nf(a)?, n.nf(b)?),
        Formula::Bot => Formula::Bot,
        Formula::Null(t) => null_rule(n.nf(t)?),
        Formula::Imp(a, b) => Formula::imp(normalize_formula_inner(n, a)?, normalize_formula_inner(n, b)?),
        Formula::And(a, b) => Formula::and(normalize_formula_inner(n, a)?, normalize_formula_inner(n, b)?),
        Formula::Forall(x, s, b) => Formula::forall(x.clone(), s.clone(), normalize_formula_inner(n, b)?),
        Formula::Exists(x, s, b) => Formula::exists(x.clone(), s.clone(), normalize_formula_inner(n, b)?),
    })
}

fn null_rule(t: Term) -> Formula {
    match t {
        Term::Zero => Formula::top(),
        Term::Succ(_) => Formula::Bot,
        other => Formula::Null(other),
    }
}

/// Exposes the head connective: only `null` can change its head under
/// conversion.
pub fn whnf_formula(phi: &Formula, budget: StepBudget) -> Result<Formula, RewriteError> {
    match phi {
        Formula::Null(t) => {
            let mut n = Normalizer::new(budget);
            Ok(null_rule(n.whnf(t)?))
        }
        other => Ok(other.clone()),
    }
}

/// Decides `Φ ≃ Ψ`.
pub fn formula_congruent(phi: &Formula, psi: &Formula) -> Result<bool, RewriteError> {
    formula_congruent_with(phi, psi, StepBudget::default())
}

pub fn formula_congruent_with(phi: &Formula, psi: &Formula, budget: StepBudget) -> Result<bool, RewriteError> {
    if alpha_eq_formula(phi, psi) {
        return Ok(true);
    }
    Ok(alpha_eq_formula(
        &normalize_formula_with(phi, budget)?,
        &normalize_formula_with(psi, budget)?,
    ))
}

/// One leftmost-outermost step on a formula: term redexes inside atoms,
/// or a `null` redex at an atom.
pub fn step_formula(phi: &Formula) -> Option<(Rule, Formula)> {
    match phi {
        Formula::Eq(s, a, b) => {
            if let Some(step) = step_term_traced(a) {
                return Some((step.rule, Formula::Eq(s.clone(), step.after, b.clone())));
            }
            step_term_traced(b).map(|step| (step.rule, Formula::Eq(s.clone(), a.clone(), step.after)))
        }
        Formula::Bot => None,
        Formula::Null(t) => match t {
            Term::Zero => Some((Rule::NullZero, Formula::top())),
            Term::Succ(_) => Some((Rule::NullSucc, Formula::Bot)),
            _ => step_term_traced(t).map(|step| (step.rule, Formula::Null(step.after))),
        },
        Formula::Imp(a, b) | Formula::And(a, b) => {
            let rebuild = |l: Formula, r: Formula| match phi {
                Formula::Imp(..) => Formula::imp(l, r),
                _ => Formula::and(l, r),
            };
            if let Some((rule, a2)) = step_formula(a) {
                return Some((rule, rebuild(a2, (**b).clone())));
            }
            step_formula(b).map(|(rule, b2)| (rule, rebuild((**a).clone(), b2)))
        }
        Formula::Forall(x, s, b) => {
            step_formula(b).map(|(rule, b2)| (rule, Formula::forall(x.clone(), s.clone(), b2)))
        }
        Formula::Exists(x, s, b) => {
            step_formula(b).map(|(rule, b2)| (rule, Formula::exists(x.clone(), s.clone(), b2)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::Sort;

    fn id() -> Term {
        Term::lam("x", Sort::Nat, Term::var("x"))
    }

    fn add() -> Term {
        // λx λy. Rec(N, x, λa λb. S a, y)
        let step = Term::lam("a", Sort::Nat, Term::lam("b", Sort::Nat, Term::succ(Term::var("a"))));
        Term::lam(
            "x",
            Sort::Nat,
            Term::lam("y", Sort::Nat, Term::rec(Sort::Nat, Term::var("x"), step, Term::var("y"))),
        )
    }

    #[test]
    fn beta_step() {
        assert_eq!(step_term(&Term::app(id(), Term::Zero)), Some(Term::Zero));
    }

    #[test]
    fn rec_zero_step() {
        let t = Term::rec(Sort::Nat, Term::Zero, Term::var("u"), Term::Zero);
        assert_eq!(step_term(&t), Some(Term::Zero));
    }

    #[test]
    fn rec_succ_step() {
        let t = Term::rec(Sort::Nat, Term::var("t"), Term::var("u"), Term::succ(Term::var("v")));
        let expected = Term::apps(
            Term::var("u"),
            [
                Term::rec(Sort::Nat, Term::var("t"), Term::var("u"), Term::var("v")),
                Term::var("v"),
            ],
        );
        assert_eq!(step_term(&t), Some(expected));
    }

    #[test]
    fn normal_terms_do_not_step() {
        assert_eq!(step_term(&Term::Zero), None);
        assert_eq!(normalize_term(&Term::Zero).unwrap(), Term::Zero);
    }

    #[test]
    fn beta_under_binder() {
        let t = Term::lam("x", Sort::Nat, Term::app(Term::lam("y", Sort::Nat, Term::var("y")), Term::var("x")));
        assert!(alpha_eq_term(&normalize_term(&t).unwrap(), &id()));
    }

    #[test]
    fn add_two_three() {
        let t = Term::apps(add(), [Term::numeral(2), Term::numeral(3)]);
        assert_eq!(normalize_term(&t).unwrap(), Term::numeral(5));
        let (nf, trace) = normalize_traced(&t, StepBudget(10_000)).unwrap();
        assert_eq!(nf, Term::numeral(5));
        assert!(trace.replays());
    }

    #[test]
    fn congruences() {
        assert!(term_congruent(&Term::app(id(), Term::Zero), &Term::Zero).unwrap());
        assert!(!term_congruent(&Term::numeral(1), &Term::Zero).unwrap());
        let y = Term::var("y");
        assert!(term_congruent(&Term::apps(add(), [y.clone(), Term::Zero]), &y).unwrap());
    }

    #[test]
    fn null_rules() {
        assert!(formula_congruent(&Formula::Null(Term::Zero), &Formula::top()).unwrap());
        assert!(formula_congruent(&Formula::Null(Term::succ(Term::var("x"))), &Formula::Bot).unwrap());
        let redex = Formula::Null(Term::app(id(), Term::numeral(1)));
        assert!(formula_congruent(&redex, &Formula::Bot).unwrap());
        let eq = Formula::eq_nat(Term::app(id(), Term::Zero), Term::Zero);
        assert!(formula_congruent(&eq, &Formula::eq_nat(Term::Zero, Term::Zero)).unwrap());
    }

    #[test]
    fn budget_is_enforced() {
        let t = Term::apps(add(), [Term::numeral(20), Term::numeral(20)]);
        assert_eq!(
            normalize_term_with(&t, StepBudget(3)),
            Err(RewriteError::BudgetExceeded { budget: 3 })
        );
    }

    #[test]
    fn step_formula_reaches_normal_form() {
        let mut phi = Formula::imp(
            Formula::Null(Term::app(id(), Term::Zero)),
            Formula::Null(Term::numeral(2)),
        );
        let mut rules = Vec::new();
        while let Some((rule, next)) = step_formula(&phi) {
            rules.push(rule);
            phi = next;
        }
        assert_eq!(rules, vec![Rule::Beta, Rule::NullZero, Rule::NullSucc]);
        assert!(alpha_eq_formula(&phi, &Formula::imp(Formula::top(), Formula::Bot)));
    }
}
