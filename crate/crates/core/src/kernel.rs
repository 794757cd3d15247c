//! The trusted checker.
//!
//! Sorts of terms are inferred directly from Church annotations. Proofs
//! are checked bidirectionally: eliminations infer, introductions check,
//! and the conversion rule is applied once, where a checked position
//! falls back to inference.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::rewrite::{formula_congruent_with, whnf_formula, RewriteError, StepBudget};
use crate::syntax::{
    alpha_eq_formula, Context, Formula, Logic, Name, ProofTerm, Signature, Sort, Term,
};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum CheckError {
    #[error("unbound variable `{name}`")]
    UnboundVariable { name: Name },
    #[error("`{term}` has sort {sort} and cannot be applied")]
    NotAFunction { term: Term, sort: Sort },
    #[error("argument has sort {found}, expected {expected}")]
    DomainMismatch { expected: Sort, found: Sort },
    #[error("ill-sorted rec: {component} has sort {found}, expected {expected}")]
    RecMismatch { component: &'static str, expected: Sort, found: Sort },
    #[error("sort mismatch: expected {expected}, found {found}")]
    SortMismatch { expected: Sort, found: Sort },
    #[error("unbound proof variable `{name}`")]
    UnboundProofVariable { name: Name },
    #[error("non-fresh eigenvariable `{var}`: it occurs free in {place}")]
    EigenvariableCapture { var: Name, place: &'static str },
    #[error("motive mismatch in {rule}: expected {expected}, found {found}")]
    MotiveMismatch { rule: &'static str, expected: Formula, found: Formula },
    #[error("equality at arrow sort {sort} is not available in lhaw")]
    EqualityAtArrowSort { sort: Sort },
    #[error("rule `{rule}` is not available in lhaw")]
    ExtensionalRuleInLhaw { rule: &'static str },
    #[error("efq target has free variables not in the signature: {}", .vars.join(", "))]
    EfqFreeVariables { vars: Vec<Name> },
    #[error("formula mismatch: expected {expected}, found {found}")]
    FormulaMismatch { expected: Formula, found: Formula },
    #[error("expected {expected}, found {found}")]
    ShapeMismatch { expected: &'static str, found: Formula },
    #[error("cannot infer the formula proved by {construct}; add an annotation")]
    CannotInfer { construct: &'static str },
    #[error("duplicate name `{name}` in {place}")]
    DuplicateName { name: Name, place: &'static str },
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
}

impl CheckError {
    /// Stable short name, used in diagnostics and tests.
    pub fn code(&self) -> &'static str {
        match self {
            CheckError::UnboundVariable { .. } => "unbound-variable",
            CheckError::NotAFunction { .. } => "not-a-function",
            CheckError::DomainMismatch { .. } => "domain-mismatch",
            CheckError::RecMismatch { .. } => "rec-mismatch",
            CheckError::SortMismatch { .. } => "sort-mismatch",
            CheckError::UnboundProofVariable { .. } => "unbound-proof-variable",
            CheckError::EigenvariableCapture { .. } => "eigenvariable-capture",
            CheckError::MotiveMismatch { .. } => "motive-mismatch",
            CheckError::EqualityAtArrowSort { .. } => "equality-at-arrow-sort",
            CheckError::ExtensionalRuleInLhaw { .. } => "extensional-rule-in-lhaw",
            CheckError::EfqFreeVariables { .. } => "efq-free-variables",
            CheckError::FormulaMismatch { .. } => "formula-mismatch",
            CheckError::ShapeMismatch { .. } => "shape-mismatch",
            CheckError::CannotInfer { .. } => "cannot-infer",
            CheckError::DuplicateName { .. } => "duplicate-name",
            CheckError::Rewrite(_) => "internal-budget",
        }
    }

    pub fn expected(&self) -> Option<String> {
        match self {
            CheckError::DomainMismatch { expected, .. }
            | CheckError::RecMismatch { expected, .. }
            | CheckError::SortMismatch { expected, .. } => Some(expected.to_string()),
            CheckError::MotiveMismatch { expected, .. } | CheckError::FormulaMismatch { expected, .. } => {
                Some(expected.to_string())
            }
            CheckError::ShapeMismatch { expected, .. } => Some(expected.to_string()),
            _ => None,
        }
    }

    pub fn found(&self) -> Option<String> {
        match self {
            CheckError::DomainMismatch { found, .. }
            | CheckError::RecMismatch { found, .. }
            | CheckError::SortMismatch { found, .. } => Some(found.to_string()),
            CheckError::MotiveMismatch { found, .. }
            | CheckError::FormulaMismatch { found, .. }
            | CheckError::ShapeMismatch { found, .. } => Some(found.to_string()),
            CheckError::NotAFunction { sort, .. } => Some(sort.to_string()),
            _ => None,
        }
    }
}

/// A failed check: what went wrong, under which rule, and where.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rejection {
    /// Child labels from the root of the proof (or formula) to the
    /// offending node.
    pub path: Vec<&'static str>,
    pub rule: &'static str,
    pub error: Box<CheckError>,
}

impl Rejection {
    fn new(rule: &'static str, error: CheckError) -> Self {
        Rejection { path: Vec::new(), rule, error: Box::new(error) }
    }

    pub fn path_string(&self) -> String {
        if self.path.is_empty() {
            "root".to_string()
        } else {
            self.path.join("/")
        }
    }
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] at {}: {}", self.rule, self.path_string(), self.error)
    }
}

impl std::error::Error for Rejection {}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Accepted,
    Rejected,
}

#[derive(Clone, Debug)]
pub struct CheckReport {
    pub verdict: Verdict,
    pub goal: Formula,
    pub rejection: Option<Rejection>,
}

impl CheckReport {
    pub fn accepted(&self) -> bool {
        self.verdict == Verdict::Accepted
    }
}

type Result<T> = std::result::Result<T, Rejection>;

// Generated proofs nest deeply; grow the stack on demand instead of
// relying on the caller's thread size.
pub(crate) const RED_ZONE: usize = 256 * 1024;
pub(crate) const STACK_CHUNK: usize = 8 * 1024 * 1024;

fn at<T>(seg: &'static str, r: Result<T>) -> Result<T> {
    r.map_err(|mut e| {
        e.path.insert(0, seg);
        e
    })
}

fn fail<T>(rule: &'static str, error: CheckError) -> Result<T> {
    Err(Rejection::new(rule, error))
}

/// `Δ ⊢ t : σ`
pub fn infer_sort(sig: &Signature, t: &Term) -> std::result::Result<Sort, CheckError> {
    let mut sig = sig.clone();
    sort_of(&mut sig, t)
}

fn sort_of(sig: &mut Signature, t: &Term) -> std::result::Result<Sort, CheckError> {
    stacker::maybe_grow(RED_ZONE, STACK_CHUNK, || sort_of_node(sig, t))
}

fn sort_of_node(sig: &mut Signature, t: &Term) -> std::result::Result<Sort, CheckError> {
    match t {
        Term::Var(x) => sig.lookup(x).cloned().ok_or_else(|| CheckError::UnboundVariable { name: x.clone() }),
        Term::Lam(x, s, body) => {
            sig.push(x.clone(), s.clone());
            let cod = sort_of(sig, body);
            sig.pop();
            Ok(Sort::arrow(s.clone(), cod?))
        }
        Term::App(f, a) => {
            let fs = sort_of(sig, f)?;
            let Some((dom, cod)) = fs.as_arrow() else {
                return Err(CheckError::NotAFunction { term: (**f).clone(), sort: fs });
            };
            let found = sort_of(sig, a)?;
            if &found != dom {
                return Err(CheckError::DomainMismatch { expected: dom.clone(), found });
            }
            Ok(cod.clone())
        }
        Term::Zero => Ok(Sort::Nat),
        Term::Succ(a) => {
            let found = sort_of(sig, a)?;
            if !found.is_nat() {
                return Err(CheckError::SortMismatch { expected: Sort::Nat, found });
            }
            Ok(Sort::Nat)
        }
        Term::Rec(s, base, step, scrut) => {
            let want = [
                ("base", s.clone(), &**base),
                ("step", Sort::arrows([s.clone(), Sort::Nat], s.clone()), &**step),
                ("scrutinee", Sort::Nat, &**scrut),
            ];
            for (component, expected, t) in want {
                let found = sort_of(sig, t)?;
                if found != expected {
                    return Err(CheckError::RecMismatch { component, expected, found });
                }
            }
            Ok(s.clone())
        }
    }
}

fn expect_sort(sig: &mut Signature, t: &Term, expected: &Sort) -> std::result::Result<(), CheckError> {
    let found = sort_of(sig, t)?;
    if &found != expected {
        return Err(CheckError::SortMismatch { expected: expected.clone(), found });
    }
    Ok(())
}

/// Well-formedness of a formula over `sig`: every variable declared,
/// every atom well-sorted, and in `lhaw` equality only at `N`.
pub fn check_formula(logic: Logic, sig: &Signature, phi: &Formula) -> std::result::Result<(), CheckError> {
    let mut sig = sig.clone();
    formula_wf(logic, &mut sig, phi)
}

fn formula_wf(logic: Logic, sig: &mut Signature, phi: &Formula) -> std::result::Result<(), CheckError> {
    stacker::maybe_grow(RED_ZONE, STACK_CHUNK, || formula_wf_node(logic, sig, phi))
}

fn formula_wf_node(logic: Logic, sig: &mut Signature, phi: &Formula) -> std::result::Result<(), CheckError> {
    match phi {
        Formula::Eq(s, a, b) => {
            if logic == Logic::Lhaw && !s.is_nat() {
                return Err(CheckError::EqualityAtArrowSort { sort: s.clone() });
            }
            expect_sort(sig, a, s)?;
            expect_sort(sig, b, s)
        }
        Formula::Bot => Ok(()),
        Formula::Null(t) => expect_sort(sig, t, &Sort::Nat),
        Formula::Imp(a, b) | Formula::And(a, b) => {
            formula_wf(logic, sig, a)?;
            formula_wf(logic, sig, b)
        }
        Formula::Forall(x, s, body) | Formula::Exists(x, s, body) => {
            sig.push(x.clone(), s.clone());
            let r = formula_wf(logic, sig, body);
            sig.pop();
            r
        }
    }
}

/// `(Δ;Γ) wfp`: names distinct, and every hypothesis a well-formed
/// formula over `Δ` (in particular `FV(Γ) ⊆ Δ`).
pub fn check_wf(logic: Logic, sig: &Signature, ctx: &Context) -> bool {
    wf_diagnostic(logic, sig, ctx).is_ok()
}

pub fn wf_diagnostic(logic: Logic, sig: &Signature, ctx: &Context) -> std::result::Result<(), Rejection> {
    if let Some(name) = sig.first_duplicate() {
        return fail("wf", CheckError::DuplicateName { name: name.clone(), place: "signature" });
    }
    if let Some(name) = ctx.first_duplicate() {
        return fail("wf", CheckError::DuplicateName { name: name.clone(), place: "context" });
    }
    for (_, phi) in ctx.iter() {
        check_formula(logic, sig, phi).map_err(|e| Rejection { path: vec!["context"], rule: "wf", error: Box::new(e) })?;
    }
    Ok(())
}

/// Checks `Δ ; Γ ⊢ M : Φ` in the given logic.
pub fn check_proof(logic: Logic, sig: &Signature, ctx: &Context, proof: &ProofTerm, goal: &Formula) -> CheckReport {
    Checker::new(logic).check_judgment(sig, ctx, proof, goal)
}

/// The formula a proof proves, when it can be read off the proof.
pub fn infer_proof(logic: Logic, sig: &Signature, ctx: &Context, proof: &ProofTerm) -> Result<Formula> {
    wf_diagnostic(logic, sig, ctx)?;
    let mut env = Env { sig: sig.clone(), ctx: ctx.clone() };
    Checker::new(logic).infer(&mut env, proof)
}

#[derive(Clone, Copy, Debug)]
pub struct Checker {
    pub logic: Logic,
    pub budget: StepBudget,
}

struct Env {
    sig: Signature,
    ctx: Context,
}

impl Env {
    fn term_names_in_scope(&self) -> BTreeSet<Name> {
        let mut names: BTreeSet<Name> = self.sig.iter().map(|(x, _)| x.clone()).collect();
        names.extend(self.ctx.free_vars());
        names
    }
}

/// How a term binder of a proof is entered.
enum Entry {
    /// Binder name is free for use.
    Direct,
    /// Binder shadows a declared variable; rename it to this.
    Renamed(Name),
}

impl Checker {
    pub fn new(logic: Logic) -> Self {
        Checker { logic, budget: StepBudget::default() }
    }

    pub fn with_budget(mut self, budget: StepBudget) -> Self {
        self.budget = budget;
        self
    }

    pub fn check_judgment(&self, sig: &Signature, ctx: &Context, proof: &ProofTerm, goal: &Formula) -> CheckReport {
        let result = (|| {
            wf_diagnostic(self.logic, sig, ctx)?;
            check_formula(self.logic, sig, goal).map_err(|e| Rejection { path: vec!["goal"], rule: "wf", error: Box::new(e) })?;
            let mut env = Env { sig: sig.clone(), ctx: ctx.clone() };
            self.check(&mut env, proof, goal)
        })();
        match result {
            Ok(()) => {
                let fv = goal.free_vars();
                assert!(
                    fv.iter().all(|x| sig.contains(x)),
                    "accepted judgment with a goal not over its signature"
                );
                CheckReport { verdict: Verdict::Accepted, goal: goal.clone(), rejection: None }
            }
            Err(r) => CheckReport { verdict: Verdict::Rejected, goal: goal.clone(), rejection: Some(r) },
        }
    }

    fn term_at(&self, env: &mut Env, rule: &'static str, t: &Term, s: &Sort) -> Result<()> {
        expect_sort(&mut env.sig, t, s).map_err(|e| Rejection::new(rule, e))
    }

    fn formula_ok(&self, env: &mut Env, rule: &'static str, phi: &Formula) -> Result<()> {
        formula_wf(self.logic, &mut env.sig, phi).map_err(|e| Rejection::new(rule, e))
    }

    fn sort_in_logic(&self, rule: &'static str, s: &Sort) -> Result<()> {
        if self.logic == Logic::Lhaw && !s.is_nat() {
            return fail(rule, CheckError::EqualityAtArrowSort { sort: s.clone() });
        }
        Ok(())
    }

    fn whnf(&self, rule: &'static str, phi: &Formula) -> Result<Formula> {
        whnf_formula(phi, self.budget).map_err(|e| Rejection::new(rule, e.into()))
    }

    fn convertible(&self, rule: &'static str, found: &Formula, expected: &Formula) -> Result<bool> {
        if alpha_eq_formula(found, expected) {
            return Ok(true);
        }
        formula_congruent_with(found, expected, self.budget).map_err(|e| Rejection::new(rule, e.into()))
    }

    fn conversion(&self, rule: &'static str, found: &Formula, expected: &Formula) -> Result<()> {
        if self.convertible(rule, found, expected)? {
            Ok(())
        } else {
            fail(rule, CheckError::FormulaMismatch { expected: expected.clone(), found: found.clone() })
        }
    }

    /// Side condition of ∀-introduction and ∃-elimination.
    fn enter(&self, env: &Env, rule: &'static str, x: &Name, extra: Option<&Formula>) -> Result<Entry> {
        if env.ctx.has_free(x) {
            return fail(rule, CheckError::EigenvariableCapture { var: x.clone(), place: "the context" });
        }
        if let Some(phi) = extra {
            if phi.has_free(x) {
                return fail(rule, CheckError::EigenvariableCapture { var: x.clone(), place: "the conclusion" });
            }
        }
        if env.sig.contains(x) {
            let used = env.term_names_in_scope();
            let fresh = variant_avoiding(x, &used);
            return Ok(Entry::Renamed(fresh));
        }
        Ok(Entry::Direct)
    }

    fn infer(&self, env: &mut Env, p: &ProofTerm) -> Result<Formula> {
        stacker::maybe_grow(RED_ZONE, STACK_CHUNK, || self.infer_node(env, p))
    }

    fn infer_node(&self, env: &mut Env, p: &ProofTerm) -> Result<Formula> {
        match p {
            ProofTerm::PVar(h) => match env.ctx.lookup(h) {
                Some(phi) => Ok(phi.clone()),
                None => fail("axiom", CheckError::UnboundProofVariable { name: h.clone() }),
            },
            ProofTerm::Refl(s, t) => {
                self.sort_in_logic("refl", s)?;
                self.term_at(env, "refl", t, s)?;
                Ok(Formula::Eq(s.clone(), t.clone(), t.clone()))
            }
            ProofTerm::Peel { sort, lhs, rhs, eq, binder, motive, base } => {
                self.sort_in_logic("peel", sort)?;
                self.term_at(env, "peel", lhs, sort)?;
                self.term_at(env, "peel", rhs, sort)?;
                let eq_goal = Formula::Eq(sort.clone(), lhs.clone(), rhs.clone());
                at("eq", self.check(env, eq, &eq_goal))?;
                env.sig.push(binder.clone(), sort.clone());
                let wf = self.formula_ok(env, "peel", motive);
                env.sig.pop();
                at("motive", wf)?;
                let base_goal = motive.instantiate(binder, lhs);
                at("base", self.check(env, base, &base_goal).map_err(|r| motive_mismatch("peel", r)))?;
                Ok(motive.instantiate(binder, rhs))
            }
            ProofTerm::Efq(m, target) => {
                at("proof", self.check(env, m, &Formula::Bot))?;
                let missing: Vec<Name> = target.free_vars().into_iter().filter(|x| !env.sig.contains(x)).collect();
                if !missing.is_empty() {
                    return fail("efq", CheckError::EfqFreeVariables { vars: missing });
                }
                at("target", self.formula_ok(env, "efq", target))?;
                Ok((**target).clone())
            }
            ProofTerm::PLam(h, hyp, body) => {
                at("hyp", self.formula_ok(env, "imp-intro", hyp))?;
                env.ctx.push(h.clone(), (**hyp).clone());
                let r = at("body", self.infer(env, body));
                env.ctx.pop();
                Ok(Formula::imp((**hyp).clone(), r?))
            }
            ProofTerm::PApp(f, a) => {
                let ft = at("fun", self.infer(env, f))?;
                match self.whnf("imp-elim", &ft)? {
                    Formula::Imp(dom, cod) => {
                        at("arg", self.check(env, a, &dom))?;
                        Ok((*cod).clone())
                    }
                    other => at("fun", fail("imp-elim", CheckError::ShapeMismatch { expected: "an implication", found: other })),
                }
            }
            ProofTerm::Pair(a, b) => {
                let fa = at("left", self.infer(env, a))?;
                let fb = at("right", self.infer(env, b))?;
                Ok(Formula::and(fa, fb))
            }
            ProofTerm::Proj(side, m) => {
                let mt = at("proof", self.infer(env, m))?;
                match self.whnf("proj", &mt)? {
                    Formula::And(a, b) => Ok(match side {
                        crate::syntax::Side::Left => (*a).clone(),
                        crate::syntax::Side::Right => (*b).clone(),
                    }),
                    other => at("proof", fail("proj", CheckError::ShapeMismatch { expected: "a conjunction", found: other })),
                }
            }
            ProofTerm::TLam(x, s, body) => {
                let (x, body) = match self.enter(env, "forall-intro", x, None)? {
                    Entry::Direct => (x.clone(), (**body).clone()),
                    Entry::Renamed(y) => (y.clone(), body.subst_term1(x, &Term::var(y))),
                };
                env.sig.push(x.clone(), s.clone());
                let r = at("body", self.infer(env, &body));
                env.sig.pop();
                Ok(Formula::forall(x, s.clone(), r?))
            }
            ProofTerm::TApp(m, t) => {
                let mt = at("proof", self.infer(env, m))?;
                match self.whnf("forall-elim", &mt)? {
                    Formula::Forall(x, s, body) => {
                        at("term", self.term_at(env, "forall-elim", t, &s))?;
                        Ok(body.instantiate(&x, t))
                    }
                    other => at("proof", fail("forall-elim", CheckError::ShapeMismatch { expected: "a universal formula", found: other })),
                }
            }
            ProofTerm::ExIntro(t, m, target) => {
                at("target", self.formula_ok(env, "exists-intro", target))?;
                match self.whnf("exists-intro", target)? {
                    Formula::Exists(x, s, body) => {
                        at("witness", self.term_at(env, "exists-intro", t, &s))?;
                        at("proof", self.check(env, m, &body.instantiate(&x, t)))?;
                        Ok((**target).clone())
                    }
                    other => at("target", fail("exists-intro", CheckError::ShapeMismatch { expected: "an existential formula", found: other })),
                }
            }
            ProofTerm::ExElim { proof, var, pvar, body } => {
                let (var, pvar, body, hyp, s) = self.open_exists(env, proof, var, pvar, body, None)?;
                env.sig.push(var.clone(), s);
                env.ctx.push(pvar, hyp);
                let r = at("body", self.infer(env, &body));
                env.ctx.pop();
                env.sig.pop();
                let concl = r?;
                if concl.has_free(&var) {
                    return fail("exists-elim", CheckError::EigenvariableCapture { var, place: "the conclusion" });
                }
                Ok(concl)
            }
            ProofTerm::Ind { binder, motive, base, step, scrut } => {
                env.sig.push(binder.clone(), Sort::Nat);
                let wf = self.formula_ok(env, "ind", motive);
                env.sig.pop();
                at("motive", wf)?;
                at("scrut", self.term_at(env, "ind", scrut, &Sort::Nat))?;
                let base_goal = motive.instantiate(binder, &Term::Zero);
                at("base", self.check(env, base, &base_goal).map_err(|r| motive_mismatch("ind", r)))?;
                let step_goal = Formula::forall(
                    binder.clone(),
                    Sort::Nat,
                    Formula::imp((**motive).clone(), motive.instantiate(binder, &Term::succ(Term::var(binder.clone())))),
                );
                at("step", self.check(env, step, &step_goal).map_err(|r| motive_mismatch("ind", r)))?;
                Ok(motive.instantiate(binder, scrut))
            }
            ProofTerm::ExtIntro(dom, cod, m) => {
                self.extensional("ext")?;
                let mt = at("proof", self.infer(env, m))?;
                match ext_premise_functions(&mt, dom, cod) {
                    Some((f, g)) => Ok(Formula::Eq(Sort::arrow(dom.clone(), cod.clone()), f, g)),
                    None => fail("ext", CheckError::CannotInfer { construct: "ext" }),
                }
            }
            ProofTerm::AppPm { dom, cod, fun_eq, lhs, rhs, arg_eq } => {
                self.extensional("apppm")?;
                let arrow = Sort::arrow(dom.clone(), cod.clone());
                let ft = at("fun", self.infer(env, fun_eq))?;
                let (f, g) = match self.whnf("apppm", &ft)? {
                    Formula::Eq(s, f, g) if s == arrow => (f, g),
                    Formula::Eq(s, _, _) => return at("fun", fail("apppm", CheckError::SortMismatch { expected: arrow, found: s })),
                    other => return at("fun", fail("apppm", CheckError::ShapeMismatch { expected: "an equality", found: other })),
                };
                self.term_at(env, "apppm", lhs, dom)?;
                self.term_at(env, "apppm", rhs, dom)?;
                at("arg", self.check(env, arg_eq, &Formula::Eq(dom.clone(), lhs.clone(), rhs.clone())))?;
                Ok(Formula::Eq(cod.clone(), Term::app(f, lhs.clone()), Term::app(g, rhs.clone())))
            }
        }
    }

    fn extensional(&self, rule: &'static str) -> Result<()> {
        if self.logic == Logic::Lhaw {
            return fail(rule, CheckError::ExtensionalRuleInLhaw { rule });
        }
        Ok(())
    }

    /// Infers the unpacked proof of an ∃-elimination and decides how its
    /// binder enters scope.
    #[allow(clippy::type_complexity)]
    fn open_exists(
        &self,
        env: &mut Env,
        proof: &ProofTerm,
        var: &Name,
        pvar: &Name,
        body: &ProofTerm,
        goal: Option<&Formula>,
    ) -> Result<(Name, Name, ProofTerm, Formula, Sort)> {
        let pt = at("proof", self.infer(env, proof))?;
        let (y, s, inner) = match self.whnf("exists-elim", &pt)? {
            Formula::Exists(y, s, inner) => (y, s, inner),
            other => return at("proof", fail("exists-elim", CheckError::ShapeMismatch { expected: "an existential formula", found: other })),
        };
        let (var, body) = match self.enter(env, "exists-elim", var, goal)? {
            Entry::Direct => (var.clone(), body.clone()),
            Entry::Renamed(z) => (z.clone(), body.subst_term1(var, &Term::var(z))),
        };
        let hyp = inner.instantiate(&y, &Term::var(var.clone()));
        Ok((var, pvar.clone(), body, hyp, s))
    }

    fn check(&self, env: &mut Env, p: &ProofTerm, goal: &Formula) -> Result<()> {
        stacker::maybe_grow(RED_ZONE, STACK_CHUNK, || self.check_node(env, p, goal))
    }

    fn check_node(&self, env: &mut Env, p: &ProofTerm, goal: &Formula) -> Result<()> {
        match p {
            ProofTerm::PLam(h, hyp, body) => {
                at("hyp", self.formula_ok(env, "imp-intro", hyp))?;
                let (dom, cod) = match self.whnf("imp-intro", goal)? {
                    Formula::Imp(dom, cod) => (dom, cod),
                    other => return fail("imp-intro", CheckError::ShapeMismatch { expected: "an implication", found: other }),
                };
                at("hyp", self.conversion("imp-intro", hyp, &dom))?;
                env.ctx.push(h.clone(), (**hyp).clone());
                let r = at("body", self.check(env, body, &cod));
                env.ctx.pop();
                r
            }
            ProofTerm::Pair(a, b) => match self.whnf("and-intro", goal)? {
                Formula::And(ga, gb) => {
                    at("left", self.check(env, a, &ga))?;
                    at("right", self.check(env, b, &gb))
                }
                other => fail("and-intro", CheckError::ShapeMismatch { expected: "a conjunction", found: other }),
            },
            ProofTerm::TLam(x, s, body) => {
                let (y, gs, gbody) = match self.whnf("forall-intro", goal)? {
                    Formula::Forall(y, gs, gbody) => (y, gs, gbody),
                    other => return fail("forall-intro", CheckError::ShapeMismatch { expected: "a universal formula", found: other }),
                };
                if &gs != s {
                    return fail("forall-intro", CheckError::SortMismatch { expected: gs, found: s.clone() });
                }
                let (x, body) = match self.enter(env, "forall-intro", x, None)? {
                    Entry::Direct => (x.clone(), (**body).clone()),
                    Entry::Renamed(z) => (z.clone(), body.subst_term1(x, &Term::var(z))),
                };
                let target = gbody.instantiate(&y, &Term::var(x.clone()));
                env.sig.push(x, s.clone());
                let r = at("body", self.check(env, &body, &target));
                env.sig.pop();
                r
            }
            ProofTerm::ExElim { proof, var, pvar, body } => {
                let (var, pvar, body, hyp, s) = self.open_exists(env, proof, var, pvar, body, Some(goal))?;
                env.sig.push(var, s);
                env.ctx.push(pvar, hyp);
                let r = at("body", self.check(env, &body, goal));
                env.ctx.pop();
                env.sig.pop();
                r
            }
            ProofTerm::ExtIntro(dom, cod, m) => {
                self.extensional("ext")?;
                let arrow = Sort::arrow(dom.clone(), cod.clone());
                let (f, g) = match self.whnf("ext", goal)? {
                    Formula::Eq(s, f, g) if s == arrow => (f, g),
                    Formula::Eq(s, _, _) => return fail("ext", CheckError::SortMismatch { expected: s, found: arrow }),
                    other => return fail("ext", CheckError::ShapeMismatch { expected: "an equality", found: other }),
                };
                let mut used = f.free_vars();
                used.extend(g.free_vars());
                let x = variant_avoiding("x", &used);
                let xv = Term::var(x.clone());
                let premise = Formula::forall(x, dom.clone(), Formula::Eq(cod.clone(), Term::app(f, xv.clone()), Term::app(g, xv)));
                at("proof", self.check(env, m, &premise))
            }
            _ => {
                let found = self.infer(env, p)?;
                self.conversion("conversion", &found, goal)
            }
        }
    }
}

/// Reads `∀x^σ (f x =_τ g x)` with `x ∉ FV(f, g)`.
fn ext_premise_functions(phi: &Formula, dom: &Sort, cod: &Sort) -> Option<(Term, Term)> {
    let Formula::Forall(x, s, body) = phi else { return None };
    let Formula::Eq(t, l, r) = &**body else { return None };
    if s != dom || t != cod {
        return None;
    }
    match (l, r) {
        (Term::App(f, a), Term::App(g, b))
            if matches!(&**a, Term::Var(y) if y == x)
                && matches!(&**b, Term::Var(y) if y == x)
                && !f.has_free(x)
                && !g.has_free(x) =>
        {
            Some(((**f).clone(), (**g).clone()))
        }
        _ => None,
    }
}

fn motive_mismatch(rule: &'static str, r: Rejection) -> Rejection {
    match *r.error {
        CheckError::FormulaMismatch { expected, found }
            if r.path.iter().all(|seg| matches!(*seg, "body" | "hyp" | "left" | "right")) =>
        {
            Rejection { path: r.path, rule, error: Box::new(CheckError::MotiveMismatch { rule, expected, found }) }
        }
        _ => r,
    }
}

fn variant_avoiding(base: &str, used: &BTreeSet<Name>) -> Name {
    let mut candidate = format!("{base}'");
    while used.contains(&candidate) {
        candidate.push('\'');
    }
    candidate
}
