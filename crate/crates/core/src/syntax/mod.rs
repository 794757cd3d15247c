//! Abstract syntax: sorts, System T terms, formulas and proof terms.
//!
//! Binders keep their display names. Equality up to renaming of bound
//! variables is provided by [`alpha`]; the derived `PartialEq` is plain
//! syntactic identity.

mod alpha;
mod fresh;
mod subst;

use std::fmt;
use std::sync::Arc;

pub use alpha::{alpha_eq_formula, alpha_eq_proof, alpha_eq_term, AlphaEq};
pub use fresh::{is_reserved, rename, Fresh, RenameTag};
pub(crate) use fresh::variant;
pub use subst::{ProofSubst, TermSubst};

pub type Name = String;

/// Simple types `N | σ → τ`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sort {
    Nat,
    Arrow(Arc<Sort>, Arc<Sort>),
}

impl Sort {
    pub fn arrow(dom: Sort, cod: Sort) -> Sort {
        Sort::Arrow(Arc::new(dom), Arc::new(cod))
    }

    /// `σ₁ → … → σₙ → τ`
    pub fn arrows(doms: impl IntoIterator<Item = Sort>, cod: Sort) -> Sort {
        let doms: Vec<Sort> = doms.into_iter().collect();
        doms.into_iter().rev().fold(cod, |acc, d| Sort::arrow(d, acc))
    }

    pub fn depth(&self) -> usize {
        match self {
            Sort::Nat => 0,
            Sort::Arrow(d, c) => 1 + d.depth().max(c.depth()),
        }
    }

    pub fn is_nat(&self) -> bool {
        matches!(self, Sort::Nat)
    }

    pub fn as_arrow(&self) -> Option<(&Sort, &Sort)> {
        match self {
            Sort::Arrow(d, c) => Some((d, c)),
            Sort::Nat => None,
        }
    }

    /// Every sort of depth at most `max_depth`, in a fixed order.
    pub fn all_up_to_depth(max_depth: usize) -> Vec<Sort> {
        let mut sorts = vec![Sort::Nat];
        for _ in 0..max_depth {
            let prev = sorts.clone();
            let mut next = vec![Sort::Nat];
            for d in &prev {
                for c in &prev {
                    next.push(Sort::arrow(d.clone(), c.clone()));
                }
            }
            sorts = next;
        }
        sorts
    }
}

/// Terms of Gödel's System T, Church style.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Var(Name),
    Lam(Name, Sort, Arc<Term>),
    App(Arc<Term>, Arc<Term>),
    Zero,
    Succ(Arc<Term>),
    /// `Rec^σ base step scrutinee`
    Rec(Sort, Arc<Term>, Arc<Term>, Arc<Term>),
}

impl Term {
    pub fn var(name: impl Into<Name>) -> Term {
        Term::Var(name.into())
    }

    pub fn lam(x: impl Into<Name>, sort: Sort, body: Term) -> Term {
        Term::Lam(x.into(), sort, Arc::new(body))
    }

    pub fn app(f: Term, a: Term) -> Term {
        Term::App(Arc::new(f), Arc::new(a))
    }

    pub fn apps(f: Term, args: impl IntoIterator<Item = Term>) -> Term {
        args.into_iter().fold(f, Term::app)
    }

    pub fn succ(t: Term) -> Term {
        Term::Succ(Arc::new(t))
    }

    pub fn rec(sort: Sort, base: Term, step: Term, scrut: Term) -> Term {
        Term::Rec(sort, Arc::new(base), Arc::new(step), Arc::new(scrut))
    }

    /// `Sⁿ 0`
    pub fn numeral(n: u64) -> Term {
        (0..n).fold(Term::Zero, |t, _| Term::succ(t))
    }

    /// Inverse of [`Term::numeral`].
    pub fn as_numeral(&self) -> Option<u64> {
        let mut n = 0;
        let mut t = self;
        loop {
            match t {
                Term::Zero => return Some(n),
                Term::Succ(inner) => {
                    n += 1;
                    t = inner;
                }
                _ => return None,
            }
        }
    }

    pub fn is_atomic(&self) -> bool {
        matches!(self, Term::Var(_) | Term::Zero)
    }
}

/// Formulas. `Eq` carries the sort of the compared terms; outside the
/// extensional logic that sort is always `N`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Eq(Sort, Term, Term),
    Bot,
    Null(Term),
    Imp(Arc<Formula>, Arc<Formula>),
    And(Arc<Formula>, Arc<Formula>),
    Forall(Name, Sort, Arc<Formula>),
    Exists(Name, Sort, Arc<Formula>),
}

impl Formula {
    pub fn eq_nat(a: Term, b: Term) -> Formula {
        Formula::Eq(Sort::Nat, a, b)
    }

    pub fn imp(a: Formula, b: Formula) -> Formula {
        Formula::Imp(Arc::new(a), Arc::new(b))
    }

    /// `a₁ ⇒ … ⇒ aₙ ⇒ b`
    pub fn imps(hyps: impl IntoIterator<Item = Formula>, concl: Formula) -> Formula {
        let hyps: Vec<Formula> = hyps.into_iter().collect();
        hyps.into_iter().rev().fold(concl, |acc, h| Formula::imp(h, acc))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Arc::new(a), Arc::new(b))
    }

    pub fn forall(x: impl Into<Name>, sort: Sort, body: Formula) -> Formula {
        Formula::Forall(x.into(), sort, Arc::new(body))
    }

    pub fn exists(x: impl Into<Name>, sort: Sort, body: Formula) -> Formula {
        Formula::Exists(x.into(), sort, Arc::new(body))
    }

    /// `⊤ ≡ ⊥ ⇒ ⊥`
    pub fn top() -> Formula {
        Formula::imp(Formula::Bot, Formula::Bot)
    }

    /// `¬Φ ≡ Φ ⇒ ⊥`
    pub fn not(a: Formula) -> Formula {
        Formula::imp(a, Formula::Bot)
    }

    /// `a ≠ b ≡ (a = b) ⇒ ⊥` at the given sort.
    pub fn neq(sort: Sort, a: Term, b: Term) -> Formula {
        Formula::not(Formula::Eq(sort, a, b))
    }

    /// `Φ ⇔ Ψ`, as the conjunction of both implications.
    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::and(Formula::imp(a.clone(), b.clone()), Formula::imp(b, a))
    }

    /// `Φ ∨ Ψ ≡ ∃z^N ((z = 0 ⇒ Φ) ∧ (z ≠ 0 ⇒ Ψ))` with `z` chosen fresh
    /// for both disjuncts.
    pub fn or(a: Formula, b: Formula) -> Formula {
        let mut avoid = a.free_vars();
        avoid.extend(b.free_vars());
        let z = fresh::variant("z", |n| avoid.contains(n));
        let is_zero = Formula::eq_nat(Term::var(z.clone()), Term::Zero);
        Formula::exists(
            z,
            Sort::Nat,
            Formula::and(
                Formula::imp(is_zero.clone(), a),
                Formula::imp(Formula::not(is_zero), b),
            ),
        )
    }
}

/// Which derived connective to expand.
#[derive(Clone, Debug)]
pub enum Derived {
    Top,
    Or(Formula, Formula),
    Neq(Sort, Term, Term),
}

/// Expands a derived connective into the kernel grammar.
pub fn expand_derived(kind: Derived) -> Formula {
    match kind {
        Derived::Top => Formula::top(),
        Derived::Or(a, b) => Formula::or(a, b),
        Derived::Neq(s, a, b) => Formula::neq(s, a, b),
    }
}

/// Natural deduction proof terms, with the extensional-equality
/// constructors `ExtIntro` and `AppPm`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum ProofTerm {
    PVar(Name),
    /// `refl_σ t : t =_σ t`
    Refl(Sort, Term),
    /// `peel_σ^{t,u}(eq, x̂.motive, base)`
    Peel {
        sort: Sort,
        lhs: Term,
        rhs: Term,
        eq: Arc<ProofTerm>,
        binder: Name,
        motive: Arc<Formula>,
        base: Arc<ProofTerm>,
    },
    Efq(Arc<ProofTerm>, Arc<Formula>),
    PLam(Name, Arc<Formula>, Arc<ProofTerm>),
    PApp(Arc<ProofTerm>, Arc<ProofTerm>),
    Pair(Arc<ProofTerm>, Arc<ProofTerm>),
    Proj(Side, Arc<ProofTerm>),
    TLam(Name, Sort, Arc<ProofTerm>),
    TApp(Arc<ProofTerm>, Term),
    /// `[witness, proof]` checked against the annotated `∃` formula.
    ExIntro(Term, Arc<ProofTerm>, Arc<Formula>),
    /// `let [var, pvar] := proof in body`
    ExElim {
        proof: Arc<ProofTerm>,
        var: Name,
        pvar: Name,
        body: Arc<ProofTerm>,
    },
    /// `Ind(x̂.motive, base, step, scrut)`
    Ind {
        binder: Name,
        motive: Arc<Formula>,
        base: Arc<ProofTerm>,
        step: Arc<ProofTerm>,
        scrut: Term,
    },
    ExtIntro(Sort, Sort, Arc<ProofTerm>),
    AppPm {
        dom: Sort,
        cod: Sort,
        fun_eq: Arc<ProofTerm>,
        lhs: Term,
        rhs: Term,
        arg_eq: Arc<ProofTerm>,
    },
}

/// Projection index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn index(self) -> u8 {
        match self {
            Side::Left => 1,
            Side::Right => 2,
        }
    }
}

impl ProofTerm {
    pub fn pvar(name: impl Into<Name>) -> ProofTerm {
        ProofTerm::PVar(name.into())
    }

    pub fn plam(x: impl Into<Name>, hyp: Formula, body: ProofTerm) -> ProofTerm {
        ProofTerm::PLam(x.into(), Arc::new(hyp), Arc::new(body))
    }

    pub fn papp(f: ProofTerm, a: ProofTerm) -> ProofTerm {
        ProofTerm::PApp(Arc::new(f), Arc::new(a))
    }

    pub fn papps(f: ProofTerm, args: impl IntoIterator<Item = ProofTerm>) -> ProofTerm {
        args.into_iter().fold(f, ProofTerm::papp)
    }

    pub fn tlam(x: impl Into<Name>, sort: Sort, body: ProofTerm) -> ProofTerm {
        ProofTerm::TLam(x.into(), sort, Arc::new(body))
    }

    pub fn tapp(f: ProofTerm, t: Term) -> ProofTerm {
        ProofTerm::TApp(Arc::new(f), t)
    }

    pub fn tapps(f: ProofTerm, args: impl IntoIterator<Item = Term>) -> ProofTerm {
        args.into_iter().fold(f, ProofTerm::tapp)
    }

    pub fn pair(a: ProofTerm, b: ProofTerm) -> ProofTerm {
        ProofTerm::Pair(Arc::new(a), Arc::new(b))
    }

    pub fn fst(p: ProofTerm) -> ProofTerm {
        ProofTerm::Proj(Side::Left, Arc::new(p))
    }

    pub fn snd(p: ProofTerm) -> ProofTerm {
        ProofTerm::Proj(Side::Right, Arc::new(p))
    }

    pub fn efq(p: ProofTerm, target: Formula) -> ProofTerm {
        ProofTerm::Efq(Arc::new(p), Arc::new(target))
    }

    pub fn ex_intro(witness: Term, p: ProofTerm, target: Formula) -> ProofTerm {
        ProofTerm::ExIntro(witness, Arc::new(p), Arc::new(target))
    }

    pub fn ex_elim(
        proof: ProofTerm,
        var: impl Into<Name>,
        pvar: impl Into<Name>,
        body: ProofTerm,
    ) -> ProofTerm {
        ProofTerm::ExElim {
            proof: Arc::new(proof),
            var: var.into(),
            pvar: pvar.into(),
            body: Arc::new(body),
        }
    }

    #[allow(clippy::too_many_arguments)]
    pub fn peel(
        sort: Sort,
        lhs: Term,
        rhs: Term,
        eq: ProofTerm,
        binder: impl Into<Name>,
        motive: Formula,
        base: ProofTerm,
    ) -> ProofTerm {
        ProofTerm::Peel {
            sort,
            lhs,
            rhs,
            eq: Arc::new(eq),
            binder: binder.into(),
            motive: Arc::new(motive),
            base: Arc::new(base),
        }
    }

    pub fn ind(
        binder: impl Into<Name>,
        motive: Formula,
        base: ProofTerm,
        step: ProofTerm,
        scrut: Term,
    ) -> ProofTerm {
        ProofTerm::Ind {
            binder: binder.into(),
            motive: Arc::new(motive),
            base: Arc::new(base),
            step: Arc::new(step),
            scrut,
        }
    }

    pub fn ext(dom: Sort, cod: Sort, p: ProofTerm) -> ProofTerm {
        ProofTerm::ExtIntro(dom, cod, Arc::new(p))
    }

    pub fn app_pm(dom: Sort, cod: Sort, fun_eq: ProofTerm, lhs: Term, rhs: Term, arg_eq: ProofTerm) -> ProofTerm {
        ProofTerm::AppPm {
            dom,
            cod,
            fun_eq: Arc::new(fun_eq),
            lhs,
            rhs,
            arg_eq: Arc::new(arg_eq),
        }
    }

    /// True if the proof uses `peel` anywhere.
    pub fn contains_peel(&self) -> bool {
        let mut found = false;
        self.visit(&mut |p| found |= matches!(p, ProofTerm::Peel { .. }));
        found
    }

    /// True if the proof uses one of the extensional-equality rules.
    pub fn uses_extensional_rules(&self) -> bool {
        let mut found = false;
        self.visit(&mut |p| match p {
            ProofTerm::ExtIntro(..) | ProofTerm::AppPm { .. } => found = true,
            ProofTerm::Refl(s, _) | ProofTerm::Peel { sort: s, .. } if !s.is_nat() => found = true,
            _ => {}
        });
        found
    }

    /// Pre-order traversal over proof nodes.
    pub fn visit(&self, f: &mut impl FnMut(&ProofTerm)) {
        f(self);
        match self {
            ProofTerm::PVar(_) | ProofTerm::Refl(..) => {}
            ProofTerm::Peel { eq, base, .. } => {
                eq.visit(f);
                base.visit(f);
            }
            ProofTerm::Efq(p, _)
            | ProofTerm::PLam(_, _, p)
            | ProofTerm::Proj(_, p)
            | ProofTerm::TLam(_, _, p)
            | ProofTerm::TApp(p, _)
            | ProofTerm::ExIntro(_, p, _)
            | ProofTerm::ExtIntro(_, _, p) => p.visit(f),
            ProofTerm::PApp(a, b) | ProofTerm::Pair(a, b) => {
                a.visit(f);
                b.visit(f);
            }
            ProofTerm::ExElim { proof, body, .. } => {
                proof.visit(f);
                body.visit(f);
            }
            ProofTerm::Ind { base, step, .. } => {
                base.visit(f);
                step.visit(f);
            }
            ProofTerm::AppPm { fun_eq, arg_eq, .. } => {
                fun_eq.visit(f);
                arg_eq.visit(f);
            }
        }
    }
}

/// Which proof system a judgment lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Logic {
    /// Equality at `N` only.
    Lhaw,
    /// Extensional equality at every sort.
    Lehaw,
}

impl Logic {
    pub fn keyword(self) -> &'static str {
        match self {
            Logic::Lhaw => "lhaw",
            Logic::Lehaw => "lehaw",
        }
    }
}

impl fmt::Display for Logic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

/// Ordered first-order variable declarations `Δ`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Signature(pub Vec<(Name, Sort)>);

impl Signature {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, x: impl Into<Name>, sort: Sort) -> Self {
        self.0.push((x.into(), sort));
        self
    }

    /// Innermost declaration wins.
    pub fn lookup(&self, x: &str) -> Option<&Sort> {
        self.0.iter().rev().find(|(n, _)| n == x).map(|(_, s)| s)
    }

    pub fn contains(&self, x: &str) -> bool {
        self.lookup(x).is_some()
    }

    pub fn push(&mut self, x: impl Into<Name>, sort: Sort) {
        self.0.push((x.into(), sort));
    }

    pub fn pop(&mut self) {
        self.0.pop();
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &(Name, Sort)> {
        self.0.iter()
    }

    pub fn first_duplicate(&self) -> Option<&Name> {
        first_duplicate(self.0.iter().map(|(n, _)| n))
    }
}

/// Ordered proof hypotheses `Γ`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Context(pub Vec<(Name, Formula)>);

impl Context {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, x: impl Into<Name>, phi: Formula) -> Self {
        self.0.push((x.into(), phi));
        self
    }

    pub fn lookup(&self, x: &str) -> Option<&Formula> {
        self.0.iter().rev().find(|(n, _)| n == x).map(|(_, f)| f)
    }

    pub fn push(&mut self, x: impl Into<Name>, phi: Formula) {
        self.0.push((x.into(), phi));
    }

    pub fn pop(&mut self) {
        self.0.pop();
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &(Name, Formula)> {
        self.0.iter()
    }

    pub fn first_duplicate(&self) -> Option<&Name> {
        first_duplicate(self.0.iter().map(|(n, _)| n))
    }
}

fn first_duplicate<'a>(names: impl Iterator<Item = &'a Name>) -> Option<&'a Name> {
    let mut seen = std::collections::HashSet::new();
    names.into_iter().find(|n| !seen.insert(n.as_str()))
}

/// A sequent `Δ ; Γ ⊢ M : Φ` tagged with its logic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Judgment {
    pub logic: Logic,
    pub sig: Signature,
    pub ctx: Context,
    pub proof: ProofTerm,
    pub goal: Formula,
}

impl Judgment {
    pub fn closed(logic: Logic, proof: ProofTerm, goal: Formula) -> Self {
        Judgment {
            logic,
            sig: Signature::new(),
            ctx: Context::new(),
            proof,
            goal,
        }
    }
}

// Debug output uses the concrete syntax; derived Debug on deep trees is
// unreadable.
macro_rules! debug_via_display {
    ($($t:ty),*) => {$(
        impl fmt::Debug for $t {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                fmt::Display::fmt(self, f)
            }
        }
    )*};
}

debug_via_display!(Sort, Term, Formula, ProofTerm);
