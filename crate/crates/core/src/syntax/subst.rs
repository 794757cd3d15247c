//! Free variables and capture-avoiding simultaneous substitution.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::sync::Arc;

use super::fresh::variant;
use super::{Context, Formula, Name, ProofTerm, Term};

/// Finite map from term variables to terms.
pub type TermSubst = BTreeMap<Name, Term>;
/// Finite map from proof variables to proof terms.
pub type ProofSubst = BTreeMap<Name, ProofTerm>;

fn range_fv(theta: &TermSubst) -> BTreeSet<Name> {
    theta.values().flat_map(|t| t.free_vars()).collect()
}

/// Decides the name of a term binder `x` when pushing `theta` under it.
/// Returns the (possibly renamed) binder and the map to use in its scope,
/// or `None` if nothing remains to substitute.
fn enter_term_binder(
    x: &Name,
    theta: &TermSubst,
    extra_fv: &BTreeSet<Name>,
    body_fv: impl FnOnce() -> BTreeSet<Name>,
) -> Option<(Name, TermSubst)> {
    let mut inner: TermSubst = theta
        .iter()
        .filter(|(k, _)| *k != x)
        .map(|(k, v)| (k.clone(), v.clone()))
        .collect();
    if inner.is_empty() && extra_fv.is_empty() {
        return None;
    }
    let mut captured = range_fv(&inner);
    captured.extend(extra_fv.iter().cloned());
    if !captured.contains(x) {
        return Some((x.clone(), inner));
    }
    let body = body_fv();
    let fresh = variant(x, |n| captured.contains(n) || body.contains(n) || inner.contains_key(n));
    inner.insert(x.clone(), Term::Var(fresh.clone()));
    Some((fresh, inner))
}

impl Term {
    pub fn free_vars(&self) -> BTreeSet<Name> {
        let mut acc = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut acc);
        acc
    }

    fn collect_free<'a>(&'a self, bound: &mut Vec<&'a str>, acc: &mut BTreeSet<Name>) {
        match self {
            Term::Var(x) => {
                if !bound.contains(&x.as_str()) {
                    acc.insert(x.clone());
                }
            }
            Term::Lam(x, _, b) => {
                bound.push(x);
                b.collect_free(bound, acc);
                bound.pop();
            }
            Term::App(f, a) => {
                f.collect_free(bound, acc);
                a.collect_free(bound, acc);
            }
            Term::Zero => {}
            Term::Succ(t) => t.collect_free(bound, acc),
            Term::Rec(_, b, s, n) => {
                b.collect_free(bound, acc);
                s.collect_free(bound, acc);
                n.collect_free(bound, acc);
            }
        }
    }

    pub fn has_free(&self, x: &str) -> bool {
        match self {
            Term::Var(y) => x == y,
            Term::Lam(y, _, b) => y != x && b.has_free(x),
            Term::App(f, a) => f.has_free(x) || a.has_free(x),
            Term::Zero => false,
            Term::Succ(t) => t.has_free(x),
            Term::Rec(_, b, s, n) => b.has_free(x) || s.has_free(x) || n.has_free(x),
        }
    }

    /// Every name occurring in the term, bound or free.
    pub fn collect_names(&self, acc: &mut HashSet<Name>) {
        match self {
            Term::Var(x) => {
                acc.insert(x.clone());
            }
            Term::Lam(x, _, b) => {
                acc.insert(x.clone());
                b.collect_names(acc);
            }
            Term::App(f, a) => {
                f.collect_names(acc);
                a.collect_names(acc);
            }
            Term::Zero => {}
            Term::Succ(t) => t.collect_names(acc),
            Term::Rec(_, b, s, n) => {
                b.collect_names(acc);
                s.collect_names(acc);
                n.collect_names(acc);
            }
        }
    }

    pub fn subst(&self, theta: &TermSubst) -> Term {
        if theta.is_empty() {
            return self.clone();
        }
        match self {
            Term::Var(x) => theta.get(x).cloned().unwrap_or_else(|| self.clone()),
            Term::Lam(x, s, b) => {
                match enter_term_binder(x, theta, &BTreeSet::new(), || b.free_vars()) {
                    None => self.clone(),
                    Some((x2, inner)) => Term::Lam(x2, s.clone(), Arc::new(b.subst(&inner))),
                }
            }
            Term::App(f, a) => Term::app(f.subst(theta), a.subst(theta)),
            Term::Zero => Term::Zero,
            Term::Succ(t) => Term::succ(t.subst(theta)),
            Term::Rec(s, b, st, n) => {
                Term::rec(s.clone(), b.subst(theta), st.subst(theta), n.subst(theta))
            }
        }
    }

    /// `t[x := u]`
    pub fn subst1(&self, x: &str, u: &Term) -> Term {
        self.subst(&TermSubst::from([(x.to_string(), u.clone())]))
    }
}

impl Formula {
    pub fn free_vars(&self) -> BTreeSet<Name> {
        let mut acc = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut acc);
        acc
    }

    fn collect_free<'a>(&'a self, bound: &mut Vec<&'a str>, acc: &mut BTreeSet<Name>) {
        let term = |t: &Term, bound: &Vec<&'a str>, acc: &mut BTreeSet<Name>| {
            for x in t.free_vars() {
                if !bound.contains(&x.as_str()) {
                    acc.insert(x);
                }
            }
        };
        match self {
            Formula::Eq(_, a, b) => {
                term(a, bound, acc);
                term(b, bound, acc);
            }
            Formula::Bot => {}
            Formula::Null(t) => term(t, bound, acc),
            Formula::Imp(a, b) | Formula::And(a, b) => {
                a.collect_free(bound, acc);
                b.collect_free(bound, acc);
            }
            Formula::Forall(x, _, b) | Formula::Exists(x, _, b) => {
                bound.push(x);
                b.collect_free(bound, acc);
                bound.pop();
            }
        }
    }

    pub fn has_free(&self, x: &str) -> bool {
        match self {
            Formula::Eq(_, a, b) => a.has_free(x) || b.has_free(x),
            Formula::Bot => false,
            Formula::Null(t) => t.has_free(x),
            Formula::Imp(a, b) | Formula::And(a, b) => a.has_free(x) || b.has_free(x),
            Formula::Forall(y, _, b) | Formula::Exists(y, _, b) => y != x && b.has_free(x),
        }
    }

    pub fn collect_names(&self, acc: &mut HashSet<Name>) {
        match self {
            Formula::Eq(_, a, b) => {
                a.collect_names(acc);
                b.collect_names(acc);
            }
            Formula::Bot => {}
            Formula::Null(t) => t.collect_names(acc),
            Formula::Imp(a, b) | Formula::And(a, b) => {
                a.collect_names(acc);
                b.collect_names(acc);
            }
            Formula::Forall(x, _, b) | Formula::Exists(x, _, b) => {
                acc.insert(x.clone());
                b.collect_names(acc);
            }
        }
    }

    pub fn subst(&self, theta: &TermSubst) -> Formula {
        if theta.is_empty() {
            return self.clone();
        }
        match self {
            Formula::Eq(s, a, b) => Formula::Eq(s.clone(), a.subst(theta), b.subst(theta)),
            Formula::Bot => Formula::Bot,
            Formula::Null(t) => Formula::Null(t.subst(theta)),
            Formula::Imp(a, b) => Formula::imp(a.subst(theta), b.subst(theta)),
            Formula::And(a, b) => Formula::and(a.subst(theta), b.subst(theta)),
            Formula::Forall(x, s, b) | Formula::Exists(x, s, b) => {
                match enter_term_binder(x, theta, &BTreeSet::new(), || b.free_vars()) {
                    None => self.clone(),
                    Some((x2, inner)) => {
                        let body = Arc::new(b.subst(&inner));
                        if matches!(self, Formula::Forall(..)) {
                            Formula::Forall(x2, s.clone(), body)
                        } else {
                            Formula::Exists(x2, s.clone(), body)
                        }
                    }
                }
            }
        }
    }

    /// `Φ[x := u]`
    pub fn subst1(&self, x: &str, u: &Term) -> Formula {
        self.subst(&TermSubst::from([(x.to_string(), u.clone())]))
    }

    /// Substitutes under a binder `x̂.Φ`, giving `Φ[x := u]`.
    pub fn instantiate(&self, binder: &str, u: &Term) -> Formula {
        self.subst1(binder, u)
    }
}

impl Context {
    pub fn free_vars(&self) -> BTreeSet<Name> {
        self.0.iter().flat_map(|(_, f)| f.free_vars()).collect()
    }

    pub fn has_free(&self, x: &str) -> bool {
        self.0.iter().any(|(_, f)| f.has_free(x))
    }

    pub fn subst(&self, theta: &TermSubst) -> Context {
        Context(self.0.iter().map(|(n, f)| (n.clone(), f.subst(theta))).collect())
    }
}

impl ProofTerm {
    /// Free first-order variables, including those of annotations.
    pub fn free_term_vars(&self) -> BTreeSet<Name> {
        let mut acc = BTreeSet::new();
        self.collect_free_terms(&mut Vec::new(), &mut acc);
        acc
    }

    fn collect_free_terms<'a>(&'a self, bound: &mut Vec<&'a str>, acc: &mut BTreeSet<Name>) {
        let add = |fv: BTreeSet<Name>, bound: &Vec<&'a str>, acc: &mut BTreeSet<Name>| {
            for x in fv {
                if !bound.contains(&x.as_str()) {
                    acc.insert(x);
                }
            }
        };
        match self {
            ProofTerm::PVar(_) => {}
            ProofTerm::Refl(_, t) => add(t.free_vars(), bound, acc),
            ProofTerm::Peel { lhs, rhs, eq, binder, motive, base, .. } => {
                add(lhs.free_vars(), bound, acc);
                add(rhs.free_vars(), bound, acc);
                eq.collect_free_terms(bound, acc);
                let mut m = motive.free_vars();
                m.remove(binder);
                add(m, bound, acc);
                base.collect_free_terms(bound, acc);
            }
            ProofTerm::Efq(p, f) => {
                p.collect_free_terms(bound, acc);
                add(f.free_vars(), bound, acc);
            }
            ProofTerm::PLam(_, f, p) => {
                add(f.free_vars(), bound, acc);
                p.collect_free_terms(bound, acc);
            }
            ProofTerm::PApp(a, b) | ProofTerm::Pair(a, b) => {
                a.collect_free_terms(bound, acc);
                b.collect_free_terms(bound, acc);
            }
            ProofTerm::Proj(_, p) | ProofTerm::ExtIntro(_, _, p) => p.collect_free_terms(bound, acc),
            ProofTerm::TLam(x, _, p) => {
                bound.push(x);
                p.collect_free_terms(bound, acc);
                bound.pop();
            }
            ProofTerm::TApp(p, t) => {
                p.collect_free_terms(bound, acc);
                add(t.free_vars(), bound, acc);
            }
            ProofTerm::ExIntro(t, p, f) => {
                add(t.free_vars(), bound, acc);
                p.collect_free_terms(bound, acc);
                add(f.free_vars(), bound, acc);
            }
            ProofTerm::ExElim { proof, var, body, .. } => {
                proof.collect_free_terms(bound, acc);
                bound.push(var);
                body.collect_free_terms(bound, acc);
                bound.pop();
            }
            ProofTerm::Ind { binder, motive, base, step, scrut } => {
                let mut m = motive.free_vars();
                m.remove(binder);
                add(m, bound, acc);
                base.collect_free_terms(bound, acc);
                step.collect_free_terms(bound, acc);
                add(scrut.free_vars(), bound, acc);
            }
            ProofTerm::AppPm { fun_eq, lhs, rhs, arg_eq, .. } => {
                fun_eq.collect_free_terms(bound, acc);
                add(lhs.free_vars(), bound, acc);
                add(rhs.free_vars(), bound, acc);
                arg_eq.collect_free_terms(bound, acc);
            }
        }
    }

    pub fn free_proof_vars(&self) -> BTreeSet<Name> {
        let mut acc = BTreeSet::new();
        self.collect_free_proofs(&mut Vec::new(), &mut acc);
        acc
    }

    fn collect_free_proofs<'a>(&'a self, bound: &mut Vec<&'a str>, acc: &mut BTreeSet<Name>) {
        match self {
            ProofTerm::PVar(x) => {
                if !bound.contains(&x.as_str()) {
                    acc.insert(x.clone());
                }
            }
            ProofTerm::Refl(..) => {}
            ProofTerm::Peel { eq, base, .. } => {
                eq.collect_free_proofs(bound, acc);
                base.collect_free_proofs(bound, acc);
            }
            ProofTerm::PLam(x, _, p) => {
                bound.push(x);
                p.collect_free_proofs(bound, acc);
                bound.pop();
            }
            ProofTerm::Efq(p, _)
            | ProofTerm::Proj(_, p)
            | ProofTerm::TLam(_, _, p)
            | ProofTerm::TApp(p, _)
            | ProofTerm::ExIntro(_, p, _)
            | ProofTerm::ExtIntro(_, _, p) => p.collect_free_proofs(bound, acc),
            ProofTerm::PApp(a, b) | ProofTerm::Pair(a, b) => {
                a.collect_free_proofs(bound, acc);
                b.collect_free_proofs(bound, acc);
            }
            ProofTerm::ExElim { proof, pvar, body, .. } => {
                proof.collect_free_proofs(bound, acc);
                bound.push(pvar);
                body.collect_free_proofs(bound, acc);
                bound.pop();
            }
            ProofTerm::Ind { base, step, .. } => {
                base.collect_free_proofs(bound, acc);
                step.collect_free_proofs(bound, acc);
            }
            ProofTerm::AppPm { fun_eq, arg_eq, .. } => {
                fun_eq.collect_free_proofs(bound, acc);
                arg_eq.collect_free_proofs(bound, acc);
            }
        }
    }

    /// Every term or proof name occurring anywhere, bound or free.
    pub fn collect_names(&self, acc: &mut HashSet<Name>) {
        match self {
            ProofTerm::PVar(x) => {
                acc.insert(x.clone());
            }
            ProofTerm::Refl(_, t) => t.collect_names(acc),
            ProofTerm::Peel { lhs, rhs, eq, binder, motive, base, .. } => {
                lhs.collect_names(acc);
                rhs.collect_names(acc);
                eq.collect_names(acc);
                acc.insert(binder.clone());
                motive.collect_names(acc);
                base.collect_names(acc);
            }
            ProofTerm::Efq(p, f) => {
                p.collect_names(acc);
                f.collect_names(acc);
            }
            ProofTerm::PLam(x, f, p) => {
                acc.insert(x.clone());
                f.collect_names(acc);
                p.collect_names(acc);
            }
            ProofTerm::PApp(a, b) | ProofTerm::Pair(a, b) => {
                a.collect_names(acc);
                b.collect_names(acc);
            }
            ProofTerm::Proj(_, p) | ProofTerm::ExtIntro(_, _, p) => p.collect_names(acc),
            ProofTerm::TLam(x, _, p) => {
                acc.insert(x.clone());
                p.collect_names(acc);
            }
            ProofTerm::TApp(p, t) => {
                p.collect_names(acc);
                t.collect_names(acc);
            }
            ProofTerm::ExIntro(t, p, f) => {
                t.collect_names(acc);
                p.collect_names(acc);
                f.collect_names(acc);
            }
            ProofTerm::ExElim { proof, var, pvar, body } => {
                proof.collect_names(acc);
                acc.insert(var.clone());
                acc.insert(pvar.clone());
                body.collect_names(acc);
            }
            ProofTerm::Ind { binder, motive, base, step, scrut } => {
                acc.insert(binder.clone());
                motive.collect_names(acc);
                base.collect_names(acc);
                step.collect_names(acc);
                scrut.collect_names(acc);
            }
            ProofTerm::AppPm { fun_eq, lhs, rhs, arg_eq, .. } => {
                fun_eq.collect_names(acc);
                lhs.collect_names(acc);
                rhs.collect_names(acc);
                arg_eq.collect_names(acc);
            }
        }
    }

    /// Simultaneous capture-avoiding substitution of term and proof
    /// variables.
    pub fn subst(&self, terms: &TermSubst, proofs: &ProofSubst) -> ProofTerm {
        if terms.is_empty() && proofs.is_empty() {
            return self.clone();
        }
        let proof_range_terms: BTreeSet<Name> =
            proofs.values().flat_map(|p| p.free_term_vars()).collect();
        self.subst_inner(terms, proofs, &proof_range_terms)
    }

    fn subst_inner(&self, terms: &TermSubst, proofs: &ProofSubst, prt: &BTreeSet<Name>) -> ProofTerm {
        if terms.is_empty() && proofs.is_empty() {
            return self.clone();
        }
        let go = |p: &Arc<ProofTerm>| Arc::new(p.subst_inner(terms, proofs, prt));
        match self {
            ProofTerm::PVar(x) => proofs.get(x).cloned().unwrap_or_else(|| self.clone()),
            ProofTerm::Refl(s, t) => ProofTerm::Refl(s.clone(), t.subst(terms)),
            ProofTerm::Peel { sort, lhs, rhs, eq, binder, motive, base } => {
                let (binder, motive) = subst_motive(binder, motive, terms);
                ProofTerm::Peel {
                    sort: sort.clone(),
                    lhs: lhs.subst(terms),
                    rhs: rhs.subst(terms),
                    eq: go(eq),
                    binder,
                    motive,
                    base: go(base),
                }
            }
            ProofTerm::Efq(p, f) => ProofTerm::Efq(go(p), Arc::new(f.subst(terms))),
            ProofTerm::PLam(x, f, body) => {
                let hyp = Arc::new(f.subst(terms));
                let (x2, inner) = enter_proof_binder(x, proofs, || body.free_proof_vars());
                ProofTerm::PLam(x2, hyp, Arc::new(body.subst_inner(terms, &inner, prt)))
            }
            ProofTerm::PApp(a, b) => ProofTerm::PApp(go(a), go(b)),
            ProofTerm::Pair(a, b) => ProofTerm::Pair(go(a), go(b)),
            ProofTerm::Proj(i, p) => ProofTerm::Proj(*i, go(p)),
            ProofTerm::TLam(x, s, body) => {
                let (x2, inner) = enter_term_binder(x, terms, prt, || body.free_term_vars())
                    .unwrap_or_else(|| (x.clone(), TermSubst::new()));
                ProofTerm::TLam(x2, s.clone(), Arc::new(body.subst_inner(&inner, proofs, prt)))
            }
            ProofTerm::TApp(p, t) => ProofTerm::TApp(go(p), t.subst(terms)),
            ProofTerm::ExIntro(t, p, f) => {
                ProofTerm::ExIntro(t.subst(terms), go(p), Arc::new(f.subst(terms)))
            }
            ProofTerm::ExElim { proof, var, pvar, body } => {
                let proof = go(proof);
                let (pvar2, pinner) = enter_proof_binder(pvar, proofs, || body.free_proof_vars());
                let (var2, tinner) = match enter_term_binder(var, terms, prt, || body.free_term_vars()) {
                    None => (var.clone(), TermSubst::new()),
                    Some(pair) => pair,
                };
                ProofTerm::ExElim {
                    proof,
                    var: var2,
                    pvar: pvar2,
                    body: Arc::new(body.subst_inner(&tinner, &pinner, prt)),
                }
            }
            ProofTerm::Ind { binder, motive, base, step, scrut } => {
                let (binder, motive) = subst_motive(binder, motive, terms);
                ProofTerm::Ind {
                    binder,
                    motive,
                    base: go(base),
                    step: go(step),
                    scrut: scrut.subst(terms),
                }
            }
            ProofTerm::ExtIntro(a, b, p) => ProofTerm::ExtIntro(a.clone(), b.clone(), go(p)),
            ProofTerm::AppPm { dom, cod, fun_eq, lhs, rhs, arg_eq } => ProofTerm::AppPm {
                dom: dom.clone(),
                cod: cod.clone(),
                fun_eq: go(fun_eq),
                lhs: lhs.subst(terms),
                rhs: rhs.subst(terms),
                arg_eq: go(arg_eq),
            },
        }
    }

    /// `M[x := t]`
    pub fn subst_term1(&self, x: &str, t: &Term) -> ProofTerm {
        self.subst(&TermSubst::from([(x.to_string(), t.clone())]), &ProofSubst::new())
    }

    /// `M[ξ := N]`
    pub fn subst_proof1(&self, xi: &str, n: &ProofTerm) -> ProofTerm {
        self.subst(&TermSubst::new(), &ProofSubst::from([(xi.to_string(), n.clone())]))
    }
}

fn subst_motive(binder: &Name, motive: &Arc<Formula>, terms: &TermSubst) -> (Name, Arc<Formula>) {
    match enter_term_binder(binder, terms, &BTreeSet::new(), || motive.free_vars()) {
        None => (binder.clone(), motive.clone()),
        Some((b2, inner)) => (b2, Arc::new(motive.subst(&inner))),
    }
}

fn enter_proof_binder(
    x: &Name,
    proofs: &ProofSubst,
    body_fv: impl FnOnce() -> BTreeSet<Name>,
) -> (Name, ProofSubst) {
    let mut inner: ProofSubst = proofs
        .iter()
        .filter(|(k, _)| *k != x)
        .map(|(k, v)| (k.clone(), v.clone()))
        .collect();
    if inner.is_empty() {
        return (x.clone(), inner);
    }
    let captured: BTreeSet<Name> = inner.values().flat_map(|p| p.free_proof_vars()).collect();
    if !captured.contains(x) {
        return (x.clone(), inner);
    }
    let body = body_fv();
    let fresh = variant(x, |n| captured.contains(n) || body.contains(n) || inner.contains_key(n));
    inner.insert(x.clone(), ProofTerm::PVar(fresh.clone()));
    (fresh, inner)
}
