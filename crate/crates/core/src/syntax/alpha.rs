//! Equality up to renaming of bound variables.
//!
//! Both sides are walked in lockstep with a stack of binder pairs; a
//! variable is resolved to its de Bruijn level on each side, so the
//! comparison is exactly equality of the nameless forms.

use super::{Formula, Name, ProofTerm, Term};

#[derive(Default)]
struct Scope<'a> {
    pairs: Vec<(&'a str, &'a str)>,
}

impl<'a> Scope<'a> {
    fn same(&self, a: &str, b: &str) -> bool {
        let left = self.pairs.iter().rposition(|(l, _)| *l == a);
        let right = self.pairs.iter().rposition(|(_, r)| *r == b);
        match (left, right) {
            (None, None) => a == b,
            (Some(i), Some(j)) => i == j,
            _ => false,
        }
    }

    fn with<R>(&mut self, a: &'a Name, b: &'a Name, f: impl FnOnce(&mut Self) -> R) -> R {
        self.pairs.push((a, b));
        let r = f(self);
        self.pairs.pop();
        r
    }
}

fn term<'a>(s: &mut Scope<'a>, a: &'a Term, b: &'a Term) -> bool {
    match (a, b) {
        (Term::Var(x), Term::Var(y)) => s.same(x, y),
        (Term::Lam(x, sx, bx), Term::Lam(y, sy, by)) => sx == sy && s.with(x, y, |s| term(s, bx, by)),
        (Term::App(f, a1), Term::App(g, a2)) => term(s, f, g) && term(s, a1, a2),
        (Term::Zero, Term::Zero) => true,
        (Term::Succ(x), Term::Succ(y)) => term(s, x, y),
        (Term::Rec(s1, b1, t1, n1), Term::Rec(s2, b2, t2, n2)) => {
            s1 == s2 && term(s, b1, b2) && term(s, t1, t2) && term(s, n1, n2)
        }
        _ => false,
    }
}

fn formula<'a>(s: &mut Scope<'a>, a: &'a Formula, b: &'a Formula) -> bool {
    match (a, b) {
        (Formula::Eq(s1, l1, r1), Formula::Eq(s2, l2, r2)) => {
            s1 == s2 && term(s, l1, l2) && term(s, r1, r2)
        }
        (Formula::Bot, Formula::Bot) => true,
        (Formula::Null(x), Formula::Null(y)) => term(s, x, y),
        (Formula::Imp(a1, b1), Formula::Imp(a2, b2)) | (Formula::And(a1, b1), Formula::And(a2, b2)) => {
            formula(s, a1, a2) && formula(s, b1, b2)
        }
        (Formula::Forall(x, sx, bx), Formula::Forall(y, sy, by))
        | (Formula::Exists(x, sx, bx), Formula::Exists(y, sy, by)) => {
            sx == sy && s.with(x, y, |s| formula(s, bx, by))
        }
        _ => false,
    }
}

/// Term-variable and proof-variable scopes are kept apart.
fn proof<'a>(ts: &mut Scope<'a>, ps: &mut Scope<'a>, a: &'a ProofTerm, b: &'a ProofTerm) -> bool {
    use ProofTerm as P;
    match (a, b) {
        (P::PVar(x), P::PVar(y)) => ps.same(x, y),
        (P::Refl(s1, t1), P::Refl(s2, t2)) => s1 == s2 && term(ts, t1, t2),
        (
            P::Peel { sort: s1, lhs: l1, rhs: r1, eq: e1, binder: x1, motive: m1, base: b1 },
            P::Peel { sort: s2, lhs: l2, rhs: r2, eq: e2, binder: x2, motive: m2, base: b2 },
        ) => {
            s1 == s2
                && term(ts, l1, l2)
                && term(ts, r1, r2)
                && proof(ts, ps, e1, e2)
                && ts.with(x1, x2, |ts| formula(ts, m1, m2))
                && proof(ts, ps, b1, b2)
        }
        (P::Efq(p1, f1), P::Efq(p2, f2)) => proof(ts, ps, p1, p2) && formula(ts, f1, f2),
        (P::PLam(x, f1, b1), P::PLam(y, f2, b2)) => {
            formula(ts, f1, f2) && ps.with(x, y, |ps| proof(ts, ps, b1, b2))
        }
        (P::PApp(a1, b1), P::PApp(a2, b2)) | (P::Pair(a1, b1), P::Pair(a2, b2)) => {
            proof(ts, ps, a1, a2) && proof(ts, ps, b1, b2)
        }
        (P::Proj(i, p1), P::Proj(j, p2)) => i == j && proof(ts, ps, p1, p2),
        (P::TLam(x, s1, b1), P::TLam(y, s2, b2)) => {
            s1 == s2 && ts.with(x, y, |ts| proof(ts, ps, b1, b2))
        }
        (P::TApp(p1, t1), P::TApp(p2, t2)) => proof(ts, ps, p1, p2) && term(ts, t1, t2),
        (P::ExIntro(t1, p1, f1), P::ExIntro(t2, p2, f2)) => {
            term(ts, t1, t2) && proof(ts, ps, p1, p2) && formula(ts, f1, f2)
        }
        (
            P::ExElim { proof: m1, var: x1, pvar: h1, body: b1 },
            P::ExElim { proof: m2, var: x2, pvar: h2, body: b2 },
        ) => {
            proof(ts, ps, m1, m2)
                && ts.with(x1, x2, |ts| ps.with(h1, h2, |ps| proof(ts, ps, b1, b2)))
        }
        (
            P::Ind { binder: x1, motive: m1, base: b1, step: st1, scrut: t1 },
            P::Ind { binder: x2, motive: m2, base: b2, step: st2, scrut: t2 },
        ) => {
            ts.with(x1, x2, |ts| formula(ts, m1, m2))
                && proof(ts, ps, b1, b2)
                && proof(ts, ps, st1, st2)
                && term(ts, t1, t2)
        }
        (P::ExtIntro(d1, c1, p1), P::ExtIntro(d2, c2, p2)) => {
            d1 == d2 && c1 == c2 && proof(ts, ps, p1, p2)
        }
        (
            P::AppPm { dom: d1, cod: c1, fun_eq: f1, lhs: l1, rhs: r1, arg_eq: a1 },
            P::AppPm { dom: d2, cod: c2, fun_eq: f2, lhs: l2, rhs: r2, arg_eq: a2 },
        ) => {
            d1 == d2
                && c1 == c2
                && proof(ts, ps, f1, f2)
                && term(ts, l1, l2)
                && term(ts, r1, r2)
                && proof(ts, ps, a1, a2)
        }
        _ => false,
    }
}

pub fn alpha_eq_term(a: &Term, b: &Term) -> bool {
    term(&mut Scope::default(), a, b)
}

pub fn alpha_eq_formula(a: &Formula, b: &Formula) -> bool {
    formula(&mut Scope::default(), a, b)
}

pub fn alpha_eq_proof(a: &ProofTerm, b: &ProofTerm) -> bool {
    proof(&mut Scope::default(), &mut Scope::default(), a, b)
}

/// Uniform entry point over the three syntactic categories.
pub trait AlphaEq {
    fn alpha_eq(&self, other: &Self) -> bool;
}

impl AlphaEq for Term {
    fn alpha_eq(&self, other: &Self) -> bool {
        alpha_eq_term(self, other)
    }
}

impl AlphaEq for Formula {
    fn alpha_eq(&self, other: &Self) -> bool {
        alpha_eq_formula(self, other)
    }
}

impl AlphaEq for ProofTerm {
    fn alpha_eq(&self, other: &Self) -> bool {
        alpha_eq_proof(self, other)
    }
}
