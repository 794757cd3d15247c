//! Binder freshening: every term-level binder in the source gets a name
//! used nowhere else, so copies `x#1`, `x#2`, `x#pm` never shadow.

use crate::syntax::{Context, Formula, Name, ProofTerm, Term};

use super::Gen;

impl Gen {
    fn pick(&mut self, x: &Name) -> Name {
        if self.fresh.is_used(x) {
            let y = self.fresh.name(x);
            self.note(format!("binder `{x}` renamed to `{y}`"));
            y
        } else {
            self.fresh.reserve(x.clone());
            x.clone()
        }
    }

    pub(crate) fn freshen_term(&mut self, t: &Term) -> Term {
        match t {
            Term::Var(_) | Term::Zero => t.clone(),
            Term::Lam(x, s, b) => {
                let y = self.pick(x);
                let b = if &y == x { (**b).clone() } else { b.subst1(x, &Term::Var(y.clone())) };
                Term::lam(y, s.clone(), self.freshen_term(&b))
            }
            Term::App(f, a) => Term::app(self.freshen_term(f), self.freshen_term(a)),
            Term::Succ(a) => Term::succ(self.freshen_term(a)),
            Term::Rec(s, a, b, c) => {
                Term::rec(s.clone(), self.freshen_term(a), self.freshen_term(b), self.freshen_term(c))
            }
        }
    }

    fn freshen_scope(&mut self, x: &Name, body: &Formula) -> (Name, Formula) {
        let y = self.pick(x);
        let body = if &y == x { body.clone() } else { body.subst1(x, &Term::Var(y.clone())) };
        let body = self.freshen_formula(&body);
        (y, body)
    }

    pub(crate) fn freshen_formula(&mut self, phi: &Formula) -> Formula {
        match phi {
            Formula::Eq(s, a, b) => Formula::Eq(s.clone(), self.freshen_term(a), self.freshen_term(b)),
            Formula::Bot => Formula::Bot,
            Formula::Null(t) => Formula::Null(self.freshen_term(t)),
            Formula::Imp(a, b) => Formula::imp(self.freshen_formula(a), self.freshen_formula(b)),
            Formula::And(a, b) => Formula::and(self.freshen_formula(a), self.freshen_formula(b)),
            Formula::Forall(x, s, b) => {
                let (y, b) = self.freshen_scope(x, b);
                Formula::forall(y, s.clone(), b)
            }
            Formula::Exists(x, s, b) => {
                let (y, b) = self.freshen_scope(x, b);
                Formula::exists(y, s.clone(), b)
            }
        }
    }

    fn freshen_binder_proof(&mut self, x: &Name, body: &ProofTerm) -> (Name, ProofTerm) {
        let y = self.pick(x);
        let body = if &y == x { body.clone() } else { body.subst_term1(x, &Term::Var(y.clone())) };
        (y, self.freshen_proof(&body))
    }

    pub(crate) fn freshen_proof(&mut self, p: &ProofTerm) -> ProofTerm {
        match p {
            ProofTerm::PVar(_) => p.clone(),
            ProofTerm::Refl(s, t) => ProofTerm::Refl(s.clone(), self.freshen_term(t)),
            ProofTerm::Peel { sort, lhs, rhs, eq, binder, motive, base } => {
                let lhs = self.freshen_term(lhs);
                let rhs = self.freshen_term(rhs);
                let eq = self.freshen_proof(eq);
                let (binder, motive) = self.freshen_scope(binder, motive);
                let base = self.freshen_proof(base);
                ProofTerm::peel(sort.clone(), lhs, rhs, eq, binder, motive, base)
            }
            ProofTerm::Efq(m, phi) => {
                let m = self.freshen_proof(m);
                ProofTerm::efq(m, self.freshen_formula(phi))
            }
            ProofTerm::PLam(h, phi, body) => {
                let phi = self.freshen_formula(phi);
                ProofTerm::plam(h.clone(), phi, self.freshen_proof(body))
            }
            ProofTerm::PApp(a, b) => {
                let a = self.freshen_proof(a);
                ProofTerm::papp(a, self.freshen_proof(b))
            }
            ProofTerm::Pair(a, b) => {
                let a = self.freshen_proof(a);
                ProofTerm::pair(a, self.freshen_proof(b))
            }
            ProofTerm::Proj(side, m) => ProofTerm::Proj(*side, self.freshen_proof(m).into()),
            ProofTerm::TLam(x, s, body) => {
                let (y, body) = self.freshen_binder_proof(x, body);
                ProofTerm::tlam(y, s.clone(), body)
            }
            ProofTerm::TApp(m, t) => {
                let m = self.freshen_proof(m);
                ProofTerm::tapp(m, self.freshen_term(t))
            }
            ProofTerm::ExIntro(t, m, phi) => {
                let t = self.freshen_term(t);
                let m = self.freshen_proof(m);
                ProofTerm::ex_intro(t, m, self.freshen_formula(phi))
            }
            ProofTerm::ExElim { proof, var, pvar, body } => {
                let proof = self.freshen_proof(proof);
                let (y, body) = self.freshen_binder_proof(var, body);
                ProofTerm::ex_elim(proof, y, pvar.clone(), body)
            }
            ProofTerm::Ind { binder, motive, base, step, scrut } => {
                let (binder, motive) = self.freshen_scope(binder, motive);
                let base = self.freshen_proof(base);
                let step = self.freshen_proof(step);
                ProofTerm::ind(binder, motive, base, step, self.freshen_term(scrut))
            }
            ProofTerm::ExtIntro(d, c, m) => ProofTerm::ext(d.clone(), c.clone(), self.freshen_proof(m)),
            ProofTerm::AppPm { dom, cod, fun_eq, lhs, rhs, arg_eq } => {
                let fun_eq = self.freshen_proof(fun_eq);
                let lhs = self.freshen_term(lhs);
                let rhs = self.freshen_term(rhs);
                let arg_eq = self.freshen_proof(arg_eq);
                ProofTerm::app_pm(dom.clone(), cod.clone(), fun_eq, lhs, rhs, arg_eq)
            }
        }
    }

    pub(crate) fn freshen_judgment(
        &mut self,
        ctx: &Context,
        goal: &Formula,
        proof: &ProofTerm,
    ) -> (Context, Formula, ProofTerm) {
        let ctx = Context(ctx.iter().map(|(h, phi)| (h.clone(), self.freshen_formula(phi))).collect());
        let goal = self.freshen_formula(goal);
        let proof = self.freshen_proof(proof);
        (ctx, goal, proof)
    }
}
