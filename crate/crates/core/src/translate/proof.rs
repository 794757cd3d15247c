//! `M^pm`, clause by clause.

use crate::syntax::{rename, Formula, Logic, ProofSubst, ProofTerm, RenameTag, Sort, Term, TermSubst};

use super::{dup_term, eqpm, translate_formula, Gen, TranslateError};

fn v(x: &str) -> Term {
    Term::var(x)
}

fn pv(x: &str) -> ProofTerm {
    ProofTerm::pvar(x)
}

fn copies(x: &str) -> (String, String, String) {
    (rename(x, RenameTag::One), rename(x, RenameTag::Two), rename(x, RenameTag::Pm))
}

/// `Φ^pm[x¹ := a][x² := b]`
fn at_pair(phi_pm: &Formula, x: &str, a: Term, b: Term) -> Formula {
    let (x1, x2, _) = copies(x);
    phi_pm.subst(&TermSubst::from([(x1, a), (x2, b)]))
}

impl Gen {
    /// `M^pm` for a proof the kernel accepted, with binders already
    /// freshened.
    pub(crate) fn translate_proof(&mut self, logic: Logic, p: &ProofTerm) -> Result<ProofTerm, TranslateError> {
        Ok(match p {
            ProofTerm::PVar(h) => pv(h),
            ProofTerm::Refl(_, t) => self.translate_term(t),
            ProofTerm::Peel { sort, lhs, rhs, eq, binder, motive, base } => {
                let eq = self.translate_proof(logic, eq)?;
                let base = self.translate_proof(logic, base)?;
                if logic == Logic::Lhaw {
                    if !sort.is_nat() {
                        return Err(TranslateError::IllFormed(format!("peel at sort {sort} in LHAω")));
                    }
                    self.note("peel: double peel at N");
                    self.peel_nat(lhs, rhs, eq, binder, motive, base)
                } else {
                    self.note(format!("peel: Elim at {sort}"));
                    self.peel_elim(sort, lhs, rhs, eq, binder, motive, base)
                }
            }
            ProofTerm::Efq(m, phi) => ProofTerm::efq(self.translate_proof(logic, m)?, translate_formula(phi)),
            ProofTerm::PLam(h, phi, body) => {
                ProofTerm::plam(h.clone(), translate_formula(phi), self.translate_proof(logic, body)?)
            }
            ProofTerm::PApp(a, b) => {
                let a = self.translate_proof(logic, a)?;
                ProofTerm::papp(a, self.translate_proof(logic, b)?)
            }
            ProofTerm::Pair(a, b) => {
                let a = self.translate_proof(logic, a)?;
                ProofTerm::pair(a, self.translate_proof(logic, b)?)
            }
            ProofTerm::Proj(side, m) => ProofTerm::Proj(*side, self.translate_proof(logic, m)?.into()),
            ProofTerm::TLam(x, s, body) => {
                let (x1, x2, xp) = copies(x);
                let rel = eqpm(s, &v(&x1), &v(&x2));
                let body = self.translate_proof(logic, body)?;
                ProofTerm::tlam(x1, s.clone(), ProofTerm::tlam(x2, s.clone(), ProofTerm::plam(xp, rel, body)))
            }
            ProofTerm::TApp(m, t) => {
                let m = self.translate_proof(logic, m)?;
                let tp = self.translate_term(t);
                ProofTerm::papp(ProofTerm::tapps(m, [dup_term(t, 1), dup_term(t, 2)]), tp)
            }
            ProofTerm::ExIntro(t, m, target) => {
                let outer = translate_formula(target);
                let inner = match &outer {
                    Formula::Exists(y, _, inner) => inner.instantiate(y, &dup_term(t, 1)),
                    _ => return Err(TranslateError::IllFormed(format!("witness target `{target}` is not existential"))),
                };
                let tp = self.translate_term(t);
                let m = self.translate_proof(logic, m)?;
                ProofTerm::ex_intro(
                    dup_term(t, 1),
                    ProofTerm::ex_intro(dup_term(t, 2), ProofTerm::pair(tp, m), inner),
                    outer,
                )
            }
            ProofTerm::ExElim { proof, var, pvar, body } => {
                let (x1, x2, xp) = copies(var);
                let m = self.translate_proof(logic, proof)?;
                let body = self.translate_proof(logic, body)?;
                let (eta, chi) = (self.name("e"), self.name("e"));
                let body = body.subst(
                    &TermSubst::new(),
                    &ProofSubst::from([(xp, ProofTerm::fst(pv(&chi))), (pvar.clone(), ProofTerm::snd(pv(&chi)))]),
                );
                ProofTerm::ex_elim(m, x1, eta.clone(), ProofTerm::ex_elim(pv(&eta), x2, chi, body))
            }
            ProofTerm::Ind { binder, motive, base, step, scrut } => {
                let base = self.translate_proof(logic, base)?;
                let step = self.translate_proof(logic, step)?;
                self.note("ind: paired induction");
                self.induction(binder, motive, base, step, scrut)
            }
            ProofTerm::ExtIntro(d, _, m) => {
                let m = self.translate_proof(logic, m)?;
                let x = self.name("x");
                let (x1, x2, xp) = copies(&x);
                let rel = eqpm(d, &v(&x1), &v(&x2));
                let body = ProofTerm::papp(ProofTerm::tapps(m, [v(&x1), v(&x2)]), pv(&xp));
                self.note("ext: eta-expanded premise");
                ProofTerm::tlam(x1, d.clone(), ProofTerm::tlam(x2, d.clone(), ProofTerm::plam(xp, rel, body)))
            }
            ProofTerm::AppPm { fun_eq, lhs, rhs, arg_eq, .. } => {
                let f = self.translate_proof(logic, fun_eq)?;
                let a = self.translate_proof(logic, arg_eq)?;
                self.note("apppm: instantiated relation");
                ProofTerm::papp(ProofTerm::tapps(f, [dup_term(lhs, 1), dup_term(rhs, 2)]), a)
            }
        })
    }

    fn peel_nat(
        &mut self,
        t: &Term,
        u: &Term,
        eq: ProofTerm,
        x: &str,
        motive: &Formula,
        base: ProofTerm,
    ) -> ProofTerm {
        let (t1, t2, u1, u2) = (dup_term(t, 1), dup_term(t, 2), dup_term(u, 1), dup_term(u, 2));
        let (x1, x2, _) = copies(x);
        let phi = translate_formula(motive);
        let up = self.translate_term(u);
        let tp = self.translate_term(t);
        let back = self.sym_at(&Sort::Nat, u1.clone(), u2.clone(), up);
        let m1 = self.trans_at(&Sort::Nat, t1.clone(), u2.clone(), u1.clone(), eq.clone(), back);
        let flip = self.sym_at(&Sort::Nat, t1.clone(), t2.clone(), tp);
        let m2 = self.trans_at(&Sort::Nat, t2.clone(), t1.clone(), u2.clone(), flip, eq);
        let inner = ProofTerm::peel(
            Sort::Nat,
            t1,
            u1.clone(),
            m1,
            x1.clone(),
            phi.subst1(&x2, &t2),
            base,
        );
        ProofTerm::peel(Sort::Nat, t2, u2, m2, x2.clone(), phi.subst1(&x1, &u1), inner)
    }

    #[allow(clippy::too_many_arguments)]
    fn peel_elim(
        &mut self,
        s: &Sort,
        t: &Term,
        u: &Term,
        eq: ProofTerm,
        x: &str,
        motive: &Formula,
        base: ProofTerm,
    ) -> ProofTerm {
        let (t1, t2, u1, u2) = (dup_term(t, 1), dup_term(t, 2), dup_term(u, 1), dup_term(u, 2));
        let up = self.translate_term(u);
        let tp = self.translate_term(t);
        let back = self.sym_at(s, u1.clone(), u2.clone(), up);
        let m1 = self.trans_at(s, t1.clone(), u2.clone(), u1.clone(), eq.clone(), back);
        let flip = self.sym_at(s, t1.clone(), t2.clone(), tp);
        let m2 = self.trans_at(s, t2.clone(), t1.clone(), u2.clone(), flip, eq);
        let elim = self.elim_formula(x, s, motive);
        ProofTerm::papps(ProofTerm::tapps(elim, [t1, t2, u1, u2]), [m1, m2, base])
    }

    fn induction(&mut self, x: &str, motive: &Formula, base: ProofTerm, step: ProofTerm, t: &Term) -> ProofTerm {
        let phi = translate_formula(motive);
        let (n, m) = (self.name("n"), self.name("m"));
        let psi = |n: &Term, m: &str| {
            Formula::forall(
                m.to_string(),
                Sort::Nat,
                Formula::imp(Formula::eq_nat(n.clone(), v(m)), at_pair(&phi, x, n.clone(), v(m))),
            )
        };
        let ind_motive = psi(&v(&n), &m);

        let (bm, bh, bz) = (self.name("m"), self.name("h"), self.name("z"));
        let base_case = ProofTerm::tlam(
            bm.clone(),
            Sort::Nat,
            ProofTerm::plam(
                bh.clone(),
                Formula::eq_nat(Term::Zero, v(&bm)),
                ProofTerm::peel(
                    Sort::Nat,
                    Term::Zero,
                    v(&bm),
                    pv(&bh),
                    bz.clone(),
                    at_pair(&phi, x, Term::Zero, v(&bz)),
                    base,
                ),
            ),
        );

        let (sn, se, sm, sh, sz) = (self.name("n"), self.name("e"), self.name("m"), self.name("h"), self.name("z"));
        let vn = v(&sn);
        let ih = ProofTerm::papp(ProofTerm::tapp(pv(&se), vn.clone()), ProofTerm::Refl(Sort::Nat, vn.clone()));
        let next = ProofTerm::papps(
            ProofTerm::tapps(step, [vn.clone(), vn.clone()]),
            [ProofTerm::Refl(Sort::Nat, vn.clone()), ih],
        );
        let sn_term = Term::succ(vn.clone());
        let peel = ProofTerm::peel(
            Sort::Nat,
            sn_term.clone(),
            v(&sm),
            pv(&sh),
            sz.clone(),
            at_pair(&phi, x, sn_term.clone(), v(&sz)),
            next,
        );
        let ih_name = self.name("m");
        let step_case = ProofTerm::tlam(
            sn.clone(),
            Sort::Nat,
            ProofTerm::plam(
                se,
                psi(&vn, &ih_name),
                ProofTerm::tlam(
                    sm.clone(),
                    Sort::Nat,
                    ProofTerm::plam(sh, Formula::eq_nat(sn_term, v(&sm)), peel),
                ),
            ),
        );

        let ind = ProofTerm::ind(n, ind_motive, base_case, step_case, dup_term(t, 1));
        let tp = self.translate_term(t);
        ProofTerm::papp(ProofTerm::tapp(ind, dup_term(t, 2)), tp)
    }
}
