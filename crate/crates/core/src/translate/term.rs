//! `t^pm` and `Elim^i_{ẑ.t}`.

use crate::syntax::{rename, Formula, ProofSubst, ProofTerm, RenameTag, Sort, Term, TermSubst};

use super::{dup_term, eqpm, Gen};

fn v(x: &str) -> Term {
    Term::var(x)
}

fn copies(x: &str) -> (String, String, String) {
    (rename(x, RenameTag::One), rename(x, RenameTag::Two), rename(x, RenameTag::Pm))
}

/// `∀z¹∀z² (z¹ ≈_σ z² ⇒ t^i[z^i := z¹] ≈_τ t^i[z^i := z²])`
pub(super) fn elim_term_type(i: u8, z: &str, zs: &Sort, t: &Term, ts: &Sort) -> Formula {
    let (z1, z2, _) = copies(z);
    let zi = rename(z, RenameTag::copy(i));
    let ti = dup_term(t, i);
    let at = |w: &str| ti.subst1(&zi, &v(w));
    Formula::forall(
        z1.clone(),
        zs.clone(),
        Formula::forall(
            z2.clone(),
            zs.clone(),
            Formula::imp(eqpm(zs, &v(&z1), &v(&z2)), eqpm(ts, &at(&z1), &at(&z2))),
        ),
    )
}

impl Gen {
    /// `t^pm`. Binders of `t` must be distinct from each other and from
    /// the names this generator hands out.
    pub fn translate_term(&mut self, t: &Term) -> ProofTerm {
        match t {
            Term::Var(x) => ProofTerm::pvar(rename(x, RenameTag::Pm)),
            Term::Lam(x, s, body) => {
                let (x1, x2, xp) = copies(x);
                let rel = eqpm(s, &v(&x1), &v(&x2));
                let body = self.translate_term(body);
                ProofTerm::tlam(x1, s.clone(), ProofTerm::tlam(x2, s.clone(), ProofTerm::plam(xp, rel, body)))
            }
            Term::App(f, a) => {
                let fp = self.translate_term(f);
                let ap = self.translate_term(a);
                ProofTerm::papp(ProofTerm::tapps(fp, [dup_term(a, 1), dup_term(a, 2)]), ap)
            }
            Term::Zero => ProofTerm::Refl(Sort::Nat, Term::Zero),
            Term::Succ(a) => {
                let (a1, a2) = (dup_term(a, 1), dup_term(a, 2));
                let ap = self.translate_term(a);
                let w = self.name("w");
                let motive = Formula::eq_nat(Term::succ(a1.clone()), Term::succ(v(&w)));
                ProofTerm::peel(Sort::Nat, a1.clone(), a2, ap, w, motive, ProofTerm::Refl(Sort::Nat, Term::succ(a1)))
            }
            Term::Rec(s, base, step, scrut) => self.translate_rec(s, base, step, scrut),
        }
    }

    fn translate_rec(&mut self, s: &Sort, base: &Term, step: &Term, scrut: &Term) -> ProofTerm {
        let (t1, t2) = (dup_term(base, 1), dup_term(base, 2));
        let (u1, u2) = (dup_term(step, 1), dup_term(step, 2));
        let rec1 = |n: Term| Term::rec(s.clone(), t1.clone(), u1.clone(), n);
        let rec2 = |n: Term| Term::rec(s.clone(), t2.clone(), u2.clone(), n);
        let (n, m) = (self.name("n"), self.name("m"));
        let psi = |n: &Term, gen: &mut Gen| {
            let m = gen.name("m");
            Formula::forall(
                m.clone(),
                Sort::Nat,
                Formula::imp(Formula::eq_nat(n.clone(), v(&m)), eqpm(s, &rec1(n.clone()), &rec2(v(&m)))),
            )
        };
        let motive = Formula::forall(
            m.clone(),
            Sort::Nat,
            Formula::imp(Formula::eq_nat(v(&n), v(&m)), eqpm(s, &rec1(v(&n)), &rec2(v(&m)))),
        );

        let tp = self.translate_term(base);
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
                    ProofTerm::pvar(&bh),
                    bz.clone(),
                    eqpm(s, &t1, &rec2(v(&bz))),
                    tp,
                ),
            ),
        );

        let up = self.translate_term(step);
        let (sn, se, sm, sh, sz) = (self.name("n"), self.name("e"), self.name("m"), self.name("h"), self.name("z"));
        let vn = v(&sn);
        let ih = ProofTerm::papp(ProofTerm::tapp(ProofTerm::pvar(&se), vn.clone()), ProofTerm::Refl(Sort::Nat, vn.clone()));
        let applied = ProofTerm::papp(ProofTerm::tapps(up, [rec1(vn.clone()), rec2(vn.clone())]), ih);
        let applied = ProofTerm::papp(ProofTerm::tapps(applied, [vn.clone(), vn.clone()]), ProofTerm::Refl(Sort::Nat, vn.clone()));
        let target = eqpm(s, &Term::apps(u1.clone(), [rec1(vn.clone()), vn.clone()]), &rec2(v(&sz)));
        let peel = ProofTerm::peel(
            Sort::Nat,
            Term::succ(vn.clone()),
            v(&sm),
            ProofTerm::pvar(&sh),
            sz,
            target,
            applied,
        );
        let ih_formula = psi(&vn, self);
        let step_case = ProofTerm::tlam(
            sn.clone(),
            Sort::Nat,
            ProofTerm::plam(
                se,
                ih_formula,
                ProofTerm::tlam(
                    sm.clone(),
                    Sort::Nat,
                    ProofTerm::plam(sh, Formula::eq_nat(Term::succ(vn.clone()), v(&sm)), peel),
                ),
            ),
        );

        let ind = ProofTerm::ind(n, motive, base_case, step_case, dup_term(scrut, 1));
        let vp = self.translate_term(scrut);
        ProofTerm::papp(ProofTerm::tapp(ind, dup_term(scrut, 2)), vp)
    }

    /// `Elim^i_{ẑ.t}`, closed over `z`; `t : τ`.
    pub fn elim_term(&mut self, i: u8, z: &str, zs: &Sort, t: &Term, ts: &Sort) -> ProofTerm {
        let w = self.name(z);
        let tw = self.freshen_term(&t.subst1(z, &v(&w)));
        let (w1, w2, wp) = copies(&w);
        let p0 = self.translate_term(&tw);
        let (t1, t2) = (dup_term(&tw, 1), dup_term(&tw, 2));
        let body = if i == 1 {
            let t1s = t1.subst1(&w1, &v(&w2));
            let refl = self.refl_at(zs, v(&w1), v(&w2), ProofTerm::pvar(&wp));
            let p0s = p0.subst(
                &TermSubst::from([(w1.clone(), v(&w2))]),
                &ProofSubst::from([(wp.clone(), ProofTerm::snd(refl))]),
            );
            let sym = self.sym_at(ts, t1s.clone(), t2.clone(), p0s);
            self.trans_at(ts, t1, t2, t1s, p0, sym)
        } else {
            let t2s = t2.subst1(&w2, &v(&w1));
            let refl = self.refl_at(zs, v(&w1), v(&w2), ProofTerm::pvar(&wp));
            let p0s = p0.subst(
                &TermSubst::from([(w2.clone(), v(&w1))]),
                &ProofSubst::from([(wp.clone(), ProofTerm::fst(refl))]),
            );
            let sym = self.sym_at(ts, t1.clone(), t2s.clone(), p0s);
            self.trans_at(ts, t2s, t1, t2, sym, p0)
        };
        let rel = eqpm(zs, &v(&w1), &v(&w2));
        ProofTerm::tlam(w1, zs.clone(), ProofTerm::tlam(w2, zs.clone(), ProofTerm::plam(wp, rel, body)))
    }

    /// `Elim^i_{ẑ.t} a b p`
    pub(crate) fn elim_term_at(
        &mut self,
        i: u8,
        z: &str,
        zs: &Sort,
        t: &Term,
        ts: &Sort,
        a: Term,
        b: Term,
        p: ProofTerm,
    ) -> ProofTerm {
        ProofTerm::papp(ProofTerm::tapps(self.elim_term(i, z, zs, t, ts), [a, b]), p)
    }
}
