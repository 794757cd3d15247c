//! `Equiv¹_Φ : Φ¹ ⇒ Φ^pm` and `Equiv²_Φ : Φ^pm ⇒ Φ¹`, proved in LEHAω.

use crate::syntax::{rename, Formula, ProofSubst, ProofTerm, RenameTag, Term, TermSubst};

use super::{dup_formula, dup_term, eqpm, translate_formula, Gen};

fn v(x: &str) -> Term {
    Term::var(x)
}

fn pv(x: &str) -> ProofTerm {
    ProofTerm::pvar(x)
}

impl Gen {
    fn translate_fresh(&mut self, t: &Term) -> ProofTerm {
        let t = self.freshen_term(t);
        self.translate_term(&t)
    }

    /// `(Equiv¹_Φ, Equiv²_Φ)`.
    pub fn equiv(&mut self, phi: &Formula) -> (ProofTerm, ProofTerm) {
        let one = dup_formula(phi, 1);
        let pm = translate_formula(phi);
        match phi {
            Formula::Eq(s, t, u) => {
                let (t1, u1, u2) = (dup_term(t, 1), dup_term(u, 1), dup_term(u, 2));
                let h = self.name("h");
                let up = self.translate_fresh(u);
                let c = self.collaps_fwd(s, t1.clone(), u1.clone(), pv(&h));
                let fwd = ProofTerm::plam(h, one.clone(), self.trans_at(s, t1.clone(), u1.clone(), u2.clone(), c, up));

                let k = self.name("h");
                let up = self.translate_fresh(u);
                let back = self.sym_at(s, u1.clone(), u2.clone(), up);
                let t = self.trans_at(s, t1.clone(), u2, u1.clone(), pv(&k), back);
                let bwd = ProofTerm::plam(k, pm, self.collaps_bwd(s, t1, u1, t));
                (fwd, bwd)
            }
            Formula::Bot | Formula::Null(_) => {
                let (h, k) = (self.name("h"), self.name("h"));
                (ProofTerm::plam(h.clone(), one.clone(), pv(&h)), ProofTerm::plam(k.clone(), one, pv(&k)))
            }
            Formula::Imp(a, b) => {
                let (h, e) = (self.name("h"), self.name("e"));
                let (a1, a2) = self.equiv(a);
                let (b1, b2) = self.equiv(b);
                let fwd = ProofTerm::plam(
                    h.clone(),
                    one.clone(),
                    ProofTerm::plam(
                        e.clone(),
                        translate_formula(a),
                        ProofTerm::papp(b1, ProofTerm::papp(pv(&h), ProofTerm::papp(a2, pv(&e)))),
                    ),
                );
                let (k, d) = (self.name("h"), self.name("e"));
                let bwd = ProofTerm::plam(
                    k.clone(),
                    pm,
                    ProofTerm::plam(
                        d.clone(),
                        dup_formula(a, 1),
                        ProofTerm::papp(b2, ProofTerm::papp(pv(&k), ProofTerm::papp(a1, pv(&d)))),
                    ),
                );
                (fwd, bwd)
            }
            Formula::And(a, b) => {
                let (h, k) = (self.name("h"), self.name("h"));
                let (a1, a2) = self.equiv(a);
                let (b1, b2) = self.equiv(b);
                let fwd = ProofTerm::plam(
                    h.clone(),
                    one.clone(),
                    ProofTerm::pair(ProofTerm::papp(a1, ProofTerm::fst(pv(&h))), ProofTerm::papp(b1, ProofTerm::snd(pv(&h)))),
                );
                let bwd = ProofTerm::plam(
                    k.clone(),
                    pm,
                    ProofTerm::pair(ProofTerm::papp(a2, ProofTerm::fst(pv(&k))), ProofTerm::papp(b2, ProofTerm::snd(pv(&k)))),
                );
                (fwd, bwd)
            }
            Formula::Forall(x, s, body) => {
                let c = self.name(x);
                let body = body.subst1(x, &v(&c));
                let (c1, c2, cp) = (rename(&c, RenameTag::One), rename(&c, RenameTag::Two), rename(&c, RenameTag::Pm));
                let (e1, _) = self.equiv(&body);
                let h = self.name("h");
                let fwd = ProofTerm::plam(
                    h.clone(),
                    one.clone(),
                    ProofTerm::tlam(
                        c1.clone(),
                        s.clone(),
                        ProofTerm::tlam(
                            c2.clone(),
                            s.clone(),
                            ProofTerm::plam(
                                cp.clone(),
                                eqpm(s, &v(&c1), &v(&c2)),
                                ProofTerm::papp(e1, ProofTerm::tapp(pv(&h), v(&c1))),
                            ),
                        ),
                    ),
                );

                let (_, e2) = self.equiv(&body);
                let k = self.name("h");
                let diag = self.collaps_fwd(s, v(&c1), v(&c1), ProofTerm::Refl(s.clone(), v(&c1)));
                let e2 = e2.subst(
                    &TermSubst::from([(c2.clone(), v(&c1))]),
                    &ProofSubst::from([(cp, diag.clone())]),
                );
                let arg = ProofTerm::papp(ProofTerm::tapps(pv(&k), [v(&c1), v(&c1)]), diag);
                let bwd = ProofTerm::plam(k, pm, ProofTerm::tlam(c1, s.clone(), ProofTerm::papp(e2, arg)));
                (fwd, bwd)
            }
            Formula::Exists(x, s, body) => {
                let c = self.name(x);
                let body = body.subst1(x, &v(&c));
                let (c1, c2, cp) = (rename(&c, RenameTag::One), rename(&c, RenameTag::Two), rename(&c, RenameTag::Pm));

                let (e1, _) = self.equiv(&body);
                let (h, eta) = (self.name("h"), self.name("e"));
                let diag = self.collaps_fwd(s, v(&c1), v(&c1), ProofTerm::Refl(s.clone(), v(&c1)));
                let e1 = e1.subst(
                    &TermSubst::from([(c2.clone(), v(&c1))]),
                    &ProofSubst::from([(cp.clone(), diag.clone())]),
                );
                let outer = translate_formula(&Formula::exists(c.clone(), s.clone(), body.clone()));
                let inner_target = match &outer {
                    Formula::Exists(y, _, inner) => inner.instantiate(y, &v(&c1)),
                    _ => unreachable!("translation of an existential is existential"),
                };
                let pair = ProofTerm::pair(diag, ProofTerm::papp(e1, pv(&eta)));
                let intro = ProofTerm::ex_intro(v(&c1), ProofTerm::ex_intro(v(&c1), pair, inner_target), outer);
                let fwd = ProofTerm::plam(h.clone(), one.clone(), ProofTerm::ex_elim(pv(&h), c1.clone(), eta, intro));

                let (_, e2) = self.equiv(&body);
                let (k, eta, chi) = (self.name("h"), self.name("e"), self.name("e"));
                let e2 = e2.subst(&TermSubst::new(), &ProofSubst::from([(cp, ProofTerm::fst(pv(&chi)))]));
                let intro = ProofTerm::ex_intro(v(&c1), ProofTerm::papp(e2, ProofTerm::snd(pv(&chi))), one);
                let bwd = ProofTerm::plam(
                    k.clone(),
                    pm,
                    ProofTerm::ex_elim(pv(&k), c1, eta.clone(), ProofTerm::ex_elim(pv(&eta), c2, chi, intro)),
                );
                (fwd, bwd)
            }
        }
    }
}
