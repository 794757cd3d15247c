//! `Elim_{x̂.Φ}`: transport of `Φ^pm` along related pairs.

use crate::syntax::{rename, Formula, ProofTerm, RenameTag, Sort, Term, TermSubst};

use super::{dup_term, eqpm, translate_formula, Gen};

fn v(x: &str) -> Term {
    Term::var(x)
}

fn pv(x: &str) -> ProofTerm {
    ProofTerm::pvar(x)
}

/// Endpoints of one `Elim` instance: `a¹ a² b¹ b²` and the hypotheses
/// `h¹ : a¹ ≈ b¹`, `h² : a² ≈ b²`.
struct Ends {
    var: String,
    sort: Sort,
    a1: String,
    a2: String,
    b1: String,
    b2: String,
    h1: String,
    h2: String,
}

impl Ends {
    fn to_b(&self) -> TermSubst {
        TermSubst::from([(self.a1.clone(), v(&self.b1)), (self.a2.clone(), v(&self.b2))])
    }
}

impl Gen {
    /// `∀a¹∀a²∀b¹∀b² (a¹ ≈ b¹ ⇒ a² ≈ b² ⇒ Φ^pm[x := a] ⇒ Φ^pm[x := b])`
    pub fn elim_formula_type(&mut self, x: &str, s: &Sort, phi: &Formula) -> Formula {
        let (va, vb) = (self.name(x), self.name(x));
        let pa = translate_formula(&phi.subst1(x, &v(&va)));
        let (a1, a2) = (rename(&va, RenameTag::One), rename(&va, RenameTag::Two));
        let (b1, b2) = (rename(&vb, RenameTag::One), rename(&vb, RenameTag::Two));
        let pb = pa.subst(&TermSubst::from([(a1.clone(), v(&b1)), (a2.clone(), v(&b2))]));
        let body = Formula::imps([eqpm(s, &v(&a1), &v(&b1)), eqpm(s, &v(&a2), &v(&b2)), pa], pb);
        [b2, b1, a2, a1].into_iter().fold(body, |acc, y| Formula::forall(y, s.clone(), acc))
    }

    /// Closed `Elim_{x̂.Φ}`.
    pub fn elim_formula(&mut self, x: &str, s: &Sort, phi: &Formula) -> ProofTerm {
        let (va, vb) = (self.name(x), self.name(x));
        let phi = self.freshen_formula(&phi.subst1(x, &v(&va)));
        let ends = Ends {
            var: va.clone(),
            sort: s.clone(),
            a1: rename(&va, RenameTag::One),
            a2: rename(&va, RenameTag::Two),
            b1: rename(&vb, RenameTag::One),
            b2: rename(&vb, RenameTag::Two),
            h1: self.name("h"),
            h2: self.name("h"),
        };
        let h = self.name("h");
        let pa = translate_formula(&phi);
        let body = self.elim_body(&ends, &phi, &h);
        let body = ProofTerm::plam(ends.h1.clone(), eqpm(s, &v(&ends.a1), &v(&ends.b1)), {
            ProofTerm::plam(ends.h2.clone(), eqpm(s, &v(&ends.a2), &v(&ends.b2)), ProofTerm::plam(h, pa, body))
        });
        [&ends.b2, &ends.b1, &ends.a2, &ends.a1]
            .into_iter()
            .fold(body, |acc, y| ProofTerm::tlam(y.clone(), s.clone(), acc))
    }

    /// `Elim_{x̂.Φ} a¹ a² b¹ b² p q` for a fresh instance.
    fn elim_at(&mut self, ends: &Ends, phi: &Formula, forward: bool, arg: ProofTerm) -> ProofTerm {
        let inst = self.elim_formula(&ends.var, &ends.sort, phi);
        let (a1, a2, b1, b2) = (v(&ends.a1), v(&ends.a2), v(&ends.b1), v(&ends.b2));
        let applied = if forward {
            ProofTerm::papps(ProofTerm::tapps(inst, [a1, a2, b1, b2]), [pv(&ends.h1), pv(&ends.h2)])
        } else {
            let s = ends.sort.clone();
            let back1 = self.sym_at(&s, a1.clone(), b1.clone(), pv(&ends.h1));
            let back2 = self.sym_at(&s, a2.clone(), b2.clone(), pv(&ends.h2));
            ProofTerm::papps(ProofTerm::tapps(inst, [b1, b2, a1, a2]), [back1, back2])
        };
        ProofTerm::papp(applied, arg)
    }

    /// Proof of `Φ^pm[x := b]` from `h : Φ^pm[x := a]`; `x` is `ends.var`.
    fn elim_body(&mut self, ends: &Ends, phi: &Formula, h: &str) -> ProofTerm {
        let x = ends.var.clone();
        let s = ends.sort.clone();
        match phi {
            Formula::Eq(ts, t, u) => {
                let t1 = dup_term(t, 1);
                let u2 = dup_term(u, 2);
                let t1b = t1.subst(&ends.to_b());
                let u2b = u2.subst(&ends.to_b());
                let back = self.sym_at(&s, v(&ends.a1), v(&ends.b1), pv(&ends.h1));
                let left = self.elim_term_at(1, &x, &s, t, ts, v(&ends.b1), v(&ends.a1), back);
                let right = self.elim_term_at(2, &x, &s, u, ts, v(&ends.a2), v(&ends.b2), pv(&ends.h2));
                let inner = self.trans_at(ts, t1.clone(), u2, u2b.clone(), pv(h), right);
                self.trans_at(ts, t1b, t1, u2b, left, inner)
            }
            Formula::Bot => pv(h),
            Formula::Null(t) => {
                let t1 = dup_term(t, 1);
                let t1b = t1.subst(&ends.to_b());
                let eq = self.elim_term_at(1, &x, &s, t, &Sort::Nat, v(&ends.a1), v(&ends.b1), pv(&ends.h1));
                let w = self.name("w");
                ProofTerm::peel(Sort::Nat, t1, t1b, eq, w.clone(), Formula::Null(v(&w)), pv(h))
            }
            Formula::Imp(a, b) => {
                let eta = self.name("e");
                let hyp = translate_formula(a).subst(&ends.to_b());
                let back = self.elim_at(ends, a, false, pv(&eta));
                let fwd = self.elim_at(ends, b, true, ProofTerm::papp(pv(h), back));
                ProofTerm::plam(eta, hyp, fwd)
            }
            Formula::And(a, b) => {
                let left = self.elim_at(ends, a, true, ProofTerm::fst(pv(h)));
                let right = self.elim_at(ends, b, true, ProofTerm::snd(pv(h)));
                ProofTerm::pair(left, right)
            }
            Formula::Forall(z, zs, body) => {
                let c = self.name(z);
                let body = body.subst1(z, &v(&c));
                let (c1, c2, cp) = (rename(&c, RenameTag::One), rename(&c, RenameTag::Two), rename(&c, RenameTag::Pm));
                let arg = ProofTerm::papp(ProofTerm::tapps(pv(h), [v(&c1), v(&c2)]), pv(&cp));
                let inner = self.elim_at(ends, &body, true, arg);
                ProofTerm::tlam(
                    c1.clone(),
                    zs.clone(),
                    ProofTerm::tlam(c2.clone(), zs.clone(), ProofTerm::plam(cp, eqpm(zs, &v(&c1), &v(&c2)), inner)),
                )
            }
            Formula::Exists(z, zs, body) => {
                let c = self.name(z);
                let body = body.subst1(z, &v(&c));
                let (c1, c2) = (rename(&c, RenameTag::One), rename(&c, RenameTag::Two));
                let (eta, chi) = (self.name("e"), self.name("e"));
                let outer = translate_formula(&Formula::exists(c.clone(), zs.clone(), body.clone())).subst(&ends.to_b());
                let inner_target = match &outer {
                    Formula::Exists(y, _, inner) => inner.instantiate(y, &v(&c1)),
                    _ => unreachable!("translation of an existential is existential"),
                };
                // Terms under the binder mention `c#pm`; here it is `χ.1`.
                let moved = self
                    .elim_at(ends, &body, true, ProofTerm::snd(pv(&chi)))
                    .subst_proof1(&rename(&c, RenameTag::Pm), &ProofTerm::fst(pv(&chi)));
                let pair = ProofTerm::pair(ProofTerm::fst(pv(&chi)), moved);
                let intro = ProofTerm::ex_intro(
                    v(&c1),
                    ProofTerm::ex_intro(v(&c2), pair, inner_target),
                    outer,
                );
                ProofTerm::ex_elim(pv(h), c1, eta.clone(), ProofTerm::ex_elim(pv(&eta), c2, chi, intro))
            }
        }
    }
}
