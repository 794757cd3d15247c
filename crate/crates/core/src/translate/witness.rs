//! `sympm`, `transpm`, `reflpm` and `Collaps`, by recursion on the sort.

use crate::syntax::{Formula, ProofTerm, Sort, Term};

use super::{eqpm, Gen};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Witness {
    Sym,
    Trans,
    Refl,
}

/// The formula a witness instance proves.
pub fn witness_type(w: Witness, s: &Sort) -> Formula {
    let (x, y, z) = (Term::var("x"), Term::var("y"), Term::var("z"));
    let all = |v: &str, body| Formula::forall(v, s.clone(), body);
    match w {
        Witness::Sym => all("x", all("y", Formula::imp(eqpm(s, &x, &y), eqpm(s, &y, &x)))),
        Witness::Trans => all(
            "x",
            all(
                "y",
                all("z", Formula::imps([eqpm(s, &x, &y), eqpm(s, &y, &z)], eqpm(s, &x, &z))),
            ),
        ),
        Witness::Refl => all(
            "x",
            all("y", Formula::imp(eqpm(s, &x, &y), Formula::and(eqpm(s, &x, &x), eqpm(s, &y, &y)))),
        ),
    }
}

/// `∀x∀y (x =_σ y ⇔ x ≈_σ y)`
pub fn collaps_type(s: &Sort) -> Formula {
    let (x, y) = (Term::var("x"), Term::var("y"));
    Formula::forall(
        "x",
        s.clone(),
        Formula::forall(
            "y",
            s.clone(),
            Formula::iff(Formula::Eq(s.clone(), x.clone(), y.clone()), eqpm(s, &x, &y)),
        ),
    )
}

fn v(x: &str) -> Term {
    Term::var(x)
}

fn pv(x: &str) -> ProofTerm {
    ProofTerm::pvar(x)
}

impl Gen {
    pub fn sympm(&mut self, s: &Sort) -> ProofTerm {
        match s.as_arrow() {
            None => {
                let (x, y, h, z) = (self.name("x"), self.name("y"), self.name("h"), self.name("z"));
                let body = ProofTerm::peel(
                    Sort::Nat,
                    v(&x),
                    v(&y),
                    pv(&h),
                    z.clone(),
                    Formula::eq_nat(v(&z), v(&x)),
                    ProofTerm::Refl(Sort::Nat, v(&x)),
                );
                ProofTerm::tlam(
                    x.clone(),
                    Sort::Nat,
                    ProofTerm::tlam(y.clone(), Sort::Nat, ProofTerm::plam(h, Formula::eq_nat(v(&x), v(&y)), body)),
                )
            }
            Some((d, c)) => {
                let (f, g, h) = (self.name("f"), self.name("g"), self.name("h"));
                let (x, y, e) = (self.name("x"), self.name("y"), self.name("e"));
                let arg = self.sym_at(d, v(&x), v(&y), pv(&e));
                let inner = ProofTerm::papp(ProofTerm::tapps(pv(&h), [v(&y), v(&x)]), arg);
                let body = self.sym_at(c, Term::app(v(&f), v(&y)), Term::app(v(&g), v(&x)), inner);
                let body = ProofTerm::tlam(
                    x.clone(),
                    d.clone(),
                    ProofTerm::tlam(y.clone(), d.clone(), ProofTerm::plam(e, eqpm(d, &v(&x), &v(&y)), body)),
                );
                ProofTerm::tlam(
                    f.clone(),
                    s.clone(),
                    ProofTerm::tlam(g.clone(), s.clone(), ProofTerm::plam(h, eqpm(s, &v(&f), &v(&g)), body)),
                )
            }
        }
    }

    /// `sympm_σ a b p : b ≈ a` for `p : a ≈ b`.
    pub(crate) fn sym_at(&mut self, s: &Sort, a: Term, b: Term, p: ProofTerm) -> ProofTerm {
        ProofTerm::papp(ProofTerm::tapps(self.sympm(s), [a, b]), p)
    }

    pub fn transpm(&mut self, s: &Sort) -> ProofTerm {
        let (x, y, z) = (self.name_for(s, "x"), self.name_for(s, "y"), self.name_for(s, "z"));
        let (h, e) = (self.name("h"), self.name("e"));
        let body = match s.as_arrow() {
            None => {
                let w = self.name("w");
                ProofTerm::peel(
                    Sort::Nat,
                    v(&y),
                    v(&z),
                    pv(&e),
                    w.clone(),
                    Formula::eq_nat(v(&x), v(&w)),
                    pv(&h),
                )
            }
            Some((d, c)) => {
                // x, y, z play f, g, h here; a, b range over the domain.
                let (a, b, k) = (self.name("a"), self.name("b"), self.name("k"));
                let sym = self.sym_at(d, v(&a), v(&b), pv(&k));
                let back = self.trans_at(d, v(&b), v(&a), v(&b), sym, pv(&k));
                let left = ProofTerm::papp(ProofTerm::tapps(pv(&h), [v(&a), v(&b)]), pv(&k));
                let right = ProofTerm::papp(ProofTerm::tapps(pv(&e), [v(&b), v(&b)]), back);
                let body = self.trans_at(
                    c,
                    Term::app(v(&x), v(&a)),
                    Term::app(v(&y), v(&b)),
                    Term::app(v(&z), v(&b)),
                    left,
                    right,
                );
                ProofTerm::tlam(
                    a.clone(),
                    d.clone(),
                    ProofTerm::tlam(b.clone(), d.clone(), ProofTerm::plam(k, eqpm(d, &v(&a), &v(&b)), body)),
                )
            }
        };
        let body = ProofTerm::plam(h, eqpm(s, &v(&x), &v(&y)), ProofTerm::plam(e, eqpm(s, &v(&y), &v(&z)), body));
        ProofTerm::tlam(
            x,
            s.clone(),
            ProofTerm::tlam(y, s.clone(), ProofTerm::tlam(z, s.clone(), body)),
        )
    }

    fn name_for(&mut self, s: &Sort, base: &str) -> String {
        if s.is_nat() {
            self.name(base)
        } else {
            let b = match base {
                "x" => "f",
                "y" => "g",
                _ => "k",
            };
            self.name(b)
        }
    }

    /// `transpm_σ a b c p q : a ≈ c` for `p : a ≈ b`, `q : b ≈ c`.
    pub(crate) fn trans_at(&mut self, s: &Sort, a: Term, b: Term, c: Term, p: ProofTerm, q: ProofTerm) -> ProofTerm {
        ProofTerm::papps(ProofTerm::tapps(self.transpm(s), [a, b, c]), [p, q])
    }

    pub fn reflpm(&mut self, s: &Sort) -> ProofTerm {
        let (x, y, h) = (self.name_for(s, "x"), self.name_for(s, "y"), self.name("h"));
        let s1 = self.sym_at(s, v(&x), v(&y), pv(&h));
        let left = self.trans_at(s, v(&x), v(&y), v(&x), pv(&h), s1);
        let s2 = self.sym_at(s, v(&x), v(&y), pv(&h));
        let right = self.trans_at(s, v(&y), v(&x), v(&y), s2, pv(&h));
        ProofTerm::tlam(
            x.clone(),
            s.clone(),
            ProofTerm::tlam(
                y.clone(),
                s.clone(),
                ProofTerm::plam(h, eqpm(s, &v(&x), &v(&y)), ProofTerm::pair(left, right)),
            ),
        )
    }

    /// `reflpm_σ a b p : a ≈ a ∧ b ≈ b`.
    pub(crate) fn refl_at(&mut self, s: &Sort, a: Term, b: Term, p: ProofTerm) -> ProofTerm {
        ProofTerm::papp(ProofTerm::tapps(self.reflpm(s), [a, b]), p)
    }

    pub fn collaps(&mut self, s: &Sort) -> ProofTerm {
        let (f, g) = (self.name_for(s, "x"), self.name_for(s, "y"));
        let (vf, vg) = (v(&f), v(&g));
        let body = match s.as_arrow() {
            None => {
                let (h, k) = (self.name("h"), self.name("h"));
                let rel = Formula::eq_nat(vf.clone(), vg.clone());
                ProofTerm::pair(ProofTerm::plam(h.clone(), rel.clone(), pv(&h)), ProofTerm::plam(k.clone(), rel, pv(&k)))
            }
            Some((d, c)) => {
                let (h, x, y, e) = (self.name("h"), self.name("x"), self.name("y"), self.name("e"));
                let arg = self.collaps_bwd(d, v(&x), v(&y), pv(&e));
                let app = ProofTerm::app_pm(d.clone(), c.clone(), pv(&h), v(&x), v(&y), arg);
                let fwd_body = self.collaps_fwd(c, Term::app(vf.clone(), v(&x)), Term::app(vg.clone(), v(&y)), app);
                let fwd = ProofTerm::plam(
                    h,
                    Formula::Eq(s.clone(), vf.clone(), vg.clone()),
                    ProofTerm::tlam(
                        x.clone(),
                        d.clone(),
                        ProofTerm::tlam(y.clone(), d.clone(), ProofTerm::plam(e, eqpm(d, &v(&x), &v(&y)), fwd_body)),
                    ),
                );

                let (k, z) = (self.name("h"), self.name("z"));
                let zz = self.collaps_fwd(d, v(&z), v(&z), ProofTerm::Refl(d.clone(), v(&z)));
                let pointwise = ProofTerm::papp(ProofTerm::tapps(pv(&k), [v(&z), v(&z)]), zz);
                let back = self.collaps_bwd(c, Term::app(vf.clone(), v(&z)), Term::app(vg.clone(), v(&z)), pointwise);
                let bwd = ProofTerm::plam(
                    k,
                    eqpm(s, &vf, &vg),
                    ProofTerm::ext(d.clone(), c.clone(), ProofTerm::tlam(z, d.clone(), back)),
                );
                ProofTerm::pair(fwd, bwd)
            }
        };
        ProofTerm::tlam(f, s.clone(), ProofTerm::tlam(g, s.clone(), body))
    }

    /// `(Collaps_σ a b).1 p : a ≈ b` for `p : a = b`.
    pub(crate) fn collaps_fwd(&mut self, s: &Sort, a: Term, b: Term, p: ProofTerm) -> ProofTerm {
        ProofTerm::papp(ProofTerm::fst(ProofTerm::tapps(self.collaps(s), [a, b])), p)
    }

    /// `(Collaps_σ a b).2 p : a = b` for `p : a ≈ b`.
    pub(crate) fn collaps_bwd(&mut self, s: &Sort, a: Term, b: Term, p: ProofTerm) -> ProofTerm {
        ProofTerm::papp(ProofTerm::snd(ProofTerm::tapps(self.collaps(s), [a, b])), p)
    }
}
