//! Parametricity translation from LEHAω into LHAω.
//!
//! Every source variable `x` splits into two copies `x#1`, `x#2` and a
//! proof variable `x#pm` witnessing `x#1 ≈ x#2`, where `≈` is the
//! logical relation [`eqpm`]. A proof `M : Φ` becomes `M^pm : Φ^pm`.

mod binders;
mod elim;
mod equiv;
mod proof;
mod term;
mod witness;

#[cfg(test)]
mod tests;

use std::collections::{BTreeSet, HashSet};

use thiserror::Error;

use crate::kernel::{check_proof, infer_sort, CheckReport, Rejection};
use crate::syntax::{
    rename, variant, Context, Formula, Fresh, Judgment, Logic, Name, ProofTerm, RenameTag, Signature, Sort,
    Term, TermSubst,
};

pub use witness::{collaps_type, witness_type, Witness};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum TranslateError {
    #[error("source judgment rejected: {0}")]
    SourceRejected(Rejection),
    #[error("{0}")]
    IllFormed(String),
}

/// `a ≈_σ b`: equality at `N`, pointwise-related arguments to related
/// results at arrow sorts.
pub fn eqpm(s: &Sort, a: &Term, b: &Term) -> Formula {
    match s.as_arrow() {
        None => Formula::Eq(Sort::Nat, a.clone(), b.clone()),
        Some((d, c)) => {
            let mut used = a.free_vars();
            used.extend(b.free_vars());
            let x = variant("x", |n| used.contains(n));
            used.insert(x.clone());
            let y = variant("y", |n| used.contains(n));
            let (vx, vy) = (Term::var(&x), Term::var(&y));
            Formula::forall(
                x,
                d.clone(),
                Formula::forall(
                    y,
                    d.clone(),
                    Formula::imp(
                        eqpm(d, &vx, &vy),
                        eqpm(c, &Term::app(a.clone(), vx.clone()), &Term::app(b.clone(), vy)),
                    ),
                ),
            )
        }
    }
}

/// Extensional equality: `∀x̄. a x̄ = b x̄` at base sort.
pub fn ext(s: &Sort, a: &Term, b: &Term) -> Formula {
    match s.as_arrow() {
        None => Formula::Eq(Sort::Nat, a.clone(), b.clone()),
        Some((d, c)) => {
            let mut used = a.free_vars();
            used.extend(b.free_vars());
            let x = variant("x", |n| used.contains(n));
            let vx = Term::var(&x);
            Formula::forall(
                x,
                d.clone(),
                ext(c, &Term::app(a.clone(), vx.clone()), &Term::app(b.clone(), vx)),
            )
        }
    }
}

fn copy_subst(fv: BTreeSet<Name>, tag: RenameTag) -> TermSubst {
    fv.into_iter().map(|x| (x.clone(), Term::Var(rename(&x, tag)))).collect()
}

/// `t^i`: every free variable renamed to its `i`-th copy.
pub fn dup_term(t: &Term, i: u8) -> Term {
    t.subst(&copy_subst(t.free_vars(), RenameTag::copy(i)))
}

pub fn dup_formula(phi: &Formula, i: u8) -> Formula {
    phi.subst(&copy_subst(phi.free_vars(), RenameTag::copy(i)))
}

fn dup_signature(sig: &Signature, i: u8) -> Signature {
    let tag = RenameTag::copy(i);
    Signature(sig.iter().map(|(x, s)| (rename(x, tag), s.clone())).collect())
}

/// `(Δ¹, Δ²)`
pub fn dup_sig(sig: &Signature) -> (Signature, Signature) {
    (dup_signature(sig, 1), dup_signature(sig, 2))
}

/// `Δ^pm`: one hypothesis `x#pm : x#1 ≈ x#2` per declared variable.
pub fn sig_to_pm_context(sig: &Signature) -> Context {
    Context(
        sig.iter()
            .map(|(x, s)| {
                let (a, b) = (Term::var(rename(x, RenameTag::One)), Term::var(rename(x, RenameTag::Two)));
                (rename(x, RenameTag::Pm), eqpm(s, &a, &b))
            })
            .collect(),
    )
}

/// `Δ¹, Δ²`
pub fn translate_signature(sig: &Signature) -> Signature {
    let (mut out, second) = dup_sig(sig);
    out.0.extend(second.0);
    out
}

/// `Φ^pm`
pub fn translate_formula(phi: &Formula) -> Formula {
    match phi {
        Formula::Eq(s, t, u) => eqpm(s, &dup_term(t, 1), &dup_term(u, 2)),
        Formula::Bot => Formula::Bot,
        Formula::Null(t) => Formula::Null(dup_term(t, 1)),
        Formula::Imp(a, b) => Formula::imp(translate_formula(a), translate_formula(b)),
        Formula::And(a, b) => Formula::and(translate_formula(a), translate_formula(b)),
        Formula::Forall(x, s, body) | Formula::Exists(x, s, body) => {
            let (x1, x2) = (rename(x, RenameTag::One), rename(x, RenameTag::Two));
            let rel = eqpm(s, &Term::var(&x1), &Term::var(&x2));
            let inner = if matches!(phi, Formula::Forall(..)) {
                Formula::forall(x2.clone(), s.clone(), Formula::imp(rel, translate_formula(body)))
            } else {
                Formula::exists(x2.clone(), s.clone(), Formula::and(rel, translate_formula(body)))
            };
            if matches!(phi, Formula::Forall(..)) {
                Formula::forall(x1, s.clone(), inner)
            } else {
                Formula::exists(x1, s.clone(), inner)
            }
        }
    }
}

/// `Γ^pm`
pub fn translate_context(ctx: &Context) -> Context {
    Context(ctx.iter().map(|(h, phi)| (h.clone(), translate_formula(phi))).collect())
}

/// Name supply for generated binders. Each witness, `Elim` or `Collaps`
/// instance gets its own binder names, so nested instances never shadow
/// a variable a surrounding hypothesis mentions.
#[derive(Clone, Debug, Default)]
pub struct Gen {
    fresh: Fresh,
    notes: Vec<String>,
}

impl Gen {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn avoiding<I, S>(names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<Name>,
    {
        Gen { fresh: Fresh::avoiding(names), notes: Vec::new() }
    }

    pub fn reserve_all<I, S>(&mut self, names: I)
    where
        I: IntoIterator<Item = S>,
        S: Into<Name>,
    {
        self.fresh.reserve_all(names);
    }

    pub fn name(&mut self, base: &str) -> Name {
        self.fresh.name(base)
    }

    fn note(&mut self, s: impl Into<String>) {
        let s = s.into();
        if !self.notes.contains(&s) {
            self.notes.push(s);
        }
    }
}

/// Result of translating one judgment.
#[derive(Clone, Debug)]
pub struct TranslationUnit {
    pub source: Judgment,
    /// `Δ¹,Δ² ; Δ^pm,Γ^pm ⊢ M^pm : Φ^pm` in LHAω.
    pub target: Judgment,
    /// Which clauses fired and which binders were renamed.
    pub notes: Vec<String>,
}

impl TranslationUnit {
    pub fn recheck(&self) -> CheckReport {
        let t = &self.target;
        check_proof(t.logic, &t.sig, &t.ctx, &t.proof, &t.goal)
    }
}

/// Checks the source with the kernel, then translates it.
pub fn translate_judgment(j: &Judgment) -> Result<TranslationUnit, TranslateError> {
    let report = check_proof(j.logic, &j.sig, &j.ctx, &j.proof, &j.goal);
    if let Some(r) = report.rejection {
        return Err(TranslateError::SourceRejected(r));
    }
    if let Some(x) = j.sig.first_duplicate() {
        return Err(TranslateError::IllFormed(format!("duplicate variable `{x}` in signature")));
    }

    let mut seed: HashSet<Name> = j.sig.iter().map(|(x, _)| x.clone()).collect();
    seed.extend(j.ctx.free_vars());
    seed.extend(j.goal.free_vars());
    seed.extend(j.proof.free_term_vars());
    let mut gen = Gen::avoiding(seed);
    let (ctx, goal, proof) = gen.freshen_judgment(&j.ctx, &j.goal, &j.proof);
    let mut all = HashSet::new();
    for (h, phi) in ctx.iter() {
        all.insert(h.clone());
        phi.collect_names(&mut all);
    }
    goal.collect_names(&mut all);
    proof.collect_names(&mut all);
    gen.reserve_all(all);

    let body = gen.translate_proof(j.logic, &proof)?;
    let mut target_ctx = sig_to_pm_context(&j.sig);
    target_ctx.0.extend(translate_context(&ctx).0);
    let target = Judgment {
        logic: Logic::Lhaw,
        sig: translate_signature(&j.sig),
        ctx: target_ctx,
        proof: body,
        goal: translate_formula(&goal),
    };
    Ok(TranslationUnit { source: j.clone(), target, notes: gen.notes })
}

/// Convenience wrapper over [`translate_judgment`].
pub fn translate_proof(
    logic: Logic,
    sig: &Signature,
    ctx: &Context,
    proof: &ProofTerm,
    goal: &Formula,
) -> Result<TranslationUnit, TranslateError> {
    translate_judgment(&Judgment {
        logic,
        sig: sig.clone(),
        ctx: ctx.clone(),
        proof: proof.clone(),
        goal: goal.clone(),
    })
}

fn ill(msg: impl Into<String>) -> TranslateError {
    TranslateError::IllFormed(msg.into())
}

fn require_scope(sig: &Signature, extra: Option<&str>, fv: BTreeSet<Name>, what: &str) -> Result<(), TranslateError> {
    match fv.into_iter().find(|x| !sig.contains(x) && Some(x.as_str()) != extra) {
        Some(x) => Err(ill(format!("{what} mentions `{x}`, which is not declared"))),
        None => Ok(()),
    }
}

/// A generator avoiding every name of `Δ` and of the given formulas.
fn gen_for(sig: &Signature, extra: &[&str], phis: &[&Formula], terms: &[&Term]) -> Gen {
    let mut names: HashSet<Name> = sig.iter().map(|(x, _)| x.clone()).collect();
    names.extend(extra.iter().map(|x| x.to_string()));
    for phi in phis {
        phi.collect_names(&mut names);
    }
    for t in terms {
        t.collect_names(&mut names);
    }
    Gen::avoiding(names)
}

/// `t^pm : t¹ ≈_σ t²` under `Δ¹,Δ² ; Δ^pm`.
pub fn translate_term(sig: &Signature, t: &Term, s: &Sort) -> Result<ProofTerm, TranslateError> {
    let found = infer_sort(sig, t).map_err(|e| ill(format!("term `{t}`: {e}")))?;
    if &found != s {
        return Err(ill(format!("term `{t}` has sort {found}, not {s}")));
    }
    let mut gen = Gen::avoiding(sig.iter().map(|(x, _)| x.clone()).chain(t.free_vars()));
    let t = gen.freshen_term(t);
    let mut names = HashSet::new();
    t.collect_names(&mut names);
    gen.reserve_all(names);
    Ok(gen.translate_term(&t))
}

/// `Elim^i_{ẑ.t}`, of type [`elim_term_type`].
pub fn elim_term(i: u8, sig: &Signature, z: &str, zs: &Sort, t: &Term) -> Result<ProofTerm, TranslateError> {
    if i != 1 && i != 2 {
        return Err(ill(format!("copy index must be 1 or 2, got {i}")));
    }
    let ts = infer_sort(&sig.clone().with(z, zs.clone()), t).map_err(|e| ill(format!("term `{t}`: {e}")))?;
    let mut gen = gen_for(sig, &[z], &[], &[t]);
    Ok(gen.elim_term(i, z, zs, t, &ts))
}

/// `∀z¹∀z² (z¹ ≈ z² ⇒ t^i[z^i := z¹] ≈ t^i[z^i := z²])`
pub fn elim_term_type(i: u8, sig: &Signature, z: &str, zs: &Sort, t: &Term) -> Result<Formula, TranslateError> {
    let ts = infer_sort(&sig.clone().with(z, zs.clone()), t).map_err(|e| ill(format!("term `{t}`: {e}")))?;
    Ok(term::elim_term_type(i, z, zs, t, &ts))
}

/// Closed `Elim_{x̂.Φ}` of type [`elim_formula_type`]; `FV(Φ) ⊆ Δ ∪ {x}`.
pub fn elim_formula(sig: &Signature, x: &str, s: &Sort, phi: &Formula) -> Result<ProofTerm, TranslateError> {
    require_scope(sig, Some(x), phi.free_vars(), "motive")?;
    let mut gen = gen_for(sig, &[x], &[phi], &[]);
    Ok(gen.elim_formula(x, s, phi))
}

/// `∀a¹∀a²∀b¹∀b² (a¹ ≈ b¹ ⇒ a² ≈ b² ⇒ Φ^pm[x := a] ⇒ Φ^pm[x := b])`
pub fn elim_formula_type(x: &str, s: &Sort, phi: &Formula) -> Formula {
    let mut gen = gen_for(&Signature::new(), &[x], &[phi], &[]);
    gen.elim_formula_type(x, s, phi)
}

/// `Equiv¹_Φ : Φ¹ ⇒ Φ^pm` or `Equiv²_Φ : Φ^pm ⇒ Φ¹`, an LEHAω proof under
/// `Δ¹,Δ² ; Δ^pm`.
pub fn equiv(i: u8, sig: &Signature, phi: &Formula) -> Result<ProofTerm, TranslateError> {
    let (a, b) = equiv_both(sig, phi)?;
    match i {
        1 => Ok(a),
        2 => Ok(b),
        _ => Err(ill(format!("copy index must be 1 or 2, got {i}"))),
    }
}

/// `(Equiv¹_Φ, Equiv²_Φ) : Φ¹ ⇔ Φ^pm`
pub fn equiv_pair(sig: &Signature, phi: &Formula) -> Result<ProofTerm, TranslateError> {
    let (a, b) = equiv_both(sig, phi)?;
    Ok(ProofTerm::pair(a, b))
}

fn equiv_both(sig: &Signature, phi: &Formula) -> Result<(ProofTerm, ProofTerm), TranslateError> {
    require_scope(sig, None, phi.free_vars(), "formula")?;
    let mut gen = gen_for(sig, &[], &[phi], &[]);
    Ok(gen.equiv(phi))
}

/// `Φ¹ ⇔ Φ^pm`
pub fn equiv_type(phi: &Formula) -> Formula {
    Formula::iff(dup_formula(phi, 1), translate_formula(phi))
}

/// Fresh instance of `sympm_σ`, `transpm_σ` or `reflpm_σ`, typed by
/// [`witness_type`].
pub fn per_witness(w: Witness, s: &Sort) -> ProofTerm {
    let mut gen = Gen::new();
    match w {
        Witness::Sym => gen.sympm(s),
        Witness::Trans => gen.transpm(s),
        Witness::Refl => gen.reflpm(s),
    }
}

/// `Collaps_σ : ∀x∀y (x =_σ y ⇔ x ≈_σ y)`, an LEHAω proof.
pub fn collaps(s: &Sort) -> ProofTerm {
    Gen::new().collaps(s)
}
