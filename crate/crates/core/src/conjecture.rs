//! Experimental harness for the conjecture that the translation respects
//! proof reduction: for a closed, `peel`-free proof `M` and a step
//! `M ⤳ N`, look for a common reduct of `M^pm` and `N^pm`.
//!
//! The search is bounded, so an instance is either `joinable` or
//! `unknown`; nothing here ever claims non-joinability.

use std::fmt;
use std::sync::Arc;

use crate::kernel::{RED_ZONE, STACK_CHUNK};
use crate::rewrite::{normalize_formula_with, normalize_term_with, StepBudget};
use crate::syntax::{alpha_eq_proof, alpha_eq_term, Formula, Judgment, ProofSubst, ProofTerm, Side, Term, TermSubst};
use crate::translate::translate_judgment;

/// Default bound on β,ι-steps per side of a joinability search.
pub const DEFAULT_MAX_STEPS: usize = 10_000;

/// Cap on how many steps of one source proof are examined.
pub const MAX_SOURCE_STEPS: usize = 64;

/// Budget for the System T normalizations done while matching redexes.
const TERM_BUDGET: StepBudget = StepBudget(100_000);

pub const EXCLUDED_PEEL: &str = "excluded by conjecture hypothesis";
pub const EXCLUDED_OPEN: &str = "excluded: free first-order variables";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ProofRule {
    /// `(λx.M) t ≻ M[x:=t]`
    TermBeta,
    /// `(λξ.M) N ≻ M[ξ:=N]`
    ProofBeta,
    /// `let [x,ξ] := [t,M] in N ≻ N[x:=t][ξ:=M]`
    Unpack,
    /// `(M₁,M₂).i ≻ Mᵢ`
    Proj,
    IndZero,
    IndSucc,
    PeelRefl,
    AppPmExt,
}

impl ProofRule {
    pub fn name(self) -> &'static str {
        match self {
            ProofRule::TermBeta => "beta-term",
            ProofRule::ProofBeta => "beta-proof",
            ProofRule::Unpack => "beta-unpack",
            ProofRule::Proj => "beta-proj",
            ProofRule::IndZero => "ind-zero",
            ProofRule::IndSucc => "ind-succ",
            ProofRule::PeelRefl => "peel-refl",
            ProofRule::AppPmExt => "apppm-ext",
        }
    }
}

impl fmt::Display for ProofRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn numeral_view(t: &Term) -> Option<Option<Term>> {
    match normalize_term_with(t, TERM_BUDGET).ok()? {
        Term::Zero => Some(None),
        Term::Succ(p) => Some(Some((*p).clone())),
        _ => None,
    }
}

/// Contracts a redex at the root, if there is one.
pub fn contract_proof_root(p: &ProofTerm) -> Option<(ProofRule, ProofTerm)> {
    match p {
        ProofTerm::TApp(f, t) => match &**f {
            ProofTerm::TLam(x, _, body) => Some((ProofRule::TermBeta, body.subst_term1(x, t))),
            _ => None,
        },
        ProofTerm::PApp(f, a) => match &**f {
            ProofTerm::PLam(xi, _, body) => Some((ProofRule::ProofBeta, body.subst_proof1(xi, a))),
            _ => None,
        },
        ProofTerm::ExElim { proof, var, pvar, body } => match &**proof {
            ProofTerm::ExIntro(t, m, _) => Some((
                ProofRule::Unpack,
                body.subst(
                    &TermSubst::from([(var.clone(), t.clone())]),
                    &ProofSubst::from([(pvar.clone(), (**m).clone())]),
                ),
            )),
            _ => None,
        },
        ProofTerm::Proj(side, m) => match &**m {
            ProofTerm::Pair(a, b) => {
                let picked = if *side == Side::Left { a } else { b };
                Some((ProofRule::Proj, (**picked).clone()))
            }
            _ => None,
        },
        ProofTerm::Ind { binder, motive, base, step, scrut } => match numeral_view(scrut)? {
            None => Some((ProofRule::IndZero, (**base).clone())),
            Some(pred) => {
                let rest = ProofTerm::Ind {
                    binder: binder.clone(),
                    motive: motive.clone(),
                    base: base.clone(),
                    step: step.clone(),
                    scrut: pred.clone(),
                };
                Some((ProofRule::IndSucc, ProofTerm::papp(ProofTerm::tapp((**step).clone(), pred), rest)))
            }
        },
        ProofTerm::Peel { eq, base, .. } => match &**eq {
            ProofTerm::Refl(..) => Some((ProofRule::PeelRefl, (**base).clone())),
            _ => None,
        },
        ProofTerm::AppPm { fun_eq, lhs, rhs, arg_eq, .. } => match (&**fun_eq, &**arg_eq) {
            (ProofTerm::ExtIntro(_, _, m), ProofTerm::Refl(..)) if same_term(lhs, rhs) => {
                Some((ProofRule::AppPmExt, ProofTerm::tapp((**m).clone(), lhs.clone())))
            }
            _ => None,
        },
        _ => None,
    }
}

fn same_term(a: &Term, b: &Term) -> bool {
    alpha_eq_term(a, b)
        || matches!(
            (normalize_term_with(a, TERM_BUDGET), normalize_term_with(b, TERM_BUDGET)),
            (Ok(x), Ok(y)) if alpha_eq_term(&x, &y)
        )
}

/// One leftmost-outermost step.
pub fn step_proof(p: &ProofTerm) -> Option<(ProofRule, ProofTerm)> {
    stacker::maybe_grow(RED_ZONE, STACK_CHUNK, || step_node(p))
}

fn step_node(p: &ProofTerm) -> Option<(ProofRule, ProofTerm)> {
    if let Some(hit) = contract_proof_root(p) {
        return Some(hit);
    }
    let sub = |q: &Arc<ProofTerm>| step_proof(q).map(|(r, q)| (r, Arc::new(q)));
    match p {
        ProofTerm::PVar(_) | ProofTerm::Refl(..) => None,
        ProofTerm::Peel { sort, lhs, rhs, eq, binder, motive, base } => {
            let rebuild = |eq: Arc<ProofTerm>, base: Arc<ProofTerm>| ProofTerm::Peel {
                sort: sort.clone(),
                lhs: lhs.clone(),
                rhs: rhs.clone(),
                eq,
                binder: binder.clone(),
                motive: motive.clone(),
                base,
            };
            if let Some((r, eq)) = sub(eq) {
                return Some((r, rebuild(eq, base.clone())));
            }
            sub(base).map(|(r, base)| (r, rebuild(eq.clone(), base)))
        }
        ProofTerm::Efq(m, phi) => sub(m).map(|(r, m)| (r, ProofTerm::Efq(m, phi.clone()))),
        ProofTerm::PLam(x, phi, m) => sub(m).map(|(r, m)| (r, ProofTerm::PLam(x.clone(), phi.clone(), m))),
        ProofTerm::PApp(a, b) => match sub(a) {
            Some((r, a)) => Some((r, ProofTerm::PApp(a, b.clone()))),
            None => sub(b).map(|(r, b)| (r, ProofTerm::PApp(a.clone(), b))),
        },
        ProofTerm::Pair(a, b) => match sub(a) {
            Some((r, a)) => Some((r, ProofTerm::Pair(a, b.clone()))),
            None => sub(b).map(|(r, b)| (r, ProofTerm::Pair(a.clone(), b))),
        },
        ProofTerm::Proj(i, m) => sub(m).map(|(r, m)| (r, ProofTerm::Proj(*i, m))),
        ProofTerm::TLam(x, s, m) => sub(m).map(|(r, m)| (r, ProofTerm::TLam(x.clone(), s.clone(), m))),
        ProofTerm::TApp(m, t) => sub(m).map(|(r, m)| (r, ProofTerm::TApp(m, t.clone()))),
        ProofTerm::ExIntro(t, m, phi) => sub(m).map(|(r, m)| (r, ProofTerm::ExIntro(t.clone(), m, phi.clone()))),
        ProofTerm::ExElim { proof, var, pvar, body } => {
            let rebuild = |proof: Arc<ProofTerm>, body: Arc<ProofTerm>| ProofTerm::ExElim {
                proof,
                var: var.clone(),
                pvar: pvar.clone(),
                body,
            };
            if let Some((r, proof)) = sub(proof) {
                return Some((r, rebuild(proof, body.clone())));
            }
            sub(body).map(|(r, body)| (r, rebuild(proof.clone(), body)))
        }
        ProofTerm::Ind { binder, motive, base, step, scrut } => {
            let rebuild = |base: Arc<ProofTerm>, step: Arc<ProofTerm>| ProofTerm::Ind {
                binder: binder.clone(),
                motive: motive.clone(),
                base,
                step,
                scrut: scrut.clone(),
            };
            if let Some((r, base)) = sub(base) {
                return Some((r, rebuild(base, step.clone())));
            }
            sub(step).map(|(r, step)| (r, rebuild(base.clone(), step)))
        }
        ProofTerm::ExtIntro(a, b, m) => sub(m).map(|(r, m)| (r, ProofTerm::ExtIntro(a.clone(), b.clone(), m))),
        ProofTerm::AppPm { dom, cod, fun_eq, lhs, rhs, arg_eq } => {
            let rebuild = |fun_eq: Arc<ProofTerm>, arg_eq: Arc<ProofTerm>| ProofTerm::AppPm {
                dom: dom.clone(),
                cod: cod.clone(),
                fun_eq,
                lhs: lhs.clone(),
                rhs: rhs.clone(),
                arg_eq,
            };
            if let Some((r, f)) = sub(fun_eq) {
                return Some((r, rebuild(f, arg_eq.clone())));
            }
            sub(arg_eq).map(|(r, a)| (r, rebuild(fun_eq.clone(), a)))
        }
    }
}

/// Result of reducing a proof for at most `max_steps` steps.
#[derive(Clone, Debug)]
pub struct Reduced {
    pub proof: ProofTerm,
    pub steps: usize,
    pub normal: bool,
}

pub fn reduce_proof(p: &ProofTerm, max_steps: usize) -> Reduced {
    let mut current = p.clone();
    for steps in 0..max_steps {
        match step_proof(&current) {
            Some((_, next)) => current = next,
            None => return Reduced { proof: current, steps, normal: true },
        }
    }
    let normal = step_proof(&current).is_none();
    Reduced { proof: current, steps: max_steps, normal }
}

/// Replaces every embedded term and formula by its normal form, so that
/// alpha-equivalence of the results is equality up to conversion.
fn canonical(p: &ProofTerm) -> ProofTerm {
    stacker::maybe_grow(RED_ZONE, STACK_CHUNK, || canonical_node(p))
}

fn canonical_node(p: &ProofTerm) -> ProofTerm {
    let t = |t: &Term| normalize_term_with(t, TERM_BUDGET).unwrap_or_else(|_| t.clone());
    let f = |phi: &Formula| Arc::new(normalize_formula_with(phi, TERM_BUDGET).unwrap_or_else(|_| phi.clone()));
    let c = |q: &Arc<ProofTerm>| Arc::new(canonical(q));
    match p {
        ProofTerm::PVar(_) => p.clone(),
        ProofTerm::Refl(s, u) => ProofTerm::Refl(s.clone(), t(u)),
        ProofTerm::Peel { sort, lhs, rhs, eq, binder, motive, base } => ProofTerm::Peel {
            sort: sort.clone(),
            lhs: t(lhs),
            rhs: t(rhs),
            eq: c(eq),
            binder: binder.clone(),
            motive: f(motive),
            base: c(base),
        },
        ProofTerm::Efq(m, phi) => ProofTerm::Efq(c(m), f(phi)),
        ProofTerm::PLam(x, phi, m) => ProofTerm::PLam(x.clone(), f(phi), c(m)),
        ProofTerm::PApp(a, b) => ProofTerm::PApp(c(a), c(b)),
        ProofTerm::Pair(a, b) => ProofTerm::Pair(c(a), c(b)),
        ProofTerm::Proj(i, m) => ProofTerm::Proj(*i, c(m)),
        ProofTerm::TLam(x, s, m) => ProofTerm::TLam(x.clone(), s.clone(), c(m)),
        ProofTerm::TApp(m, u) => ProofTerm::TApp(c(m), t(u)),
        ProofTerm::ExIntro(u, m, phi) => ProofTerm::ExIntro(t(u), c(m), f(phi)),
        ProofTerm::ExElim { proof, var, pvar, body } => ProofTerm::ExElim {
            proof: c(proof),
            var: var.clone(),
            pvar: pvar.clone(),
            body: c(body),
        },
        ProofTerm::Ind { binder, motive, base, step, scrut } => ProofTerm::Ind {
            binder: binder.clone(),
            motive: f(motive),
            base: c(base),
            step: c(step),
            scrut: t(scrut),
        },
        ProofTerm::ExtIntro(a, b, m) => ProofTerm::ExtIntro(a.clone(), b.clone(), c(m)),
        ProofTerm::AppPm { dom, cod, fun_eq, lhs, rhs, arg_eq } => ProofTerm::AppPm {
            dom: dom.clone(),
            cod: cod.clone(),
            fun_eq: c(fun_eq),
            lhs: t(lhs),
            rhs: t(rhs),
            arg_eq: c(arg_eq),
        },
    }
}

/// Equality of proofs up to renaming and System T conversion inside
/// annotations.
pub fn proofs_congruent(a: &ProofTerm, b: &ProofTerm) -> bool {
    alpha_eq_proof(a, b) || alpha_eq_proof(&canonical(a), &canonical(b))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    /// A common reduct was found after this many steps on each side.
    Joinable { left: usize, right: usize },
    /// No common reduct within the budget.
    Unknown { reason: String },
    /// The harness itself failed (translation or subject reduction).
    Error { message: String },
}

impl Outcome {
    pub fn label(&self) -> &'static str {
        match self {
            Outcome::Joinable { .. } => "joinable",
            Outcome::Unknown { .. } => "unknown",
            Outcome::Error { .. } => "error",
        }
    }
}

/// Bounded search for a common reduct of `a` and `b`. Reduction is
/// deterministic, so this compares each side's furthest reduct with the
/// other side's, and reports `unknown` on distinct normal forms too.
pub fn search_common_reduct(a: &ProofTerm, b: &ProofTerm, max_steps: usize) -> Outcome {
    if proofs_congruent(a, b) {
        return Outcome::Joinable { left: 0, right: 0 };
    }
    let ra = reduce_proof(a, max_steps);
    let rb = reduce_proof(b, max_steps);
    if proofs_congruent(&ra.proof, &rb.proof) {
        return Outcome::Joinable { left: ra.steps, right: rb.steps };
    }
    let reason = match (ra.normal, rb.normal) {
        (true, true) => "distinct normal forms".to_string(),
        _ => format!("no common reduct within {max_steps} steps"),
    };
    Outcome::Unknown { reason }
}

#[derive(Clone, Debug)]
pub struct Instance {
    pub theorem: String,
    /// Position of the step along the source's reduction sequence.
    pub index: usize,
    pub rule: ProofRule,
    pub outcome: Outcome,
}

#[derive(Clone, Debug)]
pub struct Skipped {
    pub theorem: String,
    pub reason: String,
}

#[derive(Clone, Debug, Default)]
pub struct ConjectureReport {
    pub instances: Vec<Instance>,
    pub skipped: Vec<Skipped>,
}

impl ConjectureReport {
    pub fn count(&self, label: &str) -> usize {
        self.instances.iter().filter(|i| i.outcome.label() == label).count()
    }

    pub fn joinable(&self) -> usize {
        self.count("joinable")
    }

    pub fn unknown(&self) -> usize {
        self.count("unknown")
    }

    pub fn errors(&self) -> usize {
        self.count("error")
    }

    pub fn merge(&mut self, other: ConjectureReport) {
        self.instances.extend(other.instances);
        self.skipped.extend(other.skipped);
    }
}

impl fmt::Display for ConjectureReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.skipped {
            writeln!(f, "{}\tskipped\t{}", s.theorem, s.reason)?;
        }
        for i in &self.instances {
            write!(f, "{}\tstep={}\trule={}\t{}", i.theorem, i.index, i.rule, i.outcome.label())?;
            match &i.outcome {
                Outcome::Joinable { left, right } => write!(f, "\tsteps={left}+{right}")?,
                Outcome::Unknown { reason } => write!(f, "\t{reason}")?,
                Outcome::Error { message } => write!(f, "\t{message}")?,
            }
            writeln!(f)?;
        }
        write!(
            f,
            "total={}\tjoinable={}\tunknown={}\terror={}\tskipped={}",
            self.instances.len(),
            self.joinable(),
            self.unknown(),
            self.errors(),
            self.skipped.len()
        )
    }
}

fn translated(j: &Judgment, proof: &ProofTerm) -> Result<ProofTerm, String> {
    let j = Judgment { proof: proof.clone(), ..j.clone() };
    translate_judgment(&j).map(|u| u.target.proof).map_err(|e| e.to_string())
}

/// Runs the experiment along the leftmost-outermost reduction sequence of
/// one theorem's proof.
pub fn run_judgment(name: &str, j: &Judgment, max_steps: usize) -> ConjectureReport {
    let mut report = ConjectureReport::default();
    if j.proof.contains_peel() {
        report.skipped.push(Skipped { theorem: name.to_string(), reason: EXCLUDED_PEEL.to_string() });
        return report;
    }
    if !j.sig.is_empty() || !j.proof.free_term_vars().is_empty() {
        report.skipped.push(Skipped { theorem: name.to_string(), reason: EXCLUDED_OPEN.to_string() });
        return report;
    }
    let mut current = j.proof.clone();
    let mut current_pm = match translated(j, &current) {
        Ok(p) => p,
        Err(message) => {
            report.skipped.push(Skipped { theorem: name.to_string(), reason: message });
            return report;
        }
    };
    for index in 0..MAX_SOURCE_STEPS {
        let Some((rule, next)) = step_proof(&current) else { break };
        let (outcome, next_pm) = match translated(j, &next) {
            Ok(next_pm) => (search_common_reduct(&current_pm, &next_pm, max_steps), Some(next_pm)),
            Err(message) => (Outcome::Error { message: format!("reduct not translatable: {message}") }, None),
        };
        report.instances.push(Instance { theorem: name.to_string(), index, rule, outcome });
        match next_pm {
            Some(p) => current_pm = p,
            None => break,
        }
        current = next;
    }
    report
}
