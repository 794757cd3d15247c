//! Concrete syntax output.
//!
//! Precedence, tightest first: application, `S`, `=`; `/\`, then `->`
//! (right associative); quantifiers, `fun` and `unpack` extend as far
//! right as possible and are parenthesized only when something follows
//! them.

use std::fmt::{self, Display, Formatter, Write};

use crate::syntax::{Formula, Logic, ProofTerm, Side, Sort, Term};

use super::{Decl, SourceFile};

fn sort(f: &mut Formatter<'_>, s: &Sort, as_domain: bool) -> fmt::Result {
    match s {
        Sort::Nat => f.write_str("N"),
        Sort::Arrow(d, c) => {
            if as_domain {
                f.write_char('(')?;
            }
            sort(f, d, true)?;
            f.write_str(" -> ")?;
            sort(f, c, false)?;
            if as_domain {
                f.write_char(')')?;
            }
            Ok(())
        }
    }
}

impl Display for Sort {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        sort(f, self, false)
    }
}

// Term levels.
const T_TOP: u8 = 0;
const T_SUCC: u8 = 1;
const T_APP: u8 = 2;
const T_ATOM: u8 = 3;

fn term_level(t: &Term) -> u8 {
    match t {
        Term::Var(_) | Term::Zero => T_ATOM,
        Term::Succ(_) if t.as_numeral().is_some() => T_ATOM,
        Term::Succ(_) => T_SUCC,
        Term::Lam(..) => T_TOP,
        Term::App(..) | Term::Rec(..) => T_APP,
    }
}

fn term(f: &mut Formatter<'_>, t: &Term, prec: u8) -> fmt::Result {
    let level = term_level(t);
    if level < prec {
        f.write_char('(')?;
        term(f, t, T_TOP)?;
        return f.write_char(')');
    }
    match t {
        Term::Var(x) => f.write_str(x),
        Term::Zero => f.write_char('0'),
        Term::Succ(inner) => match t.as_numeral() {
            Some(n) => write!(f, "{n}"),
            None => {
                f.write_str("S ")?;
                term(f, inner, T_SUCC)
            }
        },
        Term::Lam(..) => {
            f.write_str("fun")?;
            let mut body = t;
            while let Term::Lam(x, s, b) = body {
                write!(f, " ({x} : {s})")?;
                body = b;
            }
            f.write_str(" => ")?;
            term(f, body, T_TOP)
        }
        Term::App(g, a) => {
            term(f, g, T_APP)?;
            f.write_char(' ')?;
            term(f, a, T_ATOM)
        }
        Term::Rec(s, base, step, scrut) => {
            write!(f, "rec[{s}] ")?;
            term(f, base, T_ATOM)?;
            f.write_char(' ')?;
            term(f, step, T_ATOM)?;
            f.write_char(' ')?;
            term(f, scrut, T_ATOM)
        }
    }
}

impl Display for Term {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        term(f, self, T_TOP)
    }
}

// Formula levels.
const F_TOP: u8 = 0;
const F_IMP: u8 = 1;
const F_AND: u8 = 2;
const F_ATOM: u8 = 3;

fn formula_level(phi: &Formula) -> u8 {
    match phi {
        Formula::Forall(..) | Formula::Exists(..) => F_TOP,
        Formula::Imp(..) => F_IMP,
        Formula::And(..) => F_AND,
        _ => F_ATOM,
    }
}

/// `open_right`: nothing follows this formula inside the current
/// parenthesis group, so a trailing quantifier needs no parentheses.
fn formula(f: &mut Formatter<'_>, phi: &Formula, prec: u8, open_right: bool) -> fmt::Result {
    let level = formula_level(phi);
    let parens = if level == F_TOP { prec > F_TOP && !open_right } else { level < prec };
    if parens {
        f.write_char('(')?;
        formula(f, phi, F_TOP, true)?;
        return f.write_char(')');
    }
    match phi {
        Formula::Eq(s, a, b) => {
            term(f, a, T_SUCC)?;
            if s.is_nat() {
                f.write_str(" = ")?;
            } else {
                write!(f, " = [{s}] ")?;
            }
            term(f, b, T_SUCC)
        }
        Formula::Bot => f.write_str("bot"),
        Formula::Null(t) => {
            f.write_str("null ")?;
            term(f, t, T_SUCC)
        }
        Formula::Imp(a, b) => {
            formula(f, a, F_AND, false)?;
            f.write_str(" -> ")?;
            formula(f, b, F_IMP, open_right)
        }
        Formula::And(a, b) => {
            formula(f, a, F_ATOM, false)?;
            f.write_str(" /\\ ")?;
            formula(f, b, F_AND, open_right)
        }
        Formula::Forall(x, s, b) | Formula::Exists(x, s, b) => {
            let kw = if matches!(phi, Formula::Forall(..)) { "forall" } else { "exists" };
            write!(f, "{kw} {x}:{s}. ")?;
            formula(f, b, F_TOP, true)
        }
    }
}

impl Display for Formula {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        formula(f, self, F_TOP, true)
    }
}

// Proof levels.
const P_TOP: u8 = 0;
const P_APP: u8 = 1;
const P_ATOM: u8 = 2;

fn proof_level(p: &ProofTerm) -> u8 {
    match p {
        ProofTerm::PLam(..) | ProofTerm::TLam(..) | ProofTerm::ExElim { .. } => P_TOP,
        ProofTerm::PApp(..) | ProofTerm::TApp(..) => P_APP,
        _ => P_ATOM,
    }
}

fn proof(f: &mut Formatter<'_>, p: &ProofTerm, prec: u8) -> fmt::Result {
    if proof_level(p) < prec {
        f.write_char('(')?;
        proof(f, p, P_TOP)?;
        return f.write_char(')');
    }
    match p {
        ProofTerm::PVar(x) => f.write_str(x),
        ProofTerm::Refl(s, t) => {
            f.write_str("refl")?;
            if !s.is_nat() {
                write!(f, "[{s}]")?;
            }
            f.write_char(' ')?;
            term(f, t, T_ATOM)
        }
        ProofTerm::Peel { sort, lhs, rhs, eq, binder, motive, base } => {
            f.write_str("peel")?;
            if !sort.is_nat() {
                write!(f, "[{sort}]")?;
            }
            write!(f, "({lhs}, {rhs}, {eq}, {binder}. {motive}, {base})")
        }
        ProofTerm::Efq(p, phi) => write!(f, "efq({p}, {phi})"),
        ProofTerm::PLam(..) | ProofTerm::TLam(..) => {
            f.write_str("fun")?;
            let mut body = p;
            loop {
                match body {
                    ProofTerm::PLam(h, phi, b) => {
                        write!(f, " [{h} : {phi}]")?;
                        body = b;
                    }
                    ProofTerm::TLam(x, s, b) => {
                        write!(f, " ({x} : {s})")?;
                        body = b;
                    }
                    _ => break,
                }
            }
            f.write_str(" => ")?;
            proof(f, body, P_TOP)
        }
        ProofTerm::PApp(g, a) => {
            proof(f, g, P_APP)?;
            f.write_char(' ')?;
            proof(f, a, P_ATOM)
        }
        ProofTerm::TApp(g, t) => {
            proof(f, g, P_APP)?;
            write!(f, " {{{t}}}")
        }
        ProofTerm::Pair(a, b) => write!(f, "({a}, {b})"),
        ProofTerm::Proj(side, p) => {
            proof(f, p, P_ATOM)?;
            write!(f, ".{}", side.index())
        }
        ProofTerm::ExIntro(t, p, phi) => write!(f, "wit({t}, {p}, {phi})"),
        ProofTerm::ExElim { proof: m, var, pvar, body } => {
            write!(f, "unpack [{var}, {pvar}] := {m} in ")?;
            proof(f, body, P_TOP)
        }
        ProofTerm::Ind { binder, motive, base, step, scrut } => {
            write!(f, "ind({binder}. {motive}, {base}, {step}, {scrut})")
        }
        ProofTerm::ExtIntro(d, c, p) => write!(f, "ext[{d}, {c}]({p})"),
        ProofTerm::AppPm { dom, cod, fun_eq, lhs, rhs, arg_eq } => {
            write!(f, "apppm[{dom}, {cod}]({fun_eq}, {lhs}, {rhs}, {arg_eq})")
        }
    }
}

impl Display for ProofTerm {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        proof(f, self, P_TOP)
    }
}

impl Display for Side {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.index())
    }
}

impl Display for Decl {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            Decl::Def(d) => write!(f, "def {} : {} := {}", d.name, d.sort, d.body),
            Decl::Theorem(th) => {
                write!(f, "theorem {}", th.name)?;
                for (x, s) in th.sig.iter() {
                    write!(f, " ({x} : {s})")?;
                }
                for (h, phi) in th.ctx.iter() {
                    write!(f, " [{h} : {phi}]")?;
                }
                write!(f, " :\n  {}\n:=\n  {}", th.goal, th.proof)
            }
        }
    }
}

impl Display for SourceFile {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        writeln!(f, "logic {}", self.logic)?;
        if self.generated {
            writeln!(f, "generated")?;
        }
        for d in &self.decls {
            writeln!(f)?;
            writeln!(f, "{d}")?;
        }
        Ok(())
    }
}

/// One-line rendering of a judgment, used in diagnostics.
pub fn judgment_line(logic: Logic, sig: &crate::syntax::Signature, ctx: &crate::syntax::Context, goal: &Formula) -> String {
    let mut out = format!("[{logic}] ");
    let decls: Vec<String> = sig.iter().map(|(x, s)| format!("{x} : {s}")).collect();
    out.push_str(&decls.join(", "));
    out.push_str(" ; ");
    let hyps: Vec<String> = ctx.iter().map(|(h, phi)| format!("{h} : {phi}")).collect();
    out.push_str(&hyps.join(", "));
    let _ = write!(out, " |- {goal}");
    out
}
