//! Recursive-descent parser over the token vector. Backtracking is used
//! only to tell a parenthesized formula from a parenthesized term on the
//! left of `=`.

use std::collections::HashSet;

use crate::syntax::{is_reserved, Context, Formula, Logic, Name, ProofTerm, Signature, Sort, Term, TermSubst};

use super::lexer::{lex, Tok};
use super::{Decl, DefDecl, Pos, SourceFile, SurfaceError, TheoremDecl};

#[derive(Clone, Copy, Debug, Default)]
pub struct ParseOptions {
    /// Accept names containing `#`.
    pub allow_reserved: bool,
}

type Result<T> = std::result::Result<T, SurfaceError>;

struct Parser {
    toks: Vec<(Tok, Pos)>,
    i: usize,
    opts: ParseOptions,
}

impl Parser {
    fn new(text: &str, opts: ParseOptions) -> Result<Self> {
        Ok(Parser { toks: lex(text)?, i: 0, opts })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.i].0
    }

    fn peek_at(&self, k: usize) -> &Tok {
        let j = (self.i + k).min(self.toks.len() - 1);
        &self.toks[j].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.i].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.i].0.clone();
        if self.i + 1 < self.toks.len() {
            self.i += 1;
        }
        t
    }

    fn is_sym(&self, s: &str) -> bool {
        matches!(self.peek(), Tok::Sym(x) if *x == s)
    }

    fn is_kw(&self, k: &str) -> bool {
        matches!(self.peek(), Tok::Kw(x) if *x == k)
    }

    fn eat_sym(&mut self, s: &str) -> bool {
        if self.is_sym(s) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn eat_kw(&mut self, k: &str) -> bool {
        if self.is_kw(k) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn unexpected<T>(&self, wanted: &str) -> Result<T> {
        Err(SurfaceError::parse(self.pos(), format!("expected {wanted}, found {}", self.peek().describe())))
    }

    fn expect_sym(&mut self, s: &str) -> Result<()> {
        if self.eat_sym(s) {
            Ok(())
        } else {
            self.unexpected(&format!("`{s}`"))
        }
    }

    fn expect_kw(&mut self, k: &str) -> Result<()> {
        if self.eat_kw(k) {
            Ok(())
        } else {
            self.unexpected(&format!("`{k}`"))
        }
    }

    fn expect_eof(&mut self) -> Result<()> {
        match self.peek() {
            Tok::Eof => Ok(()),
            _ => self.unexpected("end of input"),
        }
    }

    fn ident(&mut self) -> Result<Name> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Ident(x) => {
                if is_reserved(&x) && !self.opts.allow_reserved {
                    return Err(SurfaceError::ReservedName { pos, name: x });
                }
                self.bump();
                Ok(x)
            }
            _ => self.unexpected("an identifier"),
        }
    }

    // ---- sorts ----

    fn sort(&mut self) -> Result<Sort> {
        let dom = self.sort_atom()?;
        if self.eat_sym("->") {
            Ok(Sort::arrow(dom, self.sort()?))
        } else {
            Ok(dom)
        }
    }

    fn sort_atom(&mut self) -> Result<Sort> {
        if self.eat_kw("N") {
            Ok(Sort::Nat)
        } else if self.eat_sym("(") {
            let s = self.sort()?;
            self.expect_sym(")")?;
            Ok(s)
        } else {
            self.unexpected("a sort")
        }
    }

    fn bracket_sort(&mut self) -> Result<Sort> {
        self.expect_sym("[")?;
        let s = self.sort()?;
        self.expect_sym("]")?;
        Ok(s)
    }

    /// `(x y : σ)`
    fn typed_group(&mut self) -> Result<Vec<(Name, Sort)>> {
        self.expect_sym("(")?;
        let mut names = vec![self.ident()?];
        while matches!(self.peek(), Tok::Ident(_)) {
            names.push(self.ident()?);
        }
        self.expect_sym(":")?;
        let s = self.sort()?;
        self.expect_sym(")")?;
        Ok(names.into_iter().map(|n| (n, s.clone())).collect())
    }

    // ---- terms ----

    fn term(&mut self) -> Result<Term> {
        if self.eat_kw("fun") {
            let mut binders = Vec::new();
            loop {
                binders.extend(self.typed_group()?);
                if !self.is_sym("(") {
                    break;
                }
            }
            self.expect_sym("=>")?;
            let body = self.term()?;
            Ok(binders.into_iter().rev().fold(body, |b, (x, s)| Term::lam(x, s, b)))
        } else {
            self.sterm()
        }
    }

    fn sterm(&mut self) -> Result<Term> {
        if self.eat_kw("S") {
            Ok(Term::succ(self.sterm()?))
        } else {
            self.app_term()
        }
    }

    fn starts_term_atom(&self) -> bool {
        matches!(self.peek(), Tok::Ident(_) | Tok::Num(_)) || self.is_sym("(")
    }

    fn app_term(&mut self) -> Result<Term> {
        let mut head = if self.eat_kw("rec") {
            let s = self.bracket_sort()?;
            let base = self.term_atom()?;
            let step = self.term_atom()?;
            let scrut = self.term_atom()?;
            Term::rec(s, base, step, scrut)
        } else {
            self.term_atom()?
        };
        while self.starts_term_atom() {
            head = Term::app(head, self.term_atom()?);
        }
        Ok(head)
    }

    fn term_atom(&mut self) -> Result<Term> {
        match self.peek().clone() {
            Tok::Ident(_) => Ok(Term::Var(self.ident()?)),
            Tok::Num(n) => {
                self.bump();
                Ok(Term::numeral(n))
            }
            Tok::Sym("(") => {
                self.bump();
                let t = self.term()?;
                self.expect_sym(")")?;
                Ok(t)
            }
            _ => self.unexpected("a term"),
        }
    }

    // ---- formulas ----

    fn formula(&mut self) -> Result<Formula> {
        let lhs = self.disj()?;
        if self.eat_sym("->") {
            Ok(Formula::imp(lhs, self.formula()?))
        } else {
            Ok(lhs)
        }
    }

    fn disj(&mut self) -> Result<Formula> {
        let lhs = self.conj()?;
        if self.eat_sym("\\/") {
            Ok(Formula::or(lhs, self.disj()?))
        } else {
            Ok(lhs)
        }
    }

    fn conj(&mut self) -> Result<Formula> {
        let lhs = self.formula_atom()?;
        if self.eat_sym("/\\") {
            Ok(Formula::and(lhs, self.conj()?))
        } else {
            Ok(lhs)
        }
    }

    fn formula_atom(&mut self) -> Result<Formula> {
        if self.is_kw("forall") || self.is_kw("exists") {
            let universal = self.is_kw("forall");
            self.bump();
            let mut names = vec![self.ident()?];
            while matches!(self.peek(), Tok::Ident(_)) {
                names.push(self.ident()?);
            }
            self.expect_sym(":")?;
            let s = self.sort()?;
            self.expect_sym(".")?;
            let body = self.formula()?;
            return Ok(names.into_iter().rev().fold(body, |b, x| {
                if universal {
                    Formula::forall(x, s.clone(), b)
                } else {
                    Formula::exists(x, s.clone(), b)
                }
            }));
        }
        if self.eat_kw("bot") {
            return Ok(Formula::Bot);
        }
        if self.eat_kw("top") {
            return Ok(Formula::top());
        }
        if self.eat_kw("null") {
            return Ok(Formula::Null(self.sterm()?));
        }
        if self.is_sym("(") {
            let save = self.i;
            self.bump();
            if let Ok(phi) = self.formula() {
                if self.eat_sym(")") && !self.is_sym("=") && !self.is_sym("!=") {
                    return Ok(phi);
                }
            }
            self.i = save;
        }
        self.equation()
    }

    fn equation(&mut self) -> Result<Formula> {
        let lhs = self.sterm()?;
        let negated = if self.eat_sym("=") {
            false
        } else if self.eat_sym("!=") {
            true
        } else {
            return self.unexpected("`=` or `!=`");
        };
        let s = if self.is_sym("[") { self.bracket_sort()? } else { Sort::Nat };
        let rhs = self.sterm()?;
        Ok(if negated { Formula::neq(s, lhs, rhs) } else { Formula::Eq(s, lhs, rhs) })
    }

    // ---- proofs ----

    fn proof(&mut self) -> Result<ProofTerm> {
        if self.eat_kw("fun") {
            enum B {
                T(Name, Sort),
                P(Name, Formula),
            }
            let mut binders = Vec::new();
            loop {
                if self.is_sym("(") {
                    binders.extend(self.typed_group()?.into_iter().map(|(x, s)| B::T(x, s)));
                } else if self.eat_sym("[") {
                    let h = self.ident()?;
                    self.expect_sym(":")?;
                    let phi = self.formula()?;
                    self.expect_sym("]")?;
                    binders.push(B::P(h, phi));
                } else {
                    break;
                }
            }
            if binders.is_empty() {
                return self.unexpected("a binder `(x : σ)` or `[h : Φ]`");
            }
            self.expect_sym("=>")?;
            let body = self.proof()?;
            return Ok(binders.into_iter().rev().fold(body, |b, binder| match binder {
                B::T(x, s) => ProofTerm::tlam(x, s, b),
                B::P(h, phi) => ProofTerm::plam(h, phi, b),
            }));
        }
        if self.eat_kw("unpack") {
            self.expect_sym("[")?;
            let x = self.ident()?;
            self.expect_sym(",")?;
            let h = self.ident()?;
            self.expect_sym("]")?;
            self.expect_sym(":=")?;
            let m = self.proof()?;
            self.expect_kw("in")?;
            let body = self.proof()?;
            return Ok(ProofTerm::ex_elim(m, x, h, body));
        }
        self.proof_app()
    }

    fn starts_proof_atom(&self) -> bool {
        match self.peek() {
            Tok::Ident(_) => true,
            Tok::Sym(s) => *s == "(" || *s == "{",
            Tok::Kw(k) => matches!(*k, "refl" | "peel" | "efq" | "wit" | "ind" | "ext" | "apppm"),
            _ => false,
        }
    }

    fn proof_app(&mut self) -> Result<ProofTerm> {
        if self.is_sym("{") {
            return self.unexpected("a proof");
        }
        let mut head = self.proof_postfix()?;
        while self.starts_proof_atom() {
            if self.eat_sym("{") {
                let t = self.term()?;
                self.expect_sym("}")?;
                head = ProofTerm::tapp(head, t);
            } else {
                head = ProofTerm::papp(head, self.proof_postfix()?);
            }
        }
        Ok(head)
    }

    fn proof_postfix(&mut self) -> Result<ProofTerm> {
        let mut p = self.proof_atom()?;
        while self.is_sym(".") {
            match self.peek_at(1) {
                Tok::Num(1) => p = ProofTerm::fst(p),
                Tok::Num(2) => p = ProofTerm::snd(p),
                _ => {
                    self.bump();
                    return self.unexpected("projection index 1 or 2");
                }
            }
            self.bump();
            self.bump();
        }
        Ok(p)
    }

    fn opt_sort(&mut self) -> Result<Sort> {
        if self.is_sym("[") {
            self.bracket_sort()
        } else {
            Ok(Sort::Nat)
        }
    }

    fn two_sorts(&mut self) -> Result<(Sort, Sort)> {
        self.expect_sym("[")?;
        let a = self.sort()?;
        self.expect_sym(",")?;
        let b = self.sort()?;
        self.expect_sym("]")?;
        Ok((a, b))
    }

    fn motive(&mut self) -> Result<(Name, Formula)> {
        let x = self.ident()?;
        self.expect_sym(".")?;
        Ok((x, self.formula()?))
    }

    fn proof_atom(&mut self) -> Result<ProofTerm> {
        match self.peek().clone() {
            Tok::Ident(_) => Ok(ProofTerm::PVar(self.ident()?)),
            Tok::Kw("refl") => {
                self.bump();
                let s = self.opt_sort()?;
                Ok(ProofTerm::Refl(s, self.term_atom()?))
            }
            Tok::Kw("peel") => {
                self.bump();
                let s = self.opt_sort()?;
                self.expect_sym("(")?;
                let t = self.term()?;
                self.expect_sym(",")?;
                let u = self.term()?;
                self.expect_sym(",")?;
                let eq = self.proof()?;
                self.expect_sym(",")?;
                let (x, motive) = self.motive()?;
                self.expect_sym(",")?;
                let base = self.proof()?;
                self.expect_sym(")")?;
                Ok(ProofTerm::peel(s, t, u, eq, x, motive, base))
            }
            Tok::Kw("efq") => {
                self.bump();
                self.expect_sym("(")?;
                let p = self.proof()?;
                self.expect_sym(",")?;
                let phi = self.formula()?;
                self.expect_sym(")")?;
                Ok(ProofTerm::efq(p, phi))
            }
            Tok::Kw("wit") => {
                self.bump();
                self.expect_sym("(")?;
                let t = self.term()?;
                self.expect_sym(",")?;
                let p = self.proof()?;
                self.expect_sym(",")?;
                let phi = self.formula()?;
                self.expect_sym(")")?;
                Ok(ProofTerm::ex_intro(t, p, phi))
            }
            Tok::Kw("ind") => {
                self.bump();
                self.expect_sym("(")?;
                let (x, motive) = self.motive()?;
                self.expect_sym(",")?;
                let base = self.proof()?;
                self.expect_sym(",")?;
                let step = self.proof()?;
                self.expect_sym(",")?;
                let t = self.term()?;
                self.expect_sym(")")?;
                Ok(ProofTerm::ind(x, motive, base, step, t))
            }
            Tok::Kw("ext") => {
                self.bump();
                let (d, c) = self.two_sorts()?;
                self.expect_sym("(")?;
                let p = self.proof()?;
                self.expect_sym(")")?;
                Ok(ProofTerm::ext(d, c, p))
            }
            Tok::Kw("apppm") => {
                self.bump();
                let (d, c) = self.two_sorts()?;
                self.expect_sym("(")?;
                let f = self.proof()?;
                self.expect_sym(",")?;
                let t = self.term()?;
                self.expect_sym(",")?;
                let u = self.term()?;
                self.expect_sym(",")?;
                let a = self.proof()?;
                self.expect_sym(")")?;
                Ok(ProofTerm::app_pm(d, c, f, t, u, a))
            }
            Tok::Sym("(") => {
                self.bump();
                let a = self.proof()?;
                if self.eat_sym(",") {
                    let b = self.proof()?;
                    self.expect_sym(")")?;
                    Ok(ProofTerm::pair(a, b))
                } else {
                    self.expect_sym(")")?;
                    Ok(a)
                }
            }
            _ => self.unexpected("a proof"),
        }
    }

    // ---- files ----

    fn file(&mut self) -> Result<SourceFile> {
        let mut logic = Logic::Lhaw;
        if self.eat_kw("logic") {
            logic = if self.eat_kw("lhaw") {
                Logic::Lhaw
            } else if self.eat_kw("lehaw") {
                Logic::Lehaw
            } else {
                return self.unexpected("`lhaw` or `lehaw`");
            };
        }
        let generated = self.eat_kw("generated");
        if generated {
            self.opts.allow_reserved = true;
        }
        let mut file = SourceFile { logic, generated, decls: Vec::new() };
        let mut names = HashSet::new();
        let mut defs = TermSubst::new();
        loop {
            let pos = self.pos();
            if self.eat_kw("def") {
                let name = self.ident()?;
                if !names.insert(name.clone()) {
                    return Err(SurfaceError::DuplicateName { pos, name });
                }
                self.expect_sym(":")?;
                let sort = self.sort()?;
                self.expect_sym(":=")?;
                let body = self.term()?.subst(&defs);
                defs.insert(name.clone(), body.clone());
                file.decls.push(Decl::Def(DefDecl { name, sort, body, pos }));
            } else if self.eat_kw("theorem") {
                let name = self.ident()?;
                if !names.insert(name.clone()) {
                    return Err(SurfaceError::DuplicateName { pos, name });
                }
                let th = self.theorem_rest(name, pos, &defs)?;
                file.decls.push(Decl::Theorem(th));
            } else if matches!(self.peek(), Tok::Eof) {
                return Ok(file);
            } else {
                return self.unexpected("`def`, `theorem` or end of input");
            }
        }
    }

    fn theorem_rest(&mut self, name: Name, pos: Pos, defs: &TermSubst) -> Result<TheoremDecl> {
        let mut sig = Signature::new();
        let mut ctx = Context::new();
        loop {
            let bpos = self.pos();
            if self.is_sym("(") {
                for (x, s) in self.typed_group()? {
                    if sig.contains(&x) {
                        return Err(SurfaceError::DuplicateName { pos: bpos, name: x });
                    }
                    sig.push(x, s);
                }
            } else if self.eat_sym("[") {
                let h = self.ident()?;
                if ctx.lookup(&h).is_some() {
                    return Err(SurfaceError::DuplicateName { pos: bpos, name: h });
                }
                self.expect_sym(":")?;
                let phi = self.formula()?;
                self.expect_sym("]")?;
                ctx.push(h, phi);
            } else {
                break;
            }
        }
        self.expect_sym(":")?;
        let goal = self.formula()?;
        self.expect_sym(":=")?;
        let proof = self.proof()?;
        // Declared variables shadow definitions of the same name.
        let theta: TermSubst = defs.iter().filter(|(d, _)| !sig.contains(d)).map(|(d, t)| (d.clone(), t.clone())).collect();
        Ok(TheoremDecl {
            name,
            ctx: ctx.subst(&theta),
            goal: goal.subst(&theta),
            proof: proof.subst(&theta, &Default::default()),
            sig,
            pos,
        })
    }
}

fn fragment<T>(text: &str, opts: ParseOptions, f: impl FnOnce(&mut Parser) -> Result<T>) -> Result<T> {
    let mut p = Parser::new(text, opts)?;
    let out = f(&mut p)?;
    p.expect_eof()?;
    Ok(out)
}

pub fn parse_sort(text: &str) -> Result<Sort> {
    fragment(text, ParseOptions::default(), Parser::sort)
}

pub fn parse_term(text: &str, opts: ParseOptions) -> Result<Term> {
    fragment(text, opts, Parser::term)
}

pub fn parse_formula(text: &str, opts: ParseOptions) -> Result<Formula> {
    fragment(text, opts, Parser::formula)
}

pub fn parse_proof(text: &str, opts: ParseOptions) -> Result<ProofTerm> {
    fragment(text, opts, Parser::proof)
}

pub fn parse_file(text: &str) -> Result<SourceFile> {
    fragment(text, ParseOptions::default(), Parser::file)
}
