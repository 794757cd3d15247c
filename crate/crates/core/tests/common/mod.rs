//! Shared generators and independent oracles for the integration tests.
//!
//! Generators read their decisions from a tape of random numbers drawn by
//! proptest, so every generated object is reproducible and shrinks along
//! with the tape. When the tape runs out every choice becomes 0, and
//! choice 0 is always a leaf, so generation terminates.
//!
//! The oracles share no code with the library: terms are evaluated
//! denotationally, and alpha-equivalence and substitution are computed on
//! a locally nameless representation.

#![allow(dead_code)]

use std::collections::HashMap;
use std::rc::Rc;

use hawk::rewrite::normalize_term;
use hawk::syntax::{Formula, Logic, Name, ProofTerm, Side, Sort, Term};
use proptest::prelude::*;

// ---------------------------------------------------------------- tape

#[derive(Clone, Debug)]
pub struct Tape {
    data: Vec<u32>,
    pos: usize,
}

impl Tape {
    pub fn new(data: Vec<u32>) -> Self {
        Tape { data, pos: 0 }
    }

    /// A choice in `0..n`; 0 once the tape is exhausted.
    pub fn pick(&mut self, n: usize) -> usize {
        assert!(n > 0);
        let v = self.data.get(self.pos).copied().unwrap_or(0);
        self.pos += 1;
        v as usize % n
    }

    pub fn coin(&mut self) -> bool {
        self.pick(2) == 1
    }
}

pub fn tape() -> impl Strategy<Value = Tape> {
    prop::collection::vec(any::<u32>(), 0..192).prop_map(Tape::new)
}

// ---------------------------------------------------------------- sorts

pub fn nn() -> Sort {
    Sort::arrow(Sort::Nat, Sort::Nat)
}

pub fn gen_sort(t: &mut Tape, depth: usize) -> Sort {
    if depth == 0 || t.pick(3) == 0 {
        return Sort::Nat;
    }
    Sort::arrow(gen_sort(t, depth - 1), gen_sort(t, depth - 1))
}

// ---------------------------------------------------------------- terms

/// Binder names for term-level lambdas. Small on purpose, so that
/// shadowing is common.
const POOL: [&str; 6] = ["x", "y", "z", "f", "g", "a"];

fn pool_name(t: &mut Tape) -> Name {
    POOL[t.pick(POOL.len())].to_string()
}

/// Innermost-first lookup table of term variables in scope.
pub type Env = Vec<(Name, Sort)>;

fn visible(env: &Env) -> Vec<(Name, Sort)> {
    let mut seen = Vec::<Name>::new();
    let mut out = Vec::new();
    for (x, s) in env.iter().rev() {
        if !seen.contains(x) {
            seen.push(x.clone());
            out.push((x.clone(), s.clone()));
        }
    }
    out
}

fn small_nat(t: &mut Tape, env: &Env) -> Term {
    let nats: Vec<Name> = visible(env).into_iter().filter(|(_, s)| s.is_nat()).map(|(x, _)| x).collect();
    if !nats.is_empty() && t.coin() {
        Term::var(nats[t.pick(nats.len())].clone())
    } else {
        Term::numeral(t.pick(4) as u64)
    }
}

/// A well-sorted term of sort `s` whose free variables come from `env`.
pub fn gen_term(t: &mut Tape, env: &mut Env, s: &Sort, depth: usize) -> Term {
    match s.as_arrow() {
        None => gen_nat(t, env, depth),
        Some((d, c)) => gen_arrow(t, env, d, c, depth),
    }
}

fn with_binder<R>(env: &mut Env, x: &Name, s: &Sort, f: impl FnOnce(&mut Env) -> R) -> R {
    env.push((x.clone(), s.clone()));
    let r = f(env);
    env.pop();
    r
}

fn gen_nat(t: &mut Tape, env: &mut Env, depth: usize) -> Term {
    let options = if depth == 0 { 3 } else { 8 };
    match t.pick(options) {
        0 => Term::Zero,
        1 => Term::numeral(t.pick(4) as u64),
        2 => small_nat(t, env),
        3 => Term::succ(gen_nat(t, env, depth - 1)),
        4 => {
            let funs: Vec<(Name, Sort)> = visible(env).into_iter().filter(|(_, s)| !s.is_nat()).collect();
            if funs.is_empty() {
                return Term::succ(gen_nat(t, env, depth - 1));
            }
            let (f, mut s) = funs[t.pick(funs.len())].clone();
            let mut head = Term::var(f);
            while let Some((d, c)) = s.as_arrow() {
                let (d, c) = (d.clone(), c.clone());
                head = Term::app(head, gen_term(t, env, &d, depth - 1));
                s = c;
            }
            head
        }
        5 => {
            let base = gen_nat(t, env, depth - 1);
            let (a, b) = (pool_name(t), pool_name(t));
            let body = with_binder(env, &a, &Sort::Nat, |env| with_binder(env, &b, &Sort::Nat, |env| gen_nat(t, env, depth - 1)));
            let step = Term::lam(a, Sort::Nat, Term::lam(b, Sort::Nat, body));
            Term::rec(Sort::Nat, base, step, small_nat(t, env))
        }
        6 => {
            let s = if t.coin() { Sort::Nat } else { nn() };
            let x = pool_name(t);
            let body = with_binder(env, &x, &s, |env| gen_nat(t, env, depth - 1));
            let arg = gen_term(t, env, &s, depth - 1);
            Term::app(Term::lam(x, s, body), arg)
        }
        _ => {
            let f = gen_arrow(t, env, &Sort::Nat, &Sort::Nat, depth - 1);
            Term::app(f, gen_nat(t, env, depth - 1))
        }
    }
}

fn gen_arrow(t: &mut Tape, env: &mut Env, d: &Sort, c: &Sort, depth: usize) -> Term {
    let s = Sort::arrow(d.clone(), c.clone());
    let options = if depth == 0 { 2 } else { 4 };
    match t.pick(options) {
        1 => {
            let hits: Vec<Name> = visible(env).into_iter().filter(|(_, vs)| *vs == s).map(|(x, _)| x).collect();
            if hits.is_empty() {
                gen_arrow(t, env, d, c, 0)
            } else {
                Term::var(hits[t.pick(hits.len())].clone())
            }
        }
        2 => {
            let x = pool_name(t);
            let body = with_binder(env, &x, &Sort::Nat, |env| gen_arrow(t, env, d, c, depth - 1));
            Term::app(Term::lam(x, Sort::Nat, body), gen_nat(t, env, depth - 1))
        }
        3 => {
            let base = gen_arrow(t, env, d, c, depth - 1);
            let (h, k) = (pool_name(t), pool_name(t));
            let body = with_binder(env, &h, &s, |env| with_binder(env, &k, &Sort::Nat, |env| gen_arrow(t, env, d, c, depth - 1)));
            let step = Term::lam(h, s.clone(), Term::lam(k, Sort::Nat, body));
            Term::rec(s.clone(), base, step, small_nat(t, env))
        }
        _ => {
            let x = pool_name(t);
            let body = with_binder(env, &x, d, |env| gen_term(t, env, c, depth.saturating_sub(1)));
            Term::lam(x, d.clone(), body)
        }
    }
}

/// A closed term together with its sort.
pub fn closed_term() -> impl Strategy<Value = (Term, Sort)> {
    tape().prop_map(|mut t| {
        let s = gen_sort(&mut t, 2);
        let term = gen_term(&mut t, &mut Env::new(), &s, 3);
        (term, s)
    })
}

pub fn closed_nat_term() -> impl Strategy<Value = Term> {
    tape().prop_map(|mut t| gen_nat(&mut t, &mut Env::new(), 3))
}

// ---------------------------------------------------------------- formulas

pub fn gen_formula(t: &mut Tape, env: &mut Env, logic: Logic, depth: usize) -> Formula {
    let options = match (depth, logic) {
        (0, _) => 3,
        (_, Logic::Lhaw) => 7,
        (_, Logic::Lehaw) => 8,
    };
    let sub = depth.saturating_sub(1);
    match t.pick(options) {
        0 => Formula::eq_nat(gen_nat(t, env, 2), gen_nat(t, env, 2)),
        1 => Formula::Bot,
        2 => Formula::Null(gen_nat(t, env, 2)),
        3 => Formula::imp(gen_formula(t, env, logic, sub), gen_formula(t, env, logic, sub)),
        4 => Formula::and(gen_formula(t, env, logic, sub), gen_formula(t, env, logic, sub)),
        5 | 6 => {
            let x = pool_name(t);
            let s = gen_sort(t, 1);
            let body = with_binder(env, &x, &s, |env| gen_formula(t, env, logic, sub));
            if t.coin() {
                Formula::forall(x, s, body)
            } else {
                Formula::exists(x, s, body)
            }
        }
        _ => {
            let s = Sort::arrow(gen_sort(t, 1), Sort::Nat);
            Formula::Eq(s.clone(), gen_term(t, env, &s, 2), gen_term(t, env, &s, 2))
        }
    }
}

// ---------------------------------------------------------------- proofs

/// Generates a proof together with the formula it proves. The formula is
/// computed by the generator from the rule used, never by the kernel.
pub struct ProofGen<'t> {
    pub tape: &'t mut Tape,
    pub logic: Logic,
    pub sig: Env,
    pub ctx: Vec<(Name, Formula)>,
    counter: usize,
}

impl<'t> ProofGen<'t> {
    pub fn new(tape: &'t mut Tape, logic: Logic, sig: Env, ctx: Vec<(Name, Formula)>) -> Self {
        ProofGen { tape, logic, sig, ctx, counter: 0 }
    }

    /// Names outside the term pool, distinct across the whole run.
    pub fn fresh(&mut self, base: &str) -> Name {
        self.counter += 1;
        format!("{base}{}", self.counter)
    }

    fn term(&mut self, s: &Sort, depth: usize) -> Term {
        let mut env = self.sig.clone();
        gen_term(self.tape, &mut env, s, depth)
    }

    fn formula(&mut self, depth: usize) -> Formula {
        let mut env = self.sig.clone();
        gen_formula(self.tape, &mut env, self.logic, depth)
    }

    fn sort(&mut self) -> Sort {
        gen_sort(self.tape, 1)
    }

    pub fn proof(&mut self, depth: usize) -> (ProofTerm, Formula) {
        let options = match (depth, self.logic) {
            (0, _) => 3,
            (_, Logic::Lhaw) => 14,
            (_, Logic::Lehaw) => 18,
        };
        let sub = depth.saturating_sub(1);
        match self.tape.pick(options) {
            0 => {
                let t = self.term(&Sort::Nat, 2);
                (ProofTerm::Refl(Sort::Nat, t.clone()), Formula::eq_nat(t.clone(), t))
            }
            1 => {
                // Conversion: `refl t : t = nf(t)`.
                let t = self.term(&Sort::Nat, 2);
                let nf = normalize_term(&t).expect("generated terms normalize");
                (ProofTerm::Refl(Sort::Nat, t.clone()), Formula::eq_nat(t, nf))
            }
            2 => {
                if self.ctx.is_empty() {
                    let t = self.term(&Sort::Nat, 1);
                    return (ProofTerm::Refl(Sort::Nat, t.clone()), Formula::eq_nat(t.clone(), t));
                }
                let i = self.tape.pick(self.ctx.len());
                let (h, phi) = self.ctx[i].clone();
                (ProofTerm::pvar(h), phi)
            }
            3 => {
                let (a, pa) = self.proof(sub);
                let (b, pb) = self.proof(sub);
                (ProofTerm::pair(a, b), Formula::and(pa, pb))
            }
            4 => {
                let (a, pa) = self.proof(sub);
                let (b, pb) = self.proof(sub);
                if self.tape.coin() {
                    (ProofTerm::fst(ProofTerm::pair(a, b)), pa)
                } else {
                    (ProofTerm::snd(ProofTerm::pair(a, b)), pb)
                }
            }
            5 => {
                let hyp = self.formula(1);
                let xi = self.fresh("h");
                self.ctx.push((xi.clone(), hyp.clone()));
                let (body, phi) = self.proof(sub);
                self.ctx.pop();
                (ProofTerm::plam(xi, hyp.clone(), body), Formula::imp(hyp, phi))
            }
            6 => {
                let (arg, hyp) = self.proof(sub);
                let xi = self.fresh("h");
                self.ctx.push((xi.clone(), hyp.clone()));
                let (body, phi) = self.proof(sub);
                self.ctx.pop();
                (ProofTerm::papp(ProofTerm::plam(xi, hyp, body), arg), phi)
            }
            7 => {
                let (p, phi) = self.forall_intro(sub);
                (p, phi)
            }
            8 => {
                let (p, phi) = self.forall_intro(sub);
                let Formula::Forall(x, s, body) = &phi else { unreachable!() };
                let t = self.term(s, 2);
                let inst = body.subst1(x, &t);
                (ProofTerm::tapp(p, t), inst)
            }
            9 => self.exists_intro(sub),
            10 => {
                let (q, ex) = self.exists_intro(sub);
                let Formula::Exists(x, s, psi) = &ex else { unreachable!() };
                let (y, eta) = (self.fresh("v"), self.fresh("h"));
                self.sig.push((y.clone(), s.clone()));
                self.ctx.push((eta.clone(), psi.subst1(x, &Term::var(y.clone()))));
                let (body, c) = self.proof(sub);
                self.ctx.pop();
                self.sig.pop();
                let (body, c) = if c.has_free(&y) {
                    let y2 = self.fresh("v");
                    let target = Formula::exists(y2.clone(), s.clone(), c.subst1(&y, &Term::var(y2)));
                    (ProofTerm::ex_intro(Term::var(y.clone()), body, target.clone()), target)
                } else {
                    (body, c)
                };
                (ProofTerm::ex_elim(q, y, eta, body), c)
            }
            11 => {
                let t = self.term(&Sort::Nat, 2);
                let u = if self.tape.coin() { normalize_term(&t).expect("normalizes") } else { t.clone() };
                let (p0, phi0) = self.proof(sub);
                let z = self.fresh("v");
                let motive = Formula::and(phi0.clone(), Formula::eq_nat(Term::var(z.clone()), t.clone()));
                let base = ProofTerm::pair(p0, ProofTerm::Refl(Sort::Nat, t.clone()));
                let result = Formula::and(phi0, Formula::eq_nat(u.clone(), t.clone()));
                (ProofTerm::peel(Sort::Nat, t.clone(), u, ProofTerm::Refl(Sort::Nat, t), z, motive, base), result)
            }
            12 => {
                let (p0, phi0) = self.proof(sub);
                let (k, ih) = (self.fresh("v"), self.fresh("h"));
                let kv = Term::var(k.clone());
                let motive = Formula::and(phi0.clone(), Formula::eq_nat(kv.clone(), kv.clone()));
                let base = ProofTerm::pair(p0, ProofTerm::Refl(Sort::Nat, Term::Zero));
                let step = ProofTerm::tlam(
                    k.clone(),
                    Sort::Nat,
                    ProofTerm::plam(
                        ih.clone(),
                        motive.clone(),
                        ProofTerm::pair(ProofTerm::fst(ProofTerm::pvar(ih)), ProofTerm::Refl(Sort::Nat, Term::succ(kv))),
                    ),
                );
                let scrut = self.term(&Sort::Nat, 2);
                let result = Formula::and(phi0, Formula::eq_nat(scrut.clone(), scrut.clone()));
                (ProofTerm::ind(k, motive, base, step, scrut), result)
            }
            13 => {
                let target = self.formula(1);
                let xi = self.fresh("h");
                (
                    ProofTerm::plam(xi.clone(), Formula::Bot, ProofTerm::efq(ProofTerm::pvar(xi), target.clone())),
                    Formula::imp(Formula::Bot, target),
                )
            }
            14 => {
                let s = Sort::arrow(self.sort(), Sort::Nat);
                let f = self.term(&s, 2);
                (ProofTerm::Refl(s.clone(), f.clone()), Formula::Eq(s, f.clone(), f))
            }
            15 => {
                let d = self.sort();
                let s = Sort::arrow(d.clone(), Sort::Nat);
                let f = self.term(&s, 2);
                let x = self.fresh("v");
                let premise = ProofTerm::tlam(x.clone(), d.clone(), ProofTerm::Refl(Sort::Nat, Term::app(f.clone(), Term::var(x))));
                (ProofTerm::ext(d, Sort::Nat, premise), Formula::Eq(s, f.clone(), f))
            }
            16 => {
                let f = self.term(&nn(), 2);
                let a = self.term(&Sort::Nat, 2);
                let fa = Term::app(f.clone(), a.clone());
                (
                    ProofTerm::app_pm(
                        Sort::Nat,
                        Sort::Nat,
                        ProofTerm::Refl(nn(), f),
                        a.clone(),
                        a.clone(),
                        ProofTerm::Refl(Sort::Nat, a),
                    ),
                    Formula::eq_nat(fa.clone(), fa),
                )
            }
            _ => {
                let s = Sort::arrow(self.sort(), Sort::Nat);
                let f = self.term(&s, 2);
                let (p0, phi0) = self.proof(sub);
                let z = self.fresh("v");
                let motive = Formula::and(phi0.clone(), Formula::Eq(s.clone(), Term::var(z.clone()), f.clone()));
                let base = ProofTerm::pair(p0, ProofTerm::Refl(s.clone(), f.clone()));
                let result = Formula::and(phi0, Formula::Eq(s.clone(), f.clone(), f.clone()));
                (ProofTerm::peel(s.clone(), f.clone(), f.clone(), ProofTerm::Refl(s, f), z, motive, base), result)
            }
        }
    }

    fn forall_intro(&mut self, depth: usize) -> (ProofTerm, Formula) {
        let x = self.fresh("v");
        let s = self.sort();
        self.sig.push((x.clone(), s.clone()));
        let (body, phi) = self.proof(depth);
        self.sig.pop();
        (ProofTerm::tlam(x.clone(), s.clone(), body), Formula::forall(x, s, phi))
    }

    fn exists_intro(&mut self, depth: usize) -> (ProofTerm, Formula) {
        let (p, phi) = self.proof(depth);
        let s = self.sort();
        let x = self.fresh("v");
        // Abstract a declared variable of the right sort when there is one.
        let candidates: Vec<Name> = self.sig.iter().filter(|(_, vs)| *vs == s).map(|(y, _)| y.clone()).collect();
        let (witness, body) = if !candidates.is_empty() && self.tape.coin() {
            let y = candidates[self.tape.pick(candidates.len())].clone();
            (Term::var(y.clone()), phi.subst1(&y, &Term::var(x.clone())))
        } else {
            (self.term(&s, 2), phi)
        };
        let target = Formula::exists(x, s, body);
        (ProofTerm::ex_intro(witness, p, target.clone()), target)
    }
}

/// A generated judgment: signature, context, proof, and formula.
#[derive(Clone, Debug)]
pub struct GenJudgment {
    pub logic: Logic,
    pub sig: Env,
    pub ctx: Vec<(Name, Formula)>,
    pub proof: ProofTerm,
    pub goal: Formula,
}

/// Judgments over the fixed signature `a : N, g : N → N` and one
/// hypothesis mentioning both.
pub fn judgment(logic: Logic, depth: usize) -> impl Strategy<Value = GenJudgment> {
    tape().prop_map(move |mut t| {
        let sig: Env = vec![("a".into(), Sort::Nat), ("g".into(), nn())];
        let hyp = Formula::eq_nat(Term::app(Term::var("g"), Term::var("a")), Term::var("a"));
        let ctx = vec![("hyp".to_string(), hyp)];
        let mut g = ProofGen::new(&mut t, logic, sig.clone(), ctx.clone());
        let (proof, goal) = g.proof(depth);
        GenJudgment { logic, sig, ctx, proof, goal }
    })
}

/// Closed judgments with an empty context.
pub fn closed_judgment(logic: Logic, depth: usize) -> impl Strategy<Value = GenJudgment> {
    tape().prop_map(move |mut t| {
        let mut g = ProofGen::new(&mut t, logic, Env::new(), Vec::new());
        let (proof, goal) = g.proof(depth);
        GenJudgment { logic, sig: Env::new(), ctx: Vec::new(), proof, goal }
    })
}

// ---------------------------------------------------------------- evaluator

/// Set-theoretic values of System T.
#[derive(Clone)]
pub enum Value {
    Nat(u64),
    Fun(Rc<dyn Fn(Value) -> Value>),
}

impl Value {
    pub fn nat(&self) -> u64 {
        match self {
            Value::Nat(n) => *n,
            Value::Fun(_) => panic!("oracle: expected a number"),
        }
    }

    pub fn apply(&self, v: Value) -> Value {
        match self {
            Value::Fun(f) => f(v),
            Value::Nat(_) => panic!("oracle: applied a number"),
        }
    }
}

/// Denotation of a term in an environment of values.
pub fn eval(t: &Term, env: &HashMap<Name, Value>) -> Value {
    match t {
        Term::Var(x) => env.get(x).cloned().unwrap_or_else(|| panic!("oracle: unbound {x}")),
        Term::Zero => Value::Nat(0),
        Term::Succ(u) => Value::Nat(eval(u, env).nat() + 1),
        Term::App(f, a) => eval(f, env).apply(eval(a, env)),
        Term::Lam(x, _, body) => {
            let (x, body, env) = (x.clone(), body.clone(), env.clone());
            Value::Fun(Rc::new(move |v| {
                let mut inner = env.clone();
                inner.insert(x.clone(), v);
                eval(&body, &inner)
            }))
        }
        Term::Rec(_, base, step, n) => {
            let n = eval(n, env).nat();
            let step = eval(step, env);
            let mut acc = eval(base, env);
            for i in 0..n {
                acc = step.apply(acc).apply(Value::Nat(i));
            }
            acc
        }
    }
}

pub fn eval_closed(t: &Term) -> Value {
    eval(t, &HashMap::new())
}

// ---------------------------------------------------------------- nameless

/// Locally nameless terms: bound variables are de Bruijn indices, free
/// variables keep their names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Db {
    Free(Name),
    Bound(usize),
    Lam(Sort, Box<Db>),
    App(Box<Db>, Box<Db>),
    Zero,
    Succ(Box<Db>),
    Rec(Sort, Box<Db>, Box<Db>, Box<Db>),
}

pub fn db_term(t: &Term) -> Db {
    fn go(t: &Term, scope: &mut Vec<Name>) -> Db {
        match t {
            Term::Var(x) => match scope.iter().rev().position(|y| y == x) {
                Some(i) => Db::Bound(i),
                None => Db::Free(x.clone()),
            },
            Term::Lam(x, s, b) => {
                scope.push(x.clone());
                let body = go(b, scope);
                scope.pop();
                Db::Lam(s.clone(), Box::new(body))
            }
            Term::App(f, a) => Db::App(Box::new(go(f, scope)), Box::new(go(a, scope))),
            Term::Zero => Db::Zero,
            Term::Succ(u) => Db::Succ(Box::new(go(u, scope))),
            Term::Rec(s, b, st, n) => {
                Db::Rec(s.clone(), Box::new(go(b, scope)), Box::new(go(st, scope)), Box::new(go(n, scope)))
            }
        }
    }
    go(t, &mut Vec::new())
}

/// Substitutes a free name. The replacement has no dangling indices, so
/// no shifting is needed.
pub fn db_subst(t: &Db, x: &str, u: &Db) -> Db {
    let go = |t: &Db| Box::new(db_subst(t, x, u));
    match t {
        Db::Free(y) if y == x => u.clone(),
        Db::Free(_) | Db::Bound(_) | Db::Zero => t.clone(),
        Db::Lam(s, b) => Db::Lam(s.clone(), go(b)),
        Db::App(f, a) => Db::App(go(f), go(a)),
        Db::Succ(a) => Db::Succ(go(a)),
        Db::Rec(s, b, st, n) => Db::Rec(s.clone(), go(b), go(st), go(n)),
    }
}

/// Renames every free name with `f`.
pub fn db_rename(t: &Db, f: &dyn Fn(&str) -> Name) -> Db {
    let go = |t: &Db| Box::new(db_rename(t, f));
    match t {
        Db::Free(y) => Db::Free(f(y)),
        Db::Bound(_) | Db::Zero => t.clone(),
        Db::Lam(s, b) => Db::Lam(s.clone(), go(b)),
        Db::App(a, b) => Db::App(go(a), go(b)),
        Db::Succ(a) => Db::Succ(go(a)),
        Db::Rec(s, b, st, n) => Db::Rec(s.clone(), go(b), go(st), go(n)),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DbF {
    Eq(Sort, Db, Db),
    Bot,
    Null(Db),
    Imp(Box<DbF>, Box<DbF>),
    And(Box<DbF>, Box<DbF>),
    All(Sort, Box<DbF>),
    Ex(Sort, Box<DbF>),
}

pub fn db_formula(phi: &Formula) -> DbF {
    fn term_in(t: &Term, scope: &[Name]) -> Db {
        // Close over the quantifier scope by wrapping in lambdas and
        // stripping them again.
        let mut wrapped = t.clone();
        for x in scope.iter().rev() {
            wrapped = Term::lam(x.clone(), Sort::Nat, wrapped);
        }
        let mut d = db_term(&wrapped);
        for _ in scope {
            d = match d {
                Db::Lam(_, b) => *b,
                _ => unreachable!(),
            };
        }
        d
    }
    fn go(phi: &Formula, scope: &mut Vec<Name>) -> DbF {
        match phi {
            Formula::Eq(s, a, b) => DbF::Eq(s.clone(), term_in(a, scope), term_in(b, scope)),
            Formula::Bot => DbF::Bot,
            Formula::Null(t) => DbF::Null(term_in(t, scope)),
            Formula::Imp(a, b) => DbF::Imp(Box::new(go(a, scope)), Box::new(go(b, scope))),
            Formula::And(a, b) => DbF::And(Box::new(go(a, scope)), Box::new(go(b, scope))),
            Formula::Forall(x, s, b) | Formula::Exists(x, s, b) => {
                scope.push(x.clone());
                let body = Box::new(go(b, scope));
                scope.pop();
                if matches!(phi, Formula::Forall(..)) {
                    DbF::All(s.clone(), body)
                } else {
                    DbF::Ex(s.clone(), body)
                }
            }
        }
    }
    go(phi, &mut Vec::new())
}

/// Free names of a nameless term.
pub fn db_free(t: &Db, acc: &mut Vec<Name>) {
    match t {
        Db::Free(x) => {
            if !acc.contains(x) {
                acc.push(x.clone())
            }
        }
        Db::Bound(_) | Db::Zero => {}
        Db::Lam(_, b) | Db::Succ(b) => db_free(b, acc),
        Db::App(a, b) => {
            db_free(a, acc);
            db_free(b, acc);
        }
        Db::Rec(_, b, st, n) => {
            db_free(b, acc);
            db_free(st, acc);
            db_free(n, acc);
        }
    }
}

/// Renames one bound variable of a term, if it has a binder, to `fresh`.
/// The result is alpha-equivalent when `fresh` is unused.
pub fn rename_first_binder(t: &Term, fresh: &str) -> Term {
    match t {
        Term::Lam(x, s, b) => {
            let body = b.subst1(x, &Term::var(fresh));
            Term::lam(fresh, s.clone(), body)
        }
        Term::App(f, a) => Term::app(rename_first_binder(f, fresh), (**a).clone()),
        Term::Succ(a) => Term::succ(rename_first_binder(a, fresh)),
        Term::Rec(s, b, st, n) => Term::rec(s.clone(), rename_first_binder(b, fresh), (**st).clone(), (**n).clone()),
        _ => t.clone(),
    }
}

pub fn side(i: u8) -> Side {
    if i == 1 {
        Side::Left
    } else {
        Side::Right
    }
}
