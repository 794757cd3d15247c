use super::*;
use crate::kernel::{check_proof, infer_sort};
use crate::surface::{parse_formula, parse_proof, parse_term, ParseOptions};

fn t(s: &str) -> Term {
    parse_term(s, ParseOptions::default()).unwrap()
}

fn f(s: &str) -> Formula {
    parse_formula(s, ParseOptions::default()).unwrap()
}

fn p(s: &str) -> ProofTerm {
    parse_proof(s, ParseOptions::default()).unwrap()
}

fn nn() -> Sort {
    Sort::arrow(Sort::Nat, Sort::Nat)
}

fn sample_sorts() -> Vec<Sort> {
    Sort::all_up_to_depth(2)
}

fn assert_accepted(logic: Logic, sig: &Signature, ctx: &Context, proof: &ProofTerm, goal: &Formula) {
    let report = check_proof(logic, sig, ctx, proof, goal);
    if let Some(r) = report.rejection {
        panic!("rejected: {r}\n  goal: {goal}\n  proof: {proof}");
    }
}

/// `Δ¹,Δ² ; Δ^pm`
fn pm_env(sig: &Signature) -> (Signature, Context) {
    (translate_signature(sig), sig_to_pm_context(sig))
}

#[test]
fn eqpm_shapes() {
    let f_ = Term::var("f");
    let g = Term::var("g");
    assert_eq!(eqpm(&nn(), &f_, &g).to_string(), "forall x:N. forall y:N. x = y -> f x = g y");
    assert_eq!(ext(&nn(), &f_, &g).to_string(), "forall x:N. f x = g x");
    assert_eq!(eqpm(&nn(), &Term::var("x"), &Term::var("y")).to_string(), "forall x':N. forall y':N. x' = y' -> x x' = y y'");
}

#[test]
fn witnesses_check_at_every_small_sort() {
    for s in sample_sorts() {
        for w in [Witness::Sym, Witness::Trans, Witness::Refl] {
            assert_accepted(Logic::Lhaw, &Signature::new(), &Context::new(), &per_witness(w, &s), &witness_type(w, &s));
        }
    }
}

#[test]
fn collaps_checks_in_lehaw() {
    for s in sample_sorts() {
        assert_accepted(Logic::Lehaw, &Signature::new(), &Context::new(), &collaps(&s), &collaps_type(&s));
    }
}

#[test]
fn term_translation() {
    let add = "fun (x:N)(y:N) => rec[N] x (fun (a:N)(b:N) => S a) y";
    let cases = [
        (Signature::new(), "0"),
        (Signature::new(), "S (S 0)"),
        (Signature::new().with("z", Sort::Nat), "S z"),
        (Signature::new(), add),
        (Signature::new().with("g", nn()), "fun (x:N) => g (g x)"),
        (Signature::new().with("n", Sort::Nat), "rec[N -> N] (fun (x:N) => x) (fun (h:N -> N)(k:N) => fun (y:N) => h (S y)) n"),
        (Signature::new(), "(fun (x:N) => fun (x:N) => x) 0"),
    ];
    for (sig, src) in cases {
        let term = t(src);
        let s = infer_sort(&sig, &term).unwrap();
        let (sig2, ctx) = pm_env(&sig);
        let goal = eqpm(&s, &dup_term(&term, 1), &dup_term(&term, 2));
        assert_accepted(Logic::Lhaw, &sig2, &ctx, &translate_term(&sig, &term, &s).unwrap(), &goal);
    }
}

#[test]
fn elim_term_instances() {
    let cases = [
        ("z", Sort::Nat, "S z", Sort::Nat),
        ("z", Sort::Nat, "rec[N] 0 (fun (a:N)(b:N) => S a) z", Sort::Nat),
        ("g", nn(), "g 0", Sort::Nat),
        ("g", nn(), "fun (x:N) => g (S x)", nn()),
        ("z", Sort::Nat, "0", Sort::Nat),
    ];
    for (z, zs, src, _) in cases {
        let term = t(src);
        for i in [1, 2] {
            assert_accepted(
                Logic::Lhaw,
                &Signature::new(),
                &Context::new(),
                &elim_term(i, &Signature::new(), z, &zs, &term).unwrap(),
                &elim_term_type(i, &Signature::new(), z, &zs, &term).unwrap(),
            );
        }
    }
}

#[test]
fn elim_formula_instances() {
    let cases = [
        ("x", Sort::Nat, "x = 0"),
        ("x", Sort::Nat, "null x"),
        ("x", Sort::Nat, "bot"),
        ("x", Sort::Nat, "x = 0 -> S x = 1"),
        ("x", Sort::Nat, "x = x /\\ 0 = x"),
        ("x", Sort::Nat, "forall y:N. x = y"),
        ("x", Sort::Nat, "exists y:N. x = S y"),
        ("g", nn(), "forall y:N. g y = [N] y"),
        ("g", nn(), "g = [N -> N] g"),
        ("x", Sort::Nat, "(forall y:N. y = x -> bot) -> exists z:N. x = z /\\ null z"),
    ];
    for (x, s, src) in cases {
        let phi = f(src);
        assert_accepted(
            Logic::Lhaw,
            &Signature::new(),
            &Context::new(),
            &elim_formula(&Signature::new(), x, &s, &phi).unwrap(),
            &elim_formula_type(x, &s, &phi),
        );
    }
}

#[test]
fn equiv_closed_formulas() {
    let cases = [
        "0 = 0",
        "bot",
        "null 0",
        "forall x:N. x = x",
        "forall f:N -> N. f = [N -> N] f",
        "exists f:N -> N. forall x:N. f x = S x",
        "forall x:N. forall y:N. x = y -> y = x",
        "(exists x:N. x = 1) /\\ forall g:(N -> N) -> N. g = [(N -> N) -> N] g",
    ];
    for src in cases {
        let phi = f(src);
        assert_accepted(Logic::Lehaw, &Signature::new(), &Context::new(), &equiv_pair(&Signature::new(), &phi).unwrap(), &equiv_type(&phi));
    }
}

#[test]
fn equiv_open_formula() {
    let sig = Signature::new().with("a", Sort::Nat).with("g", nn());
    let phi = f("g a = S a");
    let (sig2, ctx) = pm_env(&sig);
    assert_accepted(Logic::Lehaw, &sig2, &ctx, &equiv_pair(&sig, &phi).unwrap(), &equiv_type(&phi));
}

fn translate_and_check(logic: Logic, sig: &Signature, ctx: &Context, proof: &str, goal: &str) -> TranslationUnit {
    let unit = translate_proof(logic, sig, ctx, &p(proof), &f(goal)).unwrap();
    let report = unit.recheck();
    if let Some(r) = report.rejection {
        panic!("translation of `{proof}` rejected: {r}\n  output: {}", unit.target.proof);
    }
    assert_eq!(unit.target.logic, Logic::Lhaw);
    unit
}

#[test]
fn translated_proofs_check() {
    let empty = Signature::new();
    let none = Context::new();
    translate_and_check(Logic::Lhaw, &empty, &none, "fun (x:N) => refl x", "forall x:N. x = x");
    translate_and_check(
        Logic::Lhaw,
        &empty,
        &none,
        "fun (x:N)(y:N) [h : S x = S y] => peel(S x, S y, h, z. null z -> bot, fun [k : null (S x)] => k)",
        "forall x:N. forall y:N. S x = S y -> null (S x) -> bot",
    );
    translate_and_check(
        Logic::Lhaw,
        &empty,
        &none,
        "fun (x:N)(y:N) [h : x = y] => peel(x, y, h, z. z = x, refl x)",
        "forall x:N. forall y:N. x = y -> y = x",
    );
    translate_and_check(
        Logic::Lhaw,
        &empty,
        &none,
        "fun (n:N) => ind(k. rec[N] 0 (fun (a:N)(b:N) => S a) k = k, refl 0, fun (k:N) [ih : rec[N] 0 (fun (a:N)(b:N) => S a) k = k] => peel(rec[N] 0 (fun (a:N)(b:N) => S a) k, k, ih, w. S (rec[N] 0 (fun (a:N)(b:N) => S a) k) = S w, refl (S (rec[N] 0 (fun (a:N)(b:N) => S a) k))), n)",
        "forall n:N. rec[N] 0 (fun (a:N)(b:N) => S a) n = n",
    );
    translate_and_check(
        Logic::Lhaw,
        &empty,
        &none,
        "wit(S 0, refl 1, exists x:N. x = 1)",
        "exists x:N. x = 1",
    );
    translate_and_check(
        Logic::Lhaw,
        &empty,
        &none,
        "fun [h : exists x:N. x = 0] => unpack [y, k] := h in wit(y, peel(y, 0, k, w. w = y, refl y), exists x:N. 0 = x)",
        "(exists x:N. x = 0) -> exists x:N. 0 = x",
    );
    translate_and_check(Logic::Lhaw, &empty, &none, "fun [h : bot] => efq(h, 0 = 1)", "bot -> 0 = 1");
}

#[test]
fn translated_extensional_proofs_check() {
    let empty = Signature::new();
    let none = Context::new();
    translate_and_check(
        Logic::Lehaw,
        &empty,
        &none,
        "ext[N, N](fun (x:N) => refl (S x))",
        "(fun (y:N) => S y) = [N -> N] (fun (y:N) => S y)",
    );
    translate_and_check(
        Logic::Lehaw,
        &empty,
        &none,
        "fun (f:N -> N)(g:N -> N) [h : f = [N -> N] g] => apppm[N, N](h, 0, 0, refl 0)",
        "forall f:N -> N. forall g:N -> N. f = [N -> N] g -> f 0 = g 0",
    );
    translate_and_check(
        Logic::Lehaw,
        &empty,
        &none,
        "fun (f:N -> N)(g:N -> N) [h : f = [N -> N] g] => peel[N -> N](f, g, h, k. k 0 = f 0, refl (f 0))",
        "forall f:N -> N. forall g:N -> N. f = [N -> N] g -> g 0 = f 0",
    );
    translate_and_check(
        Logic::Lehaw,
        &empty,
        &none,
        "fun (x:N)(y:N) [h : x = y] => peel(x, y, h, z. z = x, refl x)",
        "forall x:N. forall y:N. x = y -> y = x",
    );
}

#[test]
fn open_judgment() {
    let sig = Signature::new().with("a", Sort::Nat).with("g", nn());
    let ctx = Context::new().with("h", f("g a = 0"));
    let unit = translate_and_check(Logic::Lhaw, &sig, &ctx, "peel(g a, 0, h, w. w = g a, refl (g a))", "0 = g a");
    assert_eq!(unit.target.sig.len(), 4);
    assert_eq!(unit.target.ctx.len(), 3);
}

#[test]
fn rejected_source_is_reported() {
    let err = translate_proof(Logic::Lhaw, &Signature::new(), &Context::new(), &p("refl 0"), &f("0 = 1")).unwrap_err();
    assert!(matches!(err, TranslateError::SourceRejected(_)));
}

#[test]
fn shadowing_source_binders_are_renamed() {
    let unit = translate_and_check(
        Logic::Lhaw,
        &Signature::new(),
        &Context::new(),
        "fun (x:N) => fun (x:N) => refl x",
        "forall x:N. forall x:N. x = x",
    );
    assert!(unit.notes.iter().any(|n| n.contains("renamed")));
}

