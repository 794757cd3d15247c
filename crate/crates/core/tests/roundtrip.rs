//! `parse ∘ print` is the identity on generated syntax trees.

mod common;

use common::*;
use hawk::surface::{parse_file, parse_formula, parse_proof, parse_sort, parse_term, Decl, ParseOptions, SourceFile, TheoremDecl};
use hawk::syntax::{alpha_eq_formula, alpha_eq_proof, alpha_eq_term, Context, Logic, Signature, Sort};
use proptest::prelude::*;

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, failure_persistence: None, ..ProptestConfig::default() }
}

fn opts() -> ParseOptions {
    ParseOptions::default()
}

proptest! {
    #![proptest_config(config(1000))]

    #[test]
    fn sorts_round_trip(mut t in tape()) {
        let s = gen_sort(&mut t, 4);
        prop_assert_eq!(parse_sort(&s.to_string()).unwrap(), s);
    }

    #[test]
    fn terms_round_trip((term, _s) in closed_term()) {
        let text = term.to_string();
        let back = parse_term(&text, opts()).map_err(|e| TestCaseError::fail(format!("{e}: {text}")))?;
        prop_assert!(alpha_eq_term(&back, &term));
        prop_assert_eq!(back, term);
    }

    #[test]
    fn open_terms_round_trip(mut t in tape()) {
        let mut env: Env = vec![("a".into(), Sort::Nat), ("g".into(), nn())];
        let s = gen_sort(&mut t, 2);
        let term = gen_term(&mut t, &mut env, &s, 4);
        let text = term.to_string();
        let back = parse_term(&text, opts()).map_err(|e| TestCaseError::fail(format!("{e}: {text}")))?;
        prop_assert_eq!(back, term);
    }

    #[test]
    fn formulas_round_trip(mut t in tape(), extensional in any::<bool>()) {
        let logic = if extensional { Logic::Lehaw } else { Logic::Lhaw };
        let phi = gen_formula(&mut t, &mut vec![("a".into(), Sort::Nat)], logic, 4);
        let text = phi.to_string();
        let back = parse_formula(&text, opts()).map_err(|e| TestCaseError::fail(format!("{e}: {text}")))?;
        prop_assert!(alpha_eq_formula(&back, &phi));
        prop_assert_eq!(back, phi);
    }

    #[test]
    fn proofs_round_trip(j in prop_oneof![judgment(Logic::Lhaw, 4), judgment(Logic::Lehaw, 4)]) {
        let text = j.proof.to_string();
        let back = parse_proof(&text, opts()).map_err(|e| TestCaseError::fail(format!("{e}: {text}")))?;
        prop_assert!(alpha_eq_proof(&back, &j.proof));
        prop_assert_eq!(back, j.proof);
    }
}

proptest! {
    #![proptest_config(config(256))]

    #[test]
    fn files_round_trip(j in prop_oneof![judgment(Logic::Lhaw, 3), judgment(Logic::Lehaw, 3)]) {
        let mut file = SourceFile::new(j.logic);
        file.decls.push(Decl::Theorem(TheoremDecl {
            name: "generated_theorem".into(),
            sig: Signature(j.sig.clone()),
            ctx: Context(j.ctx.clone()),
            goal: j.goal.clone(),
            proof: j.proof.clone(),
            pos: Default::default(),
        }));
        let text = file.to_string();
        let back = parse_file(&text).map_err(|e| TestCaseError::fail(format!("{e}\n{text}")))?;
        prop_assert_eq!(back.logic, j.logic);
        let th = back.theorems().next().expect("one theorem");
        prop_assert_eq!(&th.sig, &Signature(j.sig.clone()));
        prop_assert_eq!(&th.ctx, &Context(j.ctx.clone()));
        prop_assert_eq!(&th.goal, &j.goal);
        prop_assert_eq!(&th.proof, &j.proof);
        // Printing is stable after one round.
        prop_assert_eq!(back.to_string(), text);
    }
}
