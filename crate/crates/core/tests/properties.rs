use std::sync::OnceLock;

use proptest::prelude::*;
use ztk_core::checker::{Context, Environment, TruncMode};
use ztk_core::corpus::{builtin, load_builtin};
use ztk_core::syntax::{alpha_equal, Term};
use ztk_core::testkit::{
    canonical_z, conversion_congruence, gen_z_expr, normalize_idempotent, small_typed_terms,
    small_z_exprs, subject_reduction, trunc_ind_blocked, trunc_ind_fires, trunc_ind_instance,
    z_oracle_agreement, GenTy, TermGen, ZExpr,
};

fn int_env() -> &'static Environment {
    static ENV: OnceLock<Environment> = OnceLock::new();
    ENV.get_or_init(|| {
        load_builtin(TruncMode::Jne, &builtin::files_up_to(2))
            .into_result()
            .unwrap_or_else(|e| panic!("{}", e.first()))
    })
}

fn check_sample(env: &Environment, ctx: &Context, t: &Term) {
    let shown = ztk_core::print_term(t);
    subject_reduction(env, ctx, t).unwrap_or_else(|e| panic!("{shown}: {e}"));
    normalize_idempotent(env, ctx, t).unwrap_or_else(|e| panic!("{shown}: {e}"));
    conversion_congruence(env, ctx, t).unwrap_or_else(|e| panic!("{shown}: {e}"));
}

#[test]
fn exhaustive_small_terms() {
    let env = Environment::new(TruncMode::Jne);
    let nat = Term::global("Nat", vec![]);
    let contexts = [
        Context::new(),
        Context::new().with("n", nat.clone()),
        Context::new().with("f", Term::pi("_", nat.clone(), nat.clone())).with("n", nat),
    ];
    let mut total = 0;
    for ctx in &contexts {
        let terms = small_typed_terms(&env, ctx, 3);
        for t in &terms {
            check_sample(&env, ctx, t);
        }
        total += terms.len();
    }
    assert!(total > 100, "only {total} small terms");
}

#[test]
fn seeded_terms_satisfy_the_kernel_properties() {
    let env = Environment::new(TruncMode::Jne);
    for seed in 0..200 {
        let s = TermGen::new(seed).sample(30);
        check_sample(&env, &s.ctx, &s.term);
    }
}

#[test]
fn closed_integer_terms_are_numerals() {
    let env = Environment::new(TruncMode::Jne);
    let config = ztk_core::testkit::GenConfig { closed: 1.0, goal: Some(GenTy::Z) };
    for seed in 0..200 {
        let s = TermGen::with_config(seed, config.clone()).sample(30);
        canonical_z(&env, &s.term).unwrap_or_else(|e| panic!("seed {seed}: {e}"));
    }
}

#[test]
fn small_integer_expressions_agree_with_the_oracle() {
    for e in small_z_exprs(3) {
        z_oracle_agreement(int_env(), &e).unwrap();
    }
}

#[test]
fn two_plus_two_is_four() {
    let e = ZExpr::plus(ZExpr::Lit(2), ZExpr::Lit(2));
    z_oracle_agreement(int_env(), &e).unwrap();
}

#[test]
fn trunc_ind_is_stuck_in_jne_and_computes_in_jde() {
    let jne = Environment::new(TruncMode::Jne);
    let jde = Environment::new(TruncMode::Jde);
    for seed in 0..20 {
        let inst = trunc_ind_instance(seed);
        trunc_ind_blocked(&jne, &inst).unwrap();
        trunc_ind_fires(&jde, &inst).unwrap();
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generated_expressions_agree_with_the_oracle(seed in any::<u64>(), size in 1usize..40) {
        let e = gen_z_expr(seed, size);
        prop_assert_eq!(z_oracle_agreement(int_env(), &e), Ok(()));
    }

    #[test]
    fn generated_terms_reduce_safely(seed in any::<u64>(), size in 1usize..40) {
        let env = Environment::new(TruncMode::Jne);
        let s = TermGen::new(seed).sample(size);
        prop_assert_eq!(subject_reduction(&env, &s.ctx, &s.term).map(|_| ()), Ok(()));
        prop_assert_eq!(normalize_idempotent(&env, &s.ctx, &s.term), Ok(()));
    }

    #[test]
    fn generation_is_deterministic(seed in any::<u64>(), size in 1usize..60) {
        let a = TermGen::new(seed).sample(size);
        let b = TermGen::new(seed).sample(size);
        prop_assert!(alpha_equal(&a.term, &b.term));
        prop_assert_eq!(gen_z_expr(seed, size), gen_z_expr(seed, size));
    }
}
