use ztk_core::checker::{self, Context, Environment, TruncMode};
use ztk_core::syntax::{parse_file_in, parse_term, print_term, Scope, Term};
use ztk_core::{alpha_equal, Level};

fn env(mode: TruncMode) -> Environment {
    Environment::new(mode)
}

fn term(env: &Environment, ctx: &Context, src: &str) -> Term {
    parse_term(src, &env.scope(), &ctx.names(), &[]).unwrap_or_else(|e| panic!("{src}: {e}"))
}

fn load(env: Environment, src: &str) -> Environment {
    let decls = parse_file_in(src, "test.ht", &env.scope()).unwrap_or_else(|e| panic!("{}", e[0]));
    decls
        .into_iter()
        .fold(env, |env, d| env.extend(d).unwrap_or_else(|e| panic!("{e}")))
}

#[test]
fn infers_polymorphic_identity() {
    let e = env(TruncMode::Jne);
    let c = Context::new();
    let t = term(&e, &c, "fun (A : Type 0) (x : A) => x");
    let ty = checker::infer(&e, &c, &t).unwrap();
    let expected = term(&e, &c, "(A : Type 0) -> A -> A");
    assert!(alpha_equal(&ty, &expected), "{}", print_term(&ty));
}

#[test]
fn one_is_an_integer() {
    let e = env(TruncMode::Jne);
    let c = Context::new();
    let ty = checker::infer(&e, &c, &term(&e, &c, "zPos zeroN")).unwrap();
    assert!(alpha_equal(&ty, &Term::global("Z", vec![])));
}

#[test]
fn applying_a_sort_is_rejected() {
    let e = env(TruncMode::Jne);
    let c = Context::new();
    let err = checker::infer(&e, &c, &term(&e, &c, "Type 0 Type 0")).unwrap_err();
    assert_eq!(err.code, "check/not-a-function");
}

#[test]
fn check_examples() {
    let e = env(TruncMode::Jne);
    let c = Context::new();
    let ok = |t: &str, ty: &str| checker::check(&e, &c, &term(&e, &c, t), &term(&e, &c, ty));
    ok("fun (x : Nat) => x", "Nat -> Nat").unwrap();
    ok("tr {0} Nat zeroN", "Trunc {0} Nat").unwrap();
    let err = ok("zZero", "Nat").unwrap_err();
    assert_eq!(err.code, "check/type-mismatch");
    assert!(err.message.contains("expected: Nat"), "{}", err.message);
    assert!(err.message.contains("actual:   Z"), "{}", err.message);
    let err = ok("Type 0", "Type 0").unwrap_err();
    assert_eq!(err.code, "check/universe-inconsistency");
}

#[test]
fn universe_of_pi_is_the_max() {
    let e = env(TruncMode::Jne);
    let c = Context::new();
    let ty = checker::infer(&e, &c, &term(&e, &c, "Type 0 -> Type 1")).unwrap();
    assert!(alpha_equal(&ty, &Term::sort(Level::Num(2))));
    let ty = checker::infer(&e, &c, &term(&e, &c, "(A : Type 1) * A")).unwrap();
    assert!(alpha_equal(&ty, &Term::sort(Level::Num(2))));
}

#[test]
fn whnf_examples() {
    let c = Context::new()
        .with("P", Term::pi("_", Term::global("Z", vec![]), Term::sort(Level::Num(0))));
    let jne = env(TruncMode::Jne);
    let ctx = c
        .clone()
        .with("pz", term(&jne, &c, "P zZero"));
    let ctx = ctx.clone().with("pp", term(&jne, &ctx, "(n : Nat) -> P (zPos n)"));
    let ctx = ctx.clone().with("pn", term(&jne, &ctx, "(n : Nat) -> P (zNeg n)"));
    let ctx = ctx.clone().with("k", Term::global("Nat", vec![]));
    let t = term(&jne, &ctx, "zInd {0} P pz pp pn (zPos k)");
    let w = checker::whnf(&jne, &ctx, &t);
    assert!(alpha_equal(&w, &term(&jne, &ctx, "pp k")), "{}", print_term(&w));

    let tctx = Context::new()
        .with("A", Term::sort(Level::Num(0)))
        .with("a", Term::var(0));
    let tctx = tctx.clone().with("P", Term::sort(Level::Num(0)));
    let tctx = tctx.clone().with("h", term(&jne, &tctx, "(x y : P) -> Id {0} P x y"));
    let tctx = tctx.clone().with("g", term(&jne, &tctx, "A -> P"));
    let tctx = tctx.clone().with("B", term(&jne, &tctx, "Trunc {0} A -> Type 0"));
    let tctx = tctx.clone().with("hb", term(&jne, &tctx, "(z : Trunc {0} A) (x y : B z) -> Id {0} (B z) x y"));
    let tctx = tctx.clone().with("gb", term(&jne, &tctx, "(a : A) -> B (tr {0} A a)"));
    let rec = term(&jne, &tctx, "truncRec {0 0} A P h g (tr {0} A a)");
    let ind = term(&jne, &tctx, "truncInd {0 0} A B hb gb (tr {0} A a)");
    for mode in [TruncMode::Jne, TruncMode::Jde] {
        let e = env(mode);
        let w = checker::whnf(&e, &tctx, &rec);
        assert!(alpha_equal(&w, &term(&e, &tctx, "g a")));
        let w = checker::whnf(&e, &tctx, &ind);
        let expected = if mode == TruncMode::Jde { term(&e, &tctx, "gb a") } else { ind.clone() };
        assert!(alpha_equal(&w, &expected), "{mode:?}: {}", print_term(&w));
    }
    let jne = env(TruncMode::Jne);
    let _ = checker::whnf(&jne, &tctx, &ind);
    assert_eq!(
        ztk_core::checker::RuleStats::get(&jne.stats().trunc_ind_fired),
        0
    );
}

#[test]
fn conversion_examples() {
    let e = env(TruncMode::Jne);
    let c = Context::new()
        .with("A", Term::sort(Level::Num(0)))
        .with("f", Term::pi("_", Term::var(0), Term::var(1)));
    assert!(checker::convertible(&e, &c, &term(&e, &c, "fun (x : A) => f x"), &term(&e, &c, "f")));
    let c2 = Context::new()
        .with("A", Term::sort(Level::Num(0)))
        .with("p", Term::sigma("_", Term::var(0), Term::var(1)));
    assert!(checker::convertible(&e, &c2, &term(&e, &c2, "<fst p, snd p>"), &term(&e, &c2, "p")));
    let c3 = Context::new().with("A", Term::sort(Level::Num(0))).with("a", Term::var(0));
    let c3 = c3.clone().with("C", term(&e, &c3, "(y : A) -> Id {0} A a y -> Type 0"));
    let c3 = c3.clone().with("c", term(&e, &c3, "C a (refl {0} A a)"));
    let j = term(&e, &c3, "J {0 0} A a C c a (refl {0} A a)");
    assert!(checker::convertible(&e, &c3, &j, &term(&e, &c3, "c")));
    // No K: a variable path blocks J.
    let c4 = c3.clone().with("p", term(&e, &c3, "Id {0} A a a"));
    let j = term(&e, &c4, "J {0 0} A a C c a p");
    let n = checker::normalize(&e, &c4, &j);
    assert!(alpha_equal(&n, &j));
}

#[test]
fn declarations() {
    let e = load(
        env(TruncMode::Jne),
        "def id {i} : (A : Type i) -> A -> A := fun (A : Type i) (x : A) => x\n\
         def one : Z := id {0} Z (zPos zeroN)",
    );
    assert!(e.contains("id"));
    let n = checker::normalize(&e, &Context::new(), &Term::global("one", vec![]));
    assert!(alpha_equal(&n, &parse_term("zPos zeroN", &Scope::primitives(), &[], &[]).unwrap()));

    let e = load(
        e,
        "axiom funext {i j} : (A : Type i) (B : A -> Type j) (f g : (x : A) -> B x)\n\
         -> ((x : A) -> Id {j} (B x) (f x) (g x)) -> Id {(max i j)} ((x : A) -> B x) f g",
    );
    assert_eq!(e.get("funext").unwrap().kind, checker::EntryKind::Axiom);

    let d = ztk_core::Declaration::definition(
        "loopy",
        &[],
        Term::global("Nat", vec![]),
        Term::global("loopy", vec![]),
    );
    let err = checker::check_declaration(&e, &d).unwrap_err();
    assert_eq!(err.code, "check/unbound-global");
}
