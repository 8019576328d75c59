//! Kernel properties checked on individual samples. Each returns a
//! description of the first violation.

use num_bigint::BigInt;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::checker::{
    check, convertible, infer, normalize, step, whnf, Context, Environment, RuleStats,
};
use crate::syntax::{alpha_equal, print_term, Level, Term, TermKind};

use super::gen::{GenTy, TermGen};
use super::zexpr::{decode_numeral, encode, z_oracle_eval, ZExpr};

/// Steps allowed before a reduction sequence is abandoned.
pub const STEP_FUEL: usize = 20_000;

/// Steps `t` to normal form, checking every reduct against the type of `t`.
/// Returns the number of redexes contracted.
pub fn subject_reduction(env: &Environment, ctx: &Context, t: &Term) -> Result<usize, String> {
    let ty = infer(env, ctx, t).map_err(|e| format!("sample does not infer: {e}"))?;
    let mut cur = t.clone();
    for n in 0..STEP_FUEL {
        let Some((next, kind)) = step(env, &cur) else {
            let nf = normalize(env, ctx, t);
            if !alpha_equal(&cur, &nf) {
                return Err(format!(
                    "step normal form {} differs from evaluator normal form {}",
                    print_term(&cur),
                    print_term(&nf)
                ));
            }
            return Ok(n);
        };
        if let Err(e) = check(env, ctx, &next, &ty) {
            return Err(format!(
                "{kind:?} step {} ~> {} loses the type {}: {e}",
                print_term(&cur),
                print_term(&next),
                print_term(&ty)
            ));
        }
        cur = next;
    }
    Err(format!("no normal form within {STEP_FUEL} steps: {}", print_term(t)))
}

pub fn normalize_idempotent(env: &Environment, ctx: &Context, t: &Term) -> Result<(), String> {
    let once = normalize(env, ctx, t);
    let twice = normalize(env, ctx, &once);
    if alpha_equal(&once, &twice) {
        Ok(())
    } else {
        Err(format!("{} renormalizes to {}", print_term(&once), print_term(&twice)))
    }
}

/// `t` is convertible with its normal form, and stays so under application,
/// pairing and abstraction.
pub fn conversion_congruence(env: &Environment, ctx: &Context, t: &Term) -> Result<(), String> {
    let ty = infer(env, ctx, t).map_err(|e| e.to_string())?;
    let nf = normalize(env, ctx, t);
    let fail = |what: &str| Err(format!("{what} fails for {}", print_term(t)));
    if !convertible(env, ctx, t, &nf) || !convertible(env, ctx, &nf, t) {
        return fail("t ~ nf(t)");
    }
    let ctx_k = ctx.clone().with("k", Term::pi("_", ty.clone(), Term::global("Nat", vec![])));
    let (t1, nf1) = (t.shift(1), nf.shift(1));
    if !convertible(env, &ctx_k, &Term::app(Term::var(0), t1.clone()), &Term::app(Term::var(0), nf1.clone())) {
        return fail("k t ~ k nf(t)");
    }
    if !convertible(env, ctx, &Term::pair(t.clone(), nf.clone()), &Term::pair(nf.clone(), t.clone())) {
        return fail("<t, nf> ~ <nf, t>");
    }
    let unit = Term::global("Unit", vec![]);
    if !convertible(env, ctx, &Term::lam("_", unit.clone(), t1), &Term::lam("_", unit, nf1)) {
        return fail("fun _ => t ~ fun _ => nf");
    }
    Ok(())
}

/// The normal form of a closed term of type Z is a numeral.
pub fn canonical_z(env: &Environment, t: &Term) -> Result<BigInt, String> {
    let nf = normalize(env, &Context::new(), t);
    decode_numeral(&nf).map_err(|e| e.to_string())
}

/// The kernel value of `encode(e)` equals the oracle value.
pub fn z_oracle_agreement(env: &Environment, e: &ZExpr) -> Result<(), String> {
    let t = encode(e).map_err(|e| e.to_string())?;
    let got = canonical_z(env, &t)?;
    let want = z_oracle_eval(e);
    if got == want {
        Ok(())
    } else {
        Err(format!("{e:?}: kernel {got}, oracle {want}"))
    }
}

/// A `truncInd` application to `tr a`, with the propositionality witness
/// taken from the context.
#[derive(Clone, Debug)]
pub struct TruncIndInstance {
    pub ctx: Context,
    pub redex: Term,
    /// The branch applied to `a`: the reduct when the rule fires.
    pub reduct: Term,
}

pub fn trunc_ind_instance(seed: u64) -> TruncIndInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pick = |rng: &mut ChaCha8Rng| match rng.gen_range(0..3) {
        0 => GenTy::Nat,
        1 => GenTy::Z,
        _ => GenTy::sum(GenTy::Nat, GenTy::Unit),
    };
    let a_ty = pick(&mut rng);
    let b_ty = pick(&mut rng);
    let mut gen = TermGen::new(rng.gen());
    let size = rng.gen_range(1..12);
    let a = gen.term(&a_ty, &mut Vec::new(), size);
    let body = gen.term(&b_ty, &mut vec![a_ty.clone()], size);
    let zero = || vec![Level::zero()];
    let trunc_a = Term::app(Term::global("Trunc", zero()), a_ty.to_term());
    // h : (z : Trunc A) (x y : B) -> Id B x y
    let id = Term::apps(Term::global("Id", zero()), [b_ty.to_term(), Term::var(1), Term::var(0)]);
    let h_ty = Term::pi(
        "z",
        trunc_a.clone(),
        Term::pi("x", b_ty.to_term(), Term::pi("y", b_ty.to_term(), id)),
    );
    let ctx = Context::new().with("h", h_ty);
    let (a, body) = (a.shift(1), body.shift_from(1, 1));
    let branch = Term::lam("a", a_ty.to_term(), body);
    let motive = Term::lam("_", trunc_a, b_ty.to_term());
    let point = Term::apps(Term::global("tr", zero()), [a_ty.to_term(), a.clone()]);
    let redex = Term::apps(
        Term::global("truncInd", vec![Level::zero(), Level::zero()]),
        [a_ty.to_term(), motive, Term::var(0), branch.clone(), point],
    );
    TruncIndInstance { ctx, redex, reduct: Term::app(branch, a) }
}

fn head_is(t: &Term, name: &str) -> bool {
    matches!(t.unapply().0.kind(), TermKind::Global(n, _) if &**n == name)
}

/// In `env` (expected to be in JNE mode) the instance typechecks, is stuck
/// at `truncInd`, and differs from the reduct; the blocked-rule counter moves.
pub fn trunc_ind_blocked(env: &Environment, inst: &TruncIndInstance) -> Result<(), String> {
    infer(env, &inst.ctx, &inst.redex).map_err(|e| format!("instance does not check: {e}"))?;
    let before = RuleStats::get(&env.stats().trunc_ind_blocked);
    let w = whnf(env, &inst.ctx, &inst.redex);
    if !head_is(&w, "truncInd") {
        return Err(format!("truncInd reduced to {}", print_term(&w)));
    }
    if convertible(env, &inst.ctx, &inst.redex, &inst.reduct) {
        return Err(format!("{} is convertible with its reduct", print_term(&inst.redex)));
    }
    if step(env, &inst.redex).is_some_and(|(next, _)| !head_is(&next, "truncInd")) {
        return Err("substitution reducer fired truncInd".into());
    }
    if RuleStats::get(&env.stats().trunc_ind_blocked) == before {
        return Err("blocked-rule counter did not move".into());
    }
    Ok(())
}

/// In JDE mode the same instance is convertible with its reduct.
pub fn trunc_ind_fires(env: &Environment, inst: &TruncIndInstance) -> Result<(), String> {
    if convertible(env, &inst.ctx, &inst.redex, &inst.reduct) {
        Ok(())
    } else {
        Err(format!("{} does not compute", print_term(&inst.redex)))
    }
}
