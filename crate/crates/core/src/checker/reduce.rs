//! Substitution-based one-step reduction on terms.
//!
//! Independent of the evaluator; used to cross-check it and to enumerate
//! the individual redexes of a term.

use crate::syntax::{Term, TermKind};

use super::env::{EntryKind, Environment, RuleStats, TruncMode};
use super::prims::{constructor_arity, iota_rule, Eliminator};

/// Kind of the redex contracted by a step.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StepKind {
    Beta,
    Proj,
    Delta,
    Iota,
}

/// Contracts the leftmost-outermost redex, if any.
pub fn step(env: &Environment, t: &Term) -> Option<(Term, StepKind)> {
    match t.kind() {
        TermKind::Var(_) | TermKind::Sort(_) => None,
        TermKind::Global(n, ls) => {
            let e = env.get(n)?;
            if e.kind != EntryKind::Definition {
                return None;
            }
            RuleStats::bump(&env.stats().delta);
            Some((e.decl.body.as_ref()?.subst_levels(ls), StepKind::Delta))
        }
        TermKind::App(f, a) => {
            if let TermKind::Lam(_, _, body) = f.kind() {
                return Some((body.instantiate(a), StepKind::Beta));
            }
            if let Some(r) = iota_step(env, t) {
                return Some((r, StepKind::Iota));
            }
            if let Some((f2, k)) = step(env, f) {
                return Some((Term::app(f2, a.clone()), k));
            }
            step(env, a).map(|(a2, k)| (Term::app(f.clone(), a2), k))
        }
        TermKind::Fst(p) | TermKind::Snd(p) => {
            let is_fst = matches!(t.kind(), TermKind::Fst(_));
            if let TermKind::Pair(a, b) = p.kind() {
                return Some((if is_fst { a.clone() } else { b.clone() }, StepKind::Proj));
            }
            step(env, p).map(|(p2, k)| (if is_fst { Term::fst(p2) } else { Term::snd(p2) }, k))
        }
        TermKind::Pi(x, a, b) | TermKind::Lam(x, a, b) | TermKind::Sigma(x, a, b) => {
            let rebuild = |a: Term, b: Term| match t.kind() {
                TermKind::Pi(..) => Term::pi(x, a, b),
                TermKind::Lam(..) => Term::lam(x, a, b),
                _ => Term::sigma(x, a, b),
            };
            if let Some((a2, k)) = step(env, a) {
                return Some((rebuild(a2, b.clone()), k));
            }
            step(env, b).map(|(b2, k)| (rebuild(a.clone(), b2), k))
        }
        TermKind::Pair(a, b) => {
            if let Some((a2, k)) = step(env, a) {
                return Some((Term::pair(a2, b.clone()), k));
            }
            step(env, b).map(|(b2, k)| (Term::pair(a.clone(), b2), k))
        }
    }
}

fn iota_step(env: &Environment, t: &Term) -> Option<Term> {
    let (head, args) = t.unapply();
    let TermKind::Global(name, ls) = head.kind() else {
        return None;
    };
    let rule = iota_rule(name)?;
    if args.len() != rule.arity {
        return None;
    }
    let (chead, cargs) = args[rule.major].unapply();
    let TermKind::Global(cname, _) = chead.kind() else {
        return None;
    };
    if constructor_arity(cname) != Some(cargs.len()) {
        return None;
    }
    let arg = |i: usize| args[i].clone();
    let carg = |i: usize| cargs[i].clone();
    let r = match (rule.elim, &**cname) {
        (Eliminator::J, "refl") => arg(3),
        (Eliminator::NatInd, "zeroN") => arg(1),
        (Eliminator::NatInd, "succN") => {
            let rec = Term::apps(
                Term::new(TermKind::Global(name.clone(), ls.clone()), Default::default()),
                [arg(0), arg(1), arg(2), carg(0)],
            );
            Term::apps(arg(2), [carg(0), rec])
        }
        (Eliminator::ZInd, "zZero") => arg(1),
        (Eliminator::ZInd, "zPos") => Term::app(arg(2), carg(0)),
        (Eliminator::ZInd, "zNeg") => Term::app(arg(3), carg(0)),
        (Eliminator::UnitInd, "tt") => arg(1),
        (Eliminator::SumInd, "inl") => Term::app(arg(3), carg(2)),
        (Eliminator::SumInd, "inr") => Term::app(arg(4), carg(2)),
        (Eliminator::TruncRec, "tr") => Term::app(arg(3), carg(1)),
        (Eliminator::TruncInd, "tr") => {
            if env.mode() == TruncMode::Jne {
                RuleStats::bump(&env.stats().trunc_ind_blocked);
                return None;
            }
            RuleStats::bump(&env.stats().trunc_ind_fired);
            Term::app(arg(3), carg(1))
        }
        _ => return None,
    };
    RuleStats::bump(&env.stats().iota);
    Some(r)
}

/// Repeats `step` until no redex is left or `fuel` steps were taken.
/// Returns the final term and whether it is normal.
pub fn reduce_with_fuel(env: &Environment, t: &Term, fuel: usize) -> (Term, bool) {
    let mut cur = t.clone();
    for _ in 0..fuel {
        match step(env, &cur) {
            Some((next, _)) => cur = next,
            None => return (cur, true),
        }
    }
    let normal = step(env, &cur).is_none();
    (cur, normal)
}
