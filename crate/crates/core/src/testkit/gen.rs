//! Typing-directed generators of well-typed terms over the primitive
//! signature. Generated terms mention no axioms.

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::checker::{infer, prims::primitive_scope, Context, Environment};
use crate::syntax::{parse_term, Level, Term};

use super::zexpr::MAX_GEN_SIZE;

/// The closed types the generator works with.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GenTy {
    Nat,
    Z,
    Unit,
    Arr(Box<GenTy>, Box<GenTy>),
    Prod(Box<GenTy>, Box<GenTy>),
    Sum(Box<GenTy>, Box<GenTy>),
    Trunc(Box<GenTy>),
}

impl GenTy {
    pub fn arr(a: GenTy, b: GenTy) -> GenTy {
        GenTy::Arr(Box::new(a), Box::new(b))
    }

    pub fn prod(a: GenTy, b: GenTy) -> GenTy {
        GenTy::Prod(Box::new(a), Box::new(b))
    }

    pub fn sum(a: GenTy, b: GenTy) -> GenTy {
        GenTy::Sum(Box::new(a), Box::new(b))
    }

    pub fn trunc(a: GenTy) -> GenTy {
        GenTy::Trunc(Box::new(a))
    }

    /// The type as a closed kernel term.
    pub fn to_term(&self) -> Term {
        let z = || vec![Level::zero()];
        match self {
            GenTy::Nat => Term::global("Nat", vec![]),
            GenTy::Z => Term::global("Z", vec![]),
            GenTy::Unit => Term::global("Unit", vec![]),
            GenTy::Arr(a, b) => Term::pi("_", a.to_term(), b.to_term()),
            GenTy::Prod(a, b) => Term::sigma("_", a.to_term(), b.to_term()),
            GenTy::Sum(a, b) => Term::apps(
                Term::global("Sum", vec![Level::zero(), Level::zero()]),
                [a.to_term(), b.to_term()],
            ),
            GenTy::Trunc(a) => Term::app(Term::global("Trunc", z()), a.to_term()),
        }
    }
}

/// Options for `TermGen`.
#[derive(Clone, Debug)]
pub struct GenConfig {
    /// Probability of an empty context.
    pub closed: f64,
    /// Force the goal type instead of drawing one.
    pub goal: Option<GenTy>,
}

impl Default for GenConfig {
    fn default() -> GenConfig {
        GenConfig { closed: 0.4, goal: None }
    }
}

/// A generated sample: context, term and its intended type.
#[derive(Clone, Debug)]
pub struct Sample {
    pub ctx: Context,
    pub ctx_types: Vec<GenTy>,
    pub term: Term,
    pub ty: GenTy,
}

pub struct TermGen {
    rng: ChaCha8Rng,
    config: GenConfig,
}

fn g(name: &str) -> Term {
    Term::global(name, vec![])
}

fn g0(name: &str, arity: usize) -> Term {
    Term::global(name, vec![Level::zero(); arity])
}

/// `fun (_ : T) => body`, with `body` closed.
fn const_motive(dom: Term, body: Term) -> Term {
    Term::lam("_", dom, body)
}

/// Proof that any two elements of Unit are equal.
fn unit_is_prop() -> Term {
    let src = "fun (x y : Unit) => unitInd {0} (fun (x : Unit) => Id {0} Unit x y) \
               (unitInd {0} (fun (y : Unit) => Id {0} Unit tt y) (refl {0} Unit tt) y) x";
    parse_term(src, primitive_scope(), &[], &[]).expect("unit proof parses")
}

impl TermGen {
    pub fn new(seed: u64) -> TermGen {
        TermGen::with_config(seed, GenConfig::default())
    }

    pub fn with_config(seed: u64, config: GenConfig) -> TermGen {
        TermGen { rng: ChaCha8Rng::seed_from_u64(seed), config }
    }

    fn small_ty(&mut self, depth: u32) -> GenTy {
        let base = [GenTy::Nat, GenTy::Z, GenTy::Unit];
        if depth == 0 || self.rng.gen_bool(0.6) {
            return base.choose(&mut self.rng).unwrap().clone();
        }
        let a = self.small_ty(depth - 1);
        let b = self.small_ty(depth - 1);
        match self.rng.gen_range(0..4) {
            0 => GenTy::arr(a, b),
            1 => GenTy::prod(a, b),
            2 => GenTy::sum(a, b),
            _ => GenTy::trunc(a),
        }
    }

    /// A full sample of roughly `size` nodes of generator budget.
    pub fn sample(&mut self, size: usize) -> Sample {
        let size = size.min(MAX_GEN_SIZE);
        let mut ctx_types = Vec::new();
        if !self.rng.gen_bool(self.config.closed) {
            let n = self.rng.gen_range(1..=3);
            for _ in 0..n {
                let t = self.small_ty(1);
                ctx_types.push(t);
            }
        }
        let ty = match &self.config.goal {
            Some(t) => t.clone(),
            None if self.rng.gen_bool(0.35) => GenTy::Z,
            None => self.small_ty(2),
        };
        let mut scope = ctx_types.clone();
        let term = self.term(&ty, &mut scope, size);
        let mut ctx = Context::new();
        for (i, t) in ctx_types.iter().enumerate() {
            ctx.push(&format!("v{i}"), t.to_term());
        }
        Sample { ctx, ctx_types, term, ty }
    }

    fn split(&mut self, size: usize, parts: usize) -> Vec<usize> {
        let mut out = vec![0; parts];
        for _ in 0..size.saturating_sub(1) {
            let i = self.rng.gen_range(0..parts);
            out[i] += 1;
        }
        out
    }

    fn var_of(&mut self, ty: &GenTy, scope: &[GenTy]) -> Option<Term> {
        let hits: Vec<usize> = (0..scope.len()).filter(|&k| &scope[k] == ty).collect();
        let k = *hits.choose(&mut self.rng)?;
        Some(Term::var((scope.len() - 1 - k) as u32))
    }

    /// A term of type `ty` in `scope` (innermost last).
    pub fn term(&mut self, ty: &GenTy, scope: &mut Vec<GenTy>, size: usize) -> Term {
        if size <= 1 {
            if self.rng.gen_bool(0.5) {
                if let Some(v) = self.var_of(ty, scope) {
                    return v;
                }
            }
            return self.intro(ty, scope, 0);
        }
        match self.rng.gen_range(0..10) {
            0..=3 => self.intro(ty, scope, size),
            _ => self.elim(ty, scope, size),
        }
    }

    fn under(&mut self, ty: &GenTy, bound: &[GenTy], scope: &mut Vec<GenTy>, size: usize) -> Term {
        scope.extend(bound.iter().cloned());
        let t = self.term(ty, scope, size);
        scope.truncate(scope.len() - bound.len());
        t
    }

    fn intro(&mut self, ty: &GenTy, scope: &mut Vec<GenTy>, size: usize) -> Term {
        let s = size.saturating_sub(1);
        match ty {
            GenTy::Nat => match self.rng.gen_range(0..2) {
                0 if s > 0 => Term::app(g("succN"), self.term(&GenTy::Nat, scope, s)),
                _ => g("zeroN"),
            },
            GenTy::Z => match self.rng.gen_range(0..3) {
                0 => g("zZero"),
                1 => Term::app(g("zPos"), self.term(&GenTy::Nat, scope, s)),
                _ => Term::app(g("zNeg"), self.term(&GenTy::Nat, scope, s)),
            },
            GenTy::Unit => g("tt"),
            GenTy::Arr(a, b) => {
                let body = self.under(b, &[(**a).clone()], scope, s);
                Term::lam("x", a.to_term(), body)
            }
            GenTy::Prod(a, b) => {
                let p = self.split(s, 2);
                Term::pair(self.term(a, scope, p[0]), self.term(b, scope, p[1]))
            }
            GenTy::Sum(a, b) => {
                let (ctor, arg) = if self.rng.gen_bool(0.5) {
                    ("inl", self.term(a, scope, s))
                } else {
                    ("inr", self.term(b, scope, s))
                };
                Term::apps(g0(ctor, 2), [a.to_term(), b.to_term(), arg])
            }
            GenTy::Trunc(a) => Term::apps(g0("tr", 1), [a.to_term(), self.term(a, scope, s)]),
        }
    }

    fn elim(&mut self, ty: &GenTy, scope: &mut Vec<GenTy>, size: usize) -> Term {
        let s = size - 1;
        let tt = ty.to_term();
        let choice = self.rng.gen_range(0..9);
        match choice {
            // Beta redex.
            0 => {
                let a = self.small_ty(1);
                let p = self.split(s, 2);
                let body = self.under(ty, &[a.clone()], scope, p[0]);
                let arg = self.term(&a, scope, p[1]);
                Term::app(Term::lam("x", a.to_term(), body), arg)
            }
            // Application of an arbitrary function.
            1 => {
                let a = self.small_ty(1);
                let p = self.split(s, 2);
                let f = self.term(&GenTy::arr(a.clone(), ty.clone()), scope, p[0]);
                Term::app(f, self.term(&a, scope, p[1]))
            }
            2 => {
                let b = self.small_ty(1);
                Term::fst(self.term(&GenTy::prod(ty.clone(), b), scope, s))
            }
            3 => {
                let a = self.small_ty(1);
                Term::snd(self.term(&GenTy::prod(a, ty.clone()), scope, s))
            }
            4 => {
                let p = self.split(s, 3);
                let z = self.term(ty, scope, p[0]);
                let st = self.under(ty, &[GenTy::Nat, ty.clone()], scope, p[1]);
                let n = self.term(&GenTy::Nat, scope, p[2]);
                let step = Term::lam("n", g("Nat"), Term::lam("r", tt.clone(), st));
                Term::apps(g0("natInd", 1), [const_motive(g("Nat"), tt), z, step, n])
            }
            5 => {
                let p = self.split(s, 4);
                let z0 = self.term(ty, scope, p[0]);
                let pos = self.under(ty, &[GenTy::Nat], scope, p[1]);
                let neg = self.under(ty, &[GenTy::Nat], scope, p[2]);
                let arg = self.term(&GenTy::Z, scope, p[3]);
                Term::apps(
                    g0("zInd", 1),
                    [
                        const_motive(g("Z"), tt),
                        z0,
                        Term::lam("n", g("Nat"), pos),
                        Term::lam("n", g("Nat"), neg),
                        arg,
                    ],
                )
            }
            6 => {
                let a = self.small_ty(1);
                let b = self.small_ty(1);
                let sum = GenTy::sum(a.clone(), b.clone());
                let p = self.split(s, 3);
                let l = self.under(ty, &[a.clone()], scope, p[0]);
                let r = self.under(ty, &[b.clone()], scope, p[1]);
                let arg = self.term(&sum, scope, p[2]);
                Term::apps(
                    g0("sumInd", 3),
                    [
                        a.to_term(),
                        b.to_term(),
                        const_motive(sum.to_term(), tt),
                        Term::lam("a", a.to_term(), l),
                        Term::lam("b", b.to_term(), r),
                        arg,
                    ],
                )
            }
            // J on refl, with a constant motive.
            7 => {
                let a = self.small_ty(1);
                let p = self.split(s, 2);
                let x = self.term(&a, scope, p[0]);
                let c = self.term(ty, scope, p[1]);
                let path_ty =
                    Term::apps(g0("Id", 1), [a.to_term(), x.shift(1), Term::var(0)]);
                let motive = Term::lam("y", a.to_term(), Term::lam("p", path_ty, tt));
                let refl = Term::apps(g0("refl", 1), [a.to_term(), x.clone()]);
                Term::apps(g0("J", 2), [a.to_term(), x.clone(), motive, c, x, refl])
            }
            _ => match ty {
                GenTy::Unit => {
                    let a = self.small_ty(1);
                    let p = self.split(s, 2);
                    let body = self.under(ty, &[a.clone()], scope, p[0]);
                    let arg = self.term(&GenTy::trunc(a.clone()), scope, p[1]);
                    Term::apps(
                        g0("truncRec", 2),
                        [a.to_term(), tt, unit_is_prop(), Term::lam("x", a.to_term(), body), arg],
                    )
                }
                _ => {
                    let p = self.split(s, 2);
                    let u = self.term(&GenTy::Unit, scope, p[0]);
                    let body = self.term(ty, scope, p[1]);
                    Term::apps(g0("unitInd", 1), [const_motive(g("Unit"), tt), body, u])
                }
            },
        }
    }
}

/// A seeded well-typed term: deterministic in `seed`.
pub fn gen_typed_term(seed: u64, size: usize) -> (Context, Term) {
    let s = TermGen::new(seed).sample(size);
    (s.ctx, s.term)
}

const LEAF_GLOBALS: &[&str] = &[
    "Nat", "zeroN", "succN", "Z", "zZero", "zPos", "zNeg", "Empty", "Unit", "tt",
];

/// Every term of at most `max_size` nodes over a fixed alphabet that the
/// checker accepts in `ctx`. The alphabet: variables in scope, `Type 0`,
/// the level-free primitives, and `Nat`, `Z`, `Unit` as binder annotations.
pub fn small_typed_terms(env: &Environment, ctx: &Context, max_size: usize) -> Vec<Term> {
    let all = enumerate(ctx.len() as u32, max_size);
    all.into_iter().filter(|t| infer(env, ctx, t).is_ok()).collect()
}

fn enumerate(depth: u32, max_size: usize) -> Vec<Term> {
    let mut out = Vec::new();
    for size in 1..=max_size {
        out.extend(of_size(depth, size));
    }
    out
}

fn of_size(depth: u32, size: usize) -> Vec<Term> {
    let mut out = Vec::new();
    match size {
        0 => {}
        1 => {
            out.extend((0..depth).map(Term::var));
            out.push(Term::sort(Level::zero()));
            out.extend(LEAF_GLOBALS.iter().map(|n| g(n)));
        }
        _ => {
            for t in of_size(depth, size - 1) {
                out.push(Term::fst(t.clone()));
                out.push(Term::snd(t));
            }
            for left in 1..size - 1 {
                let right = size - 1 - left;
                for a in of_size(depth, left) {
                    for b in of_size(depth, right) {
                        out.push(Term::app(a.clone(), b.clone()));
                        out.push(Term::pair(a.clone(), b));
                    }
                    for b in of_size(depth + 1, right) {
                        out.push(Term::pi("x", a.clone(), b.clone()));
                        out.push(Term::sigma("x", a.clone(), b.clone()));
                        out.push(Term::lam("x", a.clone(), b));
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::checker::TruncMode;
    use crate::syntax::alpha_equal;

    #[test]
    fn generation_is_deterministic() {
        let (_, a) = gen_typed_term(7, 30);
        let (_, b) = gen_typed_term(7, 30);
        assert!(alpha_equal(&a, &b));
    }

    #[test]
    fn samples_have_their_intended_type() {
        let env = Environment::new(TruncMode::Jne);
        for seed in 0..200 {
            let s = TermGen::new(seed).sample(25);
            crate::checker::check(&env, &s.ctx, &s.term, &s.ty.to_term())
                .unwrap_or_else(|e| panic!("seed {seed}: {e}"));
        }
    }

    #[test]
    fn small_enumeration_includes_basic_terms() {
        let env = Environment::new(TruncMode::Jne);
        let ctx = Context::new().with("n", g("Nat"));
        let terms = small_typed_terms(&env, &ctx, 3);
        let has = |t: &Term| terms.iter().any(|u| alpha_equal(u, t));
        assert!(has(&Term::app(g("succN"), Term::var(0))));
        assert!(has(&Term::lam("x", g("Nat"), Term::var(0))));
        assert!(!has(&Term::app(g("succN"), g("zZero"))));
    }
}
