//! Evaluation to glued values, read-back and conversion.
//!
//! A global constant evaluates to a `Flex` value that keeps its folded form
//! next to a lazily computed unfolding (delta for definitions, iota for
//! eliminators applied to constructors). Conversion compares folded forms
//! first and unfolds only when they disagree.

use std::cell::OnceCell;
use std::rc::Rc;
use std::sync::Arc;

use crate::syntax::{Level, Name, Term, TermKind};

use super::env::{Entry, EntryKind, Environment, RuleStats, TruncMode};
use super::prims::{constructor_arity, iota_rule, Eliminator};

pub type Val = Rc<Value>;

/// Level substitution for the level parameters of the term being evaluated;
/// `None` leaves level variables in place.
pub type LevelEnv = Option<Rc<[Level]>>;

pub enum Value {
    Sort(Level),
    Pi(Name, Val, Closure),
    Lam(Name, Val, Closure),
    Sigma(Name, Val, Closure),
    Pair(Val, Val),
    /// A local variable (de Bruijn level) with eliminations.
    Rigid(u32, Vec<Elim>),
    /// A global constant with eliminations and its memoized unfolding.
    Flex(Name, Arc<[Level]>, Vec<Elim>, Rc<OnceCell<Option<Val>>>),
}

#[derive(Clone)]
pub enum Elim {
    App(Val),
    Fst,
    Snd,
}

#[derive(Clone, Default)]
pub struct Env(Option<Rc<EnvNode>>);

struct EnvNode {
    val: Val,
    next: Env,
}

impl Env {
    pub fn push(&self, val: Val) -> Env {
        Env(Some(Rc::new(EnvNode { val, next: self.clone() })))
    }

    fn lookup(&self, mut i: u32) -> &Val {
        let mut cur = self;
        loop {
            let node = cur.0.as_ref().expect("unbound de Bruijn index during evaluation");
            if i == 0 {
                return &node.val;
            }
            i -= 1;
            cur = &node.next;
        }
    }
}

#[derive(Clone)]
pub struct Closure {
    env: Env,
    levels: LevelEnv,
    body: Term,
}

impl Closure {
    pub fn new(env: Env, levels: LevelEnv, body: Term) -> Closure {
        Closure { env, levels, body }
    }
}

pub fn var(lvl: u32) -> Val {
    Rc::new(Value::Rigid(lvl, Vec::new()))
}

fn flex(name: Name, levels: Arc<[Level]>, spine: Vec<Elim>) -> Val {
    Rc::new(Value::Flex(name, levels, spine, Rc::new(OnceCell::new())))
}

fn subst_level(l: &Level, levels: &LevelEnv) -> Level {
    match levels {
        Some(ls) => l.subst(ls).normalize(),
        None => l.normalize(),
    }
}

/// Evaluation and conversion against one environment.
pub struct Machine<'e> {
    pub genv: &'e Environment,
}

impl<'e> Machine<'e> {
    pub fn new(genv: &'e Environment) -> Self {
        Machine { genv }
    }

    pub fn eval(&self, t: &Term, env: &Env, levels: &LevelEnv) -> Val {
        match t.kind() {
            TermKind::Var(i) => env.lookup(*i).clone(),
            TermKind::Sort(l) => Rc::new(Value::Sort(subst_level(l, levels))),
            TermKind::Global(n, ls) => {
                let ls: Arc<[Level]> = ls.iter().map(|l| subst_level(l, levels)).collect();
                flex(n.clone(), ls, Vec::new())
            }
            TermKind::Pi(x, a, b) => Rc::new(Value::Pi(
                x.clone(),
                self.eval(a, env, levels),
                Closure::new(env.clone(), levels.clone(), b.clone()),
            )),
            TermKind::Lam(x, a, b) => Rc::new(Value::Lam(
                x.clone(),
                self.eval(a, env, levels),
                Closure::new(env.clone(), levels.clone(), b.clone()),
            )),
            TermKind::Sigma(x, a, b) => Rc::new(Value::Sigma(
                x.clone(),
                self.eval(a, env, levels),
                Closure::new(env.clone(), levels.clone(), b.clone()),
            )),
            TermKind::App(f, a) => {
                let f = self.eval(f, env, levels);
                let a = self.eval(a, env, levels);
                self.apply(&f, a)
            }
            TermKind::Pair(a, b) => {
                Rc::new(Value::Pair(self.eval(a, env, levels), self.eval(b, env, levels)))
            }
            TermKind::Fst(p) => {
                let p = self.eval(p, env, levels);
                self.elim(&p, Elim::Fst)
            }
            TermKind::Snd(p) => {
                let p = self.eval(p, env, levels);
                self.elim(&p, Elim::Snd)
            }
        }
    }

    pub fn inst(&self, c: &Closure, v: Val) -> Val {
        self.eval(&c.body, &c.env.push(v), &c.levels)
    }

    pub fn apply(&self, f: &Val, a: Val) -> Val {
        self.elim(f, Elim::App(a))
    }

    pub fn fst(&self, p: &Val) -> Val {
        self.elim(p, Elim::Fst)
    }

    pub fn snd(&self, p: &Val) -> Val {
        self.elim(p, Elim::Snd)
    }

    pub fn elim(&self, v: &Val, e: Elim) -> Val {
        match (&**v, e) {
            (Value::Lam(_, _, c), Elim::App(a)) => self.inst(c, a),
            (Value::Pair(a, _), Elim::Fst) => a.clone(),
            (Value::Pair(_, b), Elim::Snd) => b.clone(),
            (Value::Rigid(x, sp), e) => {
                let mut sp = sp.clone();
                sp.push(e);
                Rc::new(Value::Rigid(*x, sp))
            }
            (Value::Flex(n, ls, sp, _), e) => {
                let mut sp = sp.clone();
                sp.push(e);
                flex(n.clone(), ls.clone(), sp)
            }
            _ => panic!("ill-typed elimination reached the evaluator"),
        }
    }

    fn elim_spine(&self, mut v: Val, spine: &[Elim]) -> Val {
        for e in spine {
            v = self.elim(&v, e.clone());
        }
        v
    }

    /// One unfolding step of a `Flex` value, memoized; `None` when stuck or
    /// not a `Flex`.
    pub fn unfold(&self, v: &Val) -> Option<Val> {
        match &**v {
            Value::Flex(n, ls, sp, cell) => {
                cell.get_or_init(|| self.compute_unfold(n, ls, sp)).clone()
            }
            _ => None,
        }
    }

    fn compute_unfold(&self, name: &Name, levels: &Arc<[Level]>, spine: &[Elim]) -> Option<Val> {
        let entry: &Arc<Entry> = self.genv.get(name)?;
        match entry.kind {
            EntryKind::Definition => {
                RuleStats::bump(&self.genv.stats().delta);
                let body = entry.decl.body.as_ref()?;
                let lenv: LevelEnv = Some(levels.iter().cloned().collect());
                let v = self.eval(body, &Env::default(), &lenv);
                Some(self.elim_spine(v, spine))
            }
            EntryKind::Axiom => None,
            EntryKind::Primitive => self.iota(name, levels, spine),
        }
    }

    fn iota(&self, name: &Name, levels: &Arc<[Level]>, spine: &[Elim]) -> Option<Val> {
        let rule = iota_rule(name)?;
        if spine.len() < rule.arity {
            return None;
        }
        let mut args = Vec::with_capacity(rule.arity);
        for e in &spine[..rule.arity] {
            match e {
                Elim::App(a) => args.push(a.clone()),
                _ => return None,
            }
        }
        let major = self.force(&args[rule.major]);
        let (cname, cargs) = match &*major {
            Value::Flex(c, _, csp, _) if constructor_arity(c) == Some(csp.len()) => {
                let mut cargs = Vec::with_capacity(csp.len());
                for e in csp {
                    match e {
                        Elim::App(a) => cargs.push(a.clone()),
                        _ => return None,
                    }
                }
                (&**c, cargs)
            }
            _ => return None,
        };
        let stats = self.genv.stats();
        let result = match (rule.elim, cname) {
            (Eliminator::J, "refl") => args[3].clone(),
            (Eliminator::NatInd, "zeroN") => args[1].clone(),
            (Eliminator::NatInd, "succN") => {
                let m = cargs[0].clone();
                let rec = flex(
                    name.clone(),
                    levels.clone(),
                    vec![
                        Elim::App(args[0].clone()),
                        Elim::App(args[1].clone()),
                        Elim::App(args[2].clone()),
                        Elim::App(m.clone()),
                    ],
                );
                let step = self.apply(&args[2], m);
                self.apply(&step, rec)
            }
            (Eliminator::ZInd, "zZero") => args[1].clone(),
            (Eliminator::ZInd, "zPos") => self.apply(&args[2], cargs[0].clone()),
            (Eliminator::ZInd, "zNeg") => self.apply(&args[3], cargs[0].clone()),
            (Eliminator::UnitInd, "tt") => args[1].clone(),
            (Eliminator::SumInd, "inl") => self.apply(&args[3], cargs[2].clone()),
            (Eliminator::SumInd, "inr") => self.apply(&args[4], cargs[2].clone()),
            (Eliminator::TruncRec, "tr") => self.apply(&args[3], cargs[1].clone()),
            (Eliminator::TruncInd, "tr") => match self.genv.mode() {
                TruncMode::Jde => {
                    RuleStats::bump(&stats.trunc_ind_fired);
                    self.apply(&args[3], cargs[1].clone())
                }
                TruncMode::Jne => {
                    RuleStats::bump(&stats.trunc_ind_blocked);
                    return None;
                }
            },
            _ => return None,
        };
        RuleStats::bump(&stats.iota);
        Some(self.elim_spine(result, &spine[rule.arity..]))
    }

    /// Weak-head normal form: unfolds until the head is stuck.
    pub fn force(&self, v: &Val) -> Val {
        let mut cur = v.clone();
        while let Some(next) = self.unfold(&cur) {
            cur = next;
        }
        cur
    }

    // ---- read-back ----------------------------------------------------

    /// Reads a value back as a term in a context of `lvl` variables. With
    /// `unfold` set the result is fully normal; otherwise constants stay
    /// folded.
    pub fn quote(&self, lvl: u32, v: &Val, unfold: bool) -> Term {
        let v = if unfold { self.force(v) } else { v.clone() };
        match &*v {
            Value::Sort(l) => Term::sort(l.clone()),
            Value::Pi(x, a, c) => Term::pi(
                x,
                self.quote(lvl, a, unfold),
                self.quote(lvl + 1, &self.inst(c, var(lvl)), unfold),
            ),
            Value::Lam(x, a, c) => Term::lam(
                x,
                self.quote(lvl, a, unfold),
                self.quote(lvl + 1, &self.inst(c, var(lvl)), unfold),
            ),
            Value::Sigma(x, a, c) => Term::sigma(
                x,
                self.quote(lvl, a, unfold),
                self.quote(lvl + 1, &self.inst(c, var(lvl)), unfold),
            ),
            Value::Pair(a, b) => Term::pair(self.quote(lvl, a, unfold), self.quote(lvl, b, unfold)),
            Value::Rigid(x, sp) => self.quote_spine(lvl, Term::var(lvl - 1 - x), sp, unfold),
            Value::Flex(n, ls, sp, _) => {
                let head = Term::new(TermKind::Global(n.clone(), ls.clone()), Default::default());
                self.quote_spine(lvl, head, sp, unfold)
            }
        }
    }

    fn quote_spine(&self, lvl: u32, mut head: Term, sp: &[Elim], unfold: bool) -> Term {
        for e in sp {
            head = match e {
                Elim::App(a) => Term::app(head, self.quote(lvl, a, unfold)),
                Elim::Fst => Term::fst(head),
                Elim::Snd => Term::snd(head),
            };
        }
        head
    }

    // ---- conversion ---------------------------------------------------

    pub fn conv(&self, lvl: u32, a: &Val, b: &Val) -> bool {
        if Rc::ptr_eq(a, b) {
            return true;
        }
        match (&**a, &**b) {
            (Value::Flex(n1, ls1, sp1, _), Value::Flex(n2, ls2, sp2, _)) => {
                if n1 == n2 && levels_equiv(ls1, ls2) && self.conv_spine(lvl, sp1, sp2) {
                    return true;
                }
                let h1 = self.genv.height_of(n1);
                let h2 = self.genv.height_of(n2);
                if h1 >= h2 {
                    if let Some(a2) = self.unfold(a) {
                        return if h1 == h2 {
                            match self.unfold(b) {
                                Some(b2) => self.conv(lvl, &a2, &b2),
                                None => self.conv(lvl, &a2, b),
                            }
                        } else {
                            self.conv(lvl, &a2, b)
                        };
                    }
                }
                if let Some(b2) = self.unfold(b) {
                    return self.conv(lvl, a, &b2);
                }
                if let Some(a2) = self.unfold(a) {
                    return self.conv(lvl, &a2, b);
                }
                false
            }
            (Value::Flex(..), _) => match self.unfold(a) {
                Some(a2) => self.conv(lvl, &a2, b),
                None => self.conv_whnf(lvl, a, b),
            },
            (_, Value::Flex(..)) => match self.unfold(b) {
                Some(b2) => self.conv(lvl, a, &b2),
                None => self.conv_whnf(lvl, a, b),
            },
            _ => self.conv_whnf(lvl, a, b),
        }
    }

    /// Both sides are in weak-head normal form.
    fn conv_whnf(&self, lvl: u32, a: &Val, b: &Val) -> bool {
        match (&**a, &**b) {
            (Value::Sort(l1), Value::Sort(l2)) => l1.equiv(l2),
            (Value::Pi(_, a1, c1), Value::Pi(_, a2, c2))
            | (Value::Sigma(_, a1, c1), Value::Sigma(_, a2, c2)) => {
                self.conv(lvl, a1, a2)
                    && self.conv(lvl + 1, &self.inst(c1, var(lvl)), &self.inst(c2, var(lvl)))
            }
            (Value::Lam(_, _, c1), Value::Lam(_, _, c2)) => {
                self.conv(lvl + 1, &self.inst(c1, var(lvl)), &self.inst(c2, var(lvl)))
            }
            (Value::Lam(_, _, c), _) => {
                let x = var(lvl);
                self.conv(lvl + 1, &self.inst(c, x.clone()), &self.apply(b, x))
            }
            (_, Value::Lam(_, _, c)) => {
                let x = var(lvl);
                self.conv(lvl + 1, &self.apply(a, x.clone()), &self.inst(c, x))
            }
            (Value::Pair(a1, b1), Value::Pair(a2, b2)) => {
                self.conv(lvl, a1, a2) && self.conv(lvl, b1, b2)
            }
            (Value::Pair(a1, b1), _) => {
                self.conv(lvl, a1, &self.fst(b)) && self.conv(lvl, b1, &self.snd(b))
            }
            (_, Value::Pair(a2, b2)) => {
                self.conv(lvl, &self.fst(a), a2) && self.conv(lvl, &self.snd(a), b2)
            }
            (Value::Rigid(x1, sp1), Value::Rigid(x2, sp2)) => {
                x1 == x2 && self.conv_spine(lvl, sp1, sp2)
            }
            (Value::Flex(n1, ls1, sp1, _), Value::Flex(n2, ls2, sp2, _)) => {
                n1 == n2 && levels_equiv(ls1, ls2) && self.conv_spine(lvl, sp1, sp2)
            }
            _ => false,
        }
    }

    fn conv_spine(&self, lvl: u32, s1: &[Elim], s2: &[Elim]) -> bool {
        s1.len() == s2.len()
            && s1.iter().zip(s2).all(|(e1, e2)| match (e1, e2) {
                (Elim::App(a), Elim::App(b)) => self.conv(lvl, a, b),
                (Elim::Fst, Elim::Fst) | (Elim::Snd, Elim::Snd) => true,
                _ => false,
            })
    }
}

fn levels_equiv(a: &[Level], b: &[Level]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.equiv(y))
}
