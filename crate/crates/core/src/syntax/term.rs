//! Core terms with de Bruijn indices, and the mechanical operations on them.

use std::fmt;
use std::sync::Arc;

use super::level::Level;

pub type Name = Arc<str>;

/// Byte range in the source file a node was parsed from.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Span {
    pub start: u32,
    pub end: u32,
}

impl Span {
    pub fn new(start: usize, end: usize) -> Span {
        Span { start: start as u32, end: end as u32 }
    }

    pub fn join(self, other: Span) -> Span {
        Span { start: self.start.min(other.start), end: self.end.max(other.end) }
    }
}

#[derive(Debug)]
pub enum TermKind {
    Var(u32),
    Sort(Level),
    Global(Name, Arc<[Level]>),
    Pi(Name, Term, Term),
    Lam(Name, Term, Term),
    App(Term, Term),
    Sigma(Name, Term, Term),
    Pair(Term, Term),
    Fst(Term),
    Snd(Term),
}

#[derive(Debug)]
pub struct Node {
    pub kind: TermKind,
    pub span: Span,
}

/// A shared, immutable term.
#[derive(Clone)]
pub struct Term(Arc<Node>);

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.kind.fmt(f)
    }
}

impl Term {
    pub fn new(kind: TermKind, span: Span) -> Term {
        Term(Arc::new(Node { kind, span }))
    }

    pub fn kind(&self) -> &TermKind {
        &self.0.kind
    }

    pub fn span(&self) -> Span {
        self.0.span
    }

    pub fn ptr_eq(&self, other: &Term) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    pub fn var(i: u32) -> Term {
        Term::new(TermKind::Var(i), Span::default())
    }

    pub fn sort(l: Level) -> Term {
        Term::new(TermKind::Sort(l), Span::default())
    }

    pub fn global(name: &str, levels: Vec<Level>) -> Term {
        Term::new(TermKind::Global(name.into(), levels.into()), Span::default())
    }

    pub fn pi(name: &str, dom: Term, cod: Term) -> Term {
        Term::new(TermKind::Pi(name.into(), dom, cod), Span::default())
    }

    pub fn lam(name: &str, ann: Term, body: Term) -> Term {
        Term::new(TermKind::Lam(name.into(), ann, body), Span::default())
    }

    pub fn app(f: Term, a: Term) -> Term {
        Term::new(TermKind::App(f, a), Span::default())
    }

    pub fn apps(f: Term, args: impl IntoIterator<Item = Term>) -> Term {
        args.into_iter().fold(f, Term::app)
    }

    pub fn sigma(name: &str, fst: Term, snd: Term) -> Term {
        Term::new(TermKind::Sigma(name.into(), fst, snd), Span::default())
    }

    pub fn pair(a: Term, b: Term) -> Term {
        Term::new(TermKind::Pair(a, b), Span::default())
    }

    pub fn fst(t: Term) -> Term {
        Term::new(TermKind::Fst(t), Span::default())
    }

    pub fn snd(t: Term) -> Term {
        Term::new(TermKind::Snd(t), Span::default())
    }

    fn with_span_of(self, other: &Term) -> Term {
        if self.span() == other.span() {
            self
        } else {
            self.with_span(other.span())
        }
    }

    pub fn with_span(&self, span: Span) -> Term {
        Term::new(self.rebuild_kind(|t, _| t.clone()), span)
    }

    /// Rebuilds the outer node with `f` applied to each child; `f` receives
    /// the number of binders entered for that child.
    fn rebuild_kind(&self, mut f: impl FnMut(&Term, u32) -> Term) -> TermKind {
        use TermKind::*;
        match self.kind() {
            Var(i) => Var(*i),
            Sort(l) => Sort(l.clone()),
            Global(n, ls) => Global(n.clone(), ls.clone()),
            Pi(x, a, b) => Pi(x.clone(), f(a, 0), f(b, 1)),
            Lam(x, a, b) => Lam(x.clone(), f(a, 0), f(b, 1)),
            App(g, a) => App(f(g, 0), f(a, 0)),
            Sigma(x, a, b) => Sigma(x.clone(), f(a, 0), f(b, 1)),
            Pair(a, b) => Pair(f(a, 0), f(b, 0)),
            Fst(p) => Fst(f(p, 0)),
            Snd(p) => Snd(f(p, 0)),
        }
    }

    fn map_vars(&self, depth: u32, f: &impl Fn(u32, u32) -> Term) -> Term {
        match self.kind() {
            TermKind::Var(i) => f(*i, depth).with_span_of(self),
            TermKind::Sort(_) | TermKind::Global(..) => self.clone(),
            _ => Term::new(self.rebuild_kind(|c, k| c.map_vars(depth + k, f)), self.span()),
        }
    }

    /// Adds `by` to every free index at or above `cutoff`.
    pub fn shift_from(&self, cutoff: u32, by: i64) -> Term {
        if by == 0 {
            return self.clone();
        }
        self.map_vars(cutoff, &|i, depth| {
            if i >= depth {
                let j = i as i64 + by;
                assert!(j >= 0, "negative de Bruijn index after shift");
                Term::var(j as u32)
            } else {
                Term::var(i)
            }
        })
    }

    pub fn shift(&self, by: i64) -> Term {
        self.shift_from(0, by)
    }

    /// Substitutes `arg` for index 0 of a term under one binder, lowering
    /// the remaining free indices by one.
    pub fn instantiate(&self, arg: &Term) -> Term {
        self.map_vars(0, &|i, depth| {
            if i == depth {
                arg.shift(depth as i64)
            } else if i > depth {
                Term::var(i - 1)
            } else {
                Term::var(i)
            }
        })
    }

    /// Simultaneous substitution of the first `args.len()` free indices;
    /// `args[0]` replaces index 0. Indices beyond are lowered.
    pub fn instantiate_many(&self, args: &[Term]) -> Term {
        let n = args.len() as u32;
        self.map_vars(0, &|i, depth| {
            if i < depth {
                Term::var(i)
            } else if i - depth < n {
                args[(i - depth) as usize].shift(depth as i64)
            } else {
                Term::var(i - n)
            }
        })
    }

    /// Substitutes level parameters throughout.
    pub fn subst_levels(&self, ls: &[Level]) -> Term {
        match self.kind() {
            TermKind::Sort(l) => Term::new(TermKind::Sort(l.subst(ls)), self.span()),
            TermKind::Global(n, args) => Term::new(
                TermKind::Global(n.clone(), args.iter().map(|l| l.subst(ls)).collect()),
                self.span(),
            ),
            TermKind::Var(_) => self.clone(),
            _ => Term::new(self.rebuild_kind(|c, _| c.subst_levels(ls)), self.span()),
        }
    }

    /// True when index `i` (relative to this term) occurs free.
    pub fn has_free(&self, i: u32) -> bool {
        match self.kind() {
            TermKind::Var(j) => *j == i,
            TermKind::Sort(_) | TermKind::Global(..) => false,
            TermKind::Pi(_, a, b) | TermKind::Lam(_, a, b) | TermKind::Sigma(_, a, b) => {
                a.has_free(i) || b.has_free(i + 1)
            }
            TermKind::App(a, b) | TermKind::Pair(a, b) => a.has_free(i) || b.has_free(i),
            TermKind::Fst(p) | TermKind::Snd(p) => p.has_free(i),
        }
    }

    /// One more than the largest free index, or 0 for closed terms.
    pub fn free_bound(&self) -> u32 {
        match self.kind() {
            TermKind::Var(j) => j + 1,
            TermKind::Sort(_) | TermKind::Global(..) => 0,
            TermKind::Pi(_, a, b) | TermKind::Lam(_, a, b) | TermKind::Sigma(_, a, b) => {
                a.free_bound().max(b.free_bound().saturating_sub(1))
            }
            TermKind::App(a, b) | TermKind::Pair(a, b) => a.free_bound().max(b.free_bound()),
            TermKind::Fst(p) | TermKind::Snd(p) => p.free_bound(),
        }
    }

    pub fn size(&self) -> usize {
        match self.kind() {
            TermKind::Var(_) | TermKind::Sort(_) | TermKind::Global(..) => 1,
            TermKind::Pi(_, a, b)
            | TermKind::Lam(_, a, b)
            | TermKind::Sigma(_, a, b)
            | TermKind::App(a, b)
            | TermKind::Pair(a, b) => 1 + a.size() + b.size(),
            TermKind::Fst(p) | TermKind::Snd(p) => 1 + p.size(),
        }
    }

    /// Calls `f` on every global name occurring in the term.
    pub fn for_each_global(&self, f: &mut impl FnMut(&Name, &[Level])) {
        match self.kind() {
            TermKind::Global(n, ls) => f(n, ls),
            TermKind::Var(_) | TermKind::Sort(_) => {}
            TermKind::Pi(_, a, b)
            | TermKind::Lam(_, a, b)
            | TermKind::Sigma(_, a, b)
            | TermKind::App(a, b)
            | TermKind::Pair(a, b) => {
                a.for_each_global(f);
                b.for_each_global(f);
            }
            TermKind::Fst(p) | TermKind::Snd(p) => p.for_each_global(f),
        }
    }

    /// Head and arguments of an application spine.
    /// One more than the largest level variable occurring anywhere.
    pub fn level_var_bound(&self) -> u32 {
        match self.kind() {
            TermKind::Var(_) => 0,
            TermKind::Sort(l) => l.var_bound(),
            TermKind::Global(_, ls) => ls.iter().map(Level::var_bound).max().unwrap_or(0),
            TermKind::Pi(_, a, b)
            | TermKind::Lam(_, a, b)
            | TermKind::Sigma(_, a, b)
            | TermKind::App(a, b)
            | TermKind::Pair(a, b) => a.level_var_bound().max(b.level_var_bound()),
            TermKind::Fst(p) | TermKind::Snd(p) => p.level_var_bound(),
        }
    }

    pub fn unapply(&self) -> (&Term, Vec<&Term>) {
        let mut args = Vec::new();
        let mut t = self;
        while let TermKind::App(f, a) = t.kind() {
            args.push(a);
            t = f;
        }
        args.reverse();
        (t, args)
    }
}

/// Structural equality ignoring binder names and spans; levels compared up
/// to normalization.
pub fn alpha_equal(t: &Term, u: &Term) -> bool {
    use TermKind::*;
    if t.ptr_eq(u) {
        return true;
    }
    match (t.kind(), u.kind()) {
        (Var(i), Var(j)) => i == j,
        (Sort(l), Sort(m)) => l.equiv(m),
        (Global(n, ls), Global(m, ms)) => {
            n == m && ls.len() == ms.len() && ls.iter().zip(ms.iter()).all(|(a, b)| a.equiv(b))
        }
        (Pi(_, a, b), Pi(_, c, d))
        | (Lam(_, a, b), Lam(_, c, d))
        | (Sigma(_, a, b), Sigma(_, c, d))
        | (App(a, b), App(c, d))
        | (Pair(a, b), Pair(c, d)) => alpha_equal(a, c) && alpha_equal(b, d),
        (Fst(p), Fst(q)) | (Snd(p), Snd(q)) => alpha_equal(p, q),
        _ => false,
    }
}
