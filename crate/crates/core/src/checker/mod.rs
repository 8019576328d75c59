//! The trusted kernel.

mod env;
pub mod nbe;
pub mod prims;
pub mod reduce;
mod typing;

use crate::diag::Diagnostic;
use crate::syntax::{Declaration, Name, Term};

pub use env::{Entry, EntryKind, Environment, RuleStats, TruncMode};
pub use reduce::{reduce_with_fuel, step, StepKind};

use nbe::Machine;
use typing::{Checker, Ctx};

/// A typing context: names with their types, outermost first.
#[derive(Clone, Debug, Default)]
pub struct Context {
    entries: Vec<(Name, Term)>,
}

impl Context {
    pub fn new() -> Context {
        Context::default()
    }

    /// Extends the context; `ty` lives in the current context.
    pub fn push(&mut self, name: &str, ty: Term) {
        self.entries.push((Name::from(name), ty));
    }

    pub fn with(mut self, name: &str, ty: Term) -> Context {
        self.push(name, ty);
        self
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn names(&self) -> Vec<Name> {
        self.entries.iter().map(|(n, _)| n.clone()).collect()
    }

    pub fn entries(&self) -> &[(Name, Term)] {
        &self.entries
    }
}

fn level_arity_of(terms: &[&Term]) -> u32 {
    let mut n = 0;
    for t in terms {
        n = n.max(t.level_var_bound());
    }
    n
}

fn checker<'a>(env: &'a Environment, level_arity: u32) -> Checker<'a> {
    Checker {
        m: Machine::new(env),
        source: "",
        file: "",
        decl: None,
        level_names: &[],
        level_arity,
    }
}

fn build_ctx(ch: &Checker<'_>, ctx: &Context) -> Ctx {
    let mut c = Ctx::new();
    for (n, ty) in &ctx.entries {
        let v = ch.eval(&c, ty);
        c.bind(n.clone(), v);
    }
    c
}

/// Synthesizes the type of `t`.
pub fn infer(env: &Environment, ctx: &Context, t: &Term) -> Result<Term, Diagnostic> {
    let ch = checker(env, level_arity_of(&[t]));
    let mut c = build_ctx(&ch, ctx);
    let ty = ch.infer(&mut c, t)?;
    Ok(ch.m.quote(c.lvl(), &ty, false))
}

/// Checks `t` against the type `ty`.
pub fn check(env: &Environment, ctx: &Context, t: &Term, ty: &Term) -> Result<(), Diagnostic> {
    let ch = checker(env, level_arity_of(&[t, ty]));
    let mut c = build_ctx(&ch, ctx);
    let vty = ch.eval(&c, ty);
    ch.check(&mut c, t, &vty)
}

/// Weak-head normal form: the head is not a redex. Arguments are returned
/// with constants folded.
pub fn whnf(env: &Environment, ctx: &Context, t: &Term) -> Term {
    let ch = checker(env, 0);
    let c = build_ctx(&ch, ctx);
    let v = ch.m.force(&ch.eval(&c, t));
    ch.m.quote(c.lvl(), &v, false)
}

/// Full beta-delta-iota normal form.
pub fn normalize(env: &Environment, ctx: &Context, t: &Term) -> Term {
    let ch = checker(env, 0);
    let c = build_ctx(&ch, ctx);
    let v = ch.eval(&c, t);
    ch.m.quote(c.lvl(), &v, true)
}

/// Judgmental equality, with eta for functions and pairs.
pub fn convertible(env: &Environment, ctx: &Context, t: &Term, u: &Term) -> bool {
    let ch = checker(env, 0);
    let c = build_ctx(&ch, ctx);
    let a = ch.eval(&c, t);
    let b = ch.eval(&c, u);
    ch.m.conv(c.lvl(), &a, &b)
}

/// Checks a declaration and returns the extended environment.
pub fn check_declaration(env: &Environment, d: &Declaration) -> Result<Environment, Diagnostic> {
    env.clone().extend(d.clone())
}

impl Environment {
    /// Checks `d` and appends it, consuming `self`.
    pub fn extend(mut self, d: Declaration) -> Result<Environment, Diagnostic> {
        self.check_only(&d)?;
        self.push_checked(d);
        Ok(self)
    }

    /// Appends a declaration that `check_only` accepted.
    pub fn push_checked_decl(&mut self, d: Declaration) {
        self.push_checked(d);
    }

    /// Checks `d` against this environment without adding it.
    pub fn check_only(&self, d: &Declaration) -> Result<(), Diagnostic> {
        let ch = Checker {
            m: Machine::new(self),
            source: &d.source,
            file: &d.file,
            decl: Some(&d.name),
            level_names: &d.level_params,
            level_arity: d.level_params.len() as u32,
        };
        let at_decl = |code: &str, msg: String| {
            Diagnostic::error(code, msg)
                .in_file(&d.file)
                .at(&d.source, d.span)
                .for_definition(&d.name)
        };
        if self.contains(&d.name) {
            return Err(at_decl(
                "check/duplicate-declaration",
                format!("`{}` is already declared", d.name),
            ));
        }
        match (&d.kind, &d.body) {
            (crate::syntax::DeclKind::Axiom, Some(_)) => {
                return Err(at_decl("check/axiom-with-body", "axioms have no body".into()))
            }
            (crate::syntax::DeclKind::Definition, None) => {
                return Err(at_decl("check/missing-body", "definitions need a body".into()))
            }
            _ => {}
        }
        let mut c = Ctx::new();
        ch.infer_sort(&mut c, &d.ty)?;
        if let Some(body) = &d.body {
            let ty = ch.eval(&c, &d.ty);
            ch.check(&mut c, body, &ty)?;
        }
        Ok(())
    }
}
