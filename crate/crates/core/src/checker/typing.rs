//! Bidirectional type checking.

use std::rc::Rc;

use crate::diag::Diagnostic;
use crate::syntax::{print_term_in, Level, Name, Span, Term, TermKind};

use super::nbe::{var, Closure, Env, LevelEnv, Machine, Val, Value};

/// Longest normal form printed in a mismatch message.
const NORMAL_FORM_LIMIT: usize = 2000;

pub(crate) struct Ctx {
    pub env: Env,
    pub types: Vec<Val>,
    pub names: Vec<Name>,
}

impl Ctx {
    pub fn new() -> Ctx {
        Ctx { env: Env::default(), types: Vec::new(), names: Vec::new() }
    }

    pub fn lvl(&self) -> u32 {
        self.types.len() as u32
    }

    pub fn bind(&mut self, name: Name, ty: Val) {
        self.env = self.env.push(var(self.lvl()));
        self.types.push(ty);
        self.names.push(name);
    }

    pub fn unbind(&mut self, saved_env: Env) {
        self.env = saved_env;
        self.types.pop();
        self.names.pop();
    }
}

pub(crate) struct Checker<'a> {
    pub m: Machine<'a>,
    pub source: &'a str,
    pub file: &'a str,
    pub decl: Option<&'a str>,
    pub level_names: &'a [Name],
    pub level_arity: u32,
}

type CResult<T> = Result<T, Diagnostic>;

impl<'a> Checker<'a> {
    fn levels(&self) -> LevelEnv {
        None
    }

    pub fn eval(&self, ctx: &Ctx, t: &Term) -> Val {
        self.m.eval(t, &ctx.env, &self.levels())
    }

    fn error(&self, code: &str, span: Span, msg: impl Into<String>) -> Diagnostic {
        let mut d = Diagnostic::error(code, msg).in_file(self.file).at(self.source, span);
        if let Some(n) = self.decl {
            d = d.for_definition(n);
        }
        d
    }

    fn show(&self, ctx: &Ctx, v: &Val, unfold: bool) -> String {
        let t = self.m.quote(ctx.lvl(), v, unfold);
        let mut s = print_term_in(&t, &ctx.names, self.level_names);
        if unfold && s.len() > NORMAL_FORM_LIMIT {
            let mut cut = NORMAL_FORM_LIMIT;
            while !s.is_char_boundary(cut) {
                cut -= 1;
            }
            s.truncate(cut);
            s.push_str(" …");
        }
        s
    }

    fn show_term(&self, ctx: &Ctx, t: &Term) -> String {
        print_term_in(t, &ctx.names, self.level_names)
    }

    fn mismatch(&self, ctx: &Ctx, span: Span, expected: &Val, actual: &Val) -> Diagnostic {
        let e = self.m.force(expected);
        let a = self.m.force(actual);
        let code = match (&*e, &*a) {
            (Value::Sort(_), Value::Sort(_)) => "check/universe-inconsistency",
            _ => "check/type-mismatch",
        };
        let msg = format!(
            "type mismatch\n  expected: {}\n  actual:   {}\n  expected (normal form): {}\n  actual (normal form):   {}",
            self.show(ctx, expected, false),
            self.show(ctx, actual, false),
            self.show(ctx, expected, true),
            self.show(ctx, actual, true),
        );
        self.error(code, span, msg)
    }

    fn check_level(&self, l: &Level, span: Span) -> CResult<()> {
        if l.var_bound() > self.level_arity {
            return Err(self.error(
                "check/unknown-level-variable",
                span,
                "level variable out of range",
            ));
        }
        Ok(())
    }

    /// Infers the type of `t`, which must be a type, and returns its level.
    pub fn infer_sort(&self, ctx: &mut Ctx, t: &Term) -> CResult<Level> {
        let ty = self.infer(ctx, t)?;
        match &*self.m.force(&ty) {
            Value::Sort(l) => Ok(l.clone()),
            _ => Err(self.error(
                "check/not-a-type",
                t.span(),
                format!(
                    "expected a type, but `{}` has type {}",
                    self.show_term(ctx, t),
                    self.show(ctx, &ty, false)
                ),
            )),
        }
    }

    pub fn infer(&self, ctx: &mut Ctx, t: &Term) -> CResult<Val> {
        match t.kind() {
            TermKind::Var(i) => {
                let i = *i as usize;
                match ctx.types.len().checked_sub(i + 1) {
                    Some(k) => Ok(ctx.types[k].clone()),
                    None => Err(self.error("check/unbound-variable", t.span(), "unbound variable")),
                }
            }
            TermKind::Sort(l) => {
                self.check_level(l, t.span())?;
                Ok(Rc::new(Value::Sort(l.clone().succ().normalize())))
            }
            TermKind::Global(n, ls) => {
                let Some(entry) = self.m.genv.get(n) else {
                    return Err(self.error(
                        "check/unbound-global",
                        t.span(),
                        format!("unknown constant `{n}`"),
                    ));
                };
                let arity = entry.decl.level_params.len();
                if ls.len() != arity {
                    return Err(self.error(
                        "check/level-arity",
                        t.span(),
                        format!("`{n}` expects {arity} level argument(s), found {}", ls.len()),
                    ));
                }
                for l in ls.iter() {
                    self.check_level(l, t.span())?;
                }
                let lenv: LevelEnv = Some(ls.iter().map(|l| l.normalize()).collect());
                Ok(self.m.eval(&entry.decl.ty, &Env::default(), &lenv))
            }
            TermKind::Pi(x, a, b) | TermKind::Sigma(x, a, b) => {
                let i = self.infer_sort(ctx, a)?;
                let va = self.eval(ctx, a);
                let saved = ctx.env.clone();
                ctx.bind(x.clone(), va);
                let j = self.infer_sort(ctx, b)?;
                ctx.unbind(saved);
                Ok(Rc::new(Value::Sort(Level::max(i, j).normalize())))
            }
            TermKind::Lam(x, a, body) => {
                self.infer_sort(ctx, a)?;
                let va = self.eval(ctx, a);
                let saved = ctx.env.clone();
                ctx.bind(x.clone(), va.clone());
                let tb = self.infer(ctx, body)?;
                let tb = self.m.quote(ctx.lvl(), &tb, false);
                ctx.unbind(saved);
                Ok(Rc::new(Value::Pi(
                    x.clone(),
                    va,
                    Closure::new(ctx.env.clone(), self.levels(), tb),
                )))
            }
            TermKind::App(f, a) => {
                let tf = self.infer(ctx, f)?;
                match &*self.m.force(&tf) {
                    Value::Pi(_, dom, cod) => {
                        self.check(ctx, a, dom)?;
                        let va = self.eval(ctx, a);
                        Ok(self.m.inst(cod, va))
                    }
                    _ => Err(self.error(
                        "check/not-a-function",
                        f.span(),
                        format!(
                            "`{}` is applied to an argument but has type {}",
                            self.show_term(ctx, f),
                            self.show(ctx, &tf, false)
                        ),
                    )),
                }
            }
            TermKind::Fst(p) | TermKind::Snd(p) => {
                let tp = self.infer(ctx, p)?;
                match &*self.m.force(&tp) {
                    Value::Sigma(_, a, b) => {
                        if matches!(t.kind(), TermKind::Fst(_)) {
                            Ok(a.clone())
                        } else {
                            let vp = self.eval(ctx, p);
                            Ok(self.m.inst(b, self.m.fst(&vp)))
                        }
                    }
                    _ => Err(self.error(
                        "check/not-a-pair",
                        p.span(),
                        format!(
                            "`{}` is projected but has type {}",
                            self.show_term(ctx, p),
                            self.show(ctx, &tp, false)
                        ),
                    )),
                }
            }
            // Non-dependent fallback, so that `fst <a, b>` redexes stay typeable.
            TermKind::Pair(a, b) => {
                let ta = self.infer(ctx, a)?;
                let tb = self.infer(ctx, b)?;
                let tb = self.m.quote(ctx.lvl(), &tb, false).shift(1);
                Ok(Rc::new(Value::Sigma(
                    Name::from("_"),
                    ta,
                    Closure::new(ctx.env.clone(), self.levels(), tb),
                )))
            }
        }
    }

    pub fn check(&self, ctx: &mut Ctx, t: &Term, ty: &Val) -> CResult<()> {
        match t.kind() {
            TermKind::Lam(x, a, body) => {
                let fty = self.m.force(ty);
                let Value::Pi(_, dom, cod) = &*fty else {
                    return Err(self.error(
                        "check/type-mismatch",
                        t.span(),
                        format!(
                            "a function was given where a value of type {} was expected",
                            self.show(ctx, ty, false)
                        ),
                    ));
                };
                self.infer_sort(ctx, a)?;
                let va = self.eval(ctx, a);
                if !self.m.conv(ctx.lvl(), &va, dom) {
                    return Err(self.mismatch(ctx, a.span(), dom, &va));
                }
                let saved = ctx.env.clone();
                ctx.bind(x.clone(), dom.clone());
                let cod_v = self.m.inst(cod, var(ctx.lvl() - 1));
                self.check(ctx, body, &cod_v)?;
                ctx.unbind(saved);
                Ok(())
            }
            TermKind::Pair(a, b) => {
                let sty = self.m.force(ty);
                let Value::Sigma(_, fa, fb) = &*sty else {
                    return Err(self.error(
                        "check/type-mismatch",
                        t.span(),
                        format!(
                            "a pair was given where a value of type {} was expected",
                            self.show(ctx, ty, false)
                        ),
                    ));
                };
                self.check(ctx, a, fa)?;
                let va = self.eval(ctx, a);
                let tb = self.m.inst(fb, va);
                self.check(ctx, b, &tb)
            }
            _ => {
                let actual = self.infer(ctx, t)?;
                if self.m.conv(ctx.lvl(), &actual, ty) {
                    Ok(())
                } else {
                    Err(self.mismatch(ctx, t.span(), ty, &actual))
                }
            }
        }
    }
}
