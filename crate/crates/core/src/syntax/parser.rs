//! Recursive-descent parser with scope checking.
//!
//! Identifiers resolve to the innermost local binder first and to a global
//! declaration otherwise; anything else is rejected here, before checking.

use std::collections::HashMap;
use std::sync::Arc;

use crate::diag::{line_col, Diagnostic};

use super::decl::{DeclKind, Declaration};
use super::level::Level;
use super::lexer::{lex, Tok, Token};
use super::term::{Name, Span, Term, TermKind};

/// Names visible to the parser: each global with its number of level
/// parameters.
#[derive(Clone, Debug, Default)]
pub struct Scope {
    globals: HashMap<Name, usize>,
}

impl Scope {
    pub fn empty() -> Scope {
        Scope::default()
    }

    /// The primitive constants only.
    pub fn primitives() -> Scope {
        crate::checker::prims::primitive_scope().clone()
    }

    pub fn insert(&mut self, name: Name, level_arity: usize) {
        self.globals.insert(name, level_arity);
    }

    pub fn contains(&self, name: &str) -> bool {
        self.globals.contains_key(name)
    }

    pub fn level_arity(&self, name: &str) -> Option<usize> {
        self.globals.get(name).copied()
    }

    pub fn names(&self) -> impl Iterator<Item = &Name> {
        self.globals.keys()
    }
}

struct Parser<'s> {
    toks: Vec<Token>,
    pos: usize,
    source: &'s str,
    source_arc: Arc<str>,
    file: &'s str,
    scope: &'s Scope,
    /// Declarations of the current file, visible to later ones.
    local_globals: HashMap<Name, usize>,
    locals: Vec<Name>,
    level_params: Vec<Name>,
    current_decl: Option<String>,
}

type PResult<T> = Result<T, Diagnostic>;

impl<'s> Parser<'s> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        let i = (self.pos + k).min(self.toks.len() - 1);
        &self.toks[i].tok
    }

    fn span(&self) -> Span {
        self.toks[self.pos].span
    }

    fn prev_end(&self) -> u32 {
        if self.pos == 0 {
            0
        } else {
            self.toks[self.pos - 1].span.end
        }
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos < self.toks.len() - 1 {
            self.pos += 1;
        }
        t
    }

    fn error_at(&self, code: &str, span: Span, msg: impl Into<String>) -> Diagnostic {
        let (line, col) = line_col(self.source, span.start as usize);
        let mut d = Diagnostic::error(code, msg).in_file(self.file).at_line_col(line, col);
        if let Some(n) = &self.current_decl {
            d = d.for_definition(n);
        }
        d
    }

    fn unexpected(&self, expected: &str) -> Diagnostic {
        let t = self.peek();
        if *t == Tok::Eof {
            self.error_at(
                "parse/unexpected-eof",
                self.span(),
                format!("unexpected end of input, expected {expected}"),
            )
        } else {
            self.error_at(
                "parse/unexpected-token",
                self.span(),
                format!("unexpected {}, expected {expected}", t.describe()),
            )
        }
    }

    fn expect(&mut self, tok: Tok) -> PResult<Token> {
        if *self.peek() == tok {
            Ok(self.bump())
        } else {
            Err(self.unexpected(&tok.describe()))
        }
    }

    fn ident(&mut self) -> PResult<(Name, Span)> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                let sp = self.bump().span;
                Ok((Name::from(s.as_str()), sp))
            }
            _ => Err(self.unexpected("an identifier")),
        }
    }

    fn global_arity(&self, name: &str) -> Option<usize> {
        self.local_globals
            .get(name)
            .copied()
            .or_else(|| self.scope.level_arity(name))
    }

    // ---- declarations -------------------------------------------------

    fn decl(&mut self) -> PResult<Declaration> {
        let start = self.span();
        let kind = match self.peek() {
            Tok::Def => DeclKind::Definition,
            Tok::Axiom => DeclKind::Axiom,
            _ => return Err(self.unexpected("`def` or `axiom`")),
        };
        self.bump();
        let (name, name_span) = self.ident()?;
        self.current_decl = Some(name.to_string());
        if self.local_globals.contains_key(&name) {
            return Err(self.error_at(
                "parse/duplicate-name",
                name_span,
                format!("`{name}` is already declared in this file"),
            ));
        }
        let mut level_params = Vec::new();
        if *self.peek() == Tok::LBrace {
            self.bump();
            loop {
                match self.peek() {
                    Tok::Ident(_) => {
                        let (l, sp) = self.ident()?;
                        if level_params.contains(&l) {
                            return Err(self.error_at(
                                "parse/duplicate-name",
                                sp,
                                format!("level parameter `{l}` declared twice"),
                            ));
                        }
                        level_params.push(l);
                    }
                    Tok::RBrace if !level_params.is_empty() => {
                        self.bump();
                        break;
                    }
                    _ => return Err(self.unexpected("a level parameter name")),
                }
            }
        }
        self.level_params = level_params.clone();
        self.expect(Tok::Colon)?;
        let ty = self.term()?;
        let body = match kind {
            DeclKind::Definition => {
                self.expect(Tok::ColonEq)?;
                Some(self.term()?)
            }
            DeclKind::Axiom => {
                if *self.peek() == Tok::ColonEq {
                    return Err(self.error_at(
                        "parse/unexpected-token",
                        self.span(),
                        "axioms have no body",
                    ));
                }
                None
            }
        };
        match self.peek() {
            Tok::Def | Tok::Axiom | Tok::Eof => {}
            _ => return Err(self.unexpected("the next declaration")),
        }
        self.local_globals.insert(name.clone(), level_params.len());
        self.current_decl = None;
        Ok(Declaration {
            name,
            level_params: level_params.into(),
            kind,
            ty,
            body,
            span: Span { start: start.start, end: self.prev_end() },
            file: Arc::from(self.file),
            source: self.source_arc.clone(),
        })
    }

    // ---- terms --------------------------------------------------------

    /// Lookahead for `( ID+ :`.
    fn at_binder_group(&self) -> bool {
        if *self.peek() != Tok::LParen {
            return false;
        }
        let mut k = 1;
        while let Tok::Ident(_) = self.peek_at(k) {
            k += 1;
        }
        k > 1 && *self.peek_at(k) == Tok::Colon
    }

    /// Parses `( x y : A )`, pushing the names as it goes; returns each
    /// binder with its (shifted) annotation.
    fn binder_group(&mut self, out: &mut Vec<(Name, Term, Span)>) -> PResult<()> {
        self.expect(Tok::LParen)?;
        let mut names = Vec::new();
        while let Tok::Ident(_) = self.peek() {
            names.push(self.ident()?);
        }
        self.expect(Tok::Colon)?;
        let ann = self.term()?;
        self.expect(Tok::RParen)?;
        for (i, (n, sp)) in names.into_iter().enumerate() {
            // Later names in the same group see the earlier ones.
            out.push((n.clone(), ann.shift(i as i64), sp));
            self.locals.push(n);
        }
        Ok(())
    }

    fn term(&mut self) -> PResult<Term> {
        let start = self.span();
        if *self.peek() == Tok::Fun {
            self.bump();
            let mut binders = Vec::new();
            if !self.at_binder_group() {
                return Err(self.unexpected("a binder `(x : A)`"));
            }
            while self.at_binder_group() {
                self.binder_group(&mut binders)?;
            }
            self.expect(Tok::FatArrow)?;
            let body = self.term();
            self.locals.truncate(self.locals.len() - binders.len());
            let mut body = body?;
            let end = body.span().end;
            for (n, ann, _) in binders.into_iter().rev() {
                body = Term::new(TermKind::Lam(n, ann, body), Span { start: start.start, end });
            }
            return Ok(body);
        }
        if self.at_binder_group() {
            let mut binders = Vec::new();
            while self.at_binder_group() {
                if let Err(e) = self.binder_group(&mut binders) {
                    self.locals.truncate(self.locals.len() - binders.len());
                    return Err(e);
                }
            }
            let is_pi = match self.peek() {
                Tok::Arrow => true,
                Tok::Star => false,
                _ => {
                    self.locals.truncate(self.locals.len() - binders.len());
                    return Err(self.unexpected("`->` or `*` after binders"));
                }
            };
            self.bump();
            let body = self.term();
            self.locals.truncate(self.locals.len() - binders.len());
            let mut body = body?;
            let end = body.span().end;
            for (n, ann, _) in binders.into_iter().rev() {
                let kind = if is_pi {
                    TermKind::Pi(n, ann, body)
                } else {
                    TermKind::Sigma(n, ann, body)
                };
                body = Term::new(kind, Span { start: start.start, end });
            }
            return Ok(body);
        }
        let lhs = self.product()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            // The codomain sits under an anonymous binder so indices line up.
            self.locals.push(Name::from(""));
            let rhs = self.term();
            self.locals.pop();
            let rhs = rhs?;
            let span = lhs.span().join(rhs.span());
            return Ok(Term::new(TermKind::Pi(Name::from("_"), lhs, rhs), span));
        }
        Ok(lhs)
    }

    fn product(&mut self) -> PResult<Term> {
        let lhs = self.application()?;
        if *self.peek() == Tok::Star {
            self.bump();
            let rhs = if self.at_binder_group() {
                self.locals.push(Name::from(""));
                let r = self.term();
                self.locals.pop();
                r?
            } else {
                self.locals.push(Name::from(""));
                let r = self.product();
                self.locals.pop();
                r?
            };
            let span = lhs.span().join(rhs.span());
            return Ok(Term::new(TermKind::Sigma(Name::from("_"), lhs, rhs), span));
        }
        Ok(lhs)
    }

    fn starts_atom(&self) -> bool {
        matches!(self.peek(), Tok::Ident(_) | Tok::LParen | Tok::LAngle | Tok::Type)
    }

    fn application(&mut self) -> PResult<Term> {
        if !self.starts_atom() {
            return Err(self.unexpected("a term"));
        }
        let mut head = self.atom()?;
        while self.starts_atom() {
            let arg = self.atom()?;
            let span = head.span().join(arg.span());
            head = Term::new(TermKind::App(head, arg), span);
        }
        Ok(head)
    }

    fn atom(&mut self) -> PResult<Term> {
        let start = self.span();
        match self.peek().clone() {
            Tok::LParen => {
                if self.at_binder_group() {
                    return Err(self.error_at(
                        "parse/unexpected-token",
                        start,
                        "a binder group must be followed by `->` or `*`; parenthesize the whole binder form",
                    ));
                }
                self.bump();
                let t = self.term()?;
                let close = self.expect(Tok::RParen)?;
                Ok(t.with_span(Span { start: start.start, end: close.span.end }))
            }
            Tok::LAngle => {
                self.bump();
                let a = self.term()?;
                self.expect(Tok::Comma)?;
                let b = self.term()?;
                let close = self.expect(Tok::RAngle)?;
                Ok(Term::new(TermKind::Pair(a, b), Span { start: start.start, end: close.span.end }))
            }
            Tok::Type => {
                self.bump();
                let l = self.level()?;
                Ok(Term::new(TermKind::Sort(l), Span { start: start.start, end: self.prev_end() }))
            }
            Tok::Ident(s) if s == "fst" || s == "snd" => {
                self.bump();
                if !self.starts_atom() {
                    return Err(self.unexpected(&format!("an argument to `{s}`")));
                }
                let p = self.atom()?;
                let span = Span { start: start.start, end: p.span().end };
                let kind = if s == "fst" { TermKind::Fst(p) } else { TermKind::Snd(p) };
                Ok(Term::new(kind, span))
            }
            Tok::Ident(s) => {
                self.bump();
                if let Some(pos) = self.locals.iter().rposition(|n| **n == *s) {
                    if *self.peek() == Tok::LBrace {
                        return Err(self.error_at(
                            "parse/level-arity",
                            self.span(),
                            format!("local variable `{s}` takes no level arguments"),
                        ));
                    }
                    let idx = (self.locals.len() - 1 - pos) as u32;
                    return Ok(Term::new(TermKind::Var(idx), start));
                }
                let Some(arity) = self.global_arity(&s) else {
                    return Err(self.error_at(
                        "parse/unbound-global",
                        start,
                        format!("unknown identifier `{s}`"),
                    ));
                };
                let mut levels = Vec::new();
                if *self.peek() == Tok::LBrace {
                    self.bump();
                    while *self.peek() != Tok::RBrace {
                        levels.push(self.level()?);
                    }
                    self.bump();
                }
                if levels.len() != arity {
                    return Err(self.error_at(
                        "parse/level-arity",
                        start,
                        format!(
                            "`{s}` expects {arity} level argument(s), found {}",
                            levels.len()
                        ),
                    ));
                }
                Ok(Term::new(
                    TermKind::Global(Name::from(s.as_str()), levels.into()),
                    Span { start: start.start, end: self.prev_end() },
                ))
            }
            _ => Err(self.unexpected("a term")),
        }
    }

    fn level(&mut self) -> PResult<Level> {
        match self.peek().clone() {
            Tok::Nat(n) => {
                self.bump();
                Ok(Level::Num(n))
            }
            Tok::Ident(s) => {
                let sp = self.bump().span;
                match self.level_params.iter().position(|p| **p == *s) {
                    Some(i) => Ok(Level::Var(i as u32)),
                    None => Err(self.error_at(
                        "parse/unknown-level-variable",
                        sp,
                        format!("unknown level variable `{s}`"),
                    )),
                }
            }
            Tok::LParen => {
                self.bump();
                if matches!(self.peek(), Tok::Ident(s) if s == "max") {
                    self.bump();
                    let a = self.level()?;
                    let b = self.level()?;
                    self.expect(Tok::RParen)?;
                    Ok(Level::max(a, b))
                } else {
                    let l = self.level()?;
                    self.expect(Tok::PlusOne)?;
                    self.expect(Tok::RParen)?;
                    Ok(Level::Succ(Arc::new(l)))
                }
            }
            _ => Err(self.unexpected("a level")),
        }
    }
}

/// Parses a file using only the primitive constants as the global scope.
pub fn parse_file(source: &str, file: &str) -> Result<Vec<Declaration>, Vec<Diagnostic>> {
    parse_file_in(source, file, &Scope::primitives())
}

/// Parses a file against an explicit global scope.
pub fn parse_file_in(
    source: &str,
    file: &str,
    scope: &Scope,
) -> Result<Vec<Declaration>, Vec<Diagnostic>> {
    let toks = lex(source, file).map_err(|d| vec![d])?;
    let mut p = Parser {
        toks,
        pos: 0,
        source,
        source_arc: Arc::from(source),
        file,
        scope,
        local_globals: HashMap::new(),
        locals: Vec::new(),
        level_params: Vec::new(),
        current_decl: None,
    };
    let mut decls = Vec::new();
    while *p.peek() != Tok::Eof {
        match p.decl() {
            Ok(d) => decls.push(d),
            Err(e) => return Err(vec![e]),
        }
    }
    Ok(decls)
}

/// Parses a single term with the given local names (outermost first) and
/// level parameter names in scope.
pub fn parse_term(
    source: &str,
    scope: &Scope,
    locals: &[Name],
    level_params: &[Name],
) -> Result<Term, Diagnostic> {
    let toks = lex(source, "<term>")?;
    let mut p = Parser {
        toks,
        pos: 0,
        source,
        source_arc: Arc::from(""),
        file: "<term>",
        scope,
        local_globals: HashMap::new(),
        locals: locals.to_vec(),
        level_params: level_params.to_vec(),
        current_decl: None,
    };
    let t = p.term()?;
    if *p.peek() != Tok::Eof {
        return Err(p.unexpected("end of input"));
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::term::alpha_equal;

    fn parse_one(src: &str) -> Declaration {
        let mut ds = parse_file(src, "t.ht").unwrap_or_else(|e| panic!("{}", e[0]));
        assert_eq!(ds.len(), 1);
        ds.pop().unwrap()
    }

    #[test]
    fn polymorphic_identity() {
        let d = parse_one("def id {i} : (A : Type i) -> A -> A := fun (A : Type i) (x : A) => x");
        assert_eq!(&*d.name, "id");
        assert_eq!(d.level_params.len(), 1);
        assert_eq!(d.kind, DeclKind::Definition);
        let expected_ty = Term::pi(
            "A",
            Term::sort(Level::Var(0)),
            Term::pi("_", Term::var(0), Term::var(1)),
        );
        assert!(alpha_equal(&d.ty, &expected_ty), "{:?}", d.ty);
        let expected_body = Term::lam(
            "A",
            Term::sort(Level::Var(0)),
            Term::lam("x", Term::var(0), Term::var(0)),
        );
        assert!(alpha_equal(d.body.as_ref().unwrap(), &expected_body));
    }

    #[test]
    fn missing_body_is_eof() {
        let e = parse_file("def bad : Type 0 :=", "bad.ht").unwrap_err();
        assert_eq!(e[0].code, "parse/unexpected-eof");
        assert_eq!(e[0].line, 1);
        assert_eq!(e[0].definition.as_deref(), Some("bad"));
    }

    #[test]
    fn unknown_identifier() {
        let e = parse_file("def x : Nat := y", "u.ht").unwrap_err();
        assert_eq!(e[0].code, "parse/unbound-global");
        assert_eq!((e[0].line, e[0].col), (1, 16));
    }

    #[test]
    fn self_reference_is_unbound() {
        let e = parse_file("def loopy : Nat := loopy", "u.ht").unwrap_err();
        assert_eq!(e[0].code, "parse/unbound-global");
    }

    #[test]
    fn duplicate_names() {
        let e = parse_file("def a : Nat := zeroN\ndef a : Nat := zeroN", "d.ht").unwrap_err();
        assert_eq!(e[0].code, "parse/duplicate-name");
        assert_eq!(e[0].line, 2);
    }

    #[test]
    fn level_arity_checked() {
        let e = parse_file("def x : Type 1 := Id Nat", "l.ht").unwrap_err();
        assert_eq!(e[0].code, "parse/level-arity");
        let e = parse_file("def x {i} : Type (i +1) := Type j", "l.ht").unwrap_err();
        assert_eq!(e[0].code, "parse/unknown-level-variable");
    }

    #[test]
    fn arrows_and_products_associate_right() {
        let d = parse_one("axiom f : Nat -> Nat -> Nat * Nat * Nat");
        // Nat -> (Nat -> (Nat * (Nat * Nat)))
        match d.ty.kind() {
            TermKind::Pi(_, _, b) => match b.kind() {
                TermKind::Pi(_, _, c) => match c.kind() {
                    TermKind::Sigma(_, _, d) => assert!(matches!(d.kind(), TermKind::Sigma(..))),
                    k => panic!("{k:?}"),
                },
                k => panic!("{k:?}"),
            },
            k => panic!("{k:?}"),
        }
    }

    #[test]
    fn telescopes_and_fst() {
        let d = parse_one(
            "def p : (A : Type 0) (B : A -> Type 0) (w : (x : A) * B x) -> A := \
             fun (A : Type 0) (B : A -> Type 0) (w : (x : A) * B x) => fst w",
        );
        let body = d.body.unwrap();
        let mut t = &body;
        for _ in 0..3 {
            match t.kind() {
                TermKind::Lam(_, _, b) => t = b,
                k => panic!("{k:?}"),
            }
        }
        assert!(matches!(t.kind(), TermKind::Fst(v) if matches!(v.kind(), TermKind::Var(0))));
    }
}
