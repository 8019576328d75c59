use std::sync::Arc;

use super::term::{Name, Span, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DeclKind {
    Definition,
    Axiom,
}

/// A top-level definition or axiom.
#[derive(Clone, Debug)]
pub struct Declaration {
    pub name: Name,
    pub level_params: Arc<[Name]>,
    pub kind: DeclKind,
    pub ty: Term,
    /// Present exactly for definitions.
    pub body: Option<Term>,
    pub span: Span,
    pub file: Arc<str>,
    /// Text of the file the declaration came from; used to place diagnostics.
    pub source: Arc<str>,
}

impl Declaration {
    pub fn definition(name: &str, level_params: &[&str], ty: Term, body: Term) -> Declaration {
        Declaration {
            name: name.into(),
            level_params: level_params.iter().map(|s| Name::from(*s)).collect(),
            kind: DeclKind::Definition,
            ty,
            body: Some(body),
            span: Span::default(),
            file: "<builtin>".into(),
            source: "".into(),
        }
    }

    pub fn axiom(name: &str, level_params: &[&str], ty: Term) -> Declaration {
        Declaration {
            name: name.into(),
            level_params: level_params.iter().map(|s| Name::from(*s)).collect(),
            kind: DeclKind::Axiom,
            ty,
            body: None,
            span: Span::default(),
            file: "<builtin>".into(),
            source: "".into(),
        }
    }

    pub fn is_axiom(&self) -> bool {
        self.kind == DeclKind::Axiom
    }
}

/// Declarations are alpha-equal when names, kinds, level arity, types and
/// bodies agree up to alpha-equality.
pub fn decl_alpha_equal(a: &Declaration, b: &Declaration) -> bool {
    use super::term::alpha_equal;
    a.name == b.name
        && a.kind == b.kind
        && a.level_params.len() == b.level_params.len()
        && alpha_equal(&a.ty, &b.ty)
        && match (&a.body, &b.body) {
            (Some(x), Some(y)) => alpha_equal(x, y),
            (None, None) => true,
            _ => false,
        }
}
