//! Pretty-printer producing text the parser accepts.

use std::collections::HashSet;
use std::fmt::Write;

use super::decl::{DeclKind, Declaration};
use super::term::{Name, Term, TermKind};

const RESERVED: &[&str] = &["def", "axiom", "fun", "Type", "fst", "snd"];

// Precedences: binders and arrows < products < application < atoms.
const P_BINDER: u8 = 0;
const P_PROD: u8 = 1;
const P_APP: u8 = 2;
const P_ATOM: u8 = 3;

struct Printer<'a> {
    names: Vec<String>,
    avoid: HashSet<String>,
    levels: &'a [Name],
    out: String,
}

fn valid_ident(s: &str) -> bool {
    let mut cs = s.chars();
    match cs.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    cs.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

impl Printer<'_> {
    fn fresh(&self, hint: &str) -> String {
        let base = if valid_ident(hint) { hint } else { "x" };
        let taken = |n: &str| {
            RESERVED.contains(&n) || self.avoid.contains(n) || self.names.iter().any(|m| m == n)
        };
        if !taken(base) {
            return base.to_string();
        }
        (1..)
            .map(|k| format!("{base}{k}"))
            .find(|n| !taken(n))
            .expect("unbounded search")
    }

    fn open(&mut self, prec: u8, needed: u8) {
        if prec > needed {
            self.out.push('(');
        }
    }

    fn close(&mut self, prec: u8, needed: u8) {
        if prec > needed {
            self.out.push(')');
        }
    }

    fn binder(&mut self, hint: &str, ann: &Term) -> String {
        let n = self.fresh(hint);
        let _ = write!(self.out, "({n} : ");
        self.term(ann, P_BINDER);
        self.out.push(')');
        n
    }

    fn term(&mut self, t: &Term, prec: u8) {
        match t.kind() {
            TermKind::Var(i) => {
                let i = *i as usize;
                if i < self.names.len() {
                    let n = self.names[self.names.len() - 1 - i].clone();
                    self.out.push_str(&n);
                } else {
                    let _ = write!(self.out, "#{i}");
                }
            }
            TermKind::Sort(l) => {
                self.open(prec, P_APP);
                let _ = write!(self.out, "Type {}", l.display(self.levels));
                self.close(prec, P_APP);
            }
            TermKind::Global(n, ls) => {
                self.out.push_str(n);
                if !ls.is_empty() {
                    self.out.push_str(" {");
                    for (k, l) in ls.iter().enumerate() {
                        if k > 0 {
                            self.out.push(' ');
                        }
                        let _ = write!(self.out, "{}", l.display(self.levels));
                    }
                    self.out.push('}');
                }
            }
            TermKind::App(..) => {
                let (head, args) = t.unapply();
                self.open(prec, P_APP);
                self.term(head, P_APP);
                for a in args {
                    self.out.push(' ');
                    self.term(a, P_ATOM);
                }
                self.close(prec, P_APP);
            }
            TermKind::Fst(p) | TermKind::Snd(p) => {
                self.open(prec, P_APP);
                self.out.push_str(if matches!(t.kind(), TermKind::Fst(_)) { "fst " } else { "snd " });
                self.term(p, P_ATOM);
                self.close(prec, P_APP);
            }
            TermKind::Pair(a, b) => {
                self.out.push('<');
                self.term(a, P_BINDER);
                self.out.push_str(", ");
                self.term(b, P_BINDER);
                self.out.push('>');
            }
            TermKind::Lam(..) => {
                self.open(prec, P_BINDER);
                self.out.push_str("fun");
                let mut cur = t;
                let mut pushed = 0;
                while let TermKind::Lam(h, ann, body) = cur.kind() {
                    self.out.push(' ');
                    let n = self.binder(h, ann);
                    self.names.push(n);
                    pushed += 1;
                    cur = body;
                }
                self.out.push_str(" => ");
                self.term(cur, P_BINDER);
                self.names.truncate(self.names.len() - pushed);
                self.close(prec, P_BINDER);
            }
            TermKind::Pi(h, a, b) | TermKind::Sigma(h, a, b) => {
                let is_pi = matches!(t.kind(), TermKind::Pi(..));
                let op = if is_pi { " -> " } else { " * " };
                if b.has_free(0) {
                    self.open(prec, P_BINDER);
                    let n = self.binder(h, a);
                    self.out.push_str(op);
                    self.names.push(n);
                    self.term(b, P_BINDER);
                    self.names.pop();
                    self.close(prec, P_BINDER);
                } else {
                    let (mine, left, right) = if is_pi {
                        (P_BINDER, P_PROD, P_BINDER)
                    } else {
                        (P_PROD, P_APP, P_PROD)
                    };
                    self.open(prec, mine);
                    self.term(a, left);
                    self.out.push_str(op);
                    // Unreferenced, so never printed.
                    self.names.push(String::new());
                    self.term(b, right);
                    self.names.pop();
                    self.close(prec, mine);
                }
            }
        }
    }
}

fn globals_of(terms: &[&Term]) -> HashSet<String> {
    let mut set = HashSet::new();
    for t in terms {
        t.for_each_global(&mut |n, _| {
            set.insert(n.to_string());
        });
    }
    set
}

fn printer<'a>(avoid: HashSet<String>, levels: &'a [Name]) -> Printer<'a> {
    Printer { names: Vec::new(), avoid, levels, out: String::new() }
}

/// Prints a closed term.
pub fn print_term(t: &Term) -> String {
    print_term_in(t, &[], &[])
}

/// Prints a term whose free variables are named by `ctx` (outermost
/// first) and whose level variables are named by `levels`. Clashing context
/// names are freshened the same way binders are.
pub fn print_term_in(t: &Term, ctx: &[Name], levels: &[Name]) -> String {
    let mut p = printer(globals_of(&[t]), levels);
    for n in ctx {
        let f = p.fresh(n);
        p.names.push(f);
    }
    p.term(t, P_BINDER);
    p.out
}

/// Prints a declaration in the concrete syntax.
pub fn print_decl(d: &Declaration) -> String {
    let mut terms = vec![&d.ty];
    if let Some(b) = &d.body {
        terms.push(b);
    }
    let mut avoid = globals_of(&terms);
    avoid.insert(d.name.to_string());
    let mut p = printer(avoid, &d.level_params);
    p.out.push_str(match d.kind {
        DeclKind::Definition => "def ",
        DeclKind::Axiom => "axiom ",
    });
    p.out.push_str(&d.name);
    if !d.level_params.is_empty() {
        p.out.push_str(" {");
        p.out.push_str(&d.level_params.join(" "));
        p.out.push('}');
    }
    p.out.push_str(" : ");
    p.term(&d.ty, P_BINDER);
    if let Some(b) = &d.body {
        p.out.push_str(" := ");
        p.term(b, P_BINDER);
    }
    p.out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::level::Level;
    use crate::syntax::parser::{parse_term, Scope};
    use crate::syntax::term::alpha_equal;

    fn nat() -> Term {
        Term::global("Nat", vec![])
    }

    #[test]
    fn identity_lambda() {
        let t = Term::lam("x", nat(), Term::var(0));
        assert_eq!(print_term(&t), "fun (x : Nat) => x");
    }

    #[test]
    fn clashing_hints_get_suffixes() {
        let t = Term::lam("x", nat(), Term::lam("x", nat(), Term::app(Term::var(1), Term::var(0))));
        assert_eq!(print_term(&t), "fun (x : Nat) (x1 : Nat) => x x1");
    }

    #[test]
    fn binder_avoids_global_names() {
        let t = Term::lam("Nat", Term::sort(Level::Num(0)), nat());
        assert_eq!(print_term(&t), "fun (Nat1 : Type 0) => Nat");
    }

    #[test]
    fn arrows_and_products() {
        let t = Term::pi("_", Term::sigma("_", nat(), nat()), Term::pi("_", nat(), nat()));
        assert_eq!(print_term(&t), "Nat * Nat -> Nat -> Nat");
        let t = Term::sigma("_", Term::pi("_", nat(), nat()), nat());
        assert_eq!(print_term(&t), "(Nat -> Nat) * Nat");
    }

    #[test]
    fn printed_terms_reparse() {
        let scope = Scope::primitives();
        for src in [
            "(A : Type 0) -> (B : A -> Type 0) -> ((x : A) * B x) -> A",
            "fun (p : Nat * Nat) => <snd p, fst p>",
            "fun (f : Nat -> Nat) (n : Nat) => f (f (succN n))",
            "(x : Nat) -> Id {0} Nat x x",
            "fun (A : Type 1) => (fun (x : Type 1) => x) A",
        ] {
            let t = parse_term(src, &scope, &[], &[]).unwrap();
            let printed = print_term(&t);
            let back = parse_term(&printed, &scope, &[], &[]).unwrap();
            assert!(alpha_equal(&t, &back), "{src} printed as {printed}");
        }
    }
}
