use std::collections::{BTreeSet, HashMap};

use crate::checker::{EntryKind, Environment};
use crate::diag::Diagnostic;
use crate::syntax::Name;

/// The one primitive without a computation rule.
pub const SQUASH: &str = "squash";

/// Memoizing axiom auditor over one environment.
pub struct Auditor<'e> {
    env: &'e Environment,
    memo: HashMap<Name, BTreeSet<String>>,
}

impl<'e> Auditor<'e> {
    pub fn new(env: &'e Environment) -> Self {
        Auditor { env, memo: HashMap::new() }
    }

    /// Axioms (and `squash`) that `name`'s type and body depend on,
    /// transitively.
    pub fn audit(&mut self, name: &str) -> Result<BTreeSet<String>, Diagnostic> {
        let Some(entry) = self.env.get(name) else {
            return Err(Diagnostic::error("audit/unknown-name", format!("unknown name `{name}`")));
        };
        if let Some(s) = self.memo.get(name) {
            return Ok(s.clone());
        }
        let mut out = BTreeSet::new();
        if entry.kind == EntryKind::Axiom || &*entry.decl.name == SQUASH {
            out.insert(name.to_string());
        }
        let mut deps = Vec::new();
        entry.decl.ty.for_each_global(&mut |n, _| deps.push(n.clone()));
        if let Some(b) = &entry.decl.body {
            b.for_each_global(&mut |n, _| deps.push(n.clone()));
        }
        deps.sort();
        deps.dedup();
        for d in deps {
            if &*d != name {
                out.extend(self.audit(&d)?);
            }
        }
        self.memo.insert(entry.decl.name.clone(), out.clone());
        Ok(out)
    }
}

pub fn axiom_audit(env: &Environment, name: &str) -> Result<BTreeSet<String>, Diagnostic> {
    Auditor::new(env).audit(name)
}
