//! Checked global environments.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, OnceLock};

use crate::syntax::{DeclKind, Declaration, Name};

use super::prims;

/// Whether the dependent truncation eliminator computes on `tr`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum TruncMode {
    /// Only `truncRec` computes.
    #[default]
    Jne,
    /// Both `truncRec` and `truncInd` compute.
    Jde,
}

impl std::str::FromStr for TruncMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "jne" | "JNE" => Ok(TruncMode::Jne),
            "jde" | "JDE" => Ok(TruncMode::Jde),
            _ => Err(format!("unknown truncation mode `{s}` (expected jne or jde)")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EntryKind {
    Primitive,
    Axiom,
    Definition,
}

#[derive(Debug)]
pub struct Entry {
    pub decl: Declaration,
    pub kind: EntryKind,
    /// 0 for primitives and axioms, otherwise one more than the highest
    /// definition the body mentions. Conversion unfolds higher ones first.
    pub height: u32,
}

/// Counts of rule firings, shared by every snapshot derived from the same
/// base environment.
#[derive(Debug, Default)]
pub struct RuleStats {
    pub delta: AtomicU64,
    pub iota: AtomicU64,
    pub trunc_ind_fired: AtomicU64,
    /// `truncInd` met `tr …` but the mode forbade the rule.
    pub trunc_ind_blocked: AtomicU64,
}

impl RuleStats {
    pub fn get(counter: &AtomicU64) -> u64 {
        counter.load(Ordering::Relaxed)
    }

    pub(crate) fn bump(counter: &AtomicU64) {
        counter.fetch_add(1, Ordering::Relaxed);
    }
}

/// An immutable snapshot: the primitives plus checked declarations, in order.
#[derive(Clone, Debug)]
pub struct Environment {
    entries: Arc<HashMap<Name, Arc<Entry>>>,
    order: Arc<Vec<Name>>,
    mode: TruncMode,
    stats: Arc<RuleStats>,
}

fn primitive_entries() -> &'static (HashMap<Name, Arc<Entry>>, Vec<Name>) {
    static BASE: OnceLock<(HashMap<Name, Arc<Entry>>, Vec<Name>)> = OnceLock::new();
    BASE.get_or_init(|| {
        let mut map = HashMap::new();
        let mut order = Vec::new();
        for d in prims::primitive_decls() {
            order.push(d.name.clone());
            map.insert(
                d.name.clone(),
                Arc::new(Entry { decl: d.clone(), kind: EntryKind::Primitive, height: 0 }),
            );
        }
        (map, order)
    })
}

impl Environment {
    /// The primitives only.
    pub fn new(mode: TruncMode) -> Environment {
        let (map, order) = primitive_entries();
        Environment {
            entries: Arc::new(map.clone()),
            order: Arc::new(order.clone()),
            mode,
            stats: Arc::new(RuleStats::default()),
        }
    }

    pub fn mode(&self) -> TruncMode {
        self.mode
    }

    pub fn stats(&self) -> &RuleStats {
        &self.stats
    }

    pub fn get(&self, name: &str) -> Option<&Arc<Entry>> {
        self.entries.get(name)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.entries.contains_key(name)
    }

    /// All names in insertion order, primitives first.
    pub fn names(&self) -> &[Name] {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// The parser scope matching this environment.
    pub fn scope(&self) -> crate::syntax::Scope {
        let mut s = crate::syntax::Scope::empty();
        for (n, e) in self.entries.iter() {
            s.insert(n.clone(), e.decl.level_params.len());
        }
        s
    }

    pub(crate) fn height_of(&self, name: &str) -> u32 {
        self.entries.get(name).map_or(0, |e| e.height)
    }

    /// Appends an already checked declaration.
    pub(crate) fn push_checked(&mut self, decl: Declaration) {
        let kind = match decl.kind {
            DeclKind::Axiom => EntryKind::Axiom,
            DeclKind::Definition => EntryKind::Definition,
        };
        let height = match &decl.body {
            Some(b) => {
                let mut h = 0;
                b.for_each_global(&mut |n, _| h = h.max(self.height_of(n)));
                h + 1
            }
            None => 0,
        };
        let name = decl.name.clone();
        Arc::make_mut(&mut self.order).push(name.clone());
        Arc::make_mut(&mut self.entries).insert(name, Arc::new(Entry { decl, kind, height }));
    }
}
