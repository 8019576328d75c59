//! Universe levels: numerals, level parameters, successor and binary max.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// A universe level expression.
///
/// Level variables are indices into the level parameter list of the
/// enclosing declaration.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Level {
    Num(u32),
    Var(u32),
    Succ(Arc<Level>),
    Max(Arc<Level>, Arc<Level>),
}

/// Canonical form `max(c, v1 + k1, ..., vn + kn)` with variables sorted and
/// the constant dropped when some offset dominates it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Canon {
    constant: u32,
    vars: BTreeMap<u32, u32>,
}

impl Canon {
    fn of(l: &Level) -> Canon {
        match l {
            Level::Num(n) => Canon { constant: *n, vars: BTreeMap::new() },
            Level::Var(v) => {
                let mut vars = BTreeMap::new();
                vars.insert(*v, 0);
                Canon { constant: 0, vars }
            }
            Level::Succ(inner) => {
                let c = Canon::of(inner);
                Canon {
                    constant: c.constant + 1,
                    vars: c.vars.into_iter().map(|(v, k)| (v, k + 1)).collect(),
                }
            }
            Level::Max(a, b) => {
                let mut ca = Canon::of(a);
                let cb = Canon::of(b);
                ca.constant = ca.constant.max(cb.constant);
                for (v, k) in cb.vars {
                    let e = ca.vars.entry(v).or_insert(k);
                    *e = (*e).max(k);
                }
                ca
            }
        }
        .prune()
    }

    fn prune(mut self) -> Canon {
        if let Some(max_off) = self.vars.values().copied().max() {
            if self.constant <= max_off {
                self.constant = 0;
            }
        }
        self
    }

    fn to_level(&self) -> Level {
        let mut parts: Vec<Level> = Vec::new();
        if self.constant > 0 || self.vars.is_empty() {
            parts.push(Level::Num(self.constant));
        }
        for (&v, &k) in &self.vars {
            let mut l = Level::Var(v);
            for _ in 0..k {
                l = Level::Succ(Arc::new(l));
            }
            parts.push(l);
        }
        let mut it = parts.into_iter();
        let first = it.next().expect("canonical level has at least one part");
        it.fold(first, |acc, l| Level::Max(Arc::new(acc), Arc::new(l)))
    }
}

impl Level {
    pub fn zero() -> Level {
        Level::Num(0)
    }

    pub fn succ(self) -> Level {
        match self {
            Level::Num(n) => Level::Num(n + 1),
            l => Level::Succ(Arc::new(l)),
        }
    }

    pub fn max(a: Level, b: Level) -> Level {
        Level::Max(Arc::new(a), Arc::new(b))
    }

    /// Folds numerals, flattens `max` and drops dominated operands.
    pub fn normalize(&self) -> Level {
        Canon::of(self).to_level()
    }

    /// Equality in the max-successor algebra over the naturals.
    pub fn equiv(&self, other: &Level) -> bool {
        Canon::of(self) == Canon::of(other)
    }

    pub fn as_num(&self) -> Option<u32> {
        let c = Canon::of(self);
        c.vars.is_empty().then_some(c.constant)
    }

    pub fn has_vars(&self) -> bool {
        match self {
            Level::Num(_) => false,
            Level::Var(_) => true,
            Level::Succ(l) => l.has_vars(),
            Level::Max(a, b) => a.has_vars() || b.has_vars(),
        }
    }

    /// Largest variable index plus one.
    pub fn var_bound(&self) -> u32 {
        match self {
            Level::Num(_) => 0,
            Level::Var(v) => v + 1,
            Level::Succ(l) => l.var_bound(),
            Level::Max(a, b) => a.var_bound().max(b.var_bound()),
        }
    }

    /// Replaces variable `i` with `subst[i]`.
    pub fn subst(&self, subst: &[Level]) -> Level {
        match self {
            Level::Num(_) => self.clone(),
            Level::Var(v) => subst
                .get(*v as usize)
                .cloned()
                .unwrap_or_else(|| self.clone()),
            Level::Succ(l) => Level::Succ(Arc::new(l.subst(subst))),
            Level::Max(a, b) => Level::Max(Arc::new(a.subst(subst)), Arc::new(b.subst(subst))),
        }
    }

    /// Renders with the given parameter names; unnamed variables print as `?iN`.
    pub fn display<'a>(&'a self, names: &'a [Arc<str>]) -> LevelDisplay<'a> {
        LevelDisplay { level: self, names }
    }
}

pub struct LevelDisplay<'a> {
    level: &'a Level,
    names: &'a [Arc<str>],
}

impl fmt::Display for LevelDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.level {
            Level::Num(n) => write!(f, "{n}"),
            Level::Var(v) => match self.names.get(*v as usize) {
                Some(name) => write!(f, "{name}"),
                None => write!(f, "?l{v}"),
            },
            Level::Succ(l) => write!(f, "({} +1)", l.display(self.names)),
            Level::Max(a, b) => write!(
                f,
                "(max {} {})",
                a.display(self.names),
                b.display(self.names)
            ),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(i: u32) -> Level {
        Level::Var(i)
    }

    #[test]
    fn closed_levels_fold_to_numerals() {
        let l = Level::max(Level::Num(0), Level::Num(1));
        assert_eq!(l.normalize(), Level::Num(1));
        let l = Level::Succ(Arc::new(Level::max(Level::Num(2), Level::Num(0))));
        assert_eq!(l.normalize(), Level::Num(3));
    }

    #[test]
    fn dominated_constant_is_dropped() {
        // max 1 (i+1) = i+1
        let l = Level::max(Level::Num(1), v(0).succ());
        assert_eq!(l.normalize(), v(0).succ());
        // max 2 i keeps the constant
        let l = Level::max(Level::Num(2), v(0));
        assert_eq!(l.normalize(), Level::max(Level::Num(2), v(0)));
    }

    #[test]
    fn max_is_commutative_and_idempotent() {
        let a = Level::max(v(1), v(0).succ());
        let b = Level::max(v(0).succ(), v(1));
        assert_eq!(a.normalize(), b.normalize());
        assert!(Level::max(v(0), v(0)).equiv(&v(0)));
        assert!(Level::max(v(0), v(0).succ()).equiv(&v(0).succ()));
    }

    #[test]
    fn substitution_replaces_variables() {
        let l = Level::max(v(0), v(1).succ());
        let s = l.subst(&[Level::Num(3), Level::Num(0)]);
        assert_eq!(s.as_num(), Some(3));
    }
}
