//! Integer expressions, their big-integer reference semantics, and the
//! numeral coding of Z.

use num_bigint::BigInt;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::syntax::{print_term, Term, TermKind};

/// Largest literal magnitude accepted by `encode`.
pub const LITERAL_BOUND: i64 = 1_000_000;

/// Largest size accepted by the generators.
pub const MAX_GEN_SIZE: usize = 200;

/// An expression over the corpus operations on Z.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ZExpr {
    Lit(i64),
    Succ(Box<ZExpr>),
    Pred(Box<ZExpr>),
    Neg(Box<ZExpr>),
    Plus(Box<ZExpr>, Box<ZExpr>),
    Minus(Box<ZExpr>, Box<ZExpr>),
}

impl ZExpr {
    pub fn succ(e: ZExpr) -> ZExpr {
        ZExpr::Succ(Box::new(e))
    }

    pub fn pred(e: ZExpr) -> ZExpr {
        ZExpr::Pred(Box::new(e))
    }

    pub fn neg(e: ZExpr) -> ZExpr {
        ZExpr::Neg(Box::new(e))
    }

    pub fn plus(a: ZExpr, b: ZExpr) -> ZExpr {
        ZExpr::Plus(Box::new(a), Box::new(b))
    }

    pub fn minus(a: ZExpr, b: ZExpr) -> ZExpr {
        ZExpr::Minus(Box::new(a), Box::new(b))
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        match self {
            ZExpr::Lit(_) => 1,
            ZExpr::Succ(e) | ZExpr::Pred(e) | ZExpr::Neg(e) => 1 + e.size(),
            ZExpr::Plus(a, b) | ZExpr::Minus(a, b) => 1 + a.size() + b.size(),
        }
    }

    /// Largest literal magnitude.
    pub fn max_literal(&self) -> u64 {
        match self {
            ZExpr::Lit(n) => n.unsigned_abs(),
            ZExpr::Succ(e) | ZExpr::Pred(e) | ZExpr::Neg(e) => e.max_literal(),
            ZExpr::Plus(a, b) | ZExpr::Minus(a, b) => a.max_literal().max(b.max_literal()),
        }
    }
}

/// Standard integer value of `e`.
pub fn z_oracle_eval(e: &ZExpr) -> BigInt {
    match e {
        ZExpr::Lit(n) => BigInt::from(*n),
        ZExpr::Succ(e) => z_oracle_eval(e) + 1,
        ZExpr::Pred(e) => z_oracle_eval(e) - 1,
        ZExpr::Neg(e) => -z_oracle_eval(e),
        ZExpr::Plus(a, b) => z_oracle_eval(a) + z_oracle_eval(b),
        ZExpr::Minus(a, b) => z_oracle_eval(a) - z_oracle_eval(b),
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EncodeError {
    #[error("literal {0} exceeds the bound {LITERAL_BOUND}")]
    LiteralOutOfRange(i64),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DecodeError {
    #[error("not a canonical integer: {0}")]
    NotCanonicalZ(String),
    #[error("not a canonical natural number: {0}")]
    NotCanonicalNat(String),
}

/// `succN^n zeroN`.
pub fn nat_numeral(n: u64) -> Term {
    let succ = Term::global("succN", vec![]);
    (0..n).fold(Term::global("zeroN", vec![]), |t, _| Term::app(succ.clone(), t))
}

/// Canonical Z term: `zPos k` is k+1 and `zNeg k` is -(k+1).
pub fn z_numeral(n: i64) -> Term {
    match n {
        0 => Term::global("zZero", vec![]),
        n if n > 0 => Term::app(Term::global("zPos", vec![]), nat_numeral(n as u64 - 1)),
        n => Term::app(Term::global("zNeg", vec![]), nat_numeral(n.unsigned_abs() - 1)),
    }
}

/// The corpus term for `e`; needs the `int` corpus file in scope.
pub fn encode(e: &ZExpr) -> Result<Term, EncodeError> {
    let g = |n: &str| Term::global(n, vec![]);
    Ok(match e {
        ZExpr::Lit(n) if n.unsigned_abs() > LITERAL_BOUND as u64 => {
            return Err(EncodeError::LiteralOutOfRange(*n))
        }
        ZExpr::Lit(n) => z_numeral(*n),
        ZExpr::Succ(e) => Term::app(g("succZ"), encode(e)?),
        ZExpr::Pred(e) => Term::app(g("predZ"), encode(e)?),
        ZExpr::Neg(e) => Term::app(g("negZ"), encode(e)?),
        ZExpr::Plus(a, b) => Term::apps(g("plusZ"), [encode(a)?, encode(b)?]),
        ZExpr::Minus(a, b) => Term::apps(g("minusZ"), [encode(a)?, encode(b)?]),
    })
}

fn is_global(t: &Term, name: &str) -> bool {
    matches!(t.kind(), TermKind::Global(n, _) if &**n == name)
}

/// Value of a canonical `Nat` term.
pub fn decode_nat(t: &Term) -> Result<BigInt, DecodeError> {
    let mut n = BigInt::from(0);
    let mut cur = t;
    loop {
        match cur.kind() {
            TermKind::Global(..) if is_global(cur, "zeroN") => return Ok(n),
            TermKind::App(f, a) if is_global(f, "succN") => {
                n += 1;
                cur = a;
            }
            _ => return Err(DecodeError::NotCanonicalNat(print_term(t))),
        }
    }
}

/// Value of a canonical `Z` term.
pub fn decode_numeral(t: &Term) -> Result<BigInt, DecodeError> {
    let bad = || DecodeError::NotCanonicalZ(print_term(t));
    match t.kind() {
        TermKind::Global(..) if is_global(t, "zZero") => Ok(BigInt::from(0)),
        TermKind::App(f, a) if is_global(f, "zPos") => {
            decode_nat(a).map(|k| k + 1).map_err(|_| bad())
        }
        TermKind::App(f, a) if is_global(f, "zNeg") => {
            decode_nat(a).map(|k| -(k + BigInt::from(1))).map_err(|_| bad())
        }
        _ => Err(bad()),
    }
}

/// Literal range used by the generators.
pub const GEN_LITERAL_MAX: i64 = 12;

/// A random expression with exactly `size` nodes (clamped to 1..=200).
pub fn gen_z_expr(seed: u64, size: usize) -> ZExpr {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    gen_sized(&mut rng, size.clamp(1, MAX_GEN_SIZE))
}

fn gen_sized(rng: &mut ChaCha8Rng, size: usize) -> ZExpr {
    if size == 1 {
        return ZExpr::Lit(rng.gen_range(-GEN_LITERAL_MAX..=GEN_LITERAL_MAX));
    }
    let binary = size >= 3 && rng.gen_bool(0.4);
    if binary {
        let left = rng.gen_range(1..size - 1);
        let a = gen_sized(rng, left);
        let b = gen_sized(rng, size - 1 - left);
        if rng.gen_bool(0.5) {
            ZExpr::plus(a, b)
        } else {
            ZExpr::minus(a, b)
        }
    } else {
        let e = gen_sized(rng, size - 1);
        match rng.gen_range(0..3) {
            0 => ZExpr::succ(e),
            1 => ZExpr::pred(e),
            _ => ZExpr::neg(e),
        }
    }
}

/// Every expression of at most `max_size` nodes over the literals `-2..=2`.
pub fn small_z_exprs(max_size: usize) -> Vec<ZExpr> {
    let mut by_size: Vec<Vec<ZExpr>> = vec![Vec::new()];
    for size in 1..=max_size {
        let mut here = Vec::new();
        if size == 1 {
            here.extend((-2..=2).map(ZExpr::Lit));
        } else {
            for e in &by_size[size - 1] {
                here.push(ZExpr::succ(e.clone()));
                here.push(ZExpr::pred(e.clone()));
                here.push(ZExpr::neg(e.clone()));
            }
            for left in 1..size - 1 {
                for a in &by_size[left] {
                    for b in &by_size[size - 1 - left] {
                        here.push(ZExpr::plus(a.clone(), b.clone()));
                        here.push(ZExpr::minus(a.clone(), b.clone()));
                    }
                }
            }
        }
        by_size.push(here);
    }
    by_size.into_iter().flatten().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oracle_examples() {
        assert_eq!(z_oracle_eval(&ZExpr::succ(ZExpr::Lit(-1))), BigInt::from(0));
        assert_eq!(z_oracle_eval(&ZExpr::neg(ZExpr::neg(ZExpr::Lit(7)))), BigInt::from(7));
        assert_eq!(z_oracle_eval(&ZExpr::minus(ZExpr::Lit(3), ZExpr::Lit(5))), BigInt::from(-2));
    }

    #[test]
    fn numerals_round_trip() {
        for n in -30..=30 {
            assert_eq!(decode_numeral(&z_numeral(n)), Ok(BigInt::from(n)));
        }
        let neg_two = Term::app(Term::global("zNeg", vec![]), nat_numeral(1));
        assert_eq!(decode_numeral(&neg_two), Ok(BigInt::from(-2)));
    }

    #[test]
    fn decode_rejects_stuck_terms() {
        let stuck = Term::app(Term::global("succZ", vec![]), z_numeral(0));
        assert!(matches!(decode_numeral(&stuck), Err(DecodeError::NotCanonicalZ(_))));
        let open = Term::app(Term::global("zPos", vec![]), Term::var(0));
        assert!(decode_numeral(&open).is_err());
    }

    #[test]
    fn encode_enforces_the_literal_bound() {
        assert!(encode(&ZExpr::Lit(1000)).is_ok());
        assert_eq!(
            encode(&ZExpr::Lit(-LITERAL_BOUND - 1)).unwrap_err(),
            EncodeError::LiteralOutOfRange(-LITERAL_BOUND - 1)
        );
    }

    #[test]
    fn generator_is_deterministic_and_sized() {
        assert_eq!(gen_z_expr(1, 5), gen_z_expr(1, 5));
        for seed in 0..50 {
            for size in [1, 2, 3, 17, 200] {
                assert_eq!(gen_z_expr(seed, size).size(), size);
            }
        }
    }

    #[test]
    fn small_enumeration_counts() {
        // 5 literals; 15 unary; 45 unary-of-unary plus 50 binary.
        assert_eq!(small_z_exprs(1).len(), 5);
        assert_eq!(small_z_exprs(2).len(), 20);
        assert_eq!(small_z_exprs(3).len(), 115);
    }
}
