//! The primitive constants, given in the concrete syntax, and their iota
//! rules.

use std::sync::OnceLock;

use crate::syntax::{parse_file_in, Declaration, Scope};

pub const PRIMITIVE_SOURCE: &str = "\
axiom Id {i} : (A : Type i) -> A -> A -> Type i
axiom refl {i} : (A : Type i) (a : A) -> Id {i} A a a
axiom J {i j} : (A : Type i) (a : A) (C : (y : A) -> Id {i} A a y -> Type j)
  -> C a (refl {i} A a) -> (y : A) (p : Id {i} A a y) -> C y p

axiom Nat : Type 0
axiom zeroN : Nat
axiom succN : Nat -> Nat
axiom natInd {j} : (P : Nat -> Type j) -> P zeroN
  -> ((n : Nat) -> P n -> P (succN n)) -> (n : Nat) -> P n

axiom Z : Type 0
axiom zZero : Z
axiom zPos : Nat -> Z
axiom zNeg : Nat -> Z
axiom zInd {j} : (P : Z -> Type j) -> P zZero
  -> ((n : Nat) -> P (zPos n)) -> ((n : Nat) -> P (zNeg n)) -> (z : Z) -> P z

axiom Empty : Type 0
axiom emptyElim {j} : (P : Empty -> Type j) (e : Empty) -> P e

axiom Unit : Type 0
axiom tt : Unit
axiom unitInd {j} : (P : Unit -> Type j) -> P tt -> (u : Unit) -> P u

axiom Sum {i j} : Type i -> Type j -> Type (max i j)
axiom inl {i j} : (A : Type i) (B : Type j) -> A -> Sum {i j} A B
axiom inr {i j} : (A : Type i) (B : Type j) -> B -> Sum {i j} A B
axiom sumInd {i j k} : (A : Type i) (B : Type j) (P : Sum {i j} A B -> Type k)
  -> ((a : A) -> P (inl {i j} A B a)) -> ((b : B) -> P (inr {i j} A B b))
  -> (s : Sum {i j} A B) -> P s

axiom Trunc {i} : Type i -> Type i
axiom tr {i} : (A : Type i) -> A -> Trunc {i} A
axiom squash {i} : (A : Type i) (x y : Trunc {i} A) -> Id {i} (Trunc {i} A) x y
axiom truncRec {i j} : (A : Type i) (P : Type j) -> ((x y : P) -> Id {j} P x y)
  -> (A -> P) -> Trunc {i} A -> P
axiom truncInd {i j} : (A : Type i) (B : Trunc {i} A -> Type j)
  -> ((z : Trunc {i} A) (x y : B z) -> Id {j} (B z) x y)
  -> ((a : A) -> B (tr {i} A a)) -> (z : Trunc {i} A) -> B z
";

/// Which eliminator an iota rule belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Eliminator {
    J,
    NatInd,
    ZInd,
    UnitInd,
    SumInd,
    TruncRec,
    TruncInd,
}

/// Shape of an iota rule: how many explicit arguments the eliminator needs
/// and which of them is scrutinized.
#[derive(Clone, Copy, Debug)]
pub struct IotaRule {
    pub elim: Eliminator,
    pub arity: usize,
    pub major: usize,
}

pub fn iota_rule(name: &str) -> Option<IotaRule> {
    let (elim, arity) = match name {
        "J" => (Eliminator::J, 6),
        "natInd" => (Eliminator::NatInd, 4),
        "zInd" => (Eliminator::ZInd, 5),
        "unitInd" => (Eliminator::UnitInd, 3),
        "sumInd" => (Eliminator::SumInd, 6),
        "truncRec" => (Eliminator::TruncRec, 5),
        "truncInd" => (Eliminator::TruncInd, 5),
        _ => return None,
    };
    Some(IotaRule { elim, arity, major: arity - 1 })
}

/// Constructors and the number of explicit arguments each takes.
pub fn constructor_arity(name: &str) -> Option<usize> {
    Some(match name {
        "refl" => 2,
        "zeroN" | "zZero" | "tt" => 0,
        "succN" | "zPos" | "zNeg" => 1,
        "inl" | "inr" => 3,
        "tr" => 2,
        _ => return None,
    })
}

pub fn primitive_decls() -> &'static [Declaration] {
    static DECLS: OnceLock<Vec<Declaration>> = OnceLock::new();
    DECLS.get_or_init(|| {
        parse_file_in(PRIMITIVE_SOURCE, "<primitives>", &Scope::empty())
            .unwrap_or_else(|e| panic!("primitive signature does not parse: {}", e[0]))
    })
}

pub fn primitive_scope() -> &'static Scope {
    static SCOPE: OnceLock<Scope> = OnceLock::new();
    SCOPE.get_or_init(|| {
        let mut s = Scope::empty();
        for d in primitive_decls() {
            s.insert(d.name.clone(), d.level_params.len());
        }
        s
    })
}
