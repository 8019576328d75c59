//! A small dependent type theory kernel with a checked development of the
//! circle as the type of Z-torsors.

pub mod checker;
pub mod corpus;
pub mod diag;
pub mod syntax;
pub mod testkit;

pub use checker::{
    check, check_declaration, convertible, infer, normalize, whnf, Context, Environment,
    TruncMode,
};
pub use diag::Diagnostic;
pub use syntax::{
    alpha_equal, parse_file, parse_file_in, print_decl, print_term, Declaration, Level, Term,
};
