//! Concrete and abstract syntax of the kernel language.

pub mod decl;
pub mod level;
pub mod lexer;
pub mod parser;
pub mod printer;
pub mod term;

pub use decl::{decl_alpha_equal, DeclKind, Declaration};
pub use level::Level;
pub use parser::{parse_file, parse_file_in, parse_term, Scope};
pub use printer::{print_decl, print_term, print_term_in};
pub use term::{alpha_equal, Name, Span, Term, TermKind};
