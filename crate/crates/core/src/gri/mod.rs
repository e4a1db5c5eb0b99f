//! A small expression language for generalized rational expressions:
//! noncommuting indeterminates, ring constants, +, -, *, powers and
//! inverses, plus the builtin alternating expression `gn<k>(x; y1, .., yk)`.
//!
//! Evaluation follows permissible-substitution semantics: any singular
//! inverse anywhere makes the whole substitution non-permissible (reported
//! with the offending subexpression, never a crash).

mod ast;
mod eval;
mod lexer;
mod parser;
mod tester;

pub use ast::Expr;
pub use eval::{evaluate, EvalError, EvalOutcome, Substitution};
pub use lexer::SyntaxError;
pub use parser::parse;
pub use tester::{identity_test, CertificateBinding, IdentityCertificate, IdentityReport};
