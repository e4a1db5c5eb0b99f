//! Exact computer algebra for rational identities and commutators in
//! division algebras.
//!
//! The crate provides:
//! - exact coefficient fields (rationals, prime fields, simple extensions)
//!   and dense matrices over them, with characteristic and minimal
//!   polynomials;
//! - the alternating Capelli-style expression g_n, fast and reference
//!   evaluators, and a randomized tester that reads off the algebraic degree
//!   of a matrix from where g_n starts to vanish;
//! - a small language for generalized rational expressions with
//!   permissible-substitution semantics and a seeded identity tester;
//! - explicit commutator witness constructions (ABA^-1B^-1 and AB-BA of
//!   degree exactly n);
//! - finite-dimensional algebras given by structure constants (quaternion
//!   and cyclic algebras) with maximal-subfield commutator searches.

pub mod algebra;
pub mod capelli;
pub mod cli;
pub mod crosscheck;
pub mod field;
pub mod gri;
pub mod matrix;
pub mod poly;
pub mod witness;

pub use field::{FieldError, FieldScalar, FieldSpec};
pub use matrix::{ExactMatrix, MatrixError};
pub use poly::Polynomial;

/// Tool version plus the versions of the text/JSON formats it emits.
pub const VERSION: &str = concat!(
    env!("CARGO_PKG_VERSION"),
    " (matrix-text v1, json-report v1)"
);
