//! Compositional distributional semantics with Frobenius algebras.
//!
//! The crate builds co-occurrence semantic spaces from tokenized corpora,
//! constructs relational word tensors by argument summing or regression,
//! composes phrase and sentence representations under the Frobenius family
//! of models (including the density-matrix variant), induces word senses by
//! hierarchical clustering for prior disambiguation, and evaluates composite
//! representations against human-scored sentence pair datasets.

pub mod compose;
pub mod disamb;
pub mod error;
pub mod eval;
pub mod linalg;
pub mod pipeline;
pub mod quantum;
pub mod regress;
pub mod semspace;
pub mod senses;
pub mod tensorize;

pub use error::{Error, Result};
