//! Exact arithmetic in a simple extension `K = Q(u)`, the complex embeddings
//! `u -> s_h`, sound zero tests at embedding tuples, and the exhaustive
//! search for embedding tuples annihilating the homogeneous condition system.

mod condexpr;
mod element;
mod field;
mod kernel;

pub use condexpr::{is_zero_at_tuple, zero_test, CondExpr, PrecisionConfig};
pub use element::FieldElement;
pub use field::{nf_create, nf_create_named, NumberField, MAX_FIELD_DEGREE};
pub use kernel::{condition_expression, kernel_search, kernel_search_with_precision, EmbeddingTuple};
