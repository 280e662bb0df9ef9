//! Exact analysis of inhomogeneous linear functional equations
//!
//! ```text
//! F(y) - F(x) = (y - x) * sum_i a_i * f(alpha_i * x + beta_i * y)
//! ```
//!
//! with parameters in a simple algebraic number field `K = Q(u)`.
//!
//! For each candidate degree `p` the analyzer computes the condition sums
//! `T_l = sum_i a_i * C(p, l) * alpha_i^l * beta_i^(p-l)`, decides whether the
//! identity embedding admits a monomial solution `x^p`, and searches the
//! embeddings `u -> s_h` of `K` into the complex numbers for tuples that
//! annihilate the homogeneous condition system. Every emitted solution term is
//! certified by an exact bivariate polynomial identity.
//!
//! The polynomial layer is generic over a [`Scalar`]: the same code runs over
//! exact rationals, number-field elements and `Complex<f64>` (used only to
//! seed root isolation). Concrete aliases live at the crate root.

pub mod analysis;
pub mod equation;
pub mod error;
pub mod exact_algebra;
pub mod number_field;
pub mod parser;
pub mod report;
pub mod scalar;
pub mod solver;

pub use error::{Error, Result};
pub use scalar::{FieldScalar, Scalar};

pub use analysis::{analyze, classify_degree, condition_sums, AnalysisReport, Classification, DegreeReport};
pub use equation::{degree_bound, detect_structure, validate, EquationSpec, StructureFlags, ValidationReport};
pub use exact_algebra::ball::Ball;
pub use exact_algebra::bipoly::BiPoly;
pub use exact_algebra::dyadic::Dyadic;
pub use exact_algebra::poly::UniPoly;
pub use number_field::{
    kernel_search, nf_create, CondExpr, EmbeddingTuple, FieldElement, NumberField, PrecisionConfig,
};
pub use solver::{build_basis, reconstruct_f, verify_identity, SolutionBasis, SolutionTerm};

/// Arbitrary-precision rational number, always in lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;
/// Arbitrary-precision integer.
pub type Integer = num_bigint::BigInt;
/// Double-precision complex number, used for numeric seeding only.
pub type Complex64 = num_complex::Complex<f64>;

/// Univariate polynomial over the rationals.
pub type QPoly = UniPoly<Rational>;
/// Univariate polynomial over a number field.
pub type FieldPoly = UniPoly<FieldElement>;
/// Univariate polynomial with floating-point complex coefficients.
pub type ComplexPoly = UniPoly<Complex64>;
/// Bivariate polynomial over the rationals.
pub type QBiPoly = BiPoly<Rational>;
/// Bivariate polynomial over a number field.
pub type FieldBiPoly = BiPoly<FieldElement>;
