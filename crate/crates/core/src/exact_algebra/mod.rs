//! Computational substrate: generic dense polynomials, resultants, dyadic
//! numbers, complex ball arithmetic and certified root isolation.

pub mod ball;
pub mod bipoly;
pub mod dyadic;
pub mod poly;
pub mod resultant;
pub mod roots;

pub use ball::Ball;
pub use bipoly::{bipoly_expand_composite, BiPoly};
pub use dyadic::Dyadic;
pub use poly::UniPoly;
pub use resultant::{poly_resultant, resultant_subresultant, resultant_sylvester};
pub use roots::{root_isolate, separation_bound};
