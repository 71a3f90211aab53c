//! Exact arithmetic for multivariate polynomials and exponential-polynomial
//! forms over Q or a real quadratic field Q(sqrt(d)).

mod scalar;
mod multipoly;
mod exppoly;

pub use scalar::Scalar;
pub use multipoly::{Block, MultiPoly};
pub use exppoly::ExpPoly;
