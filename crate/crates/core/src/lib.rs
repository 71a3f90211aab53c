//! Symbolic-numeric workbench for rational Baker-Akhiezer functions on
//! hyperplane arrangements with multiplicities, the associated bilinear form
//! on quasi-invariants, and Macdonald-Mehta type Gaussian integrals.
//!
//! Three independent computation routes are provided and cross-validated:
//!
//! * exact symbolic construction of the Baker-Akhiezer function via iterated
//!   application of the shifted Calogero-Moser operator ([`baker_akhiezer`]),
//! * gamma-product closed forms for the integrals ([`closed_forms`]),
//! * numerical quadrature over shifted contours `i xi + R^n` ([`quadrature`]).
//!
//! The [`acceptance`] module bundles the cross-checks into a reproducible
//! suite; the `mmba-cli` crate exposes everything on the command line.

pub mod exact_algebra;
pub mod arrangements;
pub mod baker_akhiezer;
pub mod gamma;
pub mod closed_forms;
pub mod quadrature;
pub mod wronskian2d;
pub mod export;
pub mod acceptance;

pub use exact_algebra::{Block, ExpPoly, MultiPoly, Scalar};
pub use arrangements::{Arrangement, ContourSpec, CoxeterDatum, CoxeterLabel, DeformedDatum};

/// Errors shared across the exact-algebra layer.
#[derive(Debug, Clone, thiserror::Error)]
pub enum AlgebraError {
    #[error("arity mismatch: {0} vs {1}")]
    ArityMismatch(usize, usize),
    #[error("coefficient field mismatch: sqrt({0}) vs sqrt({1})")]
    FieldMismatch(u32, u32),
    /// Division by `(alpha, v)` left a nonzero remainder; on
    /// Baker-Akhiezer data this signals input that is not quasi-invariant
    /// at the required order. The remainder is carried for diagnosis.
    #[error("not divisible by the linear form; remainder has {} terms", remainder.num_terms())]
    NonDivisible { remainder: Box<MultiPoly> },
    #[error("term budget of {budget} monomials exceeded")]
    TermBudgetExceeded { budget: usize },
}
