//! Arithmetic substrate: complex polynomials and rational functions for the
//! numeric side, exact ℚ(ζ₁₂) scalars and polynomials for the symbolic side.

mod cyclotomic;
mod exact_poly;
mod polynomial;
mod rational;
mod roots;

pub use cyclotomic::CycScalar;
pub use exact_poly::ExactPoly;
pub use polynomial::ComplexPolynomial;
pub use rational::{PartialFractions, PoleTerm, RationalFunction};
pub use roots::{factor_roots, polynomial_roots};

/// Absolute tolerance for numeric zero tests on complex scalars.
pub const ZERO_TOL: f64 = 1e-12;
