//! Computational laboratory for minimal bubbling on Willmore surfaces.
//!
//! The crate evaluates conformal immersions given by Enneper–Weierstrass data,
//! their inversions through points of ℝ³, curvature energies over the Riemann
//! sphere, blow-up and residue diagnostics near concentration points, and exact
//! certificates of the algebraic identities behind the explicit constructions.
//!
//! Module map:
//!
//! * [`algebra`]: complex polynomials, rational functions, partial fractions,
//!   exact arithmetic in ℚ(ζ₁₂).
//! * [`elliptic`]: Weierstrass ℘ for the square lattice and its invariant g₂.
//! * [`surfaces`]: immersion models and the pointwise [`surfaces::GeometryFrame`].
//! * [`energy`]: two-chart adaptive quadrature of curvature densities.
//! * [`asymptotics`]: blow-up, multiplicity, Harnack and residue diagnostics.
//! * [`verify`]: exact symbolic certification over ℚ(ζ₁₂).

pub mod algebra;
pub mod asymptotics;
pub mod elliptic;
pub mod energy;
mod error;
pub mod surfaces;
pub mod vec3;
pub mod verify;

pub use error::{Error, Result};
pub use num_complex::Complex64 as ComplexScalar;
