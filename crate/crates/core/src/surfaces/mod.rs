//! Conformal immersions of planar domains into ℝ³ and their pointwise
//! geometry.
//!
//! A model exposes the 2-jet of Φ at a point (`Φ`, `Φ_z`, `Φ_zz`, `Φ_zz̄`);
//! [`frame`] turns it into the normal, conformal factor and curvatures with
//! the conventions
//!
//! * `e^{2λ} = 2|Φ_z|²`,
//! * `n = Φ_x × Φ_y / |Φ_x × Φ_y|`,
//! * `Ω = 2⟨Φ_zz, n⟩`, `H = 2e^{−2λ}⟨Φ_zz̄, n⟩`,
//! * `K = H² − |Ω|²e^{−4λ}`, `|Å|² = 2|Ω|²e^{−4λ}`.

mod chen_gackstatter;
mod mesh;
mod minimal;
mod sphere;
mod transforms;

pub use chen_gackstatter::{chen_gackstatter_local, ChenGackstatterLocal, CG_DOMAIN_RADIUS};
pub use mesh::{export_mesh, mesh_vertices, PolarGrid};
pub use minimal::{
    enneper, family_psi_mu, lopez, lopez_with, plane, weierstrass_model, FourEndedFamilyParams,
    NormalizedBubbleData, RationalMinimal, WeierstrassData,
};
pub use sphere::RoundSphere;
pub use transforms::{invert, Inverted, Reciprocal, Rotated};

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use serde::Serialize;

use crate::algebra::RationalFunction;
use crate::vec3::{self, CVec3, Vec3};
use crate::{Error, Result};

/// Φ and its first two complex derivatives at one point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jet {
    pub phi: Vec3,
    pub phi_z: CVec3,
    pub phi_zz: CVec3,
    /// `Φ_zz̄ = ΔΦ/4`, real.
    pub phi_zzbar: Vec3,
}

/// Where a special point of the parameter sphere sits.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum Location {
    Finite(Complex64),
    Infinity,
}

impl Location {
    /// Image under `z ↦ 1/z`.
    pub fn reciprocal(self) -> Self {
        match self {
            Location::Infinity => Location::Finite(Complex64::new(0.0, 0.0)),
            Location::Finite(z) if z == Complex64::new(0.0, 0.0) => Location::Infinity,
            Location::Finite(z) => Location::Finite(z.inv()),
        }
    }
}

/// A branch point of multiplicity `a + 1` or an end of multiplicity `b − 1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SpecialPoint {
    Branch { at: Location, a: u32 },
    End { at: Location, b: u32 },
}

impl SpecialPoint {
    pub fn location(&self) -> Location {
        match *self {
            SpecialPoint::Branch { at, .. } | SpecialPoint::End { at, .. } => at,
        }
    }
}

/// Euler characteristic plus branch points and ends.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Topology {
    pub euler_char: i32,
    pub points: Vec<SpecialPoint>,
}

impl Topology {
    pub fn sphere(points: Vec<SpecialPoint>) -> Self {
        Self { euler_char: 2, points }
    }

    pub fn branch_orders(&self) -> Vec<u32> {
        self.points
            .iter()
            .filter_map(|p| match p {
                SpecialPoint::Branch { a, .. } => Some(*a),
                _ => None,
            })
            .collect()
    }

    pub fn end_orders(&self) -> Vec<u32> {
        self.points
            .iter()
            .filter_map(|p| match p {
                SpecialPoint::End { b, .. } => Some(*b),
                _ => None,
            })
            .collect()
    }

    /// `2π(χ + Σa_i − Σb_j)`.
    pub fn gauss_bonnet(&self) -> f64 {
        let a: u32 = self.branch_orders().iter().sum();
        let b: u32 = self.end_orders().iter().sum();
        2.0 * PI * (self.euler_char as f64 + a as f64 - b as f64)
    }

    /// Finite special points, for quadrature refinement.
    pub fn finite_points(&self) -> Vec<Complex64> {
        self.points
            .iter()
            .filter_map(|p| match p.location() {
                Location::Finite(z) => Some(z),
                Location::Infinity => None,
            })
            .collect()
    }

    /// Branch points become ends and ends branch points under `ι_p`.
    pub fn inverted(&self) -> Self {
        let points = self
            .points
            .iter()
            .map(|p| match *p {
                SpecialPoint::End { at, b } => SpecialPoint::Branch { at, a: b - 2 },
                SpecialPoint::Branch { at, a } => SpecialPoint::Branch { at, a },
            })
            .collect();
        Self {
            euler_char: self.euler_char,
            points,
        }
    }

    pub fn reciprocal(&self) -> Self {
        let points = self
            .points
            .iter()
            .map(|p| match *p {
                SpecialPoint::End { at, b } => SpecialPoint::End { at: at.reciprocal(), b },
                SpecialPoint::Branch { at, a } => SpecialPoint::Branch { at: at.reciprocal(), a },
            })
            .collect();
        Self {
            euler_char: self.euler_char,
            points,
        }
    }
}

/// A conformal immersion evaluated through its 2-jet.
pub trait Immersion: Send + Sync {
    fn name(&self) -> String;

    fn jet(&self, z: Complex64) -> Result<Jet>;

    fn topology(&self) -> Topology;

    /// True when `H ≡ 0` by construction.
    fn is_minimal(&self) -> bool;

    /// Radius of the disk the model lives on, for local models.
    fn domain_radius(&self) -> Option<f64> {
        None
    }

    /// Gauss map as a rational function, when the model has one.
    fn gauss_map(&self) -> Option<RationalFunction> {
        None
    }
}

impl<T: Immersion + ?Sized> Immersion for Box<T> {
    fn name(&self) -> String {
        (**self).name()
    }
    fn jet(&self, z: Complex64) -> Result<Jet> {
        (**self).jet(z)
    }
    fn topology(&self) -> Topology {
        (**self).topology()
    }
    fn is_minimal(&self) -> bool {
        (**self).is_minimal()
    }
    fn domain_radius(&self) -> Option<f64> {
        (**self).domain_radius()
    }
    fn gauss_map(&self) -> Option<RationalFunction> {
        (**self).gauss_map()
    }
}

impl<T: Immersion + ?Sized> Immersion for Arc<T> {
    fn name(&self) -> String {
        (**self).name()
    }
    fn jet(&self, z: Complex64) -> Result<Jet> {
        (**self).jet(z)
    }
    fn topology(&self) -> Topology {
        (**self).topology()
    }
    fn is_minimal(&self) -> bool {
        (**self).is_minimal()
    }
    fn domain_radius(&self) -> Option<f64> {
        (**self).domain_radius()
    }
    fn gauss_map(&self) -> Option<RationalFunction> {
        (**self).gauss_map()
    }
}

impl<T: Immersion + ?Sized> Immersion for &T {
    fn name(&self) -> String {
        (**self).name()
    }
    fn jet(&self, z: Complex64) -> Result<Jet> {
        (**self).jet(z)
    }
    fn topology(&self) -> Topology {
        (**self).topology()
    }
    fn is_minimal(&self) -> bool {
        (**self).is_minimal()
    }
    fn domain_radius(&self) -> Option<f64> {
        (**self).domain_radius()
    }
    fn gauss_map(&self) -> Option<RationalFunction> {
        (**self).gauss_map()
    }
}

/// Pointwise geometry of an immersion.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GeometryFrame {
    pub phi: Vec3,
    #[serde(skip)]
    pub phi_z: CVec3,
    #[serde(skip)]
    pub phi_zz: CVec3,
    pub normal: Vec3,
    /// `e^λ`.
    pub conf_factor: f64,
    pub h: f64,
    #[serde(skip)]
    pub omega: Complex64,
    pub k: f64,
}

impl GeometryFrame {
    pub fn lambda(&self) -> f64 {
        self.conf_factor.ln()
    }

    /// `e^{2λ}`.
    pub fn metric(&self) -> f64 {
        self.conf_factor * self.conf_factor
    }

    /// `|Å|² = 2|Ω|²e^{−4λ}`.
    pub fn a_traceless_sqr(&self) -> f64 {
        let m = self.metric();
        2.0 * self.omega.norm_sqr() / (m * m)
    }

    /// Curvature densities against `dx dy`: `H²e^{2λ}`, `|A|²e^{2λ}`,
    /// `|Å|²e^{2λ}` and `Ke^{2λ}`.
    pub fn densities(&self) -> [f64; 4] {
        let m = self.metric();
        let h2 = self.h * self.h * m;
        let traceless = 2.0 * self.omega.norm_sqr() / m;
        [h2, 2.0 * h2 + traceless, traceless, h2 - 0.5 * traceless]
    }
}

/// Evaluates the frame of `model` at `z`.
pub fn frame<M: Immersion + ?Sized>(model: &M, z: Complex64) -> Result<GeometryFrame> {
    frame_from_jet(&model.jet(z)?, z)
}

pub(crate) fn frame_from_jet(jet: &Jet, z: Complex64) -> Result<GeometryFrame> {
    let metric = 2.0 * vec3::cnorm_sqr(jet.phi_z);
    let phi_x = vec3::scale(2.0, vec3::re(jet.phi_z));
    let phi_y = vec3::scale(-2.0, vec3::im(jet.phi_z));
    let c = vec3::cross(phi_x, phi_y);
    let c_norm = vec3::norm(c);
    if !(metric > 1e-300 && c_norm > 0.0 && c_norm.is_finite()) {
        return Err(Error::SingularPoint(z));
    }
    let normal = vec3::scale(1.0 / c_norm, c);
    let omega = 2.0 * vec3::cdot_real(jet.phi_zz, normal);
    let h = 2.0 * vec3::dot(jet.phi_zzbar, normal) / metric;
    let k = h * h - omega.norm_sqr() / (metric * metric);
    Ok(GeometryFrame {
        phi: jet.phi,
        phi_z: jet.phi_z,
        phi_zz: jet.phi_zz,
        normal,
        conf_factor: metric.sqrt(),
        h,
        omega,
        k,
    })
}

/// `⟨n(z), Φ(z) − p⟩`.
pub fn support_function<M: Immersion + ?Sized>(model: &M, p: Vec3, z: Complex64) -> Result<f64> {
    let f = frame(model, z)?;
    Ok(vec3::dot(f.normal, vec3::sub(f.phi, p)))
}
