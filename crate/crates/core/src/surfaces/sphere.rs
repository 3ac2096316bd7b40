use num_complex::Complex64;

use super::{Immersion, Jet, Topology};
use crate::vec3::{self, Vec3};
use crate::Result;

/// Round sphere by inverse stereographic projection,
/// `Φ = c + r (2 Re z, 2 Im z, |z|² − 1)/(1 + |z|²)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RoundSphere {
    pub center: Vec3,
    pub radius: f64,
}

impl Immersion for RoundSphere {
    fn name(&self) -> String {
        "sphere".into()
    }

    fn jet(&self, z: Complex64) -> Result<Jet> {
        let zb = z.conj();
        let d = 1.0 + z.norm_sqr();
        let r = self.radius;
        let unit = [2.0 * z.re, 2.0 * z.im, z.norm_sqr() - 1.0];
        let tangent = [1.0 - zb * zb, Complex64::new(0.0, -1.0) * (1.0 + zb * zb), 2.0 * zb];
        let phi_z = vec3::rscale(r / (d * d), tangent);
        Ok(Jet {
            phi: vec3::add(self.center, vec3::scale(r / d, unit)),
            phi_z,
            phi_zz: vec3::cscale(-2.0 * zb / d, phi_z),
            phi_zzbar: vec3::scale(-2.0 * r / (d * d * d), unit),
        })
    }

    fn topology(&self) -> Topology {
        Topology::sphere(Vec::new())
    }

    fn is_minimal(&self) -> bool {
        false
    }
}
