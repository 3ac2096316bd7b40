use num_complex::Complex64;

use super::{Immersion, Jet, Topology};
use crate::algebra::RationalFunction;
use crate::vec3::{self, Vec3};
use crate::{Error, Result};

/// Distance to the inversion center under which evaluation is refused.
const CENTER_GUARD: f64 = 1e-8;

/// `ι_p ∘ Φ` with `ι_p(x) = (x − p)/|x − p|²`.
#[derive(Clone, Debug)]
pub struct Inverted<M> {
    pub base: M,
    pub p: Vec3,
}

pub fn invert<M: Immersion>(base: M, p: Vec3) -> Inverted<M> {
    Inverted { base, p }
}

impl<M: Immersion> Immersion for Inverted<M> {
    fn name(&self) -> String {
        format!("inverted:{}", self.base.name())
    }

    fn jet(&self, z: Complex64) -> Result<Jet> {
        let b = self.base.jet(z)?;
        let u = vec3::sub(b.phi, self.p);
        let s = vec3::dot(u, u);
        if s.sqrt() < CENTER_GUARD {
            return Err(Error::CenterOnSurface { z, distance: s.sqrt() });
        }
        let uc = vec3::complexify(u);
        let s_z = 2.0 * vec3::cdot_real(b.phi_z, u);
        let s_zz = 2.0 * vec3::cdot(b.phi_z, b.phi_z) + 2.0 * vec3::cdot_real(b.phi_zz, u);
        let s_zzbar = 2.0 * vec3::cnorm_sqr(b.phi_z) + 2.0 * vec3::dot(b.phi_zzbar, u);
        let (s2, s3) = (s * s, s * s * s);

        let phi_z = vec3::csub(vec3::rscale(1.0 / s, b.phi_z), vec3::cscale(s_z / s2, uc));
        let phi_zz = {
            let t1 = vec3::rscale(1.0 / s, b.phi_zz);
            let t2 = vec3::cscale(-2.0 * s_z / s2, b.phi_z);
            let t3 = vec3::cscale(2.0 * s_z * s_z / s3 - s_zz / s2, uc);
            vec3::cadd(vec3::cadd(t1, t2), t3)
        };
        let phi_zzbar = {
            let cross_terms = vec3::scale(2.0 / s2, vec3::re(vec3::cscale(s_z.conj(), b.phi_z)));
            let radial = 2.0 * s_z.norm_sqr() / s3 - s_zzbar / s2;
            vec3::add(
                vec3::sub(vec3::scale(1.0 / s, b.phi_zzbar), cross_terms),
                vec3::scale(radial, u),
            )
        };
        Ok(Jet {
            phi: vec3::scale(1.0 / s, u),
            phi_z,
            phi_zz,
            phi_zzbar,
        })
    }

    fn topology(&self) -> Topology {
        self.base.topology().inverted()
    }

    fn is_minimal(&self) -> bool {
        false
    }

    fn domain_radius(&self) -> Option<f64> {
        self.base.domain_radius()
    }
}

/// The same surface read in the chart `w = 1/z`.
#[derive(Clone, Debug)]
pub struct Reciprocal<M> {
    pub base: M,
}

impl<M: Immersion> Immersion for Reciprocal<M> {
    fn name(&self) -> String {
        format!("reciprocal:{}", self.base.name())
    }

    fn jet(&self, w: Complex64) -> Result<Jet> {
        if w.norm() < 1e-300 || !w.is_finite() {
            return Err(Error::SingularPoint(w));
        }
        let b = self.base.jet(w.inv())?;
        let w2 = w * w;
        let w3 = w2 * w;
        let phi_z = vec3::cscale(-w2.inv(), b.phi_z);
        let phi_zz = vec3::cadd(
            vec3::cscale((w2 * w2).inv(), b.phi_zz),
            vec3::cscale(2.0 * w3.inv(), b.phi_z),
        );
        Ok(Jet {
            phi: b.phi,
            phi_z,
            phi_zz,
            phi_zzbar: vec3::scale(1.0 / w.norm_sqr().powi(2), b.phi_zzbar),
        })
    }

    fn topology(&self) -> Topology {
        self.base.topology().reciprocal()
    }

    fn is_minimal(&self) -> bool {
        self.base.is_minimal()
    }

    fn gauss_map(&self) -> Option<RationalFunction> {
        None
    }
}

/// `x ↦ M x` for an orthogonal matrix `M` with determinant one.
#[derive(Clone, Debug)]
pub struct Rotated<M> {
    pub base: M,
    pub matrix: [[f64; 3]; 3],
}

impl<M: Immersion> Rotated<M> {
    /// Rotation by `angle` about the unit vector `axis`.
    pub fn about_axis(base: M, axis: Vec3, angle: f64) -> Self {
        let k = vec3::scale(1.0 / vec3::norm(axis), axis);
        let (s, c) = angle.sin_cos();
        let t = 1.0 - c;
        let matrix = [
            [c + k[0] * k[0] * t, k[0] * k[1] * t - k[2] * s, k[0] * k[2] * t + k[1] * s],
            [k[1] * k[0] * t + k[2] * s, c + k[1] * k[1] * t, k[1] * k[2] * t - k[0] * s],
            [k[2] * k[0] * t - k[1] * s, k[2] * k[1] * t + k[0] * s, c + k[2] * k[2] * t],
        ];
        Self { base, matrix }
    }
}

impl<M: Immersion> Immersion for Rotated<M> {
    fn name(&self) -> String {
        format!("rotated:{}", self.base.name())
    }

    fn jet(&self, z: Complex64) -> Result<Jet> {
        let b = self.base.jet(z)?;
        let m = &self.matrix;
        Ok(Jet {
            phi: vec3::mat_vec(m, b.phi),
            phi_z: vec3::mat_cvec(m, b.phi_z),
            phi_zz: vec3::mat_cvec(m, b.phi_zz),
            phi_zzbar: vec3::mat_vec(m, b.phi_zzbar),
        })
    }

    fn topology(&self) -> Topology {
        self.base.topology()
    }

    fn is_minimal(&self) -> bool {
        self.base.is_minimal()
    }

    fn domain_radius(&self) -> Option<f64> {
        self.base.domain_radius()
    }
}
