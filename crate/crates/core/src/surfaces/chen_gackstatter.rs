use num_complex::Complex64;

use super::{Immersion, Jet, Location, SpecialPoint, Topology};
use crate::elliptic::{EllipticContext, Laurent};
use crate::vec3::{self, CVec3, E_MINUS, E_PLUS, E_VERT};
use crate::{Error, Result};

/// Radius of the disk on which the local model is evaluated.
pub const CG_DOMAIN_RADIUS: f64 = 0.45;

/// Germ of the Chen–Gackstatter torus at its end `z = 0`, with Weierstrass
/// data `(f, g) = (2℘, A℘′/℘)`, i.e.
/// `Φ_z = ℘ e₊ − A²(4℘² − g₂) e₋ + 2A℘′ e₃`.
#[derive(Clone, Debug)]
pub struct ChenGackstatterLocal {
    ctx: EllipticContext,
    /// Primitive `F = L₊ e₊ + L₋ e₋ + L₃ e₃`.
    primitive: [Laurent; 3],
    first: [Laurent; 3],
    second: [Laurent; 3],
}

/// Builds the local model; `Φ = 2 Re F` with the constant of integration
/// chosen so that `F` has no `z⁰` term.
pub fn chen_gackstatter_local(ctx: &EllipticContext) -> Result<ChenGackstatterLocal> {
    let wp = ctx.wp_laurent();
    let top = wp.highest().unwrap_or(0) - 4;
    let a = ctx.a;
    let wp_sq = wp.mul_truncated(&wp, top);
    let minus = wp_sq
        .scale(4.0)
        .add(&Laurent::from_terms([(0, -ctx.g2)]))
        .scale(-a * a);
    let first = [wp.clone(), minus, wp.derivative().scale(2.0 * a)];
    let primitive = first
        .iter()
        .map(|l| l.integrate().ok_or_else(|| Error::InvalidInput("logarithmic term in Φ_z".into())))
        .collect::<Result<Vec<_>>>()?;
    let primitive: [Laurent; 3] = primitive.try_into().expect("three components");
    let second = first.clone().map(|l| l.derivative());
    Ok(ChenGackstatterLocal {
        ctx: ctx.clone(),
        primitive,
        first,
        second,
    })
}

fn combine(l: &[Laurent; 3], z: Complex64) -> CVec3 {
    let [p, m, v] = l.each_ref().map(|c| c.eval(z));
    vec3::cadd(
        vec3::cadd(vec3::cscale(p, E_PLUS), vec3::cscale(m, E_MINUS)),
        vec3::cscale(v, E_VERT),
    )
}

impl ChenGackstatterLocal {
    pub fn context(&self) -> &EllipticContext {
        &self.ctx
    }

    pub fn primitive_at(&self, z: Complex64) -> CVec3 {
        combine(&self.primitive, z)
    }
}

impl Immersion for ChenGackstatterLocal {
    fn name(&self) -> String {
        "chen-gackstatter".into()
    }

    fn jet(&self, z: Complex64) -> Result<Jet> {
        let r = z.norm();
        if r > CG_DOMAIN_RADIUS || !r.is_finite() {
            return Err(Error::OutOfDomain { z, radius: CG_DOMAIN_RADIUS });
        }
        if r < 1e-12 {
            return Err(Error::SingularPoint(z));
        }
        Ok(Jet {
            phi: vec3::scale(2.0, vec3::re(combine(&self.primitive, z))),
            phi_z: combine(&self.first, z),
            phi_zz: combine(&self.second, z),
            phi_zzbar: vec3::ZERO,
        })
    }

    /// The global torus: genus one with a single end of multiplicity 3.
    fn topology(&self) -> Topology {
        Topology {
            euler_char: 0,
            points: vec![SpecialPoint::End {
                at: Location::Finite(Complex64::new(0.0, 0.0)),
                b: 4,
            }],
        }
    }

    fn is_minimal(&self) -> bool {
        true
    }

    fn domain_radius(&self) -> Option<f64> {
        Some(CG_DOMAIN_RADIUS)
    }
}
