use num_complex::Complex64;
use serde::Serialize;

use super::{Immersion, Jet, Location, SpecialPoint, Topology};
use crate::algebra::{ComplexPolynomial, PartialFractions, PoleTerm, RationalFunction};
use crate::vec3::{self, CVec3, E_MINUS, E_PLUS, E_VERT};
use crate::{Error, Result};

const I: Complex64 = Complex64::new(0.0, 1.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Relative distance to a pole under which evaluation is refused.
const POLE_GUARD: f64 = 1e-10;

/// Enneper–Weierstrass pair: `Φ_z = (f/2)(1 − g², i(1 + g²), 2g)`.
#[derive(Clone, Debug, PartialEq)]
pub struct WeierstrassData {
    pub f: RationalFunction,
    pub g: RationalFunction,
}

/// Minimal immersion `Φ = 2 Re F` with a rational primitive `F`.
#[derive(Clone, Debug)]
pub struct RationalMinimal {
    name: String,
    primitive: [PartialFractions; 3],
    first: [PartialFractions; 3],
    second: [PartialFractions; 3],
    topology: Topology,
    gauss: Option<RationalFunction>,
}

impl RationalMinimal {
    /// Builds the model from the primitive `F`, given componentwise.
    pub fn from_primitive(
        name: impl Into<String>,
        primitive: [PartialFractions; 3],
        topology: Topology,
    ) -> Self {
        let first = primitive.clone().map(|c| c.derivative());
        let second = first.clone().map(|c| c.derivative());
        Self {
            name: name.into(),
            primitive,
            first,
            second,
            topology,
            gauss: None,
        }
    }

    /// Attaches the Gauss map `g = Φ_z₃ / (Φ_z₁ − iΦ_z₂)`.
    pub fn with_gauss_map(mut self, g: RationalFunction) -> Self {
        self.gauss = Some(g);
        self
    }

    pub fn primitive(&self) -> &[PartialFractions; 3] {
        &self.primitive
    }

    /// `F(z)`.
    pub fn primitive_at(&self, z: Complex64) -> CVec3 {
        self.primitive.each_ref().map(|c| c.eval(z))
    }

    fn pole_distance(&self, z: Complex64) -> f64 {
        self.primitive
            .iter()
            .map(|c| c.pole_distance(z))
            .fold(f64::INFINITY, f64::min)
    }
}

impl Immersion for RationalMinimal {
    fn name(&self) -> String {
        self.name.clone()
    }

    fn jet(&self, z: Complex64) -> Result<Jet> {
        if self.pole_distance(z) <= POLE_GUARD * z.norm().max(1.0) || !z.is_finite() {
            return Err(Error::SingularPoint(z));
        }
        let f = self.primitive_at(z);
        Ok(Jet {
            phi: vec3::scale(2.0, vec3::re(f)),
            phi_z: self.first.each_ref().map(|c| c.eval(z)),
            phi_zz: self.second.each_ref().map(|c| c.eval(z)),
            phi_zzbar: vec3::ZERO,
        })
    }

    fn topology(&self) -> Topology {
        self.topology.clone()
    }

    fn is_minimal(&self) -> bool {
        true
    }

    fn gauss_map(&self) -> Option<RationalFunction> {
        self.gauss.clone()
    }
}

/// Splits vector-valued partial fractions into their three components.
fn vector_fractions(poles: &[(Complex64, usize, CVec3)], poly: &[CVec3]) -> [PartialFractions; 3] {
    std::array::from_fn(|k| PartialFractions {
        poles: poles
            .iter()
            .filter(|(_, _, v)| v[k] != Complex64::new(0.0, 0.0))
            .map(|&(pole, order, v)| PoleTerm {
                pole,
                order,
                coefficient: v[k],
            })
            .collect(),
        polynomial: ComplexPolynomial::new(poly.iter().map(|v| v[k]).collect()),
    })
}

/// Integrates Weierstrass data into a minimal model; any residue of `Φ_z`
/// is rejected with [`Error::Period`].
pub fn weierstrass_model(
    name: impl Into<String>,
    data: &WeierstrassData,
    topology: Topology,
) -> Result<RationalMinimal> {
    let one = RationalFunction::constant(ONE);
    let g2 = data.g.mul(&data.g)?;
    let half_f = data.f.scale(Complex64::new(0.5, 0.0));
    let components = [
        half_f.mul(&one.sub(&g2)?)?,
        half_f.mul(&one.add(&g2)?)?.scale(I),
        data.f.mul(&data.g)?,
    ];
    let mut primitive: Vec<PartialFractions> = Vec::with_capacity(3);
    for c in &components {
        primitive.push(c.partial_fractions()?.antiderivative()?);
    }
    let primitive: [PartialFractions; 3] = primitive.try_into().expect("three components");
    Ok(RationalMinimal::from_primitive(name, primitive, topology).with_gauss_map(data.g.clone()))
}

/// Polynomial Weierstrass data `(f, g) = (Q², P/Q)` of a normalized bubble.
#[derive(Clone, Debug, PartialEq)]
pub struct NormalizedBubbleData {
    pub p: ComplexPolynomial,
    pub q: ComplexPolynomial,
    pub theta: u32,
}

impl NormalizedBubbleData {
    /// Checks `deg P, deg Q ≤ θ/2`, `P(0) = 0`, `Q(0) = P′(0) = 1`,
    /// `P″(0) = 2Q′(0)`, θ even and `P`, `Q` coprime.
    pub fn new(p: ComplexPolynomial, q: ComplexPolynomial, theta: u32) -> Result<Self> {
        let tol = 1e-12;
        let bad = |msg: &str| Err(Error::InvalidInput(msg.into()));
        if theta % 2 != 0 || theta == 0 {
            return bad("theta must be a positive even integer");
        }
        if p.degree() > (theta / 2) as usize || q.degree() > (theta / 2) as usize {
            return bad("deg P and deg Q must not exceed theta/2");
        }
        let dp = p.derivative();
        let zero = Complex64::new(0.0, 0.0);
        if p.eval(zero).norm() > tol
            || (q.eval(zero) - ONE).norm() > tol
            || (dp.eval(zero) - ONE).norm() > tol
            || (dp.derivative().eval(zero) - 2.0 * q.derivative().eval(zero)).norm() > tol
        {
            return bad("normalization P(0)=0, Q(0)=P'(0)=1, P''(0)=2Q'(0) violated");
        }
        if q.degree() > 0 {
            for root in crate::algebra::polynomial_roots(&q) {
                if p.eval(root).norm() <= 1e-9 * p.eval_scale(root).max(1.0) {
                    return bad("P and Q share a root");
                }
            }
        }
        Ok(Self { p, q, theta })
    }

    pub fn enneper() -> Self {
        Self {
            p: ComplexPolynomial::z(),
            q: ComplexPolynomial::one(),
            theta: 2,
        }
    }

    pub fn weierstrass_data(&self) -> Result<WeierstrassData> {
        Ok(WeierstrassData {
            f: RationalFunction::polynomial(&self.q * &self.q),
            g: RationalFunction::new(self.p.clone(), self.q.clone())?,
        })
    }

    /// A sphere with one end of multiplicity `θ + 1` at infinity.
    pub fn model(&self, name: impl Into<String>) -> Result<RationalMinimal> {
        let topology = Topology::sphere(vec![SpecialPoint::End {
            at: Location::Infinity,
            b: self.theta + 2,
        }]);
        weierstrass_model(name, &self.weierstrass_data()?, topology)
    }
}

/// Enneper's surface, `(f, g) = (1, z)`.
pub fn enneper() -> RationalMinimal {
    NormalizedBubbleData::enneper()
        .model("enneper")
        .expect("polynomial data integrates")
}

/// The plane `(f, g) = (1, 0)`.
pub fn plane() -> RationalMinimal {
    let data = WeierstrassData {
        f: RationalFunction::constant(ONE),
        g: RationalFunction::constant(Complex64::new(0.0, 0.0)),
    };
    let topology = Topology::sphere(vec![SpecialPoint::End {
        at: Location::Infinity,
        b: 2,
    }]);
    weierstrass_model("plane", &data, topology).expect("polynomial data integrates")
}

/// Lopez surface with the default parameter `a = 3`.
pub fn lopez() -> RationalMinimal {
    lopez_with(Complex64::new(3.0, 0.0))
}

/// `F = 3/(2z³)(1,i,0) + a²z/8 (1,−i,0) + 3a/(2z) (0,0,1)`.
pub fn lopez_with(a: Complex64) -> RationalMinimal {
    let zero = Complex64::new(0.0, 0.0);
    let primitive = vector_fractions(
        &[
            (zero, 3, vec3::rscale(1.5, E_PLUS)),
            (zero, 1, vec3::cscale(1.5 * a, E_VERT)),
        ],
        &[vec3::CZERO, vec3::cscale(a * a / 8.0, E_MINUS)],
    );
    let topology = Topology::sphere(vec![
        SpecialPoint::End { at: Location::Finite(zero), b: 4 },
        SpecialPoint::End { at: Location::Infinity, b: 2 },
    ]);
    let g = ComplexPolynomial::monomial(a / 6.0, 2);
    RationalMinimal::from_primitive("lopez", primitive, topology)
        .with_gauss_map(RationalFunction::polynomial(g))
}

/// Parameters of the four-ended family.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FourEndedFamilyParams {
    pub mu: f64,
    #[serde(skip)]
    pub a: Complex64,
}

impl FourEndedFamilyParams {
    pub fn new(mu: f64) -> Self {
        Self {
            mu,
            a: Complex64::new(3.0, 0.0),
        }
    }

    pub fn j() -> Complex64 {
        Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0)
    }

    /// `b = 3a/(2j(j − 1))`.
    pub fn b(&self) -> Complex64 {
        let j = Self::j();
        3.0 * self.a / (2.0 * j * (j - 1.0))
    }

    /// Poles `μ, μj, μj²`.
    pub fn poles(&self) -> [Complex64; 3] {
        let j = Self::j();
        [ONE, j, j * j].map(|w| self.mu * w)
    }

    /// `g = (a/6)(z + 2μ)(z − μ)²/z`.
    pub fn gauss_map(&self) -> Result<RationalFunction> {
        let mu = Complex64::new(self.mu, 0.0);
        let num = ComplexPolynomial::from_roots(self.a / 6.0, &[-2.0 * mu, mu, mu]);
        RationalFunction::new(num, ComplexPolynomial::z())
    }

    /// Coefficient vectors `a₁..a₄`.
    pub fn vectors(&self) -> [CVec3; 4] {
        let (mu, b, j) = (self.mu, self.b(), Self::j());
        let j2 = j * j;
        let m2 = mu * mu;
        let lower = vec3::cscale(-m2 * b * b / 2.0, E_MINUS);
        let a1 = vec3::rscale(0.5 / m2, E_PLUS);
        let a2 = vec3::cadd(
            vec3::cadd(vec3::cscale(j / (2.0 * m2), E_PLUS), lower),
            vec3::cscale(b * j2, E_VERT),
        );
        let a3 = vec3::cadd(
            vec3::cadd(vec3::cscale(j2 / (2.0 * m2), E_PLUS), lower),
            vec3::cscale(-b * j, E_VERT),
        );
        let sum = vec3::cadd(vec3::cadd(a1, vec3::cscale(j, a2)), vec3::cscale(j2, a3));
        let a4 = vec3::rscale(-1.0 / (3.0 * m2), sum);
        [a1, a2, a3, a4]
    }
}

/// `F = a₁/(z−μ) + a₂/(z−μj) + a₃/(z−μj²) + a₄z`: a sphere with four simple
/// planar ends.
pub fn family_psi_mu(params: FourEndedFamilyParams) -> Result<RationalMinimal> {
    if !(params.mu > 0.0 && params.mu.is_finite()) {
        return Err(Error::InvalidInput(format!("mu must be positive, got {}", params.mu)));
    }
    let [a1, a2, a3, a4] = params.vectors();
    let [p1, p2, p3] = params.poles();
    let primitive = vector_fractions(&[(p1, 1, a1), (p2, 1, a2), (p3, 1, a3)], &[vec3::CZERO, a4]);
    let mut points: Vec<SpecialPoint> = params
        .poles()
        .iter()
        .map(|&p| SpecialPoint::End { at: Location::Finite(p), b: 2 })
        .collect();
    points.push(SpecialPoint::End { at: Location::Infinity, b: 2 });
    Ok(RationalMinimal::from_primitive(
        format!("psi-mu({})", params.mu),
        primitive,
        Topology::sphere(points),
    )
    .with_gauss_map(params.gauss_map()?))
}
