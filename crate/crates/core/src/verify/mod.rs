//! Exact certification over ℚ(ζ₁₂) with formal conjugation.
//!
//! Covers the conformality constraints of the four-ended family, the
//! Weierstrass frame identities for `g = P/Q`, and the μ-expansion of the
//! inverted family at scale μ³.

mod bipoly;
mod series;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::{CycScalar, ExactPoly};
use crate::{Error, Result};

pub use bipoly::{
    bivec_add, bivec_conj, bivec_cross, bivec_dot, bivec_is_zero, bivec_scale, bivec_sub, bivec_zero, BiPoly, BiVec,
    ConjPolynomial,
};
pub use series::MuSeries;

/// Default truncation order of [`blowup_series`].
pub const DEFAULT_ORDER: i32 = 10;

/// Outcome of one exact identity; `remainder` is the pretty-printed
/// nonzero difference when it fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub tag: String,
    pub holds: bool,
    pub remainder: Option<String>,
}

impl IdentityCheck {
    fn scalar(tag: impl Into<String>, diff: &BiPoly) -> Self {
        Self {
            tag: tag.into(),
            holds: diff.is_zero(),
            remainder: (!diff.is_zero()).then(|| diff.to_string()),
        }
    }

    fn vector(tag: impl Into<String>, diff: &BiVec) -> Self {
        Self {
            tag: tag.into(),
            holds: bivec_is_zero(diff),
            remainder: (!bivec_is_zero(diff)).then(|| format!("({}, {}, {})", diff[0], diff[1], diff[2])),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub checks: Vec<IdentityCheck>,
}

impl Report {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn violations(&self) -> Vec<&str> {
        self.checks.iter().filter(|c| !c.holds).map(|c| c.tag.as_str()).collect()
    }
}

fn e_plus() -> [CycScalar; 3] {
    [CycScalar::one(), CycScalar::i(), CycScalar::zero()]
}

fn e_minus() -> [CycScalar; 3] {
    [CycScalar::one(), -CycScalar::i(), CycScalar::zero()]
}

fn e_vert() -> [CycScalar; 3] {
    [CycScalar::zero(), CycScalar::zero(), CycScalar::one()]
}

fn vscale(s: &CycScalar, v: &[CycScalar; 3]) -> [CycScalar; 3] {
    [s * &v[0], s * &v[1], s * &v[2]]
}

fn vadd(a: &[CycScalar; 3], b: &[CycScalar; 3]) -> [CycScalar; 3] {
    [&a[0] + &b[0], &a[1] + &b[1], &a[2] + &b[2]]
}

// ---------------------------------------------------------------------------
// family vectors with symbolic μ

/// Vector-valued Laurent polynomial in μ: `Σ v_k μ^k`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LaurentVec {
    pub terms: BTreeMap<i32, [CycScalar; 3]>,
}

impl LaurentVec {
    pub fn monomial(v: [CycScalar; 3], k: i32) -> Self {
        let mut out = Self::default();
        out.add_term(k, v);
        out
    }

    fn add_term(&mut self, k: i32, v: [CycScalar; 3]) {
        let slot = self
            .terms
            .entry(k)
            .or_insert_with(|| [CycScalar::zero(), CycScalar::zero(), CycScalar::zero()]);
        *slot = vadd(slot, &v);
        if slot.iter().all(Zero::is_zero) {
            self.terms.remove(&k);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_term(*k, v.clone());
        }
        out
    }

    pub fn scale(&self, s: &CycScalar) -> Self {
        let mut out = Self::default();
        for (k, v) in &self.terms {
            out.add_term(*k, vscale(s, v));
        }
        out
    }

    pub fn shift(&self, by: i32) -> Self {
        Self {
            terms: self.terms.iter().map(|(k, v)| (k + by, v.clone())).collect(),
        }
    }

    /// Bilinear product as a Laurent polynomial in μ.
    pub fn dot(&self, other: &Self) -> BTreeMap<i32, CycScalar> {
        let mut out: BTreeMap<i32, CycScalar> = BTreeMap::new();
        for (i, a) in &self.terms {
            for (j, b) in &other.terms {
                let d = &a[0] * &b[0] + &a[1] * &b[1] + &a[2] * &b[2];
                let slot = out.entry(i + j).or_insert_with(CycScalar::zero);
                *slot += d;
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

fn laurent_to_string(m: &BTreeMap<i32, CycScalar>) -> String {
    if m.is_empty() {
        return "0".into();
    }
    m.iter()
        .map(|(k, c)| match k {
            0 => format!("({c})"),
            _ => format!("({c})·μ^{k}"),
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

fn laurent_vec_to_string(v: &LaurentVec) -> String {
    let comp = |i: usize| {
        let m: BTreeMap<i32, CycScalar> = v
            .terms
            .iter()
            .filter(|(_, c)| !c[i].is_zero())
            .map(|(k, c)| (*k, c[i].clone()))
            .collect();
        laurent_to_string(&m)
    };
    format!("({}, {}, {})", comp(0), comp(1), comp(2))
}

/// Coefficient vectors `a₁..a₄` of `f_μ = Σ a_k/(z − μj^{k−1}) + a₄z`,
/// each a Laurent polynomial in μ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyVectors {
    pub a: [LaurentVec; 4],
}

/// `b = 3a/(2j(j − 1))`.
pub fn family_b(a: &CycScalar) -> Result<CycScalar> {
    let j = CycScalar::j();
    let den = CycScalar::from_int(2) * &j * (&j - &CycScalar::one());
    (CycScalar::from_int(3) * a).checked_div(&den)
}

/// `−(1/(3μ²))(a₁ + j a₂ + j² a₃)`.
pub fn a4_from_constraint(a1: &LaurentVec, a2: &LaurentVec, a3: &LaurentVec) -> LaurentVec {
    let j = CycScalar::j();
    let j2 = &j * &j;
    a1.add(&a2.scale(&j)).add(&a3.scale(&j2)).scale(&-CycScalar::ratio(1, 3)).shift(-2)
}

impl FamilyVectors {
    /// The choice `a₁ = e₊/(2μ²)`, `a₂ = j e₊/(2μ²) − μ²b²/2 e₋ + bj² e₃`,
    /// `a₃ = j² e₊/(2μ²) − μ²b²/2 e₋ − bj e₃`, with `a₄` from the constraint.
    pub fn standard(a: &CycScalar) -> Result<Self> {
        let b = family_b(a)?;
        let j = CycScalar::j();
        let j2 = &j * &j;
        let half = CycScalar::ratio(1, 2);
        let lower = LaurentVec::monomial(vscale(&(-&half * &b * &b), &e_minus()), 2);
        let a1 = LaurentVec::monomial(vscale(&half, &e_plus()), -2);
        let a2 = LaurentVec::monomial(vscale(&(&half * &j), &e_plus()), -2)
            .add(&lower)
            .add(&LaurentVec::monomial(vscale(&(&b * &j2), &e_vert()), 0));
        let a3 = LaurentVec::monomial(vscale(&(&half * &j2), &e_plus()), -2)
            .add(&lower)
            .add(&LaurentVec::monomial(vscale(&(-&b * &j), &e_vert()), 0));
        let a4 = a4_from_constraint(&a1, &a2, &a3);
        Ok(Self { a: [a1, a2, a3, a4] })
    }
}

/// The conformality system: `⟨a_k,a_k⟩ = 0`, `⟨a₁,a₂⟩ = ⟨a₁,a₃⟩ = ⟨a₂,a₃⟩`
/// and the `a₄` relation, all as Laurent identities in μ.
pub fn check_constraints(v: &FamilyVectors) -> Report {
    let a = &v.a;
    let mut checks = Vec::new();
    let laurent_check = |tag: String, m: BTreeMap<i32, CycScalar>| IdentityCheck {
        tag,
        holds: m.is_empty(),
        remainder: (!m.is_empty()).then(|| laurent_to_string(&m)),
    };
    for (k, ak) in a.iter().enumerate() {
        checks.push(laurent_check(format!("<a{0},a{0}> = 0", k + 1), ak.dot(ak)));
    }
    let diff = |x: BTreeMap<i32, CycScalar>, y: BTreeMap<i32, CycScalar>| {
        let mut out = x;
        for (k, c) in y {
            let slot = out.entry(k).or_insert_with(CycScalar::zero);
            *slot -= c;
        }
        out.retain(|_, c| !c.is_zero());
        out
    };
    checks.push(laurent_check("<a1,a2> = <a1,a3>".into(), diff(a[0].dot(&a[1]), a[0].dot(&a[2]))));
    checks.push(laurent_check("<a1,a2> = <a2,a3>".into(), diff(a[0].dot(&a[1]), a[1].dot(&a[2]))));
    let expected = a4_from_constraint(&a[0], &a[1], &a[2]);
    let d = a[3].add(&expected.scale(&-CycScalar::one()));
    checks.push(IdentityCheck {
        tag: "a4 = -(a1 + j a2 + j^2 a3)/(3 mu^2)".into(),
        holds: d.is_zero(),
        remainder: (!d.is_zero()).then(|| laurent_vec_to_string(&d)),
    });
    Report { checks }
}

/// Vector of polynomials in `(z, μ)`, stored in a [`BiPoly`] with the second
/// variable read as μ.
fn laurent_vec_as_zmu(v: &LaurentVec, z_power: u32, mu_shift: i32) -> BiVec {
    let mut out = bivec_zero();
    for (k, c) in &v.terms {
        let e = k + mu_shift;
        assert!(e >= 0, "mu shift too small");
        for i in 0..3 {
            out[i] = out[i].add(&BiPoly::monomial(c[i].clone(), z_power, e as u32));
        }
    }
    out
}

/// `(z − μω)` as a polynomial in `(z, μ)`.
fn linear(omega: &CycScalar) -> BiPoly {
    BiPoly::monomial(CycScalar::one(), 1, 0).add(&BiPoly::monomial(-omega, 0, 1))
}

/// `⟨f′, f′⟩ ≡ 0`, with `f′` cleared of its denominator `(z³ − μ³)²` and of
/// negative powers of μ.
pub fn conformality_exact(v: &FamilyVectors) -> IdentityCheck {
    let j = CycScalar::j();
    let omegas = [CycScalar::one(), j.clone(), &j * &j];
    let shift = -v.a.iter().flat_map(|l| l.terms.keys().copied()).min().unwrap_or(0).min(0);
    let sq: Vec<BiPoly> = omegas.iter().map(|w| linear(w).mul(&linear(w))).collect();
    let mut g = bivec_zero();
    for k in 0..3 {
        let mut others = BiPoly::constant(CycScalar::one());
        for (l, s) in sq.iter().enumerate() {
            if l != k {
                others = others.mul(s);
            }
        }
        let ak = laurent_vec_as_zmu(&v.a[k], 0, shift);
        g = bivec_sub(&g, &bivec_scale(&others, &ak));
    }
    let all = sq.iter().fold(BiPoly::constant(CycScalar::one()), |acc, s| acc.mul(s));
    g = bivec_add(&g, &bivec_scale(&all, &laurent_vec_as_zmu(&v.a[3], 0, shift)));
    let gg = bivec_dot(&g, &g);
    IdentityCheck {
        tag: "<f',f'> = 0".into(),
        holds: gg.is_zero(),
        remainder: (!gg.is_zero()).then(|| gg.to_string().replace("z̄", "μ")),
    }
}

// ---------------------------------------------------------------------------
// Weierstrass identities

/// Frame identities for `Φ_z = ½(Q² − P², i(Q² + P²), 2PQ)`.
pub fn check_weierstrass_identities(p: &ExactPoly, q: &ExactPoly) -> Result<Report> {
    if p.is_zero() || q.is_zero() {
        return Err(Error::InvalidInput("P and Q must be nonzero".into()));
    }
    let g = p.gcd(q);
    if g.degree() != Some(0) {
        return Err(Error::InvalidInput(format!("gcd(P, Q) = {g} is not 1")));
    }
    let half = CycScalar::ratio(1, 2);
    let i = CycScalar::i();
    let (hp, hq) = (BiPoly::holomorphic(p), BiPoly::holomorphic(q));
    let (cp, cq) = (BiPoly::antiholomorphic(p), BiPoly::antiholomorphic(q));
    let (hp1, hq1) = (BiPoly::holomorphic(&p.derivative()), BiPoly::holomorphic(&q.derivative()));
    let (p2, q2, pq) = (hp.mul(&hp), hq.mul(&hq), hp.mul(&hq));
    let phi_z: BiVec = [
        q2.sub(&p2).scale(&half),
        q2.add(&p2).scale(&(&half * &i)),
        pq.clone(),
    ];
    let phi_zz: BiVec = [
        phi_z[0].derivative_first(),
        phi_z[1].derivative_first(),
        phi_z[2].derivative_first(),
    ];
    let s = hp.mul(&cp).add(&hq.mul(&cq));
    let normal_num: BiVec = [
        hp.mul(&cq).add(&cp.mul(&hq)),
        cp.mul(&hq).sub(&hp.mul(&cq)).scale(&i),
        hp.mul(&cp).sub(&hq.mul(&cq)),
    ];
    let mut checks = vec![IdentityCheck::scalar("null: <Phi_z,Phi_z> = 0", &bivec_dot(&phi_z, &phi_z))];

    // Φ_x × Φ_y = −2i Φ_z × conj(Φ_z) must equal e^{2λ} n = S·N
    let cross = bivec_cross(&phi_z, &bivec_conj(&phi_z));
    let lhs: BiVec = cross.map(|c| c.scale(&(CycScalar::from_int(-2) * &i)));
    checks.push(IdentityCheck::vector(
        "normal: Phi_x x Phi_y = (|P|^2+|Q|^2) N",
        &bivec_sub(&lhs, &bivec_scale(&s, &normal_num)),
    ));
    checks.push(IdentityCheck::scalar(
        "normal: <N,N> = (|P|^2+|Q|^2)^2",
        &bivec_dot(&normal_num, &normal_num).sub(&s.mul(&s)),
    ));
    checks.push(IdentityCheck::scalar("normal: <N,Phi_z> = 0", &bivec_dot(&normal_num, &phi_z)));

    let paper_zz: BiVec = [
        hq1.mul(&hq).sub(&hp1.mul(&hp)),
        hq1.mul(&hq).add(&hp1.mul(&hp)).scale(&i),
        hq1.mul(&hp).add(&hp1.mul(&hq)),
    ];
    checks.push(IdentityCheck::vector(
        "phi_zz: Q'(Q, iQ, P) - P'(P, -iP, -Q)",
        &bivec_sub(&phi_zz, &paper_zz),
    ));
    // Ω = 2⟨Φ_zz, n⟩, so S·Ω = 2⟨Φ_zz, N⟩
    let omega = hp.mul(&hq1).sub(&hp1.mul(&hq)).scale(&CycScalar::from_int(2));
    checks.push(IdentityCheck::scalar(
        "omega: 2<Phi_zz,N> = 2(PQ' - P'Q)(|P|^2+|Q|^2)",
        &bivec_dot(&phi_zz, &normal_num).scale(&CycScalar::from_int(2)).sub(&omega.mul(&s)),
    ));
    checks.push(IdentityCheck::scalar(
        "metric: 2<Phi_z,conj Phi_z> = (|P|^2+|Q|^2)^2",
        &bivec_dot(&phi_z, &bivec_conj(&phi_z)).scale(&CycScalar::from_int(2)).sub(&s.mul(&s)),
    ));
    let (cp1, cq1) = (hp1.conj(), hq1.conj());
    let expanded = hp
        .mul(&cp)
        .mul(&hq1.mul(&cq1))
        .add(&hp1.mul(&cp1).mul(&hq.mul(&cq)))
        .sub(&hp.mul(&cp1).mul(&hq1).mul(&cq))
        .sub(&hp1.mul(&hq).mul(&cp).mul(&cq1))
        .scale(&CycScalar::from_int(4));
    checks.push(IdentityCheck::scalar(
        "omega_norm: |Omega|^2 = 4(|P|^2|Q'|^2 + |P'|^2|Q|^2 - P conj(P') Q' conj(Q) - P' Q conj(P Q'))",
        &omega.mul(&omega.conj()).sub(&expanded),
    ));
    Ok(Report { checks })
}

/// `Ω = 2(PQ′ − P′Q)` as an exact polynomial.
pub fn weierstrass_omega(p: &ExactPoly, q: &ExactPoly) -> ExactPoly {
    p.mul(&q.derivative()).sub(&p.derivative().mul(q)).scale(&CycScalar::from_int(2))
}

// ---------------------------------------------------------------------------
// blow-up series

/// Exact point with rational coordinates.
pub type ExactPoint = [BigRational; 3];

pub fn exact_point(p: [i64; 3]) -> ExactPoint {
    p.map(|v| BigRational::from_integer(BigInt::from(v)))
}

/// Vector of μ-series.
pub type SeriesVec = [MuSeries; 3];

/// `Φ_μ(μ³z)` for `Φ_μ = (Ψ_μ − p)/|Ψ_μ − p|²`, truncated after `μ^order`.
pub fn blowup_series(v: &FamilyVectors, p: &ExactPoint, order: i32) -> Result<SeriesVec> {
    // N = μ³(Ψ_μ(μ³z) − p) is needed through μ^{order−3}
    let n_order = order - 3;
    let j = CycScalar::j();
    let omegas = [CycScalar::one(), j.clone(), &j * &j];
    let mut f: [MuSeries; 3] = std::array::from_fn(|_| MuSeries::zero(n_order));
    // μ³ a_k/(μ³z − μω) = −a_k ω̄ μ² Σ_n (ω̄ z)^n μ^{2n}
    for (k, omega) in omegas.iter().enumerate() {
        let wbar = omega.conj();
        for (e, vec) in &v.a[k].terms {
            let mut n = 0u32;
            while e + 2 + 2 * n as i32 <= n_order {
                let c = -wbar.pow(n + 1);
                for i in 0..3 {
                    let term = BiPoly::monomial(&c * &vec[i], n, 0);
                    f[i] = f[i].add(&MuSeries::monomial(term, e + 2 + 2 * n as i32, n_order));
                }
                n += 1;
            }
        }
    }
    // μ³ a₄ μ³z
    for (e, vec) in &v.a[3].terms {
        for i in 0..3 {
            f[i] = f[i].add(&MuSeries::monomial(BiPoly::monomial(vec[i].clone(), 1, 0), e + 6, n_order));
        }
    }
    let mut n: SeriesVec = std::array::from_fn(|i| f[i].add(&f[i].conj()));
    for i in 0..3 {
        let pc = BiPoly::constant(CycScalar::from_rational(p[i].clone()));
        n[i] = n[i].sub(&MuSeries::monomial(pc, 3, n_order));
    }
    let d = n[0].mul(&n[0]).add(&n[1].mul(&n[1])).add(&n[2].mul(&n[2]));
    if d.valuation() != 0 || !d.coeff(0).is_constant() {
        return Err(Error::NonUnitLeadingTerm);
    }
    let dinv = d.inverse()?;
    Ok(std::array::from_fn(|i| n[i].mul(&dinv).truncate(n_order).shift(3)))
}

/// Exact Enneper bubble `2Re ∫(f/2)(1 − g², i(1 + g²), 2g)` with
/// `(f, g) = (a²/9, 3z/a)`; for `a = 3` this is
/// `E(z) = 2Re(z/2 e₊ + z²/2 e₃ − z³/6 e₋)`.
pub fn enneper_bubble_exact(a: &CycScalar) -> Result<BiVec> {
    let c = CycScalar::from_int(3).checked_div(a)?;
    let f = a * a * CycScalar::ratio(1, 9);
    let half_f = &f * CycScalar::ratio(1, 2);
    let c2_3 = &c * &c * CycScalar::ratio(1, 3);
    let z = |k: u32, s: CycScalar| BiPoly::monomial(s, k, 0);
    let g: BiVec = [
        z(1, half_f.clone()).add(&z(3, -(&half_f * &c2_3))),
        z(1, &half_f * CycScalar::i()).add(&z(3, &half_f * &c2_3 * CycScalar::i())),
        z(2, &half_f * &c),
    ];
    Ok(bivec_add(&g, &bivec_conj(&g)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlowupCoefficient {
    pub power: i32,
    pub nonconstant: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlowupReport {
    pub order: i32,
    pub checks: Vec<IdentityCheck>,
    /// Nonconstant part of every stored coefficient, for the record.
    pub coefficients: Vec<BlowupCoefficient>,
}

impl BlowupReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

/// Checks that the nonconstant parts of the μ⁷ and μ⁸ coefficients vanish
/// and that the μ⁹ one equals `−E(z)`.
pub fn blowup_certificate(a: &CycScalar, p: &ExactPoint, order: i32) -> Result<BlowupReport> {
    if order < 9 {
        return Err(Error::InvalidInput(format!("order must be at least 9, got {order}")));
    }
    let s = blowup_series(&FamilyVectors::standard(a)?, p, order)?;
    let coef = |k: i32| -> BiVec { std::array::from_fn(|i| s[i].coeff(k).nonconstant_part()) };
    let mut checks = Vec::new();
    for k in [7, 8] {
        checks.push(IdentityCheck::vector(format!("mu^{k} nonconstant = 0"), &coef(k)));
    }
    let e = enneper_bubble_exact(a)?;
    checks.push(IdentityCheck::vector("mu^9 nonconstant = -E(z)", &bivec_add(&coef(9), &e)));
    let lo = s.iter().map(MuSeries::valuation).min().unwrap_or(0).min(0);
    let coefficients = (lo..=order)
        .map(|k| {
            let c = coef(k);
            BlowupCoefficient {
                power: k,
                nonconstant: format!("({}, {}, {})", c[0], c[1], c[2]),
            }
        })
        .collect();
    Ok(BlowupReport {
        order,
        checks,
        coefficients,
    })
}
