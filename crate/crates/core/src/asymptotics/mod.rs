//! Blow-up and residue diagnostics near concentration points, branch points
//! and ends.

// `!(x > 0.0)` guards below are meant to reject NaN as well.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::f64::consts::{PI, TAU};
use std::fmt::Write as _;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::surfaces::{
    family_psi_mu, frame, invert, support_function, FourEndedFamilyParams, Immersion, Location, Reciprocal,
};
use crate::vec3::{self, Vec3};
use crate::{Error, Result};

/// Inversion center used by [`blowup_compare`] unless another is given.
pub const DEFAULT_BLOWUP_CENTER: Vec3 = [4.0, 0.0, 1.0];

const MULTIPLICITY_SAMPLES: usize = 256;
const RESIDUE_SAMPLES: usize = 128;
const FIRST_RESIDUE_SAMPLES: usize = 512;

/// `χ(z) = √(ε² + |z|²)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RadialWeight {
    pub epsilon: f64,
}

impl RadialWeight {
    pub fn eval(&self, z: Complex64) -> f64 {
        self.epsilon.hypot(z.norm())
    }
}

/// Least-squares line `y = slope·x + intercept` with its `R²`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LinearFit {
    pub slope: f64,
    pub intercept: f64,
    pub r2: f64,
}

pub fn linear_fit(x: &[f64], y: &[f64]) -> Result<LinearFit> {
    let n = x.len();
    if n < 2 || y.len() != n {
        return Err(Error::DegenerateFit(format!("need at least two points, got {n}")));
    }
    let nf = n as f64;
    let mx = x.iter().sum::<f64>() / nf;
    let my = y.iter().sum::<f64>() / nf;
    let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let syy: f64 = y.iter().map(|b| (b - my).powi(2)).sum();
    if !(sxx > 0.0) || !sxy.is_finite() {
        return Err(Error::DegenerateFit("abscissae are not distinct".into()));
    }
    let slope = sxy / sxx;
    let r2 = if syy > 0.0 { (sxy * sxy / (sxx * syy)).clamp(0.0, 1.0) } else { 1.0 };
    Ok(LinearFit {
        slope,
        intercept: my - slope * mx,
        r2,
    })
}

/// `n` radii from `r_max` down to `r_min`, equally spaced in `log r`.
pub fn geometric_radii(r_max: f64, r_min: f64, n: usize) -> Vec<f64> {
    if n < 2 {
        return vec![r_max];
    }
    let q = (r_min / r_max).powf(1.0 / (n - 1) as f64);
    (0..n).map(|k| r_max * q.powi(k as i32)).collect()
}

fn table_csv(header: &str, radii: &[f64], values: &[f64]) -> String {
    let mut s = format!("{header}\n");
    for (r, v) in radii.iter().zip(values) {
        let _ = writeln!(s, "{r:.12e},{v:.12e}");
    }
    s
}

fn circle(center: Complex64, r: f64, k: usize, n: usize) -> Complex64 {
    center + Complex64::from_polar(r, TAU * k as f64 / n as f64)
}

// ---------------------------------------------------------------------------
// concentration speed

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ConcentrationSpeed {
    /// `2/max|Ω|e^{−λ}`; `+∞` when `Ω ≡ 0` on the grid.
    pub epsilon: f64,
    pub argmax: Complex64,
    pub peak: f64,
}

/// `ε = 2 / max |Ω|e^{−λ}` over `points`.
pub fn concentration_speed<M: Immersion + ?Sized>(model: &M, points: &[Complex64]) -> Result<ConcentrationSpeed> {
    let mut best = ConcentrationSpeed {
        epsilon: f64::INFINITY,
        argmax: Complex64::new(0.0, 0.0),
        peak: 0.0,
    };
    for &z in points {
        let f = frame(model, z)?;
        let v = f.omega.norm() / f.conf_factor;
        if v > best.peak {
            best.peak = v;
            best.argmax = z;
        }
    }
    if best.peak > 0.0 {
        best.epsilon = 2.0 / best.peak;
    }
    Ok(best)
}

/// Polar sample points on `|z| ≤ r_max`, geometrically refined toward 0
/// down to `r_min`, with the angles offset by half a step.
pub fn polar_samples(r_min: f64, r_max: f64, rings: usize, sectors: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0)];
    for r in geometric_radii(r_max, r_min, rings) {
        for k in 0..sectors {
            out.push(Complex64::from_polar(r, TAU * (k as f64 + 0.5) / sectors as f64));
        }
    }
    out
}

// ---------------------------------------------------------------------------
// blow-up comparison

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BlowupRow {
    pub mu: f64,
    pub sup_error: f64,
    /// Smallest sampled distance from the inversion center to `Ψ_μ`.
    pub center_distance: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BlowupTable {
    pub a: f64,
    pub p: Vec3,
    pub radius: f64,
    pub rows: Vec<BlowupRow>,
    /// Slope of `log sup_error` against `log μ`.
    pub order: f64,
    pub order_r2: f64,
}

impl BlowupTable {
    pub fn to_csv(&self) -> String {
        let mus: Vec<f64> = self.rows.iter().map(|r| r.mu).collect();
        let errs: Vec<f64> = self.rows.iter().map(|r| r.sup_error).collect();
        table_csv("mu,sup_error", &mus, &errs)
    }
}

/// The Enneper bubble expected from the family with parameter `a`:
/// `2Re ∫ (f/2)(1−g², i(1+g²), 2g)` with `(f, g) = (a²/9, 3z/a)`.
/// For `a = 3` this is `E(z) = 2Re(z/2 e₊ + z²/2 e₃ − z³/6 e₋)`.
pub fn enneper_bubble(a: f64, z: Complex64) -> Vec3 {
    let c = 3.0 / a;
    let f = a * a / 9.0;
    let z3 = z * z * z;
    let prim = [
        0.5 * f * (z - c * c * z3 / 3.0),
        Complex64::i() * 0.5 * f * (z + c * c * z3 / 3.0),
        0.5 * f * c * z * z,
    ];
    vec3::scale(2.0, vec3::re(prim))
}

/// Minimum of `|Ψ(z) − p|` over a log-polar sample of both charts.
pub fn sampled_distance<M: Immersion + ?Sized>(model: &M, p: Vec3) -> Result<f64> {
    let mut best = f64::INFINITY;
    for r in geometric_radii(1e3, 1e-3, 121) {
        for k in 0..96 {
            let z = Complex64::from_polar(r, TAU * (k as f64 + 0.25) / 96.0);
            match model.jet(z) {
                Ok(j) => best = best.min(vec3::norm(vec3::sub(j.phi, p))),
                Err(Error::SingularPoint(_)) | Err(Error::Pole(_)) => {}
                Err(e) => return Err(e),
            }
        }
    }
    Ok(best)
}

/// `sup_{|z|≤R} |(Φ_μ(μ³z) − Φ_μ(0))/(−μ⁹) − E(z)|` for each `μ`, where
/// `Φ_μ` is `Ψ_μ` inverted about `p`.
pub fn blowup_compare(mu_list: &[f64], radius: f64, a: f64, p: Vec3) -> Result<BlowupTable> {
    if mu_list.len() < 2 || mu_list.windows(2).any(|w| !(w[0] > w[1])) || mu_list[mu_list.len() - 1] <= 0.0 {
        return Err(Error::InvalidInput("mu list must be positive and strictly decreasing with two or more entries".into()));
    }
    if !(radius >= 1.0 && radius.is_finite()) {
        return Err(Error::InvalidInput(format!("radius must be at least 1, got {radius}")));
    }
    let mut rows = Vec::with_capacity(mu_list.len());
    for &mu in mu_list {
        let params = FourEndedFamilyParams {
            a: Complex64::new(a, 0.0),
            ..FourEndedFamilyParams::new(mu)
        };
        let psi = family_psi_mu(params)?;
        let d = sampled_distance(&psi, p)?;
        if d <= 1.0 {
            return Err(Error::InvalidInput(format!(
                "inversion center {p:?} is within distance {d:.4} of psi-mu({mu}); need > 1"
            )));
        }
        let phi = invert(psi, p);
        let origin = phi.jet(Complex64::new(0.0, 0.0))?.phi;
        let scale = mu.powi(3);
        let amp = -mu.powi(9);
        let mut sup = 0.0f64;
        for i in 1..64 {
            let r = radius * i as f64 / 63.0;
            for k in 0..64 {
                let z = Complex64::from_polar(r, TAU * k as f64 / 64.0);
                let v = phi.jet(scale * z)?.phi;
                let normalized = vec3::scale(1.0 / amp, vec3::sub(v, origin));
                sup = sup.max(vec3::norm(vec3::sub(normalized, enneper_bubble(a, z))));
            }
        }
        rows.push(BlowupRow {
            mu,
            sup_error: sup,
            center_distance: d,
        });
    }
    let lx: Vec<f64> = rows.iter().map(|r| r.mu.ln()).collect();
    let ly: Vec<f64> = rows.iter().map(|r| r.sup_error.max(f64::MIN_POSITIVE).ln()).collect();
    let fit = linear_fit(&lx, &ly)?;
    Ok(BlowupTable {
        a,
        p,
        radius,
        rows,
        order: fit.slope,
        order_r2: fit.r2,
    })
}

// ---------------------------------------------------------------------------
// multiplicity

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PointKind {
    Branch,
    End,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MultiplicityFit {
    pub radii: Vec<f64>,
    /// `(1/2π)∮ ∂_rλ ds = r · mean(∂_rλ)` per circle.
    pub circle_means: Vec<f64>,
    /// Branch point when the means are non-negative, end otherwise; at an
    /// end of order `b` the means tend to `−b = −(θ+2)`.
    pub kind: PointKind,
    pub theta_estimate: f64,
}

impl MultiplicityFit {
    pub fn to_csv(&self) -> String {
        table_csv("radius,circle_mean", &self.radii, &self.circle_means)
    }
}

fn lambda_at<M: Immersion + ?Sized>(model: &M, z: Complex64) -> Result<f64> {
    Ok(frame(model, z)?.lambda())
}

fn circle_means<M: Immersion + ?Sized>(model: &M, center: Complex64, radii: &[f64]) -> Result<Vec<f64>> {
    radii
        .iter()
        .map(|&r| {
            let h = r / 200.0;
            let mut acc = 0.0;
            for k in 0..MULTIPLICITY_SAMPLES {
                let u = Complex64::from_polar(1.0, TAU * k as f64 / MULTIPLICITY_SAMPLES as f64);
                let d = (lambda_at(model, center + u * (r + h))? - lambda_at(model, center + u * (r - h))?) / (2.0 * h);
                acc += d;
            }
            Ok(r * acc / MULTIPLICITY_SAMPLES as f64)
        })
        .collect()
}

/// `θ` from circle means of `∂_rλ` around `center`; ends at `∞` are probed
/// in the chart `w = 1/z`.
pub fn multiplicity_estimate<M: Immersion + ?Sized>(
    model: &M,
    center: Location,
    radii: &[f64],
) -> Result<MultiplicityFit> {
    if radii.len() < 2 || radii.iter().any(|&r| !(r > 0.0)) {
        return Err(Error::InvalidInput("need two or more positive radii".into()));
    }
    let means = match center {
        Location::Finite(c) => circle_means(model, c, radii)?,
        Location::Infinity => circle_means(&Reciprocal { base: model }, Complex64::new(0.0, 0.0), radii)?,
    };
    let fit = linear_fit(radii, &means)?;
    let r_min = radii.iter().copied().fold(f64::INFINITY, f64::min);
    let raw = fit.slope * r_min + fit.intercept;
    let (kind, theta_estimate) = if raw >= -1.0 {
        (PointKind::Branch, raw)
    } else {
        (PointKind::End, -raw - 2.0)
    };
    Ok(MultiplicityFit {
        radii: radii.to_vec(),
        circle_means: means,
        kind,
        theta_estimate,
    })
}

// ---------------------------------------------------------------------------
// Harnack

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct HarnackRatio {
    pub min: f64,
    pub max: f64,
}

impl HarnackRatio {
    pub fn spread(&self) -> f64 {
        self.max / self.min
    }
}

/// Extremes of `e^λ/χ^θ` over `points`.
pub fn harnack_ratio<M: Immersion + ?Sized>(
    model: &M,
    weight: RadialWeight,
    theta: f64,
    points: &[Complex64],
) -> Result<HarnackRatio> {
    if points.is_empty() {
        return Err(Error::InvalidInput("empty grid".into()));
    }
    let mut out = HarnackRatio {
        min: f64::INFINITY,
        max: 0.0,
    };
    for &z in points {
        let v = frame(model, z)?.conf_factor / weight.eval(z).powf(theta);
        out.min = out.min.min(v);
        out.max = out.max.max(v);
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// second residue

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Probe {
    /// `|H|`, for branch points of inverted models.
    MeanCurvature,
    /// `|⟨n, Φ − p⟩|`, for ends of minimal models.
    Support,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResidueFit {
    /// Strictly decreasing.
    pub radii: Vec<f64>,
    /// Per-circle sup of the probe.
    pub values: Vec<f64>,
    pub slope: f64,
    pub alpha: i64,
    pub r2: f64,
}

impl ResidueFit {
    pub fn to_csv(&self) -> String {
        table_csv("radius,sup_probe", &self.radii, &self.values)
    }
}

fn probe_value<M: Immersion + ?Sized>(model: &M, probe: Probe, p: Vec3, z: Complex64) -> Result<f64> {
    Ok(match probe {
        Probe::MeanCurvature => frame(model, z)?.h.abs(),
        Probe::Support => support_function(model, p, z)?.abs(),
    })
}

fn residue_on<M: Immersion + ?Sized>(model: &M, center: Complex64, probe: Probe, p: Vec3, radii: &[f64]) -> Result<Vec<f64>> {
    radii
        .iter()
        .map(|&r| {
            let mut sup = 0.0f64;
            for k in 0..RESIDUE_SAMPLES {
                sup = sup.max(probe_value(model, probe, p, circle(center, r, k, RESIDUE_SAMPLES))?);
            }
            Ok(sup)
        })
        .collect()
}

/// Fits `sup_{|z−c|=r} |probe| ∼ C r^{−α}`.
pub fn second_residue_fit<M: Immersion + ?Sized>(
    model: &M,
    center: Location,
    probe: Probe,
    p: Vec3,
    radii: &[f64],
) -> Result<ResidueFit> {
    if radii.len() < 2 || radii.windows(2).any(|w| !(w[0] > w[1])) || radii[radii.len() - 1] <= 0.0 {
        return Err(Error::InvalidInput("radii must be positive and strictly decreasing".into()));
    }
    if radii[0] / radii[radii.len() - 1] < 100.0 * (1.0 - 1e-9) {
        return Err(Error::InvalidInput("radii must span at least two decades".into()));
    }
    let values = match center {
        Location::Finite(c) => residue_on(model, c, probe, p, radii)?,
        Location::Infinity => residue_on(&Reciprocal { base: model }, Complex64::new(0.0, 0.0), probe, p, radii)?,
    };
    if values.iter().any(|&v| !(v > 1e-250) || !v.is_finite()) {
        return Err(Error::DegenerateFit(format!("{probe:?} probe vanishes or overflows on a circle")));
    }
    let lx: Vec<f64> = radii.iter().map(|r| r.ln()).collect();
    let ly: Vec<f64> = values.iter().map(|v| v.ln()).collect();
    let fit = linear_fit(&lx, &ly)?;
    Ok(ResidueFit {
        radii: radii.to_vec(),
        values,
        slope: fit.slope,
        alpha: (-fit.slope).round() as i64,
        r2: fit.r2,
    })
}

// ---------------------------------------------------------------------------
// first residue

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FirstResidue {
    pub gamma: Vec3,
    /// `sup |∇H⃗|` on the circle.
    pub gradient_scale: f64,
}

impl FirstResidue {
    pub fn norm(&self) -> f64 {
        vec3::norm(self.gamma)
    }
}

fn mean_curvature_vector<M: Immersion + ?Sized>(model: &M, z: Complex64) -> Result<(Vec3, Vec3)> {
    let f = frame(model, z)?;
    Ok((vec3::scale(f.h, f.normal), f.normal))
}

/// `γ₀ = (1/4π)∮ ν·(∇H⃗ − 3π_n(∇H⃗) + ∇^⊥n × H⃗)` on `|z − c| = r`.
pub fn first_residue<M: Immersion + ?Sized>(model: &M, center: Complex64, radius: f64) -> Result<FirstResidue> {
    if !(radius > 0.0) {
        return Err(Error::InvalidInput("radius must be positive".into()));
    }
    let h = radius / 100.0;
    let dx = Complex64::new(h, 0.0);
    let dy = Complex64::new(0.0, h);
    let mut gamma = vec3::ZERO;
    let mut gradient_scale = 0.0f64;
    for k in 0..FIRST_RESIDUE_SAMPLES {
        let t = TAU * k as f64 / FIRST_RESIDUE_SAMPLES as f64;
        let (c, s) = (t.cos(), t.sin());
        let z = center + Complex64::from_polar(radius, t);
        let (hv, n) = mean_curvature_vector(model, z)?;
        let (hxp, nxp) = mean_curvature_vector(model, z + dx)?;
        let (hxm, nxm) = mean_curvature_vector(model, z - dx)?;
        let (hyp, nyp) = mean_curvature_vector(model, z + dy)?;
        let (hym, nym) = mean_curvature_vector(model, z - dy)?;
        let d = |a: Vec3, b: Vec3| vec3::scale(0.5 / h, vec3::sub(a, b));
        let (hx, hy) = (d(hxp, hxm), d(hyp, hym));
        let (nx, ny) = (d(nxp, nxm), d(nyp, nym));
        let part = |g: Vec3, rot: Vec3| {
            vec3::add(
                vec3::sub(g, vec3::scale(3.0 * vec3::dot(g, n), n)),
                vec3::cross(rot, hv),
            )
        };
        let vx = part(hx, vec3::scale(-1.0, ny));
        let vy = part(hy, nx);
        let flux = vec3::add(vec3::scale(c, vx), vec3::scale(s, vy));
        gamma = vec3::add(gamma, flux);
        gradient_scale = gradient_scale.max((vec3::dot(hx, hx) + vec3::dot(hy, hy)).sqrt());
    }
    let ds = radius * TAU / FIRST_RESIDUE_SAMPLES as f64;
    Ok(FirstResidue {
        gamma: vec3::scale(ds / (4.0 * PI), gamma),
        gradient_scale,
    })
}

// ---------------------------------------------------------------------------
// Willmore equation

/// `|e^{−2λ}Δ_flat H + 2|Ω|²e^{−4λ}H|` with a 5-point Laplacian of step `h`.
pub fn willmore_residual<M: Immersion + ?Sized>(model: &M, z: Complex64, h: f64) -> Result<f64> {
    if !(h > 0.0) {
        return Err(Error::InvalidInput("step must be positive".into()));
    }
    let f = frame(model, z)?;
    if model.is_minimal() {
        return Ok((2.0 * f.omega.norm_sqr() / f.metric().powi(2) * f.h).abs());
    }
    let hz = |w: Complex64| frame(model, w).map(|g| g.h);
    let lap = (hz(z + h)? + hz(z - h)? + hz(z + Complex64::new(0.0, h))? + hz(z - Complex64::new(0.0, h))? - 4.0 * f.h)
        / (h * h);
    let m = f.metric();
    Ok((lap / m + 2.0 * f.omega.norm_sqr() / (m * m) * f.h).abs())
}
