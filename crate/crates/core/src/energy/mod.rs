//! Curvature energies over the Riemann sphere by adaptive two-chart
//! quadrature.
//!
//! The sphere is covered by `|z| ≤ R₀` and `|w| ≤ 1/R₀` with `w = 1/z`.
//! Each disk is cut into polar panels with breakpoints at the declared
//! special points; panels are refined worst-first by 8×8 Gauss–Legendre
//! rules checked against 5×5 rules. The four densities
//! `H²e^{2λ}`, `|A|²e^{2λ}`, `|Å|²e^{2λ}`, `Ke^{2λ}` are integrated together.

mod gauss;

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::{PI, TAU};
use std::time::Instant;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::RationalFunction;
use crate::surfaces::{frame, Immersion, Topology};
use crate::{Error, Result};

pub use crate::surfaces::Topology as TopologyData;

/// Panel budget after which refinement gives up.
const MAX_PANELS: usize = 400_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SingularKind {
    Pole,
    Branch,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    pub rel_tol: f64,
    pub max_depth: u32,
    pub singular_points: Vec<(Complex64, SingularKind)>,
    pub chart_split_radius: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            rel_tol: 1e-3,
            max_depth: 18,
            singular_points: Vec::new(),
            chart_split_radius: 1.0,
        }
    }
}

impl QuadratureSpec {
    /// Default spec with the finite special points of `topology` declared.
    pub fn for_topology(topology: &Topology) -> Self {
        use crate::surfaces::SpecialPoint;
        let singular_points = topology
            .points
            .iter()
            .filter_map(|p| {
                let kind = match p {
                    SpecialPoint::End { .. } => SingularKind::Pole,
                    SpecialPoint::Branch { .. } => SingularKind::Branch,
                };
                match p.location() {
                    crate::surfaces::Location::Finite(z) => Some((z, kind)),
                    crate::surfaces::Location::Infinity => None,
                }
            })
            .collect();
        Self {
            singular_points,
            ..Self::default()
        }
    }

    pub fn with_rel_tol(mut self, rel_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self
    }

    pub fn with_chart_split(mut self, radius: f64) -> Self {
        self.chart_split_radius = radius;
        self
    }

    fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.rel_tol.is_finite()) {
            return Err(Error::InvalidInput(format!("rel_tol must be positive, got {}", self.rel_tol)));
        }
        if !(self.chart_split_radius > 0.0 && self.chart_split_radius.is_finite()) {
            return Err(Error::InvalidInput("chart_split_radius must be positive".into()));
        }
        for (i, a) in self.singular_points.iter().enumerate() {
            for b in &self.singular_points[i + 1..] {
                if (a.0 - b.0).norm() < 1e-12 {
                    return Err(Error::InvalidInput(format!("duplicate singular point {}", a.0)));
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DensityKind {
    /// `H²`
    MeanCurvature,
    /// `|A|² = 4H² − 2K`
    SecondFundamental,
    /// `|Å|² = 2H² − 2K`
    Traceless,
    /// `K`
    Gauss,
}

impl DensityKind {
    fn index(self) -> usize {
        match self {
            DensityKind::MeanCurvature => 0,
            DensityKind::SecondFundamental => 1,
            DensityKind::Traceless => 2,
            DensityKind::Gauss => 3,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EnergyReport {
    /// `∫H²`
    pub willmore: Estimate,
    /// `∫|A|²`
    pub total_curv: Estimate,
    /// `∫|Å|²`
    pub tracefree: Estimate,
    /// `∫K`
    pub gauss_integral: Estimate,
    pub gauss_bonnet_predicted: f64,
    /// `E − 4W + 2∫K` and `𝓔 − 2W + 2∫K`.
    pub identity_residuals: [f64; 2],
    pub panels_used: usize,
    pub seconds: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
enum Chart {
    Z,
    W,
}

#[derive(Clone, Copy, Debug)]
struct Panel {
    chart: Chart,
    r: (f64, f64),
    t: (f64, f64),
    depth: u32,
    value: [f64; 4],
    error: [f64; 4],
}

impl Panel {
    fn weight(&self) -> f64 {
        self.error.iter().sum()
    }
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight().total_cmp(&other.weight())
    }
}

struct Integrator<'a, M: ?Sized> {
    model: &'a M,
    minimal: bool,
    split: f64,
    evaluations: usize,
}

impl<M: Immersion + ?Sized> Integrator<'_, M> {
    /// Densities against `dx dy` in the given chart.
    fn density(&mut self, chart: Chart, x: Complex64) -> Result<[f64; 4]> {
        self.evaluations += 1;
        let (z, jac) = match chart {
            Chart::Z => (x, 1.0),
            Chart::W => (x.inv(), 1.0 / x.norm_sqr().powi(2)),
        };
        let mut d = frame(self.model, z)?.densities();
        if self.minimal {
            d[0] = 0.0;
        }
        Ok(d.map(|v| v * jac))
    }

    fn rule(&mut self, p: &Panel, nodes: &[(f64, f64)]) -> Result<[f64; 4]> {
        let (r0, r1) = p.r;
        let (t0, t1) = p.t;
        let (rh, th) = (0.5 * (r1 - r0), 0.5 * (t1 - t0));
        let mut acc = [0.0; 4];
        for &(xr, wr) in nodes {
            let r = r0 + rh * (xr + 1.0);
            for &(xt, wt) in nodes {
                let t = t0 + th * (xt + 1.0);
                let d = self.density(p.chart, Complex64::from_polar(r, t))?;
                let w = wr * wt * r * rh * th;
                for k in 0..4 {
                    acc[k] += w * d[k];
                }
            }
        }
        Ok(acc)
    }

    fn evaluate(&mut self, chart: Chart, r: (f64, f64), t: (f64, f64), depth: u32) -> Result<Panel> {
        let mut p = Panel {
            chart,
            r,
            t,
            depth,
            value: [0.0; 4],
            error: [0.0; 4],
        };
        let hi = self.rule(&p, &gauss::GL8)?;
        let lo = self.rule(&p, &gauss::GL5)?;
        p.value = hi;
        for k in 0..4 {
            p.error[k] = (hi[k] - lo[k]).abs();
        }
        Ok(p)
    }

    fn initial_panels(&mut self, spec: &QuadratureSpec) -> Result<Vec<Panel>> {
        let mut out = Vec::new();
        for chart in [Chart::Z, Chart::W] {
            let radius = match chart {
                Chart::Z => self.split,
                Chart::W => 1.0 / self.split,
            };
            let mut radii: Vec<f64> = (0..=12).map(|k| radius * 0.5f64.powi(k)).collect();
            radii.push(0.0);
            let mut angles: Vec<f64> = (0..8).map(|k| k as f64 * PI / 4.0).collect();
            for &(p, _) in &spec.singular_points {
                let local = match chart {
                    Chart::Z => p,
                    Chart::W if p.norm() > 0.0 => p.inv(),
                    Chart::W => continue,
                };
                let rho = local.norm();
                if rho == 0.0 || rho >= radius {
                    continue;
                }
                radii.push(rho);
                for k in 1..=4 {
                    let f = 0.5f64.powi(k);
                    radii.push(rho * (1.0 - f));
                    radii.push((rho * (1.0 + f)).min(radius));
                    angles.push((local.arg() + f).rem_euclid(TAU));
                    angles.push((local.arg() - f).rem_euclid(TAU));
                }
                angles.push(local.arg().rem_euclid(TAU));
            }
            radii.retain(|&r| r <= radius);
            sort_dedup(&mut radii);
            sort_dedup(&mut angles);
            for rw in radii.windows(2) {
                for (i, &a) in angles.iter().enumerate() {
                    let b = angles.get(i + 1).copied().unwrap_or(angles[0] + TAU);
                    out.push(self.evaluate(chart, (rw[0], rw[1]), (a, b), 0)?);
                }
            }
        }
        Ok(out)
    }

    fn refine(&mut self, p: &Panel) -> Result<[Panel; 4]> {
        let rm = 0.5 * (p.r.0 + p.r.1);
        let tm = 0.5 * (p.t.0 + p.t.1);
        let d = p.depth + 1;
        Ok([
            self.evaluate(p.chart, (p.r.0, rm), (p.t.0, tm), d)?,
            self.evaluate(p.chart, (p.r.0, rm), (tm, p.t.1), d)?,
            self.evaluate(p.chart, (rm, p.r.1), (p.t.0, tm), d)?,
            self.evaluate(p.chart, (rm, p.r.1), (tm, p.t.1), d)?,
        ])
    }
}

fn sort_dedup(v: &mut Vec<f64>) {
    v.sort_by(f64::total_cmp);
    v.dedup_by(|a, b| (*a - *b).abs() <= 1e-14 * b.abs().max(1e-300));
}

/// Integrals of the four densities with error estimates, and the number of
/// panels in the final partition.
pub fn integrate_all<M: Immersion + ?Sized>(model: &M, spec: &QuadratureSpec) -> Result<([Estimate; 4], usize)> {
    spec.validate()?;
    if let Some(r) = model.domain_radius() {
        return Err(Error::InvalidInput(format!(
            "{} is a local model on |z| <= {r}; global energies are undefined",
            model.name()
        )));
    }
    let mut it = Integrator {
        model,
        minimal: model.is_minimal(),
        split: spec.chart_split_radius,
        evaluations: 0,
    };
    let mut heap: BinaryHeap<Panel> = it.initial_panels(spec)?.into_iter().collect();
    let mut frozen: Vec<Panel> = Vec::new();
    let totals = |heap: &BinaryHeap<Panel>, frozen: &[Panel]| {
        let mut v = [0.0; 4];
        let mut e = [0.0; 4];
        for p in heap.iter().chain(frozen) {
            for k in 0..4 {
                v[k] += p.value[k];
                e[k] += p.error[k];
            }
        }
        (v, e)
    };
    let (mut value, mut error) = totals(&heap, &frozen);
    let converged = |value: &[f64; 4], error: &[f64; 4]| {
        let floor = 1e-6 * value.iter().map(|v| v.abs()).sum::<f64>();
        (0..4).all(|k| error[k] <= spec.rel_tol * value[k].abs().max(floor) || error[k] < 1e-13)
    };
    while !converged(&value, &error) {
        let Some(worst) = heap.pop() else { break };
        if worst.depth >= spec.max_depth || heap.len() + frozen.len() > MAX_PANELS {
            frozen.push(worst);
            if heap.is_empty() || heap.len() + frozen.len() > MAX_PANELS {
                break;
            }
            continue;
        }
        let children = it.refine(&worst)?;
        for k in 0..4 {
            value[k] -= worst.value[k];
            error[k] -= worst.error[k];
            for c in &children {
                value[k] += c.value[k];
                error[k] += c.error[k];
            }
        }
        heap.extend(children);
    }
    // deterministic final sum over a fixed panel order
    let mut panels: Vec<Panel> = heap.into_vec();
    panels.extend(frozen);
    panels.sort_by(|a, b| {
        (a.chart as u8, a.r.0, a.t.0)
            .partial_cmp(&(b.chart as u8, b.r.0, b.t.0))
            .unwrap_or(Ordering::Equal)
    });
    let (value, error) = totals(&BinaryHeap::new(), &panels);
    if !converged(&value, &error) {
        let worst = (0..4)
            .max_by(|&a, &b| (error[a] / value[a].abs().max(1e-300)).total_cmp(&(error[b] / value[b].abs().max(1e-300))))
            .unwrap_or(0);
        return Err(Error::NonConvergent {
            error: error[worst],
            target: spec.rel_tol * value[worst].abs(),
        });
    }
    let estimates = std::array::from_fn(|k| Estimate {
        value: value[k],
        error: error[k],
    });
    Ok((estimates, panels.len()))
}

/// `∫` of one density over the whole sphere.
pub fn integrate_density<M: Immersion + ?Sized>(
    model: &M,
    kind: DensityKind,
    spec: &QuadratureSpec,
) -> Result<Estimate> {
    Ok(integrate_all(model, spec)?.0[kind.index()])
}

/// All four energies plus the Gauss–Bonnet prediction from `topology`.
pub fn energy_report<M: Immersion + ?Sized>(
    model: &M,
    topology: &Topology,
    spec: &QuadratureSpec,
) -> Result<EnergyReport> {
    let start = Instant::now();
    let ([w, e, t, k], panels_used) = integrate_all(model, spec)?;
    Ok(EnergyReport {
        willmore: w,
        total_curv: e,
        tracefree: t,
        gauss_integral: k,
        gauss_bonnet_predicted: topology.gauss_bonnet(),
        identity_residuals: [
            e.value - 4.0 * w.value + 2.0 * k.value,
            t.value - 2.0 * w.value + 2.0 * k.value,
        ],
        panels_used,
        seconds: start.elapsed().as_secs_f64(),
    })
}

/// `max(deg num, deg den)`; total curvature of a complete minimal surface
/// is `−4π` times this.
pub fn gauss_map_degree(g: &RationalFunction) -> usize {
    g.numerator().degree().max(g.denominator().degree())
}
