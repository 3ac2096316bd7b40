//! Polynomial roots by Aberth–Ehrlich iteration with Newton polish, and a
//! multiplicity-aware factorization used by partial fractions.

use num_complex::Complex64;
use num_traits::Zero;

use super::polynomial::ComplexPolynomial;
use crate::{Error, Result};

const MAX_ITER: usize = 800;

/// All roots of `p`, repeated roots returned as clusters of nearby values.
///
/// Exact zero roots (vanishing low-order coefficients) are split off first and
/// returned exactly.
pub fn polynomial_roots(p: &ComplexPolynomial) -> Vec<Complex64> {
    if p.is_zero() || p.degree() == 0 {
        return Vec::new();
    }
    let c = p.coeffs();
    let zeros = c.iter().take_while(|x| x.is_zero()).count();
    let q = ComplexPolynomial::new(c[zeros..].to_vec());
    let mut roots = vec![Complex64::zero(); zeros];
    roots.extend(aberth(&q));
    roots
}

fn aberth(p: &ComplexPolynomial) -> Vec<Complex64> {
    let n = p.degree();
    match n {
        0 => return Vec::new(),
        1 => return vec![-p.coeff(0) / p.coeff(1)],
        _ => {}
    }
    let dp = p.derivative();
    let lc = p.leading().norm();
    // geometric mean of root moduli as starting radius
    let radius = (p.coeff(0).norm() / lc).powf(1.0 / n as f64).max(1e-3);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius, std::f64::consts::TAU * k as f64 / n as f64 + 0.4))
        .collect();
    for _ in 0..MAX_ITER {
        let mut max_step: f64 = 0.0;
        for i in 0..n {
            let pv = p.eval(z[i]);
            if pv.is_zero() {
                continue;
            }
            let ratio = pv / dp.eval(z[i]);
            let repulsion: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| Complex64::new(1.0, 0.0) / (z[i] - z[j]))
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if step.is_finite() {
                z[i] -= step;
                max_step = max_step.max(step.norm() / z[i].norm().max(1.0));
            }
        }
        if max_step < 1e-16 {
            break;
        }
    }
    for root in z.iter_mut() {
        polish(p, &dp, root);
    }
    z
}

fn polish(p: &ComplexPolynomial, dp: &ComplexPolynomial, root: &mut Complex64) {
    for _ in 0..4 {
        let d = dp.eval(*root);
        if d.norm() <= 1e-300 {
            return;
        }
        let step = p.eval(*root) / d;
        if !step.is_finite() || step.norm() > 1e-6 * root.norm().max(1.0) {
            return;
        }
        *root -= step;
    }
}

/// Roots grouped by multiplicity: `p = lc · Π (z - c)^m`.
///
/// Roots within `1e-6·max(1,|c|)` of one another form a cluster. A cluster is
/// accepted as one multiple root when `p` vanishes at its mean to rounding
/// level, then refined by Newton on the `(m-1)`-th derivative; otherwise the
/// roots are distinct but too close to separate and
/// [`Error::ClusteredRoots`] is returned. The factorization must also
/// reproduce the coefficients of `p` to `1e-8` relative.
pub fn factor_roots(p: &ComplexPolynomial) -> Result<Vec<(Complex64, usize)>> {
    let roots = polynomial_roots(p);
    let mut used = vec![false; roots.len()];
    let mut groups: Vec<(Complex64, usize)> = Vec::new();
    for i in 0..roots.len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        let mut members = vec![roots[i]];
        // grow the cluster transitively
        let mut k = 0;
        while k < members.len() {
            let anchor = members[k];
            for j in 0..roots.len() {
                if !used[j] && (roots[j] - anchor).norm() <= 1e-6 * anchor.norm().max(1.0) {
                    used[j] = true;
                    members.push(roots[j]);
                }
            }
            k += 1;
        }
        let m = members.len();
        let mean = members.iter().sum::<Complex64>() / m as f64;
        let center = if m > 1 && !mean.is_zero() {
            // a perturbed m-fold root leaves p(mean) at rounding level;
            // genuinely distinct close roots do not
            let rounding = 64.0 * f64::EPSILON * p.eval_scale(mean);
            if p.eval(mean).norm() > rounding {
                return Err(Error::ClusteredRoots {
                    a: members[0],
                    b: members[1],
                    tolerance: 1e-10,
                });
            }
            refine_multiple(p, mean, m)
        } else {
            mean
        };
        groups.push((center, m));
    }
    let rebuilt = groups.iter().fold(ComplexPolynomial::constant(p.leading()), |acc, &(c, m)| {
        let mut acc = acc;
        for _ in 0..m {
            acc = &acc * &ComplexPolynomial::new(vec![-c, Complex64::new(1.0, 0.0)]);
        }
        acc
    });
    let scale = p.max_coeff_norm();
    let worst = (0..=p.degree())
        .map(|k| (rebuilt.coeff(k) - p.coeff(k)).norm())
        .fold(0.0, f64::max);
    if worst > 1e-8 * scale {
        let (a, b) = closest_pair(&roots);
        return Err(Error::ClusteredRoots {
            a,
            b,
            tolerance: 1e-10,
        });
    }
    Ok(groups)
}

fn refine_multiple(p: &ComplexPolynomial, start: Complex64, m: usize) -> Complex64 {
    let mut d = p.clone();
    for _ in 0..m - 1 {
        d = d.derivative();
    }
    let dd = d.derivative();
    let mut z = start;
    polish(&d, &dd, &mut z);
    z
}

fn closest_pair(roots: &[Complex64]) -> (Complex64, Complex64) {
    let mut best = (f64::INFINITY, Complex64::zero(), Complex64::zero());
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            let d = (roots[i] - roots[j]).norm();
            if d < best.0 {
                best = (d, roots[i], roots[j]);
            }
        }
    }
    (best.1, best.2)
}
