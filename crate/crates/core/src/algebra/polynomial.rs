use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::Zero;

/// Dense complex polynomial, coefficients lowest degree first.
///
/// Trailing (leading-degree) exact zeros are trimmed on construction, so the
/// zero polynomial has an empty coefficient list.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct ComplexPolynomial {
    coeffs: Vec<Complex64>,
}

impl ComplexPolynomial {
    pub fn new(mut coeffs: Vec<Complex64>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: Complex64) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(Complex64::new(1.0, 0.0))
    }

    /// The identity polynomial `z`.
    pub fn z() -> Self {
        Self::monomial(Complex64::new(1.0, 0.0), 1)
    }

    pub fn monomial(c: Complex64, degree: usize) -> Self {
        let mut coeffs = vec![Complex64::zero(); degree + 1];
        coeffs[degree] = c;
        Self::new(coeffs)
    }

    /// `lc · Π (z - r)`
    pub fn from_roots(lc: Complex64, roots: &[Complex64]) -> Self {
        let mut p = Self::constant(lc);
        for &r in roots {
            p = &p * &Self::new(vec![-r, Complex64::new(1.0, 0.0)]);
        }
        p
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial reported as degree 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> Complex64 {
        self.coeffs.last().copied().unwrap_or_default()
    }

    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or_default()
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::zero(), |acc, &c| acc * z + c)
    }

    /// `Σ |cₖ| |z|ᵏ`, the magnitude against which rounding in `eval` is judged.
    pub fn eval_scale(&self, z: Complex64) -> f64 {
        let r = z.norm();
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * r + c.norm())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| c * k as f64)
                .collect(),
        )
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self::new(self.coeffs.iter().map(|&c| c * s).collect())
    }

    /// Coefficients of `t ↦ p(center + t)`.
    pub fn taylor_shift(&self, center: Complex64) -> Self {
        let mut c = self.coeffs.clone();
        let n = c.len();
        for i in 0..n {
            for k in (i..n.saturating_sub(1)).rev() {
                let hi = c[k + 1];
                c[k] += center * hi;
            }
        }
        Self::new(c)
    }

    /// Euclidean division `self = q·d + r`, `deg r < deg d`.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dn = d.degree();
        if self.is_zero() || self.degree() < dn {
            return (Self::zero(), self.clone());
        }
        let lc = d.leading();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Complex64::zero(); self.degree() - dn + 1];
        for k in (0..quot.len()).rev() {
            let q = rem[k + dn] / lc;
            quot[k] = q;
            for (j, &dc) in d.coeffs.iter().enumerate() {
                rem[k + j] -= q * dc;
            }
            rem[k + dn] = Complex64::zero();
        }
        rem.truncate(dn);
        (Self::new(quot), Self::new(rem))
    }

    pub fn max_coeff_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Drops leading coefficients below `tol · max|c|`.
    pub fn trim(&self, tol: f64) -> Self {
        let cut = tol * self.max_coeff_norm();
        let mut coeffs = self.coeffs.clone();
        while coeffs.last().is_some_and(|c| c.norm() <= cut) {
            coeffs.pop();
        }
        Self::new(coeffs)
    }
}

impl Add for &ComplexPolynomial {
    type Output = ComplexPolynomial;
    fn add(self, rhs: &ComplexPolynomial) -> ComplexPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        ComplexPolynomial::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &ComplexPolynomial {
    type Output = ComplexPolynomial;
    fn sub(self, rhs: &ComplexPolynomial) -> ComplexPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        ComplexPolynomial::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &ComplexPolynomial {
    type Output = ComplexPolynomial;
    fn mul(self, rhs: &ComplexPolynomial) -> ComplexPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return ComplexPolynomial::zero();
        }
        let mut out = vec![Complex64::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        ComplexPolynomial::new(out)
    }
}

impl Neg for &ComplexPolynomial {
    type Output = ComplexPolynomial;
    fn neg(self) -> ComplexPolynomial {
        ComplexPolynomial::new(self.coeffs.iter().map(|&c| -c).collect())
    }
}

impl fmt::Display for ComplexPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})z")?,
                _ => write!(f, "({c})z^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn trims_leading_zeros() {
        let p = ComplexPolynomial::new(vec![c(1.0, 0.0), c(0.0, 0.0)]);
        assert_eq!(p.degree(), 0);
        assert!(ComplexPolynomial::new(vec![c(0.0, 0.0)]).is_zero());
    }

    #[test]
    fn division_reconstructs() {
        let p = ComplexPolynomial::from_real(&[1.0, -2.0, 0.5, 3.0, 1.0]);
        let d = ComplexPolynomial::new(vec![c(0.3, 1.0), c(1.0, 0.0), c(2.0, -1.0)]);
        let (q, r) = p.div_rem(&d);
        assert!(r.degree() < d.degree());
        let back = &(&q * &d) + &r;
        for k in 0..=p.degree() {
            assert!((back.coeff(k) - p.coeff(k)).norm() < 1e-12);
        }
    }

    #[test]
    fn taylor_shift_matches_evaluation() {
        let p = ComplexPolynomial::from_real(&[2.0, 0.0, -1.0, 4.0]);
        let center = c(0.5, -0.25);
        let shifted = p.taylor_shift(center);
        for t in [c(0.1, 0.2), c(-1.0, 0.5)] {
            assert!((shifted.eval(t) - p.eval(center + t)).norm() < 1e-12);
        }
    }

    #[test]
    fn derivative_of_monomial() {
        let p = ComplexPolynomial::monomial(c(3.0, 0.0), 4);
        assert_eq!(p.derivative(), ComplexPolynomial::monomial(c(12.0, 0.0), 3));
    }
}
