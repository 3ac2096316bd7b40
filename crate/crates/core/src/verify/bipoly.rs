use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::algebra::{CycScalar, ExactPoly};

/// Finitely supported `Σ c_{pq} x^p y^q` over ℚ(ζ₁₂).
///
/// Read as a polynomial in `z, z̄` it is a [`ConjPolynomial`]; the same ring
/// also carries polynomials in `(z, μ)` for the conformality check.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), CycScalar>,
}

/// Polynomial in `z` and `z̄`.
pub type ConjPolynomial = BiPoly;

impl BiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: CycScalar) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(c: CycScalar, p: u32, q: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((p, q), c);
        }
        Self { terms }
    }

    /// `P(z)` as a polynomial in `z` alone.
    pub fn holomorphic(p: &ExactPoly) -> Self {
        let mut out = Self::zero();
        for (k, c) in p.coeffs().iter().enumerate() {
            out.add_term((k as u32, 0), c.clone());
        }
        out
    }

    /// `conj(P(z)) = P̄(z̄)`.
    pub fn antiholomorphic(p: &ExactPoly) -> Self {
        Self::holomorphic(p).conj()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &CycScalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, p: u32, q: u32) -> CycScalar {
        self.terms.get(&(p, q)).cloned().unwrap_or_else(CycScalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&k| k == (0, 0))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree, `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|(p, q)| p + q).max()
    }

    fn add_term(&mut self, key: (u32, u32), c: CycScalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(key).or_insert_with(CycScalar::zero);
        *slot += &c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(*k, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for ((p1, q1), c1) in &self.terms {
            for ((p2, q2), c2) in &other.terms {
                out.add_term((p1 + p2, q1 + q2), c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, s: &CycScalar) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(k, c)| (*k, c * s)).collect(),
        }
    }

    /// Formal conjugation: swaps the variables and conjugates coefficients.
    pub fn conj(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(&(p, q), c)| ((q, p), c.conj())).collect(),
        }
    }

    /// `∂/∂x` of the first variable.
    pub fn derivative_first(&self) -> Self {
        let mut out = Self::zero();
        for (&(p, q), c) in &self.terms {
            if p > 0 {
                out.add_term((p - 1, q), c * &CycScalar::from_int(p as i64));
            }
        }
        out
    }

    /// The `(0, 0)` coefficient.
    pub fn constant_part(&self) -> CycScalar {
        self.coeff(0, 0)
    }

    pub fn nonconstant_part(&self) -> Self {
        Self {
            terms: self.terms.iter().filter(|(k, _)| **k != (0, 0)).map(|(k, c)| (*k, c.clone())).collect(),
        }
    }

    /// Evaluates with `x = z` and `y = z̄`.
    pub fn eval_conj(&self, z: Complex64) -> Complex64 {
        self.eval(z, z.conj())
    }

    pub fn eval(&self, x: Complex64, y: Complex64) -> Complex64 {
        self.terms
            .iter()
            .map(|(&(p, q), c)| c.to_complex() * x.powu(p) * y.powu(q))
            .sum()
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (&(p, q), c)) in self.terms.iter().enumerate() {
            let negative = c.is_rational() && c.coords()[0] < num_rational::BigRational::zero();
            let c = if negative && i > 0 { -c } else { c.clone() };
            if i > 0 {
                write!(f, "{}", if negative { " - " } else { " + " })?;
            }
            let unit = c.is_one();
            if !unit || (p == 0 && q == 0) {
                if c.is_rational() {
                    write!(f, "{c}")?;
                } else {
                    write!(f, "({c})")?;
                }
            }
            let mut first = unit;
            for (name, e) in [("z", p), ("z̄", q)] {
                if e == 0 {
                    continue;
                }
                if !first {
                    write!(f, "·")?;
                }
                first = false;
                if e == 1 {
                    write!(f, "{name}")?;
                } else {
                    write!(f, "{name}^{e}")?;
                }
            }
        }
        Ok(())
    }
}

/// Vector with [`BiPoly`] components.
pub type BiVec = [BiPoly; 3];

pub fn bivec_zero() -> BiVec {
    [BiPoly::zero(), BiPoly::zero(), BiPoly::zero()]
}

pub fn bivec_add(a: &BiVec, b: &BiVec) -> BiVec {
    [a[0].add(&b[0]), a[1].add(&b[1]), a[2].add(&b[2])]
}

pub fn bivec_sub(a: &BiVec, b: &BiVec) -> BiVec {
    [a[0].sub(&b[0]), a[1].sub(&b[1]), a[2].sub(&b[2])]
}

pub fn bivec_scale(s: &BiPoly, a: &BiVec) -> BiVec {
    [s.mul(&a[0]), s.mul(&a[1]), s.mul(&a[2])]
}

pub fn bivec_conj(a: &BiVec) -> BiVec {
    [a[0].conj(), a[1].conj(), a[2].conj()]
}

/// Bilinear `Σ aᵢbᵢ`, no conjugation.
pub fn bivec_dot(a: &BiVec, b: &BiVec) -> BiPoly {
    a[0].mul(&b[0]).add(&a[1].mul(&b[1])).add(&a[2].mul(&b[2]))
}

pub fn bivec_cross(a: &BiVec, b: &BiVec) -> BiVec {
    [
        a[1].mul(&b[2]).sub(&a[2].mul(&b[1])),
        a[2].mul(&b[0]).sub(&a[0].mul(&b[2])),
        a[0].mul(&b[1]).sub(&a[1].mul(&b[0])),
    ]
}

pub fn bivec_is_zero(a: &BiVec) -> bool {
    a.iter().all(BiPoly::is_zero)
}
