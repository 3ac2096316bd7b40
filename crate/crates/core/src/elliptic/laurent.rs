use std::collections::BTreeMap;

use num_complex::Complex64;

/// Finite Laurent polynomial in `z` with real coefficients.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Laurent {
    terms: BTreeMap<i32, f64>,
}

impl Laurent {
    pub fn from_terms(terms: impl IntoIterator<Item = (i32, f64)>) -> Self {
        let mut out = Self::default();
        for (e, c) in terms {
            *out.terms.entry(e).or_insert(0.0) += c;
        }
        out.terms.retain(|_, c| *c != 0.0);
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, f64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn coeff(&self, e: i32) -> f64 {
        self.terms.get(&e).copied().unwrap_or(0.0)
    }

    pub fn lowest(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn highest(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_terms(self.terms().chain(other.terms()))
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::from_terms(self.terms().map(|(e, c)| (e, c * s)))
    }

    /// Product, keeping only exponents `≤ max_exp`.
    pub fn mul_truncated(&self, other: &Self, max_exp: i32) -> Self {
        let mut out = Vec::new();
        for (e1, c1) in self.terms() {
            for (e2, c2) in other.terms() {
                if e1 + e2 <= max_exp {
                    out.push((e1 + e2, c1 * c2));
                }
            }
        }
        Self::from_terms(out)
    }

    pub fn derivative(&self) -> Self {
        Self::from_terms(self.terms().map(|(e, c)| (e - 1, c * e as f64)))
    }

    /// Termwise primitive with zero constant term, or `None` if a `z⁻¹`
    /// term would need a logarithm.
    pub fn integrate(&self) -> Option<Self> {
        if self.coeff(-1) != 0.0 {
            return None;
        }
        Some(Self::from_terms(
            self.terms().map(|(e, c)| (e + 1, c / (e + 1) as f64)),
        ))
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.terms().map(|(e, c)| c * z.powi(e)).sum()
    }
}
