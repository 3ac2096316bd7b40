use num_complex::Complex64;
use num_traits::Zero;

use super::bipoly::BiPoly;
use crate::{Error, Result};

/// Truncated Laurent series `Σ_{k=v}^{N} c_k μ^k` with [`BiPoly`]
/// coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MuSeries {
    valuation: i32,
    order: i32,
    coeffs: Vec<BiPoly>,
    /// Set once a truncation has discarded a nonzero term.
    pub exact_remainder_dropped: bool,
}

impl MuSeries {
    pub fn zero(order: i32) -> Self {
        Self {
            valuation: 0,
            order,
            coeffs: Vec::new(),
            exact_remainder_dropped: false,
        }
    }

    /// `c·μ^k`, or zero when `k > order`.
    pub fn monomial(c: BiPoly, k: i32, order: i32) -> Self {
        let mut s = Self::zero(order);
        s.add_coeff(k, c);
        s
    }

    pub fn order(&self) -> i32 {
        self.order
    }

    /// Lowest stored power (coefficients there may still cancel).
    pub fn valuation(&self) -> i32 {
        self.valuation
    }

    /// Coefficient of `μ^k`.
    pub fn coeff(&self, k: i32) -> BiPoly {
        let idx = k - self.valuation;
        if idx < 0 {
            return BiPoly::zero();
        }
        self.coeffs.get(idx as usize).cloned().unwrap_or_default()
    }

    /// `(k, c_k)` over stored powers, zero coefficients included.
    pub fn iter(&self) -> impl Iterator<Item = (i32, &BiPoly)> {
        self.coeffs.iter().enumerate().map(move |(i, c)| (self.valuation + i as i32, c))
    }

    fn add_coeff(&mut self, k: i32, c: BiPoly) {
        if c.is_zero() {
            return;
        }
        if k > self.order {
            self.exact_remainder_dropped = true;
            return;
        }
        if self.coeffs.is_empty() {
            self.valuation = k;
        } else if k < self.valuation {
            let pad = (self.valuation - k) as usize;
            let mut v = vec![BiPoly::zero(); pad];
            v.append(&mut self.coeffs);
            self.coeffs = v;
            self.valuation = k;
        }
        let idx = (k - self.valuation) as usize;
        if idx >= self.coeffs.len() {
            self.coeffs.resize(idx + 1, BiPoly::zero());
        }
        self.coeffs[idx] = self.coeffs[idx].add(&c);
        self.normalize();
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(BiPoly::is_zero) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.valuation += lead as i32;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.order.min(other.order));
        out.exact_remainder_dropped = self.exact_remainder_dropped || other.exact_remainder_dropped;
        for (k, c) in self.iter().chain(other.iter()) {
            out.add_coeff(k, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        out.coeffs = out.coeffs.iter().map(BiPoly::neg).collect();
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Product truncated at the smaller absolute order that both factors
    /// determine.
    pub fn mul(&self, other: &Self) -> Self {
        let order = if self.is_zero() || other.is_zero() {
            self.order.min(other.order)
        } else {
            (self.order + other.valuation).min(other.order + self.valuation)
        };
        let mut out = Self::zero(order);
        out.exact_remainder_dropped = self.exact_remainder_dropped || other.exact_remainder_dropped;
        for (i, a) in self.iter() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.iter() {
                if i + j > order {
                    if !b.is_zero() {
                        out.exact_remainder_dropped = true;
                    }
                    break;
                }
                out.add_coeff(i + j, a.mul(b));
            }
        }
        out
    }

    pub fn scale(&self, s: &BiPoly) -> Self {
        let mut out = Self::zero(self.order);
        out.exact_remainder_dropped = self.exact_remainder_dropped;
        for (k, c) in self.iter() {
            out.add_coeff(k, c.mul(s));
        }
        out
    }

    /// Multiplies by `μ^k`.
    pub fn shift(&self, k: i32) -> Self {
        let mut out = self.clone();
        out.valuation += k;
        out.order += k;
        out
    }

    /// Re-truncates at a lower order.
    pub fn truncate(&self, order: i32) -> Self {
        let mut out = Self::zero(order.min(self.order));
        out.exact_remainder_dropped = self.exact_remainder_dropped;
        for (k, c) in self.iter() {
            out.add_coeff(k, c.clone());
        }
        out
    }

    pub fn conj(&self) -> Self {
        let mut out = self.clone();
        out.coeffs = out.coeffs.iter().map(BiPoly::conj).collect();
        out
    }

    /// Multiplicative inverse; the lowest coefficient must be a nonzero
    /// constant.
    pub fn inverse(&self) -> Result<Self> {
        let lead = self.coeffs.first().ok_or(Error::NonUnitLeadingTerm)?;
        if !lead.is_constant() || lead.is_zero() {
            return Err(Error::NonUnitLeadingTerm);
        }
        let v = self.valuation;
        let c0_inv = lead.constant_part().inv()?;
        // unit part u = 1 + r with r of positive valuation
        let rel_order = self.order - v;
        let mut inv = vec![BiPoly::zero(); rel_order as usize + 1];
        inv[0] = BiPoly::constant(c0_inv.clone());
        for n in 1..=rel_order as usize {
            let mut acc = BiPoly::zero();
            for k in 1..=n {
                let ck = self.coeff(v + k as i32);
                if !ck.is_zero() && !inv[n - k].is_zero() {
                    acc = acc.add(&ck.mul(&inv[n - k]));
                }
            }
            inv[n] = acc.scale(&(-&c0_inv));
        }
        let mut out = Self::zero(self.order - 2 * v);
        out.exact_remainder_dropped = self.exact_remainder_dropped || self.coeffs.len() > 1;
        for (n, c) in inv.into_iter().enumerate() {
            out.add_coeff(n as i32 - v, c);
        }
        Ok(out)
    }

    /// `Σ c_k(z, z̄) μ^k`.
    pub fn eval(&self, z: Complex64, mu: f64) -> Complex64 {
        self.iter().map(|(k, c)| c.eval_conj(z) * mu.powi(k)).fold(Complex64::zero(), |a, b| a + b)
    }
}
