use num_complex::Complex64;
use num_traits::Zero;

use super::polynomial::ComplexPolynomial;
use super::roots::factor_roots;
use crate::{Error, Result};

/// Relative tolerance under which a numerator value at a denominator root
/// counts as a common root.
const COMMON_ROOT_TOL: f64 = 1e-12;

/// Quotient of complex polynomials, kept in reduced form.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalFunction {
    numerator: ComplexPolynomial,
    denominator: ComplexPolynomial,
}

impl RationalFunction {
    /// Builds `num/den` and cancels common roots.
    pub fn new(numerator: ComplexPolynomial, denominator: ComplexPolynomial) -> Result<Self> {
        if denominator.is_zero() {
            return Err(Error::InvalidInput("zero denominator".into()));
        }
        Self {
            numerator,
            denominator,
        }
        .reduced()
    }

    pub fn polynomial(p: ComplexPolynomial) -> Self {
        Self {
            numerator: p,
            denominator: ComplexPolynomial::one(),
        }
    }

    pub fn constant(c: Complex64) -> Self {
        Self::polynomial(ComplexPolynomial::constant(c))
    }

    pub fn numerator(&self) -> &ComplexPolynomial {
        &self.numerator
    }

    pub fn denominator(&self) -> &ComplexPolynomial {
        &self.denominator
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    /// Divides out roots shared by numerator and denominator.
    fn reduced(self) -> Result<Self> {
        let Self {
            mut numerator,
            mut denominator,
        } = self;
        if numerator.is_zero() {
            return Ok(Self {
                numerator,
                denominator: ComplexPolynomial::one(),
            });
        }
        if denominator.degree() > 0 {
            for (root, mult) in factor_roots(&denominator)? {
                let linear = ComplexPolynomial::new(vec![-root, Complex64::new(1.0, 0.0)]);
                for _ in 0..mult {
                    if numerator.degree() == 0 {
                        break;
                    }
                    let value = numerator.eval(root).norm();
                    if value > COMMON_ROOT_TOL * numerator.eval_scale(root).max(1e-300) {
                        break;
                    }
                    numerator = numerator.div_rem(&linear).0;
                    denominator = denominator.div_rem(&linear).0;
                }
            }
        }
        // normalize to a monic denominator
        let lc = denominator.leading();
        let inv = Complex64::new(1.0, 0.0) / lc;
        Ok(Self {
            numerator: numerator.scale(inv),
            denominator: denominator.scale(inv),
        })
    }

    /// `num(z)/den(z)`; fails with [`Error::Pole`] when `den(z)` vanishes to
    /// `1e-14` relative to its evaluation scale.
    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        let den = self.denominator.eval(z);
        if den.norm() <= 1e-14 * self.denominator.eval_scale(z) {
            return Err(Error::Pole(z));
        }
        Ok(self.numerator.eval(z) / den)
    }

    /// Quotient-rule derivative, reduced.
    pub fn derive(&self) -> Result<Self> {
        let n = &self.numerator;
        let d = &self.denominator;
        let num = &(&n.derivative() * d) - &(n * &d.derivative());
        let den = d * d;
        Self::new(num, den)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let num = &(&self.numerator * &other.denominator) + &(&other.numerator * &self.denominator);
        Self::new(num, &self.denominator * &other.denominator)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        Self::new(
            &self.numerator * &other.numerator,
            &self.denominator * &other.denominator,
        )
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            numerator: self.numerator.scale(s),
            denominator: self.denominator.clone(),
        }
    }

    /// Decomposition into pole terms `c/(z - p)^k` plus a polynomial part.
    pub fn partial_fractions(&self) -> Result<PartialFractions> {
        let (quotient, remainder) = self.numerator.div_rem(&self.denominator);
        let mut poles = Vec::new();
        if self.denominator.degree() > 0 && !remainder.is_zero() {
            let factors = factor_roots(&self.denominator)?;
            for (i, &(root, mult)) in factors.iter().enumerate() {
                // cofactor: denominator with this root's factor removed
                let others: Vec<Complex64> = factors
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .flat_map(|(_, &(r, m))| std::iter::repeat(r).take(m))
                    .collect();
                let cofactor = ComplexPolynomial::from_roots(self.denominator.leading(), &others);
                let num_t = remainder.taylor_shift(root);
                let cof_t = cofactor.taylor_shift(root);
                let series = series_divide(&num_t, &cof_t, mult);
                for (j, coefficient) in series.into_iter().enumerate() {
                    poles.push(PoleTerm {
                        pole: root,
                        order: mult - j,
                        coefficient,
                    });
                }
            }
        }
        Ok(PartialFractions {
            poles,
            polynomial: quotient,
        })
    }
}

/// First `n` Taylor coefficients of `num/den` at 0.
fn series_divide(num: &ComplexPolynomial, den: &ComplexPolynomial, n: usize) -> Vec<Complex64> {
    let d0 = den.coeff(0);
    let mut out: Vec<Complex64> = Vec::with_capacity(n);
    for k in 0..n {
        let mut acc = num.coeff(k);
        for (j, &o) in out.iter().enumerate() {
            acc -= o * den.coeff(k - j);
        }
        out.push(acc / d0);
    }
    out
}

/// One term `coefficient / (z - pole)^order`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PoleTerm {
    pub pole: Complex64,
    pub order: usize,
    pub coefficient: Complex64,
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct PartialFractions {
    pub poles: Vec<PoleTerm>,
    pub polynomial: ComplexPolynomial,
}

impl PartialFractions {
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.poles
            .iter()
            .map(|t| t.coefficient / (z - t.pole).powu(t.order as u32))
            .sum::<Complex64>()
            + self.polynomial.eval(z)
    }

    pub fn derivative(&self) -> Self {
        Self {
            poles: self
                .poles
                .iter()
                .map(|t| PoleTerm {
                    pole: t.pole,
                    order: t.order + 1,
                    coefficient: -t.coefficient * t.order as f64,
                })
                .collect(),
            polynomial: self.polynomial.derivative(),
        }
    }

    /// Distance from `z` to the nearest pole, or infinity without poles.
    pub fn pole_distance(&self, z: Complex64) -> f64 {
        self.poles
            .iter()
            .map(|t| (z - t.pole).norm())
            .fold(f64::INFINITY, f64::min)
    }

    /// Recombines the terms into a single reduced quotient.
    pub fn to_rational(&self) -> Result<RationalFunction> {
        let mut acc = RationalFunction::polynomial(self.polynomial.clone());
        for t in &self.poles {
            let den = ComplexPolynomial::from_roots(Complex64::new(1.0, 0.0), &vec![t.pole; t.order]);
            let term = RationalFunction {
                numerator: ComplexPolynomial::constant(t.coefficient),
                denominator: den,
            };
            acc = acc.add(&term)?;
        }
        Ok(acc)
    }

    /// Residues (coefficients of simple-pole terms) above `tol`.
    pub fn residues(&self, tol: f64) -> Vec<(Complex64, Complex64)> {
        self.poles
            .iter()
            .filter(|t| t.order == 1 && t.coefficient.norm() > tol)
            .map(|t| (t.pole, t.coefficient))
            .collect()
    }

    /// Log-free antiderivative with zero constant term; any residue above
    /// `1e-10` makes the primitive multivalued or logarithmic and is an
    /// [`Error::Period`].
    pub fn antiderivative(&self) -> Result<Self> {
        if let Some(&(pole, residue)) = self.residues(1e-10).first() {
            return Err(Error::Period { pole, residue });
        }
        let poles = self
            .poles
            .iter()
            .filter(|t| t.order >= 2)
            .map(|t| PoleTerm {
                pole: t.pole,
                order: t.order - 1,
                coefficient: -t.coefficient / (t.order - 1) as f64,
            })
            .collect();
        let mut coeffs = vec![Complex64::zero()];
        coeffs.extend(
            self.polynomial
                .coeffs()
                .iter()
                .enumerate()
                .map(|(k, &c)| c / (k + 1) as f64),
        );
        Ok(Self {
            poles,
            polynomial: ComplexPolynomial::new(coeffs),
        })
    }
}
