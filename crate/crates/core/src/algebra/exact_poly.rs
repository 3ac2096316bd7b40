use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::cyclotomic::CycScalar;
use super::polynomial::ComplexPolynomial;
use crate::{Error, Result};

/// Univariate polynomial in `z` with exact ℚ(ζ₁₂) coefficients, lowest
/// degree first, with no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ExactPoly {
    coeffs: Vec<CycScalar>,
}

impl ExactPoly {
    pub fn new(mut coeffs: Vec<CycScalar>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: CycScalar) -> Self {
        Self::new(vec![c])
    }

    pub fn z() -> Self {
        Self::monomial(CycScalar::one(), 1)
    }

    pub fn monomial(c: CycScalar, k: usize) -> Self {
        let mut coeffs = vec![CycScalar::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[CycScalar] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> CycScalar {
        self.coeffs.get(k).cloned().unwrap_or_else(CycScalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![CycScalar::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, s: &CycScalar) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::constant(CycScalar::one()), |acc, _| acc.mul(self))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * &CycScalar::from_int(k as i64))
                .collect(),
        )
    }

    pub fn eval(&self, z: &CycScalar) -> CycScalar {
        self.coeffs
            .iter()
            .rev()
            .fold(CycScalar::zero(), |acc, c| acc * z + c)
    }

    /// Coefficientwise conjugation, i.e. the polynomial `z ↦ conj(p(conj z))`.
    pub fn conj_coeffs(&self) -> Self {
        Self::new(self.coeffs.iter().map(CycScalar::conj).collect())
    }

    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let dn = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = divisor.coeffs[dn].inv()?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![CycScalar::zero(); rem.len().saturating_sub(dn)];
        while rem.len() > dn && !rem.is_empty() {
            let k = rem.len() - 1 - dn;
            let factor = &rem[rem.len() - 1] * &lead_inv;
            for (i, d) in divisor.coeffs.iter().enumerate() {
                rem[k + i] -= &factor * d;
            }
            quot[k] = factor;
            rem.pop();
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Monic greatest common divisor; the gcd of two zero polynomials is zero.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).expect("nonzero divisor").1;
            a = b;
            b = r;
        }
        match a.coeffs.last() {
            Some(lc) => a.scale(&lc.inv().expect("nonzero leading coefficient")),
            None => a,
        }
    }

    pub fn to_complex(&self) -> ComplexPolynomial {
        ComplexPolynomial::new(self.coeffs.iter().map(CycScalar::to_complex).collect())
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        self.to_complex().eval(z)
    }
}

impl fmt::Display for ExactPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
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
                1 => write!(f, "({c})*z")?,
                _ => write!(f, "({c})*z^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Parses expressions such as `z^2 + 3/2*i*z - (1 + j)`.
///
/// Grammar: sums and differences of products; factors are unsigned integers,
/// `z`, `i`, `j`, `zeta` (or `ζ`), parenthesized expressions, optionally
/// raised to a nonnegative integer power. Juxtaposition multiplies, and `/` divides by
/// a nonzero constant.
impl FromStr for ExactPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut parser = Parser { src: s.as_bytes(), pos: 0, depth: 0 };
        let p = parser.expr()?;
        parser.skip_ws();
        if parser.pos != parser.src.len() {
            return Err(parser.error("unexpected trailing input"));
        }
        Ok(p)
    }
}

const MAX_NESTING: usize = 64;
/// `ζ`, as printed by [`CycScalar`]'s `Display`.
const ZETA_UTF8: &[u8] = "ζ".as_bytes();
const MAX_EXPONENT: u64 = 64;
const MAX_DEGREE: usize = 4096;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    depth: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::InvalidInput(format!("{msg} at byte {}", self.pos))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<ExactPoly> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                self.term()?.neg()
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<ExactPoly> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = checked_product(&acc, &self.power()?).ok_or_else(|| self.error("degree too large"))?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let d = self.power()?;
                    if d.degree() != Some(0) {
                        return Err(self.error("divisor must be a nonzero constant"));
                    }
                    acc = acc.scale(&d.coeffs[0].inv()?);
                }
                Some(c) if c.is_ascii_alphanumeric() || c == b'(' || c == ZETA_UTF8[0] => {
                    acc = checked_product(&acc, &self.power()?).ok_or_else(|| self.error("degree too large"))?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<ExactPoly> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        self.skip_ws();
        let n = self.integer()?;
        let n: u64 = n.try_into().map_err(|_| self.error("exponent too large"))?;
        if n > MAX_EXPONENT || base.degree().unwrap_or(0) * n as usize > MAX_DEGREE {
            return Err(self.error("exponent too large"));
        }
        Ok(base.pow(n as u32))
    }

    fn atom(&mut self) -> Result<ExactPoly> {
        match self.peek() {
            Some(b'(') => {
                self.depth += 1;
                if self.depth > MAX_NESTING {
                    return Err(self.error("nesting too deep"));
                }
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                self.depth -= 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(ExactPoly::constant(CycScalar::from_rational(BigRational::from_integer(n))))
            }
            Some(_) if self.src[self.pos..].starts_with(ZETA_UTF8) => {
                self.pos += ZETA_UTF8.len();
                Ok(ExactPoly::constant(CycScalar::zeta()))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphabetic() {
                    self.pos += 1;
                }
                match &self.src[start..self.pos] {
                    b"z" => Ok(ExactPoly::z()),
                    b"i" => Ok(ExactPoly::constant(CycScalar::i())),
                    b"j" => Ok(ExactPoly::constant(CycScalar::j())),
                    b"zeta" => Ok(ExactPoly::constant(CycScalar::zeta())),
                    _ => {
                        self.pos = start;
                        Err(self.error("unknown identifier"))
                    }
                }
            }
            _ => Err(self.error("expected a factor")),
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        if self.pos - start > 200 {
            return Err(self.error("integer literal too long"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        digits.parse().map_err(|_| self.error("bad integer"))
    }
}

fn checked_product(a: &ExactPoly, b: &ExactPoly) -> Option<ExactPoly> {
    (a.degree().unwrap_or(0) + b.degree().unwrap_or(0) <= MAX_DEGREE).then(|| a.mul(b))
}
