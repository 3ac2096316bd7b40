use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

/// Exact element of ℚ(ζ) with ζ = e^{iπ/6}, stored over the power basis
/// `1, ζ, ζ², ζ³` and reduced with `ζ⁴ = ζ² − 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycScalar {
    c: [BigRational; 4],
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// ζ^k in the power basis, for k in 0..12.
fn zeta_power(k: usize) -> [i64; 4] {
    let mut v = [1, 0, 0, 0];
    for _ in 0..(k % 12) {
        // multiply by ζ: shift, then fold ζ⁴ = ζ² − 1
        let top = v[3];
        v = [-top, v[0], v[1] + top, v[2]];
    }
    v
}

impl CycScalar {
    pub fn new(c: [BigRational; 4]) -> Self {
        Self { c }
    }

    pub fn from_ints(c: [i64; 4]) -> Self {
        Self {
            c: c.map(q),
        }
    }

    pub fn from_rational(r: BigRational) -> Self {
        Self {
            c: [r, BigRational::zero(), BigRational::zero(), BigRational::zero()],
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(q(n))
    }

    /// `num/den` as a rational scalar; panics if `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        Self::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn zeta() -> Self {
        Self::from_ints([0, 1, 0, 0])
    }

    /// The imaginary unit ζ³.
    pub fn i() -> Self {
        Self::from_ints([0, 0, 0, 1])
    }

    /// The primitive cube root of unity ζ⁴ = e^{2πi/3}.
    pub fn j() -> Self {
        Self::from_ints([-1, 0, 1, 0])
    }

    pub fn coords(&self) -> &[BigRational; 4] {
        &self.c
    }

    pub fn is_rational(&self) -> bool {
        self.c[1..].iter().all(Zero::is_zero)
    }

    /// The automorphism ζ ↦ ζ^k, for k coprime to 12.
    pub fn galois(&self, k: usize) -> Self {
        debug_assert!(matches!(k % 12, 1 | 5 | 7 | 11));
        let mut out = Self::zero();
        for (e, coeff) in self.c.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            for (slot, v) in zeta_power(e * k).iter().enumerate() {
                if *v != 0 {
                    out.c[slot] += coeff * q(*v);
                }
            }
        }
        out
    }

    /// Complex conjugation, ζ ↦ ζ⁻¹ = ζ¹¹.
    pub fn conj(&self) -> Self {
        self.galois(11)
    }

    /// Field norm down to ℚ.
    pub fn norm(&self) -> BigRational {
        let p = self * &self.galois(5) * self.galois(7) * self.galois(11);
        debug_assert!(p.is_rational());
        p.c[0].clone()
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let cofactor = self.galois(5) * self.galois(7) * self.galois(11);
        let n = self.norm();
        Ok(cofactor.scale_rational(&n.recip()))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn scale_rational(&self, r: &BigRational) -> Self {
        Self {
            c: [&self.c[0] * r, &self.c[1] * r, &self.c[2] * r, &self.c[3] * r],
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Embedding with ζ ↦ e^{iπ/6}.
    pub fn to_complex(&self) -> Complex64 {
        let z = Complex64::from_polar(1.0, std::f64::consts::PI / 6.0);
        let mut acc = Complex64::zero();
        let mut p = Complex64::one();
        for coeff in &self.c {
            acc += p * coeff.to_f64().unwrap_or(f64::NAN);
            p *= z;
        }
        acc
    }
}

impl Zero for CycScalar {
    fn zero() -> Self {
        Self::from_int(0)
    }
    fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }
}

impl One for CycScalar {
    fn one() -> Self {
        Self::from_int(1)
    }
}

impl Add<&CycScalar> for &CycScalar {
    type Output = CycScalar;
    fn add(self, rhs: &CycScalar) -> CycScalar {
        CycScalar {
            c: [
                &self.c[0] + &rhs.c[0],
                &self.c[1] + &rhs.c[1],
                &self.c[2] + &rhs.c[2],
                &self.c[3] + &rhs.c[3],
            ],
        }
    }
}

impl Sub<&CycScalar> for &CycScalar {
    type Output = CycScalar;
    fn sub(self, rhs: &CycScalar) -> CycScalar {
        CycScalar {
            c: [
                &self.c[0] - &rhs.c[0],
                &self.c[1] - &rhs.c[1],
                &self.c[2] - &rhs.c[2],
                &self.c[3] - &rhs.c[3],
            ],
        }
    }
}

impl Mul<&CycScalar> for &CycScalar {
    type Output = CycScalar;
    fn mul(self, rhs: &CycScalar) -> CycScalar {
        let mut prod: [BigRational; 7] = Default::default();
        for (a, x) in self.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (b, y) in rhs.c.iter().enumerate() {
                if !y.is_zero() {
                    prod[a + b] += x * y;
                }
            }
        }
        // ζ⁶ = −1, ζ⁵ = ζ³ − ζ, ζ⁴ = ζ² − 1
        let [p0, p1, p2, p3, p4, p5, p6] = prod;
        CycScalar {
            c: [p0 - &p4 - p6, p1 - &p5, p2 + p4, p3 + p5],
        }
    }
}

impl Neg for &CycScalar {
    type Output = CycScalar;
    fn neg(self) -> CycScalar {
        CycScalar {
            c: [-&self.c[0], -&self.c[1], -&self.c[2], -&self.c[3]],
        }
    }
}

impl Neg for CycScalar {
    type Output = CycScalar;
    fn neg(self) -> CycScalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident, $tra:ident, $ma:ident) => {
        impl $tr<CycScalar> for CycScalar {
            type Output = CycScalar;
            fn $m(self, rhs: CycScalar) -> CycScalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&CycScalar> for CycScalar {
            type Output = CycScalar;
            fn $m(self, rhs: &CycScalar) -> CycScalar {
                (&self).$m(rhs)
            }
        }
        impl $tr<CycScalar> for &CycScalar {
            type Output = CycScalar;
            fn $m(self, rhs: CycScalar) -> CycScalar {
                self.$m(&rhs)
            }
        }
        impl $tra<&CycScalar> for CycScalar {
            fn $ma(&mut self, rhs: &CycScalar) {
                *self = (&*self).$m(rhs);
            }
        }
        impl $tra<CycScalar> for CycScalar {
            fn $ma(&mut self, rhs: CycScalar) {
                *self = (&*self).$m(&rhs);
            }
        }
    };
}

forward_owned!(Add, add, AddAssign, add_assign);
forward_owned!(Sub, sub, SubAssign, sub_assign);
forward_owned!(Mul, mul, MulAssign, mul_assign);

impl From<i64> for CycScalar {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<BigRational> for CycScalar {
    fn from(r: BigRational) -> Self {
        Self::from_rational(r)
    }
}

impl fmt::Display for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const NAMES: [&str; 4] = ["", "ζ", "ζ^2", "ζ^3"];
        let mut first = true;
        for (k, coeff) in self.c.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            let sign = if coeff.is_negative() { "-" } else if first { "" } else { "+" };
            let mag = coeff.abs();
            let body = match (k, mag.is_one()) {
                (0, _) => mag.to_string(),
                (_, true) => NAMES[k].to_string(),
                (_, false) => format!("{mag}{}", NAMES[k]),
            };
            if first {
                write!(f, "{sign}{body}")?;
            } else {
                write!(f, " {sign} {body}")?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
