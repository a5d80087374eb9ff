//! Exact dense polynomials over the integers.
//!
//! [`IntPoly`] is the common currency of the crate: Alexander polynomials,
//! plumbing seeds, Salem-Boyd sequence members and cyclotomic factors are all
//! stored as ascending coefficient vectors of arbitrary-precision integers.

mod cyclotomic;

pub use cyclotomic::{cyclotomic, strip_trivial_factors, totient, Stripped};

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Dense integer polynomial, coefficients in ascending order of degree.
///
/// The coefficient vector is always trimmed, so the last entry is nonzero and
/// the zero polynomial is the empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `c * t^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.push(c);
        Self::new(coeffs)
    }

    /// `t`
    pub fn t() -> Self {
        Self::from_i64s(&[0, 1])
    }

    /// `t + 1`
    pub fn t_plus_one() -> Self {
        Self::from_i64s(&[1, 1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `t^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Lowest-degree nonzero coefficient.
    pub fn lowest(&self) -> Option<&BigInt> {
        self.coeffs.iter().find(|c| !c.is_zero())
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs }
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigInt::from(k))
                .collect(),
        )
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| {
            acc * x + BigRational::from_integer(c.clone())
        })
    }

    /// Horner evaluation in double precision.
    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + big_to_f64(c))
    }

    /// Coefficients as `f64`, ascending.
    pub fn to_f64s(&self) -> Vec<f64> {
        self.coeffs.iter().map(big_to_f64).collect()
    }

    /// `t^deg(f) * f(1/t)`.
    pub fn reciprocal(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Ok(Self::new(coeffs))
    }

    /// True when `f = f_*` (palindromic coefficients, `f(0) != 0`).
    pub fn is_reciprocal(&self) -> bool {
        !self.is_zero() && self.coeffs.iter().eq(self.coeffs.iter().rev())
    }

    /// True when `f_* = -f`.
    pub fn is_anti_reciprocal(&self) -> bool {
        !self.is_zero()
            && self
                .coeffs
                .iter()
                .zip(self.coeffs.iter().rev())
                .all(|(a, b)| *a == -b)
    }

    /// Splits `f = t^m * core` with `core(0) != 0`.
    pub fn bar_reduce(&self) -> Result<(Self, usize)> {
        let m = self
            .coeffs
            .iter()
            .position(|c| !c.is_zero())
            .ok_or(Error::ZeroPolynomial)?;
        Ok((IntPoly { coeffs: self.coeffs[m..].to_vec() }, m))
    }

    /// Euclidean division over the integers. Requires every leading-term
    /// quotient to be integral; returns `None` otherwise.
    pub fn div_rem(&self, divisor: &Self) -> Option<(Self, Self)> {
        let dlead = divisor.leading()?;
        let dn = divisor.coeffs.len();
        if self.coeffs.len() < dn {
            return Some((Self::zero(), self.clone()));
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); rem.len() - dn + 1];
        for i in (0..quot.len()).rev() {
            let top = &rem[i + dn - 1];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(dlead);
            if !r.is_zero() {
                return None;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &q * d;
            }
            quot[i] = q;
        }
        Some((Self::new(quot), Self::new(rem)))
    }

    /// Exact quotient `f / g`; fails with [`Error::Division`] on a remainder.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self> {
        if divisor.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        match self.div_rem(divisor) {
            Some((q, r)) if r.is_zero() => Ok(q),
            _ => Err(Error::Division {
                dividend: self.to_string(),
                divisor: divisor.to_string(),
            }),
        }
    }

    /// `f` normalized the way Alexander polynomials are: powers of `t`
    /// removed and the leading coefficient made positive.
    pub fn alexander_normalized(&self) -> Result<Self> {
        let (core, _) = self.bar_reduce()?;
        Ok(if core.leading().is_some_and(Signed::is_negative) {
            -core
        } else {
            core
        })
    }

    /// Comma-separated ascending coefficients, `"0"` for the zero polynomial.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".to_owned();
        }
        self.coeffs
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(",")
    }
}

pub(crate) fn big_to_f64(c: &BigInt) -> f64 {
    c.to_f64().unwrap_or(f64::NAN)
}

impl FromStr for IntPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Self::zero());
        }
        s.split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<BigInt>()
                    .map_err(|_| Error::Parse(format!("bad coefficient {tok:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Self::new)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "t")?,
                (1, false) => write!(f, "{mag}t")?,
                (_, true) => write!(f, "t^{k}")?,
                (_, false) => write!(f, "{mag}t^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly[{}]", self.to_text())
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;

    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;

    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;

    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;

    fn neg(self) -> IntPoly {
        IntPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for IntPoly {
            type Output = IntPoly;
            fn $m(self, rhs: IntPoly) -> IntPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&IntPoly> for IntPoly {
            type Output = IntPoly;
            fn $m(self, rhs: &IntPoly) -> IntPoly {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for IntPoly {
    type Output = IntPoly;

    fn neg(self) -> IntPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn multiply_linear_factors() {
        assert_eq!(p(&[-2, 1]) * p(&[1, 1]), p(&[-2, -1, 1]));
    }

    #[test]
    fn derivative_of_cubic() {
        assert_eq!(p(&[-1, 0, 1, 1]).derivative(), p(&[0, 2, 3]));
    }

    #[test]
    fn evaluate_at_one() {
        assert_eq!(p(&[1, -3, 1]).eval_int(&BigInt::one()), BigInt::from(-1));
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(
            p(&[1, -3, 1]).eval_rational(&half),
            BigRational::new((-1).into(), 4.into())
        );
    }

    #[test]
    fn trimming_and_zero() {
        assert!(p(&[0, 0]).is_zero());
        assert_eq!(p(&[1, 2, 0]).degree(), Some(1));
        assert_eq!(IntPoly::zero().degree(), None);
    }

    #[test]
    fn reciprocal_examples() {
        assert_eq!(p(&[1, -3, 1]).reciprocal().unwrap(), p(&[1, -3, 1]));
        assert_eq!(p(&[-2, 1]).reciprocal().unwrap(), p(&[1, -2]));
        // t^2 - 2t drops a degree: (-2t + 1)
        assert_eq!(p(&[0, -2, 1]).reciprocal().unwrap(), p(&[1, -2]));
        assert_eq!(IntPoly::zero().reciprocal(), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn bar_reduce_examples() {
        assert_eq!(p(&[0, -2, 1]).bar_reduce().unwrap(), (p(&[-2, 1]), 1));
        assert_eq!(p(&[1, -3, 1]).bar_reduce().unwrap(), (p(&[1, -3, 1]), 0));
        assert_eq!(p(&[0, 0, 0, 0, 0, 1]).bar_reduce().unwrap(), (p(&[1]), 5));
        assert!(IntPoly::zero().bar_reduce().is_err());
    }

    #[test]
    fn exact_division() {
        // (t+1)(t^2-3t+1) = t^3 - 2t^2 - 2t + 1
        assert_eq!(
            p(&[1, -2, -2, 1]).exact_div(&IntPoly::t_plus_one()).unwrap(),
            p(&[1, -3, 1])
        );
        assert_eq!(p(&[-1, 0, 1]).exact_div(&IntPoly::t_plus_one()).unwrap(), p(&[-1, 1]));
        assert!(matches!(
            p(&[1, 0, 1]).exact_div(&IntPoly::t_plus_one()),
            Err(Error::Division { .. })
        ));
        assert!(p(&[1]).exact_div(&IntPoly::zero()).is_err());
    }

    #[test]
    fn non_monic_divisor_requires_integral_quotient() {
        assert!(p(&[1, 1]).exact_div(&p(&[1, 2])).is_err());
        assert_eq!(p(&[2, 6, 4]).exact_div(&p(&[1, 2])).unwrap(), p(&[2, 2]));
    }

    #[test]
    fn text_round_trip_and_display() {
        let f: IntPoly = "1,-3,1".parse().unwrap();
        assert_eq!(f, p(&[1, -3, 1]));
        assert_eq!(f.to_text(), "1,-3,1");
        assert_eq!(f.to_string(), "t^2 - 3t + 1");
        assert_eq!("0".parse::<IntPoly>().unwrap(), IntPoly::zero());
        assert!("1,x".parse::<IntPoly>().is_err());
    }

    #[test]
    fn alexander_normalization() {
        assert_eq!(p(&[0, 1, -3, 1]).alexander_normalized().unwrap(), p(&[1, -3, 1]));
        assert_eq!(p(&[-1, 3, -1]).alexander_normalized().unwrap(), p(&[1, -3, 1]));
    }

    #[test]
    fn reciprocity_predicates() {
        assert!(p(&[1, -3, 1]).is_reciprocal());
        assert!(!p(&[0, 1]).is_reciprocal());
        assert!(p(&[-1, 1]).is_anti_reciprocal());
    }
}
