use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

/// Dense polynomial in `q` with nonnegative big-integer coefficients.
///
/// `coeffs[i]` is the coefficient of `q^i`. The vector never ends in a zero,
/// so the zero polynomial is the empty vector.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "Vec<BigUint>", into = "Vec<BigUint>")]
pub struct IntPolynomial {
    coeffs: Vec<BigUint>,
}

impl IntPolynomial {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(0, BigUint::one())
    }

    /// `c * q^power`.
    pub fn monomial(power: usize, c: BigUint) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigUint::zero(); power + 1];
        coeffs[power] = c;
        Self { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<BigUint>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_u64s(coeffs: &[u64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigUint::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigUint] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigUint> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `q^power`; zero beyond the degree.
    pub fn coeff(&self, power: usize) -> BigUint {
        self.coeffs.get(power).cloned().unwrap_or_default()
    }

    pub fn leading_coeff(&self) -> Option<&BigUint> {
        self.coeffs.last()
    }

    /// Multiply by `q^power`.
    pub fn shifted(&self, power: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigUint::zero(); power];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    /// Value at `q = 1`, i.e. the sum of coefficients.
    pub fn eval_at_one(&self) -> BigUint {
        self.coeffs.iter().sum()
    }

    pub fn eval(&self, q: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| {
                acc * q + BigRational::from_integer(BigInt::from(c.clone()))
            })
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigUint::from(i))
                .collect(),
        )
    }

    /// `sum_i i^power * coeff(i)`.
    pub fn weighted_coeff_sum(&self, power: u32) -> BigUint {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| BigUint::from(i).pow(power) * c)
            .sum()
    }

    /// Coefficient of `q^i` equals coefficient of `q^(deg - i)`.
    pub fn is_palindromic(&self) -> bool {
        self.coeffs.iter().eq(self.coeffs.iter().rev())
    }

    /// Convert coefficients to `f64`, lossy for very large values.
    pub fn to_f64_coeffs(&self) -> Vec<f64> {
        use num_traits::ToPrimitive;
        self.coeffs
            .iter()
            .map(|c| c.to_f64().unwrap_or(f64::INFINITY))
            .collect()
    }
}

impl From<Vec<BigUint>> for IntPolynomial {
    fn from(coeffs: Vec<BigUint>) -> Self {
        Self::from_coeffs(coeffs)
    }
}

impl From<IntPolynomial> for Vec<BigUint> {
    fn from(p: IntPolynomial) -> Self {
        p.coeffs
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;

    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c += s;
        }
        IntPolynomial { coeffs }
    }
}

impl Add for IntPolynomial {
    type Output = IntPolynomial;

    fn add(self, rhs: IntPolynomial) -> IntPolynomial {
        &self + &rhs
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut coeffs = vec![BigUint::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        IntPolynomial { coeffs }
    }
}

impl Mul for IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, rhs: IntPolynomial) -> IntPolynomial {
        &self * &rhs
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let show_coeff = !c.is_one() || i == 0;
            if show_coeff {
                write!(f, "{c}")?;
            }
            match i {
                0 => {}
                1 => f.write_str("q")?,
                _ => write!(f, "q^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form_drops_trailing_zeros() {
        let p = IntPolynomial::from_u64s(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert!(IntPolynomial::from_u64s(&[0, 0]).is_zero());
        assert_eq!(IntPolynomial::zero().degree(), None);
    }

    #[test]
    fn product_and_sum() {
        let a = IntPolynomial::from_u64s(&[1, 1]);
        let b = &a * &a;
        assert_eq!(b, IntPolynomial::from_u64s(&[1, 2, 1]));
        assert_eq!(&b + &a, IntPolynomial::from_u64s(&[2, 3, 1]));
        assert!((&a * &IntPolynomial::zero()).is_zero());
    }

    #[test]
    fn derivative_and_weighted_sums() {
        let p = IntPolynomial::from_u64s(&[1, 2, 2, 1]);
        assert_eq!(p.derivative(), IntPolynomial::from_u64s(&[2, 4, 3]));
        assert_eq!(p.weighted_coeff_sum(1), BigUint::from(9u32));
        assert_eq!(p.weighted_coeff_sum(2), BigUint::from(19u32));
        assert_eq!(p.eval_at_one(), BigUint::from(6u32));
    }

    #[test]
    fn display() {
        assert_eq!(
            IntPolynomial::from_u64s(&[1, 2, 2, 1]).to_string(),
            "1 + 2q + 2q^2 + q^3"
        );
        assert_eq!(IntPolynomial::zero().to_string(), "0");
        assert_eq!(
            IntPolynomial::monomial(2, BigUint::one()).to_string(),
            "q^2"
        );
    }

    #[test]
    fn eval_rational() {
        let p = IntPolynomial::from_u64s(&[1, 1, 1]);
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(p.eval(&half), BigRational::new(7.into(), 4.into()));
    }
}
