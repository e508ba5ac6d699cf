//! Exact Laurent polynomials in one variable `t` with integer coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

/// Sparse map from exponent to nonzero coefficient. The zero polynomial is
/// the empty map.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct LaurentPolynomial {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(coeff: impl Into<BigInt>, exp: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, coeff.into());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exp: i64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    /// Nonzero terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, exp: i64, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp).or_default();
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    /// Substitutes `t -> t^-1`.
    pub fn invert_variable(&self) -> Self {
        LaurentPolynomial {
            terms: self
                .terms
                .iter()
                .map(|(&e, c)| (e.checked_neg().expect("exponent overflow"), c.clone()))
                .collect(),
        }
    }

    /// Value at `t = 1`.
    pub fn at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Coefficient of `x^k` in the expansion of `P(e^x)`:
    /// `(1/k!) * sum_i a_i * c_i^k`.
    pub fn exponential_coefficient(&self, k: u32) -> BigRational {
        let numer: BigInt = self
            .terms
            .iter()
            .map(|(&e, c)| c * num_traits::pow(BigInt::from(e), k as usize))
            .sum();
        BigRational::new(numer, factorial(k))
    }
}

pub(crate) fn factorial(k: u32) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * i)
}

impl fmt::Display for LaurentPolynomial {
    /// Ascending exponents, `t^e` monomials, explicit ` + ` / ` - `
    /// separators and `0` for the zero polynomial, e.g. `t^-1 - 2 + t`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (&e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = c.abs();
            let var = match e {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{e}"),
            };
            if var.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                f.write_str(&var)?;
            } else {
                write!(f, "{mag}*{var}")?;
            }
        }
        Ok(())
    }
}

impl Serialize for LaurentPolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl AddAssign<&LaurentPolynomial> for LaurentPolynomial {
    fn add_assign(&mut self, rhs: &LaurentPolynomial) {
        for (&e, c) in &rhs.terms {
            self.add_term(e, c.clone());
        }
    }
}

impl SubAssign<&LaurentPolynomial> for LaurentPolynomial {
    fn sub_assign(&mut self, rhs: &LaurentPolynomial) {
        for (&e, c) in &rhs.terms {
            self.add_term(e, -c);
        }
    }
}

impl Add for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(mut self, rhs: LaurentPolynomial) -> LaurentPolynomial {
        self += &rhs;
        self
    }
}

impl Add<&LaurentPolynomial> for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(mut self, rhs: LaurentPolynomial) -> LaurentPolynomial {
        self -= &rhs;
        self
    }
}

impl Sub<&LaurentPolynomial> for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        LaurentPolynomial {
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        -self.clone()
    }
}

impl Mul<&LaurentPolynomial> for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = LaurentPolynomial::zero();
        for (&e1, c1) in &self.terms {
            for (&e2, c2) in &rhs.terms {
                out.add_term(e1.checked_add(e2).expect("exponent overflow"), c1 * c2);
            }
        }
        out
    }
}

impl std::iter::Sum for LaurentPolynomial {
    fn sum<I: Iterator<Item = LaurentPolynomial>>(iter: I) -> Self {
        iter.fold(LaurentPolynomial::zero(), |acc, p| acc + p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(e: i64) -> LaurentPolynomial {
        LaurentPolynomial::monomial(1, e)
    }

    #[test]
    fn display_format() {
        let p = t(1) + t(-1) - LaurentPolynomial::constant(2);
        assert_eq!(p.to_string(), "t^-1 - 2 + t");
        assert_eq!(LaurentPolynomial::zero().to_string(), "0");
        let q = LaurentPolynomial::monomial(-1, 2) + t(1) - t(-1) + LaurentPolynomial::constant(1);
        assert_eq!(q.to_string(), "-t^-1 + 1 + t - t^2");
        assert_eq!(LaurentPolynomial::monomial(3, -2).to_string(), "3*t^-2");
        assert_eq!(LaurentPolynomial::constant(-4).to_string(), "-4");
    }

    #[test]
    fn cancellation_leaves_no_zero_terms() {
        let p = t(3) - t(3);
        assert!(p.is_zero());
        assert_eq!(p, LaurentPolynomial::zero());
    }

    #[test]
    fn inversion() {
        let p = LaurentPolynomial::monomial(2, 3) - t(-1);
        assert_eq!(
            p.invert_variable(),
            LaurentPolynomial::monomial(2, -3) - t(1)
        );
    }

    #[test]
    fn product() {
        let p = t(1) - t(-1);
        assert_eq!((&p * &p).to_string(), "t^-2 - 2 + t^2");
    }

    #[test]
    fn exponential_coefficients() {
        // -t^2 + t - t^-1 + 1: v1 = 0, v3 = (2 - 8)/6 = -1
        let p = LaurentPolynomial::monomial(-1, 2) + t(1) - t(-1) + LaurentPolynomial::constant(1);
        assert!(p.exponential_coefficient(1).is_zero());
        assert_eq!(
            p.exponential_coefficient(3),
            BigRational::from_integer((-1).into())
        );
        assert_eq!(
            p.exponential_coefficient(0),
            BigRational::from_integer(p.at_one())
        );
    }
}
