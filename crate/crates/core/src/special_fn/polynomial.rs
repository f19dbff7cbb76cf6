//! Exact-coefficient univariate polynomials.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Polynomial with exact rational coefficients in ascending degree.
///
/// The coefficient list never carries trailing zeros; the zero polynomial has
/// an empty list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    coeffs: Vec<BigRational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    /// `c * x^degree`
    pub fn monomial(c: BigRational, degree: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); degree + 1];
        coeffs[degree] = c;
        Self::new(coeffs)
    }

    pub fn from_integers(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Coefficients rounded to `f64`.
    pub fn coeffs_f64(&self) -> Vec<f64> {
        self.coeffs.iter().map(rational_to_f64).collect()
    }

    pub fn eval_exact(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    /// Horner evaluation with coefficients rounded to `f64`.
    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + rational_to_f64(c))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Plain-text form: ascending coefficients as `p/q`, comma separated.
    pub fn to_plain_text(&self) -> String {
        if self.coeffs.is_empty() {
            return "0/1".to_string();
        }
        self.coeffs
            .iter()
            .map(|c| format!("{}/{}", c.numer(), c.denom()))
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Inverse of [`Polynomial::to_plain_text`].
    pub fn from_plain_text(s: &str) -> Option<Self> {
        let mut coeffs = Vec::new();
        for part in s.split(',') {
            let (p, q) = part.trim().split_once('/')?;
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            coeffs.push(BigRational::new(p, q));
        }
        Some(Self::new(coeffs))
    }
}

pub(crate) fn rational_to_f64(r: &BigRational) -> f64 {
    if let Some(v) = r.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    // Very large numerator/denominator pairs overflow the direct conversion.
    let n = r.numer().to_f64().unwrap_or(f64::INFINITY);
    let d = r.denom().to_f64().unwrap_or(f64::INFINITY);
    if n.is_finite() && d.is_finite() {
        n / d
    } else {
        let sign = if r.is_negative() { -1.0 } else { 1.0 };
        let bits_n = r.numer().bits() as i64;
        let bits_d = r.denom().bits() as i64;
        let shift = (bits_n.max(bits_d) - 1000).max(0) as usize;
        let n = (r.numer().abs() >> shift).to_f64().unwrap_or(0.0);
        let d = (r.denom() >> shift).to_f64().unwrap_or(f64::INFINITY);
        sign * n / d
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_plain_text())
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn trailing_zeros_are_trimmed() {
        let p = Polynomial::new(vec![q(1, 1), q(0, 1), q(0, 1)]);
        assert_eq!(p.degree(), Some(0));
        assert!(Polynomial::new(vec![q(0, 1)]).is_zero());
        assert_eq!(Polynomial::zero().degree(), None);
    }

    #[test]
    fn product_and_sum() {
        // (1 - x)^2 = 1 - 2x + x^2
        let p = Polynomial::from_integers(&[1, -1]);
        assert_eq!(&p * &p, Polynomial::from_integers(&[1, -2, 1]));
        assert_eq!(&p - &p, Polynomial::zero());
        assert_eq!((&p + &p).eval(2.0), -2.0);
    }

    #[test]
    fn derivative_of_cubic() {
        let p = Polynomial::from_integers(&[5, 0, 3, 2]);
        assert_eq!(p.derivative(), Polynomial::from_integers(&[0, 6, 6]));
    }

    #[test]
    fn plain_text_round_trip() {
        let p = Polynomial::new(vec![q(1, 3), q(-2, 7), q(5, 1)]);
        assert_eq!(p.to_plain_text(), "1/3,-2/7,5/1");
        assert_eq!(Polynomial::from_plain_text(&p.to_plain_text()), Some(p));
        assert_eq!(Polynomial::zero().to_plain_text(), "0/1");
        assert!(Polynomial::from_plain_text("1/0").is_none());
    }

    #[test]
    fn exact_and_float_evaluation_agree() {
        let p = Polynomial::new(vec![q(1, 2), q(-1, 3), q(1, 4)]);
        let exact = p.eval_exact(&q(3, 1));
        assert_eq!(exact, q(1, 2) - q(1, 1) + q(9, 4));
        assert!((p.eval(3.0) - rational_to_f64(&exact)).abs() < 1e-15);
    }
}
