//! Laguerre polynomials and functions, Legendre polynomials, and the
//! closed-form integrals built on them.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use statrs::function::gamma::{gamma, ln_gamma};

use super::polynomial::Polynomial;
use crate::error::{domain, Result};

/// Degree and type parameter of a generalized Laguerre polynomial.
///
/// Negative degrees are allowed and denote the identically zero polynomial,
/// which the derivative formulas produce when the order exceeds the degree.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LaguerreIndex {
    pub n: i64,
    pub alpha: f64,
}

impl LaguerreIndex {
    pub fn new(n: i64, alpha: f64) -> Self {
        Self { n, alpha }
    }

    pub fn plain(n: u32) -> Self {
        Self::new(n as i64, 0.0)
    }

    /// True for the conventional zero polynomial (`n < 0`).
    pub fn vanishes(&self) -> bool {
        self.n < 0
    }
}

/// `L_n^(α)(x)` by the three-term recurrence.
pub fn laguerre_eval(idx: LaguerreIndex, x: f64) -> f64 {
    laguerre(idx.n, idx.alpha, x)
}

pub(crate) fn laguerre(n: i64, alpha: f64, x: f64) -> f64 {
    if n < 0 {
        return 0.0;
    }
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 1.0 + alpha - x;
    for j in 1..n {
        let j = j as f64;
        let next = ((2.0 * j + 1.0 + alpha - x) * cur - (j + alpha) * prev) / (j + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// Explicit finite-sum form `Σ (-1)^i C(n+α, n-i) x^i / i!`.
///
/// Summed in exact rational arithmetic on the binary values of `α` and `x`, so
/// the result is correctly rounded and serves as a reference for
/// [`laguerre_eval`]. Slow; not meant for bulk evaluation.
pub fn laguerre_explicit(idx: LaguerreIndex, x: f64) -> f64 {
    if idx.vanishes() {
        return 0.0;
    }
    let (Some(a), Some(xr)) = (BigRational::from_float(idx.alpha), BigRational::from_float(x)) else {
        return f64::NAN;
    };
    let n = idx.n as u32;
    let top = BigRational::from_integer(BigInt::from(n)) + a;
    let mut sum = BigRational::zero();
    let mut pow_over_fact = BigRational::one();
    for i in 0..=n {
        if i > 0 {
            pow_over_fact = pow_over_fact * &xr / BigRational::from_integer(BigInt::from(i));
        }
        let mut binom = BigRational::one();
        for j in 0..(n - i) {
            let j = BigRational::from_integer(BigInt::from(j));
            binom = binom * (&top - &j) / (j + BigRational::one());
        }
        let term = binom * &pow_over_fact;
        if i % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    super::polynomial::rational_to_f64(&sum)
}

/// Generalized binomial coefficient `C(a, b)` for integer `b ≥ 0`.
///
/// Computed as the falling product `a(a-1)...(a-b+1)/b!`, which is the Gamma
/// ratio `Γ(a+1)/(Γ(b+1)Γ(a-b+1))` wherever that is finite and its continuous
/// limit where numerator and denominator poles cancel. The value is 0 when
/// only the denominator Gamma diverges.
pub fn gen_binomial(a: f64, b: u32) -> f64 {
    let mut out = 1.0;
    for i in 0..b {
        out *= (a - i as f64) / (i + 1) as f64;
    }
    out
}

/// Pochhammer symbol `(x)_n = Γ(x+n)/Γ(x)`.
pub fn pochhammer(x: f64, n: u32) -> f64 {
    (0..n).fold(1.0, |acc, i| acc * (x + i as f64))
}

/// Laguerre function `ℓ_n^(α)(y) = [n!/Γ(n+α+1)]^(1/2) y^(α/2) e^(-y/2) L_n^(α)(y)`.
pub fn laguerre_function_eval(idx: LaguerreIndex, y: f64) -> Result<f64> {
    if idx.alpha <= -1.0 {
        return Err(domain("laguerre_function_eval", format!("alpha = {} must exceed -1", idx.alpha)));
    }
    if y < 0.0 {
        return Err(domain("laguerre_function_eval", format!("y = {y} must be non-negative")));
    }
    if idx.vanishes() {
        return Ok(0.0);
    }
    Ok(laguerre_function_unchecked(idx.n as u32, idx.alpha, y))
}

pub(crate) fn laguerre_function_unchecked(n: u32, alpha: f64, y: f64) -> f64 {
    let norm = if alpha == 0.0 {
        1.0
    } else {
        (0.5 * (ln_gamma(n as f64 + 1.0) - ln_gamma(n as f64 + alpha + 1.0))).exp()
    };
    let power = if alpha == 0.0 { 1.0 } else { y.powf(0.5 * alpha) };
    norm * power * (-0.5 * y).exp() * laguerre(n as i64, alpha, y)
}

/// `ℓ_k(y) = e^(-y/2) L_k(y)`.
pub fn ell(k: u32, y: f64) -> f64 {
    (-0.5 * y).exp() * laguerre(k as i64, 0.0, y)
}

/// Legendre polynomial `P_n(x)` on `[-1, 1]` by Bonnet's recurrence.
pub fn legendre_eval(n: u32, x: f64) -> Result<f64> {
    if !(-1.0..=1.0).contains(&x) {
        return Err(domain("legendre_eval", format!("x = {x} outside [-1, 1]")));
    }
    Ok(legendre(n, x))
}

pub(crate) fn legendre(n: u32, x: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = x;
    for j in 1..n {
        let j = j as f64;
        let next = ((2.0 * j + 1.0) * x * cur - j * prev) / (j + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// `∫₀^∞ x^p e^(-x) L_m^(α)(x) L_n^(β)(x) dx` in closed form.
pub fn laguerre_product_integral(p: f64, alpha: f64, beta: f64, m: u32, n: u32) -> Result<f64> {
    if p <= -1.0 {
        return Err(domain("laguerre_product_integral", format!("p = {p} must exceed -1")));
    }
    if alpha <= -1.0 || beta <= -1.0 {
        return Err(domain(
            "laguerre_product_integral",
            format!("alpha = {alpha}, beta = {beta} must exceed -1"),
        ));
    }
    let sign = if (m + n) % 2 == 0 { 1.0 } else { -1.0 };
    let sum: f64 = (0..=m.min(n))
        .map(|i| {
            gen_binomial(p - alpha, m - i) * gen_binomial(p - beta, n - i) * gen_binomial(p + i as f64, i)
        })
        .sum();
    Ok(gamma(p + 1.0) * sign * sum)
}

/// `d^r/dx^r L_n^(α)(x) = (-1)^r L_{n-r}^(α+r)(x)`.
pub fn laguerre_derivative(idx: LaguerreIndex, r: u32, x: f64) -> f64 {
    let sign = if r % 2 == 0 { 1.0 } else { -1.0 };
    sign * laguerre(idx.n - r as i64, idx.alpha + r as f64, x)
}

/// n-th ξ-derivative of `ℓ_k²(2vξ)`.
pub fn ell_sq_derivative(k: u32, n: u32, v: f64, xi: f64) -> f64 {
    let x = 2.0 * v * xi;
    (-2.0 * v).powi(n as i32) * (-x).exp() * ell_sq_derivative_poly(k, n, x)
}

/// `Σ_i Σ_j C(n,i) C(i,j) L_{k-i+j}^(i-j)(x) L_{k-j}^(j)(x)`: the polynomial
/// factor of the n-th derivative of `ℓ_k²` after pulling out `(-2v)^n e^(-x)`.
pub(crate) fn ell_sq_derivative_poly(k: u32, n: u32, x: f64) -> f64 {
    let k = k as i64;
    let mut sum = 0.0;
    for i in 0..=n {
        let cni = gen_binomial(n as f64, i);
        for j in 0..=i {
            let (i, j) = (i as i64, j as i64);
            let l1 = laguerre(k - i + j, (i - j) as f64, x);
            if l1 == 0.0 {
                continue;
            }
            sum += cni * gen_binomial(i as f64, j as u32) * l1 * laguerre(k - j, j as f64, x);
        }
    }
    sum
}

/// Exact Laguerre polynomial `L_n^(α)` for integer `α ≥ 0`.
pub fn laguerre_polynomial(n: u32, alpha: u32) -> Polynomial {
    let mut coeffs = Vec::with_capacity(n as usize + 1);
    let mut fact = BigInt::one();
    for i in 0..=n {
        if i > 0 {
            fact *= BigInt::from(i);
        }
        let c = binomial_big(n + alpha, n - i);
        let mut term = BigRational::new(c, fact.clone());
        if i % 2 == 1 {
            term = -term;
        }
        coeffs.push(term);
    }
    Polynomial::new(coeffs)
}

pub(crate) fn binomial_big(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= BigInt::from(n - i);
        den *= BigInt::from(i + 1);
    }
    num / den
}

pub(crate) fn factorial_big(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_degree_values() {
        assert_eq!(laguerre_eval(LaguerreIndex::plain(0), 7.3), 1.0);
        assert_eq!(laguerre_eval(LaguerreIndex::plain(1), 2.0), -1.0);
        assert!((laguerre_eval(LaguerreIndex::plain(2), 2.0) + 1.0).abs() < 1e-15);
        assert_eq!(laguerre_eval(LaguerreIndex::new(-2, 0.0), 3.0), 0.0);
    }

    #[test]
    fn recurrence_matches_explicit_sum() {
        for n in 0..=20 {
            for &alpha in &[0.0, 1.0, 2.5] {
                for &x in &[0.0, 0.3, 1.7, 6.0, 15.0] {
                    let idx = LaguerreIndex::new(n, alpha);
                    let r = laguerre_eval(idx, x);
                    let s = laguerre_explicit(idx, x);
                    let scale = r.abs().max(1.0);
                    assert!((r - s).abs() <= 1e-12 * scale, "n={n} a={alpha} x={x}: {r} vs {s}");
                }
            }
        }
    }

    #[test]
    fn laguerre_function_values_and_domain() {
        let l = |n, a, y| laguerre_function_eval(LaguerreIndex::new(n, a), y).unwrap();
        assert_eq!(l(0, 0.0, 0.0), 1.0);
        assert!((l(0, 0.0, 2.0) - (-1.0f64).exp()).abs() < 1e-15);
        assert!(laguerre_function_eval(LaguerreIndex::new(1, -1.0), 1.0).is_err());
        // ℓ_1^(1)(y) = (1/√2) y^{1/2} e^{-y/2} (2 - y)
        let y: f64 = 0.8;
        let expect = y.sqrt() * (-0.5 * y).exp() * (2.0 - y) / 2f64.sqrt();
        assert!((l(1, 1.0, y) - expect).abs() < 1e-14);
    }

    #[test]
    fn legendre_values() {
        assert_eq!(legendre_eval(5, 1.0).unwrap(), 1.0);
        assert_eq!(legendre_eval(1, 0.3).unwrap(), 0.3);
        assert!((legendre_eval(2, 0.0).unwrap() + 0.5).abs() < 1e-16);
        assert!(legendre_eval(2, 1.0 + 1e-9).is_err());
        // P_3 and P_4 against their explicit forms
        let x: f64 = 0.37;
        assert!((legendre(3, x) - 0.5 * (5.0 * x.powi(3) - 3.0 * x)).abs() < 1e-15);
        assert!((legendre(4, x) - (35.0 * x.powi(4) - 30.0 * x * x + 3.0) / 8.0).abs() < 1e-15);
    }

    #[test]
    fn product_integral_special_cases() {
        assert!((laguerre_product_integral(1.0, 0.0, 0.0, 3, 3).unwrap() - 7.0).abs() < 1e-12);
        assert!((laguerre_product_integral(0.0, 0.0, 0.0, 4, 4).unwrap() - 1.0).abs() < 1e-12);
        assert!(laguerre_product_integral(0.0, 0.0, 0.0, 2, 5).unwrap().abs() < 1e-12);
        // ∫ e^{-x} (2 - x)^2 dx = 2 needs the limiting binomial C(-1, 1) = -1.
        assert!((laguerre_product_integral(0.0, 1.0, 1.0, 1, 1).unwrap() - 2.0).abs() < 1e-12);
        assert!(laguerre_product_integral(-1.0, 0.0, 0.0, 1, 1).is_err());
    }

    #[test]
    fn generalized_binomial_conventions() {
        assert_eq!(gen_binomial(5.0, 2), 10.0);
        assert_eq!(gen_binomial(2.0, 3), 0.0);
        assert_eq!(gen_binomial(-1.0, 3), -1.0);
        assert!((gen_binomial(0.5, 2) + 0.125).abs() < 1e-16);
    }

    #[test]
    fn derivative_formula() {
        assert_eq!(laguerre_derivative(LaguerreIndex::plain(3), 4, 1.2), 0.0);
        assert_eq!(laguerre_derivative(LaguerreIndex::plain(1), 1, 5.0), -1.0);
        let idx = LaguerreIndex::plain(4);
        let x = 0.7;
        let h = 1e-4;
        let fd = (laguerre_eval(idx, x + h) - 2.0 * laguerre_eval(idx, x) + laguerre_eval(idx, x - h)) / (h * h);
        assert!((laguerre_derivative(idx, 2, x) - fd).abs() < 1e-6);
    }

    #[test]
    fn ell_sq_derivative_examples() {
        let v = 1.3;
        let xi = 0.4;
        assert!((ell_sq_derivative(2, 0, v, xi) - ell(2, 2.0 * v * xi).powi(2)).abs() < 1e-15);
        let expect = 4.0 * (-2.0f64).exp();
        assert!((ell_sq_derivative(0, 2, 1.0, 1.0) - expect).abs() < 1e-14);
        let h = 1e-5;
        let f = |t: f64| ell(1, 2.0 * t).powi(2);
        let fd = (f(0.5 + h) - f(0.5 - h)) / (2.0 * h);
        assert!((ell_sq_derivative(1, 1, 1.0, 0.5) - fd).abs() < 1e-6);
    }

    #[test]
    fn exact_polynomial_matches_recurrence() {
        for n in 0..8 {
            for alpha in 0..3 {
                let p = laguerre_polynomial(n, alpha);
                assert_eq!(p.degree(), Some(n as usize));
                for &x in &[0.0, 0.5, 3.0] {
                    let r = laguerre(n as i64, alpha as f64, x);
                    assert!((p.eval(x) - r).abs() < 1e-12 * r.abs().max(1.0));
                }
            }
        }
    }
}
