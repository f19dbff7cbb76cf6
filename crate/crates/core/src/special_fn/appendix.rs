//! Cumulative integrals of `ℓ_k²`, the `Λ` family with its Cesàro-mean
//! bounds, and related exact identities.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use statrs::function::gamma::gamma;

use super::laguerre::{binomial_big, factorial_big, laguerre, laguerre_polynomial, pochhammer};
use super::polynomial::{rational_to_f64, Polynomial};
use crate::error::{domain, Result};

/// The degree-`2k` polynomial `N_{2k}` with `∫₀^x ℓ_k²(t) dt = 1 - N_{2k}(x) e^(-x)`.
///
/// Expands `L_k(t)² = Σ q_j t^j` exactly and antidifferentiates
/// `e^(-t) t^j` termwise, so `N_{2k}(x) = Σ_j q_j j! Σ_{p≤j} x^p/p!`.
pub fn n_polynomial(k: u32) -> Polynomial {
    let lk = laguerre_polynomial(k, 0);
    let sq = &lk * &lk;
    let deg = sq.degree().unwrap_or(0);
    let mut coeffs = vec![BigRational::zero(); deg + 1];
    for (j, qj) in sq.coeffs().iter().enumerate() {
        let weight = qj * BigRational::from_integer(factorial_big(j as u32));
        for (p, slot) in coeffs.iter_mut().enumerate().take(j + 1) {
            *slot += &weight / BigRational::from_integer(factorial_big(p as u32));
        }
    }
    Polynomial::new(coeffs)
}

/// `N_{2k}` assembled from the incomplete-Gamma double sum
/// `L_k² - 2 Σ_i Σ_j (-1)^(i+j) C(k,i) C(k,j+1) C(i+j,i) Σ_{p≤i+j} x^p/p!`.
///
/// Independent of [`n_polynomial`]; the two must agree exactly.
pub fn n_polynomial_incomplete_gamma(k: u32) -> Polynomial {
    let lk = laguerre_polynomial(k, 0);
    let mut out = &lk * &lk;
    if k == 0 {
        return out;
    }
    for i in 0..=k {
        for j in 0..k {
            let mut c = binomial_big(k, i) * binomial_big(k, j + 1) * binomial_big(i + j, i);
            if (i + j) % 2 == 1 {
                c = -c;
            }
            let c = BigRational::from_integer(c * BigInt::from(2));
            for p in 0..=(i + j) {
                let term = Polynomial::monomial(&c / BigRational::from_integer(factorial_big(p)), p as usize);
                out = &out - &term;
            }
        }
    }
    out
}

/// Precomputed evaluator for `∫₀^x ℓ_k²(t) dt`.
#[derive(Clone, Debug)]
pub struct CumulativeLaguerreSq {
    k: u32,
    n_coeffs: Vec<f64>,
    // 1 - p! [x^p] N_{2k}, the Taylor weights of e^x - N_{2k}(x).
    series: Vec<f64>,
}

impl CumulativeLaguerreSq {
    pub fn new(k: u32) -> Self {
        let n = n_polynomial(k);
        let n_coeffs = n.coeffs_f64();
        let series = n
            .coeffs()
            .iter()
            .enumerate()
            .map(|(p, c)| 1.0 - rational_to_f64(&(c * BigRational::from_integer(factorial_big(p as u32)))))
            .collect();
        Self { k, n_coeffs, series }
    }

    pub fn level(&self) -> u32 {
        self.k
    }

    pub fn n_eval(&self, x: f64) -> f64 {
        self.n_coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c)
    }

    /// `∫₀^x ℓ_k²`; 0 for `x ≤ 0`.
    pub fn eval(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        if x < 1.0 {
            // e^{-x} Σ_{p≥1} (1 - c_p) x^p / p!, free of the 1 - (1 - O(x)) cancellation.
            let mut sum = 0.0;
            let mut term = 1.0;
            let mut p = 1usize;
            loop {
                term *= x / p as f64;
                let w = self.series.get(p).copied().unwrap_or(1.0);
                sum += w * term;
                if p >= self.series.len() && term < 1e-18 * sum.abs() {
                    break;
                }
                p += 1;
            }
            return (-x).exp() * sum;
        }
        let n = self.n_eval(x);
        if x > 700.0 {
            return 1.0 - (n.ln() - x).exp();
        }
        1.0 - n * (-x).exp()
    }
}

/// `∫₀^x ℓ_k²(t) dt = 1 - N_{2k}(x) e^(-x)`.
pub fn cumulative_laguerre_sq(k: u32, x: f64) -> f64 {
    CumulativeLaguerreSq::new(k).eval(x)
}

/// `Λ_{p,m,n}^(α,β)(x) = x^p e^(-x) |L_m^(α)(x) L_n^(β)(x)|`.
pub fn lambda_fn(p: f64, m: u32, n: u32, alpha: f64, beta: f64, x: f64) -> f64 {
    let xp = if p == 0.0 { 1.0 } else { x.powf(p) };
    xp * (-x).exp() * (laguerre(m as i64, alpha, x) * laguerre(n as i64, beta, x)).abs()
}

fn cesaro_weight(alpha: f64, n: u32, i: u32) -> f64 {
    pochhammer(alpha + 1.0, n - i) / (pochhammer(1.0, n - i) * pochhammer(1.0, i))
}

/// Pointwise majorant of `Λ` from the Cesàro-mean bound on each Laguerre factor.
pub fn lambda_pointwise_bound(p: f64, m: u32, n: u32, alpha: f64, beta: f64, x: f64) -> Result<f64> {
    check_cesaro_alpha("lambda_pointwise_bound", alpha)?;
    check_cesaro_alpha("lambda_pointwise_bound", beta)?;
    let xp = if p == 0.0 { 1.0 } else { x.powf(p) };
    Ok(xp * (-x).exp() * cesaro_bound_unchecked(m, alpha, x) * cesaro_bound_unchecked(n, beta, x))
}

/// `const_{p,m,n}^(α,β)`, the integral of the pointwise majorant and hence an
/// upper bound for `∫₀^∞ Λ`.
pub fn lambda_bound_integral(p: f64, m: u32, n: u32, alpha: f64, beta: f64) -> Result<f64> {
    check_cesaro_alpha("lambda_bound_integral", alpha)?;
    check_cesaro_alpha("lambda_bound_integral", beta)?;
    if p <= -1.0 {
        return Err(domain("lambda_bound_integral", format!("p = {p} must exceed -1")));
    }
    let mut total = 0.0;
    for i in 0..=m {
        let wi = cesaro_weight(alpha, m, i);
        for j in 0..=n {
            let g = if p.fract() == 0.0 {
                pochhammer(1.0, p as u32 + i + j)
            } else {
                gamma(p + (i + j) as f64 + 1.0)
            };
            total += wi * cesaro_weight(beta, n, j) * g;
        }
    }
    Ok(total)
}

/// `((α+1)_n/n!) σ_n^(α)(e^x) = Σ_i (α+1)_{n-i}/((n-i)! i!) x^i`, an upper bound
/// for `|L_n^(α)(x)|` when `α ≥ -1/2` and `x ≥ 0`.
pub fn cesaro_bound(n: u32, alpha: f64, x: f64) -> Result<f64> {
    check_cesaro_alpha("cesaro_bound", alpha)?;
    if x < 0.0 {
        return Err(domain("cesaro_bound", format!("x = {x} must be non-negative")));
    }
    Ok(cesaro_bound_unchecked(n, alpha, x))
}

pub(crate) fn cesaro_bound_unchecked(n: u32, alpha: f64, x: f64) -> f64 {
    let mut pow = 1.0;
    let mut sum = 0.0;
    for i in 0..=n {
        if i > 0 {
            pow *= x;
        }
        sum += cesaro_weight(alpha, n, i) * pow;
    }
    sum
}

/// Monomial coefficients of the Cesàro majorant of `|L_n^(α)(c x)|`.
pub(crate) fn cesaro_majorant_coeffs(n: u32, alpha: f64, c: f64) -> Vec<f64> {
    (0..=n).map(|i| cesaro_weight(alpha, n, i) * c.powi(i as i32)).collect()
}

fn check_cesaro_alpha(function: &'static str, alpha: f64) -> Result<()> {
    if alpha < -0.5 {
        Err(domain(function, format!("alpha = {alpha} must be at least -1/2")))
    } else {
        Ok(())
    }
}

/// `S(k) = Σ_{i≤k} Σ_{j<k} (-1)^(i+j) C(k,i) C(k,j+1) C(i+j,i)`, exactly.
pub fn alternating_sum_s(k: u32) -> Result<BigRational> {
    if k == 0 {
        return Err(domain("alternating_sum_s", "k must be at least 1"));
    }
    let mut s = BigInt::zero();
    for i in 0..=k {
        for j in 0..k {
            let term = binomial_big(k, i) * binomial_big(k, j + 1) * binomial_big(i + j, i);
            if (i + j) % 2 == 0 {
                s += term;
            } else {
                s -= term;
            }
        }
    }
    Ok(BigRational::from_integer(s))
}

/// `(p/(e q))^p`, the maximum of `x^p e^(-qx)` over `x ≥ 0`.
pub fn power_exp_bound(p: f64, q: f64) -> f64 {
    (p / (std::f64::consts::E * q)).powf(p)
}

/// `∫_t^∞ x^n e^(-x) dx = n! e^(-t) Σ_{p≤n} t^p/p!`.
pub fn upper_gamma_integer(n: u32, t: f64) -> f64 {
    if t <= 0.0 {
        return gamma(n as f64 + 1.0);
    }
    // Σ n!/p! t^p accumulated from p = n downwards.
    let mut sum = 0.0;
    let mut coef = 1.0;
    for p in (0..=n).rev() {
        sum += coef * t.powi(p as i32);
        coef *= p.max(1) as f64;
    }
    (sum.ln() - t).exp()
}

/// `∫_t^∞ e^(-x) Σ_j c_j x^j dx` for a non-negative majorant.
pub(crate) fn majorant_tail(coeffs: &[f64], t: f64) -> f64 {
    coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| **c != 0.0)
        .map(|(j, c)| c.abs() * upper_gamma_integer(j as u32, t))
        .sum()
}

/// Product of two monomial coefficient lists.
pub(crate) fn poly_mul_f64(a: &[f64], b: &[f64]) -> Vec<f64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn n_polynomial_low_levels() {
        assert_eq!(n_polynomial(0), Polynomial::one());
        assert_eq!(n_polynomial(1), Polynomial::from_integers(&[1, 0, 1]));
        for k in 0..10 {
            let n = n_polynomial(k);
            assert_eq!(n.degree(), Some(2 * k as usize));
            assert_eq!(n.coeff(0), BigRational::one());
        }
    }

    #[test]
    fn n_polynomial_matches_incomplete_gamma_form() {
        for k in 0..9 {
            assert_eq!(n_polynomial(k), n_polynomial_incomplete_gamma(k), "k = {k}");
        }
    }

    #[test]
    fn cumulative_values() {
        assert_eq!(cumulative_laguerre_sq(3, 0.0), 0.0);
        assert!((cumulative_laguerre_sq(0, 1.0) - (1.0 - (-1.0f64).exp())).abs() < 1e-15);
        // series branch and direct branch agree where they meet
        let c = CumulativeLaguerreSq::new(4);
        let below = c.eval(1.0 - 1e-12);
        let above = 1.0 - c.n_eval(1.0) * (-1.0f64).exp();
        assert!((below - above).abs() < 1e-11);
        assert!((c.eval(5000.0) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn small_argument_is_accurate() {
        // ∫₀^x ℓ_1² = ∫ e^{-t}(1-t)^2 ≈ x - 3x²/2 + ... for small x
        let x = 1e-7;
        let v = cumulative_laguerre_sq(1, x);
        assert!((v / x - 1.0).abs() < 1e-6);
    }

    #[test]
    fn s_vanishes() {
        for k in 1..=12 {
            assert!(alternating_sum_s(k).unwrap().is_zero());
        }
        assert!(alternating_sum_s(0).is_err());
    }

    #[test]
    fn lambda_examples() {
        let x = 2.3;
        assert!((lambda_fn(0.0, 0, 0, 0.0, 0.0, x) - (-x).exp()).abs() < 1e-16);
        let l3 = super::super::laguerre::ell(3, x);
        assert!((lambda_fn(0.0, 3, 3, 0.0, 0.0, x) - l3 * l3).abs() < 1e-15);
        assert!(lambda_fn(1.0, 2, 3, 0.0, 1.0, x) <= lambda_pointwise_bound(1.0, 2, 3, 0.0, 1.0, x).unwrap());
    }

    #[test]
    fn lambda_bound_integral_examples() {
        assert_eq!(lambda_bound_integral(0.0, 0, 0, 0.0, 0.0).unwrap(), 1.0);
        // i = 0 term: 1·Γ(2); i = 1 term: 1·Γ(3)
        assert_eq!(lambda_bound_integral(1.0, 1, 0, 0.0, 0.0).unwrap(), 3.0);
        for k in 0..6 {
            assert!(lambda_bound_integral(0.0, k, k, 0.0, 0.0).unwrap() >= 1.0);
        }
        assert!(lambda_bound_integral(0.0, 1, 1, -0.6, 0.0).is_err());
    }

    #[test]
    fn cesaro_examples() {
        assert_eq!(cesaro_bound(0, 0.0, 4.0).unwrap(), 1.0);
        assert!((cesaro_bound(2, 0.0, 3.0).unwrap() - 8.5).abs() < 1e-14);
        assert!(laguerre(2, 0.0, 3.0).abs() <= 8.5);
        assert!(cesaro_bound(2, -0.75, 1.0).is_err());
    }

    #[test]
    fn upper_gamma_matches_closed_forms() {
        assert!((upper_gamma_integer(0, 2.0) - (-2.0f64).exp()).abs() < 1e-16);
        // ∫_t^∞ x e^{-x} = (1 + t) e^{-t}
        assert!((upper_gamma_integer(1, 3.0) - 4.0 * (-3.0f64).exp()).abs() < 1e-15);
        assert!((upper_gamma_integer(5, 0.0) - 120.0).abs() < 1e-10);
    }

    #[test]
    fn power_exp_bound_holds() {
        let (p, q) = (2.5f64, 0.7f64);
        let xmax = p / q;
        let peak = xmax.powf(p) * (-q * xmax).exp();
        assert!((power_exp_bound(p, q) - peak).abs() < 1e-12 * peak);
    }
}
