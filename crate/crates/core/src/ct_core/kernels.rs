//! Integral kernels of horizontal and product symbols: the Legendre kernel
//! `B_k(ξ,t)` and its symbol-weighted extension `C_{a,k}(ξ,t)`.

use num_complex::Complex64;

use super::engine::symbol_integral;
use super::symbol::VerticalSymbol;
use crate::error::{domain, Result};
use crate::quadrature::damped::{product_majorant, PolyFactor};
use crate::quadrature::{integrate_halfline, IntegrationResult, QuadratureSpec};
use crate::special_fn::{laguerre, legendre};

fn check_pair(function: &'static str, xi: f64, t: f64) -> Result<()> {
    if xi > 0.0 && t > 0.0 && xi.is_finite() && t.is_finite() {
        Ok(())
    } else {
        Err(domain(function, format!("(xi, t) = ({xi}, {t}) must be positive")))
    }
}

/// `B_k(ξ,t) = (2√(tξ)/(t+ξ)) P_k(8tξ/(t+ξ)² - 1)`.
pub fn b_kernel(k: u32, xi: f64, t: f64) -> Result<f64> {
    check_pair("b_kernel", xi, t)?;
    if xi == t {
        return Ok(1.0);
    }
    let s = t + xi;
    let arg = (8.0 * t * xi / (s * s) - 1.0).clamp(-1.0, 1.0);
    Ok(2.0 * (t * xi).sqrt() / s * legendre(k, arg))
}

/// `√(tξ) ∫₀^∞ e^(-τ(t+ξ)/2) L_k(tτ) L_k(ξτ) dτ`, the integral that `B_k`
/// evaluates in closed form; computed by plain half-line quadrature.
pub fn b_kernel_integral(k: u32, xi: f64, t: f64) -> Result<f64> {
    check_pair("b_kernel_integral", xi, t)?;
    let kk = k as i64;
    let f = |tau: f64| {
        Complex64::new((-0.5 * tau * (t + xi)).exp() * laguerre(kk, 0.0, t * tau) * laguerre(kk, 0.0, xi * tau), 0.0)
    };
    let spec = QuadratureSpec::default().with_tol(1e-13, 1e-12);
    Ok(integrate_halfline(&f, &spec)?.require()?.re * (t * xi).sqrt())
}

/// `C_{a,k}(ξ,t) = 2√(tξ) ∫₀^∞ a(v) ℓ_k(2vξ) ℓ_k(2vt) dv`.
pub fn c_kernel(a: &VerticalSymbol, k: u32, xi: f64, t: f64) -> Result<Complex64> {
    Ok(c_kernel_with_error(a, k, xi, t, &super::gamma_quadrature_spec())?.require()?)
}

pub(crate) fn c_kernel_with_error(
    a: &VerticalSymbol,
    k: u32,
    xi: f64,
    t: f64,
    spec: &QuadratureSpec,
) -> Result<IntegrationResult> {
    check_pair("c_kernel", xi, t)?;
    // x = v(ξ + t): ℓ_k(2vξ) ℓ_k(2vt) = e^{-x} L_k(βx) L_k((2-β)x).
    let sum = xi + t;
    let beta = 2.0 * xi / sum;
    let kk = k as i64;
    let eval = move |x: f64| laguerre(kk, 0.0, beta * x) * laguerre(kk, 0.0, (2.0 - beta) * x);
    let p = PolyFactor { eval: &eval, majorant: product_majorant(k, beta, 2.0 - beta), degree: 2 * k as usize };
    let mut r = symbol_integral(a, 1.0 / sum, &p, spec)?;
    let pre = 2.0 * (t * xi).sqrt() / sum;
    r.value *= pre;
    r.error_estimate *= pre;
    Ok(r)
}
