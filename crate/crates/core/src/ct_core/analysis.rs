//! Behaviour of `γ_{a,k}`: endpoint limits, derivatives and slow oscillation
//! at infinity.

use num_complex::Complex64;

use super::engine::symbol_integral;
use super::gamma::SpectralFunction;
use super::symbol::SymbolKind;
use crate::error::{domain, Error, Result};
use crate::quadrature::damped::PolyFactor;
use crate::special_fn::{cesaro_majorant_coeffs, ell_sq_derivative_poly, gen_binomial, poly_mul_f64};

/// Probed values of `γ` near `ξ = ∞` and `ξ = 0`, each with a confirmation
/// probe one decade closer in.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EndpointProbe {
    /// `γ(10⁶/scale)`.
    pub at_infinity: Complex64,
    /// `γ(10⁵/scale)`.
    pub at_infinity_confirm: Complex64,
    /// `γ(10⁻⁶/scale)`.
    pub at_zero: Complex64,
    /// `γ(10⁻⁵/scale)`.
    pub at_zero_confirm: Complex64,
}

pub const LIMIT_PROBE: f64 = 1e6;
pub const LIMIT_CONFIRM: f64 = 1e5;

/// Evaluates the four probes; `scale` is the symbol's natural scale (λ for
/// indicators).
pub fn probe_endpoints(s: &SpectralFunction) -> Result<EndpointProbe> {
    let scale = s.symbol.natural_scale();
    Ok(EndpointProbe {
        at_infinity: s.eval(LIMIT_PROBE / scale)?,
        at_infinity_confirm: s.eval(LIMIT_CONFIRM / scale)?,
        at_zero: s.eval(1.0 / (LIMIT_PROBE * scale))?,
        at_zero_confirm: s.eval(1.0 / (LIMIT_CONFIRM * scale))?,
    })
}

/// `(γ(∞), γ(0))` estimated at `ξ = 10^(±6)·scale`, checked against the
/// declared `(a0, a_inf)`.
///
/// Fails with [`Error::LimitNotSettled`] when a probe and its confirmation
/// differ by more than `tol` (the quadrature or the probe distance is the
/// suspect), and with [`Error::LimitMismatch`] when both agree but miss the
/// declared limit (the symbol violates the hypotheses, or its declaration is
/// wrong).
pub fn limit_at_endpoints(s: &SpectralFunction, tol: f64) -> Result<(Complex64, Complex64)> {
    let (Some(a0), Some(a_inf)) = (s.symbol.a0, s.symbol.a_inf) else {
        return Err(Error::Invalid(format!(
            "symbol '{}' does not declare both endpoint limits",
            s.symbol.kind_name()
        )));
    };
    let p = probe_endpoints(s)?;
    let checks = [("infinity", p.at_infinity, p.at_infinity_confirm, a0, "a0"), ("zero", p.at_zero, p.at_zero_confirm, a_inf, "a_inf")];
    for (end, probe, confirm, declared, name) in checks {
        if (probe - confirm).norm() > tol {
            return Err(Error::LimitNotSettled(format!(
                "gamma near xi = {end} has not settled: probe {probe}, confirmation {confirm} (k = {})",
                s.level
            )));
        }
        if (probe - declared).norm() > tol {
            return Err(Error::LimitMismatch(format!(
                "gamma near xi = {end} tends to {probe}, declared {name} = {declared} (k = {})",
                s.level
            )));
        }
    }
    Ok((p.at_infinity, p.at_zero))
}

// Majorant of |x^m S_m(x)| where e^{-x} S_m(x) = (-1)^m (ℓ_k²)^{(m)}(x).
fn derivative_majorant(k: u32, m: u32) -> Vec<f64> {
    let mut total: Vec<f64> = Vec::new();
    for i in 0..=m {
        for j in 0..=i {
            if i - j > k || j > k {
                continue;
            }
            let w = gen_binomial(m as f64, i) * gen_binomial(i as f64, j);
            let a = cesaro_majorant_coeffs(k - (i - j), (i - j) as f64, 1.0);
            let b = cesaro_majorant_coeffs(k - j, j as f64, 1.0);
            let prod = poly_mul_f64(&a, &b);
            if total.len() < prod.len() {
                total.resize(prod.len(), 0.0);
            }
            for (t, c) in total.iter_mut().zip(prod) {
                *t += w * c;
            }
        }
    }
    let mut shifted = vec![0.0; m as usize];
    shifted.extend(total);
    shifted
}

// J_m = ∫₀^∞ a(x/(2ξ)) x^m S_m(x) e^{-x} dx.
fn derivative_moment(s: &SpectralFunction, m: u32, xi: f64) -> Result<Complex64> {
    let k = s.level;
    let eval = move |x: f64| x.powi(m as i32) * ell_sq_derivative_poly(k, m, x);
    let p = PolyFactor { eval: &eval, majorant: derivative_majorant(k, m), degree: (2 * k + m) as usize };
    symbol_integral(&s.symbol, 0.5 / xi, &p, &s.quad)?.require()
}

/// `dⁿγ/dξⁿ` by differentiating under the integral:
/// `dⁿγ = (-1)^(n-1) ξ^(-n) (n J_(n-1) - J_n)` with
/// `J_m = ∫₀^∞ a(x/(2ξ)) x^m S_m(x) e^(-x) dx` and `e^(-x) S_m = (-1)^m (ℓ_k²)^(m)`.
pub fn derivative_estimate(s: &SpectralFunction, n: u32, xi: f64) -> Result<Complex64> {
    if n == 0 {
        return Err(domain("derivative_estimate", "order must be at least 1"));
    }
    if !(xi > 0.0 && xi.is_finite()) {
        return Err(domain("derivative_estimate", format!("xi = {xi} must be positive")));
    }
    if let SymbolKind::Constant(_) = s.symbol.kind {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let lower = derivative_moment(s, n - 1, xi)?;
    let upper = derivative_moment(s, n, xi)?;
    let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
    Ok((lower * n as f64 - upper) * (sign * xi.powi(-(n as i32))))
}

/// `dⁿγ/dξⁿ` by fourth-order central differences of `γ` with step `h`,
/// `n ≤ 4`.
pub fn derivative_finite_difference(s: &SpectralFunction, n: u32, xi: f64, h: f64) -> Result<Complex64> {
    let (stencil, denom): (&[f64], f64) = match n {
        1 => (&[1.0, -8.0, 0.0, 8.0, -1.0], 12.0),
        2 => (&[-1.0, 16.0, -30.0, 16.0, -1.0], 12.0),
        3 => (&[1.0, -8.0, 13.0, 0.0, -13.0, 8.0, -1.0], 8.0),
        4 => (&[-1.0, 12.0, -39.0, 56.0, -39.0, 12.0, -1.0], 6.0),
        _ => return Err(domain("derivative_finite_difference", format!("order {n} outside 1..=4"))),
    };
    let half = (stencil.len() / 2) as f64;
    if xi - half * h <= 0.0 {
        return Err(domain("derivative_finite_difference", format!("step {h} reaches xi <= 0 from {xi}")));
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for (i, c) in stencil.iter().enumerate() {
        if *c != 0.0 {
            acc += s.eval(xi + (i as f64 - half) * h)? * *c;
        }
    }
    Ok(acc / (denom * h.powi(n as i32)))
}

/// `γ(λξ)/γ(ξ)`, which tends to 1 as `ξ → ∞` for non-negative symbols with
/// a non-zero limit at `v = 0`.
pub fn slowly_oscillating_ratio(s: &SpectralFunction, lam: f64, xi: f64) -> Result<Complex64> {
    if !(lam > 0.0 && lam.is_finite()) {
        return Err(domain("slowly_oscillating_ratio", format!("lambda = {lam} must be positive")));
    }
    match s.symbol.a0 {
        Some(a0) if a0.norm() > 0.0 && s.symbol.is_real() => {}
        _ => {
            return Err(domain(
                "slowly_oscillating_ratio",
                "needs a real symbol with a declared non-zero limit a0 at v = 0",
            ))
        }
    }
    let den = s.eval(xi)?;
    if den.norm() < 1e-14 {
        return Err(Error::DivisionGuard(den.norm()));
    }
    if lam == 1.0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    Ok(s.eval(lam * xi)? / den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ct_core::VerticalSymbol;

    #[test]
    fn indicator_limits() {
        for k in 0..3 {
            let s = SpectralFunction::new(VerticalSymbol::indicator(2.0).unwrap(), k);
            let (inf, zero) = limit_at_endpoints(&s, 1e-3).unwrap();
            assert!((inf - 1.0).norm() < 1e-3 && zero.norm() < 1e-3);
        }
        let c = SpectralFunction::new(VerticalSymbol::constant(Complex64::new(0.3, -1.0)), 2);
        let (inf, zero) = limit_at_endpoints(&c, 1e-3).unwrap();
        assert!((inf - zero).norm() < 1e-12);
    }

    #[test]
    fn wrong_declaration_is_a_mismatch() {
        let a = VerticalSymbol::indicator(1.0).unwrap().with_limits(Some(Complex64::new(0.5, 0.0)), Some(Complex64::new(0.0, 0.0)));
        let s = SpectralFunction::new(a, 1);
        assert!(matches!(limit_at_endpoints(&s, 1e-3), Err(Error::LimitMismatch(_))));
    }

    #[test]
    fn indicator_first_derivative() {
        let s = SpectralFunction::new(VerticalSymbol::indicator(0.5).unwrap(), 0);
        let d = derivative_estimate(&s, 1, 2.0).unwrap();
        assert!((d.re - (-2.0f64).exp()).abs() < 1e-12, "{d}");
        let c = SpectralFunction::new(VerticalSymbol::real_constant(3.0), 1);
        assert_eq!(derivative_estimate(&c, 2, 1.0).unwrap(), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn ratio_guards() {
        let s = SpectralFunction::new(VerticalSymbol::indicator(1.0).unwrap(), 0);
        assert_eq!(slowly_oscillating_ratio(&s, 1.0, 5.0).unwrap(), Complex64::new(1.0, 0.0));
        let r = slowly_oscillating_ratio(&s, 3.0, 1e3).unwrap();
        assert!((r - 1.0).norm() < 1e-3);
        let sine = SpectralFunction::new(VerticalSymbol::sine(), 1);
        assert!(slowly_oscillating_ratio(&sine, 2.0, 10.0).is_err());
    }
}
