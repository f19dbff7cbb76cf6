//! `∫₀^∞ a(s·x) e^(-x) p(x) dx` for a vertical symbol `a`, dispatched on the
//! symbol kind so that jumps, oscillations and singularities are handled by a
//! suitable rule.

use num_complex::Complex64;

use super::symbol::{SymbolKind, VerticalSymbol};
use crate::error::Result;
use crate::quadrature::damped::{amplitude_points, cutoff, damped_integral, merge_points, with_tail, PolyFactor};
use crate::quadrature::{
    integrate_finite_with_points, integrate_laguerre_weighted, integrate_oscillatory_tail, IntegrationResult,
    QuadratureSpec,
};

/// `∫₀^∞ a(s·x) e^(-x) p(x) dx`.
pub(crate) fn symbol_integral(
    a: &VerticalSymbol,
    s: f64,
    p: &PolyFactor<'_>,
    spec: &QuadratureSpec,
) -> Result<IntegrationResult> {
    let one = |_: f64| Complex64::new(1.0, 0.0);
    match &a.kind {
        SymbolKind::Constant(c) => {
            if p.degree < spec.node_count {
                // Gauss–Laguerre is exact for polynomials of degree < 2n.
                let g = |x: f64| Complex64::new((p.eval)(x), 0.0);
                let mut r = integrate_laguerre_weighted(&g, spec)?;
                r.value *= c;
                r.error_estimate *= c.norm();
                r.converged = true;
                Ok(r)
            } else {
                let mut r = damped_integral(&one, p, 1.0, 0.0, &[], spec)?;
                r.value *= c;
                r.error_estimate *= c.norm();
                Ok(r)
            }
        }
        SymbolKind::Indicator { lambda } => {
            let x_end = lambda / s;
            let (t, _) = cutoff(p, 1.0, 0.1 * spec.abs_tol);
            if x_end >= t {
                return damped_integral(&one, p, 1.0, 0.0, &[], spec);
            }
            let f = |x: f64| Complex64::new((-x).exp() * (p.eval)(x), 0.0);
            let pts = merge_points(amplitude_points(x_end), []);
            integrate_finite_with_points(&f, &pts, spec)
        }
        SymbolKind::Sine => {
            let mut r = damped_integral(&one, p, 1.0, s, &[], spec)?;
            r.value = Complex64::new(r.value.im, 0.0);
            Ok(r)
        }
        SymbolKind::OscExp => damped_integral(&one, p, 1.0, 2.0 * s, &[], spec),
        SymbolKind::InvSqrtSinInv => inv_sqrt_sin_inv_integral(s, p, spec),
        SymbolKind::Tabulated { grid, .. } => {
            let h = |x: f64| a.eval(s * x);
            damped_integral(&h, p, a.sup_estimate(), 0.0, &grid.iter().map(|g| g / s).collect::<Vec<_>>(), spec)
        }
        SymbolKind::Custom(_) => {
            let h = |x: f64| a.eval(s * x);
            let decades: Vec<f64> = (-8..=8).map(|j| 10f64.powi(j) / s).collect();
            damped_integral(&h, p, a.sup_estimate(), 0.0, &decades, spec)
        }
    }
}

/// `∫₀^∞ (sx)^(-1/2) sin(1/(sx)) e^(-x) p(x) dx` after the substitution
/// `w = 1/(sx)`, which turns it into `∫ sin(w) g(w) dw` with the smooth,
/// algebraically decaying amplitude `g(w) = w^(-3/2) e^(-1/(sw)) p(1/(sw)) / s`.
fn inv_sqrt_sin_inv_integral(s: f64, p: &PolyFactor<'_>, spec: &QuadratureSpec) -> Result<IntegrationResult> {
    // x > T maps to w < 1/(sT); there |a(sx)| ≤ (sT)^(-1/2).
    let mut t: f64 = 50.0;
    let mut tail;
    loop {
        tail = (s * t).powf(-0.5) * p.tail(t);
        if tail < 0.1 * spec.abs_tol || t > 5000.0 {
            break;
        }
        t *= 1.25;
    }
    let w_lo = 1.0 / (s * t);
    let g = |w: f64| {
        let x = 1.0 / (s * w);
        Complex64::new(w.powf(-1.5) * (-x).exp() * (p.eval)(x) / s, 0.0)
    };
    let r = integrate_oscillatory_tail(&g, 1.0, w_lo, w_lo, spec)?;
    let r = IntegrationResult { value: Complex64::new(r.value.im, 0.0), ..r };
    Ok(with_tail(r, tail, spec))
}
