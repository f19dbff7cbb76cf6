//! Exponentially damped half-line integrals `∫₀^∞ h(x) e^(-x) p(x) e^(iωx) dx`
//! with a bounded amplitude `h` and a polynomial factor `p` that comes with a
//! non-negative majorant.
//!
//! The half-line is cut at `T`, chosen so that `sup|h| · ∫_T^∞ e^(-x) m(x) dx`
//! (with `m` the majorant of `|p|`) is below a tenth of the tolerance; that
//! bound is added to the reported error.

use num_complex::Complex64;

use super::{integrate_finite_with_points, integrate_oscillatory_with_points, IntegrationResult, QuadratureSpec};
use crate::error::Result;
use crate::special_fn::{cesaro_majorant_coeffs, laguerre, majorant_tail, poly_mul_f64};

/// Polynomial factor `p` with monomial coefficients of a majorant of `|p|`.
pub(crate) struct PolyFactor<'a> {
    pub eval: &'a dyn Fn(f64) -> f64,
    pub majorant: Vec<f64>,
    /// Degree of `p`, for deciding when Gauss–Laguerre is exact.
    pub degree: usize,
}

impl PolyFactor<'_> {
    pub fn tail(&self, t: f64) -> f64 {
        majorant_tail(&self.majorant, t)
    }
}

/// Majorant coefficients of `|L_k(c₁x) L_k(c₂x)|`.
pub(crate) fn product_majorant(k: u32, c1: f64, c2: f64) -> Vec<f64> {
    poly_mul_f64(&cesaro_majorant_coeffs(k, 0.0, c1), &cesaro_majorant_coeffs(k, 0.0, c2))
}

/// `L_k(x)²` with its majorant.
pub(crate) fn laguerre_sq(k: u32) -> (impl Fn(f64) -> f64, Vec<f64>) {
    (move |x: f64| laguerre(k as i64, 0.0, x).powi(2), product_majorant(k, 1.0, 1.0))
}

/// Smallest `T ≥ 50` (growing geometrically) with `sup · tail(T) < goal`.
pub(crate) fn cutoff(p: &PolyFactor<'_>, sup: f64, goal: f64) -> (f64, f64) {
    let mut t: f64 = 50.0;
    loop {
        let bound = sup * p.tail(t);
        if bound < goal || t > 5000.0 {
            return (t, bound);
        }
        t *= 1.25;
    }
}

// Break points 1, 2, 4, ... below T where e^{-x} p(x) changes character.
pub(crate) fn amplitude_points(t: f64) -> Vec<f64> {
    let mut pts = vec![0.0];
    let mut x = 1.0;
    while x < t {
        pts.push(x);
        x *= 2.0;
    }
    pts.push(t);
    pts
}

pub(crate) fn merge_points(mut pts: Vec<f64>, extra: impl IntoIterator<Item = f64>) -> Vec<f64> {
    let hi = *pts.last().unwrap_or(&0.0);
    pts.extend(extra.into_iter().filter(|x| *x > 0.0 && *x < hi));
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    pts
}

pub(crate) fn with_tail(mut r: IntegrationResult, tail: f64, spec: &QuadratureSpec) -> IntegrationResult {
    r.error_estimate += tail;
    r.converged = r.converged && r.error_estimate <= spec.target(r.value);
    r
}

/// `∫₀^∞ h(x) e^(-x) p(x) e^(iωx) dx` for an amplitude `h` bounded by `sup`.
pub(crate) fn damped_integral(
    h: &dyn Fn(f64) -> Complex64,
    p: &PolyFactor<'_>,
    sup: f64,
    omega: f64,
    extra_points: &[f64],
    spec: &QuadratureSpec,
) -> Result<IntegrationResult> {
    let (t, tail) = cutoff(p, sup, 0.1 * spec.abs_tol);
    let pts = merge_points(amplitude_points(t), extra_points.iter().copied());
    let f = |x: f64| h(x) * ((-x).exp() * (p.eval)(x));
    let r = if omega == 0.0 {
        integrate_finite_with_points(&f, &pts, spec)?
    } else {
        integrate_oscillatory_with_points(&f, omega, &pts, spec)?
    };
    Ok(with_tail(r, tail, spec))
}
