//! Calderón-Toeplitz operators transported to `L₂(ℝ₊)` by the Bargmann-type
//! transform: multiplication by `γ_{a,k}` for vertical symbols, and kernel
//! integrals for horizontal and product symbols.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;

use super::gamma::SpectralFunction;
use super::kernels::{b_kernel, c_kernel_with_error};
use super::symbol::VerticalSymbol;
use crate::bargmann::HalflineFunction;
use crate::error::Result;
use crate::quadrature::{integrate_finite_with_points, QuadratureSpec};

/// Fourier transform `b̂` of a time-only symbol `b(u)`.
pub type SpectrumFn = Arc<dyn Fn(f64) -> Complex64 + Send + Sync>;

#[derive(Clone)]
pub enum HorizontalSymbol {
    /// `b ≡ c`, whose transform is `c·δ`.
    Constant(Complex64),
    /// `b̂` as a function, optionally supported in `[lo, hi]`.
    Spectral { b_hat: SpectrumFn, support_hint: Option<(f64, f64)> },
}

impl fmt::Debug for HorizontalSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Constant(c) => write!(f, "Constant({c})"),
            Self::Spectral { support_hint, .. } => write!(f, "Spectral(support {support_hint:?})"),
        }
    }
}

impl HorizontalSymbol {
    pub fn spectral(b_hat: impl Fn(f64) -> Complex64 + Send + Sync + 'static, support_hint: Option<(f64, f64)>) -> Self {
        Self::Spectral { b_hat: Arc::new(b_hat), support_hint }
    }

    /// `b(u) = e^(-2π²σ²u²)`, i.e. `b̂` the centred Gaussian density of width `σ`.
    /// As `σ → 0` this tends to `b ≡ 1`.
    pub fn gaussian(sigma: f64) -> Self {
        let norm = 1.0 / ((2.0 * std::f64::consts::PI).sqrt() * sigma);
        Self::spectral(
            move |x| Complex64::new(norm * (-0.5 * (x / sigma).powi(2)).exp(), 0.0),
            Some((-12.0 * sigma, 12.0 * sigma)),
        )
    }
}

fn t_integral_spec() -> QuadratureSpec {
    QuadratureSpec::default().with_tol(1e-11, 1e-10)
}

/// `ξ ↦ γ_{a,k}(ξ) f(ξ)` on the grid of `f`.
pub fn apply_ct_vertical(s: &SpectralFunction, f: &HalflineFunction) -> Result<HalflineFunction> {
    let values = f
        .xi_grid
        .par_iter()
        .zip(&f.values)
        .map(|(&xi, &y)| Ok(if y == Complex64::new(0.0, 0.0) { y } else { s.eval(xi)? * y }))
        .collect::<Result<Vec<_>>>()?;
    HalflineFunction::new(f.xi_grid.clone(), values, f.interpolation)
}

/// `(𝔅f)(ξ) = ∫ B_k(ξ,t) b̂(ξ-t) f(t) dt` on the grid of `f`.
pub fn apply_ct_horizontal(b: &HorizontalSymbol, k: u32, f: &HalflineFunction) -> Result<HalflineFunction> {
    kernel_operator(b, f, |xi, t| Ok(Complex64::new(b_kernel(k, xi, t)?, 0.0)), |_| Ok(Complex64::new(1.0, 0.0)))
}

/// Product symbol `a(v) b(u)`: the kernel `C_{a,k}(ξ,t) b̂(ξ-t)`. Every kernel
/// value, including the diagonal used for constant `b`, comes from the
/// `C_{a,k}` quadrature.
pub fn apply_ct_product(
    a: &VerticalSymbol,
    b: &HorizontalSymbol,
    k: u32,
    f: &HalflineFunction,
) -> Result<HalflineFunction> {
    let spec = super::gamma_quadrature_spec();
    let kernel = |xi: f64, t: f64| c_kernel_with_error(a, k, xi, t, &spec)?.require();
    kernel_operator(b, f, kernel, |xi| kernel(xi, xi))
}

fn kernel_operator(
    b: &HorizontalSymbol,
    f: &HalflineFunction,
    kernel: impl Fn(f64, f64) -> Result<Complex64> + Sync,
    diagonal: impl Fn(f64) -> Result<Complex64> + Sync,
) -> Result<HalflineFunction> {
    let values = match b {
        HorizontalSymbol::Constant(c) => f
            .xi_grid
            .par_iter()
            .zip(&f.values)
            .map(|(&xi, &y)| Ok(*c * diagonal(xi)? * y))
            .collect::<Result<Vec<_>>>()?,
        HorizontalSymbol::Spectral { b_hat, support_hint } => {
            let spec = t_integral_spec();
            let (lo, hi) = (f.xi_grid[0], f.xi_grid[f.len() - 1]);
            f.xi_grid
                .par_iter()
                .map(|&xi| {
                    let (t_lo, t_hi) = match support_hint {
                        Some((s_lo, s_hi)) => ((xi - s_hi).max(lo), (xi - s_lo).min(hi)),
                        None => (lo, hi),
                    };
                    if t_hi <= t_lo {
                        return Ok(Complex64::new(0.0, 0.0));
                    }
                    let mut pts = vec![t_lo];
                    pts.extend(f.xi_grid.iter().copied().filter(|&t| t > t_lo && t < t_hi));
                    if xi > t_lo && xi < t_hi {
                        pts.push(xi);
                    }
                    pts.push(t_hi);
                    pts.sort_by(f64::total_cmp);
                    pts.dedup();
                    let first_err = std::sync::Mutex::new(None);
                    let g = |t: f64| {
                        let y = f.eval(t);
                        if y == Complex64::new(0.0, 0.0) {
                            return y;
                        }
                        match kernel(xi, t) {
                            Ok(kv) => kv * b_hat(xi - t) * y,
                            Err(e) => {
                                first_err.lock().unwrap().get_or_insert(e);
                                Complex64::new(f64::NAN, 0.0)
                            }
                        }
                    };
                    let r = integrate_finite_with_points(&g, &pts, &spec);
                    if let Some(e) = first_err.into_inner().unwrap() {
                        return Err(e);
                    }
                    r?.require()
                })
                .collect::<Result<Vec<_>>>()?
        }
    };
    HalflineFunction::new(f.xi_grid.clone(), values, f.interpolation)
}
