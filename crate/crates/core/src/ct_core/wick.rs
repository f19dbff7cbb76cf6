//! Wick symbols and functions of vertical-symbol operators and the star
//! product of their Wick symbols.

use std::cell::RefCell;
use std::sync::Arc;

use num_complex::Complex64;

use super::gamma::SpectralFunction;
use super::symbol::{SymbolKind, VerticalSymbol};
use crate::error::{domain, Error, Result};
use crate::quadrature::damped::{damped_integral, laguerre_sq, PolyFactor};
use crate::quadrature::QuadratureSpec;
use crate::wavelet::{weighted_kernel_integral, wavelet_norm_sq, AffinePoint};

/// `|K_ζ(η)|` below this makes the Wick function undefined.
pub const KERNEL_ZERO_THRESHOLD: f64 = 1e-12;

/// Level and symbol of the operator whose Wick symbol is taken.
#[derive(Clone, Debug)]
pub struct WickData {
    pub level: u32,
    pub symbol: VerticalSymbol,
}

impl WickData {
    pub fn new(symbol: VerticalSymbol, level: u32) -> Self {
        Self { level, symbol }
    }

    pub fn spectral(&self) -> SpectralFunction {
        SpectralFunction::new(self.symbol.clone(), self.level)
    }
}

fn wick_spec() -> QuadratureSpec {
    QuadratureSpec::default().with_tol(1e-11, 1e-11)
}

fn check_v(v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(domain("wick_symbol", format!("v = {v} must be positive")))
    }
}

// Bound for |γ|: |γ_{a,k}| ≤ sup|a| since ℓ_k² integrates to one.
fn gamma_bound(a: &VerticalSymbol) -> f64 {
    match a.kind {
        SymbolKind::InvSqrtSinInv => 4.0,
        _ => a.sup_estimate().max(1e-300),
    }
}

/// `2κ_k⁻¹ v² ∫₀^∞ g(ξ) ℓ_k²(2vξ) ξ dξ = (2κ_k)⁻¹ ∫₀^∞ g(x/(2v)) x e^(-x) L_k(x)² dx`
/// for a bounded `g`. `scale` is where `g` varies.
fn weighted_wick_integral(
    g: &dyn Fn(f64) -> Result<Complex64>,
    g_sup: f64,
    scale: f64,
    k: u32,
    v: f64,
) -> Result<Complex64> {
    check_v(v)?;
    let (sq, sq_majorant) = laguerre_sq(k);
    let eval = move |x: f64| x * sq(x);
    let mut majorant = vec![0.0];
    majorant.extend(sq_majorant);
    let p = PolyFactor { eval: &eval, majorant, degree: 2 * k as usize + 1 };
    let first_err = RefCell::new(None);
    let h = |x: f64| match g(x / (2.0 * v)) {
        Ok(z) => z,
        Err(e) => {
            first_err.borrow_mut().get_or_insert(e);
            Complex64::new(f64::NAN, 0.0)
        }
    };
    let extra: Vec<f64> = (-3..=3).map(|j| 2.0 * v * scale * 10f64.powi(j)).collect();
    let r = damped_integral(&h, &p, g_sup, 0.0, &extra, &wick_spec());
    if let Some(e) = first_err.into_inner() {
        return Err(e);
    }
    Ok(r?.require()? / (2.0 * wavelet_norm_sq(k)))
}

/// `ã_k(v) = 2κ_k⁻¹ v² ∫₀^∞ γ_{a,k}(ξ) ℓ_k²(2vξ) ξ dξ`.
pub fn wick_symbol(w: &WickData, v: f64) -> Result<Complex64> {
    let s = w.spectral();
    weighted_wick_integral(&|xi| s.eval(xi), gamma_bound(&w.symbol), w.symbol.natural_scale(), w.level, v)
}

// `κ_k^(-1/2) v γ_{b,k}(v)` with `b(ξ) = κ_k^(-1/2) ξ g(ξ)`.
fn nested_wick(g: Arc<dyn Fn(f64) -> Result<Complex64> + Send + Sync>, k: u32, v: f64) -> Result<Complex64> {
    check_v(v)?;
    let c = wavelet_norm_sq(k).powf(-0.5);
    let b = move |xi: f64| match g(xi) {
        Ok(z) => z * (c * xi),
        Err(_) => Complex64::new(f64::NAN, 0.0),
    };
    let inner = VerticalSymbol::custom(Arc::new(b), None, None);
    let outer = SpectralFunction::new(inner, k).with_quadrature(wick_spec());
    Ok(outer.eval(v)? * (c * v))
}

/// The Wick symbol as a nested spectral function: with
/// `b(ξ) = κ_k^(-1/2) ξ γ_{a,k}(ξ)`, `ã_k(v) = κ_k^(-1/2) v γ_{b,k}(v)`.
/// An independent evaluation route for [`wick_symbol`].
pub fn wick_symbol_nested(w: &WickData, v: f64) -> Result<Complex64> {
    let s = w.spectral();
    nested_wick(Arc::new(move |xi| s.eval(xi)), w.level, v)
}

/// `ã_k(ζ,η) = (2tv / K_ζ(η)) ∫₀^∞ γ_{a,k}(ξ) ℓ_k(2vξ) ℓ_k(2tξ) e^(2πiξ(u-s)) ξ dξ`
/// for `ζ = (u,v)`, `η = (s,t)`. The exponential carries the same sign as in
/// [`reproducing_kernel`](crate::wavelet::reproducing_kernel), so `a ≡ 1`
/// gives `1`.
pub fn wick_function(w: &WickData, zeta: AffinePoint, eta: AffinePoint) -> Result<Complex64> {
    let spec = wick_spec();
    let one = |_: f64| Complex64::new(1.0, 0.0);
    let kernel = weighted_kernel_integral(w.level, zeta, eta, &one, 1.0, &spec)?;
    if kernel.norm() < KERNEL_ZERO_THRESHOLD {
        return Err(Error::KernelZero { magnitude: kernel.norm() });
    }
    let s = w.spectral();
    let first_err = RefCell::new(None);
    let g = |xi: f64| match s.eval(xi) {
        Ok(z) => z,
        Err(e) => {
            first_err.borrow_mut().get_or_insert(e);
            Complex64::new(f64::NAN, 0.0)
        }
    };
    let num = weighted_kernel_integral(w.level, zeta, eta, &g, gamma_bound(&w.symbol), &spec);
    if let Some(e) = first_err.into_inner() {
        return Err(e);
    }
    Ok(num? / kernel)
}

/// Wick symbol of `T_a T_b`: `2κ_k⁻¹ v² ∫₀^∞ γ_{a,k} γ_{b,k} ℓ_k²(2vξ) ξ dξ`.
pub fn star_product(a: &VerticalSymbol, b: &VerticalSymbol, k: u32, v: f64) -> Result<Complex64> {
    let (sa, sb) = (SpectralFunction::new(a.clone(), k), SpectralFunction::new(b.clone(), k));
    let g = |xi: f64| Ok(sa.eval(xi)? * sb.eval(xi)?);
    let scale = a.natural_scale().min(b.natural_scale());
    weighted_wick_integral(&g, gamma_bound(a) * gamma_bound(b), scale, k, v)
}

/// [`star_product`] through the nested route of [`wick_symbol_nested`]
/// applied to `γ_{a,k} γ_{b,k}`.
pub fn star_product_nested(a: &VerticalSymbol, b: &VerticalSymbol, k: u32, v: f64) -> Result<Complex64> {
    let (sa, sb) = (SpectralFunction::new(a.clone(), k), SpectralFunction::new(b.clone(), k));
    nested_wick(Arc::new(move |xi| Ok(sa.eval(xi)? * sb.eval(xi)?)), k, v)
}

/// Wick symbol of the operator whose spectral function is `γ`, for an
/// arbitrary bounded `γ` (e.g. a product of spectral functions).
pub fn wick_symbol_of_spectrum(
    gamma: &dyn Fn(f64) -> Result<Complex64>,
    sup: f64,
    k: u32,
    v: f64,
) -> Result<Complex64> {
    weighted_wick_integral(gamma, sup, 1.0, k, v)
}
