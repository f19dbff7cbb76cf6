//! The spectral function `γ_{a,k}(ξ) = 2ξ ∫₀^∞ a(v) ℓ_k²(2vξ) dv`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;

use super::engine::symbol_integral;
use crate::quadrature::damped::{laguerre_sq, PolyFactor};
use super::symbol::{SymbolKind, VerticalSymbol};
use crate::error::{domain, Error, Result};
use crate::quadrature::{IntegrationResult, QuadratureSpec};
use crate::special_fn::{gen_binomial, CumulativeLaguerreSq};

/// How a [`SpectralFunction`] is evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Quadrature,
    Series,
    ClosedForm,
}

/// `γ_{a,k}` as an evaluable function of `ξ > 0`.
#[derive(Clone, Debug)]
pub struct SpectralFunction {
    pub symbol: VerticalSymbol,
    pub level: u32,
    pub method: Method,
    pub quad: QuadratureSpec,
}

/// Value with its error estimate (0 for closed forms).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GammaValue {
    pub value: Complex64,
    pub error_estimate: f64,
}

/// Default tolerances for spectral-function quadrature.
pub fn gamma_quadrature_spec() -> QuadratureSpec {
    QuadratureSpec::default().with_tol(1e-12, 1e-12)
}

impl SpectralFunction {
    /// Uses the closed form when one exists, quadrature otherwise. The closed
    /// form for `inv_sqrt_sin_inv` disagrees with the defining integral, so
    /// that kind always defaults to quadrature.
    pub fn new(symbol: VerticalSymbol, level: u32) -> Self {
        let method = if has_closed_form(&symbol, level) && !matches!(symbol.kind, SymbolKind::InvSqrtSinInv) {
            Method::ClosedForm
        } else {
            Method::Quadrature
        };
        let quad = match symbol.kind {
            // γ decays to ~1e-14 at large ξ here, below what the oscillatory
            // tail blocks resolve at 1e-12.
            SymbolKind::InvSqrtSinInv => gamma_quadrature_spec().with_tol(1e-10, 1e-10),
            _ => gamma_quadrature_spec(),
        };
        Self { symbol, level, method, quad }
    }

    pub fn with_method(mut self, method: Method) -> Result<Self> {
        if method == Method::ClosedForm && !has_closed_form(&self.symbol, self.level) {
            return Err(Error::NoClosedForm { kind: self.symbol.kind_name().into(), level: self.level });
        }
        self.method = method;
        Ok(self)
    }

    pub fn with_quadrature(mut self, quad: QuadratureSpec) -> Self {
        self.quad = quad;
        self
    }

    pub fn eval(&self, xi: f64) -> Result<Complex64> {
        Ok(self.eval_with_error(xi)?.value)
    }

    /// Evaluation with error estimate; quadrature that misses its tolerance
    /// is an [`Error::NotConverged`].
    pub fn eval_with_error(&self, xi: f64) -> Result<GammaValue> {
        check_xi(xi)?;
        match self.method {
            Method::ClosedForm => Ok(GammaValue {
                value: gamma_closed_form(&self.symbol, self.level, xi)?,
                error_estimate: 0.0,
            }),
            Method::Quadrature => {
                let r = gamma_quadrature(&self.symbol, self.level, xi, &self.quad)?;
                let value = r.require()?;
                Ok(GammaValue { value, error_estimate: r.error_estimate })
            }
            Method::Series => Ok(GammaValue { value: gamma_series(self, xi)?, error_estimate: f64::NAN }),
        }
    }
}

/// `γ_{a,k}(ξ)` by the method recorded in `s`.
pub fn gamma(s: &SpectralFunction, xi: f64) -> Result<Complex64> {
    s.eval(xi)
}

fn check_xi(xi: f64) -> Result<()> {
    if xi > 0.0 && xi.is_finite() {
        Ok(())
    } else {
        Err(domain("gamma", format!("xi = {xi} must be positive and finite")))
    }
}

/// Quadrature of `∫₀^∞ a(x/(2ξ)) e^(-x) L_k(x)² dx`.
pub fn gamma_quadrature(symbol: &VerticalSymbol, k: u32, xi: f64, spec: &QuadratureSpec) -> Result<IntegrationResult> {
    check_xi(xi)?;
    let (eval, majorant) = laguerre_sq(k);
    let p = PolyFactor { eval: &eval, majorant, degree: 2 * k as usize };
    symbol_integral(symbol, 0.5 / xi, &p, spec)
}

pub fn has_closed_form(symbol: &VerticalSymbol, k: u32) -> bool {
    match symbol.kind {
        SymbolKind::Constant(_) | SymbolKind::Indicator { .. } | SymbolKind::OscExp => true,
        SymbolKind::Sine | SymbolKind::InvSqrtSinInv => k == 1,
        SymbolKind::Tabulated { .. } | SymbolKind::Custom(_) => false,
    }
}

pub(crate) fn cumulative(k: u32) -> Arc<CumulativeLaguerreSq> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<CumulativeLaguerreSq>>>> = OnceLock::new();
    let map = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    map.lock()
        .expect("cumulative cache poisoned")
        .entry(k)
        .or_insert_with(|| Arc::new(CumulativeLaguerreSq::new(k)))
        .clone()
}

/// The explicit formulas for `γ_{a,k}`:
///
/// * constant `c`: `c`;
/// * indicator `χ_[0,λ]`: `1 - N_{2k}(2λξ) e^(-2λξ)`;
/// * sine, `k = 1`: `2ξ(1 - 16ξ² + 48ξ⁴)/(1 + 4ξ²)³`;
/// * `e^(2iv)`: `(-1)^k (ξ - i)^(-2k-1) Σ_j (-1)^j C(k,j)² ξ^(2j+1)`;
/// * `v^(-1/2) sin(1/v)`, `k = 1`: the known expression
///   `(√(2π)/4) e^(-2√ξ) [(2√ξ - 8ξ) cos(2√ξ) + (3 - 2√ξ) sin(2√ξ)] / (2√ξ)`,
///   returned unchanged. It equals the defining integral divided by `2ξ`.
pub fn gamma_closed_form(symbol: &VerticalSymbol, k: u32, xi: f64) -> Result<Complex64> {
    check_xi(xi)?;
    let none = || Error::NoClosedForm { kind: symbol.kind_name().into(), level: k };
    match &symbol.kind {
        SymbolKind::Constant(c) => Ok(*c),
        SymbolKind::Indicator { lambda } => Ok(Complex64::new(cumulative(k).eval(2.0 * lambda * xi), 0.0)),
        SymbolKind::Sine if k == 1 => {
            let x2 = xi * xi;
            let d = 1.0 + 4.0 * x2;
            Ok(Complex64::new(2.0 * xi * (1.0 - 16.0 * x2 + 48.0 * x2 * x2) / (d * d * d), 0.0))
        }
        SymbolKind::OscExp => {
            let mut sum = 0.0;
            for j in 0..=k {
                let c = gen_binomial(k as f64, j);
                let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                sum += sign * c * c * xi.powi(2 * j as i32 + 1);
            }
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            Ok(Complex64::new(sign * sum, 0.0) / Complex64::new(xi, -1.0).powi(2 * k as i32 + 1))
        }
        SymbolKind::InvSqrtSinInv if k == 1 => {
            let r = 2.0 * xi.sqrt();
            let pre = (2.0 * std::f64::consts::PI).sqrt() / 4.0 * (-r).exp();
            Ok(Complex64::new(pre * ((r - 8.0 * xi) * r.cos() / r + (3.0 - r) * r.sin() / r), 0.0))
        }
        _ => Err(none()),
    }
}

/// `γ_{a,k}` from its expansion in the moments `M_r(ξ) = ∫ a(v) v^r e^(-2vξ) dv`:
/// `Σ_i Σ_j Σ_r c(k,i,j,r) (1-4ξ)^(2i-j) (4ξ)^(j+1) M_r` with
/// `c(k,i,j,r) = C(2k-2i,k-i) C(2i,j) C(j,r) C(2i,i) (-1)^r / (r! 2^(2k+1))`.
pub fn gamma_series(s: &SpectralFunction, xi: f64) -> Result<Complex64> {
    check_xi(xi)?;
    let k = s.level;
    let moments: Vec<Complex64> = (0..=2 * k).map(|r| moment(&s.symbol, r, xi, &s.quad)).collect::<Result<_>>()?;
    let scale = 0.5f64.powi(2 * k as i32 + 1);
    let mut total = Complex64::default();
    for i in 0..=k {
        let ci = gen_binomial((2 * k - 2 * i) as f64, k - i) * gen_binomial((2 * i) as f64, i);
        for j in 0..=2 * i {
            let cj = gen_binomial((2 * i) as f64, j);
            let geom = (1.0 - 4.0 * xi).powi((2 * i - j) as i32) * (4.0 * xi).powi(j as i32 + 1);
            let mut inner = Complex64::default();
            let mut fact = 1.0;
            for r in 0..=j {
                if r > 0 {
                    fact *= r as f64;
                }
                let sign = if r % 2 == 0 { 1.0 } else { -1.0 };
                inner += moments[r as usize] * (sign * gen_binomial(j as f64, r) / fact);
            }
            total += inner * (scale * ci * cj * geom);
        }
    }
    Ok(total)
}

/// `M_r(ξ) = ∫₀^∞ a(v) v^r e^(-2vξ) dv`, in closed form where possible.
pub fn moment(symbol: &VerticalSymbol, r: u32, xi: f64, spec: &QuadratureSpec) -> Result<Complex64> {
    let fact: f64 = (1..=r).map(f64::from).product();
    let q = 2.0 * xi;
    match &symbol.kind {
        SymbolKind::Constant(c) => Ok(c * (fact / q.powi(r as i32 + 1))),
        SymbolKind::Indicator { lambda } => Ok(Complex64::new(lower_gamma_scaled(r, q * lambda) * fact / q.powi(r as i32 + 1), 0.0)),
        SymbolKind::Sine => Ok(Complex64::new((fact / Complex64::new(q, -1.0).powi(r as i32 + 1)).im, 0.0)),
        SymbolKind::OscExp => Ok(fact / Complex64::new(q, -2.0).powi(r as i32 + 1)),
        _ => {
            // x = 2ξv: M_r = (2ξ)^(-r-1) ∫ a(x/(2ξ)) x^r e^(-x) dx
            let eval = move |x: f64| x.powi(r as i32);
            let mut majorant = vec![0.0; r as usize + 1];
            majorant[r as usize] = 1.0;
            let p = PolyFactor { eval: &eval, majorant, degree: r as usize };
            let res = symbol_integral(symbol, 1.0 / q, &p, spec)?;
            Ok(res.require()? / q.powi(r as i32 + 1))
        }
    }
}

/// Regularized lower incomplete Gamma `P(r+1, y) = 1 - e^(-y) Σ_{p≤r} y^p/p!`.
fn lower_gamma_scaled(r: u32, y: f64) -> f64 {
    if y < r as f64 + 1.0 {
        // y^(r+1) e^(-y) Σ_m y^m / (r+1)_(m+1), free of cancellation
        let mut term = 1.0 / (r + 1) as f64;
        let mut sum = term;
        for m in 1..500 {
            term *= y / (r + 1 + m) as f64;
            sum += term;
            if term < 1e-17 * sum {
                break;
            }
        }
        let fact: f64 = (1..=r).map(f64::from).product();
        y.powi(r as i32 + 1) * (-y).exp() * sum / fact
    } else {
        let mut term = 1.0;
        let mut sum = 1.0;
        for p in 1..=r {
            term *= y / p as f64;
            sum += term;
        }
        1.0 - (-y).exp() * sum
    }
}
