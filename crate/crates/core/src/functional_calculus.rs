//! Continuous functions on `[0,1]` that carry the level-0 indicator operators
//! to one another (`Δ_λ`, its inverse, transfers) and to arbitrary level-k
//! vertical-symbol operators (`∇_{a,λ}^(k)`), realized on spectral functions.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::ct_core::{SpectralFunction, VerticalSymbol};
use crate::ct_core::engine::symbol_integral;
use crate::error::{domain, Error, Result};
use crate::quadrature::damped::{laguerre_sq, PolyFactor};

/// Arguments closer to 1 than this are clamped in [`nabla`].
pub const NABLA_CLAMP: f64 = 1e-12;

/// Tolerance for the range of a base spectral function in
/// [`operator_function`].
pub const RANGE_TOL: f64 = 1e-12;

fn check_lambda(function: &'static str, lambda: f64) -> Result<()> {
    if lambda > 0.0 && lambda.is_finite() {
        Ok(())
    } else {
        Err(domain(function, format!("lambda = {lambda} must be positive and finite")))
    }
}

fn check_unit(function: &'static str, x: f64) -> Result<()> {
    if (0.0..=1.0).contains(&x) {
        Ok(())
    } else {
        Err(domain(function, format!("argument {x} outside [0, 1]")))
    }
}

// 1 - (1-x)^p, accurate for small x.
fn one_minus_power(x: f64, p: f64) -> f64 {
    if p == 1.0 {
        return x;
    }
    -(p * (-x).ln_1p()).exp_m1()
}

/// `Δ_λ(x) = 1 - (1-x)^(2λ)`.
pub fn delta(lambda: f64, x: f64) -> Result<f64> {
    check_lambda("delta", lambda)?;
    check_unit("delta", x)?;
    Ok(one_minus_power(x, 2.0 * lambda))
}

/// `Δ_λ⁻¹(y) = 1 - (1-y)^(1/(2λ))`.
pub fn delta_inverse(lambda: f64, y: f64) -> Result<f64> {
    check_lambda("delta_inverse", lambda)?;
    check_unit("delta_inverse", y)?;
    Ok(one_minus_power(y, 1.0 / (2.0 * lambda)))
}

/// `Δ_{λ₂}(Δ_{λ₁}⁻¹(x))`, carrying `γ_{χ[0,λ₁],0}` to `γ_{χ[0,λ₂],0}`.
pub fn transfer(lambda1: f64, lambda2: f64, x: f64) -> Result<f64> {
    delta(lambda2, delta_inverse(lambda1, x)?)
}

/// `∇_{a,λ}^(k)(x) = -(1/λ) ln(1-x) ∫₀^∞ a(v) (1-x)^(v/λ) L_k²(-(v/λ) ln(1-x)) dv`.
///
/// With `w = -(v/λ) ln(1-x)` this is `∫₀^∞ a(λw/L) e^(-w) L_k(w)² dw` for
/// `L = -ln(1-x)`, so `∇(1 - e^(-2λξ)) = γ_{a,k}(ξ)`. At `x = 0` the declared
/// `a_∞` is returned and at `x = 1` the declared `a0`; arguments within
/// [`NABLA_CLAMP`] of 1 are clamped.
pub fn nabla(a: &VerticalSymbol, lambda: f64, k: u32, x: f64) -> Result<Complex64> {
    check_lambda("nabla", lambda)?;
    check_unit("nabla", x)?;
    if x == 0.0 {
        return a.a_inf.ok_or_else(|| domain("nabla", "x = 0 needs the declared limit a_inf"));
    }
    if x == 1.0 {
        return a.a0.ok_or_else(|| domain("nabla", "x = 1 needs the declared limit a0"));
    }
    let log = -(-x.min(1.0 - NABLA_CLAMP)).ln_1p();
    let (sq, majorant) = laguerre_sq(k);
    let p = PolyFactor { eval: &sq, majorant, degree: 2 * k as usize };
    // Same tolerances as the spectral function of a at level k.
    let spec = SpectralFunction::new(a.clone(), k).quad;
    symbol_integral(a, lambda / log, &p, &spec)?.require()
}

/// A map on `[0,1]` built from `Δ`, `Δ⁻¹` and `∇`. A composite applies its
/// parts first to last.
#[derive(Clone)]
pub enum TransferMap {
    Delta(f64),
    DeltaInverse(f64),
    Nabla { symbol: VerticalSymbol, lambda: f64, level: u32 },
    Composite(Vec<TransferMap>),
}

impl fmt::Debug for TransferMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Delta(l) => write!(f, "Delta({l})"),
            Self::DeltaInverse(l) => write!(f, "DeltaInverse({l})"),
            Self::Nabla { symbol, lambda, level } => write!(f, "Nabla({}, {lambda}, {level})", symbol.kind_name()),
            Self::Composite(parts) => f.debug_list().entries(parts).finish(),
        }
    }
}

impl TransferMap {
    /// `Δ_{λ₂} ∘ Δ_{λ₁}⁻¹`.
    pub fn transfer(lambda1: f64, lambda2: f64) -> Result<Self> {
        Self::composite(vec![Self::DeltaInverse(lambda1), Self::Delta(lambda2)])
    }

    pub fn composite(parts: Vec<TransferMap>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::Invalid("composite transfer map needs at least one part".into()));
        }
        Ok(Self::Composite(parts))
    }

    pub fn apply(&self, x: f64) -> Result<Complex64> {
        match self {
            Self::Delta(l) => Ok(delta(*l, x)?.into()),
            Self::DeltaInverse(l) => Ok(delta_inverse(*l, x)?.into()),
            Self::Nabla { symbol, lambda, level } => nabla(symbol, *lambda, *level, x),
            Self::Composite(parts) => {
                let mut y = Complex64::new(x, 0.0);
                for (i, part) in parts.iter().enumerate() {
                    if i > 0 && y.im != 0.0 {
                        return Err(domain("TransferMap::apply", format!("intermediate value {y} is not real")));
                    }
                    y = part.apply(y.re)?;
                }
                Ok(y)
            }
        }
    }

    /// Whether every value is real.
    pub fn is_real(&self) -> bool {
        match self {
            Self::Delta(_) | Self::DeltaInverse(_) => true,
            Self::Nabla { symbol, .. } => symbol.is_real(),
            Self::Composite(parts) => parts.last().is_some_and(Self::is_real),
        }
    }
}

/// `ξ ↦ h(γ_base(ξ))`, the spectral function of `h(T)` for the operator `T`
/// whose spectral function is `γ_base`.
#[derive(Clone)]
pub struct OperatorFunction {
    h: Arc<dyn Fn(f64) -> Result<Complex64> + Send + Sync>,
    pub base: SpectralFunction,
}

/// Applies `h`, defined on `[0,1]`, to the operator with spectral function
/// `base`. Values of `γ_base` must be real and lie in `[0,1]` up to
/// [`RANGE_TOL`].
pub fn operator_function(
    h: impl Fn(f64) -> Result<Complex64> + Send + Sync + 'static,
    base: SpectralFunction,
) -> OperatorFunction {
    OperatorFunction { h: Arc::new(h), base }
}

impl OperatorFunction {
    pub fn eval(&self, xi: f64) -> Result<Complex64> {
        let g = self.base.eval(xi)?;
        if g.im.abs() > RANGE_TOL || g.re < -RANGE_TOL || g.re > 1.0 + RANGE_TOL {
            return Err(Error::RangeViolation { value: if g.im.abs() > RANGE_TOL { g.norm() } else { g.re }, lo: 0.0, hi: 1.0 });
        }
        (self.h)(g.re.clamp(0.0, 1.0))
    }
}
