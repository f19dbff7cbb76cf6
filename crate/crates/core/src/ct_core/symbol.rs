use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// User-supplied symbol `v ↦ a(v)`.
pub type SymbolFn = Arc<dyn Fn(f64) -> Complex64 + Send + Sync>;

/// The family a vertical symbol belongs to.
#[derive(Clone)]
pub enum SymbolKind {
    /// `a(v) = c`.
    Constant(Complex64),
    /// `a(v) = χ_[0,λ](v)`.
    Indicator { lambda: f64 },
    /// `a(v) = sin v`.
    Sine,
    /// `a(v) = e^(2iv)`.
    OscExp,
    /// `a(v) = v^(-1/2) sin(1/v)`, unbounded at 0.
    InvSqrtSinInv,
    /// Piecewise-linear interpolation of `values` on `grid`.
    Tabulated { grid: Vec<f64>, values: Vec<Complex64> },
    Custom(SymbolFn),
}

impl fmt::Debug for SymbolKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Constant(c) => write!(f, "Constant({c})"),
            Self::Indicator { lambda } => write!(f, "Indicator({lambda})"),
            Self::Sine => f.write_str("Sine"),
            Self::OscExp => f.write_str("OscExp"),
            Self::InvSqrtSinInv => f.write_str("InvSqrtSinInv"),
            Self::Tabulated { grid, .. } => write!(f, "Tabulated({} knots)", grid.len()),
            Self::Custom(_) => f.write_str("Custom"),
        }
    }
}

/// A symbol `a(v)`, `v > 0`, depending on scale only.
///
/// `a0` and `a_inf` are the declared limits at `v → 0` and `v → ∞`; they are
/// what [`limit_at_endpoints`](super::limit_at_endpoints) compares against.
/// For tabulated symbols they also replace the constant continuation outside
/// the grid.
#[derive(Clone, Debug)]
pub struct VerticalSymbol {
    pub kind: SymbolKind,
    pub a0: Option<Complex64>,
    pub a_inf: Option<Complex64>,
    /// Upper bound for `|a|`, used in tail estimates. `None` for unbounded
    /// symbols and for custom symbols without a declared bound (sampled then).
    pub sup: Option<f64>,
}

impl VerticalSymbol {
    pub fn constant(c: Complex64) -> Self {
        Self { kind: SymbolKind::Constant(c), a0: Some(c), a_inf: Some(c), sup: Some(c.norm()) }
    }

    pub fn real_constant(c: f64) -> Self {
        Self::constant(Complex64::new(c, 0.0))
    }

    pub fn indicator(lambda: f64) -> Result<Self> {
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(Error::Invalid(format!("indicator length lambda = {lambda} must be positive")));
        }
        Ok(Self {
            kind: SymbolKind::Indicator { lambda },
            a0: Some(Complex64::new(1.0, 0.0)),
            a_inf: Some(Complex64::default()),
            sup: Some(1.0),
        })
    }

    /// `sin v`; it has no limit at infinity, so only `a0 = 0` is declared.
    pub fn sine() -> Self {
        Self { kind: SymbolKind::Sine, a0: Some(Complex64::default()), a_inf: None, sup: Some(1.0) }
    }

    /// `e^(2iv)`. It has no limit at infinity; `a_inf` is declared as its mean
    /// value 0, which is the limit of `γ` at 0.
    pub fn osc_exp() -> Self {
        Self {
            kind: SymbolKind::OscExp,
            a0: Some(Complex64::new(1.0, 0.0)),
            a_inf: Some(Complex64::default()),
            sup: Some(1.0),
        }
    }

    pub fn inv_sqrt_sin_inv() -> Self {
        Self { kind: SymbolKind::InvSqrtSinInv, a0: None, a_inf: Some(Complex64::default()), sup: None }
    }

    pub fn tabulated(grid: Vec<f64>, values: Vec<Complex64>) -> Result<Self> {
        if grid.is_empty() || grid.len() != values.len() {
            return Err(Error::Invalid(format!(
                "tabulated symbol needs matching non-empty grid and values ({} vs {})",
                grid.len(),
                values.len()
            )));
        }
        if grid[0] <= 0.0 || grid.windows(2).any(|w| w[1] <= w[0]) || grid.iter().any(|g| !g.is_finite()) {
            return Err(Error::Invalid("tabulated grid must be positive and strictly increasing".into()));
        }
        let sup = values.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let a0 = values[0];
        let a_inf = values[values.len() - 1];
        Ok(Self { kind: SymbolKind::Tabulated { grid, values }, a0: Some(a0), a_inf: Some(a_inf), sup: Some(sup) })
    }

    pub fn custom(f: SymbolFn, a0: Option<Complex64>, a_inf: Option<Complex64>) -> Self {
        Self { kind: SymbolKind::Custom(f), a0, a_inf, sup: None }
    }

    pub fn with_limits(mut self, a0: Option<Complex64>, a_inf: Option<Complex64>) -> Self {
        self.a0 = a0;
        self.a_inf = a_inf;
        self
    }

    pub fn with_sup(mut self, sup: f64) -> Self {
        self.sup = Some(sup);
        self
    }

    /// Short name of the kind, as used by the command line.
    pub fn kind_name(&self) -> &'static str {
        match self.kind {
            SymbolKind::Constant(_) => "constant",
            SymbolKind::Indicator { .. } => "indicator",
            SymbolKind::Sine => "sine",
            SymbolKind::OscExp => "osc_exp",
            SymbolKind::InvSqrtSinInv => "inv_sqrt_sin_inv",
            SymbolKind::Tabulated { .. } => "tabulated",
            SymbolKind::Custom(_) => "custom",
        }
    }

    /// Scale on which the symbol varies (λ for indicators, 1 otherwise).
    pub fn natural_scale(&self) -> f64 {
        match self.kind {
            SymbolKind::Indicator { lambda } => lambda,
            _ => 1.0,
        }
    }

    pub fn is_real(&self) -> bool {
        match &self.kind {
            SymbolKind::Constant(c) => c.im == 0.0,
            SymbolKind::Indicator { .. } | SymbolKind::Sine | SymbolKind::InvSqrtSinInv => true,
            SymbolKind::OscExp => false,
            SymbolKind::Tabulated { values, .. } => values.iter().all(|z| z.im == 0.0),
            SymbolKind::Custom(_) => false,
        }
    }

    pub fn eval(&self, v: f64) -> Complex64 {
        match &self.kind {
            SymbolKind::Constant(c) => *c,
            SymbolKind::Indicator { lambda } => {
                Complex64::new(if (0.0..=*lambda).contains(&v) { 1.0 } else { 0.0 }, 0.0)
            }
            SymbolKind::Sine => Complex64::new(v.sin(), 0.0),
            SymbolKind::OscExp => Complex64::from_polar(1.0, 2.0 * v),
            SymbolKind::InvSqrtSinInv => Complex64::new((1.0 / v).sin() / v.sqrt(), 0.0),
            SymbolKind::Tabulated { grid, values } => {
                let last = grid.len() - 1;
                if v < grid[0] {
                    return self.a0.unwrap_or(values[0]);
                }
                if v > grid[last] {
                    return self.a_inf.unwrap_or(values[last]);
                }
                let i = grid.partition_point(|g| *g <= v).clamp(1, last.max(1));
                if last == 0 {
                    return values[0];
                }
                let (g0, g1) = (grid[i - 1], grid[i]);
                let w = (v - g0) / (g1 - g0);
                values[i - 1] * (1.0 - w) + values[i] * w
            }
            SymbolKind::Custom(f) => f(v),
        }
    }

    /// Bound on `|a|`: declared, or sampled on a wide logarithmic grid.
    pub(crate) fn sup_estimate(&self) -> f64 {
        if let Some(s) = self.sup {
            return s;
        }
        (0..=320)
            .map(|j| self.eval(10f64.powf(-8.0 + j as f64 * 0.05)).norm())
            .filter(|x| x.is_finite())
            .fold(0.0, f64::max)
    }
}
