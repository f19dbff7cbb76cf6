//! Integration over finite intervals and the half-line, including
//! oscillatory integrands `f(x) e^(iωx)`.
//!
//! All integrands are complex-valued. A non-finite integrand value aborts
//! with [`Error::NonFinite`](crate::Error::NonFinite); failure to meet the
//! tolerance is reported through [`IntegrationResult::converged`].

mod adaptive;
pub(crate) mod damped;
mod filon;
mod rules;

use num_complex::Complex64;

pub use filon::spherical_bessel_all;
pub use rules::{gauss_kronrod_15, gauss_laguerre, gauss_legendre, Rule, RuleEstimate};

use crate::error::{Error, Result};
use adaptive::{adaptive, Budget};

/// Half-line integration strategy.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scheme {
    /// Gauss–Laguerre against the weight `e^(-x)`, with an adaptive fallback.
    GaussLaguerre,
    /// Adaptive Gauss–Kronrod after mapping `[0, ∞)` onto `[0, 1)`.
    AdaptiveSubdivision,
    /// Adaptive Gauss–Kronrod on `[0, T]` plus Gauss–Laguerre on `[T, ∞)`.
    TailSplit,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureSpec {
    pub scheme: Scheme,
    pub node_count: usize,
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub tail_cutoff: f64,
    pub max_panels: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            scheme: Scheme::GaussLaguerre,
            node_count: 128,
            abs_tol: 1e-13,
            rel_tol: 1e-13,
            tail_cutoff: 50.0,
            max_panels: 4000,
        }
    }
}

impl QuadratureSpec {
    pub fn with_scheme(mut self, scheme: Scheme) -> Self {
        self.scheme = scheme;
        self
    }

    pub fn with_tol(mut self, abs_tol: f64, rel_tol: f64) -> Self {
        self.abs_tol = abs_tol;
        self.rel_tol = rel_tol;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0 && self.rel_tol > 0.0) {
            return Err(Error::Invalid(format!(
                "tolerances must be positive (abs {}, rel {})",
                self.abs_tol, self.rel_tol
            )));
        }
        if self.node_count < 2 {
            return Err(Error::Invalid(format!("node_count = {} must be at least 2", self.node_count)));
        }
        if !(self.tail_cutoff > 0.0) {
            return Err(Error::Invalid(format!("tail_cutoff = {} must be positive", self.tail_cutoff)));
        }
        Ok(())
    }

    fn budget(&self) -> Budget {
        Budget { abs_tol: self.abs_tol, rel_tol: self.rel_tol, max_panels: self.max_panels }
    }

    pub(crate) fn target(&self, value: Complex64) -> f64 {
        self.budget().target(value)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IntegrationResult {
    pub value: Complex64,
    pub error_estimate: f64,
    pub evaluations: usize,
    pub converged: bool,
}

impl IntegrationResult {
    /// The value, or [`Error::NotConverged`] when the tolerance was missed.
    pub fn require(self) -> Result<Complex64> {
        if self.converged {
            Ok(self.value)
        } else {
            Err(Error::NotConverged { value: self.value.re, error_estimate: self.error_estimate })
        }
    }

    fn combine(self, other: IntegrationResult, spec: &QuadratureSpec) -> Self {
        let value = self.value + other.value;
        let error_estimate = self.error_estimate + other.error_estimate;
        Self {
            value,
            error_estimate,
            evaluations: self.evaluations + other.evaluations,
            converged: self.converged && other.converged && error_estimate <= spec.target(value),
        }
    }
}

fn check_interval(a: f64, b: f64) -> Result<()> {
    if a.is_finite() && b.is_finite() && a <= b {
        Ok(())
    } else {
        Err(Error::Invalid(format!("integration interval [{a}, {b}] is not a finite ordered pair")))
    }
}

/// `∫_a^b f` by adaptive Gauss–Kronrod.
pub fn integrate_finite<F: Fn(f64) -> Complex64 + ?Sized>(f: &F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<IntegrationResult> {
    integrate_finite_with_points(f, &[a, b], spec)
}

/// `∫ f` over `[points[0], points.last()]`, never placing a node on the
/// interior break points (use for jumps and kinks).
pub fn integrate_finite_with_points<F: Fn(f64) -> Complex64 + ?Sized>(
    f: &F,
    points: &[f64],
    spec: &QuadratureSpec,
) -> Result<IntegrationResult> {
    spec.validate()?;
    let (Some(&a), Some(&b)) = (points.first(), points.last()) else {
        return Err(Error::Invalid("no integration interval".into()));
    };
    check_interval(a, b)?;
    if points.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::Invalid("break points must be non-decreasing".into()));
    }
    adaptive(f, |g, a, b| gauss_kronrod_15(g, a, b), points, spec.budget())
}

/// `∫₀^∞ f` using the scheme of `spec`.
pub fn integrate_halfline<F: Fn(f64) -> Complex64 + ?Sized>(f: &F, spec: &QuadratureSpec) -> Result<IntegrationResult> {
    integrate_halfline_with_points(f, &[], spec)
}

/// As [`integrate_halfline`], with interior break points for the adaptive
/// stages.
pub fn integrate_halfline_with_points<F: Fn(f64) -> Complex64 + ?Sized>(
    f: &F,
    points: &[f64],
    spec: &QuadratureSpec,
) -> Result<IntegrationResult> {
    spec.validate()?;
    match spec.scheme {
        Scheme::GaussLaguerre => {
            let weighted = |x: f64| f(x) * x.exp();
            let gl = gauss_laguerre_pair(&weighted, spec)?;
            if gl.converged {
                return Ok(gl);
            }
            let fallback = mapped_halfline(f, points, spec)?;
            let evaluations = gl.evaluations + fallback.evaluations;
            Ok(IntegrationResult { evaluations, ..fallback })
        }
        Scheme::AdaptiveSubdivision => mapped_halfline(f, points, spec),
        Scheme::TailSplit => {
            let t = spec.tail_cutoff;
            let mut pts = vec![0.0];
            pts.extend(points.iter().copied().filter(|&p| p > 0.0 && p < t));
            pts.push(t);
            let head = integrate_finite_with_points(f, &pts, spec)?;
            let shifted = |y: f64| f(t + y) * y.exp();
            let tail = gauss_laguerre_pair(&shifted, spec)?;
            Ok(head.combine(tail, spec))
        }
    }
}

/// `∫₀^∞ e^(-x) g(x) dx` by Gauss–Laguerre with `node_count` nodes; the
/// error estimate is the difference from the rule with half as many nodes.
pub fn integrate_laguerre_weighted<F: Fn(f64) -> Complex64 + ?Sized>(g: &F, spec: &QuadratureSpec) -> Result<IntegrationResult> {
    spec.validate()?;
    gauss_laguerre_pair(g, spec)
}

fn gauss_laguerre_pair<F: Fn(f64) -> Complex64 + ?Sized>(g: &F, spec: &QuadratureSpec) -> Result<IntegrationResult> {
    let apply = |n: usize| -> Result<Complex64> {
        let rule = gauss_laguerre(n);
        let mut sum = Complex64::default();
        for (x, w) in rule.nodes.iter().zip(&rule.weights) {
            if *w == 0.0 {
                continue;
            }
            let y = g(*x);
            let term = y * *w;
            if !(term.re.is_finite() && term.im.is_finite()) {
                return Err(Error::NonFinite { abscissa: *x });
            }
            sum += term;
        }
        Ok(sum)
    };
    let n = spec.node_count;
    let fine = apply(n)?;
    let coarse = apply((n / 2).max(2))?;
    let error_estimate = (fine - coarse).norm();
    Ok(IntegrationResult {
        value: fine,
        error_estimate,
        evaluations: n + n / 2,
        converged: error_estimate <= spec.target(fine),
    })
}

fn mapped_halfline<F: Fn(f64) -> Complex64 + ?Sized>(f: &F, points: &[f64], spec: &QuadratureSpec) -> Result<IntegrationResult> {
    let mapped = |t: f64| {
        let s = 1.0 - t;
        if s <= 0.0 {
            return Complex64::default();
        }
        f(t / s) / (s * s)
    };
    let mut pts = vec![0.0];
    let mut interior: Vec<f64> = points.iter().copied().filter(|p| *p > 0.0 && p.is_finite()).collect();
    interior.sort_by(f64::total_cmp);
    pts.extend(interior.iter().map(|x| x / (1.0 + x)));
    pts.push(1.0);
    adaptive(&mapped, |g, a, b| gauss_kronrod_15(g, a, b), &pts, spec.budget()).map_err(|e| match e {
        Error::NonFinite { abscissa: t } => Error::NonFinite { abscissa: t / (1.0 - t) },
        other => other,
    })
}

/// `∫_a^b f(x) e^(iωx) dx` by adaptive Filon–Legendre panels.
pub fn integrate_oscillatory<F: Fn(f64) -> Complex64 + ?Sized>(
    f: &F,
    omega: f64,
    a: f64,
    b: f64,
    spec: &QuadratureSpec,
) -> Result<IntegrationResult> {
    integrate_oscillatory_with_points(f, omega, &[a, b], spec)
}

/// As [`integrate_oscillatory`] over `[points[0], points.last()]` with
/// interior break points.
pub fn integrate_oscillatory_with_points<F: Fn(f64) -> Complex64 + ?Sized>(
    f: &F,
    omega: f64,
    points: &[f64],
    spec: &QuadratureSpec,
) -> Result<IntegrationResult> {
    spec.validate()?;
    let (Some(&a), Some(&b)) = (points.first(), points.last()) else {
        return Err(Error::Invalid("no integration interval".into()));
    };
    check_interval(a, b)?;
    adaptive(f, |g, a, b| filon::filon_panel(g, omega, a, b), &seed_panels(points, omega), spec.budget())
}

// Splits long intervals so the initial panels span a bounded number of periods.
fn seed_panels(points: &[f64], omega: f64) -> Vec<f64> {
    let mut out = vec![points[0]];
    for w in points.windows(2) {
        let len = w[1] - w[0];
        let periods = len * omega.abs() / std::f64::consts::TAU;
        let pieces = (periods / 64.0).ceil().clamp(1.0, 256.0) as usize;
        for i in 1..pieces {
            out.push(w[0] + len * i as f64 / pieces as f64);
        }
        out.push(w[1]);
    }
    out
}

/// `∫₀^∞ f(x) e^(iωx) dx`.
///
/// The half-line is covered by blocks `[0, 1], [1, 2], [2, 4], ...`, each
/// integrated by adaptive Filon panels, until the amplitude beyond the last
/// block bounds the remainder (by `2|f|/|ω|` for oscillating integrands,
/// `|f|·x` otherwise) below a tenth of the tolerance.
pub fn integrate_oscillatory_halfline<F: Fn(f64) -> Complex64 + ?Sized>(
    f: &F,
    omega: f64,
    spec: &QuadratureSpec,
) -> Result<IntegrationResult> {
    integrate_oscillatory_tail(f, omega, 0.0, 1.0, spec)
}

/// `∫_a^∞ f(x) e^(iωx) dx` with the first block `[a, a + first]` and blocks
/// doubling in length afterwards.
pub fn integrate_oscillatory_tail<F: Fn(f64) -> Complex64 + ?Sized>(
    f: &F,
    omega: f64,
    a: f64,
    first: f64,
    spec: &QuadratureSpec,
) -> Result<IntegrationResult> {
    spec.validate()?;
    if !(a.is_finite() && first > 0.0) {
        return Err(Error::Invalid(format!("tail start {a} / first block {first} invalid")));
    }
    let mut total = IntegrationResult {
        value: Complex64::default(),
        error_estimate: 0.0,
        evaluations: 0,
        converged: true,
    };
    let mut lo = a;
    let mut len = first;
    for block in 0..96 {
        let hi = lo + len;
        let block_spec = QuadratureSpec {
            abs_tol: 0.25 * spec.target(total.value).max(spec.abs_tol),
            ..*spec
        };
        let r = integrate_oscillatory(f, omega, lo, hi, &block_spec)?;
        total.value += r.value;
        total.error_estimate += r.error_estimate;
        total.evaluations += r.evaluations;
        total.converged &= r.converged;
        let mut amp: f64 = 0.0;
        for s in [hi, hi + 0.5 * len, hi + len, hi + 3.0 * len] {
            let v = f(s);
            total.evaluations += 1;
            if !(v.re.is_finite() && v.im.is_finite()) {
                return Err(Error::NonFinite { abscissa: s });
            }
            amp = amp.max(v.norm());
        }
        let tail = if omega != 0.0 { 2.0 * amp / omega.abs() } else { amp * (hi - a + len) };
        if block >= 1 && tail < 0.1 * spec.target(total.value) {
            total.error_estimate += tail;
            total.converged &= total.error_estimate <= spec.target(total.value);
            return Ok(total);
        }
        lo = hi;
        len *= 2.0;
    }
    total.converged = false;
    Ok(total)
}
