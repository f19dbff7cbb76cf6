//! Filon-type panel rule for `∫ f(x) e^(iωx) dx`.
//!
//! The amplitude is projected onto Legendre polynomials on each panel and the
//! modified moments `∫₋₁¹ P_n(t) e^(iκt) dt = 2 iⁿ j_n(κ)` are applied exactly,
//! so the cost per panel does not grow with `ω`.

use num_complex::Complex64;

use super::rules::{check, gauss_legendre, RuleEstimate};
use crate::error::Result;

pub(crate) const FILON_NODES: usize = 24;

/// Spherical Bessel functions `j_0(κ), ..., j_{n_max}(κ)`.
pub fn spherical_bessel_all(n_max: usize, kappa: f64) -> Vec<f64> {
    let mut out = vec![0.0; n_max + 1];
    let x = kappa.abs();
    if x == 0.0 {
        out[0] = 1.0;
        return out;
    }
    if x < 1.0 {
        // power series, convergent without cancellation for small arguments
        let mut lead = 1.0;
        for (n, slot) in out.iter_mut().enumerate() {
            if n > 0 {
                lead *= x / (2 * n + 1) as f64;
            }
            let mut term = 1.0;
            let mut sum = 1.0;
            for m in 1..40 {
                term *= -0.5 * x * x / (m as f64 * (2 * n + 2 * m + 1) as f64);
                sum += term;
                if term.abs() < 1e-17 * sum.abs() {
                    break;
                }
            }
            *slot = lead * sum;
        }
    } else if x > n_max as f64 {
        let (s, c) = x.sin_cos();
        out[0] = s / x;
        if n_max >= 1 {
            out[1] = s / (x * x) - c / x;
        }
        for n in 1..n_max {
            out[n + 1] = (2 * n + 1) as f64 / x * out[n] - out[n - 1];
        }
    } else {
        // Miller's backward recurrence, normalized against j_0 or j_1
        let start = n_max + 20 + x as usize;
        let mut above = 0.0;
        let mut cur = 1e-300;
        let mut vals = vec![0.0; n_max + 1];
        for n in (1..=start).rev() {
            let below = (2 * n + 1) as f64 / x * cur - above;
            above = cur;
            cur = below;
            if n - 1 <= n_max {
                vals[n - 1] = cur;
            }
            if cur.abs() > 1e250 {
                cur *= 1e-250;
                above *= 1e-250;
                vals.iter_mut().for_each(|v| *v *= 1e-250);
            }
        }
        let (s, c) = x.sin_cos();
        let j0 = s / x;
        let j1 = s / (x * x) - c / x;
        let scale = if j0.abs() >= j1.abs() || n_max == 0 { j0 / vals[0] } else { j1 / vals[1] };
        for (o, v) in out.iter_mut().zip(vals) {
            *o = v * scale;
        }
    }
    if kappa < 0.0 {
        for (n, v) in out.iter_mut().enumerate() {
            if n % 2 == 1 {
                *v = -*v;
            }
        }
    }
    out
}

/// `∫_a^b f(x) e^(iωx) dx` on one panel, with an error estimate from the
/// trailing Legendre coefficients of the amplitude.
pub(crate) fn filon_panel<F: Fn(f64) -> Complex64 + ?Sized>(
    f: &F,
    omega: f64,
    a: f64,
    b: f64,
) -> Result<RuleEstimate> {
    let n = FILON_NODES;
    let rule = gauss_legendre(n);
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let samples: Vec<Complex64> = rule
        .nodes
        .iter()
        .map(|&t| {
            let x = c + h * t;
            check(x, f(x))
        })
        .collect::<Result<_>>()?;
    let mut coeffs = vec![Complex64::default(); n];
    for (ti, (t, w)) in rule.nodes.iter().zip(&rule.weights).enumerate() {
        let mut p_prev = 1.0;
        let mut p = *t;
        for (deg, slot) in coeffs.iter_mut().enumerate() {
            let pn = match deg {
                0 => 1.0,
                1 => *t,
                _ => {
                    let d = (deg - 1) as f64;
                    let next = ((2.0 * d + 1.0) * t * p - d * p_prev) / (d + 1.0);
                    p_prev = p;
                    p = next;
                    next
                }
            };
            *slot += samples[ti] * (w * pn);
        }
    }
    for (deg, slot) in coeffs.iter_mut().enumerate() {
        *slot *= 0.5 * (2 * deg + 1) as f64;
    }
    let kappa = omega * h;
    let jn = spherical_bessel_all(n - 1, kappa);
    let mut sum = Complex64::default();
    let mut i_pow = Complex64::new(1.0, 0.0);
    for (deg, coeff) in coeffs.iter().enumerate() {
        sum += coeff * i_pow * (2.0 * jn[deg]);
        i_pow *= Complex64::i();
    }
    let value = sum * Complex64::from_polar(h, omega * c);
    let tail = coeffs[n - 3..].iter().map(|z| z.norm()).fold(0.0, f64::max);
    let scale = coeffs.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let error = 2.0 * h.abs() * (tail + 4.0 * f64::EPSILON * scale);
    Ok(RuleEstimate { value, error, evaluations: n })
}
