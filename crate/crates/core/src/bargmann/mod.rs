//! Bargmann-type transforms between the wavelet subspace at level `k` and
//! `L₂(ℝ₊)`:
//!
//! * `(R_k* f)(u,v) = √2 v ∫₀^∞ f(ξ) ℓ_k(2ξv) e^(2πiξu) √ξ dξ`,
//! * `(R_k F)(ξ) = √(2ξ) ∬ F(u,v) ℓ_k(2vξ) e^(-2πiξu) du dv/v`.
//!
//! On a plane, `R_k*` is evaluated on the DFT bins of the u-grid so that it
//! becomes one inverse FFT per scale; `R_k` is the matching forward FFT.

mod halfline;

use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::{Fft, FftPlanner};

pub use halfline::{HalflineFunction, Interpolation};

use crate::error::{Error, Result};
use crate::quadrature::{integrate_oscillatory_with_points, QuadratureSpec};
use crate::special_fn::ell;
use crate::wavelet::{positive_bins, wavelet_hat, AffinePoint, CWTPlane, ScaleGrid};

/// Haar mass fraction in the outermost scale rows above which [`r_op`] warns.
const COVERAGE_TOL: f64 = 1e-6;

/// `(R_k* f)(ζ)` at each point, by oscillatory quadrature over the span of
/// `f`'s grid.
pub fn r_star(k: u32, f: &HalflineFunction, points: &[AffinePoint]) -> Result<Vec<Complex64>> {
    let spec = QuadratureSpec::default().with_tol(1e-11, 1e-10);
    points
        .par_iter()
        .map(|z| {
            let g = |xi: f64| f.eval(xi) * (ell(k, 2.0 * xi * z.v) * xi.sqrt());
            let omega = 2.0 * std::f64::consts::PI * z.u;
            let r = integrate_oscillatory_with_points(&g, omega, f.breakpoints(), &spec)?;
            Ok(r.require()? * (std::f64::consts::SQRT_2 * z.v))
        })
        .collect()
}

/// `R_k* f` on the plane with `len` uniform u-samples at `sample_rate` from
/// `start_time` and the given scales. `f` is read at the DFT bin frequencies.
pub fn r_star_plane(
    k: u32,
    f: &HalflineFunction,
    len: usize,
    sample_rate: f64,
    start_time: f64,
    scales: &ScaleGrid,
) -> Result<CWTPlane> {
    if len < 3 {
        return Err(Error::Invalid("a plane needs at least three u samples".into()));
    }
    let dxi = sample_rate / len as f64;
    let spectrum: Vec<(usize, Complex64)> = positive_bins(len)
        .map(|m| {
            let xi = m as f64 * dxi;
            let shift = Complex64::from_polar(dxi, 2.0 * std::f64::consts::PI * xi * start_time);
            (m, f.eval(xi) * shift)
        })
        .collect();
    let inverse: Arc<dyn Fft<f64>> = FftPlanner::new().plan_fft_inverse(len);
    let rows: Vec<Vec<Complex64>> = scales
        .v
        .par_iter()
        .map(|&v| {
            let mut buf = vec![Complex64::new(0.0, 0.0); len];
            for &(m, z) in &spectrum {
                buf[m] = z * (v.sqrt() * wavelet_hat(k, v * m as f64 * dxi));
            }
            inverse.process(&mut buf);
            buf
        })
        .collect();
    let u_grid = (0..len).map(|n| start_time + n as f64 / sample_rate).collect();
    CWTPlane::new(k, u_grid, scales, rows.concat())
}

/// `R_k F` on the positive DFT bins of the plane's u-grid, by iterated sums
/// with weights `Δu` and `Δ_j ≈ Δv/v`.
pub fn r_op(k: u32, plane: &CWTPlane) -> Result<HalflineFunction> {
    if plane.level != k {
        return Err(Error::GridMismatch(format!("plane is at level {}, R requested at level {k}", plane.level)));
    }
    let n = plane.nu();
    let bins: Vec<usize> = positive_bins(n).collect();
    if bins.is_empty() {
        return Err(Error::Invalid("plane too short to carry positive frequencies".into()));
    }
    warn_coverage(plane);
    let fs = plane.sample_rate;
    let dxi = fs / n as f64;
    let forward: Arc<dyn Fft<f64>> = FftPlanner::new().plan_fft_forward(n);
    let zero = || vec![Complex64::new(0.0, 0.0); bins.len()];
    let sums = (0..plane.nv())
        .into_par_iter()
        .fold(zero, |mut acc, j| {
            let v = plane.v_grid[j];
            let mut buf = plane.row(j).to_vec();
            forward.process(&mut buf);
            for (slot, &m) in acc.iter_mut().zip(&bins) {
                *slot += buf[m] * (plane.weights[j] * ell(k, 2.0 * v * m as f64 * dxi));
            }
            acc
        })
        .reduce(zero, |mut a, b| {
            a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
            a
        });
    let t0 = plane.start_time();
    let xi_grid: Vec<f64> = bins.iter().map(|&m| m as f64 * dxi).collect();
    let values = xi_grid
        .iter()
        .zip(sums)
        .map(|(&xi, s)| s * Complex64::from_polar((2.0 * xi).sqrt() / fs, -2.0 * std::f64::consts::PI * xi * t0))
        .collect();
    HalflineFunction::new(xi_grid, values, Interpolation::Linear)
}

/// `P = R_k* R_k`, the projection of a plane onto the wavelet subspace,
/// returned on the same grid.
pub fn projection(k: u32, plane: &CWTPlane) -> Result<CWTPlane> {
    let f = r_op(k, plane)?;
    r_star_plane(k, &f, plane.nu(), plane.sample_rate, plane.start_time(), &plane.scales())
}

fn warn_coverage(plane: &CWTPlane) {
    let masses = plane.row_masses();
    let total: f64 = masses.iter().sum();
    if total == 0.0 || masses.len() < 2 {
        return;
    }
    let (first, last) = (masses[0] / total, masses[masses.len() - 1] / total);
    if first > COVERAGE_TOL {
        log::warn!("smallest scale carries {first:.1e} of the plane's mass; extend the grid toward v -> 0");
    }
    if last > COVERAGE_TOL {
        log::warn!("largest scale carries {last:.1e} of the plane's mass; extend the grid toward v -> inf");
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::integrate_finite;

    #[test]
    fn zero_function_and_plane() {
        let f = HalflineFunction::new(vec![1.0, 2.0], vec![Complex64::new(0.0, 0.0); 2], Interpolation::Linear).unwrap();
        let pts = [AffinePoint::new(0.5, 1.0).unwrap()];
        assert_eq!(r_star(1, &f, &pts).unwrap()[0], Complex64::new(0.0, 0.0));
        let grid = ScaleGrid::logarithmic(0.1, 10.0, 4.0).unwrap();
        let p = r_star_plane(1, &f, 64, 8.0, 0.0, &grid).unwrap();
        let g = r_op(1, &p).unwrap();
        assert!(g.values.iter().all(|z| z.norm() == 0.0));
    }

    #[test]
    fn indicator_at_origin() {
        let one = Complex64::new(1.0, 0.0);
        let f = HalflineFunction::new(vec![1.0, 2.0], vec![one, one], Interpolation::Linear).unwrap();
        let pts = [AffinePoint::new(0.0, 1.0).unwrap()];
        for k in 0..4 {
            let got = r_star(k, &f, &pts).unwrap()[0];
            let spec = QuadratureSpec::default();
            let want = integrate_finite(&|x: f64| Complex64::new(ell(k, 2.0 * x) * x.sqrt(), 0.0), 1.0, 2.0, &spec)
                .unwrap()
                .value
                * std::f64::consts::SQRT_2;
            assert!((got - want).norm() < 1e-10, "k={k}");
        }
    }

    #[test]
    fn level_mismatch() {
        let f = HalflineFunction::new(vec![1.0, 2.0], vec![Complex64::new(1.0, 0.0); 2], Interpolation::Linear).unwrap();
        let grid = ScaleGrid::logarithmic(0.1, 10.0, 4.0).unwrap();
        let p = r_star_plane(1, &f, 64, 8.0, 0.0, &grid).unwrap();
        assert!(matches!(r_op(2, &p), Err(Error::GridMismatch(_))));
    }
}
