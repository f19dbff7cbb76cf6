//! Laguerre wavelets `ψ^(k)`, the affine group, the continuous wavelet
//! transform and its inverse, and reproducing kernels.
//!
//! The wavelets are defined on the Fourier side by
//! `ψ̂^(k)(ξ) = χ₊(ξ) √(2ξ) ℓ_k(2ξ)`; the Fourier transform convention is
//! `f̂(ξ) = ∫ f(t) e^(-2πitξ) dt`.

pub mod corpus;
mod transform;

use num_complex::Complex64;

pub use transform::{
    analytic_part, cwt, icwt, positive_bins, CWTPlane, SampledSignal, ScaleGrid, DEFAULT_SCALES_PER_DECADE,
};

use crate::error::{Error, Result};
use crate::quadrature::damped::{damped_integral, product_majorant, PolyFactor};
use crate::quadrature::{integrate_laguerre_weighted, QuadratureSpec};
use crate::special_fn::{ell, laguerre};

/// A point `ζ = (u, v)` of the affine group: translation `u`, scale `v > 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AffinePoint {
    pub u: f64,
    pub v: f64,
}

impl AffinePoint {
    pub fn new(u: f64, v: f64) -> Result<Self> {
        if !(v > 0.0 && v.is_finite() && u.is_finite()) {
            return Err(Error::Invalid(format!("affine point ({u}, {v}) needs finite u and v > 0")));
        }
        Ok(Self { u, v })
    }

    /// Group law `(u,v)⋄(u',v') = (vu' + u, vv')`.
    pub fn compose(&self, other: &AffinePoint) -> AffinePoint {
        AffinePoint { u: self.v * other.u + self.u, v: self.v * other.v }
    }

    /// Density `v^(-2)` of the left Haar measure.
    pub fn haar_weight(&self) -> f64 {
        1.0 / (self.v * self.v)
    }
}

/// The level-`k` wavelet together with its squared norm `κ_k = (2k+1)/2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LaguerreWavelet {
    pub k: u32,
    pub norm_sq: f64,
}

impl LaguerreWavelet {
    pub fn new(k: u32) -> Self {
        Self { k, norm_sq: wavelet_norm_sq(k) }
    }

    pub fn hat(&self, xi: f64) -> f64 {
        wavelet_hat(self.k, xi)
    }
}

/// `ψ̂^(k)(ξ)`; zero for `ξ ≤ 0`.
pub fn wavelet_hat(k: u32, xi: f64) -> f64 {
    if xi <= 0.0 {
        0.0
    } else {
        (2.0 * xi).sqrt() * ell(k, 2.0 * xi)
    }
}

/// Mirror wavelet of the conjugate family, supported on `ξ < 0`.
pub fn wavelet_hat_conjugate(k: u32, xi: f64) -> f64 {
    wavelet_hat(k, -xi)
}

/// `|∫₀^∞ |ψ̂^(k)(ξ)|² dξ/ξ - 1|`, by Gauss–Laguerre after `x = 2ξ`.
pub fn admissibility_defect(k: u32) -> Result<f64> {
    let spec = QuadratureSpec::default();
    let g = |x: f64| Complex64::new(laguerre(k as i64, 0.0, x).powi(2), 0.0);
    let r = integrate_laguerre_weighted(&g, &spec)?;
    Ok((r.value.re - 1.0).abs())
}

/// `‖ψ^(k)‖² = κ_k = (2k+1)/2`.
pub fn wavelet_norm_sq(k: u32) -> f64 {
    (2 * k + 1) as f64 / 2.0
}

/// `κ_k` by quadrature of `(1/2) ∫₀^∞ x ℓ_k(x)² dx`.
pub fn wavelet_norm_sq_quadrature(k: u32) -> Result<f64> {
    let spec = QuadratureSpec::default();
    let g = |x: f64| Complex64::new(0.5 * x * laguerre(k as i64, 0.0, x).powi(2), 0.0);
    Ok(integrate_laguerre_weighted(&g, &spec)?.require()?.re)
}

/// `K_ζ^(k)(η) = ⟨ρ_η ψ^(k), ρ_ζ ψ^(k)⟩
/// = 2tv ∫₀^∞ ξ ℓ_k(2tξ) ℓ_k(2vξ) e^(-2πi(s-u)ξ) dξ` for `ζ = (u,v)`,
/// `η = (s,t)`. The diagonal value is `κ_k`.
pub fn reproducing_kernel(k: u32, zeta: AffinePoint, eta: AffinePoint) -> Result<Complex64> {
    weighted_kernel_integral(k, zeta, eta, &|_| Complex64::new(1.0, 0.0), 1.0, &kernel_spec())
}

pub(crate) fn kernel_spec() -> QuadratureSpec {
    QuadratureSpec::default().with_tol(1e-12, 1e-12)
}

/// `2tv ∫₀^∞ g(ξ) ξ ℓ_k(2tξ) ℓ_k(2vξ) e^(2πi(u-s)ξ) dξ` for a bounded `g`.
pub(crate) fn weighted_kernel_integral(
    k: u32,
    zeta: AffinePoint,
    eta: AffinePoint,
    g: &dyn Fn(f64) -> Complex64,
    g_sup: f64,
    spec: &QuadratureSpec,
) -> Result<Complex64> {
    let (v, t) = (zeta.v, eta.v);
    let sum = v + t;
    // x = (t + v) ξ
    let (bt, bv) = (2.0 * t / sum, 2.0 * v / sum);
    let kk = k as i64;
    let poly = move |x: f64| x * laguerre(kk, 0.0, bt * x) * laguerre(kk, 0.0, bv * x);
    let mut majorant = vec![0.0];
    majorant.extend(product_majorant(k, bt, bv));
    let p = PolyFactor { eval: &poly, majorant, degree: 2 * k as usize + 1 };
    let omega = 2.0 * std::f64::consts::PI * (zeta.u - eta.u) / sum;
    let h = |x: f64| g(x / sum);
    let r = damped_integral(&h, &p, g_sup, omega, &[], spec)?;
    Ok(r.require()? * (2.0 * t * v / (sum * sum)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wavelet_hat_examples() {
        assert_eq!(wavelet_hat(4, -3.0), 0.0);
        assert!((wavelet_hat(0, 0.5) - (-0.5f64).exp()).abs() < 1e-15);
        assert_eq!(wavelet_hat_conjugate(0, -0.5), wavelet_hat(0, 0.5));
    }

    #[test]
    fn group_law() {
        let a = AffinePoint::new(1.0, 2.0).unwrap();
        let b = AffinePoint::new(-3.0, 0.5).unwrap();
        assert_eq!(a.compose(&b), AffinePoint { u: -5.0, v: 1.0 });
        assert!(AffinePoint::new(0.0, 0.0).is_err());
    }

    #[test]
    fn norm_and_admissibility() {
        for k in 0..=8 {
            assert!(admissibility_defect(k).unwrap() < 1e-10);
            assert!((wavelet_norm_sq_quadrature(k).unwrap() - wavelet_norm_sq(k)).abs() < 1e-10);
        }
        assert_eq!(LaguerreWavelet::new(3).norm_sq, 3.5);
    }

    #[test]
    fn kernel_diagonal_and_symmetry() {
        for k in 0..=4 {
            for v in [0.1, 1.0, 7.0] {
                let z = AffinePoint::new(0.3, v).unwrap();
                let d = reproducing_kernel(k, z, z).unwrap();
                assert!((d.re - wavelet_norm_sq(k)).abs() < 1e-8 && d.im.abs() < 1e-12, "k={k} v={v}");
            }
            let z = AffinePoint::new(-0.4, 0.7).unwrap();
            let e = AffinePoint::new(1.1, 2.5).unwrap();
            let a = reproducing_kernel(k, z, e).unwrap();
            let b = reproducing_kernel(k, e, z).unwrap();
            assert!((a - b.conj()).norm() < 1e-10);
        }
    }

    #[test]
    fn kernel_k0_closed_form() {
        // k = 0: 2tv ∫ ξ e^{-(t+v)ξ} e^{2πi(u-s)ξ} dξ = 2tv / (t + v - 2πi(u-s))²
        let z = AffinePoint::new(0.2, 0.5).unwrap();
        let e = AffinePoint::new(-0.3, 1.5).unwrap();
        let got = reproducing_kernel(0, z, e).unwrap();
        let d = Complex64::new(2.0, -2.0 * std::f64::consts::PI * 0.5);
        let want = Complex64::new(1.5, 0.0) / (d * d);
        assert!((got - want).norm() < 1e-11, "{got} vs {want}");
    }
}
