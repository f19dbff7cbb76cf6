use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::{Fft, FftPlanner};

use super::wavelet_hat;
use crate::error::{Error, Result};
use crate::special_fn::n_polynomial;

/// Uniformly sampled complex signal.
#[derive(Clone, Debug, PartialEq)]
pub struct SampledSignal {
    pub samples: Vec<Complex64>,
    /// Samples per unit time.
    pub sample_rate: f64,
    pub start_time: f64,
}

impl SampledSignal {
    pub fn new(samples: Vec<Complex64>, sample_rate: f64, start_time: f64) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::EmptySignal);
        }
        if !(sample_rate > 0.0 && sample_rate.is_finite()) || !start_time.is_finite() {
            return Err(Error::Invalid(format!("sample rate {sample_rate} / start time {start_time}")));
        }
        Ok(Self { samples, sample_rate, start_time })
    }

    pub fn from_real(samples: &[f64], sample_rate: f64, start_time: f64) -> Result<Self> {
        Self::new(samples.iter().map(|&x| Complex64::new(x, 0.0)).collect(), sample_rate, start_time)
    }

    /// Samples `f(t0 + n/fs)` for `n < len`.
    pub fn from_fn(f: impl Fn(f64) -> Complex64, len: usize, sample_rate: f64, start_time: f64) -> Result<Self> {
        let samples = (0..len).map(|n| f(start_time + n as f64 / sample_rate)).collect();
        Self::new(samples, sample_rate, start_time)
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn time(&self, n: usize) -> f64 {
        self.start_time + n as f64 / self.sample_rate
    }

    pub fn times(&self) -> Vec<f64> {
        (0..self.len()).map(|n| self.time(n)).collect()
    }

    pub fn duration(&self) -> f64 {
        self.len() as f64 / self.sample_rate
    }

    /// `∫|f|² dt` by the rectangle rule.
    pub fn norm_sq(&self) -> f64 {
        self.samples.iter().map(|z| z.norm_sqr()).sum::<f64>() / self.sample_rate
    }

    /// Unnormalized DFT of the samples.
    pub fn dft(&self) -> Vec<Complex64> {
        let mut buf = self.samples.clone();
        FftPlanner::new().plan_fft_forward(buf.len()).process(&mut buf);
        buf
    }

    /// Frequency of DFT bin `m` (only meaningful for the positive bins).
    pub fn bin_frequency(&self, m: usize) -> f64 {
        m as f64 * self.sample_rate / self.len() as f64
    }

    /// `(ξ_m, f̂(ξ_m))` on the positive bins, with `f̂(ξ) = ∫ f(t) e^(-2πitξ) dt`
    /// approximated by the DFT.
    pub fn spectrum(&self) -> Vec<(f64, Complex64)> {
        let dft = self.dft();
        positive_bins(self.len())
            .map(|m| {
                let xi = self.bin_frequency(m);
                let phase = Complex64::from_polar(1.0, -2.0 * std::f64::consts::PI * xi * self.start_time);
                (xi, dft[m] * phase / self.sample_rate)
            })
            .collect()
    }

    /// Relative L₂ distance `‖self - other‖ / ‖other‖`.
    pub fn relative_error(&self, other: &SampledSignal) -> Result<f64> {
        if self.len() != other.len() {
            return Err(Error::GridMismatch(format!("{} vs {} samples", self.len(), other.len())));
        }
        let diff: f64 = self.samples.iter().zip(&other.samples).map(|(a, b)| (a - b).norm_sqr()).sum();
        let base: f64 = other.samples.iter().map(|z| z.norm_sqr()).sum();
        Ok(if base == 0.0 { diff.sqrt() } else { (diff / base).sqrt() })
    }
}

/// DFT bins carrying strictly positive frequencies below Nyquist.
pub fn positive_bins(n: usize) -> std::ops::RangeInclusive<usize> {
    1..=(n.saturating_sub(1) / 2)
}

/// Projection onto the positive-frequency bins (DC, Nyquist and negative
/// frequencies removed).
pub fn analytic_part(signal: &SampledSignal) -> SampledSignal {
    let n = signal.len();
    let mut planner = FftPlanner::new();
    let mut buf = signal.dft();
    let keep = positive_bins(n);
    for (m, z) in buf.iter_mut().enumerate() {
        if !keep.contains(&m) {
            *z = Complex64::new(0.0, 0.0);
        }
    }
    planner.plan_fft_inverse(n).process(&mut buf);
    let scale = 1.0 / n as f64;
    SampledSignal {
        samples: buf.into_iter().map(|z| z * scale).collect(),
        sample_rate: signal.sample_rate,
        start_time: signal.start_time,
    }
}

pub const DEFAULT_SCALES_PER_DECADE: f64 = 64.0;
/// Calderón mass allowed to fall outside a default grid.
const COVERAGE_TARGET: f64 = 1e-6;

/// Increasing scales `v_j` with quadrature weights `Δ_j` for `dv/v`
/// (trapezoid rule in `ln v`).
#[derive(Clone, Debug, PartialEq)]
pub struct ScaleGrid {
    pub v: Vec<f64>,
    pub weights: Vec<f64>,
}

impl ScaleGrid {
    pub fn from_scales(v: Vec<f64>) -> Result<Self> {
        if v.is_empty() {
            return Err(Error::Invalid("empty scale grid".into()));
        }
        if v.iter().any(|x| !(*x > 0.0 && x.is_finite())) {
            return Err(Error::Invalid("scales must be positive and finite".into()));
        }
        if v.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Invalid("scales must be strictly increasing".into()));
        }
        let ln: Vec<f64> = v.iter().map(|x| x.ln()).collect();
        let mut weights = vec![0.0; v.len()];
        for j in 1..v.len() {
            let h = 0.5 * (ln[j] - ln[j - 1]);
            weights[j - 1] += h;
            weights[j] += h;
        }
        if v.len() == 1 {
            weights[0] = 1.0;
        }
        Ok(Self { v, weights })
    }

    /// Log-spaced grid from `v_min` to `v_max`.
    pub fn logarithmic(v_min: f64, v_max: f64, per_decade: f64) -> Result<Self> {
        if !(v_min > 0.0 && v_max > v_min && per_decade > 0.0) || !v_max.is_finite() {
            return Err(Error::Invalid(format!("log grid [{v_min}, {v_max}] at {per_decade}/decade")));
        }
        let decades = (v_max / v_min).log10();
        let count = (decades * per_decade).ceil().max(1.0) as usize + 1;
        let step = (v_max / v_min).ln() / (count - 1) as f64;
        Self::from_scales((0..count).map(|j| v_min * (step * j as f64).exp()).collect())
    }

    /// Grid covering the frequency band `[xi_lo, xi_hi]` at level `k` so that
    /// the Calderón sum misses at most about `1e-6` of its mass at either end.
    pub fn for_band(k: u32, xi_lo: f64, xi_hi: f64, per_decade: f64) -> Result<Self> {
        if !(xi_lo > 0.0 && xi_hi >= xi_lo) {
            return Err(Error::Invalid(format!("frequency band [{xi_lo}, {xi_hi}]")));
        }
        // ∫₀^a ψ̂(w)² dw/w ≈ 2a for small a.
        let v_min = 0.5 * COVERAGE_TARGET / xi_hi;
        let v_max = upper_reach(k) / xi_lo;
        Self::logarithmic(v_min, v_max, per_decade)
    }

    /// Default grid for a signal: the band spanned by its significant
    /// positive-frequency bins.
    pub fn for_signal(signal: &SampledSignal, k: u32, per_decade: f64) -> Result<Self> {
        let (lo, hi) = significant_band(signal)
            .unwrap_or_else(|| (signal.bin_frequency(1), signal.bin_frequency(positive_bins(signal.len()).count().max(1))));
        Self::for_band(k, lo, hi, per_decade)
    }

    pub fn len(&self) -> usize {
        self.v.len()
    }

    pub fn is_empty(&self) -> bool {
        self.v.is_empty()
    }

    /// Discrete Calderón sum `Σ_j Δ_j ψ̂(v_j ξ)²`; equals 1 in the continuum.
    pub fn calderon_sum(&self, k: u32, xi: f64) -> f64 {
        self.v.iter().zip(&self.weights).map(|(v, w)| w * wavelet_hat(k, v * xi).powi(2)).sum()
    }
}

// X with ∫_X^∞ ℓ_k(x)² dx = N_{2k}(X) e^{-X} below 1e-10, halved for w = x/2.
fn upper_reach(k: u32) -> f64 {
    let n = n_polynomial(k);
    let mut x: f64 = 10.0;
    while n.eval(x) * (-x).exp() > 1e-10 && x < 1e4 {
        x *= 1.1;
    }
    0.5 * x
}

fn significant_band(signal: &SampledSignal) -> Option<(f64, f64)> {
    let dft = signal.dft();
    let bins: Vec<usize> = positive_bins(signal.len()).collect();
    let peak = bins.iter().map(|&m| dft[m].norm()).fold(0.0, f64::max);
    if peak == 0.0 {
        return None;
    }
    let sig: Vec<usize> = bins.into_iter().filter(|&m| dft[m].norm() > 1e-12 * peak).collect();
    Some((signal.bin_frequency(*sig.first()?), signal.bin_frequency(*sig.last()?)))
}

/// Wavelet coefficients on a `u × v` grid. `coefficients[j * u_grid.len() + n]`
/// holds `W(u_n, v_j)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CWTPlane {
    pub u_grid: Vec<f64>,
    pub v_grid: Vec<f64>,
    /// `dv/v` weights of the scale grid.
    pub weights: Vec<f64>,
    pub coefficients: Vec<Complex64>,
    pub level: u32,
    pub sample_rate: f64,
}

impl CWTPlane {
    pub fn new(level: u32, u_grid: Vec<f64>, scales: &ScaleGrid, coefficients: Vec<Complex64>) -> Result<Self> {
        if u_grid.len() < 2 {
            return Err(Error::GridMismatch("u grid needs at least two points".into()));
        }
        if coefficients.len() != u_grid.len() * scales.len() {
            return Err(Error::GridMismatch(format!(
                "{} coefficients for a {}x{} grid",
                coefficients.len(),
                u_grid.len(),
                scales.len()
            )));
        }
        let du = u_grid[1] - u_grid[0];
        if !(du > 0.0) || u_grid.windows(2).any(|w| ((w[1] - w[0]) - du).abs() > 1e-9 * du.max(w[1].abs())) {
            return Err(Error::GridMismatch("u grid must be uniform and increasing".into()));
        }
        Ok(Self {
            u_grid,
            v_grid: scales.v.clone(),
            weights: scales.weights.clone(),
            coefficients,
            level,
            sample_rate: 1.0 / du,
        })
    }

    pub fn nu(&self) -> usize {
        self.u_grid.len()
    }

    pub fn nv(&self) -> usize {
        self.v_grid.len()
    }

    pub fn scales(&self) -> ScaleGrid {
        ScaleGrid { v: self.v_grid.clone(), weights: self.weights.clone() }
    }

    pub fn start_time(&self) -> f64 {
        self.u_grid[0]
    }

    pub fn get(&self, n: usize, j: usize) -> Complex64 {
        self.coefficients[j * self.nu() + n]
    }

    pub fn row(&self, j: usize) -> &[Complex64] {
        let nu = self.nu();
        &self.coefficients[j * nu..(j + 1) * nu]
    }

    /// Same grids, new coefficients.
    pub fn with_coefficients(&self, coefficients: Vec<Complex64>) -> Result<Self> {
        if coefficients.len() != self.coefficients.len() {
            return Err(Error::GridMismatch("coefficient count differs from the plane".into()));
        }
        Ok(Self { coefficients, ..self.clone() })
    }

    /// Haar-weighted mass `Σ |W|² Δu Δv / v²` of each row.
    pub fn row_masses(&self) -> Vec<f64> {
        let du = 1.0 / self.sample_rate;
        (0..self.nv())
            .map(|j| self.row(j).iter().map(|z| z.norm_sqr()).sum::<f64>() * du * self.weights[j] / self.v_grid[j])
            .collect()
    }

    /// `‖W‖²` in `L₂(G, dν)`, discretized with `Δu Δv / v²`.
    pub fn norm_sq(&self) -> f64 {
        self.row_masses().iter().sum()
    }

    /// Haar-weighted inner product `⟨self, other⟩`.
    pub fn inner(&self, other: &CWTPlane) -> Result<Complex64> {
        self.check_same_grid(other)?;
        let du = 1.0 / self.sample_rate;
        let mut acc = Complex64::new(0.0, 0.0);
        for j in 0..self.nv() {
            let w = du * self.weights[j] / self.v_grid[j];
            let s: Complex64 = self.row(j).iter().zip(other.row(j)).map(|(a, b)| a * b.conj()).sum();
            acc += s * w;
        }
        Ok(acc)
    }

    /// `‖self - other‖` in the Haar-weighted norm.
    pub fn distance(&self, other: &CWTPlane) -> Result<f64> {
        self.check_same_grid(other)?;
        let diff: Vec<Complex64> = self.coefficients.iter().zip(&other.coefficients).map(|(a, b)| a - b).collect();
        Ok(self.with_coefficients(diff)?.norm_sq().sqrt())
    }

    fn check_same_grid(&self, other: &CWTPlane) -> Result<()> {
        if self.nu() != other.nu() || self.v_grid != other.v_grid {
            return Err(Error::GridMismatch("planes live on different grids".into()));
        }
        Ok(())
    }
}

fn warn_unresolved(k: u32, signal: &SampledSignal, scales: &ScaleGrid) {
    let xi_lo = signal.bin_frequency(1);
    let xi_hi = signal.bin_frequency(positive_bins(signal.len()).count().max(1));
    let reach = upper_reach(k);
    let coarse = scales.v.iter().filter(|v| *v * xi_lo > reach).count();
    let fine = scales.v.iter().filter(|v| *v * xi_hi < 1e-9).count();
    if coarse > 0 {
        log::warn!("{coarse} scales exceed the frequency resolution of the signal (v ξ_min > {reach:.1})");
    }
    if fine > 0 {
        log::warn!("{fine} scales are finer than the sampling resolves (v ξ_max < 1e-9)");
    }
}

/// Continuous wavelet transform at level `k` on the given scales. Only the
/// positive-frequency bins of the signal contribute.
pub fn cwt(signal: &SampledSignal, k: u32, scales: &ScaleGrid) -> Result<CWTPlane> {
    if signal.is_empty() {
        return Err(Error::EmptySignal);
    }
    if signal.len() < 2 {
        return Err(Error::Invalid("the transform needs at least two samples".into()));
    }
    warn_unresolved(k, signal, scales);
    let n = signal.len();
    let dft = signal.dft();
    let inverse: Arc<dyn Fft<f64>> = FftPlanner::new().plan_fft_inverse(n);
    let inv_n = 1.0 / n as f64;
    let rows: Vec<Vec<Complex64>> = scales
        .v
        .par_iter()
        .map(|&v| {
            let mut buf = vec![Complex64::new(0.0, 0.0); n];
            for m in positive_bins(n) {
                let xi = signal.bin_frequency(m);
                buf[m] = dft[m] * (v.sqrt() * wavelet_hat(k, v * xi) * inv_n);
            }
            inverse.process(&mut buf);
            buf
        })
        .collect();
    CWTPlane::new(k, signal.times(), scales, rows.concat())
}

/// Calderón inverse of [`cwt`]. Frequencies where the discrete Calderón sum
/// falls short of 1 (outside the grid's band) are attenuated accordingly.
pub fn icwt(plane: &CWTPlane, k: u32) -> Result<SampledSignal> {
    if plane.level != k {
        return Err(Error::GridMismatch(format!("plane is at level {}, inverse requested at level {k}", plane.level)));
    }
    let n = plane.nu();
    let fs = plane.sample_rate;
    let forward: Arc<dyn Fft<f64>> = FftPlanner::new().plan_fft_forward(n);
    let zero = || vec![Complex64::new(0.0, 0.0); n];
    let spectrum = (0..plane.nv())
        .into_par_iter()
        .fold(zero, |mut acc, j| {
            let v = plane.v_grid[j];
            let mut buf = plane.row(j).to_vec();
            forward.process(&mut buf);
            let w = plane.weights[j] / v.sqrt();
            for m in positive_bins(n) {
                acc[m] += buf[m] * (w * wavelet_hat(k, v * m as f64 * fs / n as f64));
            }
            acc
        })
        .reduce(zero, |mut a, b| {
            a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
            a
        });
    let mut buf = spectrum;
    FftPlanner::new().plan_fft_inverse(n).process(&mut buf);
    let inv_n = 1.0 / n as f64;
    SampledSignal::new(buf.into_iter().map(|z| z * inv_n).collect(), fs, plane.start_time())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn tone(xi0: f64, n: usize, fs: f64) -> SampledSignal {
        SampledSignal::from_fn(|t| Complex64::from_polar(1.0, 2.0 * PI * xi0 * t), n, fs, 0.0).unwrap()
    }

    #[test]
    fn zero_signal_gives_zero_plane() {
        let s = SampledSignal::from_real(&[0.0; 64], 8.0, 0.0).unwrap();
        let grid = ScaleGrid::logarithmic(0.01, 10.0, 8.0).unwrap();
        let p = cwt(&s, 1, &grid).unwrap();
        assert!(p.coefficients.iter().all(|z| z.norm() == 0.0));
        let back = icwt(&p, 1).unwrap();
        assert!(back.samples.iter().all(|z| z.norm() == 0.0));
    }

    #[test]
    fn pure_tone_modulus() {
        let (n, fs) = (256, 16.0);
        let xi0 = 10.0 * fs / n as f64;
        let s = tone(xi0, n, fs);
        let grid = ScaleGrid::logarithmic(0.05, 5.0, 10.0).unwrap();
        for k in 0..3 {
            let p = cwt(&s, k, &grid).unwrap();
            for (j, &v) in grid.v.iter().enumerate() {
                let want = v.sqrt() * wavelet_hat(k, v * xi0).abs();
                for z in p.row(j) {
                    assert!((z.norm() - want).abs() < 1e-12, "k={k} v={v}");
                }
            }
        }
    }

    #[test]
    fn level_mismatch_is_rejected() {
        let s = tone(1.0, 32, 8.0);
        let grid = ScaleGrid::logarithmic(0.1, 1.0, 4.0).unwrap();
        let p = cwt(&s, 2, &grid).unwrap();
        assert!(matches!(icwt(&p, 1), Err(Error::GridMismatch(_))));
    }

    #[test]
    fn trapezoid_weights_in_log_scale() {
        let g = ScaleGrid::logarithmic(0.1, 10.0, 2.0).unwrap();
        let total: f64 = g.weights.iter().sum();
        assert!((total - 100f64.ln()).abs() < 1e-12);
        assert!(ScaleGrid::from_scales(vec![1.0, 0.5]).is_err());
    }

    #[test]
    fn calderon_sum_is_one_inside_band() {
        for k in [0, 3] {
            let g = ScaleGrid::for_band(k, 0.5, 20.0, DEFAULT_SCALES_PER_DECADE).unwrap();
            for xi in [0.5, 1.0, 7.0, 20.0] {
                assert!((g.calderon_sum(k, xi) - 1.0).abs() < 1e-5, "k={k} xi={xi}");
            }
        }
    }

    #[test]
    fn analytic_part_drops_negative_frequencies() {
        let (n, fs) = (128, 8.0);
        let xi0 = 5.0 * fs / n as f64;
        let s = SampledSignal::from_fn(|t| Complex64::new((2.0 * PI * xi0 * t).cos(), 0.0), n, fs, 0.0).unwrap();
        let a = analytic_part(&s);
        let want = tone(xi0, n, fs);
        for (x, y) in a.samples.iter().zip(&want.samples) {
            assert!((x - 0.5 * y).norm() < 1e-12);
        }
    }
}
