//! Time-scale filtering of signals by Calderón-Toeplitz operators with a
//! vertical symbol: transform, weight each scale by `a(v)`, reconstruct.

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftPlanner;

use crate::ct_core::{SpectralFunction, VerticalSymbol};
use crate::error::Result;
use crate::wavelet::{cwt, icwt, positive_bins, SampledSignal, ScaleGrid, DEFAULT_SCALES_PER_DECADE};

/// How [`run_filter`] applies the operator.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum FilterRoute {
    /// Multiply row `v_j` of the transform plane by `a(v_j)` and invert.
    #[default]
    PerScale,
    /// Multiply the positive-frequency spectrum by `γ_{a,k}`.
    Spectral,
}

/// `icwt(a(v) · cwt(f))` on the given scales.
pub fn filter_per_scale(signal: &SampledSignal, a: &VerticalSymbol, k: u32, scales: &ScaleGrid) -> Result<SampledSignal> {
    let plane = cwt(signal, k, scales)?;
    let nu = plane.nu();
    let mut coeffs = plane.coefficients.clone();
    coeffs.par_chunks_mut(nu).zip(&plane.v_grid).for_each(|(row, &v)| {
        let w = a.eval(v);
        row.iter_mut().for_each(|z| *z *= w);
    });
    icwt(&plane.with_coefficients(coeffs)?, k)
}

/// The positive-frequency part of `f` with its spectrum multiplied by `γ`.
pub fn filter_spectral(signal: &SampledSignal, gamma: &SpectralFunction) -> Result<SampledSignal> {
    let n = signal.len();
    let dft = signal.dft();
    let bins: Vec<usize> = positive_bins(n).collect();
    let weights = bins.par_iter().map(|&m| gamma.eval(signal.bin_frequency(m))).collect::<Result<Vec<_>>>()?;
    let mut buf = vec![Complex64::new(0.0, 0.0); n];
    for (&m, w) in bins.iter().zip(weights) {
        buf[m] = dft[m] * w;
    }
    FftPlanner::new().plan_fft_inverse(n).process(&mut buf);
    let inv_n = 1.0 / n as f64;
    SampledSignal::new(buf.into_iter().map(|z| z * inv_n).collect(), signal.sample_rate, signal.start_time)
}

/// Applies the level-`k` operator with vertical symbol `a` to `signal`. The
/// per-scale route uses `scales`, or the default grid for the signal's band.
pub fn run_filter(
    signal: &SampledSignal,
    a: &VerticalSymbol,
    k: u32,
    route: FilterRoute,
    scales: Option<&ScaleGrid>,
) -> Result<SampledSignal> {
    match route {
        FilterRoute::PerScale => match scales {
            Some(g) => filter_per_scale(signal, a, k, g),
            None => filter_per_scale(signal, a, k, &ScaleGrid::for_signal(signal, k, DEFAULT_SCALES_PER_DECADE)?),
        },
        FilterRoute::Spectral => filter_spectral(signal, &SpectralFunction::new(a.clone(), k)),
    }
}
