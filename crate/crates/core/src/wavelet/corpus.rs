//! Band-limited reference signals used by the round-trip and filtering
//! checks. All are sampled at 64 Hz over 16 time units.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::SampledSignal;

pub const SAMPLE_RATE: f64 = 64.0;
pub const LEN: usize = 1024;

fn sample(f: impl Fn(f64) -> f64) -> SampledSignal {
    SampledSignal::from_fn(|t| Complex64::new(f(t), 0.0), LEN, SAMPLE_RATE, 0.0).expect("fixed corpus parameters")
}

/// Gaussian-windowed tone at 6 Hz centred at t = 8.
pub fn windowed_tone() -> SampledSignal {
    sample(|t| (-0.5 * (t - 8.0).powi(2)).exp() * (2.0 * PI * 6.0 * t).cos())
}

/// Linear chirp from 2 Hz upward under a wide Gaussian window.
pub fn windowed_chirp() -> SampledSignal {
    sample(|t| (-0.5 * ((t - 8.0) / 2.5).powi(2)).exp() * (2.0 * PI * (2.0 * t + 0.4 * t * t)).cos())
}

/// Three tones on exact DFT bins.
pub fn tone_mixture() -> SampledSignal {
    sample(|t| (2.0 * PI * 3.0 * t).cos() + 0.5 * (2.0 * PI * 11.25 * t).sin() + 0.25 * (2.0 * PI * 0.5 * t).cos())
}

pub fn standard_signals() -> Vec<(&'static str, SampledSignal)> {
    vec![("windowed_tone", windowed_tone()), ("windowed_chirp", windowed_chirp()), ("tone_mixture", tone_mixture())]
}
