//! Calderón-Toeplitz operators with vertical, horizontal and product
//! symbols, their spectral functions, kernels and Wick calculus.

mod analysis;
pub(crate) mod engine;
mod gamma;
mod kernels;
mod operators;
mod symbol;
mod wick;

pub use analysis::{
    derivative_estimate, derivative_finite_difference, limit_at_endpoints, probe_endpoints, slowly_oscillating_ratio,
    EndpointProbe, LIMIT_CONFIRM, LIMIT_PROBE,
};
pub use gamma::{
    gamma, gamma_closed_form, gamma_quadrature, gamma_quadrature_spec, gamma_series, has_closed_form, moment,
    GammaValue, Method, SpectralFunction,
};
pub use kernels::{b_kernel, b_kernel_integral, c_kernel};
pub use operators::{apply_ct_horizontal, apply_ct_product, apply_ct_vertical, HorizontalSymbol, SpectrumFn};
pub use symbol::{SymbolFn, SymbolKind, VerticalSymbol};
pub use wick::{
    star_product, star_product_nested, wick_function, wick_symbol, wick_symbol_nested, wick_symbol_of_spectrum, WickData,
    KERNEL_ZERO_THRESHOLD,
};
