//! Calderón-Toeplitz operators with Laguerre wavelets.
//!
//! The crate evaluates the spectral functions `γ_{a,k}` of vertical-symbol
//! operators, the integral kernels of horizontal and product symbols, the
//! continuous wavelet transform with Laguerre wavelets, the Bargmann-type
//! transforms between wavelet subspaces and `L₂(ℝ₊)`, Wick symbols, and the
//! functional-calculus maps that move operators between levels.

pub mod bargmann;
pub mod ct_core;
pub mod error;
pub mod filter;
pub mod fixtures;
pub mod functional_calculus;
pub mod io;
pub mod quadrature;
pub mod special_fn;
pub mod verify;
pub mod wavelet;

pub use error::{Error, Result};
