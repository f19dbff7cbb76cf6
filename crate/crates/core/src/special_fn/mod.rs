//! Special functions: Laguerre and Legendre polynomials, Laguerre functions,
//! and the closed-form integral identities and bounds built on them.
//!
//! Polynomial evaluation uses three-term recurrences; exact-rational
//! [`Polynomial`]s are used wherever an identity must hold exactly (the
//! `N_{2k}` polynomials and the alternating sum `S(k)`).

mod appendix;
mod laguerre;
mod polynomial;

pub use appendix::{
    alternating_sum_s, cesaro_bound, cumulative_laguerre_sq, lambda_bound_integral, lambda_fn,
    lambda_pointwise_bound, n_polynomial, n_polynomial_incomplete_gamma, power_exp_bound,
    upper_gamma_integer, CumulativeLaguerreSq,
};
pub use laguerre::{
    ell, ell_sq_derivative, gen_binomial, laguerre_derivative, laguerre_eval, laguerre_explicit,
    laguerre_function_eval, laguerre_polynomial, laguerre_product_integral, legendre_eval,
    pochhammer, LaguerreIndex,
};
pub use polynomial::Polynomial;

pub(crate) use appendix::{cesaro_majorant_coeffs, majorant_tail, poly_mul_f64};
pub(crate) use laguerre::{ell_sq_derivative_poly, laguerre, legendre};
