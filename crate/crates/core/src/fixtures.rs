//! Reference symbols shared by the verification suite, the tests and the
//! command-line tool.

use std::sync::Arc;

use num_complex::Complex64;

use crate::ct_core::VerticalSymbol;

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Bounded symbols with declared limits `a0` (at `v → 0`) and `a_inf`.
pub fn limit_symbols() -> Vec<(&'static str, VerticalSymbol)> {
    vec![
        ("constant", VerticalSymbol::constant(Complex64::new(0.7, -0.2))),
        ("indicator", VerticalSymbol::indicator(1.5).expect("positive length")),
        (
            "tabulated",
            VerticalSymbol::tabulated(vec![0.5, 1.0, 2.0, 4.0], [2.0, 1.5, 0.5, -1.0].map(re).to_vec())
                .expect("increasing grid"),
        ),
        (
            "lorentzian",
            VerticalSymbol::custom(Arc::new(|v: f64| re(1.0 / (1.0 + v * v))), Some(re(1.0)), Some(re(0.0)))
                .with_sup(1.0),
        ),
        (
            "saturation",
            VerticalSymbol::custom(Arc::new(|v: f64| re(v / (1.0 + v))), Some(re(0.0)), Some(re(1.0))).with_sup(1.0),
        ),
    ]
}

/// Bounded symbols of every kind, for identities that hold for any symbol.
pub fn symbol_test_set() -> Vec<(&'static str, VerticalSymbol)> {
    let mut set = vec![
        ("indicator_half", VerticalSymbol::indicator(0.5).expect("positive length")),
        ("sine", VerticalSymbol::sine()),
        ("osc_exp", VerticalSymbol::osc_exp()),
    ];
    set.extend(limit_symbols());
    set
}

/// Smooth functions on the half-line for the Bargmann-transform checks.
pub fn halfline_test_functions() -> Vec<(&'static str, Box<dyn Fn(f64) -> Complex64 + Send + Sync>)> {
    vec![
        ("gaussian", Box::new(|x: f64| Complex64::new(1.0, 0.3) * (-(x - 3.0) * (x - 3.0)).exp())),
        ("gamma_shape", Box::new(|x: f64| re(x * x * (-x).exp()))),
        (
            "bump",
            Box::new(|x: f64| {
                if x <= 1.0 || x >= 5.0 {
                    re(0.0)
                } else {
                    Complex64::new(1.0, 0.5 * x.sin()) * (-1.0 / ((x - 1.0) * (5.0 - x))).exp()
                }
            }),
        ),
    ]
}
