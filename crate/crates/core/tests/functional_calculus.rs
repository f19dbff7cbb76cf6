use lct::ct_core::{SpectralFunction, VerticalSymbol};
use lct::fixtures::symbol_test_set;
use lct::functional_calculus::*;
use lct::quadrature::{integrate_halfline_with_points, QuadratureSpec};
use lct::special_fn::ell;
use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| lo * (hi / lo).powf(i as f64 / (n - 1) as f64)).collect()
}

// 1 - e^{-y} without cancellation.
fn one_minus_exp(y: f64) -> f64 {
    -(-y).exp_m1()
}

#[test]
fn delta_carries_base_indicator_to_every_indicator() {
    for lambda in [0.5, 1.0, 2.0, 10.0] {
        let dev = log_grid(0.01, 50.0, 200)
            .into_iter()
            .map(|xi| (delta(lambda, one_minus_exp(xi)).unwrap() - one_minus_exp(2.0 * lambda * xi)).abs())
            .fold(0.0, f64::max);
        assert!(dev < 1e-12, "lambda={lambda}: {dev:e}");
    }
}

#[test]
fn small_lambda_delta_error_is_input_rounding() {
    // For λ < 1/2, Δ_λ'(x) = 2λ(1-x)^(2λ-1) is unbounded at x = 1, so the
    // rounding of x = 1 - e^{-ξ} (at most ε/2 absolute) is amplified.
    let lambda = 0.1;
    for xi in log_grid(0.01, 50.0, 200) {
        let x = one_minus_exp(xi);
        let err = (delta(lambda, x).unwrap() - one_minus_exp(2.0 * lambda * xi)).abs();
        let c = (-xi).exp().max(f64::EPSILON / 2.0);
        let bound = 2.0 * lambda * c.powf(2.0 * lambda - 1.0) * f64::EPSILON + 1e-15;
        assert!(err <= bound || (x == 1.0 && err <= c.powf(2.0 * lambda)), "xi={xi}: {err:e} > {bound:e}");
        if xi <= 12.0 {
            assert!(err < 1e-12, "xi={xi}: {err:e}");
        }
    }
}

#[test]
fn delta_of_base_spectral_function_is_indicator_spectral_function() {
    let base = SpectralFunction::new(VerticalSymbol::indicator(0.5).unwrap(), 0);
    for lambda in [0.3, 1.0, 4.0] {
        let target = SpectralFunction::new(VerticalSymbol::indicator(lambda).unwrap(), 0);
        let f = operator_function(move |x| Ok(delta(lambda, x)?.into()), base.clone());
        for xi in log_grid(0.01, 20.0, 50) {
            assert!((f.eval(xi).unwrap() - target.eval(xi).unwrap()).norm() < 1e-12);
        }
    }
}

#[test]
fn delta_inverse_undoes_delta() {
    // Each composition is checked in the order whose outer map is
    // well conditioned on the inner map's range.
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for _ in 0..100 {
        let x: f64 = rng.gen_range(0.0..1.0);
        let big = 10f64.powf(rng.gen_range(-0.301..1.0));
        assert!((delta(big, delta_inverse(big, x).unwrap()).unwrap() - x).abs() < 1e-12, "({big}, {x})");
        let small = 10f64.powf(rng.gen_range(-1.0..-0.301));
        assert!((delta_inverse(small, delta(small, x).unwrap()).unwrap() - x).abs() < 1e-12, "({small}, {x})");
    }
}

#[test]
fn transfer_between_indicator_spectral_functions() {
    for (l1, l2) in [(0.5, 2.0), (0.25, 1.0), (1.5, 3.0), (1.0, 0.25)] {
        let (g1, g2) = (
            SpectralFunction::new(VerticalSymbol::indicator(l1).unwrap(), 0),
            SpectralFunction::new(VerticalSymbol::indicator(l2).unwrap(), 0),
        );
        // Shrinking λ is ill conditioned near 1 as for Δ_λ with λ < 1/2.
        let hi = if l2 < l1 { 3.0 } else { 10.0 };
        for xi in log_grid(0.01, hi, 40) {
            let carried = transfer(l1, l2, g1.eval(xi).unwrap().re).unwrap();
            assert!((carried - g2.eval(xi).unwrap().re).abs() < 1e-12, "({l1}, {l2}) xi={xi}");
        }
    }
    for xi in log_grid(0.01, 50.0, 60) {
        for lambda in [1.0, 3.0] {
            let got = transfer(0.5, lambda, one_minus_exp(xi)).unwrap();
            assert!((got - one_minus_exp(2.0 * lambda * xi)).abs() < 1e-12);
        }
    }
}

#[test]
fn transfer_composition_law() {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    for _ in 0..200 {
        let x: f64 = rng.gen_range(0.0..1.0);
        let two_step = transfer(2.0, 3.0, transfer(1.0, 2.0, x).unwrap()).unwrap();
        assert!((two_step - transfer(1.0, 3.0, x).unwrap()).abs() < 1e-12, "x={x}");
        let mut l = [rng.gen_range(0.1..5.0), rng.gen_range(0.1..5.0), rng.gen_range(0.1..5.0)];
        l.sort_by(f64::total_cmp);
        let [a, b, c] = l;
        let chained = TransferMap::composite(vec![TransferMap::transfer(a, b).unwrap(), TransferMap::transfer(b, c).unwrap()]).unwrap();
        assert!((chained.apply(x).unwrap().re - transfer(a, c, x).unwrap()).abs() < 1e-12);
    }
}

#[test]
fn delta_degenerates_at_extreme_lambda() {
    for x in [0.1, 0.5, 0.9] {
        assert!(delta(1e-6, x).unwrap() < 1e-4);
        assert!(delta(1e6, x).unwrap() > 1.0 - 1e-4);
    }
}

#[test]
fn delta_is_strictly_increasing() {
    // Beyond x = 0.8, Δ_10 is within ε of 1.
    let grid: Vec<f64> = (0..=200).map(|i| 0.8 * i as f64 / 200.0).collect();
    for lambda in [0.1, 0.5, 1.0, 2.0, 10.0] {
        let v: Vec<f64> = grid.iter().map(|&x| delta(lambda, x).unwrap()).collect();
        assert!(v.windows(2).all(|w| w[1] > w[0]), "lambda={lambda}");
    }
}

proptest! {
    #[test]
    fn half_delta_is_identity(x in 0.0f64..=1.0) {
        prop_assert_eq!(delta(0.5, x).unwrap(), x);
        prop_assert_eq!(delta_inverse(0.5, x).unwrap(), x);
    }

    #[test]
    fn delta_stays_in_unit_interval(lambda in 0.01f64..100.0, x in 0.0f64..=1.0) {
        let y = delta(lambda, x).unwrap();
        prop_assert!((0.0..=1.0).contains(&y));
    }
}

// The largest 2λξ kept in the ∇ grids: beyond it 1 - x = e^{-2λξ} is too
// close to the spacing of doubles near 1 for x to determine ξ to 1e-8.
const MAX_LOG: f64 = 18.0;

#[test]
fn nabla_recovers_every_level_from_the_base_indicator() {
    for (name, a) in symbol_test_set() {
        for k in 0..=4 {
            let g = SpectralFunction::new(a.clone(), k);
            for lambda in [0.5, 1.0, 2.0] {
                let hi = (MAX_LOG / (2.0 * lambda)).min(50.0);
                let dev = log_grid(0.01, hi, 40)
                    .into_iter()
                    .map(|xi| {
                        let x = one_minus_exp(2.0 * lambda * xi);
                        (nabla(&a, lambda, k, x).unwrap() - g.eval(xi).unwrap()).norm()
                    })
                    .fold(0.0, f64::max);
                assert!(dev < 1e-8, "{name} k={k} lambda={lambda}: {dev:e}");
            }
        }
    }
}

// The v-integral defining ∇, integrated adaptively in v.
fn nabla_in_v(a: &VerticalSymbol, lambda: f64, k: u32, x: f64) -> Complex64 {
    let log = -(-x).ln_1p();
    let c = log / lambda;
    let f = |v: f64| a.eval(v) * (c * ell(k, c * v).powi(2));
    let mut pts: Vec<f64> = [0.25, 0.5, 1.0, 1.5, 2.0, 4.0, 8.0, 16.0, 32.0].iter().map(|m| m / c).collect();
    // kinks of the tabulated fixture
    pts.extend([0.5, 1.0, 2.0, 4.0]);
    pts.sort_by(f64::total_cmp);
    let spec = QuadratureSpec::default().with_tol(1e-12, 1e-12);
    integrate_halfline_with_points(&f, &pts, &spec).unwrap().require().unwrap()
}

#[test]
fn nabla_matches_direct_integral_in_v() {
    for (name, a) in symbol_test_set() {
        if name == "osc_exp" || name == "sine" {
            continue;
        }
        for k in [0, 2] {
            for lambda in [0.5, 2.0] {
                for x in [0.05, 0.5, 0.95] {
                    let d = (nabla(&a, lambda, k, x).unwrap() - nabla_in_v(&a, lambda, k, x)).norm();
                    assert!(d < 1e-9, "{name} k={k} lambda={lambda} x={x}: {d:e}");
                }
            }
        }
    }
}

#[test]
fn nabla_examples() {
    let x = one_minus_exp(1.0);
    let got = nabla(&VerticalSymbol::sine(), 0.5, 1, x).unwrap();
    assert!((got.re - 0.528).abs() < 1e-12, "{got}");
    let ind = VerticalSymbol::indicator(1.5).unwrap();
    assert_eq!(nabla(&ind, 2.0, 3, 0.0).unwrap(), Complex64::new(0.0, 0.0));
    assert_eq!(nabla(&ind, 2.0, 3, 1.0).unwrap(), Complex64::new(1.0, 0.0));
    assert!(nabla(&VerticalSymbol::sine(), 1.0, 1, 0.0).is_err());
    assert!(nabla(&ind, 1.0, 0, 1.2).is_err());
}

#[test]
fn nabla_applied_to_base_operator() {
    let a = VerticalSymbol::indicator(0.5).unwrap();
    for lambda in [0.5, 1.0] {
        let base = SpectralFunction::new(VerticalSymbol::indicator(lambda).unwrap(), 0);
        let target = SpectralFunction::new(a.clone(), 3);
        let map = TransferMap::Nabla { symbol: a.clone(), lambda, level: 3 };
        let f = operator_function(move |x| map.apply(x), base);
        for xi in log_grid(0.01, MAX_LOG / (2.0 * lambda), 30) {
            assert!((f.eval(xi).unwrap() - target.eval(xi).unwrap()).norm() < 1e-8, "lambda={lambda} xi={xi}");
        }
    }
    let base = SpectralFunction::new(VerticalSymbol::indicator(0.5).unwrap(), 2);
    let id = operator_function(|x| Ok(x.into()), base.clone());
    for xi in [0.1, 1.0, 10.0] {
        assert_eq!(id.eval(xi).unwrap(), base.eval(xi).unwrap());
    }
}
