use lct::quadrature::{integrate_finite_with_points, integrate_halfline_with_points, QuadratureSpec};
use lct::special_fn::*;
use num_complex::Complex64;
use num_traits::Zero;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn spec() -> QuadratureSpec {
    QuadratureSpec::default().with_tol(1e-12, 1e-13)
}

fn halfline(f: impl Fn(f64) -> f64) -> f64 {
    let g = |x: f64| Complex64::new(f(x), 0.0);
    let pts = [1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0];
    integrate_halfline_with_points(&g, &pts, &spec()).unwrap().require().unwrap().re
}

#[test]
fn product_integral_formula_matches_quadrature() {
    for p in 0..=3 {
        for m in 0..=4 {
            for n in 0..=4 {
                for (alpha, beta) in [(0.0, 0.0), (0.0, 1.0), (1.0, 0.0), (1.0, 1.0)] {
                    let closed = laguerre_product_integral(p as f64, alpha, beta, m, n).unwrap();
                    let quad = halfline(|x| {
                        x.powi(p) * (-x).exp()
                            * laguerre_eval(LaguerreIndex::new(m as i64, alpha), x)
                            * laguerre_eval(LaguerreIndex::new(n as i64, beta), x)
                    });
                    assert!((closed - quad).abs() < 1e-9, "p={p} m={m} n={n} a={alpha} b={beta}: {closed} vs {quad}");
                }
            }
        }
    }
    assert!((laguerre_product_integral(1.0, 0.0, 0.0, 3, 3).unwrap() - 7.0).abs() < 1e-12);
}

#[test]
fn laguerre_functions_are_orthonormal() {
    for alpha in [0.0, 1.0] {
        for m in 0..=6 {
            for n in m..=6 {
                let ip = halfline(|y| {
                    laguerre_function_eval(LaguerreIndex::new(m, alpha), y).unwrap()
                        * laguerre_function_eval(LaguerreIndex::new(n, alpha), y).unwrap()
                });
                let want = if m == n { 1.0 } else { 0.0 };
                assert!((ip - want).abs() < 1e-10, "alpha={alpha} ({m},{n}): {ip}");
            }
        }
    }
}

#[test]
fn recurrence_matches_explicit_sum() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..200 {
        let n = rng.gen_range(0..=20);
        let alpha = [0.0, 0.5, 1.0, 2.0][rng.gen_range(0..4)];
        let x = rng.gen_range(0.0..30.0);
        let idx = LaguerreIndex::new(n, alpha);
        let (r, e) = (laguerre_eval(idx, x), laguerre_explicit(idx, x));
        // Relative to the size of the largest term, where the value is a near-root.
        let scale = e.abs().max(1e-12 * (0..=n).map(|i| x.powi(i as i32) / (1..=i).product::<i64>().max(1) as f64).sum::<f64>());
        assert!((r - e).abs() <= 1e-12 * scale, "n={n} alpha={alpha} x={x}: {r} vs {e}");
    }
}

#[test]
fn cumulative_matches_quadrature() {
    for k in 0..=6 {
        for x in [0.1, 1.0, 3.7, 10.0, 25.0, 50.0] {
            let f = |t: f64| Complex64::new(ell(k, t).powi(2), 0.0);
            let pts: Vec<f64> = (0..=50).map(|i| x * i as f64 / 50.0).collect();
            let quad = integrate_finite_with_points(&f, &pts, &spec()).unwrap().require().unwrap().re;
            let closed = cumulative_laguerre_sq(k, x);
            assert!((closed - quad).abs() < 1e-10, "k={k} x={x}: {closed} vs {quad}");
        }
        assert_eq!(cumulative_laguerre_sq(k, 0.0), 0.0);
    }
    assert!((cumulative_laguerre_sq(0, 1.0) - (1.0 - (-1f64).exp())).abs() < 1e-15);
}

#[test]
fn cumulative_is_strictly_increasing() {
    for k in 0..=6 {
        let v: Vec<f64> = (1..=400).map(|i| cumulative_laguerre_sq(k, 0.05 * i as f64)).collect();
        assert!(v.windows(2).all(|w| w[1] > w[0]), "k={k}");
        assert!(v.iter().all(|c| *c < 1.0));
    }
}

#[test]
fn n_polynomial_routes_agree_exactly() {
    for k in 0..=10 {
        assert_eq!(n_polynomial(k), n_polynomial_incomplete_gamma(k), "k={k}");
    }
    assert_eq!(n_polynomial(1), Polynomial::from_integers(&[1, 0, 1]));
}

#[test]
fn alternating_sum_vanishes_exactly() {
    for k in 1..=12 {
        assert!(alternating_sum_s(k).unwrap().is_zero(), "k={k}");
    }
}

#[test]
fn laguerre_derivative_matches_finite_differences() {
    let h = 1e-3;
    // Fourth-order central stencil for the first derivative.
    let d1 = |f: &dyn Fn(f64) -> f64, x: f64| (f(x - 2.0 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) - f(x + 2.0 * h)) / (12.0 * h);
    for n in 0..=6 {
        let idx = LaguerreIndex::plain(n);
        for r in 1..=3 {
            for x in [0.3, 0.7, 2.5, 6.0] {
                let lower = |y: f64| laguerre_derivative(idx, r - 1, y);
                let fd = d1(&lower, x);
                let d = laguerre_derivative(idx, r, x);
                assert!((d - fd).abs() < 1e-6 * (1.0 + d.abs()), "n={n} r={r} x={x}: {d} vs {fd}");
            }
        }
    }
    assert_eq!(laguerre_derivative(LaguerreIndex::plain(3), 4, 1.3), 0.0);
    assert_eq!(laguerre_derivative(LaguerreIndex::plain(1), 1, 5.0), -1.0);
}

#[test]
fn ell_sq_derivative_matches_finite_differences() {
    let h = 1e-4;
    for k in 0..=3 {
        for v in [0.5, 1.0, 2.0] {
            for xi in [0.3, 1.0, 2.5] {
                let f = |x: f64| ell_sq_derivative(k, 0, v, x);
                let fd1 = (f(xi - 2.0 * h) - 8.0 * f(xi - h) + 8.0 * f(xi + h) - f(xi + 2.0 * h)) / (12.0 * h);
                assert!((ell_sq_derivative(k, 1, v, xi) - fd1).abs() < 1e-6, "k={k} v={v} xi={xi}");
                let g = |x: f64| ell_sq_derivative(k, 1, v, x);
                let fd2 = (g(xi - 2.0 * h) - 8.0 * g(xi - h) + 8.0 * g(xi + h) - g(xi + 2.0 * h)) / (12.0 * h);
                assert!((ell_sq_derivative(k, 2, v, xi) - fd2).abs() < 1e-6, "k={k} v={v} xi={xi}");
            }
        }
    }
    assert!((ell_sq_derivative(0, 2, 1.0, 1.0) - 4.0 * (-2f64).exp()).abs() < 1e-14);
}

#[test]
fn cesaro_and_lambda_bounds_at_random_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..1000 {
        let n = rng.gen_range(0..=10);
        let alpha = rng.gen_range(-0.5..3.0);
        let x = rng.gen_range(0.0..60.0);
        let l = laguerre_eval(LaguerreIndex::new(n as i64, alpha), x).abs();
        assert!(l <= cesaro_bound(n, alpha, x).unwrap() * (1.0 + 1e-12), "n={n} alpha={alpha} x={x}");
    }
    for _ in 0..1000 {
        let p = rng.gen_range(0..=3) as f64;
        let (m, n) = (rng.gen_range(0..=5), rng.gen_range(0..=5));
        let (alpha, beta) = (rng.gen_range(-0.5..2.0), rng.gen_range(-0.5..2.0));
        let x = rng.gen_range(0.0..60.0);
        let val = lambda_fn(p, m, n, alpha, beta, x);
        assert!(val <= lambda_pointwise_bound(p, m, n, alpha, beta, x).unwrap() * (1.0 + 1e-12));
    }
    for _ in 0..1000 {
        let (p, q) = (rng.gen_range(0.01..10.0), rng.gen_range(0.01..10.0));
        let x: f64 = rng.gen_range(0.0..100.0);
        assert!(x.powf(p) * (-q * x).exp() <= power_exp_bound(p, q) * (1.0 + 1e-12), "p={p} q={q} x={x}");
    }
}

#[test]
fn lambda_integral_is_below_its_bound() {
    for p in 0..=2 {
        for m in 0..=4 {
            for n in 0..=4 {
                for (alpha, beta) in [(0.0, 0.0), (0.5, 1.0)] {
                    let integral = halfline(|x| lambda_fn(p as f64, m, n, alpha, beta, x));
                    let bound = lambda_bound_integral(p as f64, m, n, alpha, beta).unwrap();
                    assert!(integral <= bound + 1e-9, "p={p} m={m} n={n}: {integral} > {bound}");
                }
            }
        }
    }
    for k in 0..=5 {
        assert!(lambda_bound_integral(0.0, k, k, 0.0, 0.0).unwrap() >= 1.0);
    }
}

proptest! {
    #[test]
    fn legendre_is_bounded_on_interval(n in 0u32..30, x in -1.0f64..=1.0) {
        let p = legendre_eval(n, x).unwrap();
        prop_assert!(p.abs() <= 1.0 + 1e-12);
    }

    #[test]
    fn laguerre_function_squares_integrate_below_one(k in 0u32..8, x in 0.0f64..200.0) {
        let c = cumulative_laguerre_sq(k, x);
        prop_assert!((0.0..=1.0).contains(&c));
    }
}
