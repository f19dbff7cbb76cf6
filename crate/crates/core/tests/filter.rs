use lct::ct_core::VerticalSymbol;
use lct::filter::{run_filter, FilterRoute};
use lct::wavelet::{analytic_part, corpus, ScaleGrid, DEFAULT_SCALES_PER_DECADE};

#[test]
fn identity_symbol_reproduces_analytic_part() {
    let one = VerticalSymbol::real_constant(1.0);
    for (name, s) in corpus::standard_signals() {
        let want = analytic_part(&s);
        for k in 0..=3 {
            let out = run_filter(&s, &one, k, FilterRoute::PerScale, None).unwrap();
            let e = out.relative_error(&want).unwrap();
            assert!(e < 1e-3, "{name} k={k}: {e:e}");
        }
    }
}

#[test]
fn zero_symbol_gives_zero() {
    let zero = VerticalSymbol::real_constant(0.0);
    let s = corpus::windowed_chirp();
    for route in [FilterRoute::PerScale, FilterRoute::Spectral] {
        let out = run_filter(&s, &zero, 1, route, None).unwrap();
        assert!(out.samples.iter().all(|z| z.norm() == 0.0));
    }
}

#[test]
fn indicator_below_signal_scales_removes_energy() {
    // The tone mixture's lowest component is 0.5 Hz and its highest 11.25 Hz;
    // λ = 0.01 lies well below the scales where their wavelet mass sits.
    let s = corpus::tone_mixture();
    let input = analytic_part(&s).norm_sq();
    for k in [0, 2] {
        let a = VerticalSymbol::indicator(0.01).unwrap();
        let out = run_filter(&s, &a, k, FilterRoute::PerScale, None).unwrap();
        assert!(out.norm_sq() < 0.05 * input, "k={k}: {} vs {input}", out.norm_sq());
    }
}

#[test]
fn per_scale_and_spectral_routes_agree() {
    let cases = [
        ("sine", VerticalSymbol::sine(), 1e-4),
        ("osc_exp", VerticalSymbol::osc_exp(), 1e-4),
        // The jump of the indicator falls between two grid scales.
        ("indicator", VerticalSymbol::indicator(0.05).unwrap(), 2e-2),
    ];
    for (name, s) in corpus::standard_signals() {
        for (sym, a, tol) in &cases {
            for k in [0, 1] {
                let g = ScaleGrid::for_signal(&s, k, DEFAULT_SCALES_PER_DECADE).unwrap();
                let per_scale = run_filter(&s, a, k, FilterRoute::PerScale, Some(&g)).unwrap();
                let spectral = run_filter(&s, a, k, FilterRoute::Spectral, None).unwrap();
                let e = per_scale.relative_error(&spectral).unwrap();
                assert!(e < *tol, "{name} {sym} k={k}: {e:e}");
            }
        }
    }
}
