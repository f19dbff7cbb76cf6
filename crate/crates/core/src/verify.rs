//! The numbered verification suite: the identities and worked examples the
//! library reproduces, each with its tolerance. Shared by the `verify`
//! subcommand and the acceptance tests.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bargmann::{projection, r_op, r_star_plane, HalflineFunction, Interpolation};
use crate::ct_core::{
    apply_ct_horizontal, apply_ct_product, apply_ct_vertical, b_kernel, b_kernel_integral, derivative_estimate,
    derivative_finite_difference, gamma_closed_form, gamma_quadrature, gamma_quadrature_spec, probe_endpoints,
    slowly_oscillating_ratio, star_product, star_product_nested, wick_symbol, HorizontalSymbol, Method,
    SpectralFunction, VerticalSymbol, WickData,
};
use crate::error::Result;
use crate::filter::{run_filter, FilterRoute};
use crate::fixtures::{halfline_test_functions, limit_symbols, symbol_test_set};
use crate::functional_calculus::{delta, delta_inverse, nabla, transfer};
use crate::quadrature::{integrate_finite_with_points, integrate_halfline_with_points, QuadratureSpec};
use crate::special_fn::{
    alternating_sum_s, cesaro_bound, cumulative_laguerre_sq, ell, lambda_fn, lambda_pointwise_bound,
    laguerre_eval, laguerre_product_integral, power_exp_bound, LaguerreIndex,
};
use crate::wavelet::{
    admissibility_defect, analytic_part, corpus, wavelet_norm_sq_quadrature, CWTPlane, ScaleGrid,
    DEFAULT_SCALES_PER_DECADE,
};

/// Groups selectable with `verify --only`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Group {
    Wavelet,
    Gamma,
    Kernels,
    Bargmann,
    Filter,
    Wick,
    Appendix,
    Analysis,
    Functional,
}

impl Group {
    pub const ALL: [Group; 9] = [
        Group::Wavelet,
        Group::Gamma,
        Group::Kernels,
        Group::Bargmann,
        Group::Filter,
        Group::Wick,
        Group::Appendix,
        Group::Analysis,
        Group::Functional,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Group::Wavelet => "wavelet",
            Group::Gamma => "gamma",
            Group::Kernels => "kernels",
            Group::Bargmann => "bargmann",
            Group::Filter => "filter",
            Group::Wick => "wick",
            Group::Appendix => "appendix",
            Group::Analysis => "analysis",
            Group::Functional => "functional",
        }
    }

    pub fn parse(s: &str) -> Option<Group> {
        Group::ALL.into_iter().find(|g| g.name() == s)
    }
}

/// One measured quantity and its tolerance. Exact checks pass only when the
/// measured deviation is zero.
#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub label: String,
    pub measured: f64,
    pub tolerance: f64,
    pub exact: bool,
}

impl Check {
    pub fn within(label: impl Into<String>, measured: f64, tolerance: f64) -> Self {
        Self { label: label.into(), measured, tolerance, exact: false }
    }

    pub fn exact(label: impl Into<String>, measured: f64) -> Self {
        Self { label: label.into(), measured, tolerance: 0.0, exact: true }
    }

    pub fn pass(&self) -> bool {
        if self.exact {
            self.measured == 0.0
        } else {
            self.measured <= self.tolerance
        }
    }

    // How far into (or past) its tolerance the measurement is.
    fn severity(&self) -> f64 {
        if self.measured.is_nan() {
            f64::INFINITY
        } else if self.exact || self.tolerance == 0.0 {
            if self.measured == 0.0 {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            self.measured / self.tolerance
        }
    }
}

pub struct Criterion {
    pub id: u32,
    pub name: &'static str,
    pub group: Group,
    run: fn() -> Result<Vec<Check>>,
}

#[derive(Clone, Debug)]
pub struct CriterionResult {
    pub id: u32,
    pub name: &'static str,
    pub group: Group,
    pub checks: Vec<Check>,
    /// Set when the computation itself failed.
    pub error: Option<String>,
    pub elapsed: Duration,
}

impl CriterionResult {
    pub fn pass(&self) -> bool {
        self.error.is_none() && !self.checks.is_empty() && self.checks.iter().all(Check::pass)
    }

    /// The check closest to (or furthest past) its tolerance.
    pub fn worst(&self) -> Option<&Check> {
        self.checks.iter().max_by(|a, b| a.severity().total_cmp(&b.severity()))
    }

    /// `PASS  3 gamma/indicator closed form: <worst check> (0.41 s)`.
    pub fn summary_line(&self) -> String {
        let status = if self.pass() { "PASS" } else { "FAIL" };
        let what = match (&self.error, self.worst()) {
            (Some(e), _) => format!("error: {e}"),
            (None, Some(c)) => describe(c),
            (None, None) => "no checks".to_owned(),
        };
        format!(
            "{status} {:>2} {}/{}: {what} ({:.2} s)",
            self.id,
            self.group.name(),
            self.name,
            self.elapsed.as_secs_f64()
        )
    }
}

pub fn describe(c: &Check) -> String {
    let verdict = if c.pass() { "ok" } else { "FAILED" };
    if c.exact {
        format!("{}: measured {:e}, required exactly 0 [{verdict}]", c.label, c.measured)
    } else {
        format!("{}: measured {:e}, tolerance {:e} [{verdict}]", c.label, c.measured, c.tolerance)
    }
}

/// All criteria in order.
pub fn criteria() -> Vec<Criterion> {
    vec![
        Criterion { id: 1, name: "admissibility", group: Group::Wavelet, run: admissibility },
        Criterion { id: 2, name: "norm constant", group: Group::Wavelet, run: norm_constant },
        Criterion { id: 3, name: "indicator closed form", group: Group::Gamma, run: indicator_closed_form },
        Criterion { id: 4, name: "sine example", group: Group::Gamma, run: sine_example },
        Criterion { id: 5, name: "oscillating exponential", group: Group::Gamma, run: osc_exp_example },
        Criterion { id: 6, name: "unbounded example", group: Group::Gamma, run: unbounded_example },
        Criterion { id: 7, name: "endpoint limits", group: Group::Gamma, run: endpoint_limits },
        Criterion { id: 8, name: "Legendre kernel", group: Group::Kernels, run: legendre_kernel },
        Criterion { id: 9, name: "compound symbols", group: Group::Kernels, run: compound_symbols },
        Criterion { id: 10, name: "Bargmann decompositions", group: Group::Bargmann, run: bargmann_decompositions },
        Criterion { id: 11, name: "identity filter", group: Group::Filter, run: identity_filter },
        Criterion { id: 12, name: "Wick calculus", group: Group::Wick, run: wick_calculus },
        Criterion { id: 13, name: "Laguerre identities", group: Group::Appendix, run: appendix_identities },
        Criterion { id: 14, name: "derivative decay", group: Group::Analysis, run: derivative_decay },
        Criterion { id: 15, name: "functional calculus", group: Group::Functional, run: functional_calculus },
        Criterion { id: 16, name: "slow oscillation", group: Group::Analysis, run: slow_oscillation },
    ]
}

/// Runs one criterion. `tolerance` replaces the tolerance of every
/// non-exact check.
pub fn run_criterion(c: &Criterion, tolerance: Option<f64>) -> CriterionResult {
    let start = Instant::now();
    let outcome = (c.run)();
    let elapsed = start.elapsed();
    let (mut checks, error) = match outcome {
        Ok(checks) => (checks, None),
        Err(e) => (Vec::new(), Some(e.to_string())),
    };
    if let Some(t) = tolerance {
        checks.iter_mut().filter(|c| !c.exact).for_each(|c| c.tolerance = t);
    }
    CriterionResult { id: c.id, name: c.name, group: c.group, checks, error, elapsed }
}

/// Runs the criteria in `only` (all when empty), in order.
pub fn run(only: &[Group], tolerance: Option<f64>) -> Vec<CriterionResult> {
    criteria()
        .into_par_iter()
        .filter(|c| only.is_empty() || only.contains(&c.group))
        .map(|c| run_criterion(&c, tolerance))
        .collect()
}

fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| lo * (hi / lo).powf(i as f64 / (n - 1) as f64)).collect()
}

fn max_of(it: impl IntoIterator<Item = Result<f64>>) -> Result<f64> {
    let mut m = 0.0f64;
    for x in it {
        let x = x?;
        // NaN must not be swallowed by max
        if x.is_nan() {
            return Ok(f64::NAN);
        }
        m = m.max(x);
    }
    Ok(m)
}

fn one_minus_exp(y: f64) -> f64 {
    -(-y).exp_m1()
}

fn admissibility() -> Result<Vec<Check>> {
    Ok(vec![Check::within("max over k <= 8 of the admissibility defect", max_of((0..=8).map(admissibility_defect))?, 1e-10)])
}

fn norm_constant() -> Result<Vec<Check>> {
    let dev = max_of((0..=8).map(|k| Ok((wavelet_norm_sq_quadrature(k)? - (2 * k + 1) as f64 / 2.0).abs())))?;
    Ok(vec![Check::within("max over k <= 8 of |(1/2)∫xℓ_k² - (2k+1)/2|", dev, 1e-10)])
}

// Largest |quadrature - closed form| on `grid`; non-convergence is an error.
fn closed_form_dev(symbol: &VerticalSymbol, k: u32, grid: &[f64]) -> Result<f64> {
    let spec = gamma_quadrature_spec();
    max_of(grid.par_iter().map(|&xi| {
        let q = gamma_quadrature(symbol, k, xi, &spec)?.require()?;
        Ok((q - gamma_closed_form(symbol, k, xi)?).norm())
    }).collect::<Vec<_>>())
}

fn indicator_closed_form() -> Result<Vec<Check>> {
    let grid = log_grid(0.01, 50.0, 200);
    let mut dev = 0.0f64;
    for k in 0..=5 {
        for lambda in [0.5, 1.0, 2.0] {
            dev = dev.max(closed_form_dev(&VerticalSymbol::indicator(lambda)?, k, &grid)?);
        }
    }
    let base = SpectralFunction::new(VerticalSymbol::indicator(0.5)?, 0);
    let base_dev = max_of(grid.iter().map(|&xi| Ok((base.eval(xi)? - one_minus_exp(xi)).norm())))?;
    Ok(vec![
        Check::within("quadrature vs closed form, k <= 5, λ ∈ {0.5, 1, 2}", dev, 1e-8),
        Check::within("k = 0, λ = 1/2 vs 1 - e^(-ξ)", base_dev, 1e-8),
    ])
}

fn sine_example() -> Result<Vec<Check>> {
    let rational = |xi: f64| {
        let x2 = xi * xi;
        2.0 * xi * (1.0 - 16.0 * x2 + 48.0 * x2 * x2) / (1.0 + 4.0 * x2).powi(3)
    };
    let spec = gamma_quadrature_spec();
    let a = VerticalSymbol::sine();
    let dev = max_of(log_grid(0.01, 50.0, 200).into_iter().map(|xi| {
        let q = gamma_quadrature(&a, 1, xi, &spec)?.require()?;
        Ok((q - rational(xi)).norm())
    }))?;
    let s = SpectralFunction::new(a, 1).with_method(Method::Quadrature)?;
    let limits = max_of([1e-6, 1e6].map(|xi| Ok(s.eval(xi)?.norm())))?;
    Ok(vec![
        Check::within("quadrature vs rational form", dev, 1e-8),
        Check::within("|γ| at ξ = 1e-6 and 1e6", limits, 1e-4),
    ])
}

fn osc_exp_example() -> Result<Vec<Check>> {
    let grid = log_grid(0.01, 50.0, 200);
    let a = VerticalSymbol::osc_exp();
    let dev = max_of((0..=4).map(|k| closed_form_dev(&a, k, &grid)))?;
    let mut zero = 0.0f64;
    let mut inf = 0.0f64;
    for k in 0..=4 {
        let s = SpectralFunction::new(a.clone(), k).with_method(Method::Quadrature)?;
        zero = zero.max(s.eval(1e-6)?.norm());
        inf = inf.max((s.eval(1e6)? - 1.0).norm());
    }
    Ok(vec![
        Check::within("quadrature vs closed form, k <= 4", dev, 1e-8),
        Check::within("|γ(1e-6)|", zero, 1e-3),
        Check::within("|γ(1e6) - 1|", inf, 1e-3),
    ])
}

fn unbounded_example() -> Result<Vec<Check>> {
    let s = SpectralFunction::new(VerticalSymbol::inv_sqrt_sin_inv(), 1);
    Ok(vec![
        Check::within("|γ(1e-6) - √(2π)|", (s.eval(1e-6)? - (2.0 * PI).sqrt()).norm(), 1e-3),
        Check::within("|γ(1e6)|", s.eval(1e6)?.norm(), 1e-3),
    ])
}

fn endpoint_limits() -> Result<Vec<Check>> {
    let mut inf = 0.0f64;
    let mut zero = 0.0f64;
    for (_, a) in limit_symbols() {
        let (a0, a_inf) = (a.a0.expect("declared"), a.a_inf.expect("declared"));
        for k in 0..=4 {
            let p = probe_endpoints(&SpectralFunction::new(a.clone(), k))?;
            inf = inf.max((p.at_infinity - a0).norm());
            zero = zero.max((p.at_zero - a_inf).norm());
        }
    }
    Ok(vec![
        Check::within("|γ(ξ → ∞) - a0| over 5 symbols, k <= 4", inf, 1e-3),
        Check::within("|γ(ξ → 0) - a_inf| over 5 symbols, k <= 4", zero, 1e-3),
    ])
}

fn legendre_kernel() -> Result<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let pts: Vec<(f64, f64)> = (0..100).map(|_| (rng.gen_range(0.1..=10.0), rng.gen_range(0.1..=10.0))).collect();
    let dev = max_of(
        pts.par_iter()
            .flat_map_iter(|&(xi, t)| (0..=4).map(move |k| Ok((b_kernel(k, xi, t)? - b_kernel_integral(k, xi, t)?).abs())))
            .collect::<Vec<_>>(),
    )?;
    let diag = max_of(pts.iter().flat_map(|&(xi, _)| (0..=4).map(move |k| Ok((b_kernel(k, xi, xi)? - 1.0).abs()))))?;
    Ok(vec![
        Check::within("Legendre form vs τ-integral on 100 random points, k <= 4", dev, 1e-8),
        Check::exact("|B_k(ξ,ξ) - 1|", diag),
    ])
}

fn compound_symbols() -> Result<Vec<Check>> {
    let grid: Vec<f64> = (1..=30).map(|i| 0.2 * i as f64).collect();
    let f = HalflineFunction::from_fn(
        |t| Complex64::new(t * (-0.5 * t).exp(), 0.3 * (t - 2.0).sin()),
        grid,
        Interpolation::Linear,
    )?;
    let max_diff = |x: &HalflineFunction, y: &HalflineFunction| {
        x.values.iter().zip(&y.values).map(|(p, q)| (p - q).norm()).fold(0.0, f64::max)
    };
    let one_h = HorizontalSymbol::Constant(Complex64::new(1.0, 0.0));
    let mut vertical = 0.0f64;
    for (_, a) in symbol_test_set() {
        for k in [0, 2] {
            let v = apply_ct_vertical(&SpectralFunction::new(a.clone(), k), &f)?;
            vertical = vertical.max(max_diff(&v, &apply_ct_product(&a, &one_h, k, &f)?));
        }
    }
    let one_v = VerticalSymbol::real_constant(1.0);
    let mut horizontal = 0.0f64;
    for b in [HorizontalSymbol::gaussian(0.5), HorizontalSymbol::gaussian(2.0)] {
        for k in [0, 1, 3] {
            let h = apply_ct_horizontal(&b, k, &f)?;
            horizontal = horizontal.max(max_diff(&h, &apply_ct_product(&one_v, &b, k, &f)?));
        }
    }
    Ok(vec![
        Check::within("product with b ≡ 1 vs vertical operator", vertical, 1e-6),
        Check::within("product with a ≡ 1 vs horizontal operator", horizontal, 1e-6),
    ])
}

const BARGMANN_FS: f64 = 32.0;

// Refinement level r doubles the function grid, the plane length and the
// scale density.
fn bargmann_roundtrip(k: u32, f: &(dyn Fn(f64) -> Complex64 + Send + Sync), r: u32, per_decade: f64) -> Result<f64> {
    let m = 50 << r;
    let grid: Vec<f64> = (0..m).map(|i| 0.05 + 14.0 * i as f64 / (m - 1) as f64).collect();
    let h = HalflineFunction::from_fn(f, grid, Interpolation::Linear)?;
    let len = 256 << r;
    let scales = ScaleGrid::for_band(k, BARGMANN_FS / len as f64, BARGMANN_FS / 2.0, per_decade)?;
    let plane = r_star_plane(k, &h, len, BARGMANN_FS, 0.0, &scales)?;
    let back = r_op(k, &plane)?;
    let want = HalflineFunction::from_fn(|x| h.eval(x), back.xi_grid.clone(), Interpolation::Linear)?;
    back.relative_error(&want)
}

/// Below this a round-trip error is at the floor set by the band and the
/// interpolation, so halving is not expected.
pub const REFINEMENT_FLOOR: f64 = 1e-5;

fn bargmann_decompositions() -> Result<Vec<Check>> {
    let funcs = halfline_test_functions();
    let mut roundtrip = 0.0f64;
    let mut ratio = 0.0f64;
    for (_, f) in &funcs {
        for k in [0, 1, 3] {
            roundtrip = roundtrip.max(bargmann_roundtrip(k, &**f, 1, DEFAULT_SCALES_PER_DECADE)?);
            let errs = (0..4)
                .map(|r| bargmann_roundtrip(k, &**f, r, 2.0 * (1u32 << r) as f64))
                .collect::<Result<Vec<f64>>>()?;
            for w in errs.windows(2) {
                if w[1] >= REFINEMENT_FLOOR {
                    ratio = ratio.max(w[1] / w[0]);
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut idempotence = 0.0f64;
    for k in [0, 1, 4] {
        let len = 256;
        let scales = ScaleGrid::for_band(k, BARGMANN_FS / len as f64, BARGMANN_FS / 2.0, 32.0)?;
        let coeffs = (0..len * scales.len())
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let plane = CWTPlane::new(k, (0..len).map(|n| n as f64 / BARGMANN_FS).collect(), &scales, coeffs)?;
        let p1 = projection(k, &plane)?;
        let p2 = projection(k, &p1)?;
        idempotence = idempotence.max(p2.distance(&p1)? / plane.norm_sq().sqrt());
    }
    Ok(vec![
        Check::within("round trip ‖R R*f - f‖/‖f‖, 3 functions, k ∈ {0, 1, 3}", roundtrip, 1e-3),
        Check::within("‖P²g - Pg‖/‖g‖ on random planes", idempotence, 1e-3),
        Check::within("round-trip error ratio under 2x refinement (above the floor)", ratio, 0.5),
    ])
}

fn identity_filter() -> Result<Vec<Check>> {
    let one = VerticalSymbol::real_constant(1.0);
    let mut worst = 0.0f64;
    for (_, s) in corpus::standard_signals() {
        let want = analytic_part(&s);
        for k in 0..=3 {
            let out = run_filter(&s, &one, k, FilterRoute::PerScale, None)?;
            worst = worst.max(out.relative_error(&want)?);
        }
    }
    Ok(vec![Check::within("relative L2 error vs analytic part, corpus, k <= 3", worst, 1e-3)])
}

fn wick_calculus() -> Result<Vec<Check>> {
    let mut identity = 0.0f64;
    for k in 0..=4 {
        let w = WickData::new(VerticalSymbol::real_constant(1.0), k);
        for v in [0.1, 1.0, 10.0] {
            identity = identity.max((wick_symbol(&w, v)? - 1.0).norm());
        }
    }
    let a = VerticalSymbol::indicator(0.5)?;
    let b = VerticalSymbol::sine();
    let cases: Vec<(u32, f64)> = [0, 2].into_iter().flat_map(|k| [0.3, 1.0, 4.0].map(|v| (k, v))).collect();
    let per_case = cases
        .par_iter()
        .map(|&(k, v)| {
            let ab = star_product(&a, &b, k, v)?;
            let nested = star_product_nested(&a, &b, k, v)?;
            let ba = star_product(&b, &a, k, v)?;
            Ok(((ab - nested).norm(), (ab - ba).norm()))
        })
        .collect::<Result<Vec<_>>>()?;
    let consistency = per_case.iter().map(|p| p.0).fold(0.0, f64::max);
    let commutativity = per_case.iter().map(|p| p.1).fold(0.0, f64::max);
    // (1 - e^{-ξ})² against 4ξe^{-2ξ}: 4(1/4 - 2/9 + 1/16) = 13/36.
    let analytic = (star_product(&a, &a, 0, 1.0)?.re - 13.0 / 36.0).abs();
    Ok(vec![
        Check::within("|wick(1) - 1|, k <= 4", identity, 1e-8),
        Check::within("star product vs nested route on γ_a γ_b", consistency, 1e-8),
        Check::within("star product of indicators vs 13/36", analytic, 1e-8),
        Check::within("|a ⋆ b - b ⋆ a|", commutativity, 1e-10),
    ])
}

fn appendix_identities() -> Result<Vec<Check>> {
    let spec = QuadratureSpec::default().with_tol(1e-12, 1e-12);
    let halfline = |f: &dyn Fn(f64) -> f64| -> Result<f64> {
        let g = |x: f64| Complex64::new(f(x), 0.0);
        Ok(integrate_halfline_with_points(&g, &[1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0], &spec)?.require()?.re)
    };
    let mut product = 0.0f64;
    for p in 0..=3 {
        for m in 0..=4i64 {
            for n in 0..=4i64 {
                for (alpha, beta) in [(0.0, 0.0), (0.0, 1.0), (1.0, 0.0), (1.0, 1.0)] {
                    let closed = laguerre_product_integral(p as f64, alpha, beta, m as u32, n as u32)?;
                    let quad = halfline(&|x| {
                        x.powi(p) * (-x).exp()
                            * laguerre_eval(LaguerreIndex::new(m, alpha), x)
                            * laguerre_eval(LaguerreIndex::new(n, beta), x)
                    })?;
                    product = product.max((closed - quad).abs());
                }
            }
        }
    }
    let nonzero_s = (1..=12).map(alternating_sum_s).collect::<Result<Vec<_>>>()?.iter().filter(|s| !num_traits::Zero::is_zero(*s)).count();
    let mut cumulative = 0.0f64;
    for k in 0..=6 {
        for x in [0.1, 1.0, 3.7, 10.0, 25.0, 50.0] {
            let f = |t: f64| Complex64::new(ell(k, t).powi(2), 0.0);
            let pts: Vec<f64> = (0..=50).map(|i| x * i as f64 / 50.0).collect();
            let quad = integrate_finite_with_points(&f, &pts, &spec)?.require()?.re;
            cumulative = cumulative.max((cumulative_laguerre_sq(k, x) - quad).abs());
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let mut cesaro_violations = 0usize;
    for _ in 0..1000 {
        let n = rng.gen_range(0..=10u32);
        let alpha = rng.gen_range(-0.5..3.0);
        let x = rng.gen_range(0.0..60.0);
        let l = laguerre_eval(LaguerreIndex::new(n as i64, alpha), x).abs();
        if l > cesaro_bound(n, alpha, x)? * (1.0 + 1e-12) {
            cesaro_violations += 1;
        }
    }
    let mut estimate_violations = 0usize;
    for _ in 0..1000 {
        let p = rng.gen_range(0..=3) as f64;
        let (m, n) = (rng.gen_range(0..=5u32), rng.gen_range(0..=5u32));
        let (alpha, beta) = (rng.gen_range(-0.5..2.0), rng.gen_range(-0.5..2.0));
        let x = rng.gen_range(0.0..60.0);
        if lambda_fn(p, m, n, alpha, beta, x) > lambda_pointwise_bound(p, m, n, alpha, beta, x)? * (1.0 + 1e-12) {
            estimate_violations += 1;
        }
        let (pp, q) = (rng.gen_range(0.01..10.0), rng.gen_range(0.01..10.0));
        let y: f64 = rng.gen_range(0.0..100.0);
        if y.powf(pp) * (-q * y).exp() > power_exp_bound(pp, q) * (1.0 + 1e-12) {
            estimate_violations += 1;
        }
    }
    Ok(vec![
        Check::within("Laguerre product integral vs quadrature", product, 1e-9),
        Check::exact("number of k in 1..=12 with S(k) != 0", nonzero_s as f64),
        Check::within("cumulative ∫ℓ_k² vs quadrature", cumulative, 1e-10),
        Check::exact("Cesàro bound violations at 1000 random points", cesaro_violations as f64),
        Check::exact("pointwise estimate violations at 1000 random points", estimate_violations as f64),
    ])
}

fn derivative_decay() -> Result<Vec<Check>> {
    let mut decay = 0.0f64;
    let mut fd = 0.0f64;
    for a in [VerticalSymbol::sine(), VerticalSymbol::indicator(1.0)?] {
        for k in 0..=2 {
            let s = SpectralFunction::new(a.clone(), k);
            for n in 1..=2 {
                let far = derivative_estimate(&s, n, 1e3)?.norm();
                let near = derivative_estimate(&s, n, 1.0)?.norm();
                decay = decay.max(far / near);
                for xi in [0.5, 2.0, 10.0] {
                    let d = derivative_estimate(&s, n, xi)?;
                    fd = fd.max((d - derivative_finite_difference(&s, n, xi, 1e-2 * xi)?).norm());
                }
            }
        }
    }
    Ok(vec![
        Check::within("|dⁿγ(1e3)| / |dⁿγ(1)|, n <= 2, k <= 2", decay, 1e-3),
        Check::within("differentiation under the integral vs finite differences", fd, 1e-5),
    ])
}

/// Largest `2λξ` used for the ∇ identity: beyond it `1 - x = e^(-2λξ)` is
/// too close to the spacing of doubles near 1 for `x` to determine `ξ`.
pub const NABLA_MAX_LOG: f64 = 18.0;

fn functional_calculus() -> Result<Vec<Check>> {
    let grid = log_grid(0.01, 50.0, 200);
    let mut delta_dev = 0.0f64;
    for lambda in [0.5, 1.0, 2.0] {
        for &xi in &grid {
            delta_dev = delta_dev.max((delta(lambda, one_minus_exp(xi))? - one_minus_exp(2.0 * lambda * xi)).abs());
        }
    }
    let cases: Vec<(VerticalSymbol, u32, f64)> = symbol_test_set()
        .into_iter()
        .flat_map(|(_, a)| (0..=4).flat_map(move |k| [0.5, 1.0, 2.0].map(|l| (a.clone(), k, l))))
        .collect();
    let nabla_dev = max_of(
        cases
            .par_iter()
            .map(|(a, k, lambda)| {
                let g = SpectralFunction::new(a.clone(), *k);
                let hi = (NABLA_MAX_LOG / (2.0 * lambda)).min(50.0);
                max_of(log_grid(0.01, hi, 40).into_iter().map(|xi| {
                    let x = one_minus_exp(2.0 * lambda * xi);
                    Ok((nabla(a, *lambda, *k, x)? - g.eval(xi)?).norm())
                }))
            })
            .collect::<Vec<_>>(),
    )?;
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    let mut composition = 0.0f64;
    let mut half = 0.0f64;
    for _ in 0..200 {
        let x: f64 = rng.gen_range(0.0..=1.0);
        composition = composition.max((transfer(2.0, 3.0, transfer(1.0, 2.0, x)?)? - transfer(1.0, 3.0, x)?).abs());
        half = half.max((delta(0.5, x)? - x).abs()).max((delta_inverse(0.5, x)? - x).abs());
    }
    Ok(vec![
        Check::within("Δ_λ(1 - e^(-ξ)) vs 1 - e^(-2λξ), λ ∈ {0.5, 1, 2}", delta_dev, 1e-12),
        Check::within("∇ identity over the symbol test set, k <= 4, 2λξ <= 18", nabla_dev, 1e-8),
        Check::within("transfer composition law", composition, 1e-12),
        Check::exact("|Δ_(1/2)(x) - x|", half),
    ])
}

fn slow_oscillation() -> Result<Vec<Check>> {
    let mut dev = 0.0f64;
    for k in 0..=2 {
        let s = SpectralFunction::new(VerticalSymbol::indicator(1.0)?, k);
        for lam in [0.5, 2.0, 10.0] {
            dev = dev.max((slowly_oscillating_ratio(&s, lam, 1e4)? - 1.0).norm());
        }
    }
    Ok(vec![Check::within("|γ(λξ)/γ(ξ) - 1| at ξ = 1e4, k <= 2", dev, 1e-3)])
}
