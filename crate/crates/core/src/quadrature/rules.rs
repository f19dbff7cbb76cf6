//! Fixed quadrature rules: Gauss–Legendre, Gauss–Laguerre and the 7/15-point
//! Gauss–Kronrod pair.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Nodes and weights of an `n`-point rule.
#[derive(Debug)]
pub struct Rule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

type Cache = Mutex<HashMap<usize, Arc<Rule>>>;

fn cached(cache: &'static OnceLock<Cache>, n: usize, build: fn(usize) -> Rule) -> Arc<Rule> {
    let map = cache.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(rule) = map.lock().expect("rule cache poisoned").get(&n) {
        return rule.clone();
    }
    let rule = Arc::new(build(n));
    map.lock().expect("rule cache poisoned").entry(n).or_insert(rule).clone()
}

/// Gauss–Legendre rule on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> Arc<Rule> {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    cached(&CACHE, n, build_legendre)
}

fn build_legendre(n: usize) -> Rule {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut pp = 0.0;
        for _ in 0..100 {
            let (mut p1, mut p2) = (1.0, 0.0);
            for j in 0..n {
                let p3 = p2;
                p2 = p1;
                p1 = ((2 * j + 1) as f64 * z * p2 - j as f64 * p3) / (j + 1) as f64;
            }
            pp = n as f64 * (z * p1 - p2) / (z * z - 1.0);
            let dz = p1 / pp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        nodes[i] = -z;
        nodes[n - 1 - i] = z;
        let w = 2.0 / ((1.0 - z * z) * pp * pp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    Rule { nodes, weights }
}

/// Gauss–Laguerre rule for `∫₀^∞ e^(-x) g(x) dx`.
pub fn gauss_laguerre(n: usize) -> Arc<Rule> {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    cached(&CACHE, n, build_laguerre)
}

fn build_laguerre(n: usize) -> Rule {
    let nf = n as f64;
    let mut nodes: Vec<f64> = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    let mut z = 0.0;
    for i in 0..n {
        z = match i {
            0 => 3.0 / (1.0 + 2.4 * nf),
            1 => z + 15.0 / (1.0 + 2.5 * nf),
            _ => {
                let ai = (i - 1) as f64;
                z + (1.0 + 2.55 * ai) / (1.9 * ai) * (z - nodes[i - 2])
            }
        };
        let (mut p1, mut p2, mut pp) = (0.0, 0.0, 0.0);
        for _ in 0..200 {
            p1 = 1.0;
            p2 = 0.0;
            for j in 0..n {
                let p3 = p2;
                p2 = p1;
                p1 = ((2 * j + 1) as f64 - z) * p2 / (j + 1) as f64 - j as f64 * p3 / (j + 1) as f64;
            }
            pp = nf * (p1 - p2) / z;
            let z1 = z;
            z = z1 - p1 / pp;
            if (z - z1).abs() <= 1e-15 * z.abs() {
                break;
            }
        }
        let _ = p1;
        nodes.push(z);
        weights.push(-1.0 / (pp * nf * p2));
    }
    Rule { nodes, weights }
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// One application of the 15-point Kronrod rule on `[a, b]`.
#[derive(Clone, Copy, Debug)]
pub struct RuleEstimate {
    pub value: Complex64,
    pub error: f64,
    pub evaluations: usize,
}

pub(crate) fn check(x: f64, y: Complex64) -> Result<Complex64> {
    if y.re.is_finite() && y.im.is_finite() {
        Ok(y)
    } else {
        Err(Error::NonFinite { abscissa: x })
    }
}

/// Kronrod value with the QUADPACK error heuristic applied to the real and
/// imaginary parts separately.
pub fn gauss_kronrod_15<F: Fn(f64) -> Complex64 + ?Sized>(f: &F, a: f64, b: f64) -> Result<RuleEstimate> {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = check(c, f(c))?;
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    let mut abs_k = [fc.re.abs() * WGK[7], fc.im.abs() * WGK[7]];
    let mut fv1 = [Complex64::default(); 7];
    let mut fv2 = [Complex64::default(); 7];
    for j in 0..7 {
        let dx = h * XGK[j];
        let f1 = check(c - dx, f(c - dx))?;
        let f2 = check(c + dx, f(c + dx))?;
        fv1[j] = f1;
        fv2[j] = f2;
        kron += (f1 + f2) * WGK[j];
        abs_k[0] += WGK[j] * (f1.re.abs() + f2.re.abs());
        abs_k[1] += WGK[j] * (f1.im.abs() + f2.im.abs());
        if j % 2 == 1 {
            gauss += (f1 + f2) * WG[j / 2];
        }
    }
    let mean = kron * 0.5;
    let mut asc = [WGK[7] * (fc.re - mean.re).abs(), WGK[7] * (fc.im - mean.im).abs()];
    for j in 0..7 {
        asc[0] += WGK[j] * ((fv1[j].re - mean.re).abs() + (fv2[j].re - mean.re).abs());
        asc[1] += WGK[j] * ((fv1[j].im - mean.im).abs() + (fv2[j].im - mean.im).abs());
    }
    let diff = (kron - gauss) * h;
    let mut error = 0.0;
    for (part, d) in [diff.re.abs(), diff.im.abs()].into_iter().enumerate() {
        let resasc = asc[part] * h.abs();
        let resabs = abs_k[part] * h.abs();
        let mut e = d;
        if resasc != 0.0 && e != 0.0 {
            e = resasc * (200.0 * e / resasc).powf(1.5).min(1.0);
        }
        if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
            e = e.max(50.0 * f64::EPSILON * resabs);
        }
        error += e;
    }
    Ok(RuleEstimate { value: kron * h, error, evaluations: 15 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_rule_is_exact_for_polynomials() {
        let r = gauss_legendre(10);
        let s: f64 = r.weights.iter().sum();
        assert!((s - 2.0).abs() < 1e-14);
        // ∫ x^18 = 2/19
        let m: f64 = r.nodes.iter().zip(&r.weights).map(|(x, w)| w * x.powi(18)).sum();
        assert!((m - 2.0 / 19.0).abs() < 1e-14);
    }

    #[test]
    fn laguerre_rule_moments() {
        for n in [16, 64, 128] {
            let r = gauss_laguerre(n);
            assert!(r.nodes.windows(2).all(|w| w[0] < w[1]), "n = {n}");
            let mut fact = 1.0;
            for j in 0..20 {
                if j > 0 {
                    fact *= j as f64;
                }
                let m: f64 = r.nodes.iter().zip(&r.weights).map(|(x, w)| w * x.powi(j)).sum();
                assert!((m / fact - 1.0).abs() < 1e-11, "n = {n}, j = {j}: {m} vs {fact}");
            }
        }
    }

    #[test]
    fn kronrod_integrates_smooth_function() {
        let f = |x: f64| Complex64::new(x.cos(), x.sin());
        let r = gauss_kronrod_15(&f, 0.0, 1.0).unwrap();
        let exact = Complex64::new(1f64.sin(), 1.0 - 1f64.cos());
        assert!((r.value - exact).norm() < 1e-15);
        assert!(r.error < 1e-12);
    }

    #[test]
    fn kronrod_reports_nan() {
        let f = |x: f64| Complex64::new(if x > 0.5 { f64::NAN } else { 1.0 }, 0.0);
        assert!(matches!(gauss_kronrod_15(&f, 0.0, 1.0), Err(Error::NonFinite { .. })));
    }
}
