use num_complex::Complex64;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Interpolation {
    Linear,
    /// Natural cubic spline, real and imaginary parts separately.
    Spline,
}

/// A function on `ℝ₊` given by samples on an increasing positive grid; zero
/// outside the grid's span.
#[derive(Clone, Debug, PartialEq)]
pub struct HalflineFunction {
    pub xi_grid: Vec<f64>,
    pub values: Vec<Complex64>,
    pub interpolation: Interpolation,
    // Spline second derivatives at the nodes.
    curvature: Vec<Complex64>,
}

impl HalflineFunction {
    pub fn new(xi_grid: Vec<f64>, values: Vec<Complex64>, interpolation: Interpolation) -> Result<Self> {
        if xi_grid.is_empty() || xi_grid.len() != values.len() {
            return Err(Error::GridMismatch(format!("{} grid points, {} values", xi_grid.len(), values.len())));
        }
        if xi_grid.iter().any(|x| !(*x > 0.0 && x.is_finite())) || xi_grid.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Invalid("xi grid must be positive and strictly increasing".into()));
        }
        let curvature = match interpolation {
            Interpolation::Spline if xi_grid.len() > 2 => natural_spline(&xi_grid, &values),
            _ => vec![Complex64::new(0.0, 0.0); xi_grid.len()],
        };
        Ok(Self { xi_grid, values, interpolation, curvature })
    }

    pub fn from_fn(f: impl Fn(f64) -> Complex64, xi_grid: Vec<f64>, interpolation: Interpolation) -> Result<Self> {
        let values = xi_grid.iter().map(|&x| f(x)).collect();
        Self::new(xi_grid, values, interpolation)
    }

    pub fn len(&self) -> usize {
        self.xi_grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xi_grid.is_empty()
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.xi_grid
    }

    pub fn eval(&self, xi: f64) -> Complex64 {
        let g = &self.xi_grid;
        let (lo, hi) = (g[0], g[g.len() - 1]);
        if !(xi >= lo && xi <= hi) {
            return Complex64::new(0.0, 0.0);
        }
        if g.len() == 1 {
            return self.values[0];
        }
        let i = g.partition_point(|&x| x <= xi).clamp(1, g.len() - 1) - 1;
        let h = g[i + 1] - g[i];
        let b = (xi - g[i]) / h;
        let a = 1.0 - b;
        let linear = self.values[i] * a + self.values[i + 1] * b;
        match self.interpolation {
            Interpolation::Linear => linear,
            Interpolation::Spline => {
                linear
                    + (self.curvature[i] * (a * a * a - a) + self.curvature[i + 1] * (b * b * b - b)) * (h * h / 6.0)
            }
        }
    }

    /// `∫ |f|² dξ` by the trapezoid rule on the grid.
    pub fn norm_sq(&self) -> f64 {
        self.xi_grid
            .windows(2)
            .zip(self.values.windows(2))
            .map(|(x, y)| 0.5 * (x[1] - x[0]) * (y[0].norm_sqr() + y[1].norm_sqr()))
            .sum()
    }

    /// Relative grid distance `‖self - other‖ / ‖other‖` on a shared grid.
    pub fn relative_error(&self, other: &HalflineFunction) -> Result<f64> {
        if self.xi_grid != other.xi_grid {
            return Err(Error::GridMismatch("functions live on different grids".into()));
        }
        let diff: Vec<Complex64> = self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect();
        let d = HalflineFunction::new(self.xi_grid.clone(), diff, Interpolation::Linear)?;
        let base = other.norm_sq();
        Ok(if base == 0.0 { d.norm_sq().sqrt() } else { (d.norm_sq() / base).sqrt() })
    }
}

// Tridiagonal solve for the natural cubic spline.
fn natural_spline(x: &[f64], y: &[Complex64]) -> Vec<Complex64> {
    let n = x.len();
    let zero = Complex64::new(0.0, 0.0);
    let mut m = vec![zero; n];
    let mut diag = vec![0.0; n];
    let mut rhs = vec![zero; n];
    for i in 1..n - 1 {
        let (h0, h1) = (x[i] - x[i - 1], x[i + 1] - x[i]);
        diag[i] = 2.0 * (h0 + h1);
        rhs[i] = ((y[i + 1] - y[i]) / h1 - (y[i] - y[i - 1]) / h0) * 6.0;
        if i > 1 {
            let w = h0 / diag[i - 1];
            diag[i] -= w * h0;
            rhs[i] = rhs[i] - rhs[i - 1] * w;
        }
    }
    for i in (1..n - 1).rev() {
        let h1 = x[i + 1] - x[i];
        let upper = if i + 1 < n - 1 { m[i + 1] * h1 } else { zero };
        m[i] = (rhs[i] - upper) / diag[i];
    }
    m
}
