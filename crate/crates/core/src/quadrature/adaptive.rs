//! Globally adaptive bisection driven by any panel rule.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_complex::Complex64;

use super::rules::RuleEstimate;
use super::IntegrationResult;
use crate::error::Result;

struct Panel {
    a: f64,
    b: f64,
    est: RuleEstimate,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.est.error == other.est.error
    }
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.est.error.total_cmp(&other.est.error)
    }
}

/// Absolute/relative tolerance pair and subdivision budget.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Budget {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_panels: usize,
}

impl Budget {
    pub fn target(&self, value: Complex64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.norm())
    }
}

/// Integrates over the consecutive intervals of `points` (at least two,
/// non-decreasing), bisecting the panel with the largest error until the
/// summed error meets the budget.
pub(crate) fn adaptive<F, R>(f: &F, rule: R, points: &[f64], budget: Budget) -> Result<IntegrationResult>
where
    F: Fn(f64) -> Complex64 + ?Sized,
    R: Fn(&F, f64, f64) -> Result<RuleEstimate>,
{
    let mut heap = BinaryHeap::new();
    let mut frozen: Vec<Panel> = Vec::new();
    let mut evaluations = 0;
    for w in points.windows(2) {
        if w[1] > w[0] {
            let est = rule(f, w[0], w[1])?;
            evaluations += est.evaluations;
            heap.push(Panel { a: w[0], b: w[1], est });
        }
    }
    loop {
        let (value, error) = totals(heap.iter().chain(frozen.iter()));
        if error <= budget.target(value) {
            return Ok(IntegrationResult { value, error_estimate: error, evaluations, converged: true });
        }
        if heap.len() + frozen.len() >= budget.max_panels {
            return Ok(IntegrationResult { value, error_estimate: error, evaluations, converged: false });
        }
        let Some(worst) = heap.pop() else {
            return Ok(IntegrationResult { value, error_estimate: error, evaluations, converged: false });
        };
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b || (worst.b - worst.a) < 1e-15 * worst.a.abs().max(worst.b.abs()) {
            frozen.push(worst);
            continue;
        }
        for (a, b) in [(worst.a, mid), (mid, worst.b)] {
            let est = rule(f, a, b)?;
            evaluations += est.evaluations;
            heap.push(Panel { a, b, est });
        }
    }
}

fn totals<'a>(panels: impl Iterator<Item = &'a Panel>) -> (Complex64, f64) {
    panels.fold((Complex64::default(), 0.0), |(v, e), p| (v + p.est.value, e + p.est.error))
}
