//! Admissibility diagnostics: finite-order complete-monotonicity
//! certificates, singularity limit checks, regular-variation index
//! estimation, and the logarithmic asymptotics of the distributed-order
//! kernels.
//!
//! Complete monotonicity is undecidable from finitely many samples; the
//! forward-difference test is a necessary-condition certificate only: a CM
//! function satisfies (−1)^n Δ_h^n k ≥ 0 exactly at every order and step.

use crate::error::{Error, Result};
use crate::kernel::Kernel;
use crate::specfun::e1_scaled;

/// First failure of the alternating-difference sign condition.
#[derive(Debug, Clone, Copy)]
pub struct CmViolation {
    pub order: usize,
    pub t: f64,
    pub value: f64,
}

/// Outcome of the finite-order CM test (a necessary condition only).
#[derive(Debug, Clone)]
pub struct CMReport {
    pub max_order_checked: usize,
    pub first_violation: Option<CmViolation>,
    pub passed: bool,
}

/// Check (−1)^n Δ_h^n k(t) ≥ −1e−9·|k(t)| for n = 0..max_order over the grid.
///
/// Scans order-major, so `first_violation` carries the lowest failing order
/// (passing at order n implies no recorded violation at any order ≤ n).
pub fn cm_finite_difference_test(
    k: &Kernel,
    t_grid: &[f64],
    h: f64,
    max_order: usize,
) -> Result<CMReport> {
    if max_order > 8 {
        return Err(Error::domain("cm_finite_difference_test", "max_order must be <= 8"));
    }
    if !(h > 0.0) {
        return Err(Error::domain("cm_finite_difference_test", format!("require h > 0, got {h}")));
    }
    if t_grid.is_empty() || t_grid.iter().any(|&t| !(t > 0.0)) {
        return Err(Error::domain("cm_finite_difference_test", "grid must be positive"));
    }
    // binomial row cache up to order 8
    let mut first_violation = None;
    'orders: for n in 0..=max_order {
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        for &t in t_grid {
            // Δ_h^n k(t) = Σ_j (−1)^{n−j} C(n,j) k(t + j h)
            let mut delta = 0.0;
            for j in 0..=n {
                let c = binomial(n, j);
                let s = if (n - j) % 2 == 0 { 1.0 } else { -1.0 };
                delta += s * c * k.eval(t + j as f64 * h)?;
            }
            let floor = -1e-9 * k.eval(t)?.abs();
            if sign * delta < floor {
                first_violation = Some(CmViolation { order: n, t, value: sign * delta });
                break 'orders;
            }
        }
    }
    Ok(CMReport { max_order_checked: max_order, passed: first_violation.is_none(), first_violation })
}

fn binomial(n: usize, k: usize) -> f64 {
    let mut c = 1.0;
    for i in 0..k {
        c = c * (n - i) as f64 / (i + 1) as f64;
    }
    c
}

/// Sampled singularity trends of a kernel as t → 0.
#[derive(Debug, Clone)]
pub struct SingularityReport {
    /// k strictly increasing along decreasing t and final value > 10³·first.
    pub grows_unboundedly: bool,
    /// t·k(t) strictly decreasing along decreasing t and final < 10⁻²·first.
    pub t_times_k_to_zero: bool,
    /// (t, k(t), t·k(t)) at t = 10^{−1} … 10^{−decades}.
    pub samples: Vec<(f64, f64, f64)>,
}

/// Sample k at t = 10^{−j}, j = 1..decades, and test the two necessary
/// conditions of a Sonine kernel: k(t) → ∞ and t·k(t) → 0.
pub fn singularity_limit_test(k: &Kernel, decades: u32) -> Result<SingularityReport> {
    if !(4..=12).contains(&decades) {
        return Err(Error::domain("singularity_limit_test", "decades must be in [4, 12]"));
    }
    let mut samples = Vec::with_capacity(decades as usize);
    for j in 1..=decades {
        let t = 10f64.powi(-(j as i32));
        let v = k.eval(t)?;
        samples.push((t, v, t * v));
    }
    let grows = samples.windows(2).all(|w| w[1].1 > w[0].1)
        && samples.last().unwrap().1 > 1e3 * samples[0].1;
    let tk_to_zero = samples.windows(2).all(|w| w[1].2 < w[0].2)
        && samples.last().unwrap().2 < 1e-2 * samples[0].2;
    Ok(SingularityReport { grows_unboundedly: grows, t_times_k_to_zero: tk_to_zero, samples })
}

/// Least-squares slope of ln k against ln t over log-spaced samples in
/// [t_lo, t_hi]; estimates the regular-variation index at 0 (−α for a
/// derivative kernel).
pub fn rv_index_estimate(k: &Kernel, t_lo: f64, t_hi: f64, points: usize) -> Result<f64> {
    if !(t_lo > 0.0 && t_lo < t_hi && t_hi <= 1e-2) {
        return Err(Error::domain(
            "rv_index_estimate",
            format!("require 0 < t_lo < t_hi <= 1e-2, got [{t_lo}, {t_hi}]"),
        ));
    }
    if points < 8 {
        return Err(Error::domain("rv_index_estimate", "require points >= 8"));
    }
    let (l0, l1) = (t_lo.ln(), t_hi.ln());
    let mut xs = Vec::with_capacity(points);
    let mut ys = Vec::with_capacity(points);
    for i in 0..points {
        let lx = l0 + (l1 - l0) * i as f64 / (points - 1) as f64;
        let v = k.eval(lx.exp())?;
        if !(v > 0.0) {
            return Err(Error::DegenerateFit(format!("non-positive kernel value {v} at t={}", lx.exp())));
        }
        xs.push(lx);
        ys.push(v.ln());
    }
    let n = points as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    if sxx == 0.0 {
        return Err(Error::DegenerateFit("zero abscissa variance".to_string()));
    }
    Ok(sxy / sxx)
}

/// Which distributed-order kernel a log-asymptotics probe refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LogKernel {
    W,
    V,
}

/// Ratio of the kernel to its leading logarithmic asymptote at t_probe:
/// w(t)·t·(ln t)² for w, v(t)/(−ln t) for v. The caller asserts proximity
/// to 1.
pub fn log_asymptotics_check(which: LogKernel, t_probe: f64) -> Result<f64> {
    if !(1e-10..=1e-4).contains(&t_probe) {
        return Err(Error::domain(
            "log_asymptotics_check",
            format!("t_probe must be in [1e-10, 1e-4], got {t_probe}"),
        ));
    }
    match which {
        LogKernel::W => {
            let w = Kernel::distributed_order_w().eval(t_probe)?;
            let lnt = t_probe.ln();
            Ok(w * t_probe * lnt * lnt)
        }
        LogKernel::V => Ok(e1_scaled(t_probe) / (-t_probe.ln())),
    }
}
