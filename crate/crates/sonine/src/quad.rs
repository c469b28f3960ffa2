//! Gaussian quadrature rules (Legendre, Jacobi, generalized Laguerre) built
//! by the Golub–Welsch algorithm, plus the double-exponential helpers used by
//! the convolution and Laplace engines.
//!
//! Rules are cached by (kind, parameters, count); lookup is lock-guarded and
//! insertion idempotent, so concurrent use is safe.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::specfun::{gamma_raw, log_gamma_raw};

/// Which classical weight the rule integrates against.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RuleKind {
    /// Weight 1 on [−1, 1].
    Legendre,
    /// Weight (1−x)^a (1+x)^b on [−1, 1]; a, b > −1.
    Jacobi { a: f64, b: f64 },
    /// Weight x^a e^{−x} on [0, ∞); a > −1.
    Laguerre { a: f64 },
}

/// Nodes and weights of a Gaussian rule on its canonical interval.
#[derive(Debug, Clone)]
pub struct QuadratureRule {
    pub kind: RuleKind,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn count(&self) -> usize {
        self.nodes.len()
    }

    /// ∫₀¹ u^b (1−u)^a f(u) du for a Jacobi rule (weight exponents folded in);
    /// plain ∫₀¹ f for Legendre.
    pub fn integrate_01(&self, f: impl Fn(f64) -> f64) -> f64 {
        let (a, b) = match self.kind {
            RuleKind::Legendre => (0.0, 0.0),
            RuleKind::Jacobi { a, b } => (a, b),
            RuleKind::Laguerre { .. } => panic!("integrate_01 on a half-line rule"),
        };
        let scale = 2f64.powf(-(a + b + 1.0));
        let mut s = 0.0;
        for (&x, &w) in self.nodes.iter().zip(&self.weights) {
            s += w * f(0.5 * (x + 1.0));
        }
        s * scale
    }

    /// ∫ₐᵇ f(x) dx for a Legendre rule mapped to [lo, hi].
    pub fn integrate_interval(&self, lo: f64, hi: f64, f: impl Fn(f64) -> f64) -> f64 {
        debug_assert!(matches!(self.kind, RuleKind::Legendre));
        let c = 0.5 * (hi + lo);
        let hw = 0.5 * (hi - lo);
        let mut s = 0.0;
        for (&x, &w) in self.nodes.iter().zip(&self.weights) {
            s += w * f(c + hw * x);
        }
        s * hw
    }

    /// ∫₀^∞ x^a e^{−x} f(x) dx for a Laguerre rule.
    pub fn integrate_halfline(&self, f: impl Fn(f64) -> f64) -> f64 {
        debug_assert!(matches!(self.kind, RuleKind::Laguerre { .. }));
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }
}

#[derive(PartialEq, Eq, Hash)]
struct RuleKey {
    tag: u8,
    a: u64,
    b: u64,
    count: usize,
}

fn key_of(kind: RuleKind, count: usize) -> RuleKey {
    match kind {
        RuleKind::Legendre => RuleKey { tag: 0, a: 0, b: 0, count },
        RuleKind::Jacobi { a, b } => RuleKey { tag: 1, a: a.to_bits(), b: b.to_bits(), count },
        RuleKind::Laguerre { a } => RuleKey { tag: 2, a: a.to_bits(), b: 0, count },
    }
}

fn cache() -> &'static Mutex<HashMap<RuleKey, Arc<QuadratureRule>>> {
    static CACHE: OnceLock<Mutex<HashMap<RuleKey, Arc<QuadratureRule>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Build (or fetch from cache) a Gaussian rule with `count` nodes.
pub fn gauss_rule(kind: RuleKind, count: usize) -> Result<Arc<QuadratureRule>> {
    if !(2..=256).contains(&count) {
        return Err(Error::param("gauss_rule", format!("count must be in [2, 256], got {count}")));
    }
    match kind {
        RuleKind::Jacobi { a, b } if !(a > -1.0 && b > -1.0) => {
            return Err(Error::param("gauss_rule", format!("jacobi exponents must be > -1, got a={a}, b={b}")));
        }
        RuleKind::Laguerre { a } if !(a > -1.0) => {
            return Err(Error::param("gauss_rule", format!("laguerre exponent must be > -1, got a={a}")));
        }
        _ => {}
    }
    let key = key_of(kind, count);
    if let Some(r) = cache().lock().unwrap().get(&key) {
        return Ok(Arc::clone(r));
    }
    let rule = Arc::new(build_rule(kind, count));
    cache().lock().unwrap().entry(key).or_insert_with(|| Arc::clone(&rule));
    Ok(rule)
}

/// Golub–Welsch: eigen-decompose the symmetric Jacobi matrix of the weight's
/// three-term recurrence; nodes are eigenvalues, weights are
/// μ₀·(first eigenvector component)².
fn build_rule(kind: RuleKind, n: usize) -> QuadratureRule {
    let (diag, offdiag, mu0) = recurrence(kind, n);
    let mut m = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        m[(i, i)] = diag[i];
        if i + 1 < n {
            m[(i, i + 1)] = offdiag[i];
            m[(i + 1, i)] = offdiag[i];
        }
    }
    let eig = m.symmetric_eigen();
    let mut pairs: Vec<(f64, f64)> = (0..n)
        .map(|j| {
            let lambda = eig.eigenvalues[j];
            let v0 = eig.eigenvectors[(0, j)];
            (lambda, mu0 * v0 * v0)
        })
        .collect();
    pairs.sort_by(|p, q| p.0.total_cmp(&q.0));
    // symmetric weights give a zero eigenvalue that the QR iteration places
    // slightly off; snap it for the symmetric kinds
    if n % 2 == 1 {
        let symmetric = match kind {
            RuleKind::Legendre => true,
            RuleKind::Jacobi { a, b } => a == b,
            RuleKind::Laguerre { .. } => false,
        };
        if symmetric && pairs[n / 2].0.abs() < 1e-13 {
            pairs[n / 2].0 = 0.0;
        }
    }
    QuadratureRule {
        kind,
        nodes: pairs.iter().map(|p| p.0).collect(),
        weights: pairs.iter().map(|p| p.1).collect(),
    }
}

fn recurrence(kind: RuleKind, n: usize) -> (Vec<f64>, Vec<f64>, f64) {
    match kind {
        RuleKind::Legendre => recurrence(RuleKind::Jacobi { a: 0.0, b: 0.0 }, n),
        RuleKind::Jacobi { a, b } => {
            let mut diag = vec![0.0; n];
            let mut off = vec![0.0; n.saturating_sub(1)];
            diag[0] = (b - a) / (a + b + 2.0);
            for k in 1..n {
                let k2 = 2.0 * k as f64 + a + b;
                diag[k] = (b * b - a * a) / (k2 * (k2 + 2.0));
                let kf = k as f64;
                off[k - 1] = if k == 1 {
                    // the generic formula is 0/0 at a+b = −1; the (1+a+b)
                    // factor cancels against (k2 − 1)
                    (4.0 * (1.0 + a) * (1.0 + b) / ((a + b + 2.0).powi(2) * (a + b + 3.0))).sqrt()
                } else {
                    let num = 4.0 * kf * (kf + a) * (kf + b) * (kf + a + b);
                    let den = k2 * k2 * (k2 + 1.0) * (k2 - 1.0);
                    (num / den).sqrt()
                };
            }
            // total mass 2^{a+b+1} B(a+1, b+1)
            let mu0 = 2f64.powf(a + b + 1.0)
                * (log_gamma_raw(a + 1.0) + log_gamma_raw(b + 1.0) - log_gamma_raw(a + b + 2.0)).exp();
            (diag, off, mu0)
        }
        RuleKind::Laguerre { a } => {
            let diag: Vec<f64> = (0..n).map(|k| 2.0 * k as f64 + a + 1.0).collect();
            let off: Vec<f64> = (1..n).map(|k| ((k as f64) * (k as f64 + a)).sqrt()).collect();
            (diag, off, gamma_raw(a + 1.0))
        }
    }
}

// ---------------------------------------------------------------------------
// Double-exponential helpers
// ---------------------------------------------------------------------------

/// Tanh-sinh nodes (u, weight) for ∫₀^½ f(u) du with the map
/// u = 1/(2(1+e^{−2y})), y = (π/2)sinh ξ, which keeps full relative precision
/// in the u→0 tail. Handles integrable endpoint singularities at u = 0.
pub(crate) fn de_half_unit_nodes(h: f64) -> Vec<(f64, f64)> {
    let j_lo = (-6.4 / h).round() as i64;
    let j_hi = (4.0 / h).round() as i64;
    let mut nodes = Vec::with_capacity((j_hi - j_lo + 1) as usize);
    for j in j_lo..=j_hi {
        let xi = j as f64 * h;
        let y = 0.5 * std::f64::consts::PI * xi.sinh();
        if -2.0 * y > 700.0 {
            continue;
        }
        let u = 0.5 / (1.0 + (-2.0 * y).exp());
        if u <= 0.0 || u >= 0.5 {
            continue;
        }
        let sech = 2.0 * (-y.abs()).exp() / (1.0 + (-2.0 * y.abs()).exp());
        let du = 0.125 * std::f64::consts::PI * xi.cosh() * sech * sech;
        if du > 0.0 {
            nodes.push((u, du * h));
        }
    }
    nodes
}

#[cfg(test)]
pub(crate) fn de_half_unit_sum(f: &dyn Fn(f64) -> f64, h: f64) -> f64 {
    de_half_unit_nodes(h).iter().map(|&(u, w)| f(u) * w).sum()
}

/// Step-halving certification wrapper around [`de_half_unit_sum`].
#[cfg(test)]
pub(crate) fn de_half_unit(f: &dyn Fn(f64) -> f64, tol: f64, op: &'static str) -> Result<f64> {
    let mut prev = de_half_unit_sum(f, 0.1);
    for &h in &[0.05, 0.025] {
        let cur = de_half_unit_sum(f, h);
        if (cur - prev).abs() <= tol * cur.abs().max(1e-300) {
            return Ok(cur);
        }
        prev = cur;
    }
    Err(Error::no_conv(op, "tanh-sinh half-interval rule did not certify"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::beta;

    #[test]
    fn legendre_two_point() {
        let r = gauss_rule(RuleKind::Legendre, 2).unwrap();
        let s = 1.0 / 3f64.sqrt();
        assert!((r.nodes[0] + s).abs() < 1e-14);
        assert!((r.nodes[1] - s).abs() < 1e-14);
        assert!((r.weights[0] - 1.0).abs() < 1e-14);
        assert!((r.weights[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn jacobi00_equals_legendre() {
        for n in [3, 8, 17, 64] {
            let l = gauss_rule(RuleKind::Legendre, n).unwrap();
            let j = gauss_rule(RuleKind::Jacobi { a: 0.0, b: 0.0 }, n).unwrap();
            for i in 0..n {
                assert!((l.nodes[i] - j.nodes[i]).abs() < 1e-13, "node {i} of {n}");
                assert!((l.weights[i] - j.weights[i]).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn arcsine_weight_mass() {
        // ∫₀¹ u^{−1/2}(1−u)^{−1/2} du = π
        let r = gauss_rule(RuleKind::Jacobi { a: -0.5, b: -0.5 }, 16).unwrap();
        let mass = r.integrate_01(|_| 1.0);
        assert!((mass - std::f64::consts::PI).abs() < 1e-13, "mass = {mass}");
    }

    #[test]
    fn moments_to_design_order() {
        // each rule integrates monomials up to degree 2n−1 against its weight
        let n = 12;
        let a = 0.7;
        let b = -0.3;
        let r = gauss_rule(RuleKind::Jacobi { a, b }, n).unwrap();
        for deg in 0..(2 * n) {
            let got = r.integrate_01(|u| u.powi(deg as i32));
            // ∫₀¹ u^{b+deg}(1−u)^a du = B(b+deg+1, a+1)
            let want = beta(b + deg as f64 + 1.0, a + 1.0).unwrap();
            assert!((got - want).abs() <= 1e-12 * want.abs(), "deg {deg}: {got} vs {want}");
        }

        let lag = gauss_rule(RuleKind::Laguerre { a: -0.4 }, n).unwrap();
        for deg in 0..(2 * n) {
            let got = lag.integrate_halfline(|x| x.powi(deg as i32));
            let want = gamma_raw(-0.4 + deg as f64 + 1.0);
            assert!((got - want).abs() <= 1e-12 * want, "laguerre deg {deg}");
        }
    }

    #[test]
    fn laguerre_smooth_integrand() {
        // ∫₀^∞ x^{0.5} e^{−x} e^{−x/2} dx = Γ(1.5)/(1.5)^{1.5}
        let r = gauss_rule(RuleKind::Laguerre { a: 0.5 }, 48).unwrap();
        let got = r.integrate_halfline(|x| (-0.5 * x).exp());
        let want = gamma_raw(1.5) / 1.5f64.powf(1.5);
        assert!((got - want).abs() < 1e-13 * want);
    }

    #[test]
    fn parameter_errors() {
        assert!(gauss_rule(RuleKind::Legendre, 1).is_err());
        assert!(gauss_rule(RuleKind::Legendre, 257).is_err());
        assert!(gauss_rule(RuleKind::Jacobi { a: -1.0, b: 0.0 }, 8).is_err());
        assert!(gauss_rule(RuleKind::Laguerre { a: -1.2 }, 8).is_err());
    }

    #[test]
    fn cache_returns_same_rule() {
        let r1 = gauss_rule(RuleKind::Jacobi { a: -0.25, b: -0.5 }, 32).unwrap();
        let r2 = gauss_rule(RuleKind::Jacobi { a: -0.25, b: -0.5 }, 32).unwrap();
        assert!(Arc::ptr_eq(&r1, &r2));
    }

    #[test]
    fn de_half_unit_known_integrals() {
        // ∫₀^½ u^{−1/2} du = 2·(1/2)^{1/2}
        let f = |u: f64| u.powf(-0.5);
        let got = de_half_unit(&f, 1e-12, "test").unwrap();
        assert!((got - 2.0 * 0.5f64.sqrt()).abs() < 1e-12);
        // ∫₀^½ ln(u) du = ½(ln ½ − 1)
        let g = |u: f64| u.ln();
        let got = de_half_unit(&g, 1e-12, "test").unwrap();
        assert!((got - 0.5 * (0.5f64.ln() - 1.0)).abs() < 1e-12);
    }
}
