//! Constructive Sonine-associate solver on truncated fractional power
//! series.
//!
//! For g(t) = t^{−α} Σₘ aₘ t^{mβ} the associate f(t) = t^{α−1} Σₙ bₙ t^{nβ}
//! is fixed termwise by the Beta-moment identity t^μ ∗ t^ν = B(μ+1, ν+1)
//! t^{μ+ν+1}: the t^{kβ} coefficient of g∗f must vanish for k ≥ 1 and equal
//! 1 at k = 0, which gives the triangular recursion
//!
//!   b₀ = 1 / (a₀ Γ(1−α) Γ(α)),
//!   b_k = −[ Σ_{n<k} a_{k−n} b_n Γ((k−n)β+1−α) Γ(nβ+α) ]
//!         / (a₀ Γ(1−α) Γ(kβ+α)).
//!
//! Gamma ratios are evaluated as log-gamma differences so the recursion stays
//! finite for kβ beyond the overflow point of Γ.

use crate::error::{Error, Result};
use crate::kernel::FracSeries;
use crate::specfun::log_gamma_raw;

/// Output of [`associate_series`].
#[derive(Debug, Clone)]
pub struct AssociateResult {
    /// Truncated associate series, lead = −(1 + g.lead), same step as g.
    pub f: FracSeries,
    /// The closed form 1/(a₀ Γ(α) Γ(1−α)) of the leading coefficient.
    pub b0_closed_form: f64,
    /// Truncation order N (the series holds b₀…b_N).
    pub order: usize,
}

/// Solve for the associate series of `g` up to order N.
///
/// Requires g.lead = −α with 0 < α < 1.
pub fn associate_series(g: &FracSeries, order: usize) -> Result<AssociateResult> {
    let alpha = -g.lead();
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::domain(
            "associate_series",
            format!("require g.lead = -alpha with 0 < alpha < 1, got lead {}", g.lead()),
        ));
    }
    let beta = g.step();
    let a = g.coeffs();
    let a0 = a[0];
    debug_assert!(a0 != 0.0, "FracSeries invariant");

    let lg_1ma = log_gamma_raw(1.0 - alpha);
    let b0 = (-(lg_1ma + log_gamma_raw(alpha))).exp() / a0;
    let mut b = Vec::with_capacity(order + 1);
    b.push(b0);
    for k in 1..=order {
        let lg_k = log_gamma_raw(k as f64 * beta + alpha);
        let mut sum = 0.0;
        for n in 0..k {
            let am = *a.get(k - n).unwrap_or(&0.0);
            if am == 0.0 || b[n] == 0.0 {
                continue;
            }
            let ln_ratio = log_gamma_raw((k - n) as f64 * beta + 1.0 - alpha)
                + log_gamma_raw(n as f64 * beta + alpha)
                - lg_1ma
                - lg_k;
            sum += am * b[n] * ln_ratio.exp();
        }
        b.push(-sum / a0);
    }
    Ok(AssociateResult {
        f: FracSeries::new(alpha - 1.0, beta, b)?,
        b0_closed_form: b0,
        order,
    })
}

/// Series of the exp-damped kernel g(t) = t^{−α} exp(−t^β):
/// lead −α, step β, coefficients (−1)^m/m!.
pub fn exp_beta_series(alpha: f64, beta: f64, order: usize) -> Result<FracSeries> {
    if !(alpha > 0.0 && alpha < 1.0 && beta > 0.0 && beta < 1.0) {
        return Err(Error::domain(
            "exp_beta_series",
            format!("require 0 < alpha, beta < 1, got alpha={alpha}, beta={beta}"),
        ));
    }
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut c = 1.0;
    for m in 0..=order {
        coeffs.push(c);
        c *= -1.0 / (m as f64 + 1.0);
    }
    FracSeries::new(-alpha, beta, coeffs)
}

/// t^lead Σ aₙ t^{n·step} by compensated summation.
///
/// The caller can consult [`FracSeries::truncation_dominated`] to detect when
/// the last retained term still contributes (truncation dominance warning).
pub fn eval_series(s: &FracSeries, t: f64) -> Result<f64> {
    s.eval(t)
}

/// Coefficients c_k of (g∗f)(t) = Σ c_k t^{kβ}, assembled from the same
/// Beta-moment terms the solver cancels; c₀ = 1 and c_k ≈ 0 certify the
/// solution by construction.
pub fn convolution_coefficients(g: &FracSeries, f: &FracSeries, upto: usize) -> Result<Vec<f64>> {
    let alpha = -g.lead();
    let beta = g.step();
    if (f.lead() - (alpha - 1.0)).abs() > 1e-12 || (f.step() - beta).abs() > 1e-12 {
        return Err(Error::domain(
            "convolution_coefficients",
            "f must have lead = g-alpha - 1 and the same step as g",
        ));
    }
    let a = g.coeffs();
    let b = f.coeffs();
    let mut c = Vec::with_capacity(upto + 1);
    for k in 0..=upto {
        let lg_k1 = log_gamma_raw(k as f64 * beta + 1.0);
        let mut sum = 0.0;
        for n in 0..=k {
            let am = *a.get(k - n).unwrap_or(&0.0);
            let bn = *b.get(n).unwrap_or(&0.0);
            if am == 0.0 || bn == 0.0 {
                continue;
            }
            let ln_ratio = log_gamma_raw((k - n) as f64 * beta + 1.0 - alpha)
                + log_gamma_raw(n as f64 * beta + alpha)
                - lg_k1;
            sum += am * bn * ln_ratio.exp();
        }
        c.push(sum);
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::{gamma, recip_gamma};

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn power_law_associate_is_exact() {
        for alpha in [0.2, 0.5, 0.8] {
            let g = FracSeries::new(-alpha, 1.0, vec![recip_gamma(1.0 - alpha)]).unwrap();
            let res = associate_series(&g, 5).unwrap();
            assert!(rel(res.f.coeffs()[0], recip_gamma(alpha)) < 1e-14);
            for k in 1..=5 {
                assert_eq!(res.f.coeffs()[k], 0.0, "b_{k} should vanish");
            }
            assert_eq!(res.f.lead(), alpha - 1.0);
        }
    }

    #[test]
    fn exp_damped_golden_constants() {
        // C = sin(πα)/π and a₁ = Γ(α)Γ(β−α+1)/(Γ(α+β)Γ(1−α)) at α=0.3, β=0.6
        let g = exp_beta_series(0.3, 0.6, 8).unwrap();
        let res = associate_series(&g, 8).unwrap();
        let b = res.f.coeffs();
        assert!(rel(b[0], 0.257518107400241933) < 1e-14, "b0 = {}", b[0]);
        assert!(rel(b[1] / b[0], 1.93552711268984512) < 1e-12, "b1/b0 = {}", b[1] / b[0]);
        assert!(rel(res.b0_closed_form, b[0]) < 1e-15);
    }

    #[test]
    fn ml_series_associate_terminates() {
        // g = t^{α−1}E_{α,α}(−t^α) has the two-term associate
        // t^{−α}/Γ(1−α) + 1; all b_k for k ≥ 2 vanish
        let alpha = 0.5;
        let k = crate::kernel::Kernel::ml_kernel(alpha, alpha).unwrap();
        let g = crate::kernel::to_frac_series(&k, 14).unwrap();
        let res = associate_series(&g, 14).unwrap();
        let b = res.f.coeffs();
        assert!(rel(b[0], recip_gamma(1.0 - alpha)) < 1e-13);
        assert!(rel(b[1], 1.0) < 1e-13);
        for k in 2..=12 {
            assert!(b[k].abs() <= 1e-10, "b_{k} = {}", b[k]);
        }
    }

    #[test]
    fn involution_recovers_exp_damped() {
        let g = exp_beta_series(0.3, 0.6, 12).unwrap();
        let f = associate_series(&g, 12).unwrap().f;
        let g2 = associate_series(&f, 12).unwrap().f;
        for (m, (&got, &want)) in g2.coeffs().iter().zip(g.coeffs()).enumerate() {
            assert!(rel(got, want) < 1e-9, "a_{m}: {got} vs {want}");
        }
        assert_eq!(g2.lead(), g.lead());
    }

    #[test]
    fn residual_by_construction() {
        let g = exp_beta_series(0.45, 0.7, 16).unwrap();
        let f = associate_series(&g, 16).unwrap().f;
        let c = convolution_coefficients(&g, &f, 16).unwrap();
        assert!(rel(c[0], 1.0) < 1e-14);
        for k in 1..=16 {
            assert!(c[k].abs() <= 1e-12, "c_{k} = {}", c[k]);
        }
    }

    #[test]
    fn index_relation() {
        let g = exp_beta_series(0.25, 0.5, 4).unwrap();
        let f = associate_series(&g, 4).unwrap().f;
        assert_eq!(f.lead() + g.lead(), -1.0);
        assert_eq!(f.step(), g.step());
    }

    #[test]
    fn exp_beta_series_shape() {
        let s = exp_beta_series(0.3, 0.6, 3).unwrap();
        assert_eq!(s.coeffs(), &[1.0, -1.0, 0.5, -1.0 / 6.0]);
        assert_eq!(s.lead(), -0.3);
        assert_eq!(s.step(), 0.6);
        assert!(exp_beta_series(0.0, 0.5, 3).is_err());
        assert!(exp_beta_series(0.5, 1.0, 3).is_err());
    }

    #[test]
    fn exp_beta_eval_matches_closed_form() {
        let s = exp_beta_series(0.3, 0.6, 40).unwrap();
        // 250-digit closed-form values
        assert!(rel(eval_series(&s, 0.5).unwrap(), 0.636475215023763648) < 1e-12);
        assert!(rel(eval_series(&s, 0.25).unwrap(), 0.980799745470756814) < 1e-12);
        let closed = |t: f64| t.powf(-0.3) * (-t.powf(0.6)).exp();
        for t in [0.05, 0.1, 0.7, 1.0] {
            assert!(rel(eval_series(&s, t).unwrap(), closed(t)) < 1e-12, "t={t}");
        }
    }

    #[test]
    fn truncation_dominance_flag() {
        let s = exp_beta_series(0.3, 0.6, 4).unwrap();
        assert!(!s.truncation_dominated(1e-6));
        assert!(s.truncation_dominated(2.0));
    }

    #[test]
    fn degenerate_inputs_rejected() {
        // lead not in (-1, 0)
        let g = FracSeries::new(0.5, 1.0, vec![1.0]).unwrap();
        assert!(associate_series(&g, 3).is_err());
        // gamma-overflow regime stays finite: large order, small step
        let g = exp_beta_series(0.3, 0.6, 400).unwrap();
        let res = associate_series(&g, 400).unwrap();
        assert!(res.f.coeffs().iter().all(|b| b.is_finite()));
    }

    #[test]
    fn b0_matches_reflection_identity() {
        for alpha in [0.1, 0.33, 0.5, 0.77] {
            let g = FracSeries::new(-alpha, 0.5, vec![2.0, 1.0]).unwrap();
            let res = associate_series(&g, 1).unwrap();
            let want = crate::specfun::sinpi(alpha) / std::f64::consts::PI / 2.0;
            assert!(rel(res.b0_closed_form, want) < 1e-13);
            let _ = gamma(alpha).unwrap();
        }
    }
}
