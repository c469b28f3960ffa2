//! Singularity-aware convolution engine, the generalized fractional
//! derivative/integral operators, and Sonine-identity residual checks.
//!
//! (a∗b)(t) = ∫₀ᵗ a(s) b(t−s) ds is reduced to the unit interval,
//!
//!   (a∗b)(t) = t^{1−λa−λb} ∫₀¹ u^{−λa}(1−u)^{−λb} Ā(tu) B̄(t(1−u)) du,
//!
//! with Ā(s) = s^{λa} a(s) the bounded endpoint factors, and dispatched on
//! the factors' smoothness:
//!
//! * both factors analytic → Gauss–Jacobi with weight exponents (−λb, −λa),
//!   spectrally exact;
//! * a fractional-step (Hölder) factor → tanh-sinh double-exponential rule on
//!   the split halves, certified by step halving;
//! * a logarithmically singular kernel → graded geometric panels
//!   (12 levels, ratio ¼, Gauss–Legendre 16 per panel) plus an analytic
//!   endpoint stub B(t)·∫₀^{tδ} A from the kernel's closed-form primitive
//!   (the log tail ∫₀^δ ~ 1/|ln δ| decays too slowly to truncate).

use crate::error::{Error, Result};
use crate::kernel::{FactorClass, Kernel, SoninePair};
use crate::quad::{de_half_unit_nodes, gauss_rule, RuleKind};

/// One sampled point of a residual check.
#[derive(Debug, Clone, Copy)]
pub struct ResidualPoint {
    /// Sample abscissa (t or p).
    pub x: f64,
    /// The quantity under test (e.g. (g∗f)(t)).
    pub value: f64,
    /// Deviation from the identity.
    pub residual: f64,
}

/// Residual summary for Sonine, Laplace, operator, and decomposition checks.
#[derive(Debug, Clone)]
pub struct ResidualReport {
    pub points: Vec<ResidualPoint>,
    pub max_abs_residual: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl ResidualReport {
    pub fn from_points(points: Vec<ResidualPoint>, tolerance: f64) -> Self {
        let max_abs_residual = points.iter().map(|p| p.residual.abs()).fold(0.0, f64::max);
        ResidualReport { points, max_abs_residual, tolerance, passed: max_abs_residual <= tolerance }
    }
}

/// One side of a convolution: an evaluable with a known endpoint exponent
/// (s^lambda · f(s) bounded near 0) and factor smoothness class.
pub(crate) struct Side<'a> {
    f: Box<dyn Fn(f64) -> Result<f64> + 'a>,
    lambda: f64,
    class: FactorClass,
    kernel: Option<&'a Kernel>,
}

impl<'a> Side<'a> {
    pub(crate) fn kernel(k: &'a Kernel) -> Self {
        Side {
            f: Box::new(move |s| k.eval(s)),
            lambda: k.sing_exponent(),
            class: k.factor_class(),
            kernel: Some(k),
        }
    }

    pub(crate) fn smooth(f: &'a dyn Fn(f64) -> f64) -> Self {
        Side { f: Box::new(move |s| Ok(f(s))), lambda: 0.0, class: FactorClass::Analytic, kernel: None }
    }

    fn func(f: impl Fn(f64) -> Result<f64> + 'a, lambda: f64, class: FactorClass) -> Self {
        Side { f: Box::new(f), lambda, class, kernel: None }
    }

    fn eval(&self, s: f64) -> Result<f64> {
        (self.f)(s)
    }

    fn bounded_factor(&self, s: f64) -> Result<f64> {
        Ok(s.powf(self.lambda) * self.eval(s)?)
    }

    /// ∫₀ˣ of this side, for the log-engine stub.
    fn head_integral(&self, x: f64) -> Result<f64> {
        if let Some(k) = self.kernel {
            return k.primitive(x);
        }
        // non-kernel sides are bounded near 0: one short Gauss panel suffices
        let rule = gauss_rule(RuleKind::Legendre, 8)?;
        let mut s = 0.0;
        for (&n, &w) in rule.nodes.iter().zip(&rule.weights) {
            s += w * self.eval(0.5 * x * (n + 1.0))?;
        }
        Ok(0.5 * x * s)
    }
}

/// ∫₀ᵗ a(s) b(t−s) ds.
pub(crate) fn conv_sides(a: &Side, b: &Side, t: f64, rule_size: usize) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::domain("convolve", format!("require t > 0, got {t}")));
    }
    if !(a.lambda < 1.0) || !(b.lambda < 1.0) {
        return Err(Error::domain(
            "convolve",
            format!("singular exponents must be < 1 (got {}, {})", a.lambda, b.lambda),
        ));
    }
    let log_involved = a.class == FactorClass::LogSingular || b.class == FactorClass::LogSingular;
    if log_involved {
        return Ok(log_half(a, b, t)? + log_half(b, a, t)?);
    }
    let power = 1.0 - a.lambda - b.lambda;
    let hoelder = a.class == FactorClass::Hoelder || b.class == FactorClass::Hoelder;
    if hoelder {
        let j1 = de_half(a, b, t)?;
        let j2 = de_half(b, a, t)?;
        return Ok(t.powf(power) * (j1 + j2));
    }
    // both factors analytic: Gauss–Jacobi with the exactly matching weight
    let rule = gauss_rule(RuleKind::Jacobi { a: -b.lambda, b: -a.lambda }, rule_size)?;
    let scale = 2f64.powf(a.lambda + b.lambda - 1.0);
    let mut sum = 0.0;
    for (&x, &w) in rule.nodes.iter().zip(&rule.weights) {
        let u = 0.5 * (x + 1.0);
        sum += w * a.bounded_factor(t * u)? * b.bounded_factor(t * (1.0 - u))?;
    }
    Ok(t.powf(power) * scale * sum)
}

/// ∫₀^½ u^{−λa}(1−u)^{−λb} Ā(tu) B̄(t(1−u)) du by tanh-sinh, certified by
/// step halving.
fn de_half(a: &Side, b: &Side, t: f64) -> Result<f64> {
    let integrand = |u: f64| -> Result<f64> {
        Ok(u.powf(-a.lambda)
            * (1.0 - u).powf(-b.lambda)
            * a.bounded_factor(t * u)?
            * b.bounded_factor(t * (1.0 - u))?)
    };
    let mut prev = f64::NAN;
    for &h in &[0.1, 0.05, 0.025] {
        let mut sum = 0.0;
        for (u, w) in de_half_unit_nodes(h) {
            sum += integrand(u)? * w;
        }
        if (sum - prev).abs() <= 1e-11 * sum.abs().max(1e-300) {
            return Ok(sum);
        }
        prev = sum;
    }
    Err(Error::no_conv("convolve", "tanh-sinh half-interval rule did not certify"))
}

const LOG_LEVELS: usize = 12;
const LOG_RATIO: f64 = 0.25;

/// J(A,B) = ∫₀^½ A(tu) B(t(1−u)) t du with graded panels toward u = 0 and an
/// analytic stub for the innermost [0, δ].
fn log_half(a: &Side, b: &Side, t: f64) -> Result<f64> {
    let rule = gauss_rule(RuleKind::Legendre, 16)?;
    let mut sum = 0.0;
    let mut hi = 0.5f64;
    for _ in 0..LOG_LEVELS {
        let lo = hi * LOG_RATIO;
        let c = 0.5 * (hi + lo);
        let hw = 0.5 * (hi - lo);
        let mut panel = 0.0;
        for (&x, &w) in rule.nodes.iter().zip(&rule.weights) {
            let u = c + hw * x;
            panel += w * a.eval(t * u)? * b.eval(t * (1.0 - u))?;
        }
        sum += panel * hw;
        hi = lo;
    }
    let delta = hi;
    // ∫₀^δ A(tu)B(t(1−u))du ≈ B(t)·A-primitive(tδ)/t; the neglected variation
    // of B over [0, δ] is O(B′·tδ) with δ = 2^{-1}4^{-12} ≈ 3e−8
    let stub = b.eval(t)? * a.head_integral(t * delta)? / t;
    Ok((sum + stub) * t)
}

/// (g∗f)(t) by the engine matching both kernels' endpoint structure.
pub fn convolve_singular(g: &Kernel, f: &Kernel, t: f64, rule_size: usize) -> Result<f64> {
    conv_sides(&Side::kernel(g), &Side::kernel(f), t, rule_size)
}

/// Residuals (g∗f)(t) − 1 over an ascending grid.
pub fn sonine_residual(pair: &SoninePair, ts: &[f64], rule_size: usize, tol: f64) -> Result<ResidualReport> {
    if ts.is_empty() {
        return Err(Error::domain("sonine_residual", "empty t grid"));
    }
    if ts.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::domain("sonine_residual", "t grid must be strictly ascending"));
    }
    let mut points = Vec::with_capacity(ts.len());
    for &t in ts {
        let v = convolve_singular(&pair.g, &pair.f, t, rule_size)?;
        points.push(ResidualPoint { x: t, value: v, residual: v - 1.0 });
    }
    Ok(ResidualReport::from_points(points, tol))
}

/// Generalized fractional derivative D_g φ(t) = g(t)·φ(0) + (g∗φ′)(t) for
/// continuously differentiable φ; the derivative is supplied analytically.
pub fn gfd_apply(
    g: &Kernel,
    phi: impl Fn(f64) -> f64,
    dphi: impl Fn(f64) -> f64,
    t: f64,
    rule_size: usize,
) -> Result<f64> {
    let head = g.eval(t)? * phi(0.0);
    let tail = conv_sides(&Side::kernel(g), &Side::smooth(&dphi), t, rule_size)?;
    Ok(head + tail)
}

/// Generalized fractional integral I_f φ(t) = (f∗φ)(t) for continuous φ.
pub fn gfi_apply(f: &Kernel, phi: impl Fn(f64) -> f64, t: f64, rule_size: usize) -> Result<f64> {
    conv_sides(&Side::kernel(f), &Side::smooth(&phi), t, rule_size)
}

/// Sups over the grid of the three operator-identity residuals.
#[derive(Debug, Clone)]
pub struct OperatorReport {
    /// max |D_g I_f φ − φ|
    pub d_then_i: f64,
    /// max |I_f D_g φ − φ|
    pub i_then_d: f64,
    /// max |D_g I_f φ − I_f D_g φ|
    pub commutation: f64,
    pub tolerance: f64,
    pub passed: bool,
}

/// Check D_g I_f φ = φ, I_f D_g φ = φ and the commutation D_g I_f = I_f D_g
/// over a grid.
///
/// Both composites expand through (I_k φ)′ = k·φ(0) + k∗φ′, so
/// D_a I_b φ(t) = φ(0)·(a∗b)(t) + (a∗(b∗φ′))(t); the inner convolution is
/// treated as a side with endpoint exponent λ_b − 1.
pub fn operator_identity_check(
    pair: &SoninePair,
    phi: impl Fn(f64) -> f64,
    dphi: impl Fn(f64) -> f64,
    ts: &[f64],
    rule_size: usize,
    tol: f64,
) -> Result<OperatorReport> {
    if ts.is_empty() {
        return Err(Error::domain("operator_identity_check", "empty t grid"));
    }
    let phi0 = phi(0.0);
    let mut r1_max = 0.0f64;
    let mut r2_max = 0.0f64;
    let mut r3_max = 0.0f64;
    for &t in ts {
        let d_i = composite(&pair.g, &pair.f, phi0, &dphi, t, rule_size)?;
        let i_d = composite(&pair.f, &pair.g, phi0, &dphi, t, rule_size)?;
        let target = phi(t);
        r1_max = r1_max.max((d_i - target).abs());
        r2_max = r2_max.max((i_d - target).abs());
        r3_max = r3_max.max((d_i - i_d).abs());
    }
    let passed = r1_max <= tol && r2_max <= tol && r3_max <= tol;
    Ok(OperatorReport { d_then_i: r1_max, i_then_d: r2_max, commutation: r3_max, tolerance: tol, passed })
}

/// φ(0)·(outer∗inner)(t) + (outer∗(inner∗φ′))(t)
fn composite(
    outer: &Kernel,
    inner: &Kernel,
    phi0: f64,
    dphi: &dyn Fn(f64) -> f64,
    t: f64,
    rule_size: usize,
) -> Result<f64> {
    let head = phi0 * convolve_singular(outer, inner, t, rule_size)?;
    let inner_class = match inner.factor_class() {
        FactorClass::Hoelder => FactorClass::Hoelder,
        // a log kernel forces the log engine through the outer side anyway
        _ => FactorClass::Analytic,
    };
    let inner_side = Side::func(
        move |s| conv_sides(&Side::kernel(inner), &Side::smooth(&dphi), s, rule_size),
        inner.sing_exponent() - 1.0,
        inner_class,
    );
    let tail = conv_sides(&Side::kernel(outer), &inner_side, t, rule_size)?;
    Ok(head + tail)
}
