//! Sonine kernel pairs for generalized fractional calculus.
//!
//! A pair of locally integrable kernels (g, f) with (g∗f)(t) = 1 for all
//! t ≥ 0 defines a generalized fractional derivative D_g φ = (g∗φ)′ and its
//! inverse integral I_f φ = f∗φ. This crate provides:
//!
//! * [`specfun`] — gamma/log-gamma/beta, the two-parameter Mittag-Leffler
//!   function on the negative real axis, and the exponential integral E₁;
//! * [`kernel`] — the closed-form kernel catalog (power-law, Mittag-Leffler,
//!   distributed-order, shifted, the non-CM cos/cosh pair) and fractional
//!   power series;
//! * [`series`] — the triangular coefficient recursion that constructs the
//!   associate series of a given kernel series;
//! * [`quad`] — Golub–Welsch Gauss–Legendre/Jacobi/Laguerre rules;
//! * [`conv`] — the singularity-aware convolution engine, the operators
//!   D_g/I_f, and Sonine residual verification;
//! * [`laplace`] — numerical transforms, fixed-Talbot inversion, the
//!   Laplace-side identity f̃·g̃ = 1/p, and the regular-kernel decomposition
//!   a·g + g∗φ = 1;
//! * [`diagnostics`] — finite-order complete-monotonicity tests, singularity
//!   limit checks, regular-variation index estimation, and logarithmic
//!   asymptotics.

pub mod conv;
pub mod diagnostics;
pub mod error;
pub mod kernel;
pub mod laplace;
pub mod quad;
pub mod series;
pub mod specfun;

pub use error::{Error, Result};
pub use kernel::{catalog_pair, theta, to_frac_series, FracSeries, Kernel, KernelForm, ParamMap, SoninePair};
