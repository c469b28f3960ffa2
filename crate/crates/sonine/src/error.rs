//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Input outside an operation's stated domain.
    #[error("domain error in {op}: {msg}")]
    Domain { op: &'static str, msg: String },

    /// Gamma function evaluated at a non-positive integer.
    #[error("gamma pole at non-positive integer x = {x}")]
    GammaPole { x: f64 },

    /// A numerical scheme could not certify its tolerance.
    #[error("{op} did not converge: {msg}")]
    NonConvergence { op: &'static str, msg: String },

    /// Kernel parameters violate a catalog constraint.
    #[error("invalid parameter for {what}: {msg}")]
    InvalidParameter { what: &'static str, msg: String },

    /// The requested operation is not defined for this kernel.
    #[error("unsupported kernel for {op}: {kernel}")]
    UnsupportedKernel { op: &'static str, kernel: String },

    /// Unknown catalog pair name.
    #[error("unknown catalog pair `{0}`")]
    UnknownPair(String),

    /// Least-squares fit on degenerate data.
    #[error("degenerate fit: {0}")]
    DegenerateFit(String),

    /// Eq. a·g + g∗φ = 1 only applies to kernels bounded at 0.
    #[error("kernel singular at 0 ({0}); regular-kernel decomposition does not apply")]
    SingularKernel(String),
}

impl Error {
    pub(crate) fn domain(op: &'static str, msg: impl Into<String>) -> Self {
        Error::Domain { op, msg: msg.into() }
    }

    pub(crate) fn param(what: &'static str, msg: impl Into<String>) -> Self {
        Error::InvalidParameter { what, msg: msg.into() }
    }

    pub(crate) fn no_conv(op: &'static str, msg: impl Into<String>) -> Self {
        Error::NonConvergence { op, msg: msg.into() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
