use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RingError {
    #[error("{0} is not a half-odd integer")]
    NotHalfOdd(String),

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    /// μ = 0 together with ν = β + λ = 0 gives E = 0 and an unnormalizable spinor.
    #[error("degenerate mode: mu = {mu}, nu = {nu} gives zero energy")]
    DegenerateMode { mu: f64, nu: f64 },

    #[error("spinors belong to different ring configurations")]
    ConfigMismatch,

    #[error("state is not normalized: |c+|^2 + |c-|^2 = {norm}")]
    NotNormalized { norm: f64 },

    #[error("electron count {requested} exceeds the configured cap {cap}")]
    OverflowGuard { requested: u64, cap: u64 },

    #[error("electron count must be even and at least 2, got {0}")]
    OddElectronCount(u64),
}

impl RingError {
    /// Stable snake_case tag for machine-readable reports.
    pub fn kind(&self) -> &'static str {
        match self {
            RingError::NotHalfOdd(_) => "not_half_odd",
            RingError::InvalidParameter { .. } => "invalid_parameter",
            RingError::DegenerateMode { .. } => "degenerate_mode",
            RingError::ConfigMismatch => "config_mismatch",
            RingError::NotNormalized { .. } => "not_normalized",
            RingError::OverflowGuard { .. } => "overflow_guard",
            RingError::OddElectronCount(_) => "odd_electron_count",
        }
    }

    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        RingError::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, RingError>;
