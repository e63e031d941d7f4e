use std::fmt;
use thiserror::Error;

/// Which of the two limit surfaces a statement refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SurfaceSide {
    /// End-effector / object contact.
    Top,
    /// Object / supporting-plane contact.
    Support,
}

impl fmt::Display for SurfaceSide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SurfaceSide::Top => write!(f, "top"),
            SurfaceSide::Support => write!(f, "support"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MechanicsError {
    #[error("{name} must be positive, got {value}")]
    NonPositive { name: &'static str, value: f64 },

    #[error("{name} is out of range: got {value}, requires {requirement}")]
    OutOfRange {
        name: &'static str,
        value: f64,
        requirement: &'static str,
    },

    #[error("applied normal force must be non-negative, got {value}")]
    NegativeNormalForce { value: f64 },

    #[error("the two limit surfaces do not intersect: the {inner} surface lies inside the other")]
    NoIntersection { inner: SurfaceSide },

    #[error("the surfaces intersect at a pure-torque wrench, so k_v is unbounded")]
    InfiniteKv,

    #[error("wrench is not on the limit surface (quadratic-form residual {residual:e})")]
    WrenchOffSurface { residual: f64 },

    #[error("a zero twist has no boundary wrench")]
    ZeroTwist,
}
