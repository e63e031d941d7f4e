//! Numeric tolerances used across the crate.
//!
//! Every threshold is a named constant here rather than an inline literal, so
//! the acceptance tests and any embedding application agree on the exact
//! values. Functions that check a tolerance accept an override through
//! [`Tolerances`]; the default mirrors these constants.

/// Relative residual allowed when a computed intersection point is checked
/// against both ellipse equations.
pub const ELLIPSE_RESIDUAL: f64 = 1e-12;

/// Residual of `w' A w - 1` below which a wrench counts as on the surface.
pub const SURFACE_RESIDUAL: f64 = 1e-9;

/// Relative error allowed on the wrench -> twist -> wrench round trip.
pub const NORMAL_MAP_ROUND_TRIP: f64 = 1e-9;

/// Relative agreement required between closed-form `k_v` and a sampled
/// finite-difference evaluation.
pub const KV_ORACLE_REL: f64 = 1e-6;

/// Analytic surface normals must match central finite differences this well.
pub const NORMAL_FD_ABS: f64 = 1e-8;

/// Planner segment margins may undershoot zero by at most this much.
pub const FEASIBILITY: f64 = 1e-10;

/// Planner endpoints must match start/goal to this absolute error.
pub const ENDPOINT: f64 = 1e-9;

/// Gradient-norm stop for the planner's inner descent.
pub const GRADIENT_STOP: f64 = 1e-8;

/// Relative inflation that places a strict-inequality constraint just inside
/// the feasible side of its boundary.
pub const STRICT_INTERIOR: f64 = 1e-9;

/// Two limit surfaces whose semi-axes agree to this relative tolerance are
/// treated as coincident.
pub const COINCIDENT_REL: f64 = 1e-12;

/// A measured wrench exceeding both limit surfaces by more than this relative
/// amount is flagged as a quasi-static violation.
pub const QUASI_STATIC_VIOLATION: f64 = 1e-6;

/// Tolerance bundle for the checks that support overriding.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub ellipse_residual: f64,
    pub surface_residual: f64,
    pub feasibility: f64,
    pub endpoint: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            ellipse_residual: ELLIPSE_RESIDUAL,
            surface_residual: SURFACE_RESIDUAL,
            feasibility: FEASIBILITY,
            endpoint: ENDPOINT,
        }
    }
}
