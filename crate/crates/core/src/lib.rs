//! Quasi-static planar sliding through a frictional top contact.
//!
//! An object resting on a horizontal plane is dragged by a patch contact
//! pressed onto its top surface. Both contacts are modelled with ellipsoidal
//! limit surfaces; comparing the two surfaces in a reduced force/torque plane
//! yields closed-form stick/slip boundaries and the critical ratio `k_v`
//! between angular and linear speed below (or above) which the top contact
//! keeps sticking while the object slides on the plane.
//!
//! The crate provides four layers on top of that model:
//!
//! * [`mechanics`] — limit-surface geometry, the five interaction cases,
//!   critical normal forces, the 2D surface intersection, `k_v`, and the
//!   slippage-free twist predicate.
//! * [`planner`] — a waypoint path optimizer that minimizes deviation from
//!   the straight-line path plus a second-difference roughness term subject
//!   to a per-segment slippage-free cone constraint.
//! * [`simulator`] — a deterministic quasi-static rollout that resolves
//!   stick/slip per step and reports terminal pose errors.
//! * [`identify`] — slip labelling, a signed region margin per measured
//!   wrench, and a hinge-loss fit of the friction parameters.

pub mod geom;
pub mod identify;
pub mod mechanics;
pub mod numfmt;
pub mod planner;
pub mod simulator;
pub mod tol;

pub use geom::{Pose2, Twist2, Wrench2};
pub use mechanics::{
    build_limit_surface, classify_case, force_regime, intersection_wrench, is_slippage_free, kv,
    kv_on, CaseId, ContactCase, ForceRegime, FrictionParams, KvSurface, LimitSurface,
    MechanicsError, ValidRange,
};
pub use planner::{
    linear_interpolation, project_segment, roughness_objective, segment_margin, solve_plan,
    total_objective, validate_path, KMatrixConvention, Path, PlanError, PlanProblem, SolveReport,
};
pub use simulator::{
    compare_planners, pose_rmse, rollout, step, Metrics, PlannerComparison, Rollout, SimConfig,
    SimError, SlipModel,
};
