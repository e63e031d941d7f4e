//! Slippage-free waypoint path planning.
//!
//! The planner minimizes weighted deviation from the straight-line path plus
//! a second-difference roughness term, subject to a per-segment cone
//! constraint that keeps every waypoint-to-waypoint motion inside the
//! slippage-free twist set. The constraint set is nonconvex (in cases II/V it
//! is the complement of a cone), so the solver combines a penalty descent in
//! segment-difference variables with closed-form projection sweeps; see
//! [`solve_plan`].

mod solver;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::Pose2;
use crate::mechanics::CaseId;
use crate::tol;

pub use solver::solve_plan;

/// Which discrete form of the velocity constraint the margins use.
///
/// `Squared` is the unit-consistent reading: the bound
/// `|delta_theta| <= safety * k_v * |delta_p|` squared, i.e. the constraint
/// matrix carries `k_v^2`. `Paper` keeps `k_v` unsquared in the matrix, in
/// case the published constant was already calibrated for that form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum KMatrixConvention {
    #[default]
    Squared,
    Paper,
}

/// A planning instance: endpoints, discretization, weights, and the
/// slippage-free cone data.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlanProblem {
    pub start: Pose2,
    pub goal: Pose2,
    /// Number of waypoints, including both endpoints.
    pub n: usize,
    /// Critical rotation/translation ratio [rad/m].
    pub kv: f64,
    pub case_id: CaseId,
    /// Weight of the deviation-from-line term.
    pub c1: f64,
    /// Weight of the roughness term.
    pub c2: f64,
    /// Safety factor in (0, 1]; shrinks the sticking cone.
    pub safety: f64,
    pub convention: KMatrixConvention,
}

impl PlanProblem {
    /// A problem with the default squared convention.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        start: Pose2,
        goal: Pose2,
        n: usize,
        kv: f64,
        case_id: CaseId,
        c1: f64,
        c2: f64,
        safety: f64,
    ) -> Self {
        Self {
            start,
            goal,
            n,
            kv,
            case_id,
            c1,
            c2,
            safety,
            convention: KMatrixConvention::Squared,
        }
    }

    pub fn validate(&self) -> Result<(), PlanError> {
        if self.n < 2 {
            return Err(PlanError::Invalid(format!(
                "step count must be at least 2, got {}",
                self.n
            )));
        }
        if !self.kv.is_finite() || self.kv <= 0.0 {
            return Err(PlanError::Invalid(format!(
                "k_v must be positive, got {}",
                self.kv
            )));
        }
        if !(self.c1 >= 0.0 && self.c2 >= 0.0) || (self.c1 == 0.0 && self.c2 == 0.0) {
            return Err(PlanError::Invalid(format!(
                "weights must be non-negative and not both zero, got c1={} c2={}",
                self.c1, self.c2
            )));
        }
        if !(self.safety > 0.0 && self.safety <= 1.0) {
            return Err(PlanError::Invalid(format!(
                "safety must be in (0, 1], got {}",
                self.safety
            )));
        }
        if !self.start.is_finite() || !self.goal.is_finite() {
            return Err(PlanError::Invalid("non-finite endpoint".into()));
        }
        Ok(())
    }

    /// Squared effective cone slope for this problem's case family.
    pub(crate) fn kappa_sq(&self) -> f64 {
        kappa_sq_for(self.kv, self.safety, self.convention, self.case_id)
    }
}

/// Discrete SE(2) path as an ordered waypoint sequence.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Path {
    pub waypoints: Vec<Pose2>,
}

impl Path {
    pub fn new(waypoints: Vec<Pose2>) -> Self {
        Self { waypoints }
    }

    pub fn len(&self) -> usize {
        self.waypoints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.waypoints.is_empty()
    }

    /// Consecutive waypoint differences.
    pub fn deltas(&self) -> Vec<Pose2> {
        self.waypoints.windows(2).map(|w| w[1] - w[0]).collect()
    }

    /// Sum of translation lengths over all segments.
    pub fn translation_length(&self) -> f64 {
        self.deltas().iter().map(Pose2::translation_norm).sum()
    }
}

/// Outcome summary for a solve or a validation pass.
#[derive(Debug, Clone, PartialEq)]
pub struct SolveReport {
    /// Deviation plus roughness objective of the path (no penalty terms).
    pub objective_value: f64,
    /// One margin per segment, in path order.
    pub per_segment_margins: Vec<f64>,
    /// Inner descent steps spent.
    pub iterations: usize,
    pub converged: bool,
    /// Best feasible objective after each outer penalty round.
    pub objective_trace: Vec<f64>,
}

#[derive(Debug, Clone, Error)]
pub enum PlanError {
    #[error("invalid plan problem: {0}")]
    Invalid(String),

    #[error("case I admits no slippage-free motion; planning is infeasible")]
    AlwaysSlips,

    #[error("planner did not reach a feasible path within iteration caps")]
    NotConverged {
        /// Best path found, endpoints exact but margins not all feasible.
        path: Path,
        report: Box<SolveReport>,
    },

    #[error("path has {got} waypoints but the problem expects {expected}")]
    LengthMismatch { got: usize, expected: usize },
}

/// Straight-line interpolation between two poses, componentwise, with exact
/// endpoints.
pub fn linear_interpolation(start: Pose2, goal: Pose2, n: usize) -> Result<Path, PlanError> {
    if n < 2 {
        return Err(PlanError::Invalid(format!(
            "interpolation needs at least 2 waypoints, got {n}"
        )));
    }
    let delta = goal - start;
    let mut waypoints = Vec::with_capacity(n);
    waypoints.push(start);
    for i in 1..n - 1 {
        let t = i as f64 / (n - 1) as f64;
        waypoints.push(start + delta * t);
    }
    waypoints.push(goal);
    Ok(Path::new(waypoints))
}

pub(crate) fn kappa_sq_for(
    kv: f64,
    safety: f64,
    convention: KMatrixConvention,
    case_id: CaseId,
) -> f64 {
    match (convention, case_id.rotation_required()) {
        (KMatrixConvention::Squared, false) => (safety * kv) * (safety * kv),
        (KMatrixConvention::Squared, true) => (kv / safety) * (kv / safety),
        (KMatrixConvention::Paper, false) => safety * safety * kv,
        (KMatrixConvention::Paper, true) => kv / (safety * safety),
    }
}

pub(crate) fn margin_for(delta: Pose2, kappa_sq: f64, case_id: CaseId) -> f64 {
    let dp2 = delta.x * delta.x + delta.y * delta.y;
    let dth2 = delta.theta * delta.theta;
    if case_id.rotation_required() {
        dth2 - kappa_sq * dp2
    } else {
        kappa_sq * dp2 - dth2
    }
}

pub(crate) fn delta_is_zero(delta: Pose2) -> bool {
    delta.x == 0.0 && delta.y == 0.0 && delta.theta == 0.0
}

/// Whether a segment margin counts as feasible, up to `slack >= 0`.
pub(crate) fn margin_feasible(margin: f64, delta: Pose2, case_id: CaseId, slack: f64) -> bool {
    if case_id.rotation_required() {
        delta_is_zero(delta) || margin > -slack
    } else {
        margin >= -slack
    }
}

/// Slippage-free margin of one segment.
///
/// Cases III/IV: `(safety*k_v)^2 * (dx^2 + dy^2) - dtheta^2`, feasible when
/// non-negative. Cases II/V: `dtheta^2 - (k_v/safety)^2 * (dx^2 + dy^2)`,
/// feasible when strictly positive (the rest segment is feasible too).
pub fn segment_margin(
    q_prev: Pose2,
    q_next: Pose2,
    kv: f64,
    case_id: CaseId,
    safety: f64,
) -> f64 {
    let kappa_sq = kappa_sq_for(kv, safety, KMatrixConvention::Squared, case_id);
    margin_for(q_next - q_prev, kappa_sq, case_id)
}

/// Sum of squared second differences along the path; zero for fewer than
/// three waypoints.
pub fn roughness_objective(path: &Path) -> f64 {
    let w = &path.waypoints;
    if w.len() < 3 {
        return 0.0;
    }
    let mut sum = 0.0;
    for i in 2..w.len() {
        let d = w[i - 2] - w[i - 1] * 2.0 + w[i];
        sum += d.x * d.x + d.y * d.y + d.theta * d.theta;
    }
    sum
}

/// Weighted deviation from the straight-line path plus weighted roughness.
pub fn total_objective(path: &Path, problem: &PlanProblem) -> Result<f64, PlanError> {
    if path.len() != problem.n {
        return Err(PlanError::LengthMismatch {
            got: path.len(),
            expected: problem.n,
        });
    }
    let qhat = linear_interpolation(problem.start, problem.goal, problem.n)?;
    let mut dev = 0.0;
    for (q, qh) in path.waypoints.iter().zip(qhat.waypoints.iter()) {
        let d = *q - *qh;
        dev += d.x * d.x + d.y * d.y + d.theta * d.theta;
    }
    Ok(problem.c1 * dev + problem.c2 * roughness_objective(path))
}

/// Closed-form projection of one segment difference onto the feasible set.
///
/// Feasible inputs return unchanged (bit-identical). Cases III/IV clamp the
/// rotation to the cone boundary, keeping translation; cases II/V inflate
/// the rotation just past the boundary, since their feasible set is open.
pub fn project_segment(delta: Pose2, kv: f64, case_id: CaseId, safety: f64) -> Pose2 {
    let kappa_sq = kappa_sq_for(kv, safety, KMatrixConvention::Squared, case_id);
    project_for(delta, kappa_sq, case_id)
}

pub(crate) fn project_for(delta: Pose2, kappa_sq: f64, case_id: CaseId) -> Pose2 {
    let margin = margin_for(delta, kappa_sq, case_id);
    let kappa = kappa_sq.sqrt();
    let dp = delta.translation_norm();
    if case_id.rotation_required() {
        if delta_is_zero(delta) || margin > 0.0 {
            return delta;
        }
        let sign = if delta.theta == 0.0 {
            1.0
        } else {
            delta.theta.signum()
        };
        Pose2::new(
            delta.x,
            delta.y,
            sign * kappa * dp * (1.0 + tol::STRICT_INTERIOR),
        )
    } else {
        if margin >= 0.0 {
            return delta;
        }
        // Rounding in sqrt can land the clamped rotation an ulp outside the
        // cone; walk it down until the recomputed margin is non-negative.
        let dp2 = delta.x * delta.x + delta.y * delta.y;
        let mut mag = kappa * dp;
        while kappa_sq * dp2 - mag * mag < 0.0 {
            mag = f64::from_bits(mag.to_bits() - 1);
        }
        Pose2::new(delta.x, delta.y, delta.theta.signum() * mag)
    }
}

/// Recomputes the objective and all margins of a path against a problem.
///
/// `converged` is set when every margin is feasible at the library
/// feasibility tolerance and both endpoints match exactly within the
/// endpoint tolerance.
pub fn validate_path(path: &Path, problem: &PlanProblem) -> Result<SolveReport, PlanError> {
    if path.len() != problem.n {
        return Err(PlanError::LengthMismatch {
            got: path.len(),
            expected: problem.n,
        });
    }
    let objective_value = total_objective(path, problem)?;
    let kappa_sq = problem.kappa_sq();
    let mut all_feasible = true;
    let mut margins = Vec::with_capacity(problem.n - 1);
    for w in path.waypoints.windows(2) {
        let delta = w[1] - w[0];
        let margin = margin_for(delta, kappa_sq, problem.case_id);
        all_feasible &= margin_feasible(margin, delta, problem.case_id, tol::FEASIBILITY);
        margins.push(margin);
    }
    let ep = |a: Pose2, b: Pose2| {
        let d = a - b;
        d.x.abs() <= tol::ENDPOINT && d.y.abs() <= tol::ENDPOINT && d.theta.abs() <= tol::ENDPOINT
    };
    let endpoints_ok =
        ep(path.waypoints[0], problem.start) && ep(*path.waypoints.last().unwrap(), problem.goal);
    Ok(SolveReport {
        objective_value,
        per_segment_margins: margins,
        iterations: 0,
        converged: all_feasible && endpoints_ok,
        objective_trace: Vec::new(),
    })
}
