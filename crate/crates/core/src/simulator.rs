//! Quasi-static forward rollout of an end-effector path with per-step
//! stick/slip resolution at the top contact.
//!
//! Each commanded segment is read as a twist direction and tested against
//! the slippage-free predicate. Sticking segments transmit exactly; slipping
//! segments transmit the cone projection of the command (translation passes
//! through, rotation is clamped or inflated to the boundary). The underlying
//! model only states the sticking condition, so the projection is this
//! crate's slip-resolution approximation and carries its own name,
//! [`SlipModel::ConeProjection`].

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::{Pose2, Twist2};
use crate::mechanics::{
    classify_case, force_regime, is_slippage_free, kv, CaseId, FrictionParams, MechanicsError,
};
use crate::planner::{
    linear_interpolation, project_segment, solve_plan, Path, PlanError, PlanProblem,
};

/// How a slipping step maps the commanded motion to object motion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum SlipModel {
    /// Clamp (cases III/IV) or inflate (II/V) the commanded rotation to the
    /// slippage-free cone boundary; translation is transmitted unchanged.
    #[default]
    ConeProjection,
}

/// Simulation configuration: physical parameters, the fixed applied normal
/// force, and the safety factor used for stick/slip classification.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    pub params: FrictionParams,
    pub n_e: f64,
    pub safety: f64,
    pub slip_model: SlipModel,
}

impl SimConfig {
    pub fn new(params: FrictionParams, n_e: f64, safety: f64) -> Self {
        Self {
            params,
            n_e,
            safety,
            slip_model: SlipModel::ConeProjection,
        }
    }

    /// Checks that the regime admits sticking at all: case I and normal
    /// forces outside the intersection range are rejected.
    pub fn validate(&self) -> Result<(), SimError> {
        self.params.validate()?;
        if !(self.safety > 0.0 && self.safety <= 1.0) {
            return Err(SimError::InvalidConfig(format!(
                "safety must be in (0, 1], got {}",
                self.safety
            )));
        }
        let case = classify_case(&self.params);
        if case.case_id == CaseId::I {
            return Err(SimError::InvalidConfig(
                "case I: the end-effector always slips on the object".into(),
            ));
        }
        let regime = force_regime(&self.params);
        if !regime.valid_range.contains(self.n_e) {
            return Err(SimError::InvalidConfig(format!(
                "normal force {} N outside the intersection range {}",
                self.n_e, regime.valid_range
            )));
        }
        Ok(())
    }

    /// Critical twist ratio for this configuration.
    pub fn kv(&self) -> Result<f64, SimError> {
        Ok(kv(&self.params, self.n_e)?)
    }

    pub fn case_id(&self) -> CaseId {
        classify_case(&self.params).case_id
    }
}

/// Result of rolling an end-effector path against the contact model.
#[derive(Debug, Clone, PartialEq)]
pub struct Rollout {
    pub ee_path: Path,
    pub object_path: Path,
    /// One flag per segment: true when the top contact slipped.
    pub slip_flags: Vec<bool>,
    /// Object end pose minus end-effector end pose.
    pub final_error: Pose2,
}

/// Root-mean-square terminal errors across a set of rollouts.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Metrics {
    pub pos_rmse: f64,
    pub ori_rmse: f64,
}

/// Per-planner metrics over one problem suite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlannerComparison {
    pub linear: Metrics,
    pub proposed: Metrics,
    pub problems: usize,
}

#[derive(Debug, Clone, Error)]
pub enum SimError {
    #[error("invalid simulation config: {0}")]
    InvalidConfig(String),

    #[error(transparent)]
    Mechanics(#[from] MechanicsError),

    #[error(transparent)]
    Plan(#[from] PlanError),

    #[error("end-effector path needs at least 2 waypoints, got {0}")]
    PathTooShort(usize),

    #[error("empty rollout set")]
    EmptySet,

    #[error("rollout and goal counts differ: {rollouts} vs {goals}")]
    CountMismatch { rollouts: usize, goals: usize },
}

/// Advances the object by one commanded end-effector delta.
///
/// A slippage-free delta is transmitted exactly; otherwise the object
/// advances by the cone projection of the command and the step is flagged
/// as slipped.
pub fn step(object_pose: Pose2, ee_delta: Pose2, config: &SimConfig, k_v: f64) -> (Pose2, bool) {
    let (object_delta, slipped) = step_delta(ee_delta, config, k_v);
    (object_pose + object_delta, slipped)
}

fn step_delta(ee_delta: Pose2, config: &SimConfig, k_v: f64) -> (Pose2, bool) {
    let case = config.case_id();
    if is_slippage_free(&Twist2::from_delta(ee_delta), k_v, case, config.safety) {
        (ee_delta, false)
    } else {
        let SlipModel::ConeProjection = config.slip_model;
        (project_segment(ee_delta, k_v, case, config.safety), true)
    }
}

/// Rolls an end-effector path forward from an aligned start.
///
/// The object starts at the first end-effector pose. Internally the rollout
/// integrates the ee-to-object pose error rather than the object pose, so a
/// path whose every segment sticks reproduces the end-effector poses
/// bit-exactly and reports a terminal error of exactly zero.
pub fn rollout(ee_path: &Path, config: &SimConfig) -> Result<Rollout, SimError> {
    if ee_path.len() < 2 {
        return Err(SimError::PathTooShort(ee_path.len()));
    }
    config.validate()?;
    let k_v = config.kv()?;

    let mut err = Pose2::ZERO;
    let mut slip_flags = Vec::with_capacity(ee_path.len() - 1);
    let mut object_waypoints = Vec::with_capacity(ee_path.len());
    object_waypoints.push(ee_path.waypoints[0]);
    for w in ee_path.waypoints.windows(2) {
        let ee_delta = w[1] - w[0];
        let (object_delta, slipped) = step_delta(ee_delta, config, k_v);
        if slipped {
            err = err + (ee_delta - object_delta);
        }
        object_waypoints.push(w[1] - err);
        slip_flags.push(slipped);
    }
    Ok(Rollout {
        ee_path: ee_path.clone(),
        object_path: Path::new(object_waypoints),
        slip_flags,
        final_error: -err,
    })
}

/// RMSE of terminal position (Euclidean) and orientation (absolute) errors
/// of each rollout's object end pose against its goal.
pub fn pose_rmse(rollouts: &[Rollout], goals: &[Pose2]) -> Result<Metrics, SimError> {
    if rollouts.is_empty() {
        return Err(SimError::EmptySet);
    }
    if rollouts.len() != goals.len() {
        return Err(SimError::CountMismatch {
            rollouts: rollouts.len(),
            goals: goals.len(),
        });
    }
    let mut pos_sq = 0.0;
    let mut ori_sq = 0.0;
    for (r, g) in rollouts.iter().zip(goals.iter()) {
        let e = *r.object_path.waypoints.last().unwrap() - *g;
        pos_sq += e.x * e.x + e.y * e.y;
        ori_sq += e.theta * e.theta;
    }
    let n = rollouts.len() as f64;
    Ok(Metrics {
        pos_rmse: (pos_sq / n).sqrt(),
        ori_rmse: (ori_sq / n).sqrt(),
    })
}

/// Simulates every problem with both the cone-constrained planner and plain
/// linear interpolation, and reports per-planner terminal RMSE.
pub fn compare_planners(
    problems: &[PlanProblem],
    config: &SimConfig,
) -> Result<PlannerComparison, SimError> {
    if problems.is_empty() {
        return Err(SimError::EmptySet);
    }
    let mut linear_rollouts = Vec::with_capacity(problems.len());
    let mut proposed_rollouts = Vec::with_capacity(problems.len());
    let mut goals = Vec::with_capacity(problems.len());
    for problem in problems {
        let lin = linear_interpolation(problem.start, problem.goal, problem.n)?;
        linear_rollouts.push(rollout(&lin, config)?);
        let (planned, _) = solve_plan(problem)?;
        proposed_rollouts.push(rollout(&planned, config)?);
        goals.push(problem.goal);
    }
    Ok(PlannerComparison {
        linear: pose_rmse(&linear_rollouts, &goals)?,
        proposed: pose_rmse(&proposed_rollouts, &goals)?,
        problems: problems.len(),
    })
}
