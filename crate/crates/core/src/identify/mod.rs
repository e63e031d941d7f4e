//! Friction-parameter identification from labelled motion segments.
//!
//! Each executed segment records the end-effector and object poses before
//! and after the motion, the applied normal force, and the measured support
//! reaction wrench. Segments are labelled slip/stick by comparing the pose
//! changes against fixed thresholds; the friction parameters are then fitted
//! by minimizing a hinge loss on a signed region margin that is positive
//! exactly when the measured wrench falls in the sticking region of the dual
//! limit surfaces.

mod csvio;
mod fit;
mod nelder_mead;
mod synth;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::{Pose2, Wrench2};
use crate::mechanics::{FrictionParams, MechanicsError};
use crate::tol;

pub use csvio::{read_records_csv, read_records_csv_path, write_records_csv, DATASET_HEADER};
pub use fit::{fit_params, FitOptions, FitResult, ParamBounds};
pub use synth::synth_dataset;

/// Orientation deviation above which a segment counts as slipped [rad].
pub const ORI_SLIP_THRESHOLD: f64 = 0.05;

/// Position deviation above which a segment counts as slipped [m].
pub const POS_SLIP_THRESHOLD: f64 = 0.005;

/// One executed motion segment.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SegmentRecord {
    /// End-effector pose at segment start and end.
    pub q_e0: Pose2,
    pub q_e_t: Pose2,
    /// Object pose at segment start and end.
    pub q_o0: Pose2,
    pub q_o_t: Pose2,
    /// Applied normal force [N].
    pub n_e: f64,
    /// Measured support reaction wrench.
    pub wrench: Wrench2,
    /// Slip label; `None` means "derive from the poses".
    pub label: Option<bool>,
}

impl SegmentRecord {
    pub fn validate(&self) -> Result<(), IdentifyError> {
        let finite = self.q_e0.is_finite()
            && self.q_e_t.is_finite()
            && self.q_o0.is_finite()
            && self.q_o_t.is_finite()
            && self.n_e.is_finite()
            && self.wrench.is_finite();
        if !finite {
            return Err(IdentifyError::InvalidRecord("non-finite field".into()));
        }
        if self.n_e.is_nan() || self.n_e <= 0.0 {
            return Err(IdentifyError::InvalidRecord(format!(
                "normal force must be positive, got {}",
                self.n_e
            )));
        }
        Ok(())
    }

    /// The record's label, falling back to pose-based labelling with the
    /// default thresholds.
    pub fn resolved_label(&self) -> bool {
        self.label
            .unwrap_or_else(|| label_slip(self, ORI_SLIP_THRESHOLD, POS_SLIP_THRESHOLD))
    }
}

/// Classification of one wrench against the dual surfaces.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModePrediction {
    pub slip: bool,
    /// Signed margin: positive in the sticking region, negative in the
    /// slipping region, zero on the boundary.
    pub margin: f64,
    /// The wrench lies outside both surfaces, which a quasi-static motion
    /// cannot produce; the classification falls back to the nearest region.
    pub quasi_static_violation: bool,
}

#[derive(Debug, Clone, Error)]
pub enum IdentifyError {
    #[error("invalid segment record: {0}")]
    InvalidRecord(String),

    #[error(transparent)]
    Mechanics(#[from] MechanicsError),

    #[error("dataset is empty")]
    EmptyDataset,

    #[error("degenerate dataset: all records share the label {label}")]
    Degenerate { label: bool },

    #[error("csv error at row {row}, column {column}: {message}")]
    Csv {
        row: usize,
        column: String,
        message: String,
    },

    #[error("csv header mismatch: expected `{expected}`, got `{got}`")]
    Header { expected: String, got: String },

    #[error("io error: {0}")]
    Io(String),
}

/// Labels a segment as slipped when the end-effector pose change deviates
/// from the object pose change by more than either threshold (position by
/// Euclidean norm, orientation by absolute difference).
pub fn label_slip(record: &SegmentRecord, ori_threshold: f64, pos_threshold: f64) -> bool {
    let dev = (record.q_e_t - record.q_e0) - (record.q_o_t - record.q_o0);
    dev.translation_norm() > pos_threshold || dev.theta.abs() > ori_threshold
}

/// Signed sticking margin of a reduced wrench `(force, torque)` at `n_e`.
///
/// Along the ray from the origin through the point, whichever surface binds
/// first determines the region: the support surface binding first means the
/// object slides while the top contact sticks. The margin is
/// `sqrt(Q_support) - sqrt(Q_top)` of the two quadratic forms, which is
/// positive on sticking rays, continuous, and zero exactly on the cone
/// through the surface intersection. The zero wrench is static and returns
/// +1 by convention.
pub fn region_margin(
    params: &FrictionParams,
    n_e: f64,
    force: f64,
    torque: f64,
) -> Result<f64, IdentifyError> {
    if force == 0.0 && torque == 0.0 {
        return Ok(1.0);
    }
    let top = params.top_surface(n_e)?;
    let sup = params.support_surface(n_e)?;
    let q_top = (force / top.a_f()).powi(2) + (torque / top.a_t()).powi(2);
    let q_sup = (force / sup.a_f()).powi(2) + (torque / sup.a_t()).powi(2);
    Ok(q_sup.sqrt() - q_top.sqrt())
}

/// Predicts whether a recorded wrench implies top-contact slip.
pub fn predict_mode(
    params: &FrictionParams,
    record: &SegmentRecord,
) -> Result<ModePrediction, IdentifyError> {
    record.validate()?;
    let force = record.wrench.force_magnitude();
    let torque = record.wrench.tau.abs();
    let margin = region_margin(params, record.n_e, force, torque)?;

    let top = params.top_surface(record.n_e)?;
    let sup = params.support_surface(record.n_e)?;
    let q_top = (force / top.a_f()).powi(2) + (torque / top.a_t()).powi(2);
    let q_sup = (force / sup.a_f()).powi(2) + (torque / sup.a_t()).powi(2);
    let outside_both = q_top > 1.0 + tol::QUASI_STATIC_VIOLATION
        && q_sup > 1.0 + tol::QUASI_STATIC_VIOLATION;

    Ok(ModePrediction {
        slip: margin < 0.0,
        margin,
        quasi_static_violation: outside_both,
    })
}

/// Fraction of records whose predicted mode matches their resolved label.
pub fn classification_accuracy(
    params: &FrictionParams,
    records: &[SegmentRecord],
) -> Result<f64, IdentifyError> {
    if records.is_empty() {
        return Err(IdentifyError::EmptyDataset);
    }
    let mut correct = 0usize;
    for r in records {
        if predict_mode(params, r)?.slip == r.resolved_label() {
            correct += 1;
        }
    }
    Ok(correct as f64 / records.len() as f64)
}
