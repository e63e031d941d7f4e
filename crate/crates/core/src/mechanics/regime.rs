use serde::{Deserialize, Serialize};
use std::fmt;

use super::params::FrictionParams;

/// The five qualitative interaction regimes of the two limit-surface cones.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CaseId {
    I,
    II,
    III,
    IV,
    V,
}

impl CaseId {
    /// Sticking requires bounded rotation relative to translation (the top
    /// surface protrudes along the force axis inside the intersection band).
    pub fn rotation_bounded(self) -> bool {
        matches!(self, CaseId::III | CaseId::IV)
    }

    /// Sticking requires rotation to dominate translation (the top surface
    /// protrudes along the torque axis inside the intersection band).
    pub fn rotation_required(self) -> bool {
        matches!(self, CaseId::II | CaseId::V)
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CaseId::I => "I",
            CaseId::II => "II",
            CaseId::III => "III",
            CaseId::IV => "IV",
            CaseId::V => "V",
        };
        write!(f, "{s}")
    }
}

/// Classification result: the case plus the two cone slope differences that
/// determine it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ContactCase {
    pub case_id: CaseId,
    /// Slope difference along the torque axis:
    /// `(mu_e * r_e - mu_p * r_p) / (mu_p * r_p)`.
    pub p_t: f64,
    /// Slope difference along the force axis: `(mu_e - mu_p) / mu_p`.
    pub p_f: f64,
}

/// Classifies the interaction of the two limit-surface cones.
///
/// Decision table (ties break toward the earlier case):
///
/// * I:   `p_f <= 0` and `p_t <= 0` — the top surface never leaves the
///   inside of the support surface; the end-effector always slips.
/// * II:  `p_f <= 0 < p_t` — above a critical force the top surface
///   protrudes along the torque axis only.
/// * III: `p_t <= 0 < p_f` — above a critical force the top surface
///   protrudes along the force axis only.
/// * IV:  both positive and `p_t <= p_f` (equivalently `r_e <= r_p`) —
///   a bounded band of normal forces behaves like case III, with always-slip
///   below and always-stick above.
/// * V:   both positive and `p_t > p_f` (equivalently `r_e > r_p`) — a
///   bounded band behaves like case II.
///
/// The IV/V split follows from which axis crossover happens first as the
/// normal force grows: the force-axis crossover at
/// `mu_p*m*g/(mu_e - mu_p)` precedes the torque-axis crossover at
/// `r_p*mu_p*m*g/(r_e*mu_e - r_p*mu_p)` exactly when `r_e < r_p`.
pub fn classify_case(params: &FrictionParams) -> ContactCase {
    let p_t = (params.mu_e * params.r_e - params.mu_p * params.r_p) / (params.mu_p * params.r_p);
    let p_f = (params.mu_e - params.mu_p) / params.mu_p;
    let case_id = if p_f <= 0.0 && p_t <= 0.0 {
        CaseId::I
    } else if p_f <= 0.0 {
        CaseId::II
    } else if p_t <= 0.0 {
        CaseId::III
    } else if p_t <= p_f {
        CaseId::IV
    } else {
        CaseId::V
    };
    ContactCase { case_id, p_t, p_f }
}

/// Interval of applied normal forces in which the two reduced limit surfaces
/// intersect.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum ValidRange {
    Empty,
    /// Intersection exists for every `n_e` above `min`.
    Above { min: f64 },
    /// Intersection exists strictly between the bounds.
    Between { min: f64, max: f64 },
}

impl ValidRange {
    pub fn contains(&self, n_e: f64) -> bool {
        match *self {
            ValidRange::Empty => false,
            ValidRange::Above { min } => n_e > min,
            ValidRange::Between { min, max } => n_e > min && n_e < max,
        }
    }

    /// A point a fraction of the way into the interval, if one exists.
    /// Unbounded ranges use `min * (1 + frac)` as a representative point.
    pub fn sample(&self, frac: f64) -> Option<f64> {
        match *self {
            ValidRange::Empty => None,
            ValidRange::Above { min } => Some(min * (1.0 + frac)),
            ValidRange::Between { min, max } => {
                if min < max {
                    Some(min + frac * (max - min))
                } else {
                    None
                }
            }
        }
    }
}

impl fmt::Display for ValidRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            ValidRange::Empty => write!(f, "empty"),
            ValidRange::Above { min } => write!(f, "({min}, inf)"),
            ValidRange::Between { min, max } => write!(f, "({min}, {max})"),
        }
    }
}

/// Critical normal forces and the intersection interval for a parameter set.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ForceRegime {
    /// Below this applied force the top surface is inside the support
    /// surface and the end-effector always slips on the object.
    pub n_slip: Option<f64>,
    /// Above this applied force the support surface is inside the top
    /// surface and the object always sticks to the end-effector.
    pub n_stick: Option<f64>,
    pub valid_range: ValidRange,
}

/// Computes the critical normal forces for a parameter set.
///
/// The force-axis crossover sits at `mu_p*m*g/(mu_e - mu_p)` and the
/// torque-axis crossover at `r_p*mu_p*m*g/(r_e*mu_e - r_p*mu_p)`; each
/// exists only when its slope difference is positive. Cases II and III have
/// one crossover and an unbounded intersection interval above it; cases IV
/// and V have both, with always-slip below the lower and always-stick above
/// the upper.
pub fn force_regime(params: &FrictionParams) -> ForceRegime {
    let case = classify_case(params);
    let mg = params.weight();
    let force_crossover = mg * params.mu_p / (params.mu_e - params.mu_p);
    let torque_crossover =
        mg * params.r_p * params.mu_p / (params.r_e * params.mu_e - params.r_p * params.mu_p);
    match case.case_id {
        CaseId::I => ForceRegime {
            n_slip: None,
            n_stick: None,
            valid_range: ValidRange::Empty,
        },
        CaseId::II => ForceRegime {
            n_slip: Some(torque_crossover),
            n_stick: None,
            valid_range: ValidRange::Above {
                min: torque_crossover,
            },
        },
        CaseId::III => ForceRegime {
            n_slip: Some(force_crossover),
            n_stick: None,
            valid_range: ValidRange::Above {
                min: force_crossover,
            },
        },
        CaseId::IV => ForceRegime {
            n_slip: Some(force_crossover),
            n_stick: Some(torque_crossover),
            valid_range: ValidRange::Between {
                min: force_crossover,
                max: torque_crossover,
            },
        },
        CaseId::V => ForceRegime {
            n_slip: Some(torque_crossover),
            n_stick: Some(force_crossover),
            valid_range: ValidRange::Between {
                min: torque_crossover,
                max: force_crossover,
            },
        },
    }
}
