//! Planar pose, twist, and wrench value types.

use serde::{Deserialize, Serialize};
use std::ops::{Add, Mul, Neg, Sub};

/// SE(2) pose with an unwrapped orientation.
///
/// `theta` is a plain real angle in radians and is deliberately never wrapped
/// to (-pi, pi]: goals beyond a half turn encode multi-turn rotations, and
/// per-segment differences would be corrupted by wrapping.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Pose2 {
    pub x: f64,
    pub y: f64,
    pub theta: f64,
}

impl Pose2 {
    pub const ZERO: Self = Self {
        x: 0.0,
        y: 0.0,
        theta: 0.0,
    };

    pub fn new(x: f64, y: f64, theta: f64) -> Self {
        Self { x, y, theta }
    }

    /// Euclidean norm of the translation part.
    pub fn translation_norm(&self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.theta.is_finite()
    }
}

impl Add for Pose2 {
    type Output = Pose2;
    fn add(self, rhs: Pose2) -> Pose2 {
        Pose2::new(self.x + rhs.x, self.y + rhs.y, self.theta + rhs.theta)
    }
}

impl Sub for Pose2 {
    type Output = Pose2;
    fn sub(self, rhs: Pose2) -> Pose2 {
        Pose2::new(self.x - rhs.x, self.y - rhs.y, self.theta - rhs.theta)
    }
}

impl Mul<f64> for Pose2 {
    type Output = Pose2;
    fn mul(self, s: f64) -> Pose2 {
        Pose2::new(self.x * s, self.y * s, self.theta * s)
    }
}

impl Neg for Pose2 {
    type Output = Pose2;
    fn neg(self) -> Pose2 {
        Pose2::new(-self.x, -self.y, -self.theta)
    }
}

/// Planar twist: linear velocity in m/s and angular velocity in rad/s.
///
/// Throughout the crate twists carry direction information only; the
/// quasi-static model has no velocity-magnitude semantics.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Twist2 {
    pub vx: f64,
    pub vy: f64,
    pub omega: f64,
}

impl Twist2 {
    pub const ZERO: Self = Self {
        vx: 0.0,
        vy: 0.0,
        omega: 0.0,
    };

    pub fn new(vx: f64, vy: f64, omega: f64) -> Self {
        Self { vx, vy, omega }
    }

    /// Reads a pose difference as a twist direction.
    pub fn from_delta(delta: Pose2) -> Self {
        Self::new(delta.x, delta.y, delta.theta)
    }

    pub fn linear_speed(&self) -> f64 {
        self.vx.hypot(self.vy)
    }

    pub fn is_zero(&self) -> bool {
        self.vx == 0.0 && self.vy == 0.0 && self.omega == 0.0
    }

    pub fn is_finite(&self) -> bool {
        self.vx.is_finite() && self.vy.is_finite() && self.omega.is_finite()
    }
}

/// Planar wrench: in-plane force components in N and torque about the
/// contact normal in N·m.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Wrench2 {
    pub fx: f64,
    pub fy: f64,
    pub tau: f64,
}

impl Wrench2 {
    pub fn new(fx: f64, fy: f64, tau: f64) -> Self {
        Self { fx, fy, tau }
    }

    pub fn force_magnitude(&self) -> f64 {
        self.fx.hypot(self.fy)
    }

    /// The wrench the other contact must transmit under quasi-static force
    /// balance: equal in magnitude, opposite in direction.
    pub fn reaction(&self) -> Wrench2 {
        Wrench2::new(-self.fx, -self.fy, -self.tau)
    }

    pub fn is_finite(&self) -> bool {
        self.fx.is_finite() && self.fy.is_finite() && self.tau.is_finite()
    }
}

impl Neg for Wrench2 {
    type Output = Wrench2;
    fn neg(self) -> Wrench2 {
        self.reaction()
    }
}
