use serde::{Deserialize, Serialize};

use super::error::MechanicsError;
use crate::geom::{Twist2, Wrench2};
use crate::tol;

/// Ellipsoidal limit surface of one contact at one normal force.
///
/// In wrench space the surface is `w' A w = 1` with
/// `A = diag(a_f^-2, a_f^-2, a_t^-2)`, where `a_f = mu * N` bounds in-plane
/// force and `a_t = r * c * mu * N` bounds torque about the contact normal.
/// Both semi-axes scale linearly with the normal force, so `a_t / a_f = r*c`
/// independent of `N`. The reduced 2D picture in the (force magnitude,
/// torque magnitude) plane is the ellipse with the same semi-axes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LimitSurface {
    a_f: f64,
    a_t: f64,
    normal_force: f64,
}

/// Builds the limit surface for friction coefficient `mu`, equivalent patch
/// radius `r`, pressure constant `c`, and normal force `n`.
pub fn build_limit_surface(
    mu: f64,
    r: f64,
    c: f64,
    n: f64,
) -> Result<LimitSurface, MechanicsError> {
    for (name, value) in [("mu", mu), ("r", r), ("c", c), ("n", n)] {
        if !value.is_finite() || value <= 0.0 {
            return Err(MechanicsError::NonPositive { name, value });
        }
    }
    Ok(LimitSurface {
        a_f: mu * n,
        a_t: r * c * mu * n,
        normal_force: n,
    })
}

impl LimitSurface {
    /// Force semi-axis `mu * N` [N].
    pub fn a_f(&self) -> f64 {
        self.a_f
    }

    /// Torque semi-axis `r * c * mu * N` [N·m].
    pub fn a_t(&self) -> f64 {
        self.a_t
    }

    /// Normal force the surface was built for [N].
    pub fn normal_force(&self) -> f64 {
        self.normal_force
    }

    /// Quadratic form `w' A w`; equals 1 exactly on the surface.
    pub fn quadratic_form(&self, w: &Wrench2) -> f64 {
        let f = (w.fx / self.a_f) * (w.fx / self.a_f) + (w.fy / self.a_f) * (w.fy / self.a_f);
        f + (w.tau / self.a_t) * (w.tau / self.a_t)
    }

    /// Residual `|w' A w - 1|` of the surface equation.
    pub fn residual(&self, w: &Wrench2) -> f64 {
        (self.quadratic_form(w) - 1.0).abs()
    }

    /// Direction of the instantaneous object twist for a wrench on the
    /// surface: the outward surface normal, normalized to unit Euclidean
    /// length in mixed units. Direction only; the quasi-static model carries
    /// no speed.
    pub fn twist_direction(&self, w: &Wrench2) -> Result<Twist2, MechanicsError> {
        self.twist_direction_with(w, tol::SURFACE_RESIDUAL)
    }

    /// Like [`twist_direction`](Self::twist_direction) with an explicit
    /// residual tolerance.
    pub fn twist_direction_with(
        &self,
        w: &Wrench2,
        residual_tol: f64,
    ) -> Result<Twist2, MechanicsError> {
        let residual = self.residual(w);
        if residual >= residual_tol {
            return Err(MechanicsError::WrenchOffSurface { residual });
        }
        let n = Twist2::new(
            w.fx / (self.a_f * self.a_f),
            w.fy / (self.a_f * self.a_f),
            w.tau / (self.a_t * self.a_t),
        );
        let len = (n.vx * n.vx + n.vy * n.vy + n.omega * n.omega).sqrt();
        Ok(Twist2::new(n.vx / len, n.vy / len, n.omega / len))
    }

    /// The unique boundary wrench whose outward normal is parallel to the
    /// given twist: `w = A^-1 t / sqrt(t' A^-1 t)`.
    pub fn boundary_wrench_for_twist(&self, t: &Twist2) -> Result<Wrench2, MechanicsError> {
        if t.is_zero() {
            return Err(MechanicsError::ZeroTwist);
        }
        let sx = self.a_f * self.a_f * t.vx;
        let sy = self.a_f * self.a_f * t.vy;
        let st = self.a_t * self.a_t * t.omega;
        let norm = (sx * t.vx + sy * t.vy + st * t.omega).sqrt();
        Ok(Wrench2::new(sx / norm, sy / norm, st / norm))
    }
}
