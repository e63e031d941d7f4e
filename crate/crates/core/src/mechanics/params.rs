use serde::{Deserialize, Serialize};

use super::error::MechanicsError;
use super::surface::{build_limit_surface, LimitSurface};

/// Physical parameter set for the object between its two contacts.
///
/// `mu_e`/`r_e` describe the top contact (end-effector on object) and
/// `mu_p`/`r_p` the support contact (object on plane). `c` is the pressure
/// distribution constant that scales the torque capacity of a circular patch
/// of equivalent radius `r`; it is about 0.6 for a uniform distribution and
/// is shared by both contacts.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrictionParams {
    /// Top-contact friction coefficient.
    pub mu_e: f64,
    /// Support friction coefficient.
    pub mu_p: f64,
    /// Equivalent radius of the top contact patch [m].
    pub r_e: f64,
    /// Equivalent radius of the support contact patch [m].
    pub r_p: f64,
    /// Pressure-distribution constant in (0, 1].
    pub c: f64,
    /// Object mass [kg].
    pub mass: f64,
    /// Gravitational acceleration [m/s^2].
    pub gravity: f64,
}

impl FrictionParams {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        mu_e: f64,
        mu_p: f64,
        r_e: f64,
        r_p: f64,
        c: f64,
        mass: f64,
        gravity: f64,
    ) -> Result<Self, MechanicsError> {
        let params = Self {
            mu_e,
            mu_p,
            r_e,
            r_p,
            c,
            mass,
            gravity,
        };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<(), MechanicsError> {
        for (name, value) in [
            ("mu_e", self.mu_e),
            ("mu_p", self.mu_p),
            ("r_e", self.r_e),
            ("r_p", self.r_p),
            ("mass", self.mass),
            ("gravity", self.gravity),
        ] {
            if !value.is_finite() || value <= 0.0 {
                return Err(MechanicsError::NonPositive { name, value });
            }
        }
        if !self.c.is_finite() || self.c <= 0.0 || self.c > 1.0 {
            return Err(MechanicsError::OutOfRange {
                name: "c",
                value: self.c,
                requirement: "0 < c <= 1",
            });
        }
        Ok(())
    }

    /// Weight of the object [N].
    pub fn weight(&self) -> f64 {
        self.mass * self.gravity
    }

    /// Normal force at the support contact: the object's weight plus the
    /// applied top-contact normal force.
    pub fn support_normal_force(&self, n_e: f64) -> Result<f64, MechanicsError> {
        if n_e.is_nan() || n_e < 0.0 {
            return Err(MechanicsError::NegativeNormalForce { value: n_e });
        }
        Ok(self.weight() + n_e)
    }

    /// Ratio of the applied normal force to the support normal force.
    ///
    /// Lies in [0, 1), increases strictly with `n_e`, and approaches but
    /// never reaches 1.
    pub fn force_ratio(&self, n_e: f64) -> Result<f64, MechanicsError> {
        let n_p = self.support_normal_force(n_e)?;
        Ok(n_e / n_p)
    }

    /// Limit surface of the top contact at applied normal force `n_e`.
    pub fn top_surface(&self, n_e: f64) -> Result<LimitSurface, MechanicsError> {
        build_limit_surface(self.mu_e, self.r_e, self.c, n_e)
    }

    /// Limit surface of the support contact at applied normal force `n_e`.
    pub fn support_surface(&self, n_e: f64) -> Result<LimitSurface, MechanicsError> {
        let n_p = self.support_normal_force(n_e)?;
        build_limit_surface(self.mu_p, self.r_p, self.c, n_p)
    }
}
