use super::error::MechanicsError;
use super::intersect::intersection_wrench;
use super::params::FrictionParams;
use super::regime::CaseId;
use crate::geom::Twist2;

/// Which surface's normal defines the twist at the slip boundary.
///
/// The object slides on the plane, so the support surface's normal at the
/// intersection wrench gives the sliding body's twist; that is the default.
/// The top-surface variant is kept selectable because the two conventions
/// disagree in general and the choice is worth testing against data.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum KvSurface {
    #[default]
    Support,
    Top,
}

/// Critical ratio of angular to linear speed [rad/m] at the limit-surface
/// intersection, using the default support-surface convention.
pub fn kv(params: &FrictionParams, n_e: f64) -> Result<f64, MechanicsError> {
    kv_on(params, n_e, KvSurface::Support)
}

/// [`kv`] with an explicit choice of normal surface.
///
/// At the intersection `(f_star, t_star)` the surface normal in the reduced
/// plane is proportional to `(f_star / a_f^2, t_star / a_t^2)`, so
/// `k_v = (t_star * a_f^2) / (f_star * a_t^2)` for the chosen surface.
pub fn kv_on(
    params: &FrictionParams,
    n_e: f64,
    surface: KvSurface,
) -> Result<f64, MechanicsError> {
    let (f_star, t_star) = intersection_wrench(params, n_e)?;
    if f_star == 0.0 {
        return Err(MechanicsError::InfiniteKv);
    }
    let s = match surface {
        KvSurface::Support => params.support_surface(n_e)?,
        KvSurface::Top => params.top_surface(n_e)?,
    };
    Ok(t_star * s.a_f() * s.a_f() / (f_star * s.a_t() * s.a_t()))
}

/// Whether a twist keeps the top contact sticking while the object slides.
///
/// Cases III/IV bound rotation from above: sticking iff
/// `safety * k_v * |v| >= |omega|`. Cases II/V bound it from below:
/// sticking iff `k_v * |v| / safety < |omega|`. Equality is assigned to the
/// sticking set in III/IV and the slipping set in II/V. The rest twist is
/// slippage-free in every case, and case I admits no other sticking twist.
pub fn is_slippage_free(twist: &Twist2, k_v: f64, case_id: CaseId, safety: f64) -> bool {
    debug_assert!(k_v >= 0.0, "k_v must be non-negative");
    debug_assert!(safety > 0.0 && safety <= 1.0, "safety must be in (0, 1]");
    if twist.is_zero() {
        return true;
    }
    let speed = twist.linear_speed();
    match case_id {
        CaseId::I => false,
        CaseId::III | CaseId::IV => safety * k_v * speed >= twist.omega.abs(),
        CaseId::II | CaseId::V => k_v * speed / safety < twist.omega.abs(),
    }
}
