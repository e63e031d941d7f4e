//! Limit-surface contact mechanics for one object between two patch contacts.
//!
//! The top contact (end-effector on object) and the support contact (object
//! on plane) each get an ellipsoidal limit surface. Because in-plane force
//! directions are interchangeable under isotropic friction, each surface
//! reduces to an ellipse in the (force magnitude, torque magnitude) plane;
//! comparing the two ellipses at a given applied normal force classifies the
//! interaction, locates critical normal forces, and yields the twist ratio
//! `k_v` at the slip boundary.

mod error;
mod intersect;
mod kv;
mod params;
mod regime;
mod surface;

pub use error::{MechanicsError, SurfaceSide};
pub use intersect::intersection_wrench;
pub use kv::{is_slippage_free, kv, kv_on, KvSurface};
pub use params::FrictionParams;
pub use regime::{classify_case, force_regime, CaseId, ContactCase, ForceRegime, ValidRange};
pub use surface::{build_limit_surface, LimitSurface};
