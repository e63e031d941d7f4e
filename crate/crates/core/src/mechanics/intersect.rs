use super::error::{MechanicsError, SurfaceSide};
use super::params::FrictionParams;
use crate::tol;

/// Intersection of the two reduced limit surfaces at applied force `n_e`.
///
/// Solves the pair of ellipse equations `F^2/a_f^2 + T^2/a_t^2 = 1` as a
/// 2x2 linear system in `(F^2, T^2)` and returns the first-quadrant crossing
/// `(f_star, t_star)`. When the surfaces coincide (possible at exactly the
/// critical force with equal patch radii) every boundary point crosses; the
/// pure-force point `(a_f, 0)` is returned by convention.
///
/// Fails with [`MechanicsError::NoIntersection`] when one surface lies
/// inside the other, naming the inner surface.
pub fn intersection_wrench(
    params: &FrictionParams,
    n_e: f64,
) -> Result<(f64, f64), MechanicsError> {
    let top = params.top_surface(n_e)?;
    let sup = params.support_surface(n_e)?;
    let (a, b) = (top.a_f(), top.a_t());
    let (c, d) = (sup.a_f(), sup.a_t());

    if (a - c).abs() <= tol::COINCIDENT_REL * a.max(c)
        && (b - d).abs() <= tol::COINCIDENT_REL * b.max(d)
    {
        return Ok((a, 0.0));
    }

    let inner_side = || {
        if a <= c && b <= d {
            MechanicsError::NoIntersection {
                inner: SurfaceSide::Top,
            }
        } else {
            MechanicsError::NoIntersection {
                inner: SurfaceSide::Support,
            }
        }
    };

    let (a2, b2, c2, d2) = (a * a, b * b, c * c, d * d);
    let den = b2 * c2 - a2 * d2;
    if den == 0.0 {
        // Same aspect ratio but different size: similar ellipses, one inside.
        return Err(inner_side());
    }
    let f2 = a2 * c2 * (b2 - d2) / den;
    let t2 = b2 * d2 * (c2 - a2) / den;
    if f2 < 0.0 || t2 < 0.0 {
        return Err(inner_side());
    }
    Ok((f2.sqrt(), t2.sqrt()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Wrench2;

    #[test]
    fn intersection_satisfies_both_ellipses() {
        let p = FrictionParams::new(0.5, 0.5, 0.1, 0.02, 0.6, 0.05, 9.81).unwrap();
        let (f, t) = intersection_wrench(&p, 3.0).unwrap();
        assert!(f > 0.0 && t > 0.0);
        let top = p.top_surface(3.0).unwrap();
        let sup = p.support_surface(3.0).unwrap();
        let w = Wrench2::new(f, 0.0, t);
        assert!(top.residual(&w) < 1e-12);
        assert!(sup.residual(&w) < 1e-12);
    }

    #[test]
    fn case_i_reports_top_inside() {
        let p = FrictionParams::new(0.3, 0.6, 0.02, 0.05, 0.6, 0.05, 9.81).unwrap();
        for n_e in [0.5, 2.0, 10.0] {
            match intersection_wrench(&p, n_e) {
                Err(MechanicsError::NoIntersection { inner }) => {
                    assert_eq!(inner, SurfaceSide::Top)
                }
                other => panic!("expected NoIntersection, got {other:?}"),
            }
        }
    }

    #[test]
    fn above_stick_force_reports_support_inside() {
        // Case V band (0.24525, 0.4905); above it the support surface is inner.
        let p = FrictionParams::new(0.6, 0.3, 0.06, 0.04, 0.6, 0.05, 9.81).unwrap();
        match intersection_wrench(&p, 1.0) {
            Err(MechanicsError::NoIntersection { inner }) => {
                assert_eq!(inner, SurfaceSide::Support)
            }
            other => panic!("expected NoIntersection, got {other:?}"),
        }
        assert!(intersection_wrench(&p, 0.35).is_ok());
    }

    #[test]
    fn coincident_surfaces_return_pure_force_point() {
        // Equal radii and mu_e > mu_p: at exactly the force crossover the
        // two ellipses coincide.
        let p = FrictionParams::new(0.6, 0.3, 0.05, 0.05, 0.6, 0.05, 9.81).unwrap();
        let n_e = p.weight() * p.mu_p / (p.mu_e - p.mu_p);
        let (f, t) = intersection_wrench(&p, n_e).unwrap();
        assert_eq!(t, 0.0);
        assert!((f - p.top_surface(n_e).unwrap().a_f()).abs() <= 1e-12 * f);
    }
}
