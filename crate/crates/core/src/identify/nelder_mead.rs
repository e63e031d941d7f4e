//! Minimal Nelder-Mead simplex minimizer.
//!
//! Deterministic, allocation-light, and dimension-generic over slices. The
//! fit layer drives it with multiple jittered restarts; this module is just
//! one descent.

pub struct NmResult {
    pub x: Vec<f64>,
    pub fx: f64,
    pub iterations: usize,
    pub converged: bool,
}

const ALPHA: f64 = 1.0; // reflection
const GAMMA: f64 = 2.0; // expansion
const BETA: f64 = 0.5; // contraction
const SIGMA: f64 = 0.5; // shrink

/// Minimizes `f` from `x0` with per-dimension initial steps.
///
/// Stops when the function spread over the simplex falls below `f_tol`
/// relative to the best value, when the simplex collapses below `x_tol` in
/// every coordinate, or after `max_iters` iterations.
pub fn minimize(
    f: impl Fn(&[f64]) -> f64,
    x0: &[f64],
    steps: &[f64],
    max_iters: usize,
    f_tol: f64,
    x_tol: f64,
) -> NmResult {
    let dim = x0.len();
    let mut simplex: Vec<Vec<f64>> = Vec::with_capacity(dim + 1);
    simplex.push(x0.to_vec());
    for k in 0..dim {
        let mut v = x0.to_vec();
        v[k] += steps[k];
        simplex.push(v);
    }
    let mut values: Vec<f64> = simplex.iter().map(|v| f(v)).collect();

    let mut iterations = 0;
    let mut converged = false;
    while iterations < max_iters {
        iterations += 1;

        // Order the simplex: best first, worst last.
        let mut order: Vec<usize> = (0..=dim).collect();
        order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
        let best = order[0];
        let worst = order[dim];
        let second_worst = order[dim - 1];

        let spread = values[worst] - values[best];
        if spread <= f_tol * (1.0 + values[best].abs()) {
            let mut collapsed = true;
            'dims: for k in 0..dim {
                for v in &simplex {
                    if (v[k] - simplex[best][k]).abs() > x_tol * (1.0 + simplex[best][k].abs()) {
                        collapsed = false;
                        break 'dims;
                    }
                }
            }
            if collapsed || spread == 0.0 {
                converged = true;
                break;
            }
        }

        // Centroid of all but the worst.
        let mut centroid = vec![0.0; dim];
        for &i in order.iter().take(dim) {
            for k in 0..dim {
                centroid[k] += simplex[i][k];
            }
        }
        for c in centroid.iter_mut() {
            *c /= dim as f64;
        }

        let blend = |t: f64| -> Vec<f64> {
            (0..dim)
                .map(|k| centroid[k] + t * (centroid[k] - simplex[worst][k]))
                .collect()
        };

        let reflected = blend(ALPHA);
        let f_r = f(&reflected);
        if f_r < values[best] {
            let expanded = blend(GAMMA);
            let f_e = f(&expanded);
            if f_e < f_r {
                simplex[worst] = expanded;
                values[worst] = f_e;
            } else {
                simplex[worst] = reflected;
                values[worst] = f_r;
            }
        } else if f_r < values[second_worst] {
            simplex[worst] = reflected;
            values[worst] = f_r;
        } else {
            let contracted = if f_r < values[worst] {
                blend(BETA)
            } else {
                blend(-BETA)
            };
            let f_c = f(&contracted);
            if f_c < values[worst].min(f_r) {
                simplex[worst] = contracted;
                values[worst] = f_c;
            } else {
                // Shrink toward the best vertex.
                let best_point = simplex[best].clone();
                for (i, v) in simplex.iter_mut().enumerate() {
                    if i == best {
                        continue;
                    }
                    for k in 0..dim {
                        v[k] = best_point[k] + SIGMA * (v[k] - best_point[k]);
                    }
                    values[i] = f(v);
                }
            }
        }
    }

    let mut best = 0;
    for i in 1..values.len() {
        if values[i] < values[best] {
            best = i;
        }
    }
    NmResult {
        x: simplex[best].clone(),
        fx: values[best],
        iterations,
        converged,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimizes_quadratic_bowl() {
        let f = |x: &[f64]| (x[0] - 1.5).powi(2) + 3.0 * (x[1] + 0.5).powi(2);
        let r = minimize(f, &[0.0, 0.0], &[0.1, 0.1], 500, 1e-14, 1e-10);
        assert!(r.converged);
        assert!((r.x[0] - 1.5).abs() < 1e-5);
        assert!((r.x[1] + 0.5).abs() < 1e-5);
        assert!(r.fx < 1e-9);
    }

    #[test]
    fn minimizes_rosenbrock_reasonably() {
        let f = |x: &[f64]| (1.0 - x[0]).powi(2) + 100.0 * (x[1] - x[0] * x[0]).powi(2);
        let r = minimize(f, &[-1.2, 1.0], &[0.2, 0.2], 2000, 1e-15, 1e-12);
        assert!((r.x[0] - 1.0).abs() < 1e-3);
        assert!((r.x[1] - 1.0).abs() < 1e-3);
    }

    #[test]
    fn deterministic_for_identical_inputs() {
        let f = |x: &[f64]| x.iter().map(|v| v.abs().sqrt()).sum::<f64>();
        let a = minimize(f, &[1.0, 2.0, 3.0], &[0.5, 0.5, 0.5], 300, 1e-12, 1e-9);
        let b = minimize(f, &[1.0, 2.0, 3.0], &[0.5, 0.5, 0.5], 300, 1e-12, 1e-9);
        assert_eq!(a.x, b.x);
        assert_eq!(a.fx.to_bits(), b.fx.to_bits());
    }
}
