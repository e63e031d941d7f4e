use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::mechanics::FrictionParams;

use super::nelder_mead::minimize;
use super::{classification_accuracy, region_margin, IdentifyError, SegmentRecord};

/// Box bounds for the four fitted parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParamBounds {
    pub mu_min: f64,
    pub mu_max: f64,
    pub r_min: f64,
    pub r_max: f64,
}

impl Default for ParamBounds {
    fn default() -> Self {
        // Physically plausible for tabletop objects; also keeps the simplex
        // from wandering into degenerate geometry.
        Self {
            mu_min: 0.01,
            mu_max: 2.0,
            r_min: 0.001,
            r_max: 0.2,
        }
    }
}

impl ParamBounds {
    fn clamp4(&self, theta: &[f64]) -> [f64; 4] {
        [
            theta[0].clamp(self.mu_min, self.mu_max),
            theta[1].clamp(self.mu_min, self.mu_max),
            theta[2].clamp(self.r_min, self.r_max),
            theta[3].clamp(self.r_min, self.r_max),
        ]
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitOptions {
    pub seed: u64,
    /// Jittered simplex restarts; the best of all restarts wins.
    pub restarts: usize,
    /// Iteration cap per restart.
    pub max_iters: usize,
    /// Weight of the L2 pull toward the initial guess (relative scale).
    pub lambda: f64,
    /// Loss weight of slipped records; once slip starts the aligned-contact
    /// assumption degrades, so those wrenches count for less.
    pub slip_weight: f64,
}

impl Default for FitOptions {
    fn default() -> Self {
        Self {
            seed: 0,
            restarts: 20,
            max_iters: 400,
            lambda: 1e-6,
            slip_weight: 0.5,
        }
    }
}

/// Result of a parameter fit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitResult {
    pub params: FrictionParams,
    pub loss: f64,
    pub classification_accuracy: f64,
    pub iterations: usize,
    pub converged: bool,
}

/// Fits `{mu_e, mu_p, r_e, r_p}` to labelled segments by minimizing a
/// weighted hinge loss on the signed region margin, with a small L2
/// regularizer toward the initial guess. Mass, gravity, and the pressure
/// constant are taken from `init` and not fitted.
///
/// Runs a Nelder-Mead search from the initial guess plus `restarts - 1`
/// seeded jittered starts and returns the best. Deterministic for a fixed
/// seed. Fails when the dataset is empty or single-class.
pub fn fit_params(
    dataset: &[SegmentRecord],
    init: &FrictionParams,
    bounds: ParamBounds,
    opts: FitOptions,
) -> Result<FitResult, IdentifyError> {
    if dataset.is_empty() {
        return Err(IdentifyError::EmptyDataset);
    }
    init.validate()?;
    for r in dataset {
        r.validate()?;
    }

    // Reduced view of the data: (force, torque, n_e, label sign, weight).
    let reduced: Vec<(f64, f64, f64, f64, f64)> = dataset
        .iter()
        .map(|r| {
            let slipped = r.resolved_label();
            (
                r.wrench.force_magnitude(),
                r.wrench.tau.abs(),
                r.n_e,
                if slipped { -1.0 } else { 1.0 },
                if slipped { opts.slip_weight } else { 1.0 },
            )
        })
        .collect();
    let n_slip = reduced.iter().filter(|r| r.3 < 0.0).count();
    if n_slip == 0 || n_slip == reduced.len() {
        return Err(IdentifyError::Degenerate {
            label: n_slip != 0,
        });
    }

    let init_theta = [init.mu_e, init.mu_p, init.r_e, init.r_p];
    let loss = |theta: &[f64]| -> f64 {
        let clamped = bounds.clamp4(theta);
        let mut out_of_bounds = 0.0;
        for (t, c) in theta.iter().zip(clamped.iter()) {
            out_of_bounds += (t - c) * (t - c);
        }
        let candidate = FrictionParams {
            mu_e: clamped[0],
            mu_p: clamped[1],
            r_e: clamped[2],
            r_p: clamped[3],
            ..*init
        };
        let mut total = 0.0;
        for &(force, torque, n_e, y, w) in &reduced {
            let margin = region_margin(&candidate, n_e, force, torque)
                .expect("validated records and bounded params");
            total += w * (-y * margin).max(0.0);
        }
        let mut reg = 0.0;
        for (c, i) in clamped.iter().zip(init_theta.iter()) {
            let rel = (c - i) / i;
            reg += rel * rel;
        }
        total + opts.lambda * reg + 1e6 * out_of_bounds
    };

    let mut rng = ChaCha20Rng::seed_from_u64(opts.seed);
    let mut best: Option<(f64, [f64; 4], usize, bool)> = None;
    let mut iterations = 0usize;
    let restarts = opts.restarts.max(1);
    for restart in 0..restarts {
        let start: Vec<f64> = if restart == 0 {
            init_theta.to_vec()
        } else {
            init_theta
                .iter()
                .map(|v| v * (1.0 + 0.3 * rng.gen_range(-1.0..1.0)))
                .collect()
        };
        let start = bounds.clamp4(&start).to_vec();
        let steps: Vec<f64> = start.iter().map(|v| 0.1 * v).collect();
        let r = minimize(loss, &start, &steps, opts.max_iters, 1e-12, 1e-10);
        iterations += r.iterations;
        let theta = bounds.clamp4(&r.x);
        if best.is_none() || r.fx < best.unwrap().0 {
            best = Some((r.fx, theta, r.iterations, r.converged));
        }
    }
    let (loss_value, theta, _, converged) = best.expect("at least one restart");

    let fitted = FrictionParams {
        mu_e: theta[0],
        mu_p: theta[1],
        r_e: theta[2],
        r_p: theta[3],
        ..*init
    };
    let accuracy = classification_accuracy(&fitted, dataset)?;
    Ok(FitResult {
        params: fitted,
        loss: loss_value,
        classification_accuracy: accuracy,
        iterations,
        converged,
    })
}
