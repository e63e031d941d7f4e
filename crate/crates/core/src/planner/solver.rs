//! Penalty-descent solver for the slippage-free path problem.
//!
//! The path is reparameterized by its segment differences `d_i = q_{i+1} -
//! q_i`, which turns the fixed endpoints into one affine constraint
//! `sum(d_i) = goal - start`. The objective (deviation from the straight
//! line plus second-difference roughness) is convex quadratic in `d`; each
//! segment constraint is nonconvex but has a closed-form projection.
//!
//! The solve runs in three phases:
//!
//! 1. a feasible, endpoint-exact initial guess (the straight line when it
//!    already satisfies every margin, otherwise a winding or zigzag path
//!    built to carry the required rotation),
//! 2. penalty descent: gradient steps with backtracking line search on the
//!    objective plus `rho * hinge(margin)^2`, the gradient projected onto
//!    the affine subspace, with `rho` escalating tenfold per outer round,
//! 3. projection polish after each round: alternating per-segment
//!    projections and re-centering onto the affine constraint until a
//!    feasible fixed point; feasible iterates are harvested and the best
//!    objective among them is returned.
//!
//! Every step is deterministic, and all arithmetic is exactly equivariant
//! under the mirror map (x -> -x, theta -> -theta).

use crate::geom::Pose2;
use crate::mechanics::CaseId;
use crate::tol;

use super::{
    delta_is_zero, linear_interpolation, margin_feasible, margin_for, project_for, total_objective,
    validate_path, Path, PlanError, PlanProblem, SolveReport,
};

const OUTER_CAP: usize = 50;
const TOTAL_INNER_CAP: usize = 10_000;
const PER_OUTER_INNER_CAP: usize = 1_500;
const SWEEP_CAP: usize = 2_000;
const LINE_SEARCH_CAP: usize = 60;
const ARMIJO: f64 = 1e-4;

/// Solves a planning problem to a feasible, endpoint-exact path.
///
/// Returns the best feasible path found together with its report. The
/// objective trace records the best feasible objective after each outer
/// penalty round, so it is non-increasing by construction. Fails with
/// [`PlanError::AlwaysSlips`] for case I and with
/// [`PlanError::NotConverged`] when no feasible path was found within the
/// iteration caps (single-segment problems with an infeasible straight line
/// cannot wind and end up there).
pub fn solve_plan(problem: &PlanProblem) -> Result<(Path, SolveReport), PlanError> {
    problem.validate()?;
    if problem.case_id == CaseId::I {
        return Err(PlanError::AlwaysSlips);
    }

    let lin = linear_interpolation(problem.start, problem.goal, problem.n)?;
    if path_strictly_feasible(&lin, problem) {
        let mut report = validate_path(&lin, problem)?;
        report.converged = true;
        return Ok((lin, report));
    }

    let Some(init) = initial_differences(problem) else {
        let mut report = validate_path(&lin, problem)?;
        report.converged = false;
        return Err(PlanError::NotConverged {
            path: lin,
            report: Box::new(report),
        });
    };

    let ws = Workspace::new(problem);
    let mut d = init;
    let mut best: Option<(f64, Vec<[f64; 3]>)> = None;
    consider(&mut best, &ws, &d, problem);

    let mut trace = Vec::new();
    let mut rho = 1.0;
    let mut budget = TOTAL_INNER_CAP;
    let mut alpha = 1e-2;
    let mut iterations = 0usize;

    for outer in 0..OUTER_CAP {
        let before = budget;
        descend(&ws, &mut d, rho, &mut budget, &mut alpha);
        iterations += before - budget;

        let mut candidate = d.clone();
        if projection_sweeps(&ws, &mut candidate) {
            consider(&mut best, &ws, &candidate, problem);
        }
        trace.push(best.as_ref().map(|b| b.0).unwrap_or(f64::INFINITY));

        let stable = outer >= 2 && {
            let k = trace.len();
            let prev = trace[k - 3];
            let now = trace[k - 1];
            prev.is_finite() && (prev - now).abs() <= 1e-12 * (1.0 + now.abs())
        };
        if (stable && best.is_some()) || budget == 0 {
            break;
        }
        rho *= 10.0;
    }

    match best {
        Some((_, d_best)) => {
            let path = path_from_differences(&d_best, problem);
            let mut report = validate_path(&path, problem)?;
            report.iterations = iterations;
            report.objective_trace = trace;
            Ok((path, report))
        }
        None => {
            // No feasible iterate was ever produced; return the descent
            // iterate re-centered onto exact endpoints as best effort.
            recenter(&mut d, &ws);
            let path = path_from_differences(&d, problem);
            let mut report = validate_path(&path, problem)?;
            report.iterations = iterations;
            report.objective_trace = trace;
            report.converged = false;
            Err(PlanError::NotConverged {
                path,
                report: Box::new(report),
            })
        }
    }
}

struct Workspace {
    qhat: Vec<Pose2>,
    start: Pose2,
    goal_delta: [f64; 3],
    kappa_sq: f64,
    case_id: CaseId,
    c1: f64,
    c2: f64,
}

impl Workspace {
    fn new(problem: &PlanProblem) -> Self {
        let qhat = linear_interpolation(problem.start, problem.goal, problem.n)
            .expect("validated problem")
            .waypoints;
        let gd = problem.goal - problem.start;
        Self {
            qhat,
            start: problem.start,
            goal_delta: [gd.x, gd.y, gd.theta],
            kappa_sq: problem.kappa_sq(),
            case_id: problem.case_id,
            c1: problem.c1,
            c2: problem.c2,
        }
    }

    fn violation(&self, seg: &[f64; 3]) -> f64 {
        let delta = Pose2::new(seg[0], seg[1], seg[2]);
        if self.case_id.rotation_required() && delta_is_zero(delta) {
            return 0.0;
        }
        (-margin_for(delta, self.kappa_sq, self.case_id)).max(0.0)
    }

    /// Objective plus penalty at `d`.
    fn penalized(&self, d: &[[f64; 3]], rho: f64) -> f64 {
        let mut q = [self.start.x, self.start.y, self.start.theta];
        let mut dev = 0.0;
        for (i, seg) in d.iter().enumerate() {
            for k in 0..3 {
                q[k] += seg[k];
            }
            let qh = self.qhat[i + 1];
            let r = [q[0] - qh.x, q[1] - qh.y, q[2] - qh.theta];
            dev += r[0] * r[0] + r[1] * r[1] + r[2] * r[2];
        }
        let mut rough = 0.0;
        for i in 1..d.len() {
            for (a, b) in d[i].iter().zip(d[i - 1].iter()) {
                let dd = a - b;
                rough += dd * dd;
            }
        }
        let mut pen = 0.0;
        for seg in d {
            let v = self.violation(seg);
            pen += v * v;
        }
        self.c1 * dev + self.c2 * rough + rho * pen
    }

    /// Gradient of the penalized objective, projected onto the subspace of
    /// zero-sum perturbations so gradient steps preserve the endpoints.
    fn gradient(&self, d: &[[f64; 3]], rho: f64, g: &mut Vec<[f64; 3]>) {
        let n_seg = d.len();
        g.clear();
        g.resize(n_seg, [0.0; 3]);

        // Deviation term via suffix sums of waypoint residuals.
        let mut residuals = vec![[0.0; 3]; n_seg];
        let mut q = [self.start.x, self.start.y, self.start.theta];
        for (i, seg) in d.iter().enumerate() {
            for k in 0..3 {
                q[k] += seg[k];
            }
            let qh = self.qhat[i + 1];
            residuals[i] = [q[0] - qh.x, q[1] - qh.y, q[2] - qh.theta];
        }
        let mut suffix = [0.0; 3];
        for j in (0..n_seg).rev() {
            for k in 0..3 {
                suffix[k] += residuals[j][k];
                g[j][k] += 2.0 * self.c1 * suffix[k];
            }
        }

        // Roughness term.
        for j in 0..n_seg {
            for k in 0..3 {
                if j >= 1 {
                    g[j][k] += 2.0 * self.c2 * (d[j][k] - d[j - 1][k]);
                }
                if j + 1 < n_seg {
                    g[j][k] -= 2.0 * self.c2 * (d[j + 1][k] - d[j][k]);
                }
            }
        }

        // Penalty term.
        let sgn = if self.case_id.rotation_required() {
            1.0
        } else {
            -1.0
        };
        for (j, seg) in d.iter().enumerate() {
            let v = self.violation(seg);
            if v > 0.0 {
                // violation = sgn * (kappa^2 dp^2 - dtheta^2) when positive
                g[j][0] += rho * 2.0 * v * sgn * 2.0 * self.kappa_sq * seg[0];
                g[j][1] += rho * 2.0 * v * sgn * 2.0 * self.kappa_sq * seg[1];
                g[j][2] -= rho * 2.0 * v * sgn * 2.0 * seg[2];
            }
        }

        // Project onto the zero-sum subspace.
        let mut mean = [0.0; 3];
        for seg in g.iter() {
            for k in 0..3 {
                mean[k] += seg[k];
            }
        }
        for m in mean.iter_mut() {
            *m /= n_seg as f64;
        }
        for seg in g.iter_mut() {
            for k in 0..3 {
                seg[k] -= mean[k];
            }
        }
    }
}

fn descend(ws: &Workspace, d: &mut Vec<[f64; 3]>, rho: f64, budget: &mut usize, alpha: &mut f64) {
    let per_outer = (*budget).min(PER_OUTER_INNER_CAP);
    let mut used = 0usize;
    let mut f = ws.penalized(d, rho);
    let mut g: Vec<[f64; 3]> = Vec::new();
    let mut cand = d.clone();

    while used < per_outer {
        ws.gradient(d, rho, &mut g);
        let gn2: f64 = g
            .iter()
            .map(|s| s[0] * s[0] + s[1] * s[1] + s[2] * s[2])
            .sum();
        if gn2.sqrt() < tol::GRADIENT_STOP {
            break;
        }

        let mut a = *alpha;
        let mut accepted = false;
        for _ in 0..LINE_SEARCH_CAP {
            for (c, (base, step)) in cand.iter_mut().zip(d.iter().zip(g.iter())) {
                for k in 0..3 {
                    c[k] = base[k] - a * step[k];
                }
            }
            let fc = ws.penalized(&cand, rho);
            if fc <= f - ARMIJO * a * gn2 {
                std::mem::swap(d, &mut cand);
                f = fc;
                accepted = true;
                break;
            }
            a *= 0.5;
        }
        used += 1;
        if !accepted {
            break;
        }
        *alpha = (a * 2.0).min(1e6);
    }
    *budget -= used;
}

/// Alternating per-segment projection and endpoint re-centering until the
/// re-centered iterate is feasible. Returns false on stall.
fn projection_sweeps(ws: &Workspace, d: &mut [[f64; 3]]) -> bool {
    let n_seg = d.len() as f64;
    for _ in 0..SWEEP_CAP {
        for seg in d.iter_mut() {
            let p = project_for(
                Pose2::new(seg[0], seg[1], seg[2]),
                ws.kappa_sq,
                ws.case_id,
            );
            *seg = [p.x, p.y, p.theta];
        }
        let mut sum = [0.0; 3];
        for seg in d.iter() {
            for k in 0..3 {
                sum[k] += seg[k];
            }
        }
        let corr = [
            (ws.goal_delta[0] - sum[0]) / n_seg,
            (ws.goal_delta[1] - sum[1]) / n_seg,
            (ws.goal_delta[2] - sum[2]) / n_seg,
        ];
        for seg in d.iter_mut() {
            for k in 0..3 {
                seg[k] += corr[k];
            }
        }
        let feasible = d.iter().all(|seg| {
            let delta = Pose2::new(seg[0], seg[1], seg[2]);
            margin_feasible(
                margin_for(delta, ws.kappa_sq, ws.case_id),
                delta,
                ws.case_id,
                0.0,
            )
        });
        if feasible {
            return true;
        }
    }
    false
}

fn recenter(d: &mut [[f64; 3]], ws: &Workspace) {
    let n_seg = d.len() as f64;
    let mut sum = [0.0; 3];
    for seg in d.iter() {
        for k in 0..3 {
            sum[k] += seg[k];
        }
    }
    for seg in d.iter_mut() {
        for k in 0..3 {
            seg[k] += (ws.goal_delta[k] - sum[k]) / n_seg;
        }
    }
}

fn consider(
    best: &mut Option<(f64, Vec<[f64; 3]>)>,
    ws: &Workspace,
    d: &[[f64; 3]],
    problem: &PlanProblem,
) {
    let feasible = d.iter().all(|seg| {
        let delta = Pose2::new(seg[0], seg[1], seg[2]);
        margin_feasible(
            margin_for(delta, ws.kappa_sq, ws.case_id),
            delta,
            ws.case_id,
            0.0,
        )
    });
    if !feasible {
        return;
    }
    let path = path_from_differences(d, problem);
    let Ok(obj) = total_objective(&path, problem) else {
        return;
    };
    if best.as_ref().is_none_or(|(b, _)| obj < *b) {
        *best = Some((obj, d.to_vec()));
    }
}

fn path_from_differences(d: &[[f64; 3]], problem: &PlanProblem) -> Path {
    let mut waypoints = Vec::with_capacity(d.len() + 1);
    let mut q = problem.start;
    waypoints.push(q);
    for seg in d {
        q = q + Pose2::new(seg[0], seg[1], seg[2]);
        waypoints.push(q);
    }
    // Pin the final waypoint; the affine constraint holds to rounding, so
    // this moves the last segment by at most a few ulps.
    *waypoints.last_mut().unwrap() = problem.goal;
    Path::new(waypoints)
}

fn path_strictly_feasible(path: &Path, problem: &PlanProblem) -> bool {
    let kappa_sq = problem.kappa_sq();
    path.waypoints.windows(2).all(|w| {
        let delta = w[1] - w[0];
        margin_feasible(
            margin_for(delta, kappa_sq, problem.case_id),
            delta,
            problem.case_id,
            0.0,
        )
    })
}

/// Sign convention shared by the initializers: the first nonzero of
/// (delta_theta, delta_x, delta_y), falling back to +1. Chosen so the
/// initial guess is exactly equivariant under the mirror map.
fn sign_chain(delta: Pose2) -> f64 {
    for v in [delta.theta, delta.x, delta.y] {
        if v != 0.0 {
            return v.signum();
        }
    }
    1.0
}

/// Feasible, endpoint-exact initial segment differences for a problem whose
/// straight line is infeasible. Returns None when the discretization cannot
/// carry the goal (fewer than two segments).
fn initial_differences(problem: &PlanProblem) -> Option<Vec<[f64; 3]>> {
    let n_seg = problem.n - 1;
    if n_seg < 2 {
        return None;
    }
    let delta = problem.goal - problem.start;
    if problem.case_id.rotation_required() {
        Some(zigzag_differences(problem, delta, n_seg))
    } else {
        winding_differences(problem, delta, n_seg)
    }
}

/// Cases III/IV: rotation is bounded by translation, so an infeasible goal
/// needs extra path length. The positions follow the chord plus a sinusoidal
/// lateral excursion whose amplitude is bisected until the discrete length
/// matches `|delta_theta| / (0.95 * kappa)`; orientation advances with
/// cumulative arclength, which puts every segment strictly inside the cone.
fn winding_differences(problem: &PlanProblem, delta: Pose2, n_seg: usize) -> Option<Vec<[f64; 3]>> {
    let kappa = problem.kappa_sq().sqrt();
    // Straight line infeasible in this family means |dtheta| > kappa*|dp|,
    // hence delta.theta != 0.
    debug_assert!(delta.theta != 0.0);
    let chord_len = delta.translation_norm();
    let length_target = delta.theta.abs() / (0.95 * kappa);
    if !length_target.is_finite() {
        return None;
    }

    let dir = if chord_len > 0.0 {
        [delta.x / chord_len, delta.y / chord_len]
    } else {
        [0.0, 1.0]
    };
    let s = sign_chain(delta);
    let lateral = [-s * dir[1], s * dir[0]];
    let lobes = (n_seg / 8).clamp(1, 6) as f64;

    let positions = |amp: f64| -> Vec<[f64; 2]> {
        (0..=n_seg)
            .map(|i| {
                let t = i as f64 / n_seg as f64;
                let wave = amp * (lobes * std::f64::consts::PI * t).sin();
                [
                    problem.start.x + t * delta.x + wave * lateral[0],
                    problem.start.y + t * delta.y + wave * lateral[1],
                ]
            })
            .collect()
    };
    let discrete_length = |pts: &[[f64; 2]]| -> f64 {
        pts.windows(2)
            .map(|w| (w[1][0] - w[0][0]).hypot(w[1][1] - w[0][1]))
            .sum()
    };

    let mut hi = length_target.max(1e-9);
    for _ in 0..200 {
        if discrete_length(&positions(hi)) >= length_target {
            break;
        }
        hi *= 2.0;
    }
    let mut lo = 0.0;
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if discrete_length(&positions(mid)) >= length_target {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let pts = positions(hi);

    let mut arc = Vec::with_capacity(n_seg + 1);
    arc.push(0.0);
    let mut acc = 0.0;
    for w in pts.windows(2) {
        acc += (w[1][0] - w[0][0]).hypot(w[1][1] - w[0][1]);
        arc.push(acc);
    }
    let total = *arc.last().unwrap();
    if total <= 0.0 {
        return None;
    }

    let mut d = Vec::with_capacity(n_seg);
    for i in 0..n_seg {
        let dth = delta.theta * (arc[i + 1] - arc[i]) / total;
        d.push([pts[i + 1][0] - pts[i][0], pts[i + 1][1] - pts[i][1], dth]);
    }
    Some(d)
}

/// Cases II/V: rotation must dominate translation, so the translation is
/// split evenly along the chord and the orientations zigzag with alternating
/// sign just above the per-segment bound, biased to sum to the goal rotation.
fn zigzag_differences(problem: &PlanProblem, delta: Pose2, n_seg: usize) -> Vec<[f64; 3]> {
    let kappa = problem.kappa_sq().sqrt();
    let step = [delta.x / n_seg as f64, delta.y / n_seg as f64];
    let step_len = step[0].hypot(step[1]);
    let bound = kappa * step_len * 1.05;
    let s0 = sign_chain(delta);

    let mut rot: Vec<f64> = (0..n_seg)
        .map(|i| if i % 2 == 0 { s0 * bound } else { -s0 * bound })
        .collect();
    let base: f64 = rot.iter().sum();
    let resid = delta.theta - base;
    if resid != 0.0 {
        let sr = resid.signum();
        let slots: Vec<usize> = (0..n_seg)
            .filter(|&i| rot[i] == 0.0 || rot[i].signum() == sr)
            .collect();
        let share = resid / slots.len() as f64;
        for i in slots {
            rot[i] += share;
        }
    }
    rot.iter().map(|&r| [step[0], step[1], r]).collect()
}
