//! Subcommand implementations.

use std::path::Path as FsPath;

use serde::Deserialize;

use slipfree_core::identify::{
    fit_params, read_records_csv_path, FitOptions, IdentifyError, ParamBounds,
};
use slipfree_core::planner::Path;
use slipfree_core::{
    classify_case, force_regime, kv_on, linear_interpolation, pose_rmse, rollout, solve_plan,
    CaseId, KvSurface, Metrics, PlanError, PlanProblem, Pose2, SimConfig, SimError, ValidRange,
};

use crate::config::App;
use crate::output::{dec17, json_opt, write_file, CliError};
use crate::svg;

pub fn classify(app: &App) -> Result<(), CliError> {
    let case = classify_case(&app.friction);
    let regime = force_regime(&app.friction);
    let range = match regime.valid_range {
        ValidRange::Empty => "null".to_string(),
        ValidRange::Above { min } => format!("[{}, null]", dec17(min)),
        ValidRange::Between { min, max } => format!("[{}, {}]", dec17(min), dec17(max)),
    };
    println!(
        "{{\"case\":\"{}\",\"p_t\":{},\"p_f\":{},\"n_slip\":{},\"n_stick\":{},\"valid_range\":{}}}",
        case.case_id,
        dec17(case.p_t),
        dec17(case.p_f),
        json_opt(regime.n_slip),
        json_opt(regime.n_stick),
        range
    );
    Ok(())
}

pub fn kv_sweep(
    app: &App,
    ne_min: Option<f64>,
    ne_max: Option<f64>,
    steps: usize,
    surface: KvSurface,
) -> Result<(), CliError> {
    if steps < 2 {
        return Err(CliError::input("--steps must be at least 2"));
    }
    let regime = force_regime(&app.friction);
    let (lo_default, hi_default) = match regime.valid_range {
        ValidRange::Empty => {
            return Err(CliError::infeasible(
                "case I: the surfaces never intersect, k_v is undefined",
            ))
        }
        ValidRange::Above { min } => (min * 1.001, min * 1.001 * 10.0),
        ValidRange::Between { min, max } => {
            let width = max - min;
            (min + 1e-3 * width, max - 1e-3 * width)
        }
    };
    let lo = ne_min.unwrap_or(lo_default);
    let hi = ne_max.unwrap_or(hi_default);
    if lo >= hi || lo.is_nan() || hi.is_nan() {
        return Err(CliError::input(format!(
            "empty force grid: ne_min {lo} must be below ne_max {hi}"
        )));
    }
    let mut rows = Vec::new();
    for i in 0..steps {
        let n_e = lo + (hi - lo) * i as f64 / (steps - 1) as f64;
        if let Ok(k) = kv_on(&app.friction, n_e, surface) {
            rows.push(format!("{},{}", dec17(n_e), dec17(k)));
        }
    }
    if rows.is_empty() {
        return Err(CliError::infeasible(
            "no grid point falls inside the valid force range",
        ));
    }
    println!("n_e,k_v");
    for row in rows {
        println!("{row}");
    }
    Ok(())
}

fn build_problem(app: &App, start: Pose2, goal: Pose2, n_e: f64) -> Result<PlanProblem, CliError> {
    let case = classify_case(&app.friction).case_id;
    if case == CaseId::I {
        return Err(CliError::infeasible(
            "case I: no slippage-free motion exists",
        ));
    }
    let k_v = app.kv_at(n_e)?;
    let mut problem = PlanProblem::new(
        start,
        goal,
        app.planner_n,
        k_v,
        case,
        app.c1,
        app.c2,
        app.safety,
    );
    problem.convention = app.convention;
    Ok(problem)
}

fn path_json(path: &Path) -> String {
    let rows: Vec<String> = path
        .waypoints
        .iter()
        .map(|w| format!("[{},{},{}]", dec17(w.x), dec17(w.y), dec17(w.theta)))
        .collect();
    format!("[{}]\n", rows.join(","))
}

pub fn plan(app: &App, start: Pose2, goal: Pose2) -> Result<(), CliError> {
    let problem = build_problem(app, start, goal, app.n_e)?;
    let (path, report) = match solve_plan(&problem) {
        Ok(ok) => ok,
        Err(PlanError::NotConverged { path, report }) => {
            // Leave the best effort on disk for inspection, then fail.
            let _ = write_file(&app.out, "path.json", &path_json(&path));
            let _ = write_file(&app.out, "path.svg", &svg::path_svg(&path));
            return Err(CliError::infeasible(format!(
                "planner did not converge (objective {}, min margin {:e})",
                dec17(report.objective_value),
                report
                    .per_segment_margins
                    .iter()
                    .cloned()
                    .fold(f64::INFINITY, f64::min)
            )));
        }
        Err(PlanError::AlwaysSlips) => {
            return Err(CliError::infeasible("case I: planning is infeasible"))
        }
        Err(e) => return Err(CliError::input(e.to_string())),
    };
    write_file(&app.out, "path.json", &path_json(&path))?;
    write_file(&app.out, "path.svg", &svg::path_svg(&path))?;
    println!(
        "{{\"converged\":{},\"objective\":{},\"iterations\":{}}}",
        report.converged,
        dec17(report.objective_value),
        report.iterations
    );
    Ok(())
}

pub fn simulate(app: &App, path_file: &FsPath) -> Result<(), CliError> {
    let text = std::fs::read_to_string(path_file)
        .map_err(|e| CliError::input(format!("cannot read {}: {e}", path_file.display())))?;
    let raw: Vec<[f64; 3]> = serde_json::from_str(&text)
        .map_err(|e| CliError::input(format!("malformed path file: {e}")))?;
    if raw.len() < 2 {
        return Err(CliError::input(format!(
            "path file needs at least 2 waypoints, got {}",
            raw.len()
        )));
    }
    let path = Path::new(raw.iter().map(|w| Pose2::new(w[0], w[1], w[2])).collect());
    let config = SimConfig::new(app.friction, app.n_e, app.safety);
    let roll = rollout(&path, &config).map_err(|e| match e {
        SimError::InvalidConfig(msg) => CliError::infeasible(msg),
        SimError::Mechanics(e) => CliError::infeasible(e.to_string()),
        other => CliError::input(other.to_string()),
    })?;

    let mut csv = String::from("step,ee_x,ee_y,ee_th,obj_x,obj_y,obj_th,slipped\n");
    for (i, (ee, obj)) in roll
        .ee_path
        .waypoints
        .iter()
        .zip(roll.object_path.waypoints.iter())
        .enumerate()
    {
        let slipped = if i == 0 {
            0
        } else {
            u8::from(roll.slip_flags[i - 1])
        };
        csv.push_str(&format!(
            "{i},{},{},{},{},{},{},{slipped}\n",
            dec17(ee.x),
            dec17(ee.y),
            dec17(ee.theta),
            dec17(obj.x),
            dec17(obj.y),
            dec17(obj.theta)
        ));
    }
    write_file(&app.out, "rollout.csv", &csv)?;

    let e = roll.final_error;
    let terminal = format!(
        "{{\"x\":{},\"y\":{},\"theta\":{},\"pos_norm\":{},\"ori_abs\":{}}}\n",
        dec17(e.x),
        dec17(e.y),
        dec17(e.theta),
        dec17(e.translation_norm()),
        dec17(e.theta.abs())
    );
    write_file(&app.out, "terminal_error.json", &terminal)?;
    println!(
        "{{\"slipped_steps\":{},\"total_steps\":{}}}",
        roll.slip_flags.iter().filter(|&&s| s).count(),
        roll.slip_flags.len()
    );
    Ok(())
}

pub fn fit(app: &App, dataset: &FsPath) -> Result<(), CliError> {
    let records = read_records_csv_path(dataset).map_err(|e| CliError::input(e.to_string()))?;
    if records.is_empty() {
        return Err(CliError::input("dataset has no rows"));
    }
    let opts = FitOptions {
        seed: app.seed,
        ..FitOptions::default()
    };
    let result = fit_params(&records, &app.friction, ParamBounds::default(), opts).map_err(
        |e| match e {
            IdentifyError::Degenerate { .. } => CliError::degenerate(e.to_string()),
            other => CliError::input(other.to_string()),
        },
    )?;

    let p = result.params;
    let json = format!(
        "{{\"mu_e\":{},\"mu_p\":{},\"r_e\":{},\"r_p\":{},\"c\":{},\"mass\":{},\"gravity\":{},\
         \"loss\":{},\"classification_accuracy\":{},\"iterations\":{},\"converged\":{}}}\n",
        dec17(p.mu_e),
        dec17(p.mu_p),
        dec17(p.r_e),
        dec17(p.r_p),
        dec17(p.c),
        dec17(p.mass),
        dec17(p.gravity),
        dec17(result.loss),
        dec17(result.classification_accuracy),
        result.iterations,
        result.converged
    );
    write_file(&app.out, "fit.json", &json)?;
    write_file(&app.out, "boundary.svg", &svg::boundary_svg(&records, &p))?;
    print!("{json}");
    Ok(())
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ProblemEntry {
    start: [f64; 3],
    goal: [f64; 3],
    #[serde(default)]
    n_e: Option<f64>,
}

pub fn sweep(app: &App, problems_file: &FsPath) -> Result<(), CliError> {
    let text = std::fs::read_to_string(problems_file)
        .map_err(|e| CliError::input(format!("cannot read {}: {e}", problems_file.display())))?;
    let entries: Vec<ProblemEntry> = serde_json::from_str(&text)
        .map_err(|e| CliError::input(format!("malformed problems file: {e}")))?;
    if entries.is_empty() {
        return Err(CliError::input("problem suite is empty"));
    }

    // Group by normal force, preserving first-appearance order.
    let mut groups: Vec<(f64, Vec<&ProblemEntry>)> = Vec::new();
    for entry in &entries {
        let n_e = entry.n_e.unwrap_or(app.n_e);
        match groups.iter_mut().find(|(g, _)| *g == n_e) {
            Some((_, list)) => list.push(entry),
            None => groups.push((n_e, vec![entry])),
        }
    }

    let mut per_force = String::from("n_e,planner,pos_rmse_m,ori_rmse_rad\n");
    let mut pooled: Vec<(usize, Metrics, Metrics)> = Vec::new();
    for (n_e, list) in &groups {
        let config = SimConfig::new(app.friction, *n_e, app.safety);
        let mut linear_rollouts = Vec::with_capacity(list.len());
        let mut proposed_rollouts = Vec::with_capacity(list.len());
        let mut goals = Vec::with_capacity(list.len());
        for entry in list {
            let start = Pose2::new(entry.start[0], entry.start[1], entry.start[2]);
            let goal = Pose2::new(entry.goal[0], entry.goal[1], entry.goal[2]);
            let problem = build_problem(app, start, goal, *n_e)?;
            let lin = linear_interpolation(start, goal, problem.n)
                .map_err(|e| CliError::input(e.to_string()))?;
            let (planned, _) = solve_plan(&problem).map_err(|e| match e {
                PlanError::Invalid(msg) => CliError::input(msg),
                other => CliError::infeasible(other.to_string()),
            })?;
            let sim = |p: &Path| {
                rollout(p, &config).map_err(|e| CliError::infeasible(e.to_string()))
            };
            linear_rollouts.push(sim(&lin)?);
            proposed_rollouts.push(sim(&planned)?);
            goals.push(goal);
        }
        let m_lin = pose_rmse(&linear_rollouts, &goals)
            .map_err(|e| CliError::input(e.to_string()))?;
        let m_prop = pose_rmse(&proposed_rollouts, &goals)
            .map_err(|e| CliError::input(e.to_string()))?;
        per_force.push_str(&format!(
            "{},linear,{},{}\n",
            dec17(*n_e),
            dec17(m_lin.pos_rmse),
            dec17(m_lin.ori_rmse)
        ));
        per_force.push_str(&format!(
            "{},proposed,{},{}\n",
            dec17(*n_e),
            dec17(m_prop.pos_rmse),
            dec17(m_prop.ori_rmse)
        ));
        pooled.push((list.len(), m_lin, m_prop));
    }

    // Pool the per-group RMSE values back into one table.
    let total: usize = pooled.iter().map(|(n, _, _)| n).sum();
    let pool = |pick: fn(&(usize, Metrics, Metrics)) -> &Metrics| -> Metrics {
        let mut pos_sq = 0.0;
        let mut ori_sq = 0.0;
        for row in &pooled {
            let m = pick(row);
            let w = row.0 as f64;
            pos_sq += w * m.pos_rmse * m.pos_rmse;
            ori_sq += w * m.ori_rmse * m.ori_rmse;
        }
        Metrics {
            pos_rmse: (pos_sq / total as f64).sqrt(),
            ori_rmse: (ori_sq / total as f64).sqrt(),
        }
    };
    let lin = pool(|r| &r.1);
    let prop = pool(|r| &r.2);

    let mut metrics = String::from("object,planner,pos_rmse_m,ori_rmse_rad\n");
    metrics.push_str(&format!(
        "sim,linear,{},{}\n",
        dec17(lin.pos_rmse),
        dec17(lin.ori_rmse)
    ));
    metrics.push_str(&format!(
        "sim,proposed,{},{}\n",
        dec17(prop.pos_rmse),
        dec17(prop.ori_rmse)
    ));
    write_file(&app.out, "metrics.csv", &metrics)?;
    write_file(&app.out, "per_force.csv", &per_force)?;
    println!(
        "{{\"problems\":{total},\"linear_ori_rmse\":{},\"proposed_ori_rmse\":{}}}",
        dec17(lin.ori_rmse),
        dec17(prop.ori_rmse)
    );
    Ok(())
}
