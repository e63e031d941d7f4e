//! CLI acceptance: deterministic outputs (criterion 9), exit codes, and
//! file formats, exercised through the real binary.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use slipfree_core::identify::{synth_dataset, write_records_csv};
use slipfree_core::FrictionParams;

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_slipfree")
}

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(bin())
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(output: &Output) -> i32 {
    output.status.code().expect("exit code")
}

fn write_config(dir: &Path) -> PathBuf {
    let path = dir.join("config.json");
    fs::write(
        &path,
        r#"{
  "friction": {"mu_e": 0.5, "mu_p": 0.25, "r_e": 0.015, "r_p": 0.04, "c": 0.6, "mass": 0.05, "gravity": 9.81},
  "n_e": 4.0,
  "safety": 1.0,
  "planner": {"n": 30, "c1": 10.0, "c2": 1.0, "k_v": 1.25},
  "seed": 7
}"#,
    )
    .unwrap();
    path
}

fn write_case_i_config(dir: &Path) -> PathBuf {
    let path = dir.join("config_case_i.json");
    fs::write(
        &path,
        r#"{
  "friction": {"mu_e": 0.3, "mu_p": 0.3, "r_e": 0.03, "r_p": 0.03, "c": 0.6, "mass": 0.05, "gravity": 9.81},
  "n_e": 4.0,
  "safety": 1.0,
  "planner": {"n": 30, "c1": 10.0, "c2": 1.0}
}"#,
    )
    .unwrap();
    path
}

fn truth_params() -> FrictionParams {
    FrictionParams::new(0.5, 0.25, 0.015, 0.04, 0.6, 0.05, 9.81).unwrap()
}

fn write_dataset(dir: &Path, name: &str, noise: f64, seed: u64) -> PathBuf {
    let levels: Vec<f64> = (3..=9).map(f64::from).collect();
    let records = synth_dataset(&truth_params(), 400, &levels, noise, seed);
    let path = dir.join(name);
    let mut buf = Vec::new();
    write_records_csv(&records, &mut buf).unwrap();
    fs::write(&path, buf).unwrap();
    path
}

fn write_problems(dir: &Path) -> PathBuf {
    let path = dir.join("problems.json");
    fs::write(
        &path,
        r#"[
  {"start": [0,0,0], "goal": [0.02, 0.01, 0.6], "n_e": 3.0},
  {"start": [0,0,0], "goal": [0.0, -0.01, -0.7], "n_e": 3.0},
  {"start": [0,0,0], "goal": [0.03, 0.0, 0.8], "n_e": 5.0},
  {"start": [0,0,0], "goal": [-0.025, 0.02, -0.5], "n_e": 5.0},
  {"start": [0,0,0], "goal": [0.035, -0.01, 0.9]}
]"#,
    )
    .unwrap();
    path
}

#[test]
fn acceptance_9_sweep_and_fit_are_byte_deterministic() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    write_config(dir);
    write_problems(dir);
    write_dataset(dir, "data.csv", 0.05, 11);

    for sub in ["a", "b"] {
        fs::create_dir(dir.join(sub)).unwrap();
    }
    for out in ["a", "b"] {
        let sweep = run(
            dir,
            &[
                "--config",
                "config.json",
                "--out",
                out,
                "--seed",
                "13",
                "sweep",
                "--problems",
                "problems.json",
            ],
        );
        assert_eq!(code(&sweep), 0, "{}", String::from_utf8_lossy(&sweep.stderr));
        let fit = run(
            dir,
            &[
                "--config",
                "config.json",
                "--out",
                out,
                "--seed",
                "13",
                "fit",
                "--dataset",
                "data.csv",
            ],
        );
        assert_eq!(code(&fit), 0, "{}", String::from_utf8_lossy(&fit.stderr));
    }
    for file in ["metrics.csv", "per_force.csv", "fit.json", "boundary.svg"] {
        let a = fs::read(dir.join("a").join(file)).unwrap();
        let b = fs::read(dir.join("b").join(file)).unwrap();
        assert_eq!(a, b, "{file} differs between identical seeded runs");
        assert!(!a.is_empty());
    }
    println!(
        "criterion 9: PASS - repeated seeded sweep and fit runs produce byte-identical CSV/JSON/SVG"
    );
}

#[test]
fn classify_reports_case_and_critical_force() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    write_config(dir);
    let out = run(dir, &["--config", "config.json", "classify"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["case"], "III");
    assert!((v["n_slip"].as_f64().unwrap() - 0.4905).abs() < 1e-12);
    assert!(v["n_stick"].is_null());

    write_case_i_config(dir);
    let out = run(dir, &["--config", "config_case_i.json", "classify"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["case"], "I");
    assert!(v["valid_range"].is_null());
}

#[test]
fn malformed_config_exits_2() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    fs::write(dir.join("bad.json"), "{ not json").unwrap();
    let out = run(dir, &["--config", "bad.json", "classify"]);
    assert_eq!(code(&out), 2);

    let out = run(dir, &["--config", "missing.json", "classify"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn case_i_planning_exits_3() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    write_case_i_config(dir);
    let out = run(
        dir,
        &[
            "--config",
            "config_case_i.json",
            "plan",
            "--start",
            "0,0,0",
            "--goal",
            "0.02,0,0.4",
        ],
    );
    assert_eq!(code(&out), 3);

    let out = run(dir, &["--config", "config_case_i.json", "kv"]);
    assert_eq!(code(&out), 3);
}

#[test]
fn straight_feasible_goal_plans_to_the_linear_path() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    write_config(dir);
    let out = run(
        dir,
        &[
            "--config",
            "config.json",
            "plan",
            "--start",
            "0,0,0",
            "--goal",
            "0.03,0,0.03",
        ],
    );
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let text = fs::read_to_string(dir.join("path.json")).unwrap();
    let waypoints: Vec<[f64; 3]> = serde_json::from_str(&text).unwrap();
    assert_eq!(waypoints.len(), 30);
    for (i, w) in waypoints.iter().enumerate() {
        let t = i as f64 / 29.0;
        assert!((w[0] - 0.03 * t).abs() < 1e-6);
        assert!(w[1].abs() < 1e-6);
        assert!((w[2] - 0.03 * t).abs() < 1e-6);
    }
}

#[test]
fn planned_path_simulates_without_slip() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    write_config(dir);
    let plan = run(
        dir,
        &[
            "--config",
            "config.json",
            "plan",
            "--start",
            "0,0,0",
            "--goal",
            "0,-0.01,-0.7",
        ],
    );
    assert_eq!(code(&plan), 0, "{}", String::from_utf8_lossy(&plan.stderr));
    assert!(dir.join("path.svg").exists());

    let sim = run(
        dir,
        &[
            "--config",
            "config.json",
            "simulate",
            "--path",
            "path.json",
        ],
    );
    assert_eq!(code(&sim), 0, "{}", String::from_utf8_lossy(&sim.stderr));
    let csv = fs::read_to_string(dir.join("rollout.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(
        lines.next().unwrap(),
        "step,ee_x,ee_y,ee_th,obj_x,obj_y,obj_th,slipped"
    );
    for line in lines {
        assert!(line.ends_with(",0"), "unexpected slip in {line}");
    }
    let terminal: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.join("terminal_error.json")).unwrap())
            .unwrap();
    assert_eq!(terminal["pos_norm"].as_f64().unwrap(), 0.0);
    assert_eq!(terminal["ori_abs"].as_f64().unwrap(), 0.0);
}

#[test]
fn linear_path_for_rotation_heavy_goal_slips() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    write_config(dir);
    // Hand-written linear path with ratio far beyond the physical k_v.
    let n = 20;
    let rows: Vec<String> = (0..n)
        .map(|i| {
            let t = i as f64 / (n - 1) as f64;
            format!("[{},0.0,{}]", 2e-4 * t, 0.9 * t)
        })
        .collect();
    fs::write(dir.join("linear.json"), format!("[{}]", rows.join(","))).unwrap();
    let sim = run(
        dir,
        &[
            "--config",
            "config.json",
            "simulate",
            "--path",
            "linear.json",
        ],
    );
    assert_eq!(code(&sim), 0, "{}", String::from_utf8_lossy(&sim.stderr));
    let csv = fs::read_to_string(dir.join("rollout.csv")).unwrap();
    assert!(csv.lines().skip(1).any(|l| l.ends_with(",1")));
    let terminal: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.join("terminal_error.json")).unwrap())
            .unwrap();
    assert!(terminal["ori_abs"].as_f64().unwrap() > 0.4);
}

#[test]
fn missing_output_directory_exits_2() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    write_config(dir);
    let out = run(
        dir,
        &[
            "--config",
            "config.json",
            "--out",
            "does/not/exist",
            "plan",
            "--start",
            "0,0,0",
            "--goal",
            "0.03,0,0.03",
        ],
    );
    assert_eq!(code(&out), 2);
}

#[test]
fn empty_path_file_exits_2() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    write_config(dir);
    fs::write(dir.join("empty.json"), "[]").unwrap();
    let out = run(
        dir,
        &[
            "--config",
            "config.json",
            "simulate",
            "--path",
            "empty.json",
        ],
    );
    assert_eq!(code(&out), 2);
}

#[test]
fn single_class_dataset_exits_4() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    write_config(dir);
    let levels = [4.0, 6.0];
    let mut records = synth_dataset(&truth_params(), 50, &levels, 0.0, 3);
    for r in &mut records {
        r.label = Some(true);
    }
    let mut buf = Vec::new();
    write_records_csv(&records, &mut buf).unwrap();
    fs::write(dir.join("single.csv"), buf).unwrap();
    let out = run(
        dir,
        &[
            "--config",
            "config.json",
            "fit",
            "--dataset",
            "single.csv",
        ],
    );
    assert_eq!(code(&out), 4);
}

#[test]
fn dataset_header_typo_exits_2() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    write_config(dir);
    let good = fs::read_to_string(write_dataset(dir, "ok.csv", 0.0, 3)).unwrap();
    fs::write(dir.join("typo.csv"), good.replacen("tau", "torque", 1)).unwrap();
    let out = run(
        dir,
        &["--config", "config.json", "fit", "--dataset", "typo.csv"],
    );
    assert_eq!(code(&out), 2);
}

#[test]
fn fit_on_synthetic_data_reports_high_accuracy() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    write_config(dir);
    write_dataset(dir, "data.csv", 0.05, 19);
    let out = run(
        dir,
        &["--config", "config.json", "fit", "--dataset", "data.csv"],
    );
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.join("fit.json")).unwrap()).unwrap();
    assert!(v["classification_accuracy"].as_f64().unwrap() >= 0.95);
    assert!(dir.join("boundary.svg").exists());
}

#[test]
fn empty_problem_suite_exits_2() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    write_config(dir);
    fs::write(dir.join("none.json"), "[]").unwrap();
    let out = run(
        dir,
        &[
            "--config",
            "config.json",
            "sweep",
            "--problems",
            "none.json",
        ],
    );
    assert_eq!(code(&out), 2);
}

#[test]
fn kv_prints_a_parsable_csv() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    write_config(dir);
    let out = run(
        dir,
        &[
            "--config",
            "config.json",
            "kv",
            "--ne-min",
            "3",
            "--ne-max",
            "9",
            "--steps",
            "7",
        ],
    );
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "n_e,k_v");
    let mut count = 0;
    for line in lines {
        let (n_e, k_v) = line.split_once(',').unwrap();
        let n_e: f64 = n_e.parse().unwrap();
        let k_v: f64 = k_v.parse().unwrap();
        assert!((3.0..=9.0).contains(&n_e));
        assert!(k_v > 0.0);
        count += 1;
    }
    assert_eq!(count, 7);
}
