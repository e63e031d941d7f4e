//! Config file schema and flag resolution.

use std::path::{Path, PathBuf};

use serde::Deserialize;

use slipfree_core::{kv, FrictionParams, KMatrixConvention};

use crate::output::CliError;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    friction: FrictionParams,
    n_e: f64,
    #[serde(default = "default_safety")]
    safety: f64,
    planner: PlannerSection,
    #[serde(default)]
    seed: u64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PlannerSection {
    n: usize,
    c1: f64,
    c2: f64,
    /// Optional override of the physics-derived k_v, for planning with a
    /// calibrated constant.
    #[serde(default)]
    k_v: Option<f64>,
}

fn default_safety() -> f64 {
    0.8
}

/// Resolved configuration after applying flag overrides.
pub struct App {
    pub friction: FrictionParams,
    pub n_e: f64,
    pub safety: f64,
    pub planner_n: usize,
    pub c1: f64,
    pub c2: f64,
    pub kv_override: Option<f64>,
    pub seed: u64,
    pub out: PathBuf,
    pub convention: KMatrixConvention,
}

impl App {
    pub fn load(
        config_path: Option<&Path>,
        seed_flag: Option<u64>,
        safety_flag: Option<f64>,
        out: PathBuf,
        convention: KMatrixConvention,
    ) -> Result<Self, CliError> {
        let Some(config_path) = config_path else {
            return Err(CliError::input("--config <file> is required"));
        };
        let text = std::fs::read_to_string(config_path).map_err(|e| {
            CliError::input(format!("cannot read {}: {e}", config_path.display()))
        })?;
        let file: ConfigFile = serde_json::from_str(&text).map_err(|e| {
            CliError::input(format!("malformed config {}: {e}", config_path.display()))
        })?;

        let app = App {
            friction: file.friction,
            n_e: file.n_e,
            safety: safety_flag.unwrap_or(file.safety),
            planner_n: file.planner.n,
            c1: file.planner.c1,
            c2: file.planner.c2,
            kv_override: file.planner.k_v,
            seed: seed_flag.unwrap_or(file.seed),
            out,
            convention,
        };
        app.validate()?;
        Ok(app)
    }

    fn validate(&self) -> Result<(), CliError> {
        self.friction
            .validate()
            .map_err(|e| CliError::input(format!("invalid friction parameters: {e}")))?;
        if !self.n_e.is_finite() || self.n_e < 0.0 {
            return Err(CliError::input(format!(
                "n_e must be a non-negative number, got {}",
                self.n_e
            )));
        }
        if !(self.safety > 0.0 && self.safety <= 1.0) {
            return Err(CliError::input(format!(
                "safety must be in (0, 1], got {}",
                self.safety
            )));
        }
        if self.planner_n < 2 {
            return Err(CliError::input(format!(
                "planner.n must be at least 2, got {}",
                self.planner_n
            )));
        }
        if !(self.c1 >= 0.0 && self.c2 >= 0.0) || (self.c1 == 0.0 && self.c2 == 0.0) {
            return Err(CliError::input(format!(
                "planner weights must be non-negative and not both zero, got c1={} c2={}",
                self.c1, self.c2
            )));
        }
        if let Some(k) = self.kv_override {
            if !k.is_finite() || k <= 0.0 {
                return Err(CliError::input(format!(
                    "planner.k_v must be positive, got {k}"
                )));
            }
        }
        Ok(())
    }

    /// The k_v used for planning and simulation at a given normal force:
    /// the config override when present, otherwise derived from the physics.
    pub fn kv_at(&self, n_e: f64) -> Result<f64, CliError> {
        if let Some(k) = self.kv_override {
            return Ok(k);
        }
        kv(&self.friction, n_e)
            .map_err(|e| CliError::infeasible(format!("k_v undefined at n_e = {n_e} N: {e}")))
    }
}
