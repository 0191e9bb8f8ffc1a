//! The `optimize`, `evaluate` and `render` subcommands.

use std::fmt;
use std::path::{Path, PathBuf};

use mirrorplan::harmony::HarmonyError;
use mirrorplan::io::{render_svg, solution_from_json, write_run_outputs, RunConfig, SolutionDocument};
use mirrorplan::{evaluate_design, run_optimization, DesignVector};

/// Environment variable that overrides the configured output directory.
pub const OUT_ENV: &str = "MIRRORPLAN_OUT";

/// A failure with the process exit code it maps to.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub const INVALID_INPUT: i32 = 2;
    pub const SEARCH_EXHAUSTED: i32 = 3;
    pub const GEOMETRIC_FAILURE: i32 = 4;
    pub const PORT_BUSY: i32 = 5;

    pub fn new(code: i32, message: impl Into<String>) -> Self {
        Self { code, message: message.into() }
    }

    pub fn invalid(message: impl fmt::Display) -> Self {
        Self::new(Self::INVALID_INPUT, message.to_string())
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

pub fn load_config(path: &Path) -> Result<RunConfig, CliError> {
    RunConfig::load(path).map_err(|e| CliError::invalid(format!("{}: {e}", path.display())))
}

/// Output directory: `MIRRORPLAN_OUT` if set, else the configured one.
pub fn output_dir(cfg: &RunConfig) -> PathBuf {
    std::env::var_os(OUT_ENV).map(PathBuf::from).unwrap_or_else(|| cfg.outputs.clone())
}

pub fn harmony_exit(e: &HarmonyError) -> CliError {
    match e {
        HarmonyError::InitializationExhausted { .. } | HarmonyError::ResampleExhausted { .. } => {
            CliError::new(CliError::SEARCH_EXHAUSTED, e.to_string())
        }
        other => CliError::invalid(other),
    }
}

/// Runs the optimizer and writes all artifacts. Returns the files written.
pub fn optimize(cfg: &RunConfig, grid_size: usize) -> Result<Vec<PathBuf>, CliError> {
    let problem = cfg.problem().map_err(CliError::invalid)?;
    let spec = problem.spec().map_err(|e| harmony_exit(&e))?;
    let run = run_optimization(&spec, &problem, &cfg.hs).map_err(|e| harmony_exit(&e))?;
    let dir = output_dir(cfg);
    write_run_outputs(&dir, &cfg.scene, &spec, &run, grid_size)
        .map_err(|e| CliError::new(1, format!("writing {}: {e}", dir.display())))
}

/// Evaluates one design given in interface units (mm, degrees).
pub fn evaluate(cfg: &RunConfig, a: f64, b: f64, c: f64, theta1_deg: f64) -> Result<SolutionDocument, CliError> {
    let x = DesignVector::from_degrees(a, b, c, theta1_deg);
    if !cfg.bounds.contains(&x) {
        return Err(CliError::invalid(format!(
            "design (a={a}, b={b}, c={c}, theta1={theta1_deg} deg) is outside the configured bounds"
        )));
    }
    evaluate_design(&cfg.scene, &x)
        .map(|sol| SolutionDocument::new(cfg.scene.clone(), sol))
        .map_err(|e| CliError::new(CliError::GEOMETRIC_FAILURE, format!("geometric failure: {e}")))
}

pub fn render(solution: &Path, out: &Path) -> Result<(), CliError> {
    let text = std::fs::read_to_string(solution).map_err(|e| CliError::invalid(format!("{}: {e}", solution.display())))?;
    let doc = solution_from_json(&text).map_err(|e| CliError::invalid(format!("{}: {e}", solution.display())))?;
    std::fs::write(out, render_svg(&doc.scene, &doc.solution))
        .map_err(|e| CliError::new(1, format!("{}: {e}", out.display())))
}
