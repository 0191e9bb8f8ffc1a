//! WebAssembly bindings for the static demo page in `www/`.
//!
//! Each export takes plain numbers and returns a JSON string; failures come
//! back as `{"error": "..."}` rather than exceptions.

use serde::Serialize;
use serde_json::json;
use wasm_bindgen::prelude::*;

use mirrorplan::analysis::{kde_point_c, SolutionLog};
use mirrorplan::io::{pareto_rows, render_svg, ParetoRow, SolutionDocument};
use mirrorplan::{evaluate_design, run_optimization, DesignVector, HsParams, MirrorProblem};

/// Upper limit on iterations so a click cannot freeze the page for long.
pub const MAX_ITERATIONS: usize = 100;

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).unwrap_or_else(|e| json!({ "error": e.to_string() }).to_string())
}

fn failure(message: impl std::fmt::Display) -> String {
    json!({ "error": message.to_string() }).to_string()
}

#[derive(Serialize)]
struct Evaluated {
    document: SolutionDocument,
    svg: String,
}

/// Evaluates one design in the default scene: the solution plus its drawing.
#[wasm_bindgen]
pub fn evaluate(a: f64, b: f64, c: f64, theta1_deg: f64) -> String {
    let problem = MirrorProblem::default();
    let x = DesignVector::from_degrees(a, b, c, theta1_deg);
    if !problem.bounds.contains(&x) {
        return failure("design is outside the default bounds");
    }
    match evaluate_design(&problem.scene, &x) {
        Ok(sol) => to_json(&Evaluated {
            svg: render_svg(&problem.scene, &sol),
            document: SolutionDocument::new(problem.scene.clone(), sol),
        }),
        Err(e) => failure(format!("no valid arrangement: {e}")),
    }
}

#[derive(Serialize)]
struct Optimized {
    rows: Vec<ParetoRow>,
    /// Drawing for each row, same order.
    svgs: Vec<String>,
    /// Best feasible f1, f2, f3 per iteration.
    best: Vec<Option<Vec<f64>>>,
}

fn params(seed: u64, iterations: usize) -> HsParams {
    HsParams { seed, iterations: iterations.clamp(1, MAX_ITERATIONS), ..HsParams::default() }
}

/// Runs the optimizer with the default scene and returns the Pareto table.
#[wasm_bindgen]
pub fn optimize(seed: u64, iterations: usize) -> String {
    let problem = MirrorProblem::default();
    let spec = match problem.spec() {
        Ok(s) => s,
        Err(e) => return failure(e),
    };
    let run = match run_optimization(&spec, &problem, &params(seed, iterations)) {
        Ok(r) => r,
        Err(e) => return failure(e),
    };
    let rows = pareto_rows(run.archive.members(), &spec.objective_scales);
    let svgs = rows
        .iter()
        .filter_map(|row| {
            let genome = [row.a_mm, row.b_mm, row.c_mm, row.theta1_rad];
            run.archive.members().iter().find(|m| m.x == genome)
        })
        .map(|m| render_svg(&problem.scene, &m.detail))
        .collect();
    let best = run.traces.iter().map(|t| t.best_f.clone()).collect();
    to_json(&Optimized { rows, svgs, best })
}

/// Kernel density of the mirror-C reference point over every evaluation of
/// the same run `optimize(seed, iterations)` performs.
#[wasm_bindgen]
pub fn point_c_density(seed: u64, iterations: usize, grid_size: usize) -> String {
    let problem = MirrorProblem::default();
    let run = match problem.spec().and_then(|spec| run_optimization(&spec, &problem, &params(seed, iterations))) {
        Ok(r) => r,
        Err(e) => return failure(e),
    };
    match kde_point_c(&SolutionLog::from_run(&run), grid_size.clamp(2, 200)) {
        Ok(d) => to_json(&d),
        Err(e) => failure(e),
    }
}
