//! Configuration loading and the file formats a run is written to.

use std::fs::File;
use std::io::BufWriter;
use std::path::{Path, PathBuf};

use crate::analysis::{convergence_trace, kde_point_c, objective_contours, SolutionLog};
use crate::geometry::{ArrangementSolution, SceneConfig};
use crate::harmony::{OptimizationRun, ProblemSpec};

mod config;
mod csv_out;
mod document;
mod svg;

pub use config::{RunConfig, ServiceConfig, CONFIG_FORMAT_VERSION};
pub use csv_out::{
    pareto_rows, write_contours, write_density, write_evaluations, write_pareto, write_scatter, write_trace,
    ParetoRow, PARETO_HEADER,
};
pub use document::{solution_from_json, SolutionDocument, SCHEMA_VERSION};
pub use svg::{render_svg, MIRROR_CLASS};

#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("invalid configuration: {0}")]
    Invalid(String),
}

fn create(dir: &Path, name: &str, written: &mut Vec<PathBuf>) -> Result<BufWriter<File>, IoError> {
    let path = dir.join(name);
    let file = File::create(&path)?;
    written.push(path);
    Ok(BufWriter::new(file))
}

/// Writes every artifact of a finished run into `dir` and returns the paths.
///
/// `selected.json` and `arrangement.svg` are skipped when the archive is
/// empty; the density and contour grids are skipped when the recorded C
/// points are too few or too concentrated to grid.
pub fn write_run_outputs(
    dir: &Path,
    scene: &SceneConfig,
    spec: &ProblemSpec,
    run: &OptimizationRun<ArrangementSolution>,
    grid_size: usize,
) -> Result<Vec<PathBuf>, IoError> {
    std::fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    let rows = pareto_rows(run.archive.members(), &spec.objective_scales);
    write_pareto(&rows, create(dir, "pareto.csv", &mut written)?)?;
    write_trace(&convergence_trace(run), create(dir, "trace.csv", &mut written)?)?;
    write_evaluations(&run.evaluations, create(dir, "evaluations.csv", &mut written)?)?;

    if let Some(selected) = &run.selected {
        let doc = SolutionDocument::new(scene.clone(), selected.detail.clone());
        let mut out = create(dir, "selected.json", &mut written)?;
        serde_json::to_writer_pretty(&mut out, &doc)?;
        std::io::Write::write_all(&mut out, b"\n")?;
        std::fs::write(dir.join("arrangement.svg"), render_svg(scene, &selected.detail))?;
        written.push(dir.join("arrangement.svg"));
    }

    let log = SolutionLog::from_run(run);
    write_scatter(&log, create(dir, "points_c.csv", &mut written)?)?;
    if let Ok(density) = kde_point_c(&log, grid_size) {
        write_density(&density, create(dir, "density_c.csv", &mut written)?)?;
    }
    for k in 0..3 {
        if let Ok(contours) = objective_contours(&log, k, grid_size) {
            write_contours(&contours, create(dir, &format!("contour_f{}.csv", k + 1), &mut written)?)?;
        }
    }
    Ok(written)
}
