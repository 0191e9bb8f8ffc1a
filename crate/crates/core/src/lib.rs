//! Optimal arrangement of a single-camera, multi-mirror imaging device.
//!
//! [`harmony`] is a generic constrained multi-objective harmony search,
//! [`geometry`] evaluates a design into the full mirror layout, and
//! [`problem::MirrorProblem`] joins the two. [`analysis`] and [`io`] turn a
//! finished run into density grids, traces, CSV, JSON and SVG.

pub mod analysis;
pub mod geometry;
pub mod harmony;
pub mod io;
pub mod problem;

pub use geometry::{evaluate_design, ArrangementSolution, DesignBounds, DesignVector, SceneConfig};
pub use harmony::{run_optimization, HsParams, OptimizationRun};
pub use problem::MirrorProblem;
