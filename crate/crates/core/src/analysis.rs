//! Post-processing of a finished run: density of the mirror-C reference
//! point, interpolated objective maps over C positions, and convergence rows.

use serde::Serialize;

use crate::geometry::{ArrangementSolution, DesignVector, Point2};
use crate::harmony::OptimizationRun;

pub const DEFAULT_GRID_SIZE: usize = 200;
/// Fraction of the data span added on every side of the grid.
pub const GRID_PADDING: f64 = 0.05;
const SPREAD_EPS: f64 = 1e-9;
/// IDW returns the sample value when the query is this close to a sample (mm).
const SNAP_EPS: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum AnalysisError {
    #[error("need at least {needed} distinct points, got {got}")]
    TooFewPoints { needed: usize, got: usize },
    #[error("objective index {0} out of range")]
    ObjectiveIndex(usize),
    #[error("grid size must be at least 2")]
    GridSize,
}

/// One recorded evaluation, reduced to what the analysis needs.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LogRow {
    pub iteration: usize,
    pub x: DesignVector,
    pub c: Point2,
    pub f: [f64; 3],
    pub feasible: bool,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct SolutionLog {
    pub rows: Vec<LogRow>,
}

impl SolutionLog {
    pub fn from_run(run: &OptimizationRun<ArrangementSolution>) -> Self {
        let rows = run
            .evaluations
            .iter()
            .map(|e| LogRow {
                iteration: e.iteration,
                x: e.detail.x,
                c: e.detail.points.c,
                f: e.detail.f,
                feasible: e.feasible,
            })
            .collect();
        Self { rows }
    }

    pub fn c_points(&self) -> Vec<Point2> {
        self.rows.iter().map(|r| r.c).collect()
    }
}

/// Values on a regular grid. `values[j * xs.len() + i]` sits at `(xs[i], ys[j])`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Grid {
    pub xs: Vec<f64>,
    pub ys: Vec<f64>,
    pub values: Vec<f64>,
}

impl Grid {
    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.values[j * self.xs.len() + i]
    }

    pub fn cell_area(&self) -> f64 {
        (self.xs[1] - self.xs[0]) * (self.ys[1] - self.ys[0])
    }

    /// Grid indices of the largest value (first in row-major order on ties).
    pub fn argmax(&self) -> (usize, usize) {
        self.arg_by(|a, b| a > b)
    }

    pub fn argmin(&self) -> (usize, usize) {
        self.arg_by(|a, b| a < b)
    }

    fn arg_by(&self, better: impl Fn(f64, f64) -> bool) -> (usize, usize) {
        let mut best = 0;
        for (k, v) in self.values.iter().enumerate() {
            if better(*v, self.values[best]) {
                best = k;
            }
        }
        (best % self.xs.len(), best / self.xs.len())
    }

    /// Rows of `(x, y, value)` in grid order.
    pub fn cells(&self) -> impl Iterator<Item = (f64, f64, f64)> + '_ {
        self.ys
            .iter()
            .flat_map(move |&y| self.xs.iter().map(move |&x| (x, y)))
            .zip(&self.values)
            .map(|((x, y), v)| (x, y, *v))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DensityGrid {
    pub grid: Grid,
    /// Silverman bandwidth per axis (mm).
    pub bandwidth: (f64, f64),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ContourGrid {
    pub objective_index: usize,
    pub grid: Grid,
    /// The raw samples `(x_C, y_C, f)` the grid was interpolated from.
    pub scatter: Vec<(f64, f64, f64)>,
}

fn mean_std(v: impl Iterator<Item = f64> + Clone) -> (f64, f64) {
    let n = v.clone().count() as f64;
    let mean = v.clone().sum::<f64>() / n;
    let var = v.map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0).max(1.0);
    (mean, var.sqrt())
}

fn padded_axis(values: impl Iterator<Item = f64>, n: usize) -> Vec<f64> {
    let (lo, hi) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
    let pad = GRID_PADDING * (hi - lo);
    let (lo, hi) = (lo - pad, hi + pad);
    let step = (hi - lo) / (n - 1) as f64;
    (0..n).map(|i| lo + step * i as f64).collect()
}

fn padded_grid(points: &[Point2], n: usize) -> (Vec<f64>, Vec<f64>) {
    (padded_axis(points.iter().map(|p| p.x), n), padded_axis(points.iter().map(|p| p.y), n))
}

/// Gaussian product-kernel density of the given points on an `n × n` grid
/// covering their bounding box plus 5% padding.
pub fn kde(points: &[Point2], n: usize) -> Result<DensityGrid, AnalysisError> {
    if n < 2 {
        return Err(AnalysisError::GridSize);
    }
    if points.len() < 2 {
        return Err(AnalysisError::TooFewPoints { needed: 2, got: points.len() });
    }
    let (_, sx) = mean_std(points.iter().map(|p| p.x));
    let (_, sy) = mean_std(points.iter().map(|p| p.y));
    if sx <= SPREAD_EPS || sy <= SPREAD_EPS {
        return Err(AnalysisError::TooFewPoints { needed: 2, got: 1 });
    }
    let silverman = 1.06 * (points.len() as f64).powf(-0.2);
    let (hx, hy) = (silverman * sx, silverman * sy);
    let norm = 1.0 / (2.0 * std::f64::consts::PI * hx * hy * points.len() as f64);

    let (xs, ys) = padded_grid(points, n);
    let mut values = Vec::with_capacity(n * n);
    for &y in &ys {
        let wy: Vec<f64> = points.iter().map(|p| (-0.5 * ((y - p.y) / hy).powi(2)).exp()).collect();
        for &x in &xs {
            let s: f64 = points.iter().zip(&wy).map(|(p, w)| w * (-0.5 * ((x - p.x) / hx).powi(2)).exp()).sum();
            values.push(norm * s);
        }
    }
    Ok(DensityGrid { grid: Grid { xs, ys, values }, bandwidth: (hx, hy) })
}

/// Density of the recorded mirror-C reference points.
pub fn kde_point_c(log: &SolutionLog, grid_size: usize) -> Result<DensityGrid, AnalysisError> {
    kde(&log.c_points(), grid_size)
}

/// Inverse-distance-weighted (power 2) value at `q`.
pub fn idw(samples: &[(Point2, f64)], q: Point2) -> f64 {
    let mut num = 0.0;
    let mut den = 0.0;
    for (p, v) in samples {
        let d2 = (q - *p).dot(q - *p);
        if d2.sqrt() <= SNAP_EPS {
            return *v;
        }
        num += v / d2;
        den += 1.0 / d2;
    }
    num / den
}

/// Objective `objective_index` interpolated over the C positions.
pub fn objective_contours(
    log: &SolutionLog,
    objective_index: usize,
    grid_size: usize,
) -> Result<ContourGrid, AnalysisError> {
    if objective_index >= 3 {
        return Err(AnalysisError::ObjectiveIndex(objective_index));
    }
    if grid_size < 2 {
        return Err(AnalysisError::GridSize);
    }
    if log.rows.len() < 4 {
        return Err(AnalysisError::TooFewPoints { needed: 4, got: log.rows.len() });
    }
    let samples: Vec<(Point2, f64)> = log.rows.iter().map(|r| (r.c, r.f[objective_index])).collect();
    let (xs, ys) = padded_grid(&log.c_points(), grid_size);
    let values = ys
        .iter()
        .flat_map(|&y| xs.iter().map(move |&x| Point2::new(x, y)))
        .map(|q| idw(&samples, q))
        .collect();
    Ok(ContourGrid {
        objective_index,
        grid: Grid { xs, ys, values },
        scatter: samples.iter().map(|(p, v)| (p.x, p.y, *v)).collect(),
    })
}

/// One row of the convergence table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TraceRow {
    /// One-based iteration number.
    pub iteration: usize,
    /// Best feasible value per objective; `None` while nothing is feasible.
    pub best_f: Option<Vec<f64>>,
    pub mean_f: Vec<f64>,
    pub feasible_in_memory: usize,
    pub replacements: usize,
    pub archive_size: usize,
}

pub fn convergence_trace<D>(run: &OptimizationRun<D>) -> Vec<TraceRow> {
    run.traces
        .iter()
        .map(|t| TraceRow {
            iteration: t.iteration + 1,
            best_f: t.best_f.clone(),
            mean_f: t.mean_f.clone(),
            feasible_in_memory: t.feasible_in_memory,
            replacements: t.replacements,
            archive_size: t.archive_size,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cluster(center: Point2, n: usize, spread: f64) -> Vec<Point2> {
        // deterministic low-discrepancy jitter
        (0..n)
            .map(|i| {
                let u = (i as f64 * 0.618_033_988_75).fract() - 0.5;
                let v = (i as f64 * 0.754_877_666_25).fract() - 0.5;
                Point2::new(center.x + spread * u, center.y + spread * v)
            })
            .collect()
    }

    #[test]
    fn identical_points_rejected() {
        let pts = vec![Point2::new(1.0, 2.0); 5];
        assert!(matches!(kde(&pts, 20), Err(AnalysisError::TooFewPoints { .. })));
        let nearly = vec![Point2::new(1.0, 2.0), Point2::new(1.0 + 1e-12, 2.0)];
        assert!(kde(&nearly, 20).is_err());
    }

    #[test]
    fn two_clusters_two_maxima() {
        let (c1, c2) = (Point2::new(0.0, 0.0), Point2::new(100.0, 40.0));
        let mut pts = cluster(c1, 60, 10.0);
        pts.extend(cluster(c2, 60, 10.0));
        let d = kde(&pts, 80).unwrap();
        let g = &d.grid;
        let mut maxima = Vec::new();
        for j in 1..g.ys.len() - 1 {
            for i in 1..g.xs.len() - 1 {
                let v = g.at(i, j);
                let neighbours = [(i - 1, j), (i + 1, j), (i, j - 1), (i, j + 1)];
                if v > 1e-6 && neighbours.iter().all(|&(a, b)| g.at(a, b) < v) {
                    maxima.push(Point2::new(g.xs[i], g.ys[j]));
                }
            }
        }
        assert_eq!(maxima.len(), 2, "{maxima:?}");
        let cell = (g.xs[1] - g.xs[0]).max(g.ys[1] - g.ys[0]);
        for c in [c1, c2] {
            assert!(maxima.iter().any(|m| m.distance(c) < 6.0 + cell));
        }
    }

    #[test]
    fn density_integrates_to_one() {
        // Box-Muller over a low-discrepancy sequence: a normal-shaped cloud
        let pts: Vec<Point2> = (1..=400)
            .map(|i| {
                let u = (i as f64 * 0.618_033_988_75).fract().max(1e-3);
                let v = (i as f64 * 0.754_877_666_25).fract();
                let r = 15.0 * (-2.0 * u.ln()).sqrt();
                let t = std::f64::consts::TAU * v;
                Point2::new(20.0 + r * t.cos(), -80.0 + r * t.sin())
            })
            .collect();
        let d = kde(&pts, 120).unwrap();
        let mass: f64 = d.grid.values.iter().sum::<f64>() * d.grid.cell_area();
        assert!((mass - 1.0).abs() <= 0.05, "{mass}");
        assert!(d.grid.values.iter().all(|v| *v >= 0.0));
    }

    #[test]
    fn kde_translation_equivariant() {
        let pts = cluster(Point2::new(0.0, 0.0), 50, 20.0);
        let shift = Point2::new(37.5, -12.25);
        let moved: Vec<Point2> = pts.iter().map(|p| *p + shift).collect();
        let a = kde(&pts, 60).unwrap().grid;
        let b = kde(&moved, 60).unwrap().grid;
        let (ia, ja) = a.argmax();
        let (ib, jb) = b.argmax();
        let cell = a.xs[1] - a.xs[0];
        assert!((b.xs[ib] - a.xs[ia] - shift.x).abs() <= cell + 1e-9);
        assert!((b.ys[jb] - a.ys[ja] - shift.y).abs() <= cell + 1e-9);
    }

    #[test]
    fn silverman_bandwidth() {
        let pts = vec![Point2::new(0.0, 0.0), Point2::new(2.0, 4.0)];
        let d = kde(&pts, 4).unwrap();
        // sample std of {0, 2} is √2
        let expected = 1.06 * 2f64.sqrt() * 2f64.powf(-0.2);
        assert!((d.bandwidth.0 - expected).abs() < 1e-12);
        assert!((d.bandwidth.1 - 2.0 * expected).abs() < 1e-12);
    }

    fn log_from(samples: &[(Point2, f64)]) -> SolutionLog {
        let x = DesignVector::from_degrees(200.0, 200.0, 200.0, 150.0);
        SolutionLog {
            rows: samples
                .iter()
                .map(|(c, v)| LogRow { iteration: 0, x, c: *c, f: [*v, 2.0 * v, -v], feasible: true })
                .collect(),
        }
    }

    #[test]
    fn idw_constant_and_exact_nodes() {
        let pts = cluster(Point2::new(5.0, 5.0), 30, 10.0);
        let constant: Vec<(Point2, f64)> = pts.iter().map(|p| (*p, 7.25)).collect();
        let g = objective_contours(&log_from(&constant), 0, 25).unwrap();
        assert!(g.grid.values.iter().all(|v| (v - 7.25).abs() < 1e-12));

        let varied: Vec<(Point2, f64)> = pts.iter().enumerate().map(|(i, p)| (*p, i as f64)).collect();
        for (p, v) in &varied {
            assert_eq!(idw(&varied, *p), *v);
        }
    }

    #[test]
    fn idw_within_sample_range_and_argmin() {
        let pts = cluster(Point2::new(0.0, 0.0), 40, 50.0);
        let samples: Vec<(Point2, f64)> = pts.iter().map(|p| (*p, (p.x - 10.0).powi(2) + p.y.powi(2))).collect();
        let log = log_from(&samples);
        let g = objective_contours(&log, 0, 41).unwrap();
        let lo = samples.iter().map(|s| s.1).fold(f64::INFINITY, f64::min);
        let hi = samples.iter().map(|s| s.1).fold(f64::NEG_INFINITY, f64::max);
        assert!(g.grid.values.iter().all(|v| *v >= lo - 1e-9 && *v <= hi + 1e-9));

        let best = samples.iter().min_by(|a, b| a.1.total_cmp(&b.1)).unwrap().0;
        let (i, j) = g.grid.argmin();
        let cell = (g.grid.xs[1] - g.grid.xs[0]).max(g.grid.ys[1] - g.grid.ys[0]);
        assert!((g.grid.xs[i] - best.x).abs() <= cell && (g.grid.ys[j] - best.y).abs() <= cell);

        let f3 = objective_contours(&log, 2, 5).unwrap();
        assert_eq!(f3.scatter[0].2, -samples[0].1);
        assert_eq!(objective_contours(&log, 3, 5), Err(AnalysisError::ObjectiveIndex(3)));
        let short = log_from(&samples[..3]);
        assert!(matches!(objective_contours(&short, 0, 5), Err(AnalysisError::TooFewPoints { .. })));
    }
}
