//! CSV writers. Floats use Rust's shortest round-trip formatting, so every
//! value parses back to the identical `f64`.

use std::io::Write;

use serde::Serialize;

use super::IoError;
use crate::analysis::{ContourGrid, DensityGrid, SolutionLog, TraceRow};
use crate::geometry::ArrangementSolution;
use crate::harmony::{normalized_sum, EvaluationRecord, Member};

pub const PARETO_HEADER: [&str; 8] = ["No", "a_mm", "b_mm", "c_mm", "theta1_rad", "f1_mm", "f2_mm", "f3_mm"];

/// One row of the Pareto table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ParetoRow {
    #[serde(rename = "No")]
    pub no: usize,
    pub a_mm: f64,
    pub b_mm: f64,
    pub c_mm: f64,
    pub theta1_rad: f64,
    pub f1_mm: f64,
    pub f2_mm: f64,
    pub f3_mm: f64,
}

/// Archive members as table rows, ordered by normalized objective sum so
/// that row 1 is the selected compromise. Ties keep archive order.
pub fn pareto_rows<D>(members: &[Member<D>], scales: &[f64]) -> Vec<ParetoRow> {
    let mut order: Vec<&Member<D>> = members.iter().collect();
    order.sort_by(|a, b| normalized_sum(&a.f, scales).total_cmp(&normalized_sum(&b.f, scales)));
    order
        .into_iter()
        .enumerate()
        .map(|(i, m)| ParetoRow {
            no: i + 1,
            a_mm: m.x[0],
            b_mm: m.x[1],
            c_mm: m.x[2],
            theta1_rad: m.x[3],
            f1_mm: m.f[0],
            f2_mm: m.f[1],
            f3_mm: m.f[2],
        })
        .collect()
}

fn writer<W: Write>(w: W) -> csv::Writer<W> {
    csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(w)
}

fn num(v: f64) -> String {
    v.to_string()
}

pub fn write_pareto<W: Write>(rows: &[ParetoRow], w: W) -> Result<(), IoError> {
    let mut out = writer(w);
    out.write_record(PARETO_HEADER)?;
    for r in rows {
        out.write_record([
            r.no.to_string(),
            num(r.a_mm),
            num(r.b_mm),
            num(r.c_mm),
            num(r.theta1_rad),
            num(r.f1_mm),
            num(r.f2_mm),
            num(r.f3_mm),
        ])?;
    }
    out.flush()?;
    Ok(())
}

pub fn write_trace<W: Write>(rows: &[TraceRow], w: W) -> Result<(), IoError> {
    let mut out = writer(w);
    let k = rows.first().map_or(3, |r| r.mean_f.len());
    let mut header = vec!["iteration".to_string()];
    header.extend((1..=k).map(|i| format!("best_f{i}_mm")));
    header.extend((1..=k).map(|i| format!("mean_f{i}_mm")));
    header.extend(["feasible_in_memory", "replacements", "archive_size"].map(String::from));
    out.write_record(&header)?;
    for r in rows {
        let mut rec = vec![r.iteration.to_string()];
        match &r.best_f {
            Some(best) => rec.extend(best.iter().copied().map(num)),
            None => rec.extend(std::iter::repeat_n(String::new(), k)),
        }
        rec.extend(r.mean_f.iter().copied().map(num));
        rec.extend([r.feasible_in_memory, r.replacements, r.archive_size].map(|v| v.to_string()));
        out.write_record(&rec)?;
    }
    out.flush()?;
    Ok(())
}

pub fn write_evaluations<W: Write>(records: &[EvaluationRecord<ArrangementSolution>], w: W) -> Result<(), IoError> {
    let mut out = writer(w);
    let mut header: Vec<String> = ["id", "iteration", "batch_index", "a_mm", "b_mm", "c_mm", "theta1_rad"]
        .map(String::from)
        .to_vec();
    header.extend((1..=3).map(|i| format!("f{i}_mm")));
    header.extend((1..=6).map(|i| format!("g{i}")));
    header.extend(["feasible", "replaced", "theta2_deg", "theta3_deg", "c_x_mm", "c_y_mm"].map(String::from));
    out.write_record(&header)?;
    for e in records {
        let mut rec = vec![e.id.to_string(), e.iteration.to_string(), e.batch_index.to_string()];
        rec.extend(e.x.iter().copied().map(num));
        rec.extend(e.f.iter().copied().map(num));
        rec.extend(e.g.iter().copied().map(num));
        rec.push(e.feasible.to_string());
        rec.push(e.replaced.to_string());
        let s = &e.detail;
        rec.extend([s.theta2.to_degrees(), s.theta3.to_degrees(), s.points.c.x, s.points.c.y].map(num));
        out.write_record(&rec)?;
    }
    out.flush()?;
    Ok(())
}

pub fn write_density<W: Write>(density: &DensityGrid, w: W) -> Result<(), IoError> {
    let mut out = writer(w);
    out.write_record(["x_mm", "y_mm", "density"])?;
    for (x, y, v) in density.grid.cells() {
        out.write_record([num(x), num(y), num(v)])?;
    }
    out.flush()?;
    Ok(())
}

pub fn write_contours<W: Write>(contours: &ContourGrid, w: W) -> Result<(), IoError> {
    let mut out = writer(w);
    out.write_record(["x_mm", "y_mm", &format!("f{}_mm", contours.objective_index + 1)])?;
    for (x, y, v) in contours.grid.cells() {
        out.write_record([num(x), num(y), num(v)])?;
    }
    out.flush()?;
    Ok(())
}

/// The recorded C positions with their objectives.
pub fn write_scatter<W: Write>(log: &SolutionLog, w: W) -> Result<(), IoError> {
    let mut out = writer(w);
    out.write_record(["iteration", "c_x_mm", "c_y_mm", "f1_mm", "f2_mm", "f3_mm", "feasible"])?;
    for r in &log.rows {
        out.write_record([
            (r.iteration + 1).to_string(),
            num(r.c.x),
            num(r.c.y),
            num(r.f[0]),
            num(r.f[1]),
            num(r.f[2]),
            r.feasible.to_string(),
        ])?;
    }
    out.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn member(id: u64, x: [f64; 4], f: [f64; 3]) -> Member<()> {
        Member { id, x: x.to_vec(), f: f.to_vec(), g: vec![-1.0], feasible: true, detail: () }
    }

    #[test]
    fn pareto_header_and_round_trip() {
        let members = vec![
            member(4, [200.0, 300.0, 250.0, 2.6], [700.1, 212.13203435596427, 480.0]),
            member(9, [187.879, 255.392, 181.091, 2.612], [0.1 + 0.2, 180.589, 474.469]),
        ];
        let rows = pareto_rows(&members, &[1.0, 1.0, 1.0]);
        assert_eq!(rows[0].b_mm, 255.392);
        let mut buf = Vec::new();
        write_pareto(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("No,a_mm,b_mm,c_mm,theta1_rad,f1_mm,f2_mm,f3_mm\n1,187.879,"));

        let mut rdr = csv::Reader::from_reader(text.as_bytes());
        let parsed: Vec<Vec<f64>> = rdr
            .records()
            .map(|r| r.unwrap().iter().map(|s| s.parse().unwrap()).collect())
            .collect();
        assert_eq!(parsed[0][5], 0.1 + 0.2);
        assert_eq!(parsed[1][6], 212.13203435596427);
        assert_eq!(parsed[1][0], 2.0);
    }

    #[test]
    fn trace_leaves_blank_before_feasible() {
        let rows = vec![
            TraceRow {
                iteration: 1,
                best_f: None,
                mean_f: vec![1.0, 2.0, 3.0],
                feasible_in_memory: 0,
                replacements: 4,
                archive_size: 0,
            },
            TraceRow {
                iteration: 2,
                best_f: Some(vec![0.5, 1.5, 2.5]),
                mean_f: vec![1.0, 2.0, 3.0],
                feasible_in_memory: 1,
                replacements: 2,
                archive_size: 1,
            },
        ];
        let mut buf = Vec::new();
        write_trace(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(
            lines[0],
            "iteration,best_f1_mm,best_f2_mm,best_f3_mm,mean_f1_mm,mean_f2_mm,mean_f3_mm,feasible_in_memory,replacements,archive_size"
        );
        assert_eq!(lines[1], "1,,,,1,2,3,0,4,0");
        assert_eq!(lines[2], "2,0.5,1.5,2.5,1,2,3,1,2,1");
    }
}
