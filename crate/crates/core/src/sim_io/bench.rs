//! Strong-scaling benchmark over worker counts.

use std::fmt;
use std::path::Path;

use crate::error::{Error, Result};

use super::config::ScenarioConfig;
use super::simulation::Simulation;

pub const CSV_HEADER: &str = "workers,p,mesh,steps,seconds,speedup,efficiency";

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub workers: usize,
    pub p: usize,
    pub mesh: usize,
    pub steps: usize,
    /// Wall time of the time loop, setup excluded.
    pub seconds: f64,
    pub speedup: f64,
    pub efficiency: f64,
}

impl fmt::Display for BenchRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{},{},{},{},{:.6},{:.4},{:.4}",
            self.workers, self.p, self.mesh, self.steps, self.seconds, self.speedup, self.efficiency
        )
    }
}

/// Times the configured run once per worker count. Speedup is relative to
/// the single-worker row when present, otherwise to the first row.
pub fn run_bench(config: &ScenarioConfig, workers: &[usize]) -> Result<Vec<BenchRow>> {
    if workers.is_empty() || workers.contains(&0) {
        return Err(Error::config("worker counts must be non-empty and positive"));
    }
    let mut rows = Vec::with_capacity(workers.len());
    for &w in workers {
        let cfg = ScenarioConfig {
            threads: w,
            ..config.clone()
        };
        let mut sim = Simulation::new(cfg)?;
        let report = sim.run(false)?;
        if let Some(k) = report.diverged_at {
            log::warn!("benchmark run with {w} workers diverged at step {k}");
        }
        rows.push(BenchRow {
            workers: w,
            p: config.degree,
            mesh: config.nx,
            steps: report.steps,
            seconds: report.total_seconds(),
            speedup: 1.0,
            efficiency: 1.0,
        });
    }
    let base = rows.iter().find(|r| r.workers == 1).unwrap_or(&rows[0]).seconds;
    for r in &mut rows {
        r.speedup = base / r.seconds;
        r.efficiency = r.speedup / r.workers as f64;
    }
    Ok(rows)
}

pub fn format_csv(rows: &[BenchRow]) -> String {
    let mut s = String::from(CSV_HEADER);
    s.push('\n');
    for r in rows {
        s.push_str(&r.to_string());
        s.push('\n');
    }
    s
}

pub fn write_csv(path: &Path, rows: &[BenchRow]) -> Result<()> {
    std::fs::write(path, format_csv(rows)).map_err(|e| Error::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_shape_and_baseline() {
        let cfg = ScenarioConfig {
            nx: 8,
            ny: 8,
            steps: 3,
            ..Default::default()
        };
        let rows = run_bench(&cfg, &[1, 2]).unwrap();
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[0].speedup, 1.0);
        assert_eq!(rows[0].efficiency, 1.0);
        assert!((rows[1].efficiency - rows[1].speedup / 2.0).abs() < 1e-15);
        let csv = format_csv(&rows);
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some(CSV_HEADER));
        for line in lines {
            assert_eq!(line.split(',').count(), 7);
            assert!(line.starts_with(['1', '2']));
        }
        assert!(run_bench(&cfg, &[]).is_err());
        assert!(run_bench(&cfg, &[0]).is_err());
    }
}
