//! Wall-time scaling of the sampler on random graphs.

use std::io::Write;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{generate_gnp, CycleThreshold, GnpParams};
use crate::pipeline::{derive_seed, run, RunConfig};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchConfig {
    pub n_list: Vec<usize>,
    pub d: f64,
    pub k: usize,
    /// Runs per `n`; the median time is reported.
    pub seeds: usize,
    pub master_seed: u64,
    /// `None` uses the formula threshold for each `n`.
    pub cap: Option<CycleThreshold>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchRow {
    pub n: usize,
    pub median_ms: f64,
    /// Edge counts summed over the seeds.
    pub edges: usize,
    /// Update steps summed over the seeds.
    pub steps: usize,
    pub aborted: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
    /// Least-squares slope of log(median_ms) against log(n); absent with
    /// fewer than two distinct sizes.
    pub exponent: Option<f64>,
}

impl BenchReport {
    /// CSV with columns `n,median_ms,edges,steps,aborted,exponent`; the
    /// exponent is repeated on every row, empty when absent.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "n,median_ms,edges,steps,aborted,exponent")?;
        let exponent = self.exponent.map(|b| format!("{b:.4}")).unwrap_or_default();
        for r in &self.rows {
            writeln!(
                out,
                "{},{:.4},{},{},{},{exponent}",
                r.n, r.median_ms, r.edges, r.steps, r.aborted
            )?;
        }
        Ok(())
    }
}

/// Runs the sampler `seeds` times per size on fresh `G(n, d/n)` graphs.
/// Seed `j` of size `n` is derived from the master seed and `j`, so graph
/// and step counts are reproducible. Timing covers the sampler only.
pub fn bench(cfg: &BenchConfig) -> Result<BenchReport> {
    if cfg.n_list.is_empty() || cfg.seeds == 0 {
        return Err(Error::InvalidParameter(
            "need at least one size and one seed".into(),
        ));
    }
    let mut rows = Vec::with_capacity(cfg.n_list.len());
    for &n in &cfg.n_list {
        let cap = match cfg.cap {
            Some(c) => c,
            None => CycleThreshold::from_formula(n, cfg.d),
        };
        let mut times = Vec::with_capacity(cfg.seeds);
        let mut row = BenchRow {
            n,
            median_ms: 0.0,
            edges: 0,
            steps: 0,
            aborted: 0,
        };
        for j in 0..cfg.seeds as u64 {
            let seed = derive_seed(cfg.master_seed, j);
            let g = generate_gnp(&GnpParams::new(n, cfg.d, seed)?)?;
            let report = run(&g, &RunConfig::new(cfg.k, cfg.d, cap, seed)?)?;
            times.push(report.wall_ms);
            row.edges += g.edge_count();
            row.steps += report.r;
            row.aborted += usize::from(report.aborted);
        }
        row.median_ms = median(&mut times);
        rows.push(row);
    }
    let points: Vec<(f64, f64)> = rows
        .iter()
        .map(|r| ((r.n as f64).ln(), r.median_ms.max(1e-9).ln()))
        .collect();
    Ok(BenchReport {
        exponent: loglog_slope(&points),
        rows,
    })
}

fn median(xs: &mut [f64]) -> f64 {
    xs.sort_by(f64::total_cmp);
    let m = xs.len() / 2;
    if xs.len() % 2 == 1 {
        xs[m]
    } else {
        (xs[m - 1] + xs[m]) / 2.0
    }
}

/// Ordinary least-squares slope through `(x, y)` points.
pub fn loglog_slope(points: &[(f64, f64)]) -> Option<f64> {
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if points.len() < 2 || sxx == 0.0 {
        return None;
    }
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    Some(sxy / sxx)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slope_of_power_law() {
        let pts: Vec<_> = [1.0f64, 2.0, 4.0, 8.0]
            .iter()
            .map(|&x| (x.ln(), (3.0 * x * x).ln()))
            .collect();
        assert!((loglog_slope(&pts).unwrap() - 2.0).abs() < 1e-12);
        assert_eq!(loglog_slope(&pts[..1]), None);
        assert_eq!(loglog_slope(&[(1.0, 1.0), (1.0, 2.0)]), None);
    }

    #[test]
    fn median_even_odd() {
        assert_eq!(median(&mut [3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(&mut [4.0, 1.0, 2.0, 3.0]), 2.5);
    }

    #[test]
    fn single_size_has_no_exponent() {
        let cfg = BenchConfig {
            n_list: vec![64],
            d: 3.0,
            k: 8,
            seeds: 3,
            master_seed: 1,
            cap: Some(CycleThreshold::NONE),
        };
        let a = bench(&cfg).unwrap();
        assert_eq!(a.exponent, None);
        let mut buf = Vec::new();
        a.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.lines().nth(1).unwrap().ends_with(','), "{text}");
        let b = bench(&cfg).unwrap();
        assert_eq!((a.rows[0].edges, a.rows[0].steps), (b.rows[0].edges, b.rows[0].steps));
    }
}
