//! Post-processing (`hist`, `report`) and the `entpower` scan.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::path::{Path, PathBuf};

use paramvqe::gates::{entangling_power, EntanglerFamily};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::CliError;
use crate::experiment::{create_dir, in_pool, ResultRow, Summary};

pub const HISTOGRAM_FILE: &str = "histogram.csv";
pub const MEANS_FILE: &str = "histogram_means.csv";
pub const ENTPOWER_FILE: &str = "entpower.csv";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HistogramRow {
    pub gate_kind: EntanglerFamily,
    pub parameterized: bool,
    pub bin_left: f64,
    pub bin_right: f64,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeanRow {
    pub gate_kind: EntanglerFamily,
    pub parameterized: bool,
    pub n: usize,
    pub mean: f64,
    pub min: f64,
    pub max: f64,
}

/// Restricts which result rows enter a histogram.
#[derive(Debug, Clone, Copy, Default)]
pub struct HistFilter {
    pub n_layers: Option<usize>,
    pub grid_value: Option<f64>,
}

/// `bins` equal-width bins spanning `[min, max]`; the last edge is exactly
/// `max` and the top value falls in the last bin. A zero-width range gives a
/// single bin.
pub fn histogram(values: &[f64], bins: usize) -> Vec<(f64, f64, usize)> {
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if values.is_empty() || bins == 0 {
        return Vec::new();
    }
    if min == max {
        return vec![(min, max, values.len())];
    }
    let width = (max - min) / bins as f64;
    let mut counts = vec![0; bins];
    for v in values {
        let i = (((v - min) / width) as usize).min(bins - 1);
        counts[i] += 1;
    }
    counts
        .into_iter()
        .enumerate()
        .map(|(i, c)| {
            let left = min + i as f64 * width;
            let right = if i + 1 == bins { max } else { min + (i + 1) as f64 * width };
            (left, right, c)
        })
        .collect()
}

pub fn read_results(path: &Path) -> Result<Vec<ResultRow>, CliError> {
    let mut reader = csv::Reader::from_path(path).map_err(|e| CliError::input(path, e))?;
    reader.deserialize().map(|r| r.map_err(|e| CliError::input(path, e))).collect()
}

/// Ground-state energy histograms per (gate kind, variant), written to
/// `histogram.csv`, plus the per-group mean in `histogram_means.csv`.
pub fn hist(
    results: &Path,
    bins: usize,
    filter: HistFilter,
    out_dir: &Path,
) -> Result<(Vec<HistogramRow>, Vec<MeanRow>), CliError> {
    if bins == 0 {
        return Err(CliError::Config("bins must be at least 1".into()));
    }
    let rows = read_results(results)?;
    let mut groups: BTreeMap<(EntanglerFamily, bool), Vec<f64>> = BTreeMap::new();
    for r in rows.iter().filter(|r| r.state_index == 0) {
        if filter.n_layers.is_some_and(|l| l != r.n_layers) || filter.grid_value.is_some_and(|g| g != r.grid_value) {
            continue;
        }
        groups.entry((r.gate_kind, r.parameterized)).or_default().push(r.energy);
    }
    let mut hist_rows = Vec::new();
    let mut means = Vec::new();
    for ((gate_kind, parameterized), energies) in &groups {
        for (bin_left, bin_right, count) in histogram(energies, bins) {
            hist_rows.push(HistogramRow {
                gate_kind: *gate_kind,
                parameterized: *parameterized,
                bin_left,
                bin_right,
                count,
            });
        }
        means.push(MeanRow {
            gate_kind: *gate_kind,
            parameterized: *parameterized,
            n: energies.len(),
            mean: energies.iter().sum::<f64>() / energies.len() as f64,
            min: energies.iter().copied().fold(f64::INFINITY, f64::min),
            max: energies.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        });
    }
    create_dir(out_dir)?;
    write_csv(&out_dir.join(HISTOGRAM_FILE), &hist_rows)?;
    write_csv(&out_dir.join(MEANS_FILE), &means)?;
    Ok((hist_rows, means))
}

fn write_csv<T: Serialize>(path: &Path, rows: &[T]) -> Result<(), CliError> {
    let mut w = csv::Writer::from_path(path).map_err(|e| CliError::input(path, e))?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush().map_err(|e| CliError::io(path, e))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveRow {
    pub grid_value: f64,
    pub state_index: usize,
    pub energy: f64,
    pub exact_energy: f64,
    pub delta_e: f64,
}

/// One curve file per successful cell, `<out>/curves/<label>.csv`, holding
/// the best energies and their deviation from the exact reference.
pub fn report(summary_path: &Path, out_dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    let summary = Summary::load(summary_path)?;
    let dir = out_dir.join("curves");
    create_dir(&dir)?;
    let mut written = Vec::new();
    for cell in summary.cells.iter().filter(|c| c.ok) {
        let mut rows = Vec::new();
        for p in &cell.points {
            for (j, ((&energy, &exact_energy), &delta_e)) in
                p.best_energies.iter().zip(&p.exact_energies).zip(&p.delta_e).enumerate()
            {
                rows.push(CurveRow { grid_value: p.grid_value, state_index: j, energy, exact_energy, delta_e });
            }
        }
        let path = dir.join(format!("{}.csv", cell.label()));
        write_csv(&path, &rows)?;
        written.push(path);
    }
    Ok(written)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntpowerRow {
    pub gate_kind: EntanglerFamily,
    pub theta: f64,
    pub estimate: f64,
    pub std_error: f64,
}

/// Entangling power of each family on `points` evenly spaced angles over
/// `[0, π]`. Every angle reuses the same random product states, which keeps
/// neighbouring estimates strongly correlated.
pub fn entpower(
    families: &[EntanglerFamily],
    points: usize,
    samples: usize,
    seed: u64,
    workers: Option<usize>,
    out_dir: &Path,
) -> Result<Vec<EntpowerRow>, CliError> {
    if points < 2 {
        return Err(CliError::Config("entpower needs at least 2 grid points".into()));
    }
    let jobs: Vec<(EntanglerFamily, f64)> =
        families.iter().flat_map(|&f| (0..points).map(move |i| (f, PI * i as f64 / (points - 1) as f64))).collect();
    let rows: Result<Vec<EntpowerRow>, CliError> = in_pool(workers, || {
        jobs.par_iter()
            .map(|&(family, theta)| {
                let gate = family.gate(theta).map_err(|e| CliError::Config(e.to_string()))?;
                let est = entangling_power(&gate, samples, seed).map_err(|e| CliError::Config(e.to_string()))?;
                Ok(EntpowerRow { gate_kind: family, theta, estimate: est.mean, std_error: est.std_error })
            })
            .collect()
    })?;
    let rows = rows?;
    create_dir(out_dir)?;
    write_csv(&out_dir.join(ENTPOWER_FILE), &rows)?;
    Ok(rows)
}
