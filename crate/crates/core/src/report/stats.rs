use num_traits::Float;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::aggregate::{aggregate, AverageMode};
use super::results_csv::ResultRow;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StatsError {
    #[error("length mismatch: {xs} x values, {ys} y values")]
    LengthMismatch { xs: usize, ys: usize },
    #[error("need at least 2 data points, got {0}")]
    InsufficientData(usize),
}

/// Sample Pearson coefficient over the pairs where both values are defined.
/// `None` when fewer than two pairs remain or either side has zero variance.
pub fn pearson<T: Float>(xs: &[Option<T>], ys: &[Option<T>]) -> Result<Option<T>, StatsError> {
    if xs.len() != ys.len() {
        return Err(StatsError::LengthMismatch {
            xs: xs.len(),
            ys: ys.len(),
        });
    }
    let pairs: Vec<(T, T)> = xs
        .iter()
        .zip(ys)
        .filter_map(|(x, y)| Some(((*x)?, (*y)?)))
        .collect();
    if pairs.len() < 2 {
        return Ok(None);
    }
    let n = T::from(pairs.len()).expect("count fits");
    let (sx, sy) = pairs
        .iter()
        .fold((T::zero(), T::zero()), |(a, b), &(x, y)| (a + x, b + y));
    let (mx, my) = (sx / n, sy / n);
    let (mut cov, mut vx, mut vy) = (T::zero(), T::zero(), T::zero());
    for &(x, y) in &pairs {
        let (dx, dy) = (x - mx, y - my);
        cov = cov + dx * dy;
        vx = vx + dx * dx;
        vy = vy + dy * dy;
    }
    if vx == T::zero() || vy == T::zero() {
        return Ok(None);
    }
    let r = cov / (vx * vy).sqrt();
    // Rounding can push |r| a hair past 1.
    Ok(Some(r.max(-T::one()).min(T::one())))
}

pub const FIDELITY_METRICS: [&str; 7] = ["tp", "fp", "tn", "fn", "accuracy", "precision", "recall"];
pub const UTILITY_METRICS: [&str; 2] = ["effort", "reduction"];

/// What one data point of a correlation is.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CorrelationUnit {
    #[default]
    PerEntry,
    /// One point per technique: its mean metrics.
    PerTechnique,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrelationMatrix {
    pub unit: CorrelationUnit,
    pub points: usize,
    /// `cells[i][j]`: fidelity metric `i` against utility metric `j`.
    pub cells: [[Option<f64>; 2]; 7],
}

impl CorrelationMatrix {
    pub fn get(&self, fidelity: &str, utility: &str) -> Option<f64> {
        let i = FIDELITY_METRICS.iter().position(|m| *m == fidelity)?;
        let j = UTILITY_METRICS.iter().position(|m| *m == utility)?;
        self.cells[i][j]
    }
}

type Columns = Vec<Vec<Option<f64>>>;

fn fidelity_column(rows: &[ResultRow], i: usize) -> Vec<Option<f64>> {
    rows.iter()
        .map(|r| match i {
            0 => Some(r.tp as f64),
            1 => Some(r.fp as f64),
            2 => Some(r.tn as f64),
            3 => Some(r.fn_ as f64),
            4 => r.accuracy,
            5 => r.precision,
            _ => r.recall,
        })
        .collect()
}

fn utility_column(rows: &[ResultRow], j: usize) -> Vec<Option<f64>> {
    rows.iter()
        .map(|r| Some(if j == 0 { r.effort as f64 } else { r.reduction }))
        .collect()
}

/// Pearson coefficients of every fidelity metric against every utility
/// metric. Undefined values are dropped pairwise, cell by cell.
pub fn correlation_matrix(rows: &[ResultRow], unit: CorrelationUnit) -> Result<CorrelationMatrix, StatsError> {
    let (xs, ys): (Columns, Columns) = match unit {
        CorrelationUnit::PerEntry => (
            (0..7).map(|i| fidelity_column(rows, i)).collect(),
            (0..2).map(|j| utility_column(rows, j)).collect(),
        ),
        CorrelationUnit::PerTechnique => {
            let table = aggregate(rows, AverageMode::PerTransfer);
            let fid = |g: &super::aggregate::TechniqueAggregate, i: usize| match i {
                0 => g.tp.mean,
                1 => g.fp.mean,
                2 => g.tn.mean,
                3 => g.fn_.mean,
                4 => g.accuracy.mean,
                5 => g.precision.mean,
                _ => g.recall.mean,
            };
            (
                (0..7).map(|i| table.iter().map(|g| fid(g, i)).collect()).collect(),
                vec![
                    table.iter().map(|g| g.effort.mean).collect(),
                    table.iter().map(|g| g.reduction.mean).collect(),
                ],
            )
        }
    };
    let points = ys[0].len();
    if points < 2 {
        return Err(StatsError::InsufficientData(points));
    }
    let mut cells = [[None; 2]; 7];
    for (i, x) in xs.iter().enumerate() {
        for (j, y) in ys.iter().enumerate() {
            cells[i][j] = pearson(x, y)?;
        }
    }
    Ok(CorrelationMatrix { unit, points, cells })
}
