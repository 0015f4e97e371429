use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::results_csv::ResultRow;

/// How means are formed.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AverageMode {
    /// Unweighted over transfers.
    #[default]
    PerTransfer,
    /// Mean within each (source, target) app pair, then over pairs.
    PerPair,
}

/// Mean of the defined values; `undefined` counts the values left out.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct MeanCell {
    pub mean: Option<f64>,
    pub defined: usize,
    pub undefined: usize,
}

impl MeanCell {
    pub fn of(values: impl IntoIterator<Item = Option<f64>>) -> Self {
        let (mut sum, mut cell) = (0.0, MeanCell::default());
        for v in values {
            match v {
                Some(v) => {
                    sum += v;
                    cell.defined += 1;
                }
                None => cell.undefined += 1,
            }
        }
        if cell.defined > 0 {
            cell.mean = Some(sum / cell.defined as f64);
        }
        cell
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TechniqueAggregate {
    pub technique: String,
    pub entries: usize,
    pub tp: MeanCell,
    pub fp: MeanCell,
    pub tn: MeanCell,
    #[serde(rename = "fn")]
    pub fn_: MeanCell,
    pub accuracy: MeanCell,
    pub precision: MeanCell,
    pub recall: MeanCell,
    pub effort: MeanCell,
    pub reduction: MeanCell,
}

type Column = fn(&ResultRow) -> Option<f64>;

const COLUMNS: [Column; 9] = [
    |r| Some(r.tp as f64),
    |r| Some(r.fp as f64),
    |r| Some(r.tn as f64),
    |r| Some(r.fn_ as f64),
    |r| r.accuracy,
    |r| r.precision,
    |r| r.recall,
    |r| Some(r.effort as f64),
    |r| Some(r.reduction),
];

fn cell(rows: &[&ResultRow], column: Column, mode: AverageMode) -> MeanCell {
    match mode {
        AverageMode::PerTransfer => MeanCell::of(rows.iter().map(|r| column(r))),
        AverageMode::PerPair => {
            let mut pairs: BTreeMap<(&str, &str), Vec<Option<f64>>> = BTreeMap::new();
            for r in rows {
                pairs
                    .entry((&r.source_app, &r.target_app))
                    .or_default()
                    .push(column(r));
            }
            let per_pair: Vec<MeanCell> = pairs.into_values().map(MeanCell::of).collect();
            let mut out = MeanCell::of(per_pair.iter().map(|c| c.mean));
            // Report undefined counts in transfers, not pairs.
            out.defined = per_pair.iter().map(|c| c.defined).sum();
            out.undefined = per_pair.iter().map(|c| c.undefined).sum();
            out
        }
    }
}

/// Per-technique means in order of first appearance.
pub fn aggregate(rows: &[ResultRow], mode: AverageMode) -> Vec<TechniqueAggregate> {
    let mut order: Vec<&str> = Vec::new();
    let mut groups: BTreeMap<&str, Vec<&ResultRow>> = BTreeMap::new();
    for r in rows {
        let g = groups.entry(&r.technique).or_default();
        if g.is_empty() {
            order.push(&r.technique);
        }
        g.push(r);
    }
    order
        .into_iter()
        .map(|technique| {
            let g = &groups[technique];
            let c: Vec<MeanCell> = COLUMNS.iter().map(|col| cell(g, *col, mode)).collect();
            TechniqueAggregate {
                technique: technique.to_string(),
                entries: g.len(),
                tp: c[0],
                fp: c[1],
                tn: c[2],
                fn_: c[3],
                accuracy: c[4],
                precision: c[5],
                recall: c[6],
                effort: c[7],
                reduction: c[8],
            }
        })
        .collect()
}
