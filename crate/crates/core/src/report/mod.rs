//! Result files, per-technique aggregates and fidelity/utility correlations.

mod aggregate;
mod results_csv;
mod stats;

use std::io::Write;

pub use aggregate::{aggregate, AverageMode, MeanCell, TechniqueAggregate};
pub use results_csv::{
    format_ratio, read_results_csv, write_results_csv, write_results_jsonl, write_rows, write_skipped_csv,
    ResultRow, RESULTS_HEADER, SKIPPED_HEADER,
};
pub use stats::{
    correlation_matrix, pearson, CorrelationMatrix, CorrelationUnit, StatsError, FIDELITY_METRICS,
    UTILITY_METRICS,
};

pub const AGGREGATE_HEADER: &str = "technique,entries,metric,mean,defined,undefined";

/// Long-format aggregate table: one line per technique and metric.
pub fn write_aggregate<W: Write>(table: &[TechniqueAggregate], mut out: W) -> std::io::Result<()> {
    writeln!(out, "{AGGREGATE_HEADER}")?;
    for g in table {
        let cells = [
            ("accuracy", g.accuracy),
            ("precision", g.precision),
            ("recall", g.recall),
            ("effort", g.effort),
            ("reduction", g.reduction),
        ];
        for (name, c) in cells {
            writeln!(
                out,
                "{},{},{},{},{},{}",
                g.technique,
                g.entries,
                name,
                format_ratio(c.mean),
                c.defined,
                c.undefined
            )?;
        }
    }
    Ok(())
}

/// Matrix rows are fidelity metrics; a `#` footer states how undefined
/// values were handled.
pub fn write_correlation<W: Write>(m: &CorrelationMatrix, mut out: W) -> std::io::Result<()> {
    writeln!(out, "metric,{}", UTILITY_METRICS.join(","))?;
    for (name, row) in FIDELITY_METRICS.iter().zip(&m.cells) {
        writeln!(out, "{name},{},{}", format_ratio(row[0]), format_ratio(row[1]))?;
    }
    let unit = match m.unit {
        CorrelationUnit::PerEntry => "result entries",
        CorrelationUnit::PerTechnique => "per-technique means",
    };
    writeln!(
        out,
        "# pearson over {} {unit}; pairs with an undefined member dropped per cell; empty cell = undefined (zero variance or < 2 pairs)",
        m.points
    )
}
