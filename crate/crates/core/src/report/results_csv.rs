use std::fs::File;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::harness::SkipRecord;
use crate::model::ResultEntry;
use crate::scalar::Scalar;

pub const RESULTS_HEADER: [&str; 20] = [
    "source_app",
    "target_app",
    "test_id",
    "technique",
    "n_src_events",
    "n_trans_events",
    "n_gt_events",
    "correct",
    "incorrect",
    "missed",
    "non_exist",
    "tp",
    "fp",
    "tn",
    "fn",
    "accuracy",
    "precision",
    "recall",
    "effort",
    "reduction",
];

pub const SKIPPED_HEADER: [&str; 6] = ["source_app", "target_app", "test_id", "technique", "reason", "detail"];

/// Flat, scalar-only view of a result entry: one CSV row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRow {
    pub source_app: String,
    pub target_app: String,
    pub test_id: String,
    pub technique: String,
    pub n_src_events: usize,
    pub n_trans_events: usize,
    pub n_gt_events: usize,
    pub correct: usize,
    pub incorrect: usize,
    pub missed: usize,
    pub non_exist: usize,
    pub tp: usize,
    pub fp: usize,
    pub tn: usize,
    #[serde(rename = "fn")]
    pub fn_: usize,
    pub accuracy: Option<f64>,
    pub precision: Option<f64>,
    pub recall: Option<f64>,
    pub effort: usize,
    pub reduction: f64,
}

impl ResultRow {
    pub fn from_entry<T: Scalar>(e: &ResultEntry<T>) -> Self {
        let f = e.fidelity_metrics.to_f64();
        ResultRow {
            source_app: e.source_app.clone(),
            target_app: e.target_app.clone(),
            test_id: e.test_id.clone(),
            technique: e.technique.clone(),
            n_src_events: e.source_events.len(),
            n_trans_events: e.transferred_events.len(),
            n_gt_events: e.gt_events.len(),
            correct: e.fidelity_sets.correct.len(),
            incorrect: e.fidelity_sets.incorrect.len(),
            missed: e.fidelity_sets.missed.len(),
            non_exist: e.fidelity_sets.non_exist.len(),
            tp: f.tp,
            fp: f.fp,
            tn: f.tn,
            fn_: f.fn_,
            accuracy: f.accuracy,
            precision: f.precision,
            recall: f.recall,
            effort: e.utility_metrics.effort,
            reduction: e.utility_metrics.reduction.as_f64(),
        }
    }

    fn record(&self) -> [String; 20] {
        [
            self.source_app.clone(),
            self.target_app.clone(),
            self.test_id.clone(),
            self.technique.clone(),
            self.n_src_events.to_string(),
            self.n_trans_events.to_string(),
            self.n_gt_events.to_string(),
            self.correct.to_string(),
            self.incorrect.to_string(),
            self.missed.to_string(),
            self.non_exist.to_string(),
            self.tp.to_string(),
            self.fp.to_string(),
            self.tn.to_string(),
            self.fn_.to_string(),
            format_ratio(self.accuracy),
            format_ratio(self.precision),
            format_ratio(self.recall),
            self.effort.to_string(),
            format_ratio(Some(self.reduction)),
        ]
    }
}

/// Shortest decimal that parses back to the same `f64`; empty when undefined.
pub fn format_ratio(value: Option<f64>) -> String {
    value.map(|v| format!("{v:?}")).unwrap_or_default()
}

fn csv_err(path: &Path, e: csv::Error) -> Error {
    Error::Csv {
        path: path.to_path_buf(),
        source: e,
    }
}

fn create(path: &Path) -> Result<csv::Writer<File>, Error> {
    if let Some(parent) = path.parent() {
        std::fs::create_dir_all(parent).map_err(|e| Error::io(parent, e))?;
    }
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    Ok(csv::WriterBuilder::new().has_headers(false).from_writer(file))
}

pub fn write_rows<W: Write>(rows: &[ResultRow], out: W) -> csv::Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(RESULTS_HEADER)?;
    for row in rows {
        w.write_record(row.record())?;
    }
    w.flush()?;
    Ok(())
}

/// One row per entry, in the given order; a header-only file when empty.
pub fn write_results_csv<T: Scalar>(entries: &[ResultEntry<T>], path: &Path) -> Result<(), Error> {
    let rows: Vec<ResultRow> = entries.iter().map(ResultRow::from_entry).collect();
    let mut buf = Vec::new();
    write_rows(&rows, &mut buf).map_err(|e| csv_err(path, e))?;
    if let Some(parent) = path.parent() {
        std::fs::create_dir_all(parent).map_err(|e| Error::io(parent, e))?;
    }
    std::fs::write(path, buf).map_err(|e| Error::io(path, e))
}

/// Reads a results file; the header must match [`RESULTS_HEADER`] exactly.
pub fn read_results_csv(path: &Path) -> Result<Vec<ResultRow>, Error> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let mut r = csv::Reader::from_reader(file);
    let header = r.headers().map_err(|e| csv_err(path, e))?.clone();
    if header.iter().ne(RESULTS_HEADER) {
        return Err(Error::Schema {
            path: path.to_path_buf(),
            message: format!("unexpected header `{}`", header.iter().collect::<Vec<_>>().join(",")),
        });
    }
    r.deserialize()
        .collect::<Result<Vec<ResultRow>, _>>()
        .map_err(|e| csv_err(path, e))
}

/// Full entries, one JSON object per line.
pub fn write_results_jsonl<T: Scalar + Serialize>(entries: &[ResultEntry<T>], path: &Path) -> Result<(), Error> {
    let mut buf = String::new();
    for e in entries {
        buf.push_str(&serde_json::to_string(e).expect("entry serializes"));
        buf.push('\n');
    }
    std::fs::write(path, buf).map_err(|e| Error::io(path, e))
}

pub fn write_skipped_csv(skipped: &[SkipRecord], path: &Path) -> Result<(), Error> {
    let mut w = create(path)?;
    let write = |w: &mut csv::Writer<File>| -> csv::Result<()> {
        w.write_record(SKIPPED_HEADER)?;
        for s in skipped {
            w.write_record([
                s.source_app.as_str(),
                &s.target_app,
                &s.test_id,
                &s.technique,
                &s.reason.to_string(),
                &s.detail,
            ])?;
        }
        w.flush()?;
        Ok(())
    };
    write(&mut w).map_err(|e| csv_err(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn row(technique: &str, precision: Option<f64>) -> ResultRow {
        ResultRow {
            source_app: "a".into(),
            target_app: "b".into(),
            test_id: "t".into(),
            technique: technique.into(),
            n_src_events: 3,
            n_trans_events: 2,
            n_gt_events: 4,
            correct: 1,
            incorrect: 1,
            missed: 0,
            non_exist: 1,
            tp: 1,
            fp: 1,
            tn: 1,
            fn_: 0,
            accuracy: Some(2.0 / 3.0),
            precision,
            recall: Some(1.0),
            effort: 3,
            reduction: 0.25,
        }
    }

    #[test]
    fn header_is_exact() {
        let mut out = Vec::new();
        write_rows(&[], &mut out).unwrap();
        assert_eq!(
            String::from_utf8(out).unwrap(),
            "source_app,target_app,test_id,technique,n_src_events,n_trans_events,n_gt_events,correct,incorrect,missed,non_exist,tp,fp,tn,fn,accuracy,precision,recall,effort,reduction\n"
        );
    }

    #[test]
    fn undefined_is_empty_not_zero() {
        let mut out = Vec::new();
        write_rows(&[row("naive", None)], &mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        let line = text.lines().nth(1).unwrap();
        assert_eq!(line, "a,b,t,naive,3,2,4,1,1,0,1,1,1,1,0,0.6666666666666666,,1.0,3,0.25");
    }

    #[test]
    fn round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("r.csv");
        let rows = vec![row("naive", None), row("perfect", Some(1.0 / 3.0))];
        let mut buf = Vec::new();
        write_rows(&rows, &mut buf).unwrap();
        std::fs::write(&path, buf).unwrap();
        assert_eq!(read_results_csv(&path).unwrap(), rows);
    }

    #[test]
    fn wrong_header_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("r.csv");
        std::fs::write(&path, "a,b\n1,2\n").unwrap();
        assert!(matches!(read_results_csv(&path), Err(Error::Schema { .. })));
    }
}
