use std::fmt;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::plan::{plan_transfers, BenchmarkPlan, CorpusSource, PlanError, PlannedTransfer};
use super::synthetic::generate_synthetic_corpus;
use crate::corpus::Corpus;
use crate::error::{write_json, Error};
use crate::fidelity::{compute_fidelity_metrics, evaluate_fidelity};
use crate::mappers::{Mapper, TechniqueRegistry, TransferRequest};
use crate::model::{ResultEntry, Role};
use crate::scalar::Scalar;
use crate::utility::utility_of_events;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SkipReason {
    /// The target app has no test with the source test's id.
    MissingGroundTruth,
    /// Mapping or scoring failed for this transfer only.
    Error,
}

impl fmt::Display for SkipReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SkipReason::MissingGroundTruth => "missing_ground_truth",
            SkipReason::Error => "error",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkipRecord {
    pub source_app: String,
    pub target_app: String,
    pub test_id: String,
    pub technique: String,
    pub reason: SkipReason,
    pub detail: String,
}

/// Entries and skips, both in plan order.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchmarkRun<T> {
    pub entries: Vec<ResultEntry<T>>,
    pub skipped: Vec<SkipRecord>,
    pub planned: usize,
}

enum Outcome<T> {
    Entry(Box<ResultEntry<T>>),
    Skip(SkipRecord),
}

fn run_one<T: Scalar>(
    plan: &BenchmarkPlan,
    corpus: &Corpus,
    mapper: &dyn Mapper,
    transfer: &PlannedTransfer,
) -> Outcome<T> {
    let technique = plan.techniques[transfer.technique].label().to_string();
    let skip = |reason, detail: String| {
        Outcome::Skip(SkipRecord {
            source_app: transfer.source_app.clone(),
            target_app: transfer.target_app.clone(),
            test_id: transfer.test_id.clone(),
            technique: technique.clone(),
            reason,
            detail,
        })
    };
    let source = corpus
        .test(&transfer.source_app, &transfer.test_id)
        .expect("planned from the corpus");
    let Some(gt) = corpus.test(&transfer.target_app, &transfer.test_id) else {
        return skip(
            SkipReason::MissingGroundTruth,
            format!("{} has no test `{}`", transfer.target_app, transfer.test_id),
        );
    };
    let result = (|| -> Result<ResultEntry<T>, Error> {
        let gt = gt.with_role(Role::GroundTruth)?;
        let request = TransferRequest {
            source_app: &transfer.source_app,
            target_app: &transfer.target_app,
            test_id: &transfer.test_id,
            src_events: source.events(),
        };
        let map = mapper.transfer(corpus, &request)?;
        let missing = |app: &str| crate::mappers::MapperError::MissingCanonicalMap(app.to_string());
        let src_can = corpus.canonical.get(&transfer.source_app).ok_or_else(|| missing(&transfer.source_app))?;
        let tgt_can = corpus.canonical.get(&transfer.target_app).ok_or_else(|| missing(&transfer.target_app))?;
        let sets = evaluate_fidelity(source.events(), &map, src_can, tgt_can)?;
        let transferred = map.transferred_test();
        let utility = utility_of_events(&transferred, gt.events(), plan.equality)?;
        Ok(ResultEntry {
            source_app: transfer.source_app.clone(),
            target_app: transfer.target_app.clone(),
            test_id: transfer.test_id.clone(),
            technique: technique.clone(),
            source_events: source.events().to_vec(),
            mapped_events: map.pairs.iter().map(|p| p.trans.clone()).collect(),
            transferred_events: transferred,
            gt_events: gt.events().to_vec(),
            fidelity_metrics: compute_fidelity_metrics(&sets),
            fidelity_sets: sets,
            utility_metrics: utility,
        })
    })();
    match result {
        Ok(entry) => Outcome::Entry(Box::new(entry)),
        Err(e) => skip(SkipReason::Error, e.to_string()),
    }
}

/// Runs every planned transfer on `workers` threads (0 picks the machine's
/// parallelism). Output order is plan order whatever the scheduling. A failing
/// transfer becomes a skip record; only plan errors abort.
pub fn run_benchmark<T: Scalar>(
    plan: &BenchmarkPlan,
    corpus: &Corpus,
    registry: &TechniqueRegistry,
    workers: usize,
) -> Result<BenchmarkRun<T>, Error> {
    let transfers = plan_transfers(plan, corpus, registry)?;
    let mappers = plan
        .techniques
        .iter()
        .map(|cfg| registry.build(cfg, corpus))
        .collect::<Result<Vec<_>, _>>()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .expect("thread pool");
    let outcomes: Vec<Outcome<T>> = pool.install(|| {
        transfers
            .par_iter()
            .map(|t| run_one(plan, corpus, mappers[t.technique].as_ref(), t))
            .collect()
    });
    let mut run = BenchmarkRun {
        entries: Vec::new(),
        skipped: Vec::new(),
        planned: transfers.len(),
    };
    for outcome in outcomes {
        match outcome {
            Outcome::Entry(e) => run.entries.push(*e),
            Outcome::Skip(s) => run.skipped.push(s),
        }
    }
    Ok(run)
}

/// Materializes the plan's corpus. Directory paths are relative to `base`.
pub fn load_plan_corpus(plan: &BenchmarkPlan, base: &Path) -> Result<Corpus, Error> {
    match &plan.corpus {
        None => Err(PlanError::NoCorpus.into()),
        Some(CorpusSource::Dir(dir)) => Corpus::load(&base.join(dir)),
        Some(CorpusSource::Synthetic(entries)) => {
            let mut corpus = Corpus::default();
            for entry in entries {
                let part = generate_synthetic_corpus(&entry.spec)?;
                if let Some(app) = part.apps.keys().find(|a| corpus.apps.contains_key(*a)) {
                    return Err(PlanError::DuplicateApp {
                        category: entry.category.clone(),
                        app_id: app.clone(),
                    }
                    .into());
                }
                corpus.extend(part);
            }
            Ok(corpus)
        }
    }
}

/// Everything needed to reproduce a run, written next to its results.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunManifest {
    pub plan: BenchmarkPlan,
    pub plan_sha256: String,
    pub corpus_sha256: String,
    pub tool: String,
    pub planned: usize,
    pub entries: usize,
    pub skipped: usize,
}

pub fn plan_digest(plan: &BenchmarkPlan) -> String {
    let bytes = serde_json::to_vec(plan).expect("plan serializes");
    hex::encode(Sha256::digest(bytes))
}

/// Runs a plan and writes `results.csv`, `results.jsonl`, `skipped.csv` and
/// `manifest.json` into `out`. Nothing time- or host-dependent is written, so
/// identical plans give identical files.
pub fn run_plan_to_dir(
    plan: &BenchmarkPlan,
    corpus: &Corpus,
    registry: &TechniqueRegistry,
    out: &Path,
    workers: usize,
) -> Result<RunManifest, Error> {
    let run = run_benchmark::<f64>(plan, corpus, registry, workers)?;
    std::fs::create_dir_all(out).map_err(|e| Error::io(out, e))?;
    crate::report::write_results_csv(&run.entries, &out.join("results.csv"))?;
    crate::report::write_results_jsonl(&run.entries, &out.join("results.jsonl"))?;
    crate::report::write_skipped_csv(&run.skipped, &out.join("skipped.csv"))?;
    let manifest = RunManifest {
        plan: plan.clone(),
        plan_sha256: plan_digest(plan),
        corpus_sha256: corpus.digest(),
        tool: concat!("fruiter ", env!("CARGO_PKG_VERSION")).to_string(),
        planned: run.planned,
        entries: run.entries.len(),
        skipped: run.skipped.len(),
    };
    write_json(&out.join("manifest.json"), &manifest)?;
    Ok(manifest)
}
