//! Cross-product benchmark runner and synthetic corpora.

mod plan;
mod run;
mod synthetic;

pub use plan::{plan_transfers, BenchmarkPlan, Category, CorpusSource, PlanError, PlannedTransfer, SyntheticCategory};
pub use run::{
    load_plan_corpus, plan_digest, run_benchmark, run_plan_to_dir, BenchmarkRun, RunManifest, SkipReason,
    SkipRecord,
};
pub use synthetic::{generate_synthetic_corpus, GenerationError, SyntheticCorpusSpec};
