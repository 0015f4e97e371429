use std::collections::BTreeSet;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::SyntheticCorpusSpec;
use crate::corpus::Corpus;
use crate::mappers::{MapperConfig, TechniqueRegistry};
use crate::utility::EqualityMode;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlanError {
    #[error("plan lists no techniques")]
    NoTechniques,
    #[error("plan lists no categories")]
    NoCategories,
    #[error("unknown technique `{0}`")]
    UnknownTechnique(String),
    #[error("technique label `{0}` is used twice")]
    DuplicateTechnique(String),
    #[error("category `{category}`: unknown app `{app_id}`")]
    UnknownApp { category: String, app_id: String },
    #[error("category `{category}` lists app `{app_id}` twice")]
    DuplicateApp { category: String, app_id: String },
    #[error("plan has no corpus")]
    NoCorpus,
}

/// Apps whose tests are transferred among each other.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Category {
    pub name: String,
    pub app_ids: Vec<String>,
}

/// One synthetic corpus, optionally forming its own category.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SyntheticCategory {
    pub category: String,
    pub spec: SyntheticCorpusSpec,
}

/// Where a plan's corpus comes from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CorpusSource {
    /// Corpus directory, relative to the plan file.
    Dir(PathBuf),
    Synthetic(Vec<SyntheticCategory>),
}

fn yes() -> bool {
    true
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BenchmarkPlan {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub corpus: Option<CorpusSource>,
    /// Empty with a synthetic corpus: one category per synthetic entry.
    #[serde(default)]
    pub categories: Vec<Category>,
    pub techniques: Vec<MapperConfig>,
    /// Also transfer each app's tests to the app itself.
    #[serde(default = "yes")]
    pub include_self_pairs: bool,
    #[serde(default)]
    pub equality: EqualityMode,
}

/// One planned transfer; `technique` indexes the plan's technique list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlannedTransfer {
    pub category: String,
    pub source_app: String,
    pub target_app: String,
    pub test_id: String,
    pub technique: usize,
}

impl BenchmarkPlan {
    /// Categories to run: the explicit list, or one per synthetic corpus.
    pub fn effective_categories(&self) -> Vec<Category> {
        if !self.categories.is_empty() {
            return self.categories.clone();
        }
        match &self.corpus {
            Some(CorpusSource::Synthetic(entries)) => entries
                .iter()
                .map(|e| Category {
                    name: e.category.clone(),
                    app_ids: e.spec.app_ids(),
                })
                .collect(),
            _ => Vec::new(),
        }
    }
}

/// Every transfer of the plan, ordered by category, source, target, test and
/// technique. Within a category, each ordered app pair (self pairs only when
/// enabled) carries every test of the source app under every technique.
pub fn plan_transfers(
    plan: &BenchmarkPlan,
    corpus: &Corpus,
    registry: &TechniqueRegistry,
) -> Result<Vec<PlannedTransfer>, PlanError> {
    if plan.techniques.is_empty() {
        return Err(PlanError::NoTechniques);
    }
    let mut labels = BTreeSet::new();
    for cfg in &plan.techniques {
        if !registry.knows(&cfg.technique, corpus) {
            return Err(PlanError::UnknownTechnique(cfg.technique.clone()));
        }
        if !labels.insert(cfg.label()) {
            return Err(PlanError::DuplicateTechnique(cfg.label().to_string()));
        }
    }
    let categories = plan.effective_categories();
    if categories.is_empty() {
        return Err(PlanError::NoCategories);
    }
    let mut out = Vec::new();
    for category in &categories {
        let mut seen = BTreeSet::new();
        for app in &category.app_ids {
            if !corpus.apps.contains_key(app) {
                return Err(PlanError::UnknownApp {
                    category: category.name.clone(),
                    app_id: app.clone(),
                });
            }
            if !seen.insert(app) {
                return Err(PlanError::DuplicateApp {
                    category: category.name.clone(),
                    app_id: app.clone(),
                });
            }
        }
        for source in &category.app_ids {
            for target in &category.app_ids {
                if source == target && !plan.include_self_pairs {
                    continue;
                }
                for test_id in corpus.test_ids(source) {
                    for technique in 0..plan.techniques.len() {
                        out.push(PlannedTransfer {
                            category: category.name.clone(),
                            source_app: source.clone(),
                            target_app: target.clone(),
                            test_id: test_id.to_string(),
                            technique,
                        });
                    }
                }
            }
        }
    }
    Ok(out)
}
