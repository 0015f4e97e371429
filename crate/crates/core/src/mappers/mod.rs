//! GUI mappers: techniques that transfer a source test's events to a target app.
//!
//! Every mapper yields one entry per source event, `None` marking a null
//! event. Built-in techniques register by name in a [`TechniqueRegistry`];
//! any other technique name is served from precomputed GUI maps in the corpus.

mod naive;
mod perfect;
mod similarity;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corpus::{guimap_key, Corpus};
use crate::fidelity::derive_gui_map;
use crate::model::{GuiEvent, GuiMap, ModelError};
use crate::rng::derive_seed;

pub use naive::naive_map;
pub use perfect::perfect_map;
pub use similarity::{jaccard, similarity_map};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MapperError {
    #[error("unknown technique `{0}`")]
    UnknownTechnique(String),
    #[error("threshold {0} is outside [0, 1]")]
    InvalidThreshold(f64),
    #[error("ground-truth gap: `{locator}` has no canonical event in {app_id}")]
    GroundTruthGap { app_id: String, locator: String },
    #[error("model gap: `{locator}` is not an element of {app_id}")]
    ModelGap { app_id: String, locator: String },
    #[error("no app model for `{0}`")]
    MissingModel(String),
    #[error("no canonical map for `{0}`")]
    MissingCanonicalMap(String),
    #[error("no precomputed GUI map {technique}/{key}")]
    MissingGuiMap { technique: String, key: String },
    #[error("precomputed GUI map {technique}/{key} does not match the source test: {reason}")]
    StaleGuiMap {
        technique: String,
        key: String,
        reason: String,
    },
    #[error(transparent)]
    Model(#[from] ModelError),
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TieBreak {
    #[default]
    Lexicographic,
}

/// Technique name and its knobs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawMapperConfig")]
pub struct MapperConfig {
    pub technique: String,
    /// Label used in results; defaults to the technique name.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    /// Similarity must strictly exceed this to map.
    pub threshold: f64,
    /// Seed of the random baseline.
    pub seed: u64,
    pub tie_break: TieBreak,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMapperConfig {
    technique: String,
    #[serde(default)]
    name: Option<String>,
    #[serde(default = "default_threshold")]
    threshold: f64,
    #[serde(default)]
    seed: u64,
    #[serde(default)]
    tie_break: TieBreak,
}

fn default_threshold() -> f64 {
    0.5
}

impl TryFrom<RawMapperConfig> for MapperConfig {
    type Error = MapperError;

    fn try_from(raw: RawMapperConfig) -> Result<Self, Self::Error> {
        let mut cfg = MapperConfig::new(raw.technique, raw.threshold, raw.seed)?;
        cfg.name = raw.name;
        cfg.tie_break = raw.tie_break;
        Ok(cfg)
    }
}

impl MapperConfig {
    pub fn new(technique: impl Into<String>, threshold: f64, seed: u64) -> Result<Self, MapperError> {
        if !(0.0..=1.0).contains(&threshold) {
            return Err(MapperError::InvalidThreshold(threshold));
        }
        Ok(MapperConfig {
            technique: technique.into(),
            name: None,
            threshold,
            seed,
            tie_break: TieBreak::Lexicographic,
        })
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn label(&self) -> &str {
        self.name.as_deref().unwrap_or(&self.technique)
    }
}

/// One source test to transfer.
#[derive(Debug, Clone, Copy)]
pub struct TransferRequest<'a> {
    pub source_app: &'a str,
    pub target_app: &'a str,
    pub test_id: &'a str,
    pub src_events: &'a [GuiEvent],
}

pub trait Mapper: Send + Sync {
    /// Label recorded as the technique of produced maps.
    fn technique(&self) -> &str;

    fn transfer(&self, corpus: &Corpus, request: &TransferRequest) -> Result<GuiMap, MapperError>;
}

fn aligned_map(
    label: &str,
    request: &TransferRequest,
    trans: Vec<Option<GuiEvent>>,
) -> GuiMap {
    let mut map = derive_gui_map(
        request.src_events,
        &trans,
        request.source_app,
        request.target_app,
        label,
    )
    .expect("mapper output is aligned with its input");
    map.test_id = Some(request.test_id.to_string());
    map
}

fn model<'a>(corpus: &'a Corpus, app: &str) -> Result<&'a crate::model::AppModel, MapperError> {
    corpus
        .apps
        .get(app)
        .ok_or_else(|| MapperError::MissingModel(app.to_string()))
}

fn can_map<'a>(corpus: &'a Corpus, app: &str) -> Result<&'a crate::model::CanonicalMap, MapperError> {
    corpus
        .canonical
        .get(app)
        .ok_or_else(|| MapperError::MissingCanonicalMap(app.to_string()))
}

/// Random baseline. Each transfer draws from its own stream, seeded from the
/// configured seed and the (source, target, test) triple, so results do not
/// depend on the order transfers run in.
pub struct NaiveMapper(pub MapperConfig);

impl Mapper for NaiveMapper {
    fn technique(&self) -> &str {
        self.0.label()
    }

    fn transfer(&self, corpus: &Corpus, request: &TransferRequest) -> Result<GuiMap, MapperError> {
        let target = model(corpus, request.target_app)?;
        let mut cfg = self.0.clone();
        cfg.seed = derive_seed(
            self.0.seed,
            &[request.source_app, request.target_app, request.test_id],
        );
        let trans = naive_map(request.src_events, target, &cfg)?;
        Ok(aligned_map(self.technique(), request, trans))
    }
}

pub struct PerfectMapper(pub MapperConfig);

impl Mapper for PerfectMapper {
    fn technique(&self) -> &str {
        self.0.label()
    }

    fn transfer(&self, corpus: &Corpus, request: &TransferRequest) -> Result<GuiMap, MapperError> {
        let trans = perfect_map(
            request.src_events,
            can_map(corpus, request.source_app)?,
            can_map(corpus, request.target_app)?,
        )?;
        Ok(aligned_map(self.technique(), request, trans))
    }
}

pub struct SimilarityMapper(pub MapperConfig);

impl Mapper for SimilarityMapper {
    fn technique(&self) -> &str {
        self.0.label()
    }

    fn transfer(&self, corpus: &Corpus, request: &TransferRequest) -> Result<GuiMap, MapperError> {
        let trans = similarity_map(
            request.src_events,
            model(corpus, request.source_app)?,
            model(corpus, request.target_app)?,
            &self.0,
        )?;
        Ok(aligned_map(self.technique(), request, trans))
    }
}

/// Serves GUI maps produced offline by an external technique.
pub struct PrecomputedMapper(pub MapperConfig);

impl Mapper for PrecomputedMapper {
    fn technique(&self) -> &str {
        self.0.label()
    }

    fn transfer(&self, corpus: &Corpus, request: &TransferRequest) -> Result<GuiMap, MapperError> {
        let technique = &self.0.technique;
        let key = guimap_key(request.source_app, request.target_app, request.test_id);
        let map = corpus
            .guimap(technique, request.source_app, request.target_app, request.test_id)
            .ok_or_else(|| MapperError::MissingGuiMap {
                technique: technique.clone(),
                key: key.clone(),
            })?;
        if !map.source_events().eq(request.src_events.iter()) {
            return Err(MapperError::StaleGuiMap {
                technique: technique.clone(),
                key,
                reason: "source events differ".into(),
            });
        }
        let mut map = map.clone();
        map.technique = self.technique().to_string();
        map.test_id = Some(request.test_id.to_string());
        Ok(map)
    }
}

pub type MapperFactory = fn(MapperConfig) -> Box<dyn Mapper>;

/// Technique name -> mapper constructor.
#[derive(Clone)]
pub struct TechniqueRegistry {
    factories: BTreeMap<String, MapperFactory>,
}

impl Default for TechniqueRegistry {
    fn default() -> Self {
        Self::with_builtins()
    }
}

impl TechniqueRegistry {
    pub fn empty() -> Self {
        TechniqueRegistry {
            factories: BTreeMap::new(),
        }
    }

    /// `naive`, `perfect` and `similarity`.
    pub fn with_builtins() -> Self {
        let mut r = Self::empty();
        r.register("naive", |c| Box::new(NaiveMapper(c)));
        r.register("perfect", |c| Box::new(PerfectMapper(c)));
        r.register("similarity", |c| Box::new(SimilarityMapper(c)));
        r
    }

    pub fn register(&mut self, name: &str, factory: MapperFactory) {
        self.factories.insert(name.to_string(), factory);
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.factories.keys().map(String::as_str)
    }

    /// Whether `technique` is registered or has precomputed maps in `corpus`.
    pub fn knows(&self, technique: &str, corpus: &Corpus) -> bool {
        self.factories.contains_key(technique) || corpus.guimaps.contains_key(technique)
    }

    pub fn build(&self, cfg: &MapperConfig, corpus: &Corpus) -> Result<Box<dyn Mapper>, MapperError> {
        if let Some(factory) = self.factories.get(&cfg.technique) {
            Ok(factory(cfg.clone()))
        } else if corpus.guimaps.contains_key(&cfg.technique) {
            Ok(Box::new(PrecomputedMapper(cfg.clone())))
        } else {
            Err(MapperError::UnknownTechnique(cfg.technique.clone()))
        }
    }
}
