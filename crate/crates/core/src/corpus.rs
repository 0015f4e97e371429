//! Corpus of apps, tests, canonical maps and precomputed GUI maps, stored as
//!
//! ```text
//! apps/<app_id>.model.json
//! tests/<app_id>/<test_id>.events.json   (or <test_id>.script)
//! canonical/<app_id>.canmap.json
//! guimaps/<technique>/<src>__<tgt>__<test_id>.guimap.json
//! signatures.json                        (optional, for .script tests)
//! ```

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{read_json, write_json, Error};
use crate::extract::{events_json, extract_script, ingest_events_json, ApiSignatureTable};
use crate::model::{AppModel, CanonicalMap, GuiMap, Role, TestCase};

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Corpus {
    pub apps: BTreeMap<String, AppModel>,
    /// app id -> test id -> test
    pub tests: BTreeMap<String, BTreeMap<String, TestCase>>,
    pub canonical: BTreeMap<String, CanonicalMap>,
    /// technique -> `<src>__<tgt>__<test_id>` -> map
    #[serde(default)]
    pub guimaps: BTreeMap<String, BTreeMap<String, GuiMap>>,
    #[serde(skip)]
    load_violations: Vec<Violation>,
}

/// A broken corpus invariant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    UnknownActivity {
        app_id: String,
        activity: String,
        referenced_by: String,
    },
    DuplicateModelEvent {
        app_id: String,
        activity: String,
        locator: String,
    },
    UnknownApp {
        app_id: String,
        referenced_by: String,
    },
    MissingCanonicalMap {
        app_id: String,
    },
    UncanonicalizedEvent {
        app_id: String,
        test_id: String,
        locator: String,
    },
    EventNotInModel {
        app_id: String,
        test_id: String,
        event: String,
    },
    FileIdMismatch {
        path: String,
        expected: String,
        found: String,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::UnknownActivity { app_id, activity, referenced_by } => write!(
                f,
                "{app_id}: unknown activity `{activity}` referenced by {referenced_by}"
            ),
            Violation::DuplicateModelEvent { app_id, activity, locator } => write!(
                f,
                "{app_id}: locator `{locator}` appears more than once in activity `{activity}`"
            ),
            Violation::UnknownApp { app_id, referenced_by } => {
                write!(f, "unknown app `{app_id}` referenced by {referenced_by}")
            }
            Violation::MissingCanonicalMap { app_id } => {
                write!(f, "{app_id}: no canonical map")
            }
            Violation::UncanonicalizedEvent { app_id, test_id, locator } => write!(
                f,
                "{app_id}/{test_id}: locator `{locator}` has no canonical event"
            ),
            Violation::EventNotInModel { app_id, test_id, event } => write!(
                f,
                "{app_id}/{test_id}: event {event} does not exist in the app model"
            ),
            Violation::FileIdMismatch { path, expected, found } => write!(
                f,
                "{path}: file name says `{expected}` but content says `{found}`"
            ),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Key of a precomputed GUI map: `<src>__<tgt>__<test_id>`.
pub fn guimap_key(source_app: &str, target_app: &str, test_id: &str) -> String {
    format!("{source_app}__{target_app}__{test_id}")
}

fn sorted_entries(dir: &Path) -> Result<Vec<PathBuf>, Error> {
    if !dir.exists() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for entry in std::fs::read_dir(dir).map_err(|e| Error::io(dir, e))? {
        out.push(entry.map_err(|e| Error::io(dir, e))?.path());
    }
    out.sort();
    Ok(out)
}

fn file_name(path: &Path) -> &str {
    path.file_name().and_then(|n| n.to_str()).unwrap_or_default()
}

impl Corpus {
    /// Reads a corpus directory. Unreadable or malformed files are errors;
    /// ids that disagree with file names are recorded for [`validate_corpus`].
    pub fn load(dir: &Path) -> Result<Self, Error> {
        if !dir.is_dir() {
            return Err(Error::io(
                dir,
                std::io::Error::new(std::io::ErrorKind::NotFound, "corpus directory not found"),
            ));
        }
        let mut corpus = Corpus::default();
        let mismatch = |path: &Path, expected: &str, found: &str| {
            if expected != found {
                Some(Violation::FileIdMismatch {
                    path: path.display().to_string(),
                    expected: expected.to_string(),
                    found: found.to_string(),
                })
            } else {
                None
            }
        };
        let mut violations = Vec::new();

        for path in sorted_entries(&dir.join("apps"))? {
            if let Some(stem) = file_name(&path).strip_suffix(".model.json") {
                let model: AppModel = read_json(&path)?;
                violations.extend(mismatch(&path, stem, &model.app_id));
                corpus.apps.insert(model.app_id.clone(), model);
            }
        }

        let sig_path = dir.join("signatures.json");
        let table = if sig_path.exists() {
            ApiSignatureTable::from_json_file(&sig_path)?
        } else {
            ApiSignatureTable::default()
        };
        for app_dir in sorted_entries(&dir.join("tests"))? {
            if !app_dir.is_dir() {
                continue;
            }
            let app_id = file_name(&app_dir).to_string();
            for path in sorted_entries(&app_dir)? {
                let name = file_name(&path);
                let test = if let Some(stem) = name.strip_suffix(".events.json") {
                    let test = ingest_events_json(&path)?;
                    violations.extend(mismatch(&path, &app_id, test.app_id()));
                    violations.extend(mismatch(&path, stem, test.test_id()));
                    test
                } else if let Some(stem) = name.strip_suffix(".script") {
                    let source = std::fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
                    let events = extract_script(&source, &table).map_err(|e| Error::Schema {
                        path: path.clone(),
                        message: e.to_string(),
                    })?;
                    TestCase::new(app_id.clone(), stem, Role::Source, events).map_err(|e| {
                        Error::Schema {
                            path: path.clone(),
                            message: e.to_string(),
                        }
                    })?
                } else {
                    continue;
                };
                corpus
                    .tests
                    .entry(test.app_id().to_string())
                    .or_default()
                    .insert(test.test_id().to_string(), test);
            }
        }

        for path in sorted_entries(&dir.join("canonical"))? {
            if let Some(stem) = file_name(&path).strip_suffix(".canmap.json") {
                let map: CanonicalMap = read_json(&path)?;
                violations.extend(mismatch(&path, stem, &map.app_id));
                corpus.canonical.insert(map.app_id.clone(), map);
            }
        }

        for tech_dir in sorted_entries(&dir.join("guimaps"))? {
            if !tech_dir.is_dir() {
                continue;
            }
            let technique = file_name(&tech_dir).to_string();
            for path in sorted_entries(&tech_dir)? {
                if let Some(stem) = file_name(&path).strip_suffix(".guimap.json") {
                    let map: GuiMap = read_json(&path)?;
                    let content_key = guimap_key(
                        &map.source_app,
                        &map.target_app,
                        map.test_id.as_deref().unwrap_or_else(|| stem.rsplit("__").next().unwrap_or(stem)),
                    );
                    violations.extend(mismatch(&path, stem, &content_key));
                    violations.extend(mismatch(&path, &technique, &map.technique));
                    corpus
                        .guimaps
                        .entry(technique.clone())
                        .or_default()
                        .insert(stem.to_string(), map);
                }
            }
        }

        corpus.load_violations = violations;
        Ok(corpus)
    }

    /// Writes the corpus in the directory layout, tests in events JSON form.
    pub fn save(&self, dir: &Path) -> Result<(), Error> {
        for (id, model) in &self.apps {
            write_json(&dir.join("apps").join(format!("{id}.model.json")), model)?;
        }
        for (app, tests) in &self.tests {
            for (id, test) in tests {
                let path = dir.join("tests").join(app).join(format!("{id}.events.json"));
                std::fs::create_dir_all(path.parent().unwrap()).map_err(|e| Error::io(&path, e))?;
                std::fs::write(&path, events_json(test)).map_err(|e| Error::io(&path, e))?;
            }
        }
        for (id, map) in &self.canonical {
            write_json(&dir.join("canonical").join(format!("{id}.canmap.json")), map)?;
        }
        for (technique, maps) in &self.guimaps {
            for (key, map) in maps {
                write_json(
                    &dir.join("guimaps").join(technique).join(format!("{key}.guimap.json")),
                    map,
                )?;
            }
        }
        Ok(())
    }

    pub fn test(&self, app_id: &str, test_id: &str) -> Option<&TestCase> {
        self.tests.get(app_id)?.get(test_id)
    }

    /// Test ids of an app in ascending order.
    pub fn test_ids(&self, app_id: &str) -> impl Iterator<Item = &str> {
        self.tests
            .get(app_id)
            .into_iter()
            .flat_map(|t| t.keys().map(String::as_str))
    }

    pub fn guimap(&self, technique: &str, source_app: &str, target_app: &str, test_id: &str) -> Option<&GuiMap> {
        self.guimaps
            .get(technique)?
            .get(&guimap_key(source_app, target_app, test_id))
    }

    /// SHA-256 of the corpus' canonical JSON serialization, hex encoded.
    pub fn digest(&self) -> String {
        let bytes = serde_json::to_vec(self).expect("corpus serializes");
        hex::encode(Sha256::digest(bytes))
    }

    /// Merges another corpus into this one; later entries replace earlier ones.
    pub fn extend(&mut self, other: Corpus) {
        self.apps.extend(other.apps);
        for (app, tests) in other.tests {
            self.tests.entry(app).or_default().extend(tests);
        }
        self.canonical.extend(other.canonical);
        for (t, maps) in other.guimaps {
            self.guimaps.entry(t).or_default().extend(maps);
        }
        self.load_violations.extend(other.load_violations);
    }
}

/// Lists every broken invariant of the corpus; an empty report means well-formed.
pub fn validate_corpus(corpus: &Corpus) -> ValidationReport {
    let mut violations = corpus.load_violations.clone();
    for model in corpus.apps.values() {
        violations.extend(model.violations());
    }
    for app_id in corpus.apps.keys() {
        if !corpus.canonical.contains_key(app_id) {
            violations.push(Violation::MissingCanonicalMap {
                app_id: app_id.clone(),
            });
        }
    }
    for app_id in corpus.canonical.keys() {
        if !corpus.apps.contains_key(app_id) {
            violations.push(Violation::UnknownApp {
                app_id: app_id.clone(),
                referenced_by: "canonical map".into(),
            });
        }
    }
    for (app_id, tests) in &corpus.tests {
        let Some(model) = corpus.apps.get(app_id) else {
            violations.push(Violation::UnknownApp {
                app_id: app_id.clone(),
                referenced_by: format!("tests ({})", tests.keys().cloned().collect::<Vec<_>>().join(", ")),
            });
            continue;
        };
        let can_map = corpus.canonical.get(app_id);
        for (test_id, test) in tests {
            for event in test.events() {
                if let Some(map) = can_map {
                    if map.get(event.locator()).is_none() {
                        violations.push(Violation::UncanonicalizedEvent {
                            app_id: app_id.clone(),
                            test_id: test_id.clone(),
                            locator: event.locator().to_string(),
                        });
                    }
                }
                if !model.contains(event) {
                    violations.push(Violation::EventNotInModel {
                        app_id: app_id.clone(),
                        test_id: test_id.clone(),
                        event: event.to_string(),
                    });
                }
            }
        }
    }
    for (technique, maps) in &corpus.guimaps {
        for (key, map) in maps {
            for app in [&map.source_app, &map.target_app] {
                if !corpus.apps.contains_key(app) {
                    violations.push(Violation::UnknownApp {
                        app_id: app.clone(),
                        referenced_by: format!("GUI map {technique}/{key}"),
                    });
                }
            }
        }
    }
    ValidationReport { violations }
}
