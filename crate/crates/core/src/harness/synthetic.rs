//! Seeded generator of synthetic corpora with exactly known ground truth.
//!
//! All apps share one canonical vocabulary. Each app realizes a fixed share
//! of it on its own locators, spread over a connected activity graph. Tests
//! are walks over that graph that follow shared flows: at every step the walk
//! takes the element carrying the flow's next canonical event when the
//! current activity has one, and a random element otherwise.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corpus::Corpus;
use crate::model::{Action, AppModel, CanonicalEvent, CanonicalMap, GuiEvent, ModelEvent, Role, TestCase};
use crate::rng::SplitMix64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenerationError {
    #[error("invalid synthetic corpus spec: {0}")]
    InvalidSpec(String),
    #[error("infeasible synthetic corpus spec: {0}")]
    Infeasible(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SyntheticCorpusSpec {
    pub n_apps: usize,
    pub activities_per_app: usize,
    pub events_per_activity: usize,
    pub n_canonical: usize,
    pub tests_per_app: usize,
    /// Inclusive `[min, max]` test length.
    pub test_length_range: [usize; 2],
    /// Share of the vocabulary each app realizes, in (0, 1].
    pub canonical_coverage: f64,
    pub seed: u64,
    /// App ids are `<prefix><index>`, e.g. `app00`.
    #[serde(default = "default_prefix")]
    pub app_prefix: String,
    /// Probability that an app lacks a given test (at least one test is kept).
    #[serde(default)]
    pub test_dropout: f64,
}

fn default_prefix() -> String {
    "app".to_string()
}

const WORDS: [&str; 24] = [
    "sign", "in", "up", "email", "password", "search", "cart", "checkout", "menu", "home",
    "settings", "profile", "account", "order", "wishlist", "filter", "share", "save", "news",
    "article", "category", "login", "submit", "back",
];

const ACTIONS: [Action; 4] = [Action::Click, Action::SendKeys, Action::Click, Action::LongPress];

struct VocabEntry {
    name: CanonicalEvent,
    action: Action,
    words: [&'static str; 2],
}

fn vocabulary(n: usize) -> Vec<VocabEntry> {
    (0..n)
        .map(|k| {
            let first = WORDS[k % WORDS.len()];
            let mut second = WORDS[(3 * k + k / WORDS.len() + 5) % WORDS.len()];
            if second == first {
                second = WORDS[(k + 1) % WORDS.len()];
            }
            VocabEntry {
                name: CanonicalEvent::new(format!("{first}_{second}_{k:02}")).expect("non-empty"),
                action: ACTIONS[k % ACTIONS.len()].clone(),
                words: [first, second],
            }
        })
        .collect()
}

impl SyntheticCorpusSpec {
    /// Number of vocabulary entries each app realizes.
    pub fn realized_per_app(&self) -> usize {
        ((self.canonical_coverage * self.n_canonical as f64).round() as usize).clamp(1, self.n_canonical.max(1))
    }

    pub fn app_ids(&self) -> Vec<String> {
        (0..self.n_apps)
            .map(|i| format!("{}{i:02}", self.app_prefix))
            .collect()
    }

    pub fn check(&self) -> Result<(), GenerationError> {
        let counts = [
            ("n_apps", self.n_apps),
            ("activities_per_app", self.activities_per_app),
            ("events_per_activity", self.events_per_activity),
            ("n_canonical", self.n_canonical),
            ("tests_per_app", self.tests_per_app),
            ("test_length_range[0]", self.test_length_range[0]),
        ];
        if let Some((name, _)) = counts.iter().find(|(_, v)| *v == 0) {
            return Err(GenerationError::InvalidSpec(format!("{name} must be at least 1")));
        }
        if !(self.canonical_coverage > 0.0 && self.canonical_coverage <= 1.0) {
            return Err(GenerationError::InvalidSpec(format!(
                "canonical_coverage {} is outside (0, 1]",
                self.canonical_coverage
            )));
        }
        if !(0.0..1.0).contains(&self.test_dropout) {
            return Err(GenerationError::InvalidSpec(format!(
                "test_dropout {} is outside [0, 1)",
                self.test_dropout
            )));
        }
        let [min, max] = self.test_length_range;
        if min > max {
            return Err(GenerationError::InvalidSpec(format!(
                "test_length_range [{min}, {max}] is empty"
            )));
        }
        let events = self.activities_per_app * self.events_per_activity;
        if max > events {
            return Err(GenerationError::Infeasible(format!(
                "tests of length {max} exceed the {events} events an app has"
            )));
        }
        if self.realized_per_app() > events {
            return Err(GenerationError::Infeasible(format!(
                "{} canonical events cannot be realized on {events} elements",
                self.realized_per_app()
            )));
        }
        Ok(())
    }
}

/// Builds a corpus from `spec`; the same spec always yields the same corpus.
pub fn generate_synthetic_corpus(spec: &SyntheticCorpusSpec) -> Result<Corpus, GenerationError> {
    spec.check()?;
    let mut rng = SplitMix64::new(spec.seed);
    let vocab = vocabulary(spec.n_canonical);
    let realized = spec.realized_per_app();
    let n_events = spec.activities_per_app * spec.events_per_activity;
    let activity = |a: usize| format!("Activity{a}");

    let [min_len, max_len] = spec.test_length_range;
    let flows: Vec<Vec<usize>> = (0..spec.tests_per_app)
        .map(|_| {
            let len = min_len + rng.index(max_len - min_len + 1);
            (0..len).map(|_| rng.index(vocab.len())).collect()
        })
        .collect();

    let mut corpus = Corpus::default();
    for app_id in spec.app_ids() {
        let mut labels: Vec<usize> = (0..vocab.len()).collect();
        rng.shuffle(&mut labels);
        labels.truncate(realized);
        let mut assignment = labels.clone();
        while assignment.len() < n_events {
            assignment.push(labels[rng.index(labels.len())]);
        }
        rng.shuffle(&mut assignment);

        let mut model = AppModel {
            app_id: app_id.clone(),
            main_activity: activity(0),
            activities: (0..spec.activities_per_app).map(activity).collect(),
            events_by_activity: Default::default(),
        };
        let mut can_map = CanonicalMap::new(app_id.clone());
        let mut elements: Vec<Element> = Vec::with_capacity(n_events);
        for (g, &label) in assignment.iter().enumerate() {
            let a = g / spec.events_per_activity;
            let e = g % spec.events_per_activity;
            let entry = &vocab[label];
            let next = if e == 0 {
                (a + 1) % spec.activities_per_app
            } else {
                rng.index(spec.activities_per_app)
            };
            let mut tokens: Vec<String> = entry.words.iter().map(|w| w.to_string()).collect();
            if rng.index(2) == 0 {
                tokens.push(WORDS[rng.index(WORDS.len())].to_string());
            }
            let locator = format!("{app_id}:id/{}_{g:03}", entry.words[0]);
            can_map
                .insert(locator.clone(), entry.name.clone())
                .expect("generated locators are unique");
            elements.push(Element {
                activity: a,
                label,
                next,
                event: ModelEvent {
                    locator,
                    action: entry.action.clone(),
                    next_activity: activity(next),
                    label_tokens: tokens,
                },
            });
        }
        for el in &elements {
            model
                .events_by_activity
                .entry(activity(el.activity))
                .or_default()
                .push(el.event.clone());
        }

        let mut tests = Vec::new();
        for (j, flow) in flows.iter().enumerate() {
            let mut current = 0;
            let mut events = Vec::with_capacity(flow.len());
            for (step, &want) in flow.iter().enumerate() {
                let here: Vec<&Element> = elements.iter().filter(|el| el.activity == current).collect();
                let chosen = match here.iter().find(|el| el.label == want) {
                    Some(hit) => *hit,
                    None => here[rng.index(here.len())],
                };
                let input = format!("value-{j}-{step}");
                events.push(
                    GuiEvent::retarget(&chosen.event.locator, &chosen.event.action, Some(&input))
                        .expect("generated events are well-formed"),
                );
                current = chosen.next;
            }
            tests.push(TestCase::new(app_id.clone(), format!("t{j:02}"), Role::Source, events).expect("non-empty test"));
        }
        let keep: Vec<bool> = tests
            .iter()
            .map(|_| spec.test_dropout == 0.0 || rng.next_unit_open() >= spec.test_dropout)
            .collect();
        let any_kept = keep.iter().any(|k| *k);
        let app_tests = corpus.tests.entry(app_id.clone()).or_default();
        for (idx, test) in tests.into_iter().enumerate() {
            if keep[idx] || (!any_kept && idx == 0) {
                app_tests.insert(test.test_id().to_string(), test);
            }
        }
        corpus.apps.insert(app_id.clone(), model);
        corpus.canonical.insert(app_id, can_map);
    }
    Ok(corpus)
}

struct Element {
    activity: usize,
    label: usize,
    next: usize,
    event: ModelEvent,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::validate_corpus;

    pub(crate) fn spec(seed: u64) -> SyntheticCorpusSpec {
        SyntheticCorpusSpec {
            n_apps: 4,
            activities_per_app: 3,
            events_per_activity: 5,
            n_canonical: 20,
            tests_per_app: 3,
            test_length_range: [2, 6],
            canonical_coverage: 0.5,
            seed,
            app_prefix: "app".into(),
            test_dropout: 0.0,
        }
    }

    #[test]
    fn generated_corpus_is_valid() {
        let corpus = generate_synthetic_corpus(&spec(1)).unwrap();
        let report = validate_corpus(&corpus);
        assert!(report.is_ok(), "{:?}", report.violations);
        assert_eq!(corpus.apps.len(), 4);
        assert!(corpus.tests.values().all(|t| t.len() == 3));
    }

    #[test]
    fn deterministic_per_seed() {
        let a = serde_json::to_vec(&generate_synthetic_corpus(&spec(1)).unwrap()).unwrap();
        let b = serde_json::to_vec(&generate_synthetic_corpus(&spec(1)).unwrap()).unwrap();
        let c = serde_json::to_vec(&generate_synthetic_corpus(&spec(2)).unwrap()).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn coverage_fixes_range_size() {
        let corpus = generate_synthetic_corpus(&spec(3)).unwrap();
        for map in corpus.canonical.values() {
            assert_eq!(map.labels().len(), 10);
        }
    }

    #[test]
    fn test_lengths_within_range() {
        let corpus = generate_synthetic_corpus(&spec(4)).unwrap();
        for test in corpus.tests.values().flat_map(|t| t.values()) {
            assert!((2..=6).contains(&test.len()));
        }
    }

    #[test]
    fn infeasible_and_invalid_specs() {
        let mut s = spec(1);
        s.test_length_range = [2, 16];
        assert!(matches!(generate_synthetic_corpus(&s), Err(GenerationError::Infeasible(_))));
        let mut s = spec(1);
        s.canonical_coverage = 0.0;
        assert!(matches!(generate_synthetic_corpus(&s), Err(GenerationError::InvalidSpec(_))));
        let mut s = spec(1);
        s.n_apps = 0;
        assert!(matches!(generate_synthetic_corpus(&s), Err(GenerationError::InvalidSpec(_))));
        let mut s = spec(1);
        s.test_length_range = [4, 3];
        assert!(generate_synthetic_corpus(&s).is_err());
        let mut s = spec(1);
        s.n_canonical = 40;
        s.canonical_coverage = 1.0;
        assert!(matches!(generate_synthetic_corpus(&s), Err(GenerationError::Infeasible(_))));
    }

    #[test]
    fn dropout_removes_some_tests() {
        let mut s = spec(5);
        s.n_apps = 8;
        s.tests_per_app = 6;
        s.test_dropout = 0.5;
        let corpus = generate_synthetic_corpus(&s).unwrap();
        let total: usize = corpus.tests.values().map(|t| t.len()).sum();
        assert!((8..48).contains(&total), "{total}");
    }
}
