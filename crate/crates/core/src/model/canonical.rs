use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::de::{MapAccess, Visitor};
use serde::{Deserialize, Deserializer, Serialize};

use super::ModelError;

/// Name of an abstract event shared by semantically equivalent app events,
/// e.g. `signin_password`. Vocabularies are fine-grained: `signin_password`
/// and `signup_password` are different canonical events.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct CanonicalEvent(String);

impl CanonicalEvent {
    pub fn new(name: impl Into<String>) -> Result<Self, ModelError> {
        let name = name.into();
        if name.is_empty() {
            return Err(ModelError::EmptyCanonicalName);
        }
        Ok(CanonicalEvent(name))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl TryFrom<String> for CanonicalEvent {
    type Error = ModelError;

    fn try_from(value: String) -> Result<Self, Self::Error> {
        CanonicalEvent::new(value)
    }
}

impl From<CanonicalEvent> for String {
    fn from(value: CanonicalEvent) -> Self {
        value.0
    }
}

impl fmt::Display for CanonicalEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Ground-truth function from one app's locators to canonical events.
///
/// Several locators may share a canonical event; a locator maps to at most one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalMap {
    pub app_id: String,
    #[serde(deserialize_with = "unique_entries")]
    entries: BTreeMap<String, CanonicalEvent>,
}

impl CanonicalMap {
    pub fn new(app_id: impl Into<String>) -> Self {
        CanonicalMap {
            app_id: app_id.into(),
            entries: BTreeMap::new(),
        }
    }

    /// Builds a map from `(locator, canonical name)` pairs, rejecting repeated locators.
    pub fn from_pairs<L, C>(
        app_id: impl Into<String>,
        pairs: impl IntoIterator<Item = (L, C)>,
    ) -> Result<Self, ModelError>
    where
        L: Into<String>,
        C: Into<String>,
    {
        let mut map = CanonicalMap::new(app_id);
        for (locator, name) in pairs {
            map.insert(locator, CanonicalEvent::new(name)?)?;
        }
        Ok(map)
    }

    pub fn insert(
        &mut self,
        locator: impl Into<String>,
        event: CanonicalEvent,
    ) -> Result<(), ModelError> {
        let locator = locator.into();
        if locator.is_empty() {
            return Err(ModelError::EmptyLocator);
        }
        if self.entries.contains_key(&locator) {
            return Err(ModelError::DuplicateLocator {
                scope: self.app_id.clone(),
                locator,
            });
        }
        self.entries.insert(locator, event);
        Ok(())
    }

    pub fn get(&self, locator: &str) -> Option<&CanonicalEvent> {
        self.entries.get(locator)
    }

    /// Whether `event` is in the map's range, i.e. realized by some locator of the app.
    pub fn realizes(&self, event: &CanonicalEvent) -> bool {
        self.entries.values().any(|e| e == event)
    }

    /// Distinct canonical events realized by the app.
    pub fn labels(&self) -> BTreeSet<&CanonicalEvent> {
        self.entries.values().collect()
    }

    /// Locators carrying `event`, in ascending order.
    pub fn locators_for<'a>(&'a self, event: &'a CanonicalEvent) -> impl Iterator<Item = &'a str> + 'a {
        self.entries
            .iter()
            .filter(move |(_, e)| *e == event)
            .map(|(l, _)| l.as_str())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &CanonicalEvent)> {
        self.entries.iter().map(|(l, e)| (l.as_str(), e))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

fn unique_entries<'de, D>(deserializer: D) -> Result<BTreeMap<String, CanonicalEvent>, D::Error>
where
    D: Deserializer<'de>,
{
    struct UniqueVisitor;

    impl<'de> Visitor<'de> for UniqueVisitor {
        type Value = BTreeMap<String, CanonicalEvent>;

        fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
            f.write_str("an object from locator to canonical event name")
        }

        fn visit_map<A: MapAccess<'de>>(self, mut access: A) -> Result<Self::Value, A::Error> {
            let mut out = BTreeMap::new();
            while let Some((locator, event)) = access.next_entry::<String, CanonicalEvent>()? {
                if locator.is_empty() {
                    return Err(serde::de::Error::custom("empty locator"));
                }
                if out.contains_key(&locator) {
                    return Err(serde::de::Error::custom(format!(
                        "duplicate locator `{locator}`"
                    )));
                }
                out.insert(locator, event);
            }
            Ok(out)
        }
    }

    deserializer.deserialize_map(UniqueVisitor)
}
