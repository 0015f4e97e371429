use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::ExtractError;
use crate::error::Error;
use crate::model::Action;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LocatorKind {
    Id,
    Xpath,
}

/// Which API names locate elements and which trigger actions.
///
/// Swapping the table retargets the extractor to another testing framework's
/// API vocabulary without touching the parser.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ApiSignatureTable {
    pub finder_apis: BTreeMap<String, LocatorKind>,
    pub action_apis: BTreeMap<String, Action>,
    /// Action APIs whose string argument is the event's input value.
    #[serde(default)]
    pub input_bearing: BTreeSet<String>,
    /// Action APIs taking a string argument that is not an input value
    /// (e.g. a swipe direction). The argument is checked but not recorded.
    #[serde(default)]
    pub argument_apis: BTreeSet<String>,
}

impl Default for ApiSignatureTable {
    fn default() -> Self {
        ApiSignatureTable {
            finder_apis: [
                ("findElementById".to_string(), LocatorKind::Id),
                ("findElementByXPath".to_string(), LocatorKind::Xpath),
            ]
            .into(),
            action_apis: [
                ("click".to_string(), Action::Click),
                ("sendKeys".to_string(), Action::SendKeys),
                ("longPress".to_string(), Action::LongPress),
                ("swipe".to_string(), Action::Swipe),
            ]
            .into(),
            input_bearing: ["sendKeys".to_string()].into(),
            argument_apis: ["swipe".to_string()].into(),
        }
    }
}

impl ApiSignatureTable {
    /// Loads and checks a table from JSON.
    pub fn from_json_file(path: &Path) -> Result<Self, Error> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let table: ApiSignatureTable = crate::error::from_json_str(&text, path)?;
        table.check()?;
        Ok(table)
    }

    /// Consistency of the table: finder and action names are disjoint, and
    /// input-bearing APIs are exactly the `send_keys` actions.
    pub fn check(&self) -> Result<(), ExtractError> {
        let bad = |message: String| Err(ExtractError::InvalidTable { message });
        if let Some(name) = self.finder_apis.keys().find(|k| self.action_apis.contains_key(*k)) {
            return bad(format!("`{name}` is both a finder and an action API"));
        }
        for name in self.input_bearing.iter().chain(&self.argument_apis) {
            if !self.action_apis.contains_key(name) {
                return bad(format!("`{name}` takes an argument but is not an action API"));
            }
        }
        if let Some(name) = self.input_bearing.intersection(&self.argument_apis).next() {
            return bad(format!("`{name}` is listed as both input-bearing and argument API"));
        }
        for (name, action) in &self.action_apis {
            if action.takes_input() != self.input_bearing.contains(name) {
                return bad(format!(
                    "`{name}` maps to {action}; only send_keys actions may be (and must be) input-bearing"
                ));
            }
        }
        Ok(())
    }
}
