use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::ModelError;

/// Action performed on a GUI element.
///
/// The four built-in actions cover the mini-language; any other name is kept
/// verbatim as [`Action::Custom`] so alternate signature tables can introduce
/// their own actions.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Action {
    Click,
    SendKeys,
    LongPress,
    Swipe,
    Custom(String),
}

impl Action {
    pub fn as_str(&self) -> &str {
        match self {
            Action::Click => "click",
            Action::SendKeys => "send_keys",
            Action::LongPress => "long_press",
            Action::Swipe => "swipe",
            Action::Custom(name) => name,
        }
    }

    /// Only `send_keys` carries an input value.
    pub fn takes_input(&self) -> bool {
        matches!(self, Action::SendKeys)
    }
}

impl FromStr for Action {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "click" => Action::Click,
            "send_keys" => Action::SendKeys,
            "long_press" => Action::LongPress,
            "swipe" => Action::Swipe,
            "" => return Err(ModelError::EmptyAction),
            other => Action::Custom(other.to_string()),
        })
    }
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for Action {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for Action {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A GUI event: the element locator (ID or XPath), the action, and the input
/// value for text-entry actions.
///
/// Locators are opaque keys compared by exact, case-sensitive string equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawGuiEvent")]
pub struct GuiEvent {
    locator: String,
    action: Action,
    #[serde(skip_serializing_if = "Option::is_none")]
    input: Option<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGuiEvent {
    locator: String,
    action: Action,
    #[serde(default)]
    input: Option<String>,
}

impl TryFrom<RawGuiEvent> for GuiEvent {
    type Error = ModelError;

    fn try_from(raw: RawGuiEvent) -> Result<Self, Self::Error> {
        GuiEvent::new(raw.locator, raw.action, raw.input)
    }
}

impl GuiEvent {
    /// Builds an event, enforcing that the locator is non-empty and that an
    /// input is present exactly when the action is `send_keys`.
    pub fn new(
        locator: impl Into<String>,
        action: Action,
        input: Option<String>,
    ) -> Result<Self, ModelError> {
        let locator = locator.into();
        if locator.is_empty() {
            return Err(ModelError::EmptyLocator);
        }
        match (action.takes_input(), input.is_some()) {
            (true, false) => return Err(ModelError::MissingInput { locator }),
            (false, true) => return Err(ModelError::UnexpectedInput { locator, action }),
            _ => {}
        }
        Ok(GuiEvent {
            locator,
            action,
            input,
        })
    }

    pub fn click(locator: impl Into<String>) -> Self {
        Self::new(locator, Action::Click, None).expect("valid click event")
    }

    pub fn send_keys(locator: impl Into<String>, input: impl Into<String>) -> Self {
        Self::new(locator, Action::SendKeys, Some(input.into())).expect("valid send_keys event")
    }

    pub fn locator(&self) -> &str {
        &self.locator
    }

    pub fn action(&self) -> &Action {
        &self.action
    }

    pub fn input(&self) -> Option<&str> {
        self.input.as_deref()
    }

    /// The same element and action, carrying `input` when the action needs one.
    ///
    /// Mappers use this to move a source event's test data onto a target element.
    pub fn retarget(locator: &str, action: &Action, input: Option<&str>) -> Result<Self, ModelError> {
        let input = if action.takes_input() {
            Some(input.unwrap_or_default().to_string())
        } else {
            None
        };
        Self::new(locator, action.clone(), input)
    }
}

impl fmt::Display for GuiEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.input {
            Some(input) => write!(f, "{}:{}({:?})", self.locator, self.action, input),
            None => write!(f, "{}:{}", self.locator, self.action),
        }
    }
}
