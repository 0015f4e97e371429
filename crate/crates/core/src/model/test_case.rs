use std::fmt;

use serde::{Deserialize, Serialize};

use super::{GuiEvent, ModelError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Role {
    Source,
    Transferred,
    GroundTruth,
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Role::Source => "source",
            Role::Transferred => "transferred",
            Role::GroundTruth => "ground_truth",
        })
    }
}

/// A usage-based test: an ordered sequence of GUI events of one app.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawTestCase")]
pub struct TestCase {
    app_id: String,
    test_id: String,
    role: Role,
    events: Vec<GuiEvent>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTestCase {
    app_id: String,
    test_id: String,
    role: Role,
    events: Vec<GuiEvent>,
}

impl TryFrom<RawTestCase> for TestCase {
    type Error = ModelError;

    fn try_from(raw: RawTestCase) -> Result<Self, Self::Error> {
        TestCase::new(raw.app_id, raw.test_id, raw.role, raw.events)
    }
}

impl TestCase {
    /// Only transferred tests may be empty (every source event mapped to null).
    pub fn new(
        app_id: impl Into<String>,
        test_id: impl Into<String>,
        role: Role,
        events: Vec<GuiEvent>,
    ) -> Result<Self, ModelError> {
        let app_id = app_id.into();
        let test_id = test_id.into();
        if app_id.is_empty() || test_id.is_empty() {
            return Err(ModelError::EmptyIdentifier);
        }
        if events.is_empty() && role != Role::Transferred {
            return Err(ModelError::EmptyTest { app_id, test_id, role });
        }
        Ok(TestCase {
            app_id,
            test_id,
            role,
            events,
        })
    }

    pub fn app_id(&self) -> &str {
        &self.app_id
    }

    pub fn test_id(&self) -> &str {
        &self.test_id
    }

    pub fn role(&self) -> Role {
        self.role
    }

    pub fn events(&self) -> &[GuiEvent] {
        &self.events
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    /// The same events viewed under another role. An app's own test is the
    /// source when transferring out and the ground truth when transferring in.
    pub fn with_role(&self, role: Role) -> Result<Self, ModelError> {
        TestCase::new(self.app_id.clone(), self.test_id.clone(), role, self.events.clone())
    }
}
