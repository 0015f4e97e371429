//! Shared domain types.

mod app_model;
mod canonical;
mod event;
mod guimap;
mod metrics;
mod result;
mod test_case;

use thiserror::Error;

pub use app_model::{AppModel, ModelEvent};
pub use canonical::{CanonicalEvent, CanonicalMap};
pub use event::{Action, GuiEvent};
pub use guimap::{GuiMap, MappedPair};
pub use metrics::{FidelityClass, FidelityMetrics, FidelitySets, UtilityMetrics};
pub use result::ResultEntry;
pub use test_case::{Role, TestCase};

/// Violation of a domain type invariant at construction time.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("locator must not be empty")]
    EmptyLocator,
    #[error("action name must not be empty")]
    EmptyAction,
    #[error("identifier must not be empty")]
    EmptyIdentifier,
    #[error("send_keys event on `{locator}` requires an input value")]
    MissingInput { locator: String },
    #[error("{action} event on `{locator}` must not carry an input value")]
    UnexpectedInput { locator: String, action: Action },
    #[error("canonical event name must not be empty")]
    EmptyCanonicalName,
    #[error("locator `{locator}` appears more than once in {scope}")]
    DuplicateLocator { scope: String, locator: String },
    #[error("{role} test {app_id}/{test_id} has no events")]
    EmptyTest {
        app_id: String,
        test_id: String,
        role: Role,
    },
}
