use serde::{Deserialize, Serialize};

use super::{FidelityMetrics, FidelitySets, GuiEvent, UtilityMetrics};

/// Full record of one transfer: who, what was produced, and how it scored.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultEntry<T> {
    pub source_app: String,
    pub target_app: String,
    pub test_id: String,
    pub technique: String,
    pub source_events: Vec<GuiEvent>,
    /// Positional mapping output; `None` marks a null event.
    pub mapped_events: Vec<Option<GuiEvent>>,
    /// The transferred test as evaluated for utility (nulls stripped, ancillary kept).
    pub transferred_events: Vec<GuiEvent>,
    pub gt_events: Vec<GuiEvent>,
    pub fidelity_sets: FidelitySets,
    pub fidelity_metrics: FidelityMetrics<T>,
    pub utility_metrics: UtilityMetrics<T>,
}
