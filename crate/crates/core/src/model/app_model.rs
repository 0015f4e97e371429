use std::collections::{BTreeMap, BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use super::{Action, GuiEvent, ModelError};
use crate::corpus::Violation;

/// An actionable element of an activity and the activity its action leads to.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelEvent {
    pub locator: String,
    pub action: Action,
    pub next_activity: String,
    /// Words describing the element (text, content description, resource id parts).
    #[serde(default)]
    pub label_tokens: Vec<String>,
}

impl ModelEvent {
    /// The GUI event triggering this element, with `input` for text entry.
    pub fn to_event(&self, input: Option<&str>) -> Result<GuiEvent, ModelError> {
        GuiEvent::retarget(&self.locator, &self.action, input)
    }
}

/// Activity graph of an app with the events available on each activity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AppModel {
    pub app_id: String,
    pub main_activity: String,
    pub activities: BTreeSet<String>,
    pub events_by_activity: BTreeMap<String, Vec<ModelEvent>>,
}

impl AppModel {
    pub fn events_at(&self, activity: &str) -> &[ModelEvent] {
        self.events_by_activity
            .get(activity)
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    /// First element with `locator`, scanning activities in name order.
    pub fn find(&self, locator: &str) -> Option<(&str, &ModelEvent)> {
        self.events_by_activity.iter().find_map(|(activity, events)| {
            events
                .iter()
                .find(|e| e.locator == locator)
                .map(|e| (activity.as_str(), e))
        })
    }

    pub fn all_events(&self) -> impl Iterator<Item = (&str, &ModelEvent)> {
        self.events_by_activity
            .iter()
            .flat_map(|(a, events)| events.iter().map(move |e| (a.as_str(), e)))
    }

    /// Whether some element of the app has this locator and action.
    pub fn contains(&self, event: &GuiEvent) -> bool {
        self.all_events()
            .any(|(_, e)| e.locator == event.locator() && &e.action == event.action())
    }

    /// Structural invariants: main and next activities are declared, and each
    /// `(activity, locator)` pair is unique.
    pub fn violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let app = || self.app_id.clone();
        if !self.activities.contains(&self.main_activity) {
            out.push(Violation::UnknownActivity {
                app_id: app(),
                activity: self.main_activity.clone(),
                referenced_by: "main_activity".into(),
            });
        }
        for (activity, events) in &self.events_by_activity {
            if !self.activities.contains(activity) {
                out.push(Violation::UnknownActivity {
                    app_id: app(),
                    activity: activity.clone(),
                    referenced_by: "events_by_activity".into(),
                });
            }
            let mut seen = HashSet::new();
            for event in events {
                if !seen.insert(event.locator.as_str()) {
                    out.push(Violation::DuplicateModelEvent {
                        app_id: app(),
                        activity: activity.clone(),
                        locator: event.locator.clone(),
                    });
                }
                if !self.activities.contains(&event.next_activity) {
                    out.push(Violation::UnknownActivity {
                        app_id: app(),
                        activity: event.next_activity.clone(),
                        referenced_by: format!("{activity}/{}", event.locator),
                    });
                }
            }
        }
        out
    }
}
