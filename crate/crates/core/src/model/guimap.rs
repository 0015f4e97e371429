use serde::{Deserialize, Serialize};

use super::GuiEvent;

/// One source event and what a technique transferred it to (`None` is a null event).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MappedPair {
    pub src: GuiEvent,
    pub trans: Option<GuiEvent>,
}

/// A technique's event mapping for one source test transferred from
/// `source_app` to `target_app`. Pairs follow the source test's event order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GuiMap {
    pub source_app: String,
    pub target_app: String,
    pub technique: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub test_id: Option<String>,
    pub pairs: Vec<MappedPair>,
    /// Full transferred test, including ancillary events the technique added.
    /// When absent, the transferred test is the non-null targets of `pairs`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub transferred: Option<Vec<GuiEvent>>,
}

impl GuiMap {
    pub fn source_events(&self) -> impl Iterator<Item = &GuiEvent> {
        self.pairs.iter().map(|p| &p.src)
    }

    /// The transferred test with null events stripped.
    pub fn transferred_test(&self) -> Vec<GuiEvent> {
        match &self.transferred {
            Some(events) => events.clone(),
            None => self.pairs.iter().filter_map(|p| p.trans.clone()).collect(),
        }
    }

    pub fn null_count(&self) -> usize {
        self.pairs.iter().filter(|p| p.trans.is_none()).count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn null_pairs_serialize_as_json_null() {
        let map = GuiMap {
            source_app: "wish".into(),
            target_app: "etsy".into(),
            technique: "perfect".into(),
            test_id: None,
            pairs: vec![
                MappedPair { src: GuiEvent::click("a"), trans: Some(GuiEvent::click("b")) },
                MappedPair { src: GuiEvent::click("c"), trans: None },
            ],
            transferred: None,
        };
        let json = serde_json::to_string(&map).unwrap();
        assert!(json.contains(r#""trans":null"#));
        assert!(!json.contains("transferred"));
        assert_eq!(map.transferred_test(), vec![GuiEvent::click("b")]);
        assert_eq!(map.null_count(), 1);
    }
}
