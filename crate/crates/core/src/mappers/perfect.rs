use std::collections::BTreeMap;

use crate::model::{CanonicalEvent, CanonicalMap, GuiEvent};

use super::MapperError;

/// Upper-bound mapper built from the ground truth: each source event goes to
/// its canonical event and from there to the target locator carrying the same
/// canonical event. When several target locators share it, the smallest
/// locator wins. Source events whose canonical event the target lacks map to
/// null.
pub fn perfect_map(
    src_events: &[GuiEvent],
    src_can_map: &CanonicalMap,
    tgt_can_map: &CanonicalMap,
) -> Result<Vec<Option<GuiEvent>>, MapperError> {
    let mut inverse: BTreeMap<&CanonicalEvent, &str> = BTreeMap::new();
    for (locator, event) in tgt_can_map.iter() {
        // iter() is locator-ordered, so the first locator seen is the smallest.
        inverse.entry(event).or_insert(locator);
    }
    src_events
        .iter()
        .map(|src| {
            let canonical = src_can_map
                .get(src.locator())
                .ok_or_else(|| MapperError::GroundTruthGap {
                    app_id: src_can_map.app_id.clone(),
                    locator: src.locator().to_string(),
                })?;
            inverse
                .get(canonical)
                .map(|locator| GuiEvent::retarget(locator, src.action(), src.input()))
                .transpose()
                .map_err(MapperError::from)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wish_to_etsy_sign_in() {
        let wish = CanonicalMap::from_pairs(
            "wish",
            [("a1-1", "signin_email"), ("a1-2", "signin_password"), ("a1-3", "signin_button")],
        )
        .unwrap();
        let etsy = CanonicalMap::from_pairs(
            "etsy",
            [
                ("b1-1", "open_account"),
                ("b2-1", "signin_entry"),
                ("b3-1", "signin_email"),
                ("b3-2", "signin_password"),
                ("b3-3", "signin_button"),
            ],
        )
        .unwrap();
        let src = vec![
            GuiEvent::send_keys("a1-1", "u@x.com"),
            GuiEvent::send_keys("a1-2", "pw"),
            GuiEvent::click("a1-3"),
        ];
        assert_eq!(
            perfect_map(&src, &wish, &etsy).unwrap(),
            vec![
                Some(GuiEvent::send_keys("b3-1", "u@x.com")),
                Some(GuiEvent::send_keys("b3-2", "pw")),
                Some(GuiEvent::click("b3-3")),
            ]
        );
    }

    #[test]
    fn missing_counterpart_is_null() {
        let s = CanonicalMap::from_pairs("s", [("x", "wishlist")]).unwrap();
        let t = CanonicalMap::from_pairs("t", [("y", "cart")]).unwrap();
        assert_eq!(perfect_map(&[GuiEvent::click("x")], &s, &t).unwrap(), vec![None]);
    }

    #[test]
    fn collisions_resolve_to_smallest_locator() {
        let s = CanonicalMap::from_pairs("s", [("x", "search")]).unwrap();
        let t = CanonicalMap::from_pairs("t", [("zz", "search"), ("b", "search"), ("m", "search")]).unwrap();
        assert_eq!(
            perfect_map(&[GuiEvent::click("x")], &s, &t).unwrap(),
            vec![Some(GuiEvent::click("b"))]
        );
    }

    #[test]
    fn unlabeled_source_event_is_a_gap() {
        let s = CanonicalMap::from_pairs("s", [("x", "search")]).unwrap();
        assert!(matches!(
            perfect_map(&[GuiEvent::click("q")], &s, &s),
            Err(MapperError::GroundTruthGap { .. })
        ));
    }
}
