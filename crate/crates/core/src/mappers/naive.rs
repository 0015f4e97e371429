use crate::model::{AppModel, GuiEvent, ModelError};
use crate::rng::SplitMix64;

use super::MapperConfig;

/// Random lower-bound mapper.
///
/// Starting at the target's main activity, each source event walks the
/// current activity's events in a freshly shuffled order. Every candidate
/// with the source's action gets a similarity drawn uniformly from (0, 1); the
/// first draw strictly above the threshold wins and the walk moves to that
/// event's next activity. Otherwise the source event maps to null and the
/// current activity is kept.
pub fn naive_map(
    src_events: &[GuiEvent],
    target: &AppModel,
    cfg: &MapperConfig,
) -> Result<Vec<Option<GuiEvent>>, ModelError> {
    let mut rng = SplitMix64::new(cfg.seed);
    let mut current = target.main_activity.as_str();
    let mut out = Vec::with_capacity(src_events.len());
    for src in src_events {
        let mut candidates: Vec<_> = target.events_at(current).iter().collect();
        rng.shuffle(&mut candidates);
        let mut mapped = None;
        for candidate in candidates {
            if &candidate.action != src.action() {
                continue;
            }
            let similarity = rng.next_unit_open();
            if similarity > cfg.threshold {
                mapped = Some(candidate);
                break;
            }
        }
        match mapped {
            Some(candidate) => {
                out.push(Some(candidate.to_event(src.input())?));
                current = candidate.next_activity.as_str();
            }
            None => out.push(None),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Action, ModelEvent};

    fn model() -> AppModel {
        let ev = |l: &str, a: Action, next: &str| ModelEvent {
            locator: l.into(),
            action: a,
            next_activity: next.into(),
            label_tokens: vec![],
        };
        AppModel {
            app_id: "t".into(),
            main_activity: "Main".into(),
            activities: ["Main".to_string(), "Form".to_string()].into(),
            events_by_activity: [
                (
                    "Main".to_string(),
                    vec![ev("go", Action::Click, "Form"), ev("menu", Action::LongPress, "Main")],
                ),
                (
                    "Form".to_string(),
                    vec![
                        ev("name", Action::SendKeys, "Form"),
                        ev("mail", Action::SendKeys, "Form"),
                        ev("ok", Action::Click, "Main"),
                    ],
                ),
            ]
            .into(),
        }
    }

    fn cfg(threshold: f64, seed: u64) -> MapperConfig {
        MapperConfig::new("naive", threshold, seed).unwrap()
    }

    #[test]
    fn threshold_one_never_maps() {
        let src = vec![GuiEvent::click("a"), GuiEvent::send_keys("b", "x"), GuiEvent::click("c")];
        for seed in 0..20 {
            assert_eq!(naive_map(&src, &model(), &cfg(1.0, seed)).unwrap(), vec![None, None, None]);
        }
    }

    #[test]
    fn threshold_zero_single_candidate_always_maps() {
        let src = vec![GuiEvent::click("a")];
        for seed in 0..50 {
            assert_eq!(
                naive_map(&src, &model(), &cfg(0.0, seed)).unwrap(),
                vec![Some(GuiEvent::click("go"))]
            );
        }
    }

    #[test]
    fn walk_follows_next_activity_and_keeps_input() {
        let src = vec![GuiEvent::click("a"), GuiEvent::send_keys("b", "hello")];
        let out = naive_map(&src, &model(), &cfg(0.0, 9)).unwrap();
        let second = out[1].as_ref().unwrap();
        assert!(["name", "mail"].contains(&second.locator()));
        assert_eq!(second.input(), Some("hello"));
    }

    #[test]
    fn unmatched_action_keeps_current_activity() {
        // No send_keys on Main: null, then the click is still matched on Main.
        let src = vec![GuiEvent::send_keys("b", "x"), GuiEvent::click("a")];
        let out = naive_map(&src, &model(), &cfg(0.0, 1)).unwrap();
        assert_eq!(out, vec![None, Some(GuiEvent::click("go"))]);
    }

    #[test]
    fn same_seed_same_output() {
        let src = vec![GuiEvent::click("a"), GuiEvent::send_keys("b", "x"), GuiEvent::click("c")];
        let a = naive_map(&src, &model(), &cfg(0.5, 42)).unwrap();
        let b = naive_map(&src, &model(), &cfg(0.5, 42)).unwrap();
        assert_eq!(a, b);
    }
}
