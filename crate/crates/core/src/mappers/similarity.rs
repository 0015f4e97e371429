use std::cmp::Ordering;
use std::collections::BTreeSet;

use crate::model::{AppModel, GuiEvent};

use super::{MapperConfig, MapperError};

/// Jaccard index of two token sets; two empty sets score 0.
pub fn jaccard(a: &[String], b: &[String]) -> f64 {
    let a: BTreeSet<&str> = a.iter().map(String::as_str).collect();
    let b: BTreeSet<&str> = b.iter().map(String::as_str).collect();
    let union = a.union(&b).count();
    if union == 0 {
        return 0.0;
    }
    a.intersection(&b).count() as f64 / union as f64
}

/// Reference similarity-based mapper.
///
/// Explores the target like the random baseline, but ranks the current
/// activity's candidates by label-token similarity to the source element
/// (highest first, ties by ascending locator) and takes the first candidate
/// with the source's action whose score strictly exceeds the threshold.
pub fn similarity_map(
    src_events: &[GuiEvent],
    source: &AppModel,
    target: &AppModel,
    cfg: &MapperConfig,
) -> Result<Vec<Option<GuiEvent>>, MapperError> {
    let mut current = target.main_activity.as_str();
    let mut out = Vec::with_capacity(src_events.len());
    for src in src_events {
        let (_, src_model) = source
            .find(src.locator())
            .ok_or_else(|| MapperError::ModelGap {
                app_id: source.app_id.clone(),
                locator: src.locator().to_string(),
            })?;
        let mut ranked: Vec<_> = target
            .events_at(current)
            .iter()
            .map(|c| (jaccard(&src_model.label_tokens, &c.label_tokens), c))
            .collect();
        ranked.sort_by(|(sa, a), (sb, b)| {
            sb.partial_cmp(sa)
                .unwrap_or(Ordering::Equal)
                .then_with(|| a.locator.cmp(&b.locator))
        });
        let hit = ranked
            .into_iter()
            .find(|(score, c)| &c.action == src.action() && *score > cfg.threshold);
        match hit {
            Some((_, c)) => {
                out.push(Some(c.to_event(src.input())?));
                current = c.next_activity.as_str();
            }
            None => out.push(None),
        }
    }
    Ok(out)
}
