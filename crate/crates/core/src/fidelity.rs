//! Fidelity evaluation: classifies each source event of a transfer as
//! correct, incorrect, missed or non-existent by comparing canonical events.

use thiserror::Error;

use crate::model::{
    CanonicalMap, FidelityClass, FidelityMetrics, FidelitySets, GuiEvent, GuiMap, MappedPair,
};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FidelityError {
    #[error("alignment error: {expected} source events but {found} mapped entries")]
    Alignment { expected: usize, found: usize },
    #[error("alignment error: GUI map entry {index} is for `{found}`, source event is `{expected}`")]
    PairMismatch {
        index: usize,
        expected: String,
        found: String,
    },
    #[error("ground-truth gap: `{locator}` has no canonical event in {app_id}")]
    GroundTruthGap { app_id: String, locator: String },
}

fn canonical<'a>(
    map: &'a CanonicalMap,
    event: &GuiEvent,
) -> Result<&'a crate::model::CanonicalEvent, FidelityError> {
    map.get(event.locator())
        .ok_or_else(|| FidelityError::GroundTruthGap {
            app_id: map.app_id.clone(),
            locator: event.locator().to_string(),
        })
}

/// Per-position fidelity class of every source event.
///
/// A non-null transfer is correct iff the transferred event's canonical event
/// equals the source's. A null transfer is missed iff the source's canonical
/// event is realized anywhere in the target app, otherwise non-existent.
/// Only canonical events are compared; actions are not.
pub fn classify_fidelity(
    src_events: &[GuiEvent],
    gui_map: &GuiMap,
    src_can_map: &CanonicalMap,
    tgt_can_map: &CanonicalMap,
) -> Result<Vec<FidelityClass>, FidelityError> {
    if gui_map.pairs.len() != src_events.len() {
        return Err(FidelityError::Alignment {
            expected: src_events.len(),
            found: gui_map.pairs.len(),
        });
    }
    src_events
        .iter()
        .zip(&gui_map.pairs)
        .enumerate()
        .map(|(index, (src, pair))| {
            if &pair.src != src {
                return Err(FidelityError::PairMismatch {
                    index,
                    expected: src.to_string(),
                    found: pair.src.to_string(),
                });
            }
            let src_can = canonical(src_can_map, src)?;
            Ok(match &pair.trans {
                Some(trans) => {
                    if canonical(tgt_can_map, trans)? == src_can {
                        FidelityClass::Correct
                    } else {
                        FidelityClass::Incorrect
                    }
                }
                None if tgt_can_map.realizes(src_can) => FidelityClass::Missed,
                None => FidelityClass::NonExist,
            })
        })
        .collect()
}

/// Splits the source events into the four fidelity sets.
pub fn evaluate_fidelity(
    src_events: &[GuiEvent],
    gui_map: &GuiMap,
    src_can_map: &CanonicalMap,
    tgt_can_map: &CanonicalMap,
) -> Result<FidelitySets, FidelityError> {
    let classes = classify_fidelity(src_events, gui_map, src_can_map, tgt_can_map)?;
    let sets = FidelitySets::from_classes(src_events.iter().zip(classes));
    debug_assert!(sets.is_partition_of(src_events));
    Ok(sets)
}

/// Correct, incorrect, non-existent and missed become TP, FP, TN and FN.
pub fn compute_fidelity_metrics<T: Scalar>(sets: &FidelitySets) -> FidelityMetrics<T> {
    FidelityMetrics::from_counts(
        sets.correct.len(),
        sets.incorrect.len(),
        sets.non_exist.len(),
        sets.missed.len(),
    )
}

/// Pairs source events with a technique's aligned output (nulls included).
pub fn derive_gui_map(
    src_events: &[GuiEvent],
    trans_events: &[Option<GuiEvent>],
    source_app: &str,
    target_app: &str,
    technique: &str,
) -> Result<GuiMap, FidelityError> {
    if src_events.len() != trans_events.len() {
        return Err(FidelityError::Alignment {
            expected: src_events.len(),
            found: trans_events.len(),
        });
    }
    Ok(GuiMap {
        source_app: source_app.to_string(),
        target_app: target_app.to_string(),
        technique: technique.to_string(),
        test_id: None,
        pairs: src_events
            .iter()
            .zip(trans_events)
            .map(|(src, trans)| MappedPair {
                src: src.clone(),
                trans: trans.clone(),
            })
            .collect(),
        transferred: None,
    })
}
