//! Utility of a transferred test: how many event edits turn it into the
//! ground-truth test (effort), and what share of writing the ground truth
//! from scratch that saves (reduction).

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{GuiEvent, Role, TestCase, UtilityMetrics};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UtilityError {
    #[error("invalid ground truth: {0}")]
    InvalidGroundTruth(String),
}

/// How two events are compared when counting edit steps.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EqualityMode {
    /// Locator and action; input values are ignored.
    #[default]
    Lenient,
    /// Locator, action and input.
    Strict,
}

pub fn event_equal(a: &GuiEvent, b: &GuiEvent, mode: EqualityMode) -> bool {
    match mode {
        EqualityMode::Lenient => a.locator() == b.locator() && a.action() == b.action(),
        EqualityMode::Strict => a == b,
    }
}

/// Unit-cost Levenshtein distance between two sequences under `eq`.
pub fn edit_distance_by<T>(a: &[T], b: &[T], mut eq: impl FnMut(&T, &T) -> bool) -> usize {
    let (a, b) = if a.len() < b.len() { (b, a) } else { (a, b) };
    let mut prev: Vec<usize> = (0..=b.len()).collect();
    let mut cur = vec![0; b.len() + 1];
    for (i, x) in a.iter().enumerate() {
        cur[0] = i + 1;
        for (j, y) in b.iter().enumerate() {
            let substitute = prev[j] + usize::from(!eq(x, y));
            cur[j + 1] = substitute.min(prev[j + 1] + 1).min(cur[j] + 1);
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[b.len()]
}

/// Edit steps (insert, delete, substitute one event) from `transferred` to
/// `ground_truth`. `transferred` must not contain null placeholders.
pub fn effort(transferred: &[GuiEvent], ground_truth: &[GuiEvent], mode: EqualityMode) -> usize {
    edit_distance_by(transferred, ground_truth, |a, b| event_equal(a, b, mode))
}

/// `(gt_length - effort) / gt_length`; negative when repairing the transfer
/// costs more than writing the ground truth.
pub fn reduction<T: Scalar>(gt_length: usize, effort: usize) -> Result<T, UtilityError> {
    if gt_length == 0 {
        return Err(UtilityError::InvalidGroundTruth(
            "ground-truth test has no events".into(),
        ));
    }
    let saved = gt_length as i64 - effort as i64;
    Ok(T::from_signed(saved) / T::from_count(gt_length))
}

/// Effort and reduction of a transferred test against its ground truth.
pub fn evaluate_utility<T: Scalar>(
    transferred: &TestCase,
    ground_truth: &TestCase,
    mode: EqualityMode,
) -> Result<UtilityMetrics<T>, UtilityError> {
    if ground_truth.role() != Role::GroundTruth {
        return Err(UtilityError::InvalidGroundTruth(format!(
            "{}/{} has role {}",
            ground_truth.app_id(),
            ground_truth.test_id(),
            ground_truth.role()
        )));
    }
    utility_of_events(transferred.events(), ground_truth.events(), mode)
}

/// Event-level form of [`evaluate_utility`].
pub fn utility_of_events<T: Scalar>(
    transferred: &[GuiEvent],
    ground_truth: &[GuiEvent],
    mode: EqualityMode,
) -> Result<UtilityMetrics<T>, UtilityError> {
    let effort = effort(transferred, ground_truth, mode);
    Ok(UtilityMetrics {
        effort,
        reduction: reduction(ground_truth.len(), effort)?,
        gt_length: ground_truth.len(),
    })
}

/// Utility against the closest of several acceptable ground truths (minimum
/// effort; ties keep the first).
pub fn evaluate_utility_best<T: Scalar>(
    transferred: &TestCase,
    ground_truths: &[TestCase],
    mode: EqualityMode,
) -> Result<UtilityMetrics<T>, UtilityError> {
    let mut best: Option<UtilityMetrics<T>> = None;
    for gt in ground_truths {
        let m = evaluate_utility(transferred, gt, mode)?;
        if best.as_ref().is_none_or(|b| m.effort < b.effort) {
            best = Some(m);
        }
    }
    best.ok_or_else(|| UtilityError::InvalidGroundTruth("no ground-truth tests given".into()))
}
