use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::GuiEvent;
use crate::scalar::Scalar;

/// Outcome of one source event under a GUI mapping.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FidelityClass {
    /// Mapped to a target event with the same canonical event (true positive).
    Correct,
    /// Mapped to a target event with a different canonical event (false positive).
    Incorrect,
    /// Not mapped although the target realizes its canonical event (false negative).
    Missed,
    /// Not mapped and the target has no such canonical event (true negative).
    NonExist,
}

/// Source events split into the four fidelity classes.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FidelitySets {
    pub correct: Vec<GuiEvent>,
    pub incorrect: Vec<GuiEvent>,
    pub missed: Vec<GuiEvent>,
    pub non_exist: Vec<GuiEvent>,
}

impl FidelitySets {
    /// Groups positionally classified source events.
    pub fn from_classes<'a>(
        classified: impl IntoIterator<Item = (&'a GuiEvent, FidelityClass)>,
    ) -> Self {
        let mut sets = FidelitySets::default();
        for (event, class) in classified {
            sets.bucket_mut(class).push(event.clone());
        }
        sets
    }

    fn bucket_mut(&mut self, class: FidelityClass) -> &mut Vec<GuiEvent> {
        match class {
            FidelityClass::Correct => &mut self.correct,
            FidelityClass::Incorrect => &mut self.incorrect,
            FidelityClass::Missed => &mut self.missed,
            FidelityClass::NonExist => &mut self.non_exist,
        }
    }

    pub fn len(&self) -> usize {
        self.correct.len() + self.incorrect.len() + self.missed.len() + self.non_exist.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Whether the four sets together hold exactly the events of `source`,
    /// counted with multiplicity.
    pub fn is_partition_of(&self, source: &[GuiEvent]) -> bool {
        if self.len() != source.len() {
            return false;
        }
        let mut counts: HashMap<&GuiEvent, isize> = HashMap::new();
        for e in source {
            *counts.entry(e).or_default() += 1;
        }
        for e in self
            .correct
            .iter()
            .chain(&self.incorrect)
            .chain(&self.missed)
            .chain(&self.non_exist)
        {
            *counts.entry(e).or_default() -= 1;
        }
        counts.values().all(|&c| c == 0)
    }
}

/// The seven fidelity metrics. Ratios are `None` when their denominator is zero.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FidelityMetrics<T> {
    pub tp: usize,
    pub fp: usize,
    pub tn: usize,
    #[serde(rename = "fn")]
    pub fn_: usize,
    pub accuracy: Option<T>,
    pub precision: Option<T>,
    pub recall: Option<T>,
}

impl<T: Scalar> FidelityMetrics<T> {
    pub fn from_counts(tp: usize, fp: usize, tn: usize, fn_: usize) -> Self {
        FidelityMetrics {
            tp,
            fp,
            tn,
            fn_,
            accuracy: T::ratio(tp + tn, tp + fp + tn + fn_),
            precision: T::ratio(tp, tp + fp),
            recall: T::ratio(tp, tp + fn_),
        }
    }

    /// Converts the ratios to another scalar type.
    pub fn to_f64(&self) -> FidelityMetrics<f64> {
        FidelityMetrics {
            tp: self.tp,
            fp: self.fp,
            tn: self.tn,
            fn_: self.fn_,
            accuracy: self.accuracy.map(Scalar::as_f64),
            precision: self.precision.map(Scalar::as_f64),
            recall: self.recall.map(Scalar::as_f64),
        }
    }
}

/// Effort (edit steps from transferred to ground-truth test) and the share of
/// manual work saved, `(gt_length - effort) / gt_length`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UtilityMetrics<T> {
    pub effort: usize,
    pub reduction: T,
    pub gt_length: usize,
}

impl<T: Scalar> UtilityMetrics<T> {
    pub fn to_f64(&self) -> UtilityMetrics<f64> {
        UtilityMetrics {
            effort: self.effort,
            reduction: self.reduction.as_f64(),
            gt_length: self.gt_length,
        }
    }
}
