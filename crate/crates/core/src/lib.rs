//! Automated evaluation of UI test reuse across apps.
//!
//! Source tests (scripts or event lists) become GUI event sequences, a mapper
//! transfers them to a target app, and each transfer is scored for fidelity
//! (how each source event was mapped) and utility (how much editing the
//! transferred test still needs to match the target's ground truth).

pub mod corpus;
mod error;
pub mod extract;
pub mod fidelity;
pub mod harness;
pub mod mappers;
pub mod model;
pub mod report;
pub mod rng;
pub mod scalar;
pub mod utility;

use num_rational::Rational64;

pub use corpus::{validate_corpus, Corpus, ValidationReport, Violation};
pub use error::{read_json, write_json, Error};
pub use model::*;
pub use scalar::Scalar;

pub type FidelityMetricsF64 = FidelityMetrics<f64>;
pub type FidelityMetricsExact = FidelityMetrics<Rational64>;
pub type UtilityMetricsF64 = UtilityMetrics<f64>;
pub type UtilityMetricsExact = UtilityMetrics<Rational64>;
pub type ResultEntryF64 = ResultEntry<f64>;
pub type ResultEntryExact = ResultEntry<Rational64>;
