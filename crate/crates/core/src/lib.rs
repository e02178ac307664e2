//! Evidence hunting for commonsense pronoun resolution.
//!
//! A Winograd schema instance is decomposed into context and query
//! predicates, turned into pairs of search terms, matched against a corpus
//! (or a recorded fixture file), and every retrieved snippet is labelled as
//! evidence for the agent or the patient of the context predicate. Summed
//! evidence strengths decide the resolution. COPA instances reuse the same
//! machinery with a premise/alternative query layout.
//!
//! The numeric parts (taxonomy similarity, the semantic query filter and
//! the evaluation metrics) are generic over the scalar type; the aliases
//! below fix the common choices.

pub mod error;
pub mod evalharness;
pub mod evidence;
pub mod lexicon;
pub mod pipeline;
pub mod querygen;
pub mod resolver;
pub mod retrieval;
pub mod scalar;
pub mod schema;
pub mod text;

pub use error::{Error, Result};
pub use scalar::{Real, Scalar};

/// Default floating-point type for similarity scores and metrics.
pub type Score = f64;

/// Exact rational used to cross-check metrics computed from integer counts.
pub type Exact = num_rational::Ratio<i64>;

/// Precision/recall/F1 in the default float type.
pub type Metrics = evalharness::MetricSet<Score>;

/// Precision/recall/F1 as exact fractions.
pub type ExactMetrics = evalharness::MetricSet<Exact>;

/// Evaluation report in the default float type.
pub type EvalReport = evalharness::EvalReport<Score>;
