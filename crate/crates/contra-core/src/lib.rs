//! Rule-based contradiction detection for pre-annotated Persian sentence
//! pairs.
//!
//! Two detection routes share one data model:
//!
//! * a feature scorer: ten normalized pair features combined by a weighted
//!   sum with a decision threshold, tuned by simulated annealing
//!   ([`features`], [`baseline`]);
//! * mined category rules: generalized tuples per pair, Apriori class
//!   association rules grouped into contradiction categories, and
//!   per-category matchers with three test modes ([`tuples`], [`mining`],
//!   [`matchers`]).
//!
//! [`evaluation`] reports precision/recall/F per category, [`corpus`] owns
//! ingestion and splits, [`synth`] plants desk-scale pattern corpora, and
//! [`lexicons`] loads the lexical resources everything else consumes.

pub mod baseline;
pub mod corpus;
pub mod evaluation;
pub mod features;
pub mod fixtures;
pub mod lexicons;
pub mod matchers;
pub mod mining;
pub mod synth;
pub mod tuples;

pub use corpus::{Corpus, GoldLabel, SentencePair};
pub use lexicons::Lexicons;
