//! Corpus preparation, tokenization, and sequence-scoring toolkit for
//! low-resource end-to-end ASR.
//!
//! The crate covers the text side of an attention/CTC speech recognition
//! pipeline end to end:
//!
//! - [`corpus`] — manifest ingestion, transcript normalization, inter-pausal
//!   unit segmentation, train/dev/test splits, and corpus statistics.
//! - [`units`] — the four modeling units (phone, syllable, word piece, word)
//!   with lossless detokenization back to surface text.
//! - [`wordpiece`] — a unigram-language-model word-piece segmenter trained
//!   with EM and pruned to a target vocabulary size.
//! - [`model`] — CTC collapse, log-probability, gradients, and decoding;
//!   attention weight normalization and context vectors; the joint loss;
//!   acoustic frame stacking.
//! - [`eval`] — Levenshtein alignment and WER/PER scoring with
//!   token-weighted aggregation across speakers.
//!
//! See the `examples/` directory for a runnable walk-through of each
//! capability; the `ainukit` binary wires the same functions into a small
//! CLI.

pub mod alphabet;
pub mod corpus;
pub mod error;
pub mod eval;
pub mod logmath;
pub mod model;
pub mod units;
pub mod wordpiece;

pub use error::{Error, Result};
