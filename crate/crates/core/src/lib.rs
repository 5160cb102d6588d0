//! Rule-catalog driven linting for natural-language requirements specifications.
//!
//! The crate is organised along the pipeline a specification goes through:
//!
//! - [`docmodel`] segments plain text into sections and typed blocks.
//! - [`nlp`] annotates block text (tokens, sentences, lemmas, stems, tags, chunks).
//! - [`catalog`] loads and validates the classified writing-rule catalog.
//! - [`checkers`] implements the detectors rules can bind to.
//! - [`engine`] runs a catalog over documents and assembles a deterministic report.
//! - [`analytics`] summarises a catalog's classification and computes rater agreement.

pub mod analytics;
pub mod catalog;
pub mod checkers;
pub mod docmodel;
pub mod engine;
pub mod fixtures;
pub mod nlp;
pub mod tsv;

pub use catalog::{Accuracy, Catalog, ContextKind, InfoKind, Reason, Rule, RuleType, Scope};
pub use checkers::{Finding, Resources};
pub use docmodel::{parse_document, Block, BlockKind, DocConfig, Document, Span};
pub use engine::{lint, merge_reports, Linter, Report};
pub use nlp::{AnnotationSet, Annotator, Lexicon};
