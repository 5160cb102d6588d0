//! Detectors that catalog rules bind to.
//!
//! A rule names a checker by id and passes parameters through its
//! [`CheckerBinding`]. Binding validates the parameters and resolves
//! resources once; the bound checker is then a pure function of a block and
//! its annotations.

mod deterministic;
mod heuristic;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::catalog::{Accuracy, CheckerBinding, ParamValue};
use crate::docmodel::{Block, BlockKind, Span};
use crate::nlp::{AnnotationSet, Annotator};
use crate::tsv;

pub use deterministic::{ForbiddenTerm, ReferenceStyle, RegexCheck};
pub use heuristic::{ClarificationSplit, DefinitionMarker, ExplicitSubject, SubjectFirst};

/// One rule violation at a document location.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Finding {
    pub rule_id: String,
    pub document: String,
    pub block: usize,
    /// Block-relative byte span.
    pub span: Span,
    /// 1-based position of the span start in the document source.
    pub line: usize,
    pub column: usize,
    pub message: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub suggestion: Option<String>,
    pub accuracy: Accuracy,
}

/// What a checker reports before the engine attaches rule and location.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hit {
    pub span: Span,
    pub message: String,
    pub suggestion: Option<String>,
}

impl Hit {
    fn new(span: Span, message: impl Into<String>) -> Self {
        Hit {
            span,
            message: message.into(),
            suggestion: None,
        }
    }

    fn suggest(mut self, suggestion: impl Into<String>) -> Self {
        self.suggestion = Some(suggestion.into());
        self
    }
}

/// External knowledge some checkers consult.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Resources {
    /// Document id -> title.
    pub documents: BTreeMap<String, String>,
    /// Phrase -> entity label, merged into the annotator's gazetteer.
    pub gazetteer: BTreeMap<String, String>,
    pub domain_terms: BTreeSet<String>,
}

impl Resources {
    pub fn new() -> Self {
        Resources::default()
    }

    pub fn with_document(mut self, id: impl Into<String>, title: impl Into<String>) -> Self {
        self.documents.insert(id.into(), title.into());
        self
    }

    /// Parses an `id<TAB>title` document list.
    pub fn from_doc_list(text: &str) -> Result<Self, CheckerError> {
        let mut resources = Resources::new();
        let pairs = tsv::parse_pairs(text).map_err(|e| CheckerError::Resource(format!("document list: {e}")))?;
        for (id, title) in pairs {
            if id.is_empty() || title.is_empty() {
                return Err(CheckerError::Resource(format!(
                    "document list: empty id or title in entry `{id}`"
                )));
            }
            resources.documents.insert(id, title);
        }
        Ok(resources)
    }

    pub fn load_doc_list(path: impl AsRef<Path>) -> Result<Self, CheckerError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| CheckerError::Resource(format!("cannot read {}: {e}", path.display())))?;
        Resources::from_doc_list(&text)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CheckerError {
    #[error("unknown checker `{0}`")]
    UnknownChecker(String),
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("missing resource: {0}")]
    Resource(String),
}

/// The built-in checkers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CheckerKind {
    ForbiddenTerm,
    Regex,
    ReferenceStyle,
    DefinitionMarker,
    SubjectFirst,
    ExplicitSubject,
    ClarificationSplit,
}

impl CheckerKind {
    pub const ALL: [CheckerKind; 7] = [
        CheckerKind::ForbiddenTerm,
        CheckerKind::Regex,
        CheckerKind::ReferenceStyle,
        CheckerKind::DefinitionMarker,
        CheckerKind::SubjectFirst,
        CheckerKind::ExplicitSubject,
        CheckerKind::ClarificationSplit,
    ];

    pub fn id(self) -> &'static str {
        match self {
            CheckerKind::ForbiddenTerm => "forbidden_term",
            CheckerKind::Regex => "regex",
            CheckerKind::ReferenceStyle => "reference_style",
            CheckerKind::DefinitionMarker => "definition_marker",
            CheckerKind::SubjectFirst => "subject_first",
            CheckerKind::ExplicitSubject => "explicit_subject",
            CheckerKind::ClarificationSplit => "clarification_split",
        }
    }

    /// Block kinds the checker can say anything about. Blocks outside this
    /// set never produce findings, whatever the rule's context.
    pub fn applies_to(self, kind: BlockKind) -> bool {
        match self {
            CheckerKind::ForbiddenTerm | CheckerKind::Regex | CheckerKind::ReferenceStyle => true,
            CheckerKind::DefinitionMarker => matches!(kind, BlockKind::Requirement | BlockKind::Informative),
            CheckerKind::SubjectFirst | CheckerKind::ExplicitSubject | CheckerKind::ClarificationSplit => {
                kind == BlockKind::Requirement
            }
        }
    }
}

impl fmt::Display for CheckerKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

pub fn registry_lookup(id: &str) -> Result<CheckerKind, CheckerError> {
    CheckerKind::ALL
        .into_iter()
        .find(|k| k.id() == id)
        .ok_or_else(|| CheckerError::UnknownChecker(id.to_string()))
}

/// A checker with validated parameters and resolved resources.
#[derive(Debug, Clone)]
pub enum BoundChecker {
    ForbiddenTerm(ForbiddenTerm),
    Regex(RegexCheck),
    ReferenceStyle(ReferenceStyle),
    DefinitionMarker(DefinitionMarker),
    SubjectFirst(SubjectFirst),
    ExplicitSubject(ExplicitSubject),
    ClarificationSplit(ClarificationSplit),
}

fn no_params(kind: CheckerKind, params: &BTreeMap<String, ParamValue>) -> Result<(), CheckerError> {
    match params.keys().next() {
        Some(key) => Err(CheckerError::BadParams(format!("{kind} takes no parameters, got `{key}`"))),
        None => Ok(()),
    }
}

/// Resolves a catalog binding into a runnable checker.
pub fn bind(binding: &CheckerBinding, resources: &Resources, annotator: &Annotator) -> Result<BoundChecker, CheckerError> {
    let kind = registry_lookup(&binding.id)?;
    let params = &binding.params;
    Ok(match kind {
        CheckerKind::ForbiddenTerm => BoundChecker::ForbiddenTerm(ForbiddenTerm::new(params, annotator)?),
        CheckerKind::Regex => BoundChecker::Regex(RegexCheck::new(params)?),
        CheckerKind::ReferenceStyle => {
            no_params(kind, params)?;
            BoundChecker::ReferenceStyle(ReferenceStyle::new(&resources.documents, annotator)?)
        }
        CheckerKind::DefinitionMarker => {
            no_params(kind, params)?;
            BoundChecker::DefinitionMarker(DefinitionMarker)
        }
        CheckerKind::SubjectFirst => {
            no_params(kind, params)?;
            BoundChecker::SubjectFirst(SubjectFirst)
        }
        CheckerKind::ExplicitSubject => {
            no_params(kind, params)?;
            BoundChecker::ExplicitSubject(ExplicitSubject)
        }
        CheckerKind::ClarificationSplit => {
            no_params(kind, params)?;
            BoundChecker::ClarificationSplit(ClarificationSplit::new(annotator))
        }
    })
}

impl BoundChecker {
    pub fn kind(&self) -> CheckerKind {
        match self {
            BoundChecker::ForbiddenTerm(_) => CheckerKind::ForbiddenTerm,
            BoundChecker::Regex(_) => CheckerKind::Regex,
            BoundChecker::ReferenceStyle(_) => CheckerKind::ReferenceStyle,
            BoundChecker::DefinitionMarker(_) => CheckerKind::DefinitionMarker,
            BoundChecker::SubjectFirst(_) => CheckerKind::SubjectFirst,
            BoundChecker::ExplicitSubject(_) => CheckerKind::ExplicitSubject,
            BoundChecker::ClarificationSplit(_) => CheckerKind::ClarificationSplit,
        }
    }

    /// Violations in one block. `annotations` must belong to `block`.
    pub fn check(&self, block: &Block, annotations: &AnnotationSet) -> Vec<Hit> {
        if !self.kind().applies_to(block.kind) {
            return Vec::new();
        }
        match self {
            BoundChecker::ForbiddenTerm(c) => c.check(annotations),
            BoundChecker::Regex(c) => c.check(&block.text),
            BoundChecker::ReferenceStyle(c) => c.check(annotations),
            BoundChecker::DefinitionMarker(c) => c.check(annotations),
            BoundChecker::SubjectFirst(c) => c.check(annotations),
            BoundChecker::ExplicitSubject(c) => c.check(annotations),
            BoundChecker::ClarificationSplit(c) => c.check(annotations),
        }
    }
}

/// Lowercase forms of a token slice.
fn lowered(tokens: &[crate::nlp::Token]) -> Vec<String> {
    tokens.iter().map(|t| t.lower()).collect()
}

/// Start indices of non-overlapping, leftmost occurrences of `needle`.
fn find_all<T: PartialEq>(haystack: &[T], needle: &[T]) -> Vec<usize> {
    let mut out = Vec::new();
    if needle.is_empty() {
        return out;
    }
    let mut i = 0;
    while i + needle.len() <= haystack.len() {
        if haystack[i..i + needle.len()] == *needle {
            out.push(i);
            i += needle.len();
        } else {
            i += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry() {
        assert_eq!(registry_lookup("forbidden_term"), Ok(CheckerKind::ForbiddenTerm));
        assert_eq!(registry_lookup("regex"), Ok(CheckerKind::Regex));
        assert_eq!(
            registry_lookup("topic_model"),
            Err(CheckerError::UnknownChecker("topic_model".into()))
        );
        for kind in CheckerKind::ALL {
            assert_eq!(registry_lookup(kind.id()), Ok(kind));
        }
    }

    #[test]
    fn doc_list() {
        let r = Resources::from_doc_list("# id\ttitle\nD-17\tSignal Interface Spec\n").unwrap();
        assert_eq!(r.documents["D-17"], "Signal Interface Spec");
        assert!(Resources::from_doc_list("D-17\t\n").is_err());
        assert!(Resources::from_doc_list("D-17\n").is_err());
    }

    #[test]
    fn parameterless_checkers_reject_params() {
        let binding = CheckerBinding::new("subject_first").with_param("x", ParamValue::Flag(true));
        let err = bind(&binding, &Resources::new(), &Annotator::default()).unwrap_err();
        assert!(matches!(err, CheckerError::BadParams(_)));
    }

    #[test]
    fn find_all_is_leftmost_non_overlapping() {
        assert_eq!(find_all(&[1, 1, 1, 1, 1], &[1, 1]), vec![0, 2]);
        assert!(find_all(&[1, 2], &[]).is_empty());
        assert!(find_all::<i32>(&[], &[1]).is_empty());
    }
}
