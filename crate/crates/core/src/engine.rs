//! Runs a rule catalog over documents.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::catalog::{Accuracy, Catalog, ContextKind, Reason};
use crate::checkers::{bind, BoundChecker, CheckerError, Finding, Resources};
use crate::docmodel::Document;
use crate::nlp::{Annotator, Lexicon};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Skipped {
    pub rule_id: String,
    pub reason: Reason,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stats {
    pub documents: Vec<String>,
    pub catalog_digest: String,
    pub blocks: usize,
    pub sentences: usize,
    pub rules_run: usize,
    pub per_rule_counts: BTreeMap<String, usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub findings: Vec<Finding>,
    pub skipped: Vec<Skipped>,
    pub stats: Stats,
}

impl Report {
    /// Keeps findings at least as accurate as `min`.
    pub fn retain_min_accuracy(&mut self, min: Accuracy) {
        self.findings.retain(|f| f.accuracy.rank() <= min.rank());
        for count in self.stats.per_rule_counts.values_mut() {
            *count = 0;
        }
        for f in &self.findings {
            *self.stats.per_rule_counts.entry(f.rule_id.clone()).or_default() += 1;
        }
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BindingFailure {
    pub rule_id: String,
    pub error: CheckerError,
}

impl fmt::Display for BindingFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rule {}: {}", self.rule_id, self.error)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LintError {
    #[error("invalid catalog:\n  {}", .0.join("\n  "))]
    InvalidCatalog(Vec<String>),
    #[error("cannot bind checkers:\n  {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("\n  "))]
    Binding(Vec<BindingFailure>),
    #[error("reports come from different catalogs")]
    CatalogMismatch,
    #[error("no reports to merge")]
    NothingToMerge,
}

#[derive(Debug, Clone)]
struct ActiveRule {
    id: String,
    context: ContextKind,
    accuracy: Accuracy,
    checker: BoundChecker,
}

/// A catalog with every checker bound, ready to lint documents.
#[derive(Debug, Clone)]
pub struct Linter {
    rules: Vec<ActiveRule>,
    skipped: Vec<Skipped>,
    digest: String,
    annotator: Annotator,
}

/// Byte offsets of line starts, for 1-based line/column lookups.
struct LineIndex<'a> {
    source: &'a str,
    starts: Vec<usize>,
}

impl<'a> LineIndex<'a> {
    fn new(source: &'a str) -> Self {
        let starts = std::iter::once(0)
            .chain(source.match_indices('\n').map(|(i, _)| i + 1))
            .collect();
        LineIndex { source, starts }
    }

    fn line_col(&self, offset: usize) -> (usize, usize) {
        let offset = offset.min(self.source.len());
        let line = self.starts.partition_point(|&s| s <= offset);
        let column = self.source[self.starts[line - 1]..offset].chars().count() + 1;
        (line, column)
    }
}

fn low_confidence(message: String) -> String {
    if message.contains("low confidence") || message.contains("low-confidence") {
        message
    } else {
        format!("{message} (low confidence)")
    }
}

impl Linter {
    /// Validates the catalog and binds every checker. All failures are
    /// reported together; nothing is run when any rule cannot be bound.
    pub fn new(catalog: &Catalog, resources: &Resources, lexicon: Lexicon) -> Result<Self, LintError> {
        let problems = catalog.validate();
        if !problems.is_empty() {
            return Err(LintError::InvalidCatalog(problems));
        }
        let lexicon = lexicon.with_gazetteer_entries(resources.gazetteer.clone());
        let annotator = Annotator::new(lexicon);

        let mut rules = Vec::new();
        let mut skipped = Vec::new();
        let mut failures = Vec::new();
        for rule in &catalog.rules {
            if !rule.accuracy.is_detectable() {
                if let Some(reason) = rule.reason {
                    skipped.push(Skipped {
                        rule_id: rule.id.clone(),
                        reason,
                    });
                }
                continue;
            }
            let Some(binding) = &rule.checker else { continue };
            match bind(binding, resources, &annotator) {
                Ok(checker) => rules.push(ActiveRule {
                    id: rule.id.clone(),
                    context: rule.context,
                    accuracy: rule.accuracy,
                    checker,
                }),
                Err(error) => failures.push(BindingFailure {
                    rule_id: rule.id.clone(),
                    error,
                }),
            }
        }
        if !failures.is_empty() {
            return Err(LintError::Binding(failures));
        }
        Ok(Linter {
            rules,
            skipped,
            digest: catalog.digest(),
            annotator,
        })
    }

    pub fn annotator(&self) -> &Annotator {
        &self.annotator
    }

    pub fn lint(&self, doc: &Document) -> Report {
        let annotations = self.annotator.annotate(doc);
        let lines = LineIndex::new(&doc.source);

        let work: Vec<(usize, usize)> = self
            .rules
            .iter()
            .enumerate()
            .flat_map(|(r, rule)| {
                doc.blocks
                    .iter()
                    .enumerate()
                    .filter(move |(_, block)| rule.context.admits(block.kind))
                    .map(move |(b, _)| (r, b))
            })
            .collect();

        let mut findings: Vec<Finding> = work
            .par_iter()
            .flat_map_iter(|&(r, b)| {
                let rule = &self.rules[r];
                let block = &doc.blocks[b];
                let lines = &lines;
                rule.checker
                    .check(block, &annotations[b])
                    .into_iter()
                    .map(move |hit| {
                        let (line, column) = lines.line_col(block.span.start + hit.span.start);
                        let message = if rule.accuracy == Accuracy::HeuristicLow {
                            low_confidence(hit.message)
                        } else {
                            hit.message
                        };
                        Finding {
                            rule_id: rule.id.clone(),
                            document: doc.name.clone(),
                            block: b,
                            span: hit.span,
                            line,
                            column,
                            message,
                            suggestion: hit.suggestion,
                            accuracy: rule.accuracy,
                        }
                    })
            })
            .collect();
        findings.sort_by(|a, b| {
            (a.block, a.span.start, &a.rule_id, a.span.end, &a.message)
                .cmp(&(b.block, b.span.start, &b.rule_id, b.span.end, &b.message))
        });

        let mut per_rule_counts: BTreeMap<String, usize> =
            self.rules.iter().map(|r| (r.id.clone(), 0)).collect();
        for f in &findings {
            *per_rule_counts.entry(f.rule_id.clone()).or_default() += 1;
        }
        Report {
            findings,
            skipped: self.skipped.clone(),
            stats: Stats {
                documents: vec![doc.name.clone()],
                catalog_digest: self.digest.clone(),
                blocks: doc.blocks.len(),
                sentences: annotations.iter().map(|a| a.sentences.len()).sum(),
                rules_run: self.rules.len(),
                per_rule_counts,
            },
        }
    }

    /// Lints several documents in parallel and merges the reports in input
    /// order.
    pub fn lint_all(&self, docs: &[Document]) -> Result<Report, LintError> {
        let reports: Vec<Report> = docs.par_iter().map(|d| self.lint(d)).collect();
        merge_reports(&reports)
    }
}

/// Lints one document with the bundled lexicon.
pub fn lint(doc: &Document, catalog: &Catalog, resources: &Resources) -> Result<Report, LintError> {
    Ok(Linter::new(catalog, resources, Lexicon::bundled())?.lint(doc))
}

/// Concatenates reports of the same catalog in the given order.
pub fn merge_reports(reports: &[Report]) -> Result<Report, LintError> {
    let (first, rest) = reports.split_first().ok_or(LintError::NothingToMerge)?;
    if rest.iter().any(|r| r.stats.catalog_digest != first.stats.catalog_digest) {
        return Err(LintError::CatalogMismatch);
    }
    let mut merged = first.clone();
    for report in rest {
        merged.findings.extend(report.findings.iter().cloned());
        let stats = &mut merged.stats;
        stats.documents.extend(report.stats.documents.iter().cloned());
        stats.blocks += report.stats.blocks;
        stats.sentences += report.stats.sentences;
        for (rule, count) in &report.stats.per_rule_counts {
            *stats.per_rule_counts.entry(rule.clone()).or_default() += count;
        }
    }
    let order: BTreeMap<&str, usize> = merged
        .stats
        .documents
        .iter()
        .enumerate()
        .rev()
        .map(|(i, d)| (d.as_str(), i))
        .collect();
    let mut findings = std::mem::take(&mut merged.findings);
    findings.sort_by_key(|f| order.get(f.document.as_str()).copied().unwrap_or(usize::MAX));
    merged.findings = findings;
    Ok(merged)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{CheckerBinding, ParamValue};
    use crate::docmodel::{parse_document, DocConfig};
    use crate::fixtures;

    fn doc(src: &str) -> Document {
        parse_document(src, &DocConfig::default()).unwrap().named("doc")
    }

    fn resources() -> Resources {
        Resources::new().with_document("D-17", "Signal Interface Spec")
    }

    #[test]
    fn empty_document() {
        let cat = fixtures::table1_catalog();
        let report = lint(&doc(""), &cat, &resources()).unwrap();
        assert!(report.findings.is_empty());
        assert_eq!(report.skipped.len(), 1);
        assert_eq!(report.skipped[0].rule_id, "54");
        assert_eq!(report.skipped[0].reason, Reason::UnclearRule);
        assert_eq!(report.stats.rules_run, 6);
        assert_eq!(report.stats.per_rule_counts.len(), 6);
    }

    #[test]
    fn fixture_document_has_one_finding_per_checked_rule() {
        let cat = fixtures::table1_catalog();
        let report = lint(&doc(fixtures::TABLE1_DOCUMENT), &cat, &resources()).unwrap();
        let ids: Vec<_> = report.findings.iter().map(|f| f.rule_id.as_str()).collect();
        assert_eq!(ids, vec!["160", "24", "56", "78", "81", "50"], "{:#?}", report.findings);
        assert!(report.stats.per_rule_counts.values().all(|&c| c == 1));
        let low = report.findings.iter().find(|f| f.rule_id == "81").unwrap();
        assert_eq!(low.accuracy, Accuracy::HeuristicLow);
        assert!(low.message.contains("low-confidence"));
        assert_eq!((report.findings[0].line, report.findings[0].column), (3, 5));
    }

    #[test]
    fn missing_resources_fail_fast() {
        let cat = fixtures::table1_catalog();
        match Linter::new(&cat, &Resources::new(), Lexicon::bundled()) {
            Err(LintError::Binding(failures)) => {
                assert_eq!(failures.len(), 1);
                assert_eq!(failures[0].rule_id, "24");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn all_binding_failures_are_listed() {
        let mut cat = fixtures::table1_catalog();
        cat.rules[0].checker = Some(CheckerBinding::new("topic_model"));
        match Linter::new(&cat, &Resources::new(), Lexicon::bundled()) {
            Err(LintError::Binding(failures)) => {
                let ids: Vec<_> = failures.iter().map(|f| f.rule_id.as_str()).collect();
                assert_eq!(ids, vec!["160", "24"]);
                assert!(matches!(failures[0].error, CheckerError::UnknownChecker(_)));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn vacuous_context() {
        let mut cat = fixtures::table1_catalog();
        cat.rules[0].context = ContextKind::Figure;
        let report = lint(&doc(fixtures::TABLE1_DOCUMENT), &cat, &resources()).unwrap();
        assert_eq!(report.stats.per_rule_counts["160"], 0);
    }

    #[test]
    fn low_confidence_marker_is_added_once() {
        let mut cat = fixtures::table1_catalog();
        let rule = cat.rules.iter_mut().find(|r| r.id == "160").unwrap();
        rule.accuracy = Accuracy::HeuristicLow;
        let report = lint(&doc("The functionality restarts."), &cat, &resources()).unwrap();
        assert!(report.findings[0].message.ends_with("(low confidence)"));
        assert_eq!(low_confidence("x (low confidence)".into()), "x (low confidence)");
    }

    #[test]
    fn merge() {
        let cat = fixtures::table1_catalog();
        let linter = Linter::new(&cat, &resources(), Lexicon::bundled()).unwrap();
        let a = linter.lint(&doc(fixtures::TABLE1_DOCUMENT).named("a"));
        assert_eq!(merge_reports(std::slice::from_ref(&a)).unwrap(), a);

        let b = linter.lint(&doc("The functionality stops.").named("b"));
        let m = merge_reports(&[a.clone(), b.clone()]).unwrap();
        assert_eq!(m.findings.len(), a.findings.len() + b.findings.len());
        assert_eq!(m.stats.per_rule_counts["160"], 2);
        assert_eq!(m.stats.blocks, a.stats.blocks + b.stats.blocks);
        assert_eq!(m.stats.documents, vec!["a", "b"]);
        assert_eq!(m.findings.last().unwrap().document, "b");

        let mut other = b.clone();
        other.stats.catalog_digest = "x".into();
        assert_eq!(merge_reports(&[a, other]), Err(LintError::CatalogMismatch));
        assert_eq!(merge_reports(&[]), Err(LintError::NothingToMerge));
    }

    #[test]
    fn min_accuracy_filter() {
        let cat = fixtures::table1_catalog();
        let mut report = lint(&doc(fixtures::TABLE1_DOCUMENT), &cat, &resources()).unwrap();
        report.retain_min_accuracy(Accuracy::HeuristicMedium);
        assert_eq!(report.findings.len(), 5);
        assert_eq!(report.stats.per_rule_counts["81"], 0);
        report.retain_min_accuracy(Accuracy::Deterministic);
        assert_eq!(report.findings.len(), 2);
    }

    #[test]
    fn regex_rule_in_heading_context() {
        let mut cat = fixtures::table1_catalog();
        let rule = cat.rules.iter_mut().find(|r| r.id == "160").unwrap();
        rule.context = ContextKind::Heading;
        rule.checker = Some(CheckerBinding::new("regex").with_param("pattern", ParamValue::Text("TBD".into())));
        let report = lint(&doc("# Section TBD\n\nValue is TBD.\n"), &cat, &resources()).unwrap();
        assert_eq!(report.stats.per_rule_counts["160"], 1);
        assert_eq!(report.findings[0].block, 0);
    }

    #[test]
    fn json_round_trip() {
        let cat = fixtures::table1_catalog();
        let report = lint(&doc(fixtures::TABLE1_DOCUMENT), &cat, &resources()).unwrap();
        let json = report.to_json_pretty();
        let back: Report = serde_json::from_str(&json).unwrap();
        assert_eq!(back, report);
        assert_eq!(back.to_json_pretty(), json);
    }
}
