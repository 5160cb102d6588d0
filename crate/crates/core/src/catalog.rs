//! The classified writing-rule catalog.
//!
//! A catalog file is JSON of the form `{"rules": [...]}`. Each entry is one
//! rule as received; entries with `"status": "Unapproved"` are dropped on
//! ingest. A compound rule lists its parts under `sub_rules`: the parent is
//! replaced by its sub-rules, each of which carries its own classification
//! and gets `parent_id` set to the parent's id.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::docmodel::BlockKind;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum RuleType {
    Lexical,
    Grammatical,
    Structural,
    Semantic,
    Unclassified,
}

impl RuleType {
    pub const ALL: [RuleType; 5] = [
        RuleType::Lexical,
        RuleType::Grammatical,
        RuleType::Structural,
        RuleType::Semantic,
        RuleType::Unclassified,
    ];
}

/// Where in a specification a rule applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ContextKind {
    Anywhere,
    Requirement,
    Heading,
    Figure,
    Table,
    Reference,
    Enumeration,
    Comment,
    Unclassified,
}

impl ContextKind {
    pub const ALL: [ContextKind; 9] = [
        ContextKind::Anywhere,
        ContextKind::Requirement,
        ContextKind::Heading,
        ContextKind::Figure,
        ContextKind::Table,
        ContextKind::Reference,
        ContextKind::Enumeration,
        ContextKind::Comment,
        ContextKind::Unclassified,
    ];

    /// Whether a block of `kind` is in this context. `Anywhere` covers every
    /// kind except comments; `Unclassified` covers nothing.
    pub fn admits(self, kind: BlockKind) -> bool {
        match self {
            ContextKind::Anywhere => kind != BlockKind::Comment,
            ContextKind::Requirement => kind == BlockKind::Requirement,
            ContextKind::Heading => kind == BlockKind::Heading,
            ContextKind::Figure => kind == BlockKind::FigureCaption,
            ContextKind::Table => kind == BlockKind::TableRow,
            ContextKind::Reference => kind == BlockKind::ReferenceEntry,
            ContextKind::Enumeration => kind == BlockKind::EnumerationItem,
            ContextKind::Comment => kind == BlockKind::Comment,
            ContextKind::Unclassified => false,
        }
    }
}

/// Amount of text needed to decide a violation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Scope {
    WordPhrase,
    Sentence,
    Section,
    Document,
    Global,
    Unclassified,
}

impl Scope {
    pub const ALL: [Scope; 6] = [
        Scope::WordPhrase,
        Scope::Sentence,
        Scope::Section,
        Scope::Document,
        Scope::Global,
        Scope::Unclassified,
    ];
}

/// Information a detector needs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum InfoKind {
    LemmasDictionaries,
    PureTextRegex,
    Formatting,
    DomainModels,
    PosTags,
    ListsOfX,
    Morphology,
    ParseTrees,
    WordStems,
    TokensSentences,
    NamedEntities,
}

impl InfoKind {
    pub const ALL: [InfoKind; 11] = [
        InfoKind::LemmasDictionaries,
        InfoKind::PureTextRegex,
        InfoKind::Formatting,
        InfoKind::DomainModels,
        InfoKind::PosTags,
        InfoKind::ListsOfX,
        InfoKind::Morphology,
        InfoKind::ParseTrees,
        InfoKind::WordStems,
        InfoKind::TokensSentences,
        InfoKind::NamedEntities,
    ];
}

/// Expected detection accuracy, best first. The declaration order is the
/// ordinal scale used for agreement weights and accuracy filtering.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Accuracy {
    Deterministic,
    HeuristicHigh,
    HeuristicMedium,
    HeuristicLow,
    NotDetectable,
}

impl Accuracy {
    pub const ALL: [Accuracy; 5] = [
        Accuracy::Deterministic,
        Accuracy::HeuristicHigh,
        Accuracy::HeuristicMedium,
        Accuracy::HeuristicLow,
        Accuracy::NotDetectable,
    ];

    /// Position on the ordinal scale, 0 for `Deterministic`.
    pub fn rank(self) -> usize {
        self as usize
    }

    pub fn is_detectable(self) -> bool {
        self != Accuracy::NotDetectable
    }

    pub fn name(self) -> &'static str {
        match self {
            Accuracy::Deterministic => "Deterministic",
            Accuracy::HeuristicHigh => "HeuristicHigh",
            Accuracy::HeuristicMedium => "HeuristicMedium",
            Accuracy::HeuristicLow => "HeuristicLow",
            Accuracy::NotDetectable => "NotDetectable",
        }
    }
}

impl fmt::Display for Accuracy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Accuracy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Accuracy::ALL
            .into_iter()
            .find(|a| a.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| format!("unknown accuracy class `{s}`"))
    }
}

/// Why a rule resists automated detection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Reason {
    #[serde(rename = "R1_UnclearRule")]
    UnclearRule,
    #[serde(rename = "R2_DeepSemantics")]
    DeepSemantics,
    #[serde(rename = "R3_DomainKnowledge")]
    DomainKnowledge,
    #[serde(rename = "R4_SystemScope")]
    SystemScope,
    #[serde(rename = "R5_ProcessStatus")]
    ProcessStatus,
}

impl Reason {
    pub const ALL: [Reason; 5] = [
        Reason::UnclearRule,
        Reason::DeepSemantics,
        Reason::DomainKnowledge,
        Reason::SystemScope,
        Reason::ProcessStatus,
    ];

    /// Short label, `R1` .. `R5`.
    pub fn code(self) -> &'static str {
        match self {
            Reason::UnclearRule => "R1",
            Reason::DeepSemantics => "R2",
            Reason::DomainKnowledge => "R3",
            Reason::SystemScope => "R4",
            Reason::ProcessStatus => "R5",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            Reason::UnclearRule => "rule unclear or imprecise",
            Reason::DeepSemantics => "deep semantic text understanding",
            Reason::DomainKnowledge => "profound domain knowledge",
            Reason::SystemScope => "system scope knowledge",
            Reason::ProcessStatus => "process status knowledge",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Status {
    Approved,
    Unapproved,
}

/// A checker parameter value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ParamValue {
    Text(String),
    List(Vec<String>),
    Flag(bool),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckerBinding {
    pub id: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, ParamValue>,
}

impl CheckerBinding {
    pub fn new(id: impl Into<String>) -> Self {
        CheckerBinding {
            id: id.into(),
            params: BTreeMap::new(),
        }
    }

    pub fn with_param(mut self, key: impl Into<String>, value: ParamValue) -> Self {
        self.params.insert(key.into(), value);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rule {
    pub id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parent_id: Option<String>,
    pub status: Status,
    pub text: String,
    #[serde(rename = "type")]
    pub rule_type: RuleType,
    pub context: ContextKind,
    pub scope: Scope,
    pub required_info: BTreeSet<InfoKind>,
    pub accuracy: Accuracy,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<Reason>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub checker: Option<CheckerBinding>,
}

/// One rule entry as it appears in a catalog file.
///
/// Classification fields are optional here: unapproved rule ideas and
/// compound parents need not carry them.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RuleEntry {
    pub id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parent_id: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub status: Option<Status>,
    #[serde(default)]
    pub text: String,
    #[serde(rename = "type", default, skip_serializing_if = "Option::is_none")]
    pub rule_type: Option<RuleType>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub context: Option<ContextKind>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scope: Option<Scope>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub required_info: Option<BTreeSet<InfoKind>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub accuracy: Option<Accuracy>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<Reason>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub checker: Option<CheckerBinding>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sub_rules: Option<Vec<RuleEntry>>,
}

impl From<&Rule> for RuleEntry {
    fn from(rule: &Rule) -> Self {
        RuleEntry {
            id: rule.id.clone(),
            parent_id: rule.parent_id.clone(),
            status: Some(rule.status),
            text: rule.text.clone(),
            rule_type: Some(rule.rule_type),
            context: Some(rule.context),
            scope: Some(rule.scope),
            required_info: Some(rule.required_info.clone()),
            accuracy: Some(rule.accuracy),
            reason: rule.reason,
            checker: rule.checker.clone(),
            sub_rules: None,
        }
    }
}

/// On-disk catalog layout.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CatalogFile {
    pub rules: Vec<RuleEntry>,
}

impl CatalogFile {
    pub fn to_json_pretty(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("catalog serialises");
        out.push('\n');
        out
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct IngestReport {
    pub raw_count: usize,
    pub unapproved_filtered: usize,
    pub approved_count: usize,
    pub split_added: usize,
    pub classified_count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Catalog {
    pub rules: Vec<Rule>,
    pub ingest: IngestReport,
}

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed catalog at line {line}, column {column}: {message}")]
    Format {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid catalog:\n  {}", .0.join("\n  "))]
    Validation(Vec<String>),
}

/// Parses a catalog file and performs the ingest steps (status filtering,
/// sub-rule expansion) without checking rule invariants.
pub fn ingest(text: &str) -> Result<Catalog, CatalogError> {
    let file: CatalogFile = serde_json::from_str(text).map_err(|e| CatalogError::Format {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    ingest_file(&file)
}

/// Ingest steps over an already parsed catalog file.
pub fn ingest_file(file: &CatalogFile) -> Result<Catalog, CatalogError> {
    let mut problems = Vec::new();
    let mut rules = Vec::new();
    let mut report = IngestReport {
        raw_count: file.rules.len(),
        ..IngestReport::default()
    };

    for entry in &file.rules {
        let Some(status) = entry.status else {
            problems.push(format!("rule {}: missing status", entry.id));
            continue;
        };
        if status == Status::Unapproved {
            report.unapproved_filtered += 1;
            continue;
        }
        report.approved_count += 1;
        match &entry.sub_rules {
            None => match classified(entry, status, entry.parent_id.clone()) {
                Ok(rule) => rules.push(rule),
                Err(mut missing) => problems.append(&mut missing),
            },
            Some(subs) if subs.is_empty() => {
                problems.push(format!("rule {}: compound rule without sub-rules", entry.id));
            }
            Some(subs) => {
                report.split_added += subs.len() - 1;
                for sub in subs {
                    if sub.sub_rules.is_some() {
                        problems.push(format!("rule {}: sub-rules cannot be nested", sub.id));
                        continue;
                    }
                    if sub.status.is_some_and(|s| s != status) {
                        problems.push(format!(
                            "rule {}: sub-rule status differs from parent {}",
                            sub.id, entry.id
                        ));
                        continue;
                    }
                    match classified(sub, status, Some(entry.id.clone())) {
                        Ok(rule) => rules.push(rule),
                        Err(mut missing) => problems.append(&mut missing),
                    }
                }
            }
        }
    }

    if !problems.is_empty() {
        return Err(CatalogError::Validation(problems));
    }
    report.classified_count = rules.len();
    Ok(Catalog {
        rules,
        ingest: report,
    })
}

fn classified(entry: &RuleEntry, status: Status, parent_id: Option<String>) -> Result<Rule, Vec<String>> {
    let mut missing = Vec::new();
    let mut need = |present: bool, field: &str| {
        if !present {
            missing.push(format!("rule {}: missing field `{field}`", entry.id));
        }
    };
    need(entry.rule_type.is_some(), "type");
    need(entry.context.is_some(), "context");
    need(entry.scope.is_some(), "scope");
    need(entry.required_info.is_some(), "required_info");
    need(entry.accuracy.is_some(), "accuracy");
    if !missing.is_empty() {
        return Err(missing);
    }
    Ok(Rule {
        id: entry.id.clone(),
        parent_id,
        status,
        text: entry.text.clone(),
        rule_type: entry.rule_type.unwrap(),
        context: entry.context.unwrap(),
        scope: entry.scope.unwrap(),
        required_info: entry.required_info.clone().unwrap(),
        accuracy: entry.accuracy.unwrap(),
        reason: entry.reason,
        checker: entry.checker.clone(),
    })
}

/// Every violated rule invariant, one message each, naming the rule.
pub fn validate_rule(rule: &Rule) -> Vec<String> {
    let mut out = Vec::new();
    let mut violation = |msg: &str| out.push(format!("rule {}: {msg}", rule.id));

    if rule.id.trim().is_empty() {
        violation("empty id");
    }
    if rule.accuracy == Accuracy::NotDetectable {
        if rule.reason.is_none() {
            violation("NotDetectable rule must state a reason");
        }
        if rule.checker.is_some() {
            violation("NotDetectable rule must not bind a checker");
        }
        if !rule.required_info.is_empty() {
            violation("NotDetectable rule must not list required information");
        }
    } else {
        if rule.reason.is_some() {
            violation("only NotDetectable rules carry a reason");
        }
        if rule.required_info.is_empty() {
            violation("detectable rule must list required information");
        }
        if rule.rule_type == RuleType::Unclassified {
            violation("type Unclassified is only allowed for NotDetectable rules");
        }
        if rule.context == ContextKind::Unclassified {
            violation("context Unclassified is only allowed for NotDetectable rules");
        }
        if rule.scope == Scope::Unclassified {
            violation("scope Unclassified is only allowed for NotDetectable rules");
        }
    }
    if rule.status != Status::Approved {
        violation("unapproved rule in catalog");
    }
    out
}

impl Catalog {
    pub fn from_json(text: &str) -> Result<Self, CatalogError> {
        let catalog = ingest(text)?;
        catalog.check()?;
        Ok(catalog)
    }

    pub fn empty() -> Self {
        Catalog {
            rules: Vec::new(),
            ingest: IngestReport::default(),
        }
    }

    /// Rule invariants plus catalog-wide id uniqueness.
    pub fn validate(&self) -> Vec<String> {
        let mut out: Vec<String> = self.rules.iter().flat_map(validate_rule).collect();
        let mut seen = BTreeSet::new();
        for rule in &self.rules {
            if !seen.insert(rule.id.as_str()) {
                out.push(format!("rule {}: duplicate id", rule.id));
            }
        }
        out
    }

    fn check(&self) -> Result<(), CatalogError> {
        let problems = self.validate();
        if problems.is_empty() {
            Ok(())
        } else {
            Err(CatalogError::Validation(problems))
        }
    }

    /// Order-preserving filter.
    pub fn query<P>(&self, predicate: P) -> Vec<&Rule>
    where
        P: Fn(&Rule) -> bool,
    {
        self.rules.iter().filter(|r| predicate(r)).collect()
    }

    pub fn get(&self, id: &str) -> Option<&Rule> {
        self.rules.iter().find(|r| r.id == id)
    }

    /// SHA-256 over the canonical JSON of the classified rules.
    pub fn digest(&self) -> String {
        let json = serde_json::to_vec(&self.rules).expect("rules serialise");
        Sha256::digest(&json)
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect()
    }
}

/// Reads, ingests and validates a catalog file.
pub fn load_catalog(path: impl AsRef<Path>) -> Result<Catalog, CatalogError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| CatalogError::Io {
        path: path.display().to_string(),
        source,
    })?;
    Catalog::from_json(&text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn rule160() -> Rule {
        Rule {
            id: "160".into(),
            parent_id: None,
            status: Status::Approved,
            text: "Write \"function\", not \"functionality\".".into(),
            rule_type: RuleType::Lexical,
            context: ContextKind::Anywhere,
            scope: Scope::WordPhrase,
            required_info: [InfoKind::LemmasDictionaries].into(),
            accuracy: Accuracy::Deterministic,
            reason: None,
            checker: None,
        }
    }

    fn not_detectable() -> Rule {
        Rule {
            id: "54".into(),
            rule_type: RuleType::Unclassified,
            context: ContextKind::Unclassified,
            scope: Scope::Unclassified,
            required_info: BTreeSet::new(),
            accuracy: Accuracy::NotDetectable,
            reason: Some(Reason::UnclearRule),
            ..rule160()
        }
    }

    #[test]
    fn table1_rule_160_is_valid() {
        assert!(validate_rule(&rule160()).is_empty());
        assert!(validate_rule(&not_detectable()).is_empty());
    }

    #[test]
    fn not_detectable_without_reason() {
        let rule = Rule {
            reason: None,
            ..not_detectable()
        };
        let v = validate_rule(&rule);
        assert_eq!(v.len(), 1, "{v:?}");
        assert!(v[0].contains("rule 54"));
    }

    #[test]
    fn deterministic_without_info() {
        let rule = Rule {
            required_info: BTreeSet::new(),
            ..rule160()
        };
        assert_eq!(validate_rule(&rule).len(), 1);
    }

    #[test]
    fn unclassified_dimensions_need_not_detectable() {
        let rule = Rule {
            rule_type: RuleType::Unclassified,
            scope: Scope::Unclassified,
            ..rule160()
        };
        assert_eq!(validate_rule(&rule).len(), 2);
    }

    #[test]
    fn single_rule_file() {
        let json = r#"{"rules": [{"id": "1", "status": "Approved", "text": "t",
            "type": "Lexical", "context": "Anywhere", "scope": "WordPhrase",
            "required_info": ["PureTextRegex"], "accuracy": "Deterministic"}]}"#;
        let cat = Catalog::from_json(json).unwrap();
        assert_eq!(
            cat.ingest,
            IngestReport {
                raw_count: 1,
                unapproved_filtered: 0,
                approved_count: 1,
                split_added: 0,
                classified_count: 1
            }
        );
    }

    #[test]
    fn all_unapproved() {
        let json = r#"{"rules": [{"id": "1", "status": "Unapproved"},
                                 {"id": "2", "status": "Unapproved", "text": "idea"}]}"#;
        let cat = Catalog::from_json(json).unwrap();
        assert_eq!(cat.ingest.raw_count, 2);
        assert_eq!(cat.ingest.unapproved_filtered, 2);
        assert_eq!(cat.ingest.classified_count, 0);
        assert!(cat.rules.is_empty());
    }

    #[test]
    fn compound_rule_is_split() {
        let json = r#"{"rules": [{"id": "9", "status": "Approved", "text": "a and b",
            "sub_rules": [
              {"id": "9a", "text": "a", "type": "Lexical", "context": "Anywhere", "scope": "WordPhrase",
               "required_info": ["PureTextRegex"], "accuracy": "Deterministic"},
              {"id": "9b", "text": "b", "type": "Semantic", "context": "Requirement", "scope": "Sentence",
               "required_info": [], "accuracy": "NotDetectable", "reason": "R3_DomainKnowledge"}
            ]}]}"#;
        let cat = Catalog::from_json(json).unwrap();
        assert_eq!(cat.ingest.split_added, 1);
        assert_eq!(cat.ingest.classified_count, 2);
        assert!(cat.rules.iter().all(|r| r.parent_id.as_deref() == Some("9")));
        assert_eq!(cat.rules[1].reason, Some(Reason::DomainKnowledge));
    }

    #[test]
    fn not_detectable_with_checker_is_rejected() {
        let json = r#"{"rules": [{"id": "54", "status": "Approved", "text": "t",
            "type": "Unclassified", "context": "Unclassified", "scope": "Unclassified",
            "required_info": [], "accuracy": "NotDetectable", "reason": "R1_UnclearRule",
            "checker": {"id": "regex", "params": {"pattern": "x"}}}]}"#;
        match Catalog::from_json(json) {
            Err(CatalogError::Validation(v)) => {
                assert_eq!(v.len(), 1);
                assert!(v[0].contains("rule 54"));
            }
            other => panic!("expected validation error, got {other:?}"),
        }
    }

    #[test]
    fn malformed_json_reports_line() {
        let json = "{\"rules\": [\n  {\"id\": \"1\",\n  \"status\": Approved}\n]}";
        match ingest(json) {
            Err(CatalogError::Format { line, .. }) => assert_eq!(line, 3),
            other => panic!("expected format error, got {other:?}"),
        }
    }

    #[test]
    fn unknown_field_is_a_format_error() {
        let json = r#"{"rules": [{"id": "1", "status": "Approved", "colour": "red"}]}"#;
        assert!(matches!(ingest(json), Err(CatalogError::Format { .. })));
    }

    #[test]
    fn missing_classification_listed() {
        let json = r#"{"rules": [{"id": "7", "status": "Approved", "text": "t"}]}"#;
        match ingest(json) {
            Err(CatalogError::Validation(v)) => assert_eq!(v.len(), 5),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn duplicate_ids() {
        let mut cat = fixtures::table1_catalog();
        let dup = cat.rules[0].clone();
        cat.rules.push(dup);
        let v = cat.validate();
        assert_eq!(v.len(), 1);
        assert!(v[0].contains("duplicate"));
    }

    #[test]
    fn query_table1_semantic_requirement_rules() {
        let cat = fixtures::table1_catalog();
        let ids: Vec<_> = cat
            .query(|r| r.context == ContextKind::Requirement && r.rule_type == RuleType::Semantic)
            .into_iter()
            .map(|r| r.id.as_str())
            .collect();
        assert_eq!(ids, vec!["81", "50"]);
        assert!(Catalog::empty().query(|_| true).is_empty());
    }

    #[test]
    fn sta_fixture_query_not_detectable() {
        let cat = Catalog::from_json(&fixtures::sta_catalog_file().to_json_pretty()).unwrap();
        assert_eq!(cat.query(|r| r.accuracy == Accuracy::NotDetectable).len(), 42);
        assert_eq!(
            cat.query(|r| r.accuracy == Accuracy::NotDetectable).len(),
            cat.query(|r| r.reason.is_some()).len()
        );
    }

    #[test]
    fn enum_strings_match_file_format() {
        assert_eq!(serde_json::to_string(&Reason::UnclearRule).unwrap(), "\"R1_UnclearRule\"");
        assert_eq!(serde_json::to_string(&Accuracy::HeuristicHigh).unwrap(), "\"HeuristicHigh\"");
        assert_eq!(serde_json::to_string(&InfoKind::ListsOfX).unwrap(), "\"ListsOfX\"");
        assert_eq!("heuristiclow".parse::<Accuracy>().unwrap(), Accuracy::HeuristicLow);
    }

    #[test]
    fn digest_is_stable_and_content_sensitive() {
        let a = fixtures::table1_catalog();
        let mut b = a.clone();
        assert_eq!(a.digest(), b.digest());
        b.rules[0].text.push('!');
        assert_ne!(a.digest(), b.digest());
    }
}
