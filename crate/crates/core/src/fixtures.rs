//! Reference catalogs and documents used by tests, examples and the CLI.
//!
//! [`table1_catalog`] holds the seven worked example rules with checker
//! bindings. [`sta_catalog_file`] is a synthetic 192-entry catalog file with
//! fixed marginals (ingest counts, accuracy classes, required information,
//! reasons). Only the seven example rules carry real content.
//!
//! `cargo run -p reqlint --example gen_fixtures` writes these to
//! `crates/core/fixtures/`.

use std::collections::BTreeSet;

use crate::catalog::{
    ingest_file, Accuracy, Catalog, CatalogFile, CheckerBinding, ContextKind, InfoKind, ParamValue, Reason, Rule,
    RuleEntry, RuleType, Scope, Status,
};

/// A seven-block document with one violation per bound example rule.
pub const TABLE1_DOCUMENT: &str = "\
# Train control

The functionality restarts after a reset.

The interface is as defined in D-17.

REQ-2: If the door is open, the train shall not move.

REQ-3: A consist is a set of coupled vehicles.

REQ-7: The brake shall engage, i.e. pads contact the disc within 100 ms.

REQ-5: It shall be logged within 5 s.
";

/// Document list resolving the reference in [`TABLE1_DOCUMENT`].
pub const DOCUMENT_LIST: &str = "# id\ttitle\nD-17\tSignal Interface Spec\n";

#[allow(clippy::too_many_arguments)]
fn rule(
    id: &str,
    text: &str,
    rule_type: RuleType,
    context: ContextKind,
    scope: Scope,
    info: &[InfoKind],
    accuracy: Accuracy,
    reason: Option<Reason>,
    checker: Option<CheckerBinding>,
) -> Rule {
    Rule {
        id: id.to_string(),
        parent_id: None,
        status: Status::Approved,
        text: text.to_string(),
        rule_type,
        context,
        scope,
        required_info: info.iter().copied().collect(),
        accuracy,
        reason,
        checker,
    }
}

/// The seven example rules, in table order.
pub fn table1_rules() -> Vec<Rule> {
    use Accuracy::*;
    use InfoKind::*;
    vec![
        rule(
            "160",
            "Write \"function\", not \"functionality\".",
            RuleType::Lexical,
            ContextKind::Anywhere,
            Scope::WordPhrase,
            &[LemmasDictionaries],
            Deterministic,
            None,
            Some(
                CheckerBinding::new("forbidden_term")
                    .with_param("functionality", ParamValue::Text("function".into())),
            ),
        ),
        rule(
            "56",
            "A requirement opens with its subject.",
            RuleType::Grammatical,
            ContextKind::Requirement,
            Scope::Sentence,
            &[ParseTrees],
            HeuristicHigh,
            None,
            Some(CheckerBinding::new("subject_first")),
        ),
        rule(
            "78",
            "Definitions carry a leading \"Definition:\" label.",
            RuleType::Structural,
            ContextKind::Requirement,
            Scope::Section,
            &[LemmasDictionaries],
            HeuristicMedium,
            None,
            Some(CheckerBinding::new("definition_marker")),
        ),
        rule(
            "81",
            "Clarifying detail for a requirement goes into a requirement of its own.",
            RuleType::Semantic,
            ContextKind::Requirement,
            Scope::Section,
            &[DomainModels],
            HeuristicLow,
            None,
            Some(CheckerBinding::new("clarification_split")),
        ),
        rule(
            "24",
            "Other documents are cited by their title.",
            RuleType::Structural,
            ContextKind::Anywhere,
            Scope::Global,
            &[PureTextRegex, ListsOfX],
            Deterministic,
            None,
            Some(CheckerBinding::new("reference_style")),
        ),
        rule(
            "50",
            "Every requirement names its own subject.",
            RuleType::Semantic,
            ContextKind::Requirement,
            Scope::Sentence,
            &[PosTags],
            HeuristicHigh,
            None,
            Some(CheckerBinding::new("explicit_subject")),
        ),
        rule(
            "54",
            "The introduction holds no requirements.",
            RuleType::Unclassified,
            ContextKind::Unclassified,
            Scope::Unclassified,
            &[],
            NotDetectable,
            Some(Reason::UnclearRule),
            None,
        ),
    ]
}

pub fn table1_catalog_file() -> CatalogFile {
    CatalogFile {
        rules: table1_rules().iter().map(RuleEntry::from).collect(),
    }
}

pub fn table1_catalog() -> Catalog {
    ingest_file(&table1_catalog_file()).expect("example catalog is well formed")
}

const DETECTABLE_CONTEXTS: [ContextKind; 7] = [
    ContextKind::Anywhere,
    ContextKind::Requirement,
    ContextKind::Heading,
    ContextKind::Figure,
    ContextKind::Table,
    ContextKind::Reference,
    ContextKind::Enumeration,
];
const DETECTABLE_SCOPES: [Scope; 5] = [Scope::WordPhrase, Scope::Sentence, Scope::Section, Scope::Document, Scope::Global];
const DETECTABLE_TYPES: [RuleType; 4] = [RuleType::Lexical, RuleType::Grammatical, RuleType::Structural, RuleType::Semantic];

/// Per accuracy class: number of synthetic rules with each primary kind
/// (lemmas, regex, formatting), then the secondary kinds added to the first
/// rules of a given primary group.
struct ClassPlan {
    accuracy: Accuracy,
    primary: [usize; 3],
    /// (primary group, secondary kind, how many)
    secondary: &'static [(usize, InfoKind, usize)],
}

const PLANS: [ClassPlan; 4] = [
    ClassPlan {
        accuracy: Accuracy::Deterministic,
        primary: [26, 24, 16],
        secondary: &[
            (0, InfoKind::ListsOfX, 7),
            (0, InfoKind::WordStems, 3),
            (1, InfoKind::Formatting, 7),
            (1, InfoKind::TokensSentences, 3),
        ],
    },
    ClassPlan {
        accuracy: Accuracy::HeuristicHigh,
        primary: [10, 6, 2],
        secondary: &[(0, InfoKind::PosTags, 6), (0, InfoKind::Morphology, 3), (1, InfoKind::ParseTrees, 1)],
    },
    ClassPlan {
        accuracy: Accuracy::HeuristicMedium,
        primary: [10, 6, 1],
        secondary: &[
            (0, InfoKind::PosTags, 4),
            (0, InfoKind::Morphology, 2),
            (1, InfoKind::ParseTrees, 1),
            (1, InfoKind::NamedEntities, 1),
        ],
    },
    ClassPlan {
        accuracy: Accuracy::HeuristicLow,
        primary: [10, 6, 1],
        secondary: &[(0, InfoKind::DomainModels, 10)],
    },
];

const PRIMARY_KINDS: [InfoKind; 3] = [InfoKind::LemmasDictionaries, InfoKind::PureTextRegex, InfoKind::Formatting];

/// Reasons of the synthetic not-detectable rules (the example rule adds one
/// more `UnclearRule`).
const SYNTHETIC_REASONS: [(Reason, usize); 5] = [
    (Reason::UnclearRule, 33),
    (Reason::DeepSemantics, 1),
    (Reason::DomainKnowledge, 5),
    (Reason::SystemScope, 1),
    (Reason::ProcessStatus, 1),
];

fn synthetic_rules() -> Vec<Rule> {
    let mut rules = Vec::new();
    let mut push = |accuracy: Accuracy, info: BTreeSet<InfoKind>, reason: Option<Reason>| {
        let k = rules.len();
        let id = format!("S{:03}", k + 1);
        let rule_type = DETECTABLE_TYPES[k % DETECTABLE_TYPES.len()];
        rules.push(Rule {
            text: format!("Synthetic {rule_type:?} rule {id}."),
            id,
            parent_id: None,
            status: Status::Approved,
            rule_type,
            context: DETECTABLE_CONTEXTS[k % DETECTABLE_CONTEXTS.len()],
            scope: DETECTABLE_SCOPES[k % DETECTABLE_SCOPES.len()],
            required_info: info,
            accuracy,
            reason,
            checker: None,
        });
    };

    for plan in &PLANS {
        for (group, &count) in plan.primary.iter().enumerate() {
            // Secondary kinds are spread over consecutive rules of the group.
            let mut extra: Vec<BTreeSet<InfoKind>> = vec![BTreeSet::new(); count];
            let mut next = 0;
            for &(g, kind, n) in plan.secondary {
                if g != group {
                    continue;
                }
                for _ in 0..n {
                    extra[next % count].insert(kind);
                    next += 1;
                }
            }
            for mut info in extra {
                info.insert(PRIMARY_KINDS[group]);
                push(plan.accuracy, info, None);
            }
        }
    }
    for (reason, n) in SYNTHETIC_REASONS {
        for _ in 0..n {
            push(Accuracy::NotDetectable, BTreeSet::new(), Some(reason));
        }
    }
    rules
}

const RAW_ENTRIES: usize = 192;
const COMPOUND_PARENTS: usize = 30;
const TRIPLE_PARENTS: usize = 7;

/// The synthetic catalog file: 192 entries, 63 of them unapproved, 30
/// compound rules split into 67 parts, 166 classified rules in total.
pub fn sta_catalog_file() -> CatalogFile {
    let mut classified = table1_rules();
    classified.extend(synthetic_rules());
    let mut classified = classified.into_iter();

    let mut entries = Vec::with_capacity(RAW_ENTRIES);
    let mut approved = 0;
    let mut compounds = 0;
    let mut unapproved = 0;
    for i in 0..RAW_ENTRIES {
        if i % 3 == 2 && i < 189 {
            unapproved += 1;
            entries.push(RuleEntry {
                id: format!("U{unapproved:02}"),
                status: Some(Status::Unapproved),
                text: format!("Rule proposal {unapproved}, not approved."),
                ..RuleEntry::default()
            });
            continue;
        }
        let j = approved;
        approved += 1;
        let is_compound = j >= 7 && (j - 7) % 4 == 0 && compounds < COMPOUND_PARENTS;
        if !is_compound {
            entries.push(RuleEntry::from(&classified.next().expect("enough rules")));
            continue;
        }
        compounds += 1;
        let parts = if compounds > COMPOUND_PARENTS - TRIPLE_PARENTS { 3 } else { 2 };
        let id = format!("C{compounds:02}");
        let subs: Vec<RuleEntry> = (0..parts)
            .map(|_| {
                let mut sub = RuleEntry::from(&classified.next().expect("enough rules"));
                sub.status = None;
                sub
            })
            .collect();
        entries.push(RuleEntry {
            id: id.clone(),
            status: Some(Status::Approved),
            text: format!("Compound rule {id} combining {parts} requirements."),
            sub_rules: Some(subs),
            ..RuleEntry::default()
        });
    }
    assert!(classified.next().is_none(), "every classified rule placed");
    CatalogFile { rules: entries }
}

pub fn sta_catalog() -> Catalog {
    ingest_file(&sta_catalog_file()).expect("synthetic catalog is well formed")
}

/// File name and contents of every generated fixture file.
pub fn generated_files() -> Vec<(&'static str, String)> {
    vec![
        ("table1_catalog.json", table1_catalog_file().to_json_pretty()),
        ("sta_catalog.json", sta_catalog_file().to_json_pretty()),
        ("train_control.txt", TABLE1_DOCUMENT.to_string()),
        ("documents.tsv", DOCUMENT_LIST.to_string()),
    ]
}
