//! Catalog statistics and inter-rater agreement.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::catalog::{Accuracy, Catalog, ContextKind, IngestReport, InfoKind, Reason, RuleType, Scope};

/// Integer percentage of `count / denominator`, rounded half up. Zero when
/// the denominator is zero.
pub fn percent(count: usize, denominator: usize) -> u32 {
    if denominator == 0 {
        return 0;
    }
    ((200 * count + denominator) / (2 * denominator)) as u32
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DenominatorKind {
    AllRules,
    DetectableRules,
    NotDetectableRules,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry {
    pub label: String,
    pub count: usize,
    pub percent: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Distribution {
    pub entries: Vec<Entry>,
    pub denominator: usize,
    pub denominator_kind: DenominatorKind,
}

impl Distribution {
    fn from_counts(counts: impl IntoIterator<Item = (String, usize)>, denominator: usize, kind: DenominatorKind) -> Self {
        Distribution {
            entries: counts
                .into_iter()
                .map(|(label, count)| Entry {
                    percent: percent(count, denominator),
                    label,
                    count,
                })
                .collect(),
            denominator,
            denominator_kind: kind,
        }
    }

    pub fn get(&self, label: &str) -> Option<&Entry> {
        self.entries.iter().find(|e| e.label == label)
    }
}

/// Rules per accuracy class, over all rules.
pub fn accuracy_distribution(catalog: &Catalog) -> Distribution {
    let counts = Accuracy::ALL.map(|a| {
        let n = catalog.rules.iter().filter(|r| r.accuracy == a).count();
        (a.name().to_string(), n)
    });
    Distribution::from_counts(counts, catalog.rules.len(), DenominatorKind::AllRules)
}

/// Percentage of all rules whose accuracy is in `classes`.
pub fn combined_share(catalog: &Catalog, classes: &[Accuracy]) -> u32 {
    let n = catalog.rules.iter().filter(|r| classes.contains(&r.accuracy)).count();
    percent(n, catalog.rules.len())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossTab {
    pub rows: Vec<RuleType>,
    pub cols: Vec<Accuracy>,
    /// `cells[row][col]`.
    pub cells: Vec<Vec<usize>>,
}

impl CrossTab {
    pub fn get(&self, row: RuleType, col: Accuracy) -> usize {
        let r = self.rows.iter().position(|&x| x == row).expect("all types present");
        let c = self.cols.iter().position(|&x| x == col).expect("all classes present");
        self.cells[r][c]
    }

    pub fn total(&self) -> usize {
        self.cells.iter().flatten().sum()
    }
}

/// Rule counts by type and accuracy class.
pub fn type_accuracy_crosstab(catalog: &Catalog) -> CrossTab {
    let cells = RuleType::ALL
        .iter()
        .map(|&t| {
            Accuracy::ALL
                .iter()
                .map(|&a| catalog.rules.iter().filter(|r| r.rule_type == t && r.accuracy == a).count())
                .collect()
        })
        .collect();
    CrossTab {
        rows: RuleType::ALL.to_vec(),
        cols: Accuracy::ALL.to_vec(),
        cells,
    }
}

fn detectable_count(catalog: &Catalog) -> usize {
    catalog.rules.iter().filter(|r| r.accuracy.is_detectable()).count()
}

/// Detectable rules needing each kind of information, most frequent first.
/// A rule may need several kinds, so counts can add up to more than the
/// denominator.
pub fn info_frequency(catalog: &Catalog) -> Distribution {
    let mut counts: Vec<(String, usize)> = InfoKind::ALL
        .iter()
        .map(|&k| {
            let n = catalog
                .rules
                .iter()
                .filter(|r| r.accuracy.is_detectable() && r.required_info.contains(&k))
                .count();
            (format!("{k:?}"), n)
        })
        .collect();
    // Stable: ties keep declaration order.
    counts.sort_by_key(|c| std::cmp::Reverse(c.1));
    Distribution::from_counts(counts, detectable_count(catalog), DenominatorKind::DetectableRules)
}

/// Reasons among not-detectable rules. Empty when there are none.
pub fn reasons_distribution(catalog: &Catalog) -> Distribution {
    let nd: Vec<_> = catalog.rules.iter().filter(|r| !r.accuracy.is_detectable()).collect();
    if nd.is_empty() {
        return Distribution::from_counts([], 0, DenominatorKind::NotDetectableRules);
    }
    let counts = Reason::ALL.map(|reason| {
        let n = nd.iter().filter(|r| r.reason == Some(reason)).count();
        (reason.code().to_string(), n)
    });
    Distribution::from_counts(counts, nd.len(), DenominatorKind::NotDetectableRules)
}

/// Scope of detectable rules.
pub fn scope_distribution(catalog: &Catalog) -> Distribution {
    let counts = Scope::ALL.map(|s| {
        let n = catalog
            .rules
            .iter()
            .filter(|r| r.accuracy.is_detectable() && r.scope == s)
            .count();
        (format!("{s:?}"), n)
    });
    Distribution::from_counts(counts, detectable_count(catalog), DenominatorKind::DetectableRules)
}

/// Context of detectable rules.
pub fn context_distribution(catalog: &Catalog) -> Distribution {
    let counts = ContextKind::ALL.map(|c| {
        let n = catalog
            .rules
            .iter()
            .filter(|r| r.accuracy.is_detectable() && r.context == c)
            .count();
        (format!("{c:?}"), n)
    });
    Distribution::from_counts(counts, detectable_count(catalog), DenominatorKind::DetectableRules)
}

pub fn ingest_summary(catalog: &Catalog) -> IngestReport {
    catalog.ingest
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum Scheme {
    #[default]
    Linear,
    Quadratic,
    Unweighted,
}

impl Scheme {
    /// Agreement weight between ordinal positions `i` and `j` on a scale of
    /// `k` classes.
    pub fn weight(self, i: usize, j: usize, k: usize) -> f64 {
        let d = i.abs_diff(j) as f64;
        let span = (k - 1) as f64;
        match self {
            Scheme::Linear => 1.0 - d / span,
            Scheme::Quadratic => 1.0 - (d * d) / (span * span),
            Scheme::Unweighted => {
                if i == j {
                    1.0
                } else {
                    0.0
                }
            }
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scheme::Linear => "linear",
            Scheme::Quadratic => "quadratic",
            Scheme::Unweighted => "unweighted",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AgreementResult {
    pub kappa: f64,
    pub observed_agreement: f64,
    pub expected_agreement: f64,
    pub weight_scheme: Scheme,
    pub items: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AgreementError {
    #[error("no labels to compare")]
    Empty,
    #[error("label lists differ in length ({0} vs {1})")]
    LengthMismatch(usize, usize),
}

/// Weighted Cohen's kappa over the five accuracy classes.
///
/// When expected agreement is 1 (every label in one class for both raters)
/// observed agreement is 1 as well and kappa is reported as 1.
pub fn weighted_kappa(a: &[Accuracy], b: &[Accuracy], scheme: Scheme) -> Result<AgreementResult, AgreementError> {
    if a.len() != b.len() {
        return Err(AgreementError::LengthMismatch(a.len(), b.len()));
    }
    if a.is_empty() {
        return Err(AgreementError::Empty);
    }
    const K: usize = Accuracy::ALL.len();
    let n = a.len() as f64;
    let mut observed = [[0.0f64; K]; K];
    let mut row = [0.0f64; K];
    let mut col = [0.0f64; K];
    for (&x, &y) in a.iter().zip(b) {
        observed[x.rank()][y.rank()] += 1.0 / n;
        row[x.rank()] += 1.0 / n;
        col[y.rank()] += 1.0 / n;
    }
    let mut po = 0.0;
    let mut pe = 0.0;
    for i in 0..K {
        for j in 0..K {
            let w = scheme.weight(i, j, K);
            po += w * observed[i][j];
            pe += w * row[i] * col[j];
        }
    }
    let kappa = if (1.0 - pe).abs() < 1e-12 { 1.0 } else { (po - pe) / (1.0 - pe) };
    Ok(AgreementResult {
        kappa,
        observed_agreement: po,
        expected_agreement: pe,
        weight_scheme: scheme,
        items: a.len(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LabelError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("rule ids differ between label files: {0}")]
    Mismatch(String),
}

/// Parses a rater file: one `rule-id  AccuracyClass` pair per line,
/// separated by whitespace. `#` starts a comment line.
pub fn parse_labels(text: &str) -> Result<Vec<(String, Accuracy)>, LabelError> {
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let syntax = |message: String| LabelError::Syntax { line: idx + 1, message };
        let mut parts = line.split_whitespace();
        let (Some(id), Some(label), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(syntax("expected `rule-id label`".into()));
        };
        let accuracy: Accuracy = label.parse().map_err(syntax)?;
        if !seen.insert(id.to_string()) {
            return Err(syntax(format!("duplicate rule id `{id}`")));
        }
        out.push((id.to_string(), accuracy));
    }
    Ok(out)
}

/// Pairs two raters' labels by rule id, in the first file's order. Both
/// files must label exactly the same rules.
pub fn align_labels(
    a: &[(String, Accuracy)],
    b: &[(String, Accuracy)],
) -> Result<(Vec<Accuracy>, Vec<Accuracy>), LabelError> {
    let b_map: std::collections::BTreeMap<&str, Accuracy> = b.iter().map(|(id, l)| (id.as_str(), *l)).collect();
    let a_ids: BTreeSet<&str> = a.iter().map(|(id, _)| id.as_str()).collect();
    let only_a: Vec<&str> = a_ids.iter().filter(|id| !b_map.contains_key(*id)).copied().collect();
    let only_b: Vec<&str> = b_map.keys().filter(|id| !a_ids.contains(*id)).copied().collect();
    if !only_a.is_empty() || !only_b.is_empty() {
        return Err(LabelError::Mismatch(format!(
            "only in first: [{}], only in second: [{}]",
            only_a.join(", "),
            only_b.join(", ")
        )));
    }
    Ok(a.iter().map(|(id, l)| (*l, b_map[id.as_str()])).unzip())
}
