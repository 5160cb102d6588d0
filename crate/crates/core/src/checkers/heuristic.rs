use super::{find_all, lowered, Hit};
use crate::docmodel::Span;
use crate::nlp::{AnnotationSet, Annotator, ChunkLabel, PosTag, Token};

const PRONOUN_SUBJECTS: &[&str] = &["it", "this", "that", "they"];
const DEFINITION_MARKERS: &[&[&str]] = &[&["is", "a"], &["is", "an"], &["means"], &["refers", "to"], &["denotes"]];
const CLARIFICATION_MARKERS: &[&str] = &["i.e.", "e.g.", "in other words", "this means", "to clarify"];
const MODALS: &[&str] = &["shall", "must", "should", "will", "may", "can", "could", "would", "might"];
const MAX_PARENTHETICAL: usize = 5;

/// Token indices of a sentence after its `ID:` label, if any.
fn body(ann: &AnnotationSet, sentence: usize) -> std::ops::Range<usize> {
    let range = ann.sentences[sentence].tokens.clone();
    let start = ann
        .sentence_chunks(sentence)
        .find(|c| c.is_label)
        .map_or(range.start, |c| c.tokens.end);
    start..range.end
}

/// Span from the first token of `range` to the end of the sentence, or
/// `None` when the range holds nothing but punctuation.
fn body_span(tokens: &[Token], range: std::ops::Range<usize>) -> Option<Span> {
    if tokens[range.clone()].iter().all(Token::is_punct) {
        return None;
    }
    Some(Span::new(tokens[range.start].span.start, tokens[range.end - 1].span.end))
}

/// Flags requirement sentences that do not open with their subject.
#[derive(Debug, Clone, Copy)]
pub struct SubjectFirst;

impl SubjectFirst {
    pub fn check(&self, ann: &AnnotationSet) -> Vec<Hit> {
        let mut hits = Vec::new();
        for s in 0..ann.sentences.len() {
            let first = ann.sentence_chunks(s).find(|c| {
                !c.is_label && !(c.label == ChunkLabel::O && ann.tokens[c.tokens.clone()].iter().all(Token::is_punct))
            });
            let Some(first) = first else { continue };
            if first.is_subject {
                continue;
            }
            let Some(span) = body_span(&ann.tokens, first.tokens.start..ann.sentences[s].tokens.end) else {
                continue;
            };
            hits.push(
                Hit::new(span, "requirement does not start with its subject")
                    .suggest("rephrase so the sentence opens with the subject"),
            );
        }
        hits
    }
}

/// Flags requirement sentences without a subject, or with a bare pronoun
/// as subject.
#[derive(Debug, Clone, Copy)]
pub struct ExplicitSubject;

impl ExplicitSubject {
    pub fn check(&self, ann: &AnnotationSet) -> Vec<Hit> {
        let mut hits = Vec::new();
        for s in 0..ann.sentences.len() {
            let Some(span) = body_span(&ann.tokens, body(ann, s)) else {
                continue;
            };
            match ann.subject(s) {
                None => hits.push(Hit::new(span, "requirement sentence has no explicit subject")),
                Some(subject) if subject.tokens.len() == 1 => {
                    let word = &ann.tokens[subject.tokens.start];
                    if PRONOUN_SUBJECTS.contains(&word.lower().as_str()) {
                        hits.push(
                            Hit::new(span, format!("subject \"{}\" is a pronoun, name the subject", word.text)),
                        );
                    }
                }
                Some(_) => {}
            }
        }
        hits
    }
}

/// Flags definitions written without the `Definition:` marker.
#[derive(Debug, Clone, Copy)]
pub struct DefinitionMarker;

fn is_noun(token: &Token) -> bool {
    matches!(token.pos, PosTag::Noun | PosTag::Propn)
}

fn has_definition_marker(tokens: &[Token]) -> bool {
    let start = match tokens {
        [id, colon, ..] if colon.text == ":" && !id.text.eq_ignore_ascii_case("definition") => 2,
        _ => 0,
    };
    matches!(&tokens[start.min(tokens.len())..], [word, colon, ..] if word.text.eq_ignore_ascii_case("definition") && colon.text == ":")
}

fn definitional_at(tokens: &[Token], lower: &[String], i: usize) -> bool {
    if !is_noun(&tokens[i]) {
        return false;
    }
    DEFINITION_MARKERS.iter().any(|marker| {
        let after = i + 1 + marker.len();
        if after > tokens.len() || !marker.iter().zip(&lower[i + 1..]).all(|(m, w)| m == w) {
            return false;
        }
        let mut j = after;
        while j < tokens.len() && matches!(tokens[j].pos, PosTag::Det | PosTag::Adj | PosTag::Num) {
            j += 1;
        }
        j < tokens.len() && is_noun(&tokens[j])
    })
}

impl DefinitionMarker {
    pub fn check(&self, ann: &AnnotationSet) -> Vec<Hit> {
        if has_definition_marker(&ann.tokens) {
            return Vec::new();
        }
        let mut hits = Vec::new();
        for s in 0..ann.sentences.len() {
            let range = body(ann, s);
            let tokens = &ann.tokens[range.clone()];
            let lower = lowered(tokens);
            if (0..tokens.len()).any(|i| definitional_at(tokens, &lower, i)) {
                if let Some(span) = body_span(&ann.tokens, range) {
                    hits.push(
                        Hit::new(span, "definition is not marked with \"Definition:\"")
                            .suggest("start the block with \"Definition:\""),
                    );
                }
            }
        }
        hits
    }
}

/// Flags clarifications that could be requirements of their own. Low
/// confidence by design.
#[derive(Debug, Clone)]
pub struct ClarificationSplit {
    markers: Vec<Vec<String>>,
}

impl ClarificationSplit {
    pub fn new(annotator: &Annotator) -> Self {
        let markers = CLARIFICATION_MARKERS
            .iter()
            .map(|m| lowered(&annotator.tokenize(m)))
            .collect();
        ClarificationSplit { markers }
    }

    fn marker_span(&self, tokens: &[Token], lower: &[String]) -> Option<Span> {
        self.markers
            .iter()
            .filter_map(|m| find_all(lower, m).first().map(|&i| (i, m.len())))
            .min()
            .map(|(i, n)| Span::new(tokens[i].span.start, tokens[i + n - 1].span.end))
    }

    fn parenthetical_span(tokens: &[Token]) -> Option<Span> {
        let modal = tokens
            .iter()
            .position(|t| t.pos == PosTag::Aux && MODALS.contains(&t.lower().as_str()))?;
        let mut i = modal + 1;
        while i < tokens.len() {
            if tokens[i].text == "(" {
                let close = (i + 1..tokens.len()).find(|&j| tokens[j].text == ")");
                let inner_end = close.unwrap_or(tokens.len());
                if inner_end - i - 1 > MAX_PARENTHETICAL {
                    let last = close.unwrap_or(tokens.len() - 1);
                    return Some(Span::new(tokens[i].span.start, tokens[last].span.end));
                }
                i = inner_end;
            }
            i += 1;
        }
        None
    }

    pub fn check(&self, ann: &AnnotationSet) -> Vec<Hit> {
        let mut hits = Vec::new();
        for s in 0..ann.sentences.len() {
            let tokens = &ann.tokens[body(ann, s)];
            let lower = lowered(tokens);
            let span = self
                .marker_span(tokens, &lower)
                .or_else(|| Self::parenthetical_span(tokens));
            if let Some(span) = span {
                hits.push(
                    Hit::new(span, "clarification could be a separate requirement (low-confidence candidate)")
                        .suggest("state the clarification as its own requirement"),
                );
            }
        }
        hits
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ann(text: &str) -> AnnotationSet {
        Annotator::default().annotate_text(0, text)
    }

    #[test]
    fn subject_first_examples() {
        assert_eq!(SubjectFirst.check(&ann("REQ-2: If the door is open, the train shall not move.")).len(), 1);
        assert!(SubjectFirst.check(&ann("REQ-3: The train shall not move while the door is open.")).is_empty());
        assert!(SubjectFirst.check(&ann("REQ-3:")).is_empty());
        assert!(SubjectFirst.check(&ann("")).is_empty());
        assert_eq!(SubjectFirst.check(&ann("REQ-4: Shall be logged within 5 s.")).len(), 1);
    }

    #[test]
    fn explicit_subject_examples() {
        let hits = ExplicitSubject.check(&ann("REQ-4: Shall be logged within 5 s."));
        assert_eq!(hits.len(), 1);
        assert!(hits[0].message.contains("no explicit subject"));
        let hits = ExplicitSubject.check(&ann("REQ-5: It shall be logged within 5 s."));
        assert_eq!(hits.len(), 1);
        assert!(hits[0].message.contains("pronoun"));
        assert!(ExplicitSubject.check(&ann("REQ-6: The event shall be logged within 5 s.")).is_empty());
        assert!(ExplicitSubject.check(&ann("REQ-6:")).is_empty());
    }

    #[test]
    fn definition_marker_examples() {
        assert_eq!(DefinitionMarker.check(&ann("A consist is a set of coupled vehicles.")).len(), 1);
        assert!(DefinitionMarker.check(&ann("Definition: A consist is a set of coupled vehicles.")).is_empty());
        assert!(DefinitionMarker.check(&ann("REQ-3: Definition: A consist is a set of coupled vehicles.")).is_empty());
        assert!(DefinitionMarker.check(&ann("The system is available.")).is_empty());
        assert_eq!(DefinitionMarker.check(&ann("REQ-3: A consist is a set of coupled vehicles.")).len(), 1);
    }

    #[test]
    fn clarification_examples() {
        let c = ClarificationSplit::new(&Annotator::default());
        let hits = c.check(&ann("REQ-7: The brake shall engage, i.e. pads contact the disc within 100 ms."));
        assert_eq!(hits.len(), 1);
        assert!(hits[0].message.contains("low-confidence"));
        assert!(c.check(&ann("REQ-8: The brake shall engage within 100 ms.")).is_empty());
        assert!(c.check(&ann("REQ-9: The brake (disc type) shall engage.")).is_empty());
        assert_eq!(
            c.check(&ann("REQ-9: The brake shall engage (the pads close on the disc quickly).")).len(),
            1
        );
        // Long parenthetical before the modal is not a candidate.
        assert!(c.check(&ann("REQ-9: The brake (the one on the rear bogie) shall engage.")).is_empty());
    }
}
