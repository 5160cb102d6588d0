use std::collections::BTreeMap;

use regex::Regex;

use super::{find_all, lowered, CheckerError, Hit};
use crate::catalog::ParamValue;
use crate::docmodel::Span;
use crate::nlp::{AnnotationSet, Annotator, Token};

fn token_span(tokens: &[Token]) -> Span {
    Span::new(tokens[0].span.start, tokens[tokens.len() - 1].span.end)
}

#[derive(Debug, Clone)]
struct Term {
    surface: String,
    lemmas: Vec<String>,
    replacement: Option<String>,
}

/// Flags forbidden words and phrases by lemma, so inflected forms match too.
#[derive(Debug, Clone)]
pub struct ForbiddenTerm {
    terms: Vec<Term>,
}

impl ForbiddenTerm {
    /// `params` maps each forbidden term to its replacement; an empty
    /// replacement means no suggestion.
    pub fn new(params: &BTreeMap<String, ParamValue>, annotator: &Annotator) -> Result<Self, CheckerError> {
        if params.is_empty() {
            return Err(CheckerError::BadParams("forbidden_term needs at least one term".into()));
        }
        let mut terms = Vec::new();
        for (surface, value) in params {
            let ParamValue::Text(replacement) = value else {
                return Err(CheckerError::BadParams(format!(
                    "replacement for `{surface}` must be a string"
                )));
            };
            let lemmas: Vec<String> = annotator.tokenize(surface).into_iter().map(|t| t.lemma).collect();
            if lemmas.is_empty() {
                return Err(CheckerError::BadParams("empty forbidden term".into()));
            }
            terms.push(Term {
                surface: surface.clone(),
                lemmas,
                replacement: (!replacement.trim().is_empty()).then(|| replacement.trim().to_string()),
            });
        }
        // Longest phrase wins at a given position.
        terms.sort_by_key(|t| std::cmp::Reverse(t.lemmas.len()));
        Ok(ForbiddenTerm { terms })
    }

    pub fn check(&self, ann: &AnnotationSet) -> Vec<Hit> {
        let lemmas: Vec<&str> = ann.tokens.iter().map(|t| t.lemma.as_str()).collect();
        let mut hits = Vec::new();
        let mut i = 0;
        while i < lemmas.len() {
            let found = self.terms.iter().find(|t| {
                lemmas.len() - i >= t.lemmas.len() && t.lemmas.iter().zip(&lemmas[i..]).all(|(a, b)| a == b)
            });
            match found {
                Some(term) => {
                    let n = term.lemmas.len();
                    let span = token_span(&ann.tokens[i..i + n]);
                    let hit = match &term.replacement {
                        Some(r) => Hit::new(span, format!("use \"{r}\" instead of \"{}\"", term.surface)).suggest(r.clone()),
                        None => Hit::new(span, format!("the term \"{}\" is not allowed", term.surface)),
                    };
                    hits.push(hit);
                    i += n;
                }
                None => i += 1,
            }
        }
        hits
    }
}

/// Flags each match of a regular expression, or, inverted, blocks without one.
#[derive(Debug, Clone)]
pub struct RegexCheck {
    re: Regex,
    message: String,
    invert: bool,
}

impl RegexCheck {
    pub fn new(params: &BTreeMap<String, ParamValue>) -> Result<Self, CheckerError> {
        let mut pattern = None;
        let mut message = None;
        let mut invert = false;
        for (key, value) in params {
            match (key.as_str(), value) {
                ("pattern", ParamValue::Text(p)) => pattern = Some(p.clone()),
                ("message", ParamValue::Text(m)) => message = Some(m.clone()),
                ("invert", ParamValue::Flag(b)) => invert = *b,
                ("invert", ParamValue::Text(t)) => {
                    invert = t
                        .parse()
                        .map_err(|_| CheckerError::BadParams(format!("invert must be true or false, got `{t}`")))?
                }
                (key, _) => return Err(CheckerError::BadParams(format!("unexpected regex parameter `{key}`"))),
            }
        }
        let pattern = pattern.ok_or_else(|| CheckerError::BadParams("regex needs a `pattern`".into()))?;
        let re = Regex::new(&pattern).map_err(|e| CheckerError::BadParams(format!("bad pattern: {e}")))?;
        let message = message.unwrap_or_else(|| {
            if invert {
                format!("text does not match `{pattern}`")
            } else {
                format!("text matches `{pattern}`")
            }
        });
        Ok(RegexCheck { re, message, invert })
    }

    pub fn check(&self, text: &str) -> Vec<Hit> {
        if text.is_empty() {
            return Vec::new();
        }
        if self.invert {
            return if self.re.is_match(text) {
                Vec::new()
            } else {
                vec![Hit::new(Span::new(0, text.len()), self.message.clone())]
            };
        }
        self.re
            .find_iter(text)
            .filter(|m| !m.is_empty())
            .map(|m| Hit::new(Span::new(m.start(), m.end()), self.message.clone()))
            .collect()
    }
}

#[derive(Debug, Clone)]
struct DocRef {
    id: String,
    title: String,
    id_tokens: Vec<String>,
    title_tokens: Vec<String>,
}

/// Flags a referenced document id whose title is not given in the same
/// sentence.
#[derive(Debug, Clone)]
pub struct ReferenceStyle {
    docs: Vec<DocRef>,
}

impl ReferenceStyle {
    pub fn new(documents: &BTreeMap<String, String>, annotator: &Annotator) -> Result<Self, CheckerError> {
        if documents.is_empty() {
            return Err(CheckerError::Resource(
                "reference_style needs a non-empty document list".into(),
            ));
        }
        let docs = documents
            .iter()
            .map(|(id, title)| DocRef {
                id: id.clone(),
                title: title.clone(),
                id_tokens: annotator.tokenize(id).into_iter().map(|t| t.text).collect(),
                title_tokens: lowered(&annotator.tokenize(title)),
            })
            .collect();
        Ok(ReferenceStyle { docs })
    }

    pub fn check(&self, ann: &AnnotationSet) -> Vec<Hit> {
        let mut hits = Vec::new();
        for index in 0..ann.sentences.len() {
            let tokens = ann.sentence_tokens(index);
            let texts: Vec<String> = tokens.iter().map(|t| t.text.clone()).collect();
            let lower = lowered(tokens);
            for doc in &self.docs {
                let occurrences = find_all(&texts, &doc.id_tokens);
                if occurrences.is_empty() || !find_all(&lower, &doc.title_tokens).is_empty() {
                    continue;
                }
                for start in occurrences {
                    let span = token_span(&tokens[start..start + doc.id_tokens.len()]);
                    hits.push(
                        Hit::new(span, format!("reference to {} without its title \"{}\"", doc.id, doc.title))
                            .suggest(format!("{} ({})", doc.id, doc.title)),
                    );
                }
            }
        }
        hits.sort_by_key(|h| (h.span.start, h.span.end));
        hits
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ann(text: &str) -> AnnotationSet {
        Annotator::default().annotate_text(0, text)
    }

    fn forbidden(pairs: &[(&str, &str)]) -> ForbiddenTerm {
        let params = pairs
            .iter()
            .map(|(k, v)| (k.to_string(), ParamValue::Text(v.to_string())))
            .collect();
        ForbiddenTerm::new(&params, &Annotator::default()).unwrap()
    }

    fn regex(pairs: &[(&str, ParamValue)]) -> Result<RegexCheck, CheckerError> {
        RegexCheck::new(&pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect())
    }

    fn text(s: &str) -> ParamValue {
        ParamValue::Text(s.into())
    }

    #[test]
    fn forbidden_term_examples() {
        let c = forbidden(&[("functionality", "function")]);
        let hits = c.check(&ann("The functionality restarts."));
        assert_eq!(hits.len(), 1);
        assert_eq!(hits[0].suggestion.as_deref(), Some("function"));
        assert_eq!(hits[0].span, Span::new(4, 17));
        assert!(c.check(&ann("The function restarts.")).is_empty());
        assert_eq!(c.check(&ann("Functionalities and functionality restart.")).len(), 2);
    }

    #[test]
    fn forbidden_phrase_and_no_replacement() {
        let c = forbidden(&[("user friendly", ""), ("user", "operator")]);
        let hits = c.check(&ann("A user friendly user screen."));
        assert_eq!(hits.len(), 2);
        assert_eq!(hits[0].suggestion, None);
        assert_eq!(hits[0].span, Span::new(2, 15));
        assert_eq!(hits[1].suggestion.as_deref(), Some("operator"));
    }

    #[test]
    fn forbidden_term_params() {
        let a = Annotator::default();
        assert!(matches!(ForbiddenTerm::new(&BTreeMap::new(), &a), Err(CheckerError::BadParams(_))));
        let flag: BTreeMap<_, _> = [("x".to_string(), ParamValue::Flag(true))].into();
        assert!(ForbiddenTerm::new(&flag, &a).is_err());
    }

    #[test]
    fn regex_examples() {
        let c = regex(&[("pattern", text(r"\bTBD\b"))]).unwrap();
        assert_eq!(c.check("Value is TBD").len(), 1);
        assert!(c.check("").is_empty());
        let inv = regex(&[("pattern", text("^Definition:")), ("invert", ParamValue::Flag(true))]).unwrap();
        assert!(inv.check("Definition: A consist is a set.").is_empty());
        assert_eq!(inv.check("A consist is a set.").len(), 1);
        let inv_text = regex(&[("pattern", text("x")), ("invert", text("true"))]).unwrap();
        assert_eq!(inv_text.check("abc")[0].span, Span::new(0, 3));
    }

    #[test]
    fn regex_skips_empty_matches_and_rejects_bad_params() {
        let c = regex(&[("pattern", text("a*")), ("message", text("m"))]).unwrap();
        let hits = c.check("baab");
        assert_eq!(hits.len(), 1);
        assert_eq!(hits[0].message, "m");
        assert!(matches!(regex(&[("pattern", text("("))]), Err(CheckerError::BadParams(_))));
        assert!(regex(&[]).is_err());
        assert!(regex(&[("pattern", text("a")), ("invert", text("maybe"))]).is_err());
        assert!(regex(&[("pattern", text("a")), ("colour", text("red"))]).is_err());
    }

    #[test]
    fn reference_style_examples() {
        let docs: BTreeMap<_, _> = [("D-17".to_string(), "Signal Interface Spec".to_string())].into();
        let c = ReferenceStyle::new(&docs, &Annotator::default()).unwrap();
        let hits = c.check(&ann("The interface is as defined in D-17."));
        assert_eq!(hits.len(), 1);
        assert_eq!(hits[0].suggestion.as_deref(), Some("D-17 (Signal Interface Spec)"));
        assert!(c.check(&ann("as defined in D-17, Signal Interface Spec.")).is_empty());
        assert!(c.check(&ann("No references here.")).is_empty());
        // The title has to be in the same sentence.
        assert_eq!(c.check(&ann("See the signal interface spec. It is D-17.")).len(), 1);
        // Whole tokens only.
        assert!(c.check(&ann("See D-170.")).is_empty());
    }

    #[test]
    fn reference_style_needs_documents() {
        let err = ReferenceStyle::new(&BTreeMap::new(), &Annotator::default()).unwrap_err();
        assert!(matches!(err, CheckerError::Resource(_)));
    }
}
