//! Rule-based part-of-speech tagging.
//!
//! Tags are assigned left to right in this order: punctuation and numbers,
//! the closed-class lexicon, identifier shapes, context rules (after an
//! auxiliary, after a determiner, after a clause-initial noun), suffix
//! heuristics, capitalisation, and finally a default of NOUN.

use std::collections::BTreeSet;

use super::lexicon::{ClosedClass, Lexicon};
use super::{MorphFlag, PosTag, Token};

const ADJ_SUFFIXES: &[&str] = &[
    "able", "ible", "al", "ous", "ive", "ful", "less", "ic", "ical", "ary", "ant", "ent",
];
const NOUN_SUFFIXES: &[&str] = &[
    "tion", "sion", "ment", "ness", "ity", "ance", "ence", "ship", "ism", "ure", "er", "or",
];

fn has_suffix(word: &str, suffixes: &[&str]) -> bool {
    suffixes
        .iter()
        .any(|s| word.len() > s.len() + 2 && word.ends_with(s))
}

fn is_punctuation(text: &str) -> bool {
    !text.chars().any(char::is_alphanumeric)
}

fn is_number(text: &str) -> bool {
    text.starts_with(|c: char| c.is_ascii_digit())
        && text.chars().all(|c| c.is_ascii_digit() || c == '.' || c == ',')
}

/// Identifier shapes such as `REQ-1`, `D-17` or `EN50126`.
fn is_identifier(text: &str) -> bool {
    let has_digit = text.chars().any(|c| c.is_ascii_digit());
    let has_alpha = text.chars().any(char::is_alphabetic);
    has_digit && has_alpha && text.starts_with(|c: char| c.is_ascii_uppercase())
}

fn is_be_form(lower: &str) -> bool {
    matches!(lower, "be" | "is" | "are" | "was" | "were" | "been" | "being" | "am")
}

fn is_open_word(lexicon: &Lexicon, token: Option<&Token>) -> bool {
    token.is_some_and(|t| {
        !is_punctuation(&t.text) && !is_number(&t.text) && lexicon.closed_class(&t.text).is_none()
    })
}

/// Tags one sentence with the bundled lexicon.
pub fn pos_tag(tokens: &[Token]) -> Vec<PosTag> {
    let annotator = super::Annotator::default();
    pos_tag_with(annotator.lexicon(), tokens)
}

pub(crate) fn pos_tag_with(lexicon: &Lexicon, tokens: &[Token]) -> Vec<PosTag> {
    let mut tags: Vec<PosTag> = Vec::with_capacity(tokens.len());
    // Whether the current clause has seen a verb; reset at commas and conjunctions.
    let mut clause_has_verb = false;
    // Index of the first token of the clause proper (after an `ID:` label).
    let mut clause_start = 0;

    for (i, token) in tokens.iter().enumerate() {
        let lower = token.text.to_lowercase();
        let next = tokens.get(i + 1);
        // Context looks through adverbs: "shall automatically start".
        let prev = (0..i).rev().find(|&j| tags[j] != PosTag::Adv);
        let prev_tag = prev.map(|j| tags[j]);
        let prev_lower = prev.map(|j| tokens[j].text.to_lowercase());

        let tag = if is_punctuation(&token.text) {
            PosTag::Punct
        } else if is_number(&token.text) {
            PosTag::Num
        } else if let Some(class) = lexicon.closed_class(&token.text) {
            match class {
                ClosedClass::Tag(tag) => tag,
                ClosedClass::Subordinator => PosTag::Conj,
                ClosedClass::DetOrPron => {
                    if is_open_word(lexicon, next) {
                        PosTag::Det
                    } else {
                        PosTag::Pron
                    }
                }
                ClosedClass::PartOrAdp => {
                    let capitalised = next.is_some_and(|t| t.text.starts_with(char::is_uppercase));
                    if is_open_word(lexicon, next) && !capitalised {
                        PosTag::Part
                    } else {
                        PosTag::Adp
                    }
                }
            }
        } else if is_identifier(&token.text) {
            PosTag::Propn
        } else if lower.ends_with("ly") && lower.len() > 4 && !lower.ends_with("ply") && !lower.ends_with("bly") {
            PosTag::Adv
        } else if let Some(tag) = after_auxiliary(&lower, prev_tag, prev_lower.as_deref()) {
            tag
        } else if matches!(prev_tag, Some(PosTag::Det | PosTag::Adj | PosTag::Num)) && prev == Some(i - 1) {
            let modifier = has_suffix(&lower, ADJ_SUFFIXES) || lower.ends_with("ed") || lower.ends_with("ing");
            if modifier && is_open_word(lexicon, next) {
                PosTag::Adj
            } else {
                PosTag::Noun
            }
        } else if matches!(prev_tag, Some(PosTag::Noun | PosTag::Propn | PosTag::Pron))
            && !clause_has_verb
            && looks_finite(&lower)
            || lower.ends_with("ing") && lower.len() > 5
            || lower.ends_with("ed") && lower.len() > 4
        {
            PosTag::Verb
        } else if has_suffix(&lower, NOUN_SUFFIXES) {
            PosTag::Noun
        } else if has_suffix(&lower, ADJ_SUFFIXES) {
            PosTag::Adj
        } else if i > clause_start && token.text.starts_with(char::is_uppercase) {
            PosTag::Propn
        } else {
            PosTag::Noun
        };

        if tag.is_verbal() {
            clause_has_verb = true;
        }
        if tag == PosTag::Conj || token.text == "," || token.text == ";" {
            clause_has_verb = false;
        }
        if token.text == ":" && i <= 2 {
            clause_start = i + 1;
        }
        tags.push(tag);
    }
    tags
}

fn after_auxiliary(lower: &str, prev_tag: Option<PosTag>, prev_lower: Option<&str>) -> Option<PosTag> {
    match prev_tag? {
        PosTag::Aux if prev_lower.is_some_and(is_be_form) => {
            if lower.ends_with("ed") || lower.ends_with("en") || lower.ends_with("ing") {
                Some(PosTag::Verb)
            } else {
                Some(PosTag::Adj)
            }
        }
        PosTag::Aux => Some(PosTag::Verb),
        PosTag::Part if matches!(prev_lower, Some("not" | "n't" | "to")) => Some(PosTag::Verb),
        _ => None,
    }
}

/// Finite verb shapes after a clause-initial noun phrase: "the user logs in".
fn looks_finite(lower: &str) -> bool {
    let third_person = lower.ends_with('s') && !lower.ends_with("ss") && !lower.ends_with("us") && lower.len() > 2;
    let past = lower.ends_with("ed") && lower.len() > 3;
    third_person || past
}

/// Morphological flags implied by a tagged token's surface form.
pub(crate) fn morphology(token: &Token) -> BTreeSet<MorphFlag> {
    let lower = token.text.to_lowercase();
    let mut flags = BTreeSet::new();
    match token.pos {
        PosTag::Noun | PosTag::Propn => {
            if lower.ends_with('s') && token.lemma != lower {
                flags.insert(MorphFlag::Plural);
            }
        }
        PosTag::Verb | PosTag::Aux => {
            if lower.ends_with("ed") {
                flags.insert(MorphFlag::PastTense);
            } else if lower.ends_with("ing") {
                flags.insert(MorphFlag::Gerund);
            } else if lower.ends_with('s') && !lower.ends_with("ss") && token.lemma != lower {
                flags.insert(MorphFlag::ThirdPersonSingular);
            }
        }
        PosTag::Adj | PosTag::Adv => {
            if lower.ends_with("est") && lower.len() > 5 {
                flags.insert(MorphFlag::Superlative);
            } else if lower.ends_with("er") && lower.len() > 4 {
                flags.insert(MorphFlag::Comparative);
            }
        }
        _ => {}
    }
    flags
}
