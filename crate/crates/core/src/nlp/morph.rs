//! Lemmatisation and stemming.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use rust_stemmers::{Algorithm, Stemmer};

// Iteration cap; with validated exception dictionaries the loops below reach
// a fixed point long before this.
const MAX_STEPS: usize = 32;

fn is_vowel(c: u8) -> bool {
    matches!(c, b'a' | b'e' | b'i' | b'o' | b'u' | b'y')
}

fn has_vowel(s: &str) -> bool {
    s.bytes().any(is_vowel)
}

/// Endings after which a stripped `-ed`/`-ing` leaves a stem missing its
/// silent `e` (creat -> create, initializ -> initialize).
const SILENT_E_ENDINGS: &[&str] = &[
    "at", "iz", "is", "bl", "ak", "av", "ag", "iv", "ov", "ur", "us", "uc", "ut", "ud", "ac", "rg",
    "dg", "tl",
];

/// Undo consonant doubling or restore a silent `e` after stripping.
fn repair(stem: &str) -> String {
    let b = stem.as_bytes();
    let n = b.len();
    if n >= 3 && b[n - 1] == b[n - 2] && !is_vowel(b[n - 1]) && !matches!(b[n - 1], b'l' | b's' | b'z') {
        return stem[..n - 1].to_string();
    }
    if SILENT_E_ENDINGS.iter().any(|e| stem.ends_with(e)) {
        return format!("{stem}e");
    }
    stem.to_string()
}

/// One reduction step by suffix rules. Returns the input unchanged when no
/// rule applies.
fn suffix_step(w: &str) -> String {
    if !w.bytes().all(|c| c.is_ascii_lowercase()) {
        return w.to_string();
    }
    let n = w.len();
    if (w.ends_with("ies") || w.ends_with("ied")) && n > 4 {
        return format!("{}y", &w[..n - 3]);
    }
    if w.ends_with("sses") {
        return w[..n - 2].to_string();
    }
    if w.ends_with("es") && n > 3 {
        let base = &w[..n - 2];
        if ["s", "x", "z", "ch", "sh"].iter().any(|e| base.ends_with(e)) {
            return base.to_string();
        }
    }
    if w.ends_with('s') && n > 3 && !["ss", "us", "is"].iter().any(|e| w.ends_with(e)) {
        return w[..n - 1].to_string();
    }
    if w.ends_with("ing") && n > 5 {
        let base = &w[..n - 3];
        if has_vowel(base) && base.len() >= 3 {
            return repair(base);
        }
    }
    if w.ends_with("ed") && n > 4 && !w.ends_with("eed") {
        let base = &w[..n - 2];
        if has_vowel(base) && base.len() >= 3 {
            return repair(base);
        }
    }
    w.to_string()
}

/// Lowercase lemma of `word`: exception dictionary first, then suffix rules,
/// repeated until nothing changes.
pub fn lemmatize_with(exceptions: &BTreeMap<String, String>, word: &str) -> String {
    let mut current = word.to_lowercase();
    for _ in 0..MAX_STEPS {
        let next = match exceptions.get(&current) {
            Some(lemma) => lemma.clone(),
            None => suffix_step(&current),
        };
        if next == current || next.is_empty() {
            break;
        }
        current = next;
    }
    current
}

fn english() -> &'static Stemmer {
    static STEMMER: OnceLock<Stemmer> = OnceLock::new();
    STEMMER.get_or_init(|| Stemmer::create(Algorithm::English))
}

/// Suffix-stripping stem (Snowball English), iterated to a fixed point.
pub fn stem(word: &str) -> String {
    let mut current = word.to_lowercase();
    for _ in 0..MAX_STEPS {
        let next = english().stem(&current).into_owned();
        if next == current || next.is_empty() {
            break;
        }
        current = next;
    }
    current
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nlp::Lexicon;
    use proptest::prelude::*;

    fn lemma(w: &str) -> String {
        lemmatize_with(Lexicon::bundled().lemma_exceptions(), w)
    }

    #[test]
    fn lemma_examples() {
        assert_eq!(lemma("functionality"), "functionality");
        assert_eq!(lemma("functionalities"), "functionality");
        assert_eq!(lemma("is"), "be");
        assert_eq!(lemma("system"), "system");
        assert_eq!(lemma("Systems"), "system");
    }

    #[test]
    fn lemma_suffix_rules() {
        for (word, expected) in [
            ("boxes", "box"),
            ("classes", "class"),
            ("processes", "process"),
            ("switches", "switch"),
            ("logs", "log"),
            ("logging", "log"),
            ("logged", "log"),
            ("running", "run"),
            ("created", "create"),
            ("specified", "specify"),
            ("status", "status"),
            ("analysis", "analysis"),
            ("needs", "need"),
            ("settings", "setting"),
            ("series", "series"),
        ] {
            assert_eq!(lemma(word), expected, "{word}");
        }
    }

    #[test]
    fn stem_examples() {
        assert_eq!(stem("specification"), "specif");
        assert_eq!(stem("a"), "a");
        assert_eq!(stem("logging"), "log");
    }

    #[test]
    fn bundled_dictionary_is_idempotent() {
        let lex = Lexicon::bundled();
        for (form, target) in lex.lemma_exceptions() {
            for w in [form, target] {
                let once = lemma(w);
                assert_eq!(lemma(&once), once, "{w}");
                let s = stem(w);
                assert_eq!(stem(&s), s, "{w}");
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn lemmatize_is_idempotent(word in "[a-zA-Z]{1,14}") {
            let once = lemma(&word);
            prop_assert_eq!(lemma(&once), once.clone());
            prop_assert!(!once.is_empty());
            prop_assert_eq!(once.to_lowercase(), once);
        }

        #[test]
        fn stem_is_idempotent(word in "[a-zA-Z]{1,14}") {
            let once = stem(&word);
            prop_assert_eq!(stem(&once), once.clone());
            prop_assert!(!once.is_empty());
        }
    }
}
