use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use thiserror::Error;

use super::morph;
use super::PosTag;
use crate::tsv::{self, TsvError};

pub const LEMMA_EXCEPTIONS_FILE: &str = "lemma_exceptions.tsv";
pub const ABBREVIATIONS_FILE: &str = "abbreviations.tsv";
pub const LEXICON_FILE: &str = "lexicon.tsv";
pub const GAZETTEER_FILE: &str = "gazetteer.tsv";

const BUNDLED_LEMMA_EXCEPTIONS: &str = include_str!("../../resources/lemma_exceptions.tsv");
const BUNDLED_ABBREVIATIONS: &str = include_str!("../../resources/abbreviations.tsv");
const BUNDLED_LEXICON: &str = include_str!("../../resources/lexicon.tsv");
const BUNDLED_GAZETTEER: &str = include_str!("../../resources/gazetteer.tsv");

#[derive(Debug, Error)]
pub enum ResourceError {
    #[error("cannot read resource {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("resource {file}: {source}")]
    Syntax {
        file: String,
        #[source]
        source: TsvError,
    },
    #[error("resource {file}: {message}")]
    Invalid { file: String, message: String },
}

/// Closed-class entry. Ambiguous words carry two tags resolved in context.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosedClass {
    Tag(PosTag),
    /// Determiner before an open-class word, pronoun otherwise.
    DetOrPron,
    /// Particle before an open-class word, preposition otherwise.
    PartOrAdp,
    /// Conjunction opening a subordinate clause.
    Subordinator,
}

/// Dictionaries the annotation pipeline is driven by.
#[derive(Debug, Clone, Default)]
pub struct Lexicon {
    pub(crate) lemma_exceptions: BTreeMap<String, String>,
    /// Lowercase abbreviations, longest first.
    pub(crate) abbreviations: Vec<String>,
    pub(crate) closed_class: BTreeMap<String, ClosedClass>,
    /// Lowercase phrase -> label.
    pub(crate) gazetteer: BTreeMap<String, String>,
}

fn parse(file: &str, text: &str) -> Result<Vec<(String, String)>, ResourceError> {
    tsv::parse_pairs(text).map_err(|source| ResourceError::Syntax {
        file: file.to_string(),
        source,
    })
}

fn invalid(file: &str, message: String) -> ResourceError {
    ResourceError::Invalid {
        file: file.to_string(),
        message,
    }
}

fn parse_closed_class(value: &str) -> Option<ClosedClass> {
    Some(match value {
        "DET|PRON" => ClosedClass::DetOrPron,
        "PART|ADP" => ClosedClass::PartOrAdp,
        "CONJ/SUB" => ClosedClass::Subordinator,
        other => ClosedClass::Tag(other.parse().ok()?),
    })
}

impl Lexicon {
    /// The dictionaries shipped with the crate.
    pub fn bundled() -> Self {
        Lexicon::from_texts(
            BUNDLED_LEMMA_EXCEPTIONS,
            BUNDLED_ABBREVIATIONS,
            BUNDLED_LEXICON,
            BUNDLED_GAZETTEER,
        )
        .expect("bundled resources are valid")
    }

    /// Loads the four resource files from `dir`.
    pub fn from_dir(dir: impl AsRef<Path>) -> Result<Self, ResourceError> {
        let dir = dir.as_ref();
        let read = |name: &str| {
            let path = dir.join(name);
            std::fs::read_to_string(&path).map_err(|source| ResourceError::Io {
                path: path.display().to_string(),
                source,
            })
        };
        Lexicon::from_texts(
            &read(LEMMA_EXCEPTIONS_FILE)?,
            &read(ABBREVIATIONS_FILE)?,
            &read(LEXICON_FILE)?,
            &read(GAZETTEER_FILE)?,
        )
    }

    pub fn from_texts(
        lemma_exceptions: &str,
        abbreviations: &str,
        lexicon: &str,
        gazetteer: &str,
    ) -> Result<Self, ResourceError> {
        let mut lex = Lexicon::default();

        for (form, lemma) in parse(LEMMA_EXCEPTIONS_FILE, lemma_exceptions)? {
            if lemma.is_empty() {
                return Err(invalid(LEMMA_EXCEPTIONS_FILE, format!("empty lemma for `{form}`")));
            }
            lex.lemma_exceptions.insert(form.to_lowercase(), lemma.to_lowercase());
        }
        // Exception targets must be fixed points, otherwise lemmatisation
        // could cycle or stop being idempotent.
        for lemma in lex.lemma_exceptions.values() {
            if morph::lemmatize_with(&lex.lemma_exceptions, lemma) != *lemma {
                return Err(invalid(
                    LEMMA_EXCEPTIONS_FILE,
                    format!("lemma `{lemma}` is not its own lemma"),
                ));
            }
        }

        let mut abbrevs = BTreeSet::new();
        for (abbr, _) in parse(ABBREVIATIONS_FILE, abbreviations)? {
            abbrevs.insert(abbr.to_lowercase());
        }
        lex.abbreviations = abbrevs.into_iter().collect();
        lex.abbreviations
            .sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));

        for (word, tag) in parse(LEXICON_FILE, lexicon)? {
            let class = parse_closed_class(&tag)
                .ok_or_else(|| invalid(LEXICON_FILE, format!("unknown tag `{tag}` for `{word}`")))?;
            lex.closed_class.insert(word.to_lowercase(), class);
        }

        for (phrase, label) in parse(GAZETTEER_FILE, gazetteer)? {
            if label.is_empty() {
                return Err(invalid(GAZETTEER_FILE, format!("empty label for `{phrase}`")));
            }
            lex.gazetteer.insert(phrase.to_lowercase(), label);
        }
        Ok(lex)
    }

    /// Adds gazetteer phrases on top of the loaded ones.
    pub fn with_gazetteer_entries<I, K, V>(mut self, entries: I) -> Self
    where
        I: IntoIterator<Item = (K, V)>,
        K: AsRef<str>,
        V: Into<String>,
    {
        for (phrase, label) in entries {
            self.gazetteer.insert(phrase.as_ref().to_lowercase(), label.into());
        }
        self
    }

    pub fn is_abbreviation(&self, word: &str) -> bool {
        let lower = word.to_lowercase();
        self.abbreviations.contains(&lower)
    }

    pub fn closed_class(&self, word: &str) -> Option<ClosedClass> {
        self.closed_class.get(&word.to_lowercase()).copied()
    }

    pub fn lemma_exceptions(&self) -> &BTreeMap<String, String> {
        &self.lemma_exceptions
    }
}
