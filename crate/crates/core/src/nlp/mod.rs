//! Shallow, resource-driven annotation of block text.
//!
//! Every layer here is rule based and deterministic: tokens and sentences,
//! lemmas (exception dictionary plus suffix rules), stems, part-of-speech
//! tags from a closed-class lexicon with suffix and context heuristics, flat
//! phrase chunks with a subject marker, and gazetteer entities.

mod chunker;
mod lexicon;
mod morph;
mod tagger;

use std::collections::BTreeSet;
use std::ops::Range;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::docmodel::{Document, Span};

pub use chunker::chunk;
pub use lexicon::{ClosedClass, Lexicon, ResourceError};
pub use lexicon::{ABBREVIATIONS_FILE, GAZETTEER_FILE, LEMMA_EXCEPTIONS_FILE, LEXICON_FILE};
pub use morph::stem;
pub use tagger::pos_tag;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum PosTag {
    Noun,
    Propn,
    Pron,
    Verb,
    Aux,
    Adj,
    Adv,
    Adp,
    Det,
    Conj,
    Num,
    Part,
    Punct,
    X,
}

impl PosTag {
    pub fn is_nominal(self) -> bool {
        matches!(self, PosTag::Noun | PosTag::Propn | PosTag::Pron)
    }

    pub fn is_verbal(self) -> bool {
        matches!(self, PosTag::Verb | PosTag::Aux)
    }
}

impl FromStr for PosTag {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "NOUN" => PosTag::Noun,
            "PROPN" => PosTag::Propn,
            "PRON" => PosTag::Pron,
            "VERB" => PosTag::Verb,
            "AUX" => PosTag::Aux,
            "ADJ" => PosTag::Adj,
            "ADV" => PosTag::Adv,
            "ADP" => PosTag::Adp,
            "DET" => PosTag::Det,
            "CONJ" => PosTag::Conj,
            "NUM" => PosTag::Num,
            "PART" => PosTag::Part,
            "PUNCT" => PosTag::Punct,
            "X" => PosTag::X,
            other => return Err(format!("unknown tag `{other}`")),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum MorphFlag {
    Plural,
    PastTense,
    Gerund,
    Comparative,
    Superlative,
    ThirdPersonSingular,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Token {
    /// Block-relative byte span.
    pub span: Span,
    pub text: String,
    pub lemma: String,
    pub stem: String,
    pub pos: PosTag,
    pub morph: BTreeSet<MorphFlag>,
}

impl Token {
    pub fn lower(&self) -> String {
        self.text.to_lowercase()
    }

    pub fn is_punct(&self) -> bool {
        self.pos == PosTag::Punct
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sentence {
    pub span: Span,
    /// Token indices within the block.
    pub tokens: Range<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ChunkLabel {
    NP,
    VP,
    PP,
    SBAR,
    O,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Chunk {
    pub label: ChunkLabel,
    /// Token indices within the block.
    pub tokens: Range<usize>,
    pub is_subject: bool,
    /// Index of the sentence the chunk belongs to.
    pub sentence: usize,
    /// Leading `ID:` or `Label:` prefix of a sentence, not part of the clause.
    pub is_label: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entity {
    pub span: Span,
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnnotationSet {
    pub block: usize,
    pub tokens: Vec<Token>,
    pub sentences: Vec<Sentence>,
    pub chunks: Vec<Chunk>,
    pub entities: Vec<Entity>,
}

impl AnnotationSet {
    pub fn sentence_tokens(&self, sentence: usize) -> &[Token] {
        &self.tokens[self.sentences[sentence].tokens.clone()]
    }

    pub fn sentence_chunks(&self, sentence: usize) -> impl Iterator<Item = &Chunk> {
        self.chunks.iter().filter(move |c| c.sentence == sentence)
    }

    pub fn subject(&self, sentence: usize) -> Option<&Chunk> {
        self.sentence_chunks(sentence).find(|c| c.is_subject)
    }
}

fn is_word_char(c: char) -> bool {
    c.is_alphanumeric()
}

fn shared_lexicon() -> Arc<Lexicon> {
    static LEXICON: OnceLock<Arc<Lexicon>> = OnceLock::new();
    LEXICON.get_or_init(|| Arc::new(Lexicon::bundled())).clone()
}

/// Runs every annotation layer. Cheap to clone.
#[derive(Debug, Clone)]
pub struct Annotator {
    lexicon: Arc<Lexicon>,
}

impl Default for Annotator {
    fn default() -> Self {
        Annotator {
            lexicon: shared_lexicon(),
        }
    }
}

impl Annotator {
    pub fn new(lexicon: Lexicon) -> Self {
        Annotator {
            lexicon: Arc::new(lexicon),
        }
    }

    pub fn lexicon(&self) -> &Lexicon {
        &self.lexicon
    }

    pub fn lemmatize(&self, word: &str) -> String {
        morph::lemmatize_with(&self.lexicon.lemma_exceptions, word)
    }

    pub fn stem(&self, word: &str) -> String {
        morph::stem(word)
    }

    /// Splits `text` into word and punctuation tokens. Abbreviations from the
    /// lexicon and hyphenated words or identifiers (`REQ-1`) stay whole.
    /// Tokens come back with lemma and stem filled and `pos` set to `X`.
    pub fn tokenize(&self, text: &str) -> Vec<Token> {
        let mut tokens = Vec::new();
        let mut chars = text.char_indices().peekable();
        while let Some(&(start, c)) = chars.peek() {
            if c.is_whitespace() {
                chars.next();
                continue;
            }
            let end = self
                .abbreviation_at(text, start)
                .or_else(|| is_word_char(c).then(|| word_end(text, start)))
                .unwrap_or(start + c.len_utf8());
            while chars.peek().is_some_and(|&(i, _)| i < end) {
                chars.next();
            }
            tokens.push(self.make_token(text, Span::new(start, end)));
        }
        tokens
    }

    fn abbreviation_at(&self, text: &str, start: usize) -> Option<usize> {
        if start > 0 && text[..start].chars().next_back().is_some_and(is_word_char) {
            return None;
        }
        self.lexicon.abbreviations.iter().find_map(|abbr| {
            let end = start + abbr.len();
            let candidate = text.get(start..end)?;
            let boundary = text[end..].chars().next().is_none_or(|c| !is_word_char(c));
            (boundary && candidate.to_lowercase() == *abbr).then_some(end)
        })
    }

    fn make_token(&self, text: &str, span: Span) -> Token {
        let surface = &text[span.range()];
        Token {
            span,
            text: surface.to_string(),
            lemma: self.lemmatize(surface),
            stem: self.stem(surface),
            pos: PosTag::X,
            morph: BTreeSet::new(),
        }
    }

    /// Sentence boundaries fall after `.`, `?` and `!` tokens, unless the
    /// period closes an abbreviation. Closing brackets and quotes right after
    /// the boundary stay with the sentence they close.
    pub fn split_sentences(&self, tokens: &[Token]) -> Vec<Sentence> {
        let mut sentences = Vec::new();
        let mut start = 0;
        let mut i = 0;
        while i < tokens.len() {
            let t = &tokens[i].text;
            let terminal = matches!(t.as_str(), "." | "?" | "!")
                && !(t == "." && i > 0 && self.ends_abbreviation(&tokens[i - 1].text));
            i += 1;
            if terminal {
                while i < tokens.len() && matches!(tokens[i].text.as_str(), ")" | "]" | "\"" | "'" | "”" | "’") {
                    i += 1;
                }
                sentences.push(make_sentence(tokens, start..i));
                start = i;
            }
        }
        if start < tokens.len() {
            sentences.push(make_sentence(tokens, start..tokens.len()));
        }
        sentences
    }

    fn ends_abbreviation(&self, previous: &str) -> bool {
        self.lexicon.is_abbreviation(previous) || self.lexicon.is_abbreviation(&format!("{previous}."))
    }

    /// Gazetteer matches, leftmost-longest and non-overlapping.
    fn entities(&self, text: &str, tokens: &[Token]) -> Vec<Entity> {
        let phrases: Vec<(Vec<String>, &String)> = self
            .lexicon
            .gazetteer
            .iter()
            .map(|(phrase, label)| {
                let words = self.tokenize(phrase).into_iter().map(|t| t.lower()).collect();
                (words, label)
            })
            .collect();
        let lowered: Vec<String> = tokens.iter().map(Token::lower).collect();
        let mut out = Vec::new();
        let mut i = 0;
        while i < tokens.len() {
            let best = phrases
                .iter()
                .filter(|(words, _)| !words.is_empty() && lowered[i..].starts_with(words))
                .max_by_key(|(words, _)| words.len());
            match best {
                Some((words, label)) => {
                    let span = Span::new(tokens[i].span.start, tokens[i + words.len() - 1].span.end);
                    debug_assert!(span.end <= text.len());
                    out.push(Entity {
                        span,
                        label: (*label).clone(),
                    });
                    i += words.len();
                }
                None => i += 1,
            }
        }
        out
    }

    /// Annotates one piece of text as block `block`.
    pub fn annotate_text(&self, block: usize, text: &str) -> AnnotationSet {
        let mut tokens = self.tokenize(text);
        let sentences = self.split_sentences(&tokens);
        let mut chunks = Vec::new();
        for (index, sentence) in sentences.iter().enumerate() {
            let range = sentence.tokens.clone();
            let tags = tagger::pos_tag_with(&self.lexicon, &tokens[range.clone()]);
            for (token, tag) in tokens[range.clone()].iter_mut().zip(tags) {
                token.pos = tag;
                token.morph = tagger::morphology(token);
            }
            let mut sentence_chunks = chunk(&tokens[range.clone()]);
            for c in &mut sentence_chunks {
                c.tokens = (c.tokens.start + range.start)..(c.tokens.end + range.start);
                c.sentence = index;
            }
            chunks.extend(sentence_chunks);
        }
        let entities = self.entities(text, &tokens);
        AnnotationSet {
            block,
            tokens,
            sentences,
            chunks,
            entities,
        }
    }

    /// One annotation set per block, in block order.
    pub fn annotate(&self, doc: &Document) -> Vec<AnnotationSet> {
        doc.blocks
            .par_iter()
            .enumerate()
            .map(|(i, block)| self.annotate_text(i, &block.text))
            .collect()
    }
}

/// End of the word starting at `start`: alphanumeric runs joined by single
/// hyphens, underscores or apostrophes, and digit groups joined by `.` or `,`.
fn word_end(text: &str, start: usize) -> usize {
    let mut end = start;
    let mut chars = text[start..].char_indices().peekable();
    let mut prev: Option<char> = None;
    while let Some((off, c)) = chars.next() {
        if is_word_char(c) {
            end = start + off + c.len_utf8();
            prev = Some(c);
            continue;
        }
        let next = chars.peek().map(|&(_, n)| n);
        let joins = match c {
            '-' | '_' | '\'' | '’' => next.is_some_and(is_word_char),
            '.' | ',' => {
                prev.is_some_and(|p| p.is_ascii_digit()) && next.is_some_and(|n| n.is_ascii_digit())
            }
            _ => false,
        };
        if !joins || prev.is_none() {
            break;
        }
        prev = Some(c);
    }
    end
}

fn make_sentence(tokens: &[Token], range: Range<usize>) -> Sentence {
    Sentence {
        span: Span::new(tokens[range.start].span.start, tokens[range.end - 1].span.end),
        tokens: range,
    }
}

/// Tokenizes with the bundled lexicon.
pub fn tokenize(text: &str) -> Vec<Token> {
    Annotator::default().tokenize(text)
}

/// Sentence split with the bundled lexicon.
pub fn split_sentences(tokens: &[Token]) -> Vec<Sentence> {
    Annotator::default().split_sentences(tokens)
}

/// Lemma with the bundled exception dictionary.
pub fn lemmatize(word: &str) -> String {
    Annotator::default().lemmatize(word)
}

/// Annotates every block of `doc` with the bundled lexicon.
pub fn annotate(doc: &Document) -> Vec<AnnotationSet> {
    Annotator::default().annotate(doc)
}
