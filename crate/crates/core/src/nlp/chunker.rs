//! Flat phrase chunking over one tagged sentence.
//!
//! - NP: `DET? (ADJ|NUM)* (NOUN|PROPN|PRON)+`, greedy.
//! - VP: an AUX or VERB followed by AUX, VERB, PART or ADV tokens.
//! - PP: a preposition plus the NP right after it, when there is one.
//! - SBAR: a subordinating conjunction up to the next comma, semicolon or
//!   sentence-final punctuation.
//! - O: everything else, consecutive tokens merged.
//!
//! The subject is the first NP that comes before the first VP. Because the
//! chunks are flat, NPs inside an SBAR or PP are never candidates.

use super::{Chunk, ChunkLabel, PosTag, Token};

fn is_clause_break(token: &Token) -> bool {
    matches!(token.text.as_str(), "," | ";" | "." | "?" | "!")
}

fn np_end(tokens: &[Token], start: usize) -> Option<usize> {
    let mut i = start;
    if tokens.get(i).is_some_and(|t| t.pos == PosTag::Det) {
        i += 1;
    }
    while tokens.get(i).is_some_and(|t| matches!(t.pos, PosTag::Adj | PosTag::Num)) {
        i += 1;
    }
    let head_start = i;
    while tokens.get(i).is_some_and(|t| t.pos.is_nominal()) {
        i += 1;
    }
    (i > head_start).then_some(i)
}

/// Length of a leading `WORD :` label such as a requirement ID or
/// `Definition:`.
fn label_len(tokens: &[Token]) -> usize {
    match tokens {
        [first, colon, ..] if colon.text == ":" && !first.is_punct() => 2,
        _ => 0,
    }
}

fn chunk_at(label: ChunkLabel, start: usize, end: usize) -> Chunk {
    Chunk {
        label,
        tokens: start..end,
        is_subject: false,
        sentence: 0,
        is_label: false,
    }
}

/// Chunks one tagged sentence. Token ranges are sentence-relative.
pub fn chunk(tokens: &[Token]) -> Vec<Chunk> {
    let mut chunks: Vec<Chunk> = Vec::new();
    let mut i = label_len(tokens);
    if i > 0 {
        let mut label = chunk_at(ChunkLabel::O, 0, i);
        label.is_label = true;
        chunks.push(label);
    }

    let push_o = |chunks: &mut Vec<Chunk>, at: usize| match chunks.last_mut() {
        Some(last) if last.label == ChunkLabel::O && !last.is_label && last.tokens.end == at => {
            last.tokens.end = at + 1;
        }
        _ => chunks.push(chunk_at(ChunkLabel::O, at, at + 1)),
    };

    while i < tokens.len() {
        let tag = tokens[i].pos;
        let subordinator = tag == PosTag::Conj && !matches!(tokens[i].lower().as_str(), "and" | "or" | "but" | "nor");
        let end = if subordinator {
            let stop = (i + 1..tokens.len())
                .find(|&j| is_clause_break(&tokens[j]))
                .unwrap_or(tokens.len());
            Some((ChunkLabel::SBAR, stop))
        } else if tag == PosTag::Adp || (tag == PosTag::Part && tokens[i].lower() == "to" && np_end(tokens, i + 1).is_some()) {
            Some((ChunkLabel::PP, np_end(tokens, i + 1).unwrap_or(i + 1)))
        } else if tag.is_verbal() {
            let stop = (i + 1..tokens.len())
                .find(|&j| !matches!(tokens[j].pos, PosTag::Aux | PosTag::Verb | PosTag::Part | PosTag::Adv))
                .unwrap_or(tokens.len());
            Some((ChunkLabel::VP, stop))
        } else {
            np_end(tokens, i).map(|stop| (ChunkLabel::NP, stop))
        };

        match end {
            Some((label, stop)) => {
                chunks.push(chunk_at(label, i, stop));
                i = stop;
            }
            None => {
                push_o(&mut chunks, i);
                i += 1;
            }
        }
    }

    if let Some(first_vp) = chunks.iter().position(|c| c.label == ChunkLabel::VP) {
        if let Some(subject) = chunks[..first_vp].iter_mut().find(|c| c.label == ChunkLabel::NP) {
            subject.is_subject = true;
        }
    }
    chunks
}
