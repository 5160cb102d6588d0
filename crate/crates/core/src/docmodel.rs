//! Structured view of a plain-text requirements specification.
//!
//! Text is read line by line. Headings (`#`, `##`, ...) open sections; lines
//! matching the requirement-ID pattern open requirement blocks; enumeration
//! items, captions, table rows, comments and reference entries are recognised
//! by their leading markers. Consecutive plain lines are folded into the open
//! requirement, informative paragraph or enumeration item, and a blank line
//! always closes the open block.

use std::ops::Range;
use std::sync::OnceLock;

use regex::Regex;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::catalog::ContextKind;

/// Half-open byte range `[start, end)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub fn new(start: usize, end: usize) -> Self {
        debug_assert!(start <= end, "span start {start} past end {end}");
        Span { start, end }
    }

    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.start == self.end
    }

    pub fn contains(&self, other: Span) -> bool {
        self.start <= other.start && other.end <= self.end
    }

    pub fn range(&self) -> Range<usize> {
        self.start..self.end
    }

    /// The span moved right by `offset` bytes.
    pub fn shifted(&self, offset: usize) -> Span {
        Span::new(self.start + offset, self.end + offset)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum BlockKind {
    Heading,
    Requirement,
    Informative,
    EnumerationItem,
    TableRow,
    FigureCaption,
    ReferenceEntry,
    Comment,
}

impl BlockKind {
    /// Kinds whose block may span several lines.
    fn continues(self) -> bool {
        matches!(
            self,
            BlockKind::Requirement | BlockKind::Informative | BlockKind::EnumerationItem
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Block {
    pub kind: BlockKind,
    /// Absolute byte span into the document source.
    pub span: Span,
    pub text: String,
    pub requirement_id: Option<String>,
    /// Section indices from the outermost section down to the one holding
    /// this block. Empty for preamble blocks.
    pub section_path: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Section {
    pub heading_block: usize,
    pub level: usize,
    pub title: String,
    pub parent: Option<usize>,
    /// Blocks directly inside this section, heading excluded.
    pub blocks: Vec<usize>,
    pub children: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document {
    /// Display name, usually the file path.
    pub name: String,
    pub source: String,
    pub blocks: Vec<Block>,
    pub sections: Vec<Section>,
    /// The first top-level section, if the document has any heading.
    pub intro_section: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DocConfig {
    pub requirement_id_pattern: String,
    pub heading_marker: String,
    pub references_heading_title: String,
    pub comment_marker: String,
}

impl Default for DocConfig {
    fn default() -> Self {
        DocConfig {
            requirement_id_pattern: r"^[A-Z][A-Z0-9]*-[0-9]+:".to_string(),
            heading_marker: "#".to_string(),
            references_heading_title: "References".to_string(),
            comment_marker: "//".to_string(),
        }
    }
}

#[derive(Debug, Error)]
pub enum DocError {
    #[error("invalid requirement id pattern: {0}")]
    Pattern(#[from] regex::Error),
    #[error("{0} must not be empty")]
    EmptyMarker(&'static str),
    #[error("config line {line}: {message}")]
    Config { line: usize, message: String },
}

impl DocConfig {
    /// Reads `key = value` lines. Unknown keys are rejected; missing keys keep
    /// their defaults. Values may be wrapped in double quotes.
    pub fn from_config_text(text: &str) -> Result<Self, DocError> {
        let mut config = DocConfig::default();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |message: String| DocError::Config {
                line: idx + 1,
                message,
            };
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| err("expected `key = value`".to_string()))?;
            let value = value.trim();
            let value = value
                .strip_prefix('"')
                .and_then(|v| v.strip_suffix('"'))
                .unwrap_or(value)
                .to_string();
            match key.trim() {
                "requirement_id_pattern" => config.requirement_id_pattern = value,
                "heading_marker" => config.heading_marker = value,
                "references_heading_title" => config.references_heading_title = value,
                "comment_marker" => config.comment_marker = value,
                other => return Err(err(format!("unknown key `{other}`"))),
            }
        }
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<(), DocError> {
        self.compile().map(|_| ())
    }

    fn compile(&self) -> Result<Regex, DocError> {
        for (name, value) in [
            ("heading_marker", &self.heading_marker),
            ("comment_marker", &self.comment_marker),
        ] {
            if value.is_empty() {
                return Err(DocError::EmptyMarker(name));
            }
        }
        Ok(Regex::new(&self.requirement_id_pattern)?)
    }
}

fn enumeration_re() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(r"^(?:[-*](?:\s|$)|[0-9]+\))").unwrap())
}

fn figure_re() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(r"^Figure\s+[0-9]+(?:\.[0-9]+)*:").unwrap())
}

fn table_re() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(r"^(?:Table\s+[0-9]+(?:\.[0-9]+)*:|\|)").unwrap())
}

/// Heading level if `line` opens with one or more heading markers followed by
/// whitespace or end of line.
fn heading_level<'a>(line: &'a str, marker: &str) -> Option<(usize, &'a str)> {
    let mut rest = line;
    let mut level = 0;
    while let Some(r) = rest.strip_prefix(marker) {
        rest = r;
        level += 1;
    }
    if level == 0 {
        return None;
    }
    if rest.is_empty() || rest.starts_with(char::is_whitespace) {
        Some((level, rest.trim()))
    } else {
        None
    }
}

fn extract_requirement_id(re: &Regex, line: &str) -> Option<String> {
    let caps = re.captures(line)?;
    let id = match caps.get(1) {
        Some(group) => group.as_str(),
        None => caps.get(0)?.as_str(),
    };
    let id = id.trim().trim_end_matches(':').trim();
    Some(if id.is_empty() { caps.get(0)?.as_str().trim().to_string() } else { id.to_string() })
}

struct OpenBlock {
    kind: BlockKind,
    start: usize,
    end: usize,
    requirement_id: Option<String>,
}

struct Builder<'a> {
    source: &'a str,
    blocks: Vec<Block>,
    sections: Vec<Section>,
    /// Open sections, innermost last.
    stack: Vec<usize>,
    open: Option<OpenBlock>,
}

impl Builder<'_> {
    fn close(&mut self) {
        if let Some(open) = self.open.take() {
            self.push(open.kind, open.start, open.end, open.requirement_id);
        }
    }

    fn push(&mut self, kind: BlockKind, start: usize, end: usize, requirement_id: Option<String>) -> usize {
        let index = self.blocks.len();
        let section_path = self.stack.clone();
        if kind != BlockKind::Heading {
            if let Some(&innermost) = self.stack.last() {
                self.sections[innermost].blocks.push(index);
            }
        }
        self.blocks.push(Block {
            kind,
            span: Span::new(start, end),
            text: self.source[start..end].to_string(),
            requirement_id,
            section_path,
        });
        index
    }

    fn open_section(&mut self, level: usize, title: &str, start: usize, end: usize) {
        self.close();
        while let Some(&top) = self.stack.last() {
            if self.sections[top].level >= level {
                self.stack.pop();
            } else {
                break;
            }
        }
        let parent = self.stack.last().copied();
        let section = self.sections.len();
        if let Some(p) = parent {
            self.sections[p].children.push(section);
        }
        self.sections.push(Section {
            heading_block: self.blocks.len(),
            level,
            title: title.to_string(),
            parent,
            blocks: Vec::new(),
            children: Vec::new(),
        });
        self.stack.push(section);
        self.push(BlockKind::Heading, start, end, None);
    }
}

/// Segments `source` into sections and typed blocks.
pub fn parse_document(source: &str, config: &DocConfig) -> Result<Document, DocError> {
    let requirement_re = config.compile()?;
    let mut b = Builder {
        source,
        blocks: Vec::new(),
        sections: Vec::new(),
        stack: Vec::new(),
        open: None,
    };
    // Level of the references heading while inside that section.
    let mut references_level: Option<usize> = None;

    let mut offset = 0;
    for raw in source.split_inclusive('\n') {
        let line_start = offset;
        offset += raw.len();
        let content = raw.trim_end_matches(['\n', '\r']);
        let trimmed = content.trim();
        if trimmed.is_empty() {
            b.close();
            continue;
        }
        let start = line_start + (content.len() - content.trim_start().len());
        let end = start + trimmed.len();

        if let Some((level, title)) = heading_level(trimmed, &config.heading_marker) {
            if references_level.is_some_and(|l| level <= l) {
                references_level = None;
            }
            if title.eq_ignore_ascii_case(config.references_heading_title.trim()) {
                references_level = Some(level);
            }
            b.open_section(level, title, start, end);
            continue;
        }

        let single = if trimmed.starts_with(config.comment_marker.as_str()) {
            Some(BlockKind::Comment)
        } else if references_level.is_some() {
            Some(BlockKind::ReferenceEntry)
        } else if figure_re().is_match(trimmed) {
            Some(BlockKind::FigureCaption)
        } else if table_re().is_match(trimmed) {
            Some(BlockKind::TableRow)
        } else {
            None
        };
        if let Some(kind) = single {
            b.close();
            b.push(kind, start, end, None);
            continue;
        }

        if let Some(id) = extract_requirement_id(&requirement_re, trimmed) {
            b.close();
            b.open = Some(OpenBlock {
                kind: BlockKind::Requirement,
                start,
                end,
                requirement_id: Some(id),
            });
        } else if enumeration_re().is_match(trimmed) {
            b.close();
            b.open = Some(OpenBlock {
                kind: BlockKind::EnumerationItem,
                start,
                end,
                requirement_id: None,
            });
        } else {
            match b.open.as_mut() {
                Some(open) if open.kind.continues() => open.end = end,
                _ => {
                    b.close();
                    b.open = Some(OpenBlock {
                        kind: BlockKind::Informative,
                        start,
                        end,
                        requirement_id: None,
                    });
                }
            }
        }
    }
    b.close();

    let intro_section = b.sections.iter().position(|s| s.parent.is_none());
    Ok(Document {
        name: String::new(),
        source: source.to_string(),
        blocks: b.blocks,
        sections: b.sections,
        intro_section,
    })
}

impl Document {
    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// 1-based line and column (in characters) of a byte offset.
    pub fn line_col(&self, offset: usize) -> (usize, usize) {
        let offset = offset.min(self.source.len());
        let before = &self.source[..offset];
        let line = before.matches('\n').count() + 1;
        let line_start = before.rfind('\n').map_or(0, |i| i + 1);
        let column = before[line_start..].chars().count() + 1;
        (line, column)
    }

    /// Title text of a heading block.
    pub fn heading_title(&self, block: usize) -> Option<&str> {
        self.sections
            .iter()
            .find(|s| s.heading_block == block)
            .map(|s| s.title.as_str())
    }
}

/// Blocks a rule with the given context applies to, with their indices.
pub fn blocks_in_context(doc: &Document, context: ContextKind) -> Vec<(usize, &Block)> {
    doc.blocks
        .iter()
        .enumerate()
        .filter(|(_, block)| context.admits(block.kind))
        .collect()
}

/// Whether a block lies in the introductory part of the document: the first
/// top-level section, or the preamble before any heading.
pub fn is_intro_section(doc: &Document, block: usize) -> bool {
    match doc.blocks[block].section_path.first() {
        None => true,
        Some(&root) => Some(root) == doc.intro_section,
    }
}
