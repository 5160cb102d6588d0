//! Line-oriented `key<TAB>value` resource files.
//!
//! Blank lines and lines starting with `#` are ignored. Keys and values are
//! trimmed; a line without a tab, or with an empty key, is an error.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct TsvError {
    pub line: usize,
    pub message: String,
}

/// Parses `text` into `(key, value)` pairs in file order.
pub fn parse_pairs(text: &str) -> Result<Vec<(String, String)>, TsvError> {
    let mut pairs = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim_end_matches('\r');
        if line.trim().is_empty() || line.trim_start().starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('\t') else {
            return Err(TsvError {
                line: idx + 1,
                message: "expected `key<TAB>value`".to_string(),
            });
        };
        let key = key.trim();
        if key.is_empty() {
            return Err(TsvError {
                line: idx + 1,
                message: "empty key".to_string(),
            });
        }
        pairs.push((key.to_string(), value.trim().to_string()));
    }
    Ok(pairs)
}
