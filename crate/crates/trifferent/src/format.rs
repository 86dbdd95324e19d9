//! The `.triff` text format.
//!
//! ```text
//! n=3
//! r=1
//! # comment
//! 200
//! 021
//! ```
//!
//! Line 1 is `n=<int>`. An optional `r=<int>` line may follow before the
//! first codeword. Lines starting with `#` are comments, blank lines are
//! ignored, and the file must end with a newline. Codewords are written in
//! canonical (sorted) order.

use std::collections::BTreeMap;
use std::fmt;

use trifferent_core::{Code, Codeword};

/// A parse failure pinned to a 1-based line number.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError { line, message: message.into() }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriffFile {
    /// Declared bound; every codeword has exactly this many twos.
    pub r: Option<usize>,
    /// Comment text without the leading `#` and one following space.
    pub comments: Vec<String>,
    pub code: Code,
}

impl TriffFile {
    /// Wraps a code, declaring `r` when the code is uniformly bounded.
    pub fn new(code: Code) -> Self {
        Self { r: code.r_bound(), comments: Vec::new(), code }
    }

    pub fn with_comment(mut self, comment: impl Into<String>) -> Self {
        self.comments.push(comment.into());
        self
    }
}

impl fmt::Display for TriffFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n={}", self.code.block_length())?;
        if let Some(r) = self.r {
            writeln!(f, "r={r}")?;
        }
        for c in &self.comments {
            if c.is_empty() {
                writeln!(f, "#")?;
            } else {
                writeln!(f, "# {c}")?;
            }
        }
        for w in &self.code {
            writeln!(f, "{w}")?;
        }
        Ok(())
    }
}

fn parse_header(line: usize, text: &str, key: &str) -> Result<usize, ParseError> {
    let value = text
        .strip_prefix(key)
        .and_then(|t| t.strip_prefix('='))
        .ok_or_else(|| err(line, format!("expected `{key}=<int>`, found `{text}`")))?;
    value.parse().map_err(|_| err(line, format!("`{value}` is not a nonnegative integer")))
}

pub fn parse(text: &str) -> Result<TriffFile, ParseError> {
    let lines: Vec<&str> = text.split('\n').collect();
    // split leaves an empty final piece exactly when the text ends with '\n'
    let (last, body) = lines.split_last().expect("split yields at least one piece");
    if !last.is_empty() || body.is_empty() {
        return Err(err(lines.len(), "missing trailing newline"));
    }
    let n = parse_header(1, body[0], "n")?;
    if n == 0 {
        return Err(err(1, "block length must be positive"));
    }
    let mut r = None;
    let mut comments = Vec::new();
    let mut words = Vec::new();
    let mut first_seen: BTreeMap<Codeword, usize> = BTreeMap::new();
    for (idx, &raw) in body.iter().enumerate().skip(1) {
        let line = idx + 1;
        if let Some(c) = raw.strip_prefix('#') {
            comments.push(c.strip_prefix(' ').unwrap_or(c).to_string());
            continue;
        }
        if raw.is_empty() {
            continue;
        }
        if raw.starts_with("r=") {
            if r.is_some() || !words.is_empty() {
                return Err(err(line, "`r=` must appear once, before the first codeword"));
            }
            let value = parse_header(line, raw, "r")?;
            if value > n {
                return Err(err(line, format!("r={value} exceeds n={n}")));
            }
            r = Some(value);
            continue;
        }
        if let Some((col, ch)) = raw.chars().enumerate().find(|&(_, ch)| !matches!(ch, '0' | '1' | '2')) {
            return Err(err(line, format!("invalid character {ch:?} at column {}", col + 1)));
        }
        if raw.len() != n {
            return Err(err(line, format!("codeword has length {}, expected {n}", raw.len())));
        }
        let word: Codeword = raw.parse().map_err(|e| err(line, format!("{e}")))?;
        if let Some(r) = r {
            if word.count_twos() != r {
                return Err(err(line, format!("codeword has {} twos, expected r={r}", word.count_twos())));
            }
        }
        if let Some(&prev) = first_seen.get(&word) {
            return Err(err(line, format!("duplicate codeword {raw} (first on line {prev})")));
        }
        first_seen.insert(word.clone(), line);
        words.push(word);
    }
    let code = Code::new(n, words).map_err(|e| err(1, format!("{e}")))?;
    Ok(TriffFile { r, comments, code })
}
