//! Plain-text automaton files.
//!
//! ```text
//! 3 2
//! 1 2 0
//! 1 1 2
//! # optional trailing comments
//! ```
//!
//! The first line is `n q`; line `a` of the next `q` lines lists the targets
//! of states `0..n` under letter `a`. Only comment lines (starting with `#`)
//! and blank lines may follow the table.

use resetword_core::Dfa;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FormatError {
    #[error("line 1: expected header `n q`")]
    MalformedHeader,
    #[error("expected {expected} transition rows, found {got}")]
    MissingRows { expected: usize, got: usize },
    #[error("line {line}: expected {expected} entries, found {got}")]
    RowLength {
        line: usize,
        expected: usize,
        got: usize,
    },
    #[error("line {line}: `{text}` is not a state number")]
    BadEntry { line: usize, text: String },
    #[error("line {line}: state {value} is out of range for {n} states")]
    OutOfRange { line: usize, value: usize, n: usize },
    #[error("line {line}: unexpected content after the table")]
    TrailingContent { line: usize },
    #[error(transparent)]
    Invalid(#[from] resetword_core::Error),
}

pub fn parse(text: &str) -> Result<Dfa, FormatError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
    let (_, header) = lines.next().ok_or(FormatError::MalformedHeader)?;
    let dims: Vec<usize> = header
        .split_whitespace()
        .map(str::parse)
        .collect::<Result<_, _>>()
        .map_err(|_| FormatError::MalformedHeader)?;
    let [n, q] = dims[..] else {
        return Err(FormatError::MalformedHeader);
    };
    // reject absurd headers before allocating
    if n == 0 || q == 0 || n > resetword_core::MAX_STATES || q > resetword_core::MAX_LETTERS {
        Dfa::from_table(n, q, Vec::new())?;
    }

    let mut delta = Vec::with_capacity(n * q);
    for row in 0..q {
        let (line, content) = lines.next().ok_or(FormatError::MissingRows {
            expected: q,
            got: row,
        })?;
        let entries: Vec<&str> = content.split_whitespace().collect();
        if entries.len() != n {
            return Err(FormatError::RowLength {
                line,
                expected: n,
                got: entries.len(),
            });
        }
        for text in entries {
            let value: usize = text.parse().map_err(|_| FormatError::BadEntry {
                line,
                text: text.to_string(),
            })?;
            if value >= n {
                return Err(FormatError::OutOfRange { line, value, n });
            }
            delta.push(value as u8);
        }
    }
    for (line, content) in lines {
        if !content.is_empty() && !content.starts_with('#') {
            return Err(FormatError::TrailingContent { line });
        }
    }
    Ok(Dfa::from_table(n, q, delta)?)
}

pub fn serialize(d: &Dfa) -> String {
    serialize_with_comments(d, &[])
}

/// Serializes `d` followed by one `# ` line per comment.
pub fn serialize_with_comments(d: &Dfa, comments: &[String]) -> String {
    let mut out = format!("{} {}\n", d.n(), d.q());
    for a in 0..d.q() {
        let row: Vec<String> = d.letter_map(a).iter().map(u8::to_string).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    for c in comments {
        out.push_str("# ");
        out.push_str(c);
        out.push('\n');
    }
    out
}
