//! Line-oriented text formats for lists and tangles.
//!
//! List format: the first content line is `wires <n>`, followed by one line
//! `<i> <j> <count>` per nonzero pair with i < j. Tangle format: one layer
//! per line, wire numbers separated by spaces, first line is the start
//! layer. Both formats treat `#` as a comment to end of line and are
//! bit-exact round-trip targets: writing a parsed canonical file reproduces
//! it byte for byte.

use std::fmt::Write as _;

use thiserror::Error;

use crate::list::{ListError, SwapList};
use crate::tangle::{Layer, Tangle, TangleError};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: {source}")]
    List {
        line: usize,
        #[source]
        source: ListError,
    },
    #[error(transparent)]
    Tangle(#[from] TangleError),
}

fn syntax(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        message: message.into(),
    }
}

/// Strips a trailing comment and surrounding whitespace; returns None for
/// lines with no content.
fn content(line: &str) -> Option<&str> {
    let body = line.split('#').next().unwrap_or("").trim();
    (!body.is_empty()).then_some(body)
}

pub fn parse_list(text: &str) -> Result<SwapList, FormatError> {
    let mut wires: Option<(u16, usize)> = None;
    let mut entries: Vec<(i64, i64, i64)> = Vec::new();
    let mut entry_lines: Vec<usize> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let Some(body) = content(raw) else { continue };
        let mut tokens = body.split_whitespace();
        if wires.is_none() {
            if tokens.next() != Some("wires") {
                return Err(syntax(line_no, "expected `wires <n>` header"));
            }
            let n: u16 = tokens
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| syntax(line_no, "expected wire count"))?;
            if tokens.next().is_some() {
                return Err(syntax(line_no, "trailing tokens after wire count"));
            }
            wires = Some((n, line_no));
            continue;
        }
        let mut field = |name: &str| -> Result<i64, FormatError> {
            tokens
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| syntax(line_no, format!("expected {name}")))
        };
        let i = field("wire i")?;
        let j = field("wire j")?;
        let count = field("count")?;
        if tokens.next().is_some() {
            return Err(syntax(line_no, "trailing tokens after pair entry"));
        }
        entries.push((i, j, count));
        entry_lines.push(line_no);
    }
    let (n, header_line) = wires.ok_or_else(|| syntax(text.lines().count(), "missing `wires <n>` header"))?;
    SwapList::from_entries(n, entries.iter().copied()).map_err(|source| {
        // Attribute the error to the first entry prefix that already fails.
        let line = (1..=entries.len())
            .find(|&k| SwapList::from_entries(n, entries[..k].iter().copied()).is_err())
            .map(|k| entry_lines[k - 1])
            .unwrap_or(header_line);
        FormatError::List { line, source }
    })
}

pub fn write_list(list: &SwapList) -> String {
    let mut out = String::new();
    writeln!(out, "wires {}", list.wires()).unwrap();
    for (a, b, count) in list.nonzero_pairs() {
        writeln!(out, "{a} {b} {count}").unwrap();
    }
    out
}

pub fn parse_tangle(text: &str) -> Result<Tangle, FormatError> {
    let mut layers = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let Some(body) = content(raw) else { continue };
        let wires: Vec<u16> = body
            .split_whitespace()
            .map(|t| t.parse::<u16>().map_err(|_| syntax(line_no, format!("bad wire number `{t}`"))))
            .collect::<Result<_, _>>()?;
        layers.push(Layer::new(wires)?);
    }
    Ok(Tangle::from_layers(&layers)?)
}

pub fn write_tangle(tangle: &Tangle) -> String {
    let mut out = String::new();
    for layer in tangle.layers() {
        writeln!(out, "{layer}").unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tangle::Move;

    #[test]
    fn list_round_trips_bit_exactly() {
        let text = "wires 3\n1 2 1\n1 3 1\n";
        let list = parse_list(text).unwrap();
        assert_eq!(write_list(&list), text);
        assert_eq!(parse_list(&write_list(&list)).unwrap(), list);
    }

    #[test]
    fn list_parser_skips_comments_and_blank_lines() {
        let text = "# the feasible two-swap example\n\nwires 3\n1 2 1 # once\n1 3 1\n";
        let list = parse_list(text).unwrap();
        assert_eq!(list.total(), 2);
    }

    #[test]
    fn list_parser_reports_duplicate_pair() {
        let err = parse_list("wires 3\n1 2 1\n2 1 4\n").unwrap_err();
        assert!(matches!(
            err,
            FormatError::List {
                line: 3,
                source: ListError::DuplicatePair { i: 1, j: 2 }
            }
        ));
    }

    #[test]
    fn list_parser_rejects_missing_header() {
        assert!(matches!(
            parse_list("1 2 1\n").unwrap_err(),
            FormatError::Syntax { line: 1, .. }
        ));
    }

    #[test]
    fn tangle_round_trips_bit_exactly() {
        let text = "1 2 3\n2 1 3\n2 3 1\n";
        let tangle = parse_tangle(text).unwrap();
        assert_eq!(tangle.height(), 3);
        assert_eq!(write_tangle(&tangle), text);
    }

    #[test]
    fn tangle_parser_derives_parallel_moves() {
        let tangle = parse_tangle("1 2 3 4\n2 1 4 3\n").unwrap();
        assert_eq!(tangle.moves(), &[Move::new(vec![1, 3]).unwrap()]);
    }

    #[test]
    fn tangle_parser_rejects_non_move_step() {
        assert!(matches!(
            parse_tangle("1 2 3\n3 1 2\n").unwrap_err(),
            FormatError::Tangle(TangleError::NotAMove { index: 0 })
        ));
    }

    #[test]
    fn tangle_parser_rejects_empty_input() {
        assert!(matches!(
            parse_tangle("# nothing\n").unwrap_err(),
            FormatError::Tangle(TangleError::NoLayers)
        ));
    }
}
