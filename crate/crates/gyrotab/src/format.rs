//! The `gyro 1` table file format and the gyration listing format.
//!
//! A table document is the magic line `gyro 1`, the order n, then n rows
//! of n whitespace-separated entries, optionally followed by a line
//! `labels <n names>`. Lines starting with `#` and blank lines are
//! ignored everywhere. Serialization is canonical (single spaces, every
//! line newline-terminated), so parse and serialize are mutually inverse
//! on canonical files.
//!
//! A gyration listing has one line `a b: i0 i1 ... i(n-1)` per pair,
//! covering all n² pairs exactly once. Parsing does not validate any
//! axiom; it only checks shape and ranges.

use crate::gyrogroup::CayleyTable;
use thiserror::Error;

#[derive(Error, Debug, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: expected magic 'gyro 1'")]
    BadMagic { line: usize },
    #[error("line {line}: {detail}")]
    BadDimensions { line: usize, detail: String },
    #[error("line {line}, column {column}: '{token}' is not a non-negative integer")]
    NonIntegerEntry {
        line: usize,
        column: usize,
        token: String,
    },
    #[error("line {line}, column {column}: entry {value} is out of range for order {order}")]
    EntryOutOfRange {
        line: usize,
        column: usize,
        value: usize,
        order: usize,
    },
}

/// A parsed table file: the raw table plus optional element labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableDocument {
    pub table: CayleyTable,
    pub labels: Option<Vec<String>>,
}

/// (1-based byte column, token) pairs of one line.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        if c.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s + 1, &line[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

fn parse_entry(lineno: usize, column: usize, token: &str) -> Result<usize, ParseError> {
    token
        .parse::<usize>()
        .map_err(|_| ParseError::NonIntegerEntry {
            line: lineno,
            column,
            token: token.to_string(),
        })
}

/// Significant lines of a document with their 1-based line numbers.
fn significant_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| {
            let t = l.trim_start();
            !t.is_empty() && !t.starts_with('#')
        })
}

/// Parses a table document. Axioms are not checked here.
pub fn parse_table(text: &str) -> Result<TableDocument, ParseError> {
    let mut lines = significant_lines(text);

    let (magic_line, magic) = lines.next().ok_or(ParseError::BadMagic { line: 1 })?;
    let magic_tokens: Vec<&str> = magic.split_whitespace().collect();
    if magic_tokens != ["gyro", "1"] {
        return Err(ParseError::BadMagic { line: magic_line });
    }

    let (order_line, order_text) = lines.next().ok_or(ParseError::BadDimensions {
        line: magic_line,
        detail: "missing order line".to_string(),
    })?;
    let order_tokens = tokens(order_text);
    if order_tokens.len() != 1 {
        return Err(ParseError::BadDimensions {
            line: order_line,
            detail: format!("expected a single order, got {} tokens", order_tokens.len()),
        });
    }
    let order = parse_entry(order_line, order_tokens[0].0, order_tokens[0].1)?;
    if order == 0 {
        return Err(ParseError::BadDimensions {
            line: order_line,
            detail: "order must be positive".to_string(),
        });
    }

    let mut rows = Vec::with_capacity(order);
    let mut last_line = order_line;
    while rows.len() < order {
        let (lineno, line) = lines.next().ok_or(ParseError::BadDimensions {
            line: last_line,
            detail: format!("expected {} rows, found {}", order, rows.len()),
        })?;
        last_line = lineno;
        let toks = tokens(line);
        if toks.len() != order {
            return Err(ParseError::BadDimensions {
                line: lineno,
                detail: format!("expected {} entries, got {}", order, toks.len()),
            });
        }
        let mut row = Vec::with_capacity(order);
        for (column, tok) in toks {
            let value = parse_entry(lineno, column, tok)?;
            if value >= order {
                return Err(ParseError::EntryOutOfRange {
                    line: lineno,
                    column,
                    value,
                    order,
                });
            }
            row.push(value);
        }
        rows.push(row);
    }

    let mut labels = None;
    if let Some((lineno, line)) = lines.next() {
        let toks = tokens(line);
        if toks.first().map(|&(_, t)| t) != Some("labels") {
            return Err(ParseError::BadDimensions {
                line: lineno,
                detail: "unexpected content after the table (only a 'labels' line may follow)"
                    .to_string(),
            });
        }
        if toks.len() != order + 1 {
            return Err(ParseError::BadDimensions {
                line: lineno,
                detail: format!("expected {} labels, got {}", order, toks.len() - 1),
            });
        }
        labels = Some(toks[1..].iter().map(|&(_, t)| t.to_string()).collect());
        if let Some((extra_line, _)) = lines.next() {
            return Err(ParseError::BadDimensions {
                line: extra_line,
                detail: "unexpected content after the labels line".to_string(),
            });
        }
    }

    let table = CayleyTable::from_rows(rows).expect("shape and ranges were just checked");
    Ok(TableDocument { table, labels })
}

/// Canonical text form; `parse_table` inverts it exactly.
pub fn serialize_table(doc: &TableDocument) -> String {
    let n = doc.table.order();
    let mut out = String::new();
    out.push_str("gyro 1\n");
    out.push_str(&n.to_string());
    out.push('\n');
    for row in doc.table.rows() {
        let line: Vec<String> = row.iter().map(|e| e.to_string()).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    if let Some(labels) = &doc.labels {
        out.push_str("labels ");
        out.push_str(&labels.join(" "));
        out.push('\n');
    }
    out
}

/// Parses a gyration listing into images[a][b], requiring every pair of
/// a full n×n square exactly once.
pub fn parse_gyrations(text: &str) -> Result<Vec<Vec<Vec<usize>>>, ParseError> {
    let mut entries: Vec<(usize, usize, usize, Vec<usize>)> = Vec::new();
    for (lineno, line) in significant_lines(text) {
        let (head, tail) = line.split_once(':').ok_or(ParseError::BadDimensions {
            line: lineno,
            detail: "expected 'a b: images'".to_string(),
        })?;
        let head_toks = tokens(head);
        if head_toks.len() != 2 {
            return Err(ParseError::BadDimensions {
                line: lineno,
                detail: format!("expected two pair indices, got {}", head_toks.len()),
            });
        }
        let a = parse_entry(lineno, head_toks[0].0, head_toks[0].1)?;
        let b = parse_entry(lineno, head_toks[1].0, head_toks[1].1)?;
        let offset = head.len() + 1;
        let images = tokens(tail)
            .into_iter()
            .map(|(col, tok)| parse_entry(lineno, offset + col, tok))
            .collect::<Result<Vec<usize>, _>>()?;
        entries.push((lineno, a, b, images));
    }
    if entries.is_empty() {
        return Err(ParseError::BadDimensions {
            line: 1,
            detail: "empty gyration listing".to_string(),
        });
    }
    let n = entries[0].3.len();
    if entries.len() != n * n {
        return Err(ParseError::BadDimensions {
            line: entries.last().unwrap().0,
            detail: format!(
                "expected {} pairs for order {n}, got {}",
                n * n,
                entries.len()
            ),
        });
    }
    let mut grid = vec![vec![Vec::new(); n]; n];
    let mut seen = vec![vec![false; n]; n];
    for (lineno, a, b, images) in entries {
        if a >= n || b >= n {
            return Err(ParseError::EntryOutOfRange {
                line: lineno,
                column: 1,
                value: a.max(b),
                order: n,
            });
        }
        if seen[a][b] {
            return Err(ParseError::BadDimensions {
                line: lineno,
                detail: format!("duplicate pair ({a},{b})"),
            });
        }
        if images.len() != n {
            return Err(ParseError::BadDimensions {
                line: lineno,
                detail: format!("expected {n} images, got {}", images.len()),
            });
        }
        for &v in &images {
            if v >= n {
                return Err(ParseError::EntryOutOfRange {
                    line: lineno,
                    column: 1,
                    value: v,
                    order: n,
                });
            }
        }
        seen[a][b] = true;
        grid[a][b] = images;
    }
    Ok(grid)
}

/// One line `a b: images` per pair, in row-major pair order.
pub fn serialize_gyrations(images: &[Vec<Vec<usize>>]) -> String {
    let mut out = String::new();
    for (a, row) in images.iter().enumerate() {
        for (b, imgs) in row.iter().enumerate() {
            let rendered: Vec<String> = imgs.iter().map(|i| i.to_string()).collect();
            out.push_str(&format!("{a} {b}: {}\n", rendered.join(" ")));
        }
    }
    out
}

/// All whitespace-separated non-negative integers in a file; used for
/// permutation files. Comments and blank lines are ignored.
pub fn parse_indices(text: &str) -> Result<Vec<usize>, ParseError> {
    let mut out = Vec::new();
    for (lineno, line) in significant_lines(text) {
        for (column, tok) in tokens(line) {
            out.push(parse_entry(lineno, column, tok)?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    const K1: &str = include_str!("../../../data/k1.gyro");

    #[test]
    fn parses_the_shipped_table() {
        let doc = parse_table(K1).unwrap();
        assert_eq!(doc.table.order(), 8);
        assert_eq!(doc.table.get(2, 4), 6);
        assert_eq!(doc.labels, None);
    }

    #[test]
    fn serialization_is_a_fixpoint_on_canonical_files() {
        let doc = parse_table(K1).unwrap();
        assert_eq!(serialize_table(&doc), K1);
    }

    #[test]
    fn trivial_document() {
        let doc = parse_table("gyro 1\n1\n0\n").unwrap();
        assert_eq!(doc.table.order(), 1);
        assert_eq!(serialize_table(&doc), "gyro 1\n1\n0\n");
    }

    #[test]
    fn comments_blanks_and_messy_spacing_are_tolerated() {
        let text = "# a table\n\ngyro 1\n  2\n0   1\n# middle\n1 0\n\nlabels  e x\n";
        let doc = parse_table(text).unwrap();
        assert_eq!(doc.labels, Some(vec!["e".to_string(), "x".to_string()]));
        let round = parse_table(&serialize_table(&doc)).unwrap();
        assert_eq!(round, doc);
    }

    #[test]
    fn error_positions_are_reported() {
        assert_eq!(parse_table("nope\n"), Err(ParseError::BadMagic { line: 1 }));
        assert!(matches!(
            parse_table("gyro 1\n2\n0 1\n1\n"),
            Err(ParseError::BadDimensions { line: 4, .. })
        ));
        assert!(matches!(
            parse_table("gyro 1\n2\n0 x\n1 0\n"),
            Err(ParseError::NonIntegerEntry {
                line: 3,
                column: 3,
                ..
            })
        ));
        assert!(matches!(
            parse_table("gyro 1\n2\n0 5\n1 0\n"),
            Err(ParseError::EntryOutOfRange {
                line: 3,
                column: 3,
                value: 5,
                order: 2
            })
        ));
        assert!(matches!(
            parse_table("gyro 1\n0\n"),
            Err(ParseError::BadDimensions { line: 2, .. })
        ));
        assert!(matches!(
            parse_table("gyro 1\n1\n0\n0\n"),
            Err(ParseError::BadDimensions { line: 4, .. })
        ));
    }

    #[test]
    fn gyration_listings_round_trip() {
        let text = "0 0: 0 1\n0 1: 0 1\n1 0: 0 1\n1 1: 1 0\n";
        let grid = parse_gyrations(text).unwrap();
        assert_eq!(grid[1][1], vec![1, 0]);
        assert_eq!(serialize_gyrations(&grid), text);
    }

    #[test]
    fn gyration_listing_shape_errors() {
        assert!(matches!(
            parse_gyrations("0 0: 0 1\n"),
            Err(ParseError::BadDimensions { .. })
        ));
        assert!(matches!(
            parse_gyrations("0 0: 0 1\n0 1: 0 1\n1 0: 0 1\n0 0: 0 1\n"),
            Err(ParseError::BadDimensions { .. })
        ));
        assert!(matches!(
            parse_gyrations("0 0: 0 2\n0 1: 0 1\n1 0: 0 1\n1 1: 0 1\n"),
            Err(ParseError::EntryOutOfRange { .. })
        ));
    }

    #[test]
    fn index_files_ignore_comments() {
        let v = parse_indices("# phi\n8 9 10 11\n12 13 14 15\n").unwrap();
        assert_eq!(v, vec![8, 9, 10, 11, 12, 13, 14, 15]);
        assert!(matches!(
            parse_indices("8 q\n"),
            Err(ParseError::NonIntegerEntry {
                line: 1,
                column: 3,
                ..
            })
        ));
    }
}
