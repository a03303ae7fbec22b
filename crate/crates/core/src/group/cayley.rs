//! The `.cayley` text format.
//!
//! ```text
//! # comment lines start with '#'
//! 2
//! 1 2
//! 2 1
//! e a          <- optional label line
//! ```
//!
//! Line 1 holds the order `n`, the next `n` lines hold 1-based row entries
//! separated by whitespace, and an optional final line holds `n` labels.

use std::fmt::Write as _;

use super::{Group, GroupError};

pub fn parse_cayley(text: &str) -> Result<Group, GroupError> {
    parse_named("custom", text)
}

pub(crate) fn parse_named(name: &str, text: &str) -> Result<Group, GroupError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (first_no, first) = lines.next().ok_or(GroupError::Syntax {
        line: 1,
        message: "missing group order".into(),
    })?;
    let n: usize = first.parse().map_err(|_| GroupError::Syntax {
        line: first_no,
        message: format!("expected the group order, found {first:?}"),
    })?;
    if n == 0 {
        return Err(GroupError::Syntax {
            line: first_no,
            message: "group order must be positive".into(),
        });
    }

    let mut table = Vec::with_capacity(n);
    for r in 0..n {
        let (line_no, line) = lines.next().ok_or(GroupError::Syntax {
            line: first_no + r + 1,
            message: format!("expected {n} table rows, found {r}"),
        })?;
        let row = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<usize>().map_err(|_| GroupError::Syntax {
                    line: line_no,
                    message: format!("non-integer token {tok:?}"),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        if row.len() != n {
            return Err(GroupError::Syntax {
                line: line_no,
                message: format!("ragged row: {} entries, expected {n}", row.len()),
            });
        }
        table.push(row);
    }

    let labels = match lines.next() {
        None => None,
        Some((line_no, line)) => {
            let labels: Vec<String> = line.split_whitespace().map(str::to_owned).collect();
            if labels.len() != n {
                return Err(GroupError::Syntax {
                    line: line_no,
                    message: format!("{} labels, expected {n}", labels.len()),
                });
            }
            Some(labels)
        }
    };
    if let Some((line_no, _)) = lines.next() {
        return Err(GroupError::Syntax {
            line: line_no,
            message: "unexpected trailing content".into(),
        });
    }
    Group::from_one_based(name, &table, labels)
}

/// Serializes a group in the `.cayley` format, labels included.
pub fn format_cayley(g: &Group) -> String {
    let n = g.order();
    let width = n.to_string().len();
    let mut out = String::new();
    let _ = writeln!(out, "# {}", g.name());
    let _ = writeln!(out, "{n}");
    for row in g.table_one_based() {
        let cells: Vec<String> = row.iter().map(|v| format!("{v:>width$}")).collect();
        let _ = writeln!(out, "{}", cells.join(" "));
    }
    let _ = writeln!(out, "{}", g.labels().join(" "));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::AxiomViolation;

    const Q8: &str = "8
1 2 3 4 5 6 7 8
2 1 4 3 6 5 8 7
3 4 2 1 8 7 5 6
4 3 1 2 7 8 6 5
5 6 7 8 2 1 4 3
6 5 8 7 1 2 3 4
7 8 6 5 3 4 2 1
8 7 5 6 4 3 1 2
";

    #[test]
    fn parses_q8_block() {
        let g = parse_cayley(Q8).unwrap();
        assert_eq!(g.order(), 8);
        assert_eq!(g.label(0), "g1");
        assert_eq!(g.mul(2, 4), 7);
    }

    #[test]
    fn trivial_group() {
        let g = parse_cayley("1\n1\n").unwrap();
        assert_eq!(g.order(), 1);
    }

    #[test]
    fn comments_and_labels() {
        let g = parse_cayley("# C2\n2\n# rows\n1 2\n2 1\ne a\n").unwrap();
        assert_eq!(g.labels(), ["e", "a"]);
    }

    #[test]
    fn altered_entry_breaks_latin_square() {
        // entry (3,5) changed from 8 to 7
        let mut lines: Vec<String> = Q8.lines().map(str::to_owned).collect();
        lines[3] = "3 4 2 1 7 7 5 6".into();
        let err = parse_cayley(&lines.join("\n")).unwrap_err();
        assert_eq!(
            err,
            GroupError::Axiom(AxiomViolation::ColumnNotPermutation {
                col: 5,
                value: 7,
                rows: (3, 4)
            })
        );
    }

    #[test]
    fn syntax_errors() {
        assert!(matches!(
            parse_cayley("2\n1 2\n2 x\n"),
            Err(GroupError::Syntax { line: 3, .. })
        ));
        assert!(matches!(
            parse_cayley("2\n1 2\n2\n"),
            Err(GroupError::Syntax { line: 3, .. })
        ));
        assert!(matches!(parse_cayley(""), Err(GroupError::Syntax { .. })));
        assert!(matches!(
            parse_cayley("2\n1 2\n2 1\na b\nextra\n"),
            Err(GroupError::Syntax { line: 5, .. })
        ));
    }

    #[test]
    fn format_round_trip() {
        let g = parse_cayley(Q8).unwrap();
        let again = parse_cayley(&format_cayley(&g)).unwrap();
        assert_eq!(again.table(), g.table());
        assert_eq!(again.labels(), g.labels());
    }
}
