//! Finite groups given by their Cayley table.
//!
//! Element indices are 0-based in the Rust API. Everything a user sees
//! (file format, CLI output, error witnesses) is 1-based so it lines up
//! with printed multiplication tables: `g1` is always the identity.

mod builtin;
mod cayley;
mod classes;
mod construct;
mod dot;
mod iso;

pub use builtin::{
    builtin, g32_42_quotient, presented_group, reference_group, BuiltinGroup, G32_42_KERNEL,
    G32_42_RENUMBERING,
};
pub use cayley::{format_cayley, parse_cayley};
pub use classes::{conjugacy_classes, ClassPartition};
pub use construct::{direct_product, quotient, trivial_group};
pub use dot::cayley_graph_dot;
pub use iso::{find_isomorphism, is_isomorphism};

use std::fmt;

use thiserror::Error;

/// A violated group axiom together with a witness. Indices are 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxiomViolation {
    Empty,
    NotSquare {
        row: usize,
        len: usize,
        order: usize,
    },
    EntryOutOfRange {
        row: usize,
        col: usize,
        value: usize,
    },
    ColumnNotPermutation {
        col: usize,
        value: usize,
        rows: (usize, usize),
    },
    RowNotPermutation {
        row: usize,
        value: usize,
        cols: (usize, usize),
    },
    IdentityNotFirst {
        row: usize,
        col: usize,
        value: usize,
    },
    NoInverse {
        element: usize,
    },
    NotAssociative {
        a: usize,
        b: usize,
        c: usize,
    },
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            AxiomViolation::Empty => write!(f, "table is empty"),
            AxiomViolation::NotSquare { row, len, order } => {
                write!(f, "row {row} has {len} entries, expected {order}")
            }
            AxiomViolation::EntryOutOfRange { row, col, value } => {
                write!(f, "entry ({row},{col}) = {value} is not an element index")
            }
            AxiomViolation::ColumnNotPermutation { col, value, rows } => write!(
                f,
                "Latin square violated in column {col}: value {value} appears in rows {} and {}",
                rows.0, rows.1
            ),
            AxiomViolation::RowNotPermutation { row, value, cols } => write!(
                f,
                "Latin square violated in row {row}: value {value} appears in columns {} and {}",
                cols.0, cols.1
            ),
            AxiomViolation::IdentityNotFirst { row, col, value } => write!(
                f,
                "element 1 is not the identity: entry ({row},{col}) = {value}"
            ),
            AxiomViolation::NoInverse { element } => {
                write!(f, "element {element} has no two-sided inverse")
            }
            AxiomViolation::NotAssociative { a, b, c } => {
                write!(
                    f,
                    "associativity fails for (g{a} g{b}) g{c} != g{a} (g{b} g{c})"
                )
            }
        }
    }
}

impl AxiomViolation {
    /// Short name of the violated axiom.
    pub fn axiom(&self) -> &'static str {
        match self {
            AxiomViolation::Empty | AxiomViolation::NotSquare { .. } => "shape",
            AxiomViolation::EntryOutOfRange { .. } => "closure",
            AxiomViolation::ColumnNotPermutation { .. }
            | AxiomViolation::RowNotPermutation { .. } => "latin-square",
            AxiomViolation::IdentityNotFirst { .. } => "identity",
            AxiomViolation::NoInverse { .. } => "inverse",
            AxiomViolation::NotAssociative { .. } => "associativity",
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("SyntaxError: line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("AxiomError: {0}")]
    Axiom(AxiomViolation),
    #[error("UnknownGroup: {0:?} (expected one of Q8, Q16, Q32, G32_42)")]
    UnknownGroup(String),
    #[error("InvalidElement: {index} is not an element of a group of order {order}")]
    InvalidElement { index: usize, order: usize },
    #[error("NotASubgroup: g{a} * g{b} = g{product} leaves the subset")]
    NotASubgroup { a: usize, b: usize, product: usize },
    #[error("NotASubgroup: subset does not contain the identity")]
    MissingIdentity,
    #[error("NotNormal: g{h} g{k} g{h}^-1 = g{conjugate} leaves the subgroup")]
    NotNormal {
        h: usize,
        k: usize,
        conjugate: usize,
    },
    #[error("IllDefined: product of cosets of g{a} and g{b} depends on representatives")]
    IllDefined { a: usize, b: usize },
    #[error("ColorCountMismatch: {generators} generators but {colors} colors")]
    ColorCountMismatch { generators: usize, colors: usize },
    #[error("InvalidLabels: {0}")]
    InvalidLabels(String),
}

/// Outcome of a successful validation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ValidationReport {
    pub order: usize,
    pub associativity_triples: usize,
}

/// Checks every group axiom on a 0-based table and returns the first
/// violation found. Associativity is checked exhaustively.
pub fn validate(table: &[Vec<usize>]) -> Result<ValidationReport, AxiomViolation> {
    let n = table.len();
    if n == 0 {
        return Err(AxiomViolation::Empty);
    }
    for (r, row) in table.iter().enumerate() {
        if row.len() != n {
            return Err(AxiomViolation::NotSquare {
                row: r + 1,
                len: row.len(),
                order: n,
            });
        }
        if let Some(c) = row.iter().position(|&v| v >= n) {
            return Err(AxiomViolation::EntryOutOfRange {
                row: r + 1,
                col: c + 1,
                value: row[c] + 1,
            });
        }
    }
    for c in 0..n {
        let mut seen = vec![usize::MAX; n];
        for r in 0..n {
            let v = table[r][c];
            if seen[v] != usize::MAX {
                return Err(AxiomViolation::ColumnNotPermutation {
                    col: c + 1,
                    value: v + 1,
                    rows: (seen[v] + 1, r + 1),
                });
            }
            seen[v] = r;
        }
    }
    for (r, row) in table.iter().enumerate() {
        let mut seen = vec![usize::MAX; n];
        for (c, &v) in row.iter().enumerate() {
            if seen[v] != usize::MAX {
                return Err(AxiomViolation::RowNotPermutation {
                    row: r + 1,
                    value: v + 1,
                    cols: (seen[v] + 1, c + 1),
                });
            }
            seen[v] = c;
        }
    }
    for k in 0..n {
        if table[0][k] != k {
            return Err(AxiomViolation::IdentityNotFirst {
                row: 1,
                col: k + 1,
                value: table[0][k] + 1,
            });
        }
        if table[k][0] != k {
            return Err(AxiomViolation::IdentityNotFirst {
                row: k + 1,
                col: 1,
                value: table[k][0] + 1,
            });
        }
    }
    for x in 0..n {
        let right = table[x].iter().position(|&v| v == 0);
        match right {
            Some(y) if table[y][x] == 0 => {}
            _ => return Err(AxiomViolation::NoInverse { element: x + 1 }),
        }
    }
    for a in 0..n {
        for b in 0..n {
            let ab = table[a][b];
            for c in 0..n {
                if table[ab][c] != table[a][table[b][c]] {
                    return Err(AxiomViolation::NotAssociative {
                        a: a + 1,
                        b: b + 1,
                        c: c + 1,
                    });
                }
            }
        }
    }
    Ok(ValidationReport {
        order: n,
        associativity_triples: n * n * n,
    })
}

/// A validated finite group.
#[derive(Clone, PartialEq, Eq)]
pub struct Group {
    name: String,
    table: Vec<Vec<usize>>,
    inverses: Vec<usize>,
    labels: Vec<String>,
}

impl Group {
    /// Validates a 0-based table. Labels default to `g1..gN`.
    pub fn from_table(
        name: impl Into<String>,
        table: Vec<Vec<usize>>,
        labels: Option<Vec<String>>,
    ) -> Result<Self, GroupError> {
        validate(&table).map_err(GroupError::Axiom)?;
        let n = table.len();
        let labels = match labels {
            Some(l) => {
                if l.len() != n {
                    return Err(GroupError::InvalidLabels(format!(
                        "{} labels for {} elements",
                        l.len(),
                        n
                    )));
                }
                if let Some(bad) = l
                    .iter()
                    .find(|s| s.is_empty() || s.chars().any(char::is_whitespace))
                {
                    return Err(GroupError::InvalidLabels(format!(
                        "label {bad:?} is empty or contains whitespace"
                    )));
                }
                l
            }
            None => (1..=n).map(|i| format!("g{i}")).collect(),
        };
        let inverses = (0..n)
            .map(|x| table[x].iter().position(|&v| v == 0).expect("validated"))
            .collect();
        Ok(Self {
            name: name.into(),
            table,
            inverses,
            labels,
        })
    }

    /// Same as [`Group::from_table`] for a 1-based table.
    pub fn from_one_based(
        name: impl Into<String>,
        table: &[Vec<usize>],
        labels: Option<Vec<String>>,
    ) -> Result<Self, GroupError> {
        let n = table.len();
        let mut zero = Vec::with_capacity(n);
        for (r, row) in table.iter().enumerate() {
            let mut out = Vec::with_capacity(row.len());
            for (c, &v) in row.iter().enumerate() {
                if v == 0 || v > n {
                    return Err(GroupError::Axiom(AxiomViolation::EntryOutOfRange {
                        row: r + 1,
                        col: c + 1,
                        value: v,
                    }));
                }
                out.push(v - 1);
            }
            zero.push(out);
        }
        Self::from_table(name, zero, labels)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }

    /// `h x h^-1`
    pub fn conjugate(&self, h: usize, x: usize) -> usize {
        self.mul(self.mul(h, x), self.inverse(h))
    }

    pub fn power(&self, a: usize, k: usize) -> usize {
        (0..k).fold(0, |acc, _| self.mul(acc, a))
    }

    /// Smallest `k >= 1` with `a^k = 1`.
    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    /// The table as printed: 1-based entries.
    pub fn table_one_based(&self) -> Vec<Vec<usize>> {
        self.table
            .iter()
            .map(|r| r.iter().map(|v| v + 1).collect())
            .collect()
    }

    pub fn check_element(&self, index: usize) -> Result<(), GroupError> {
        if index < self.order() {
            Ok(())
        } else {
            Err(GroupError::InvalidElement {
                index: index + 1,
                order: self.order(),
            })
        }
    }

    pub fn with_labels(self, labels: Vec<String>) -> Result<Self, GroupError> {
        Group::from_table(self.name, self.table, Some(labels))
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Elements of the subgroup generated by `generators`, sorted.
    pub fn generated_subgroup(&self, generators: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut stack = vec![0];
        while let Some(x) = stack.pop() {
            for &s in generators {
                let y = self.mul(x, s);
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        (0..self.order()).filter(|&i| seen[i]).collect()
    }
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Group")
            .field("name", &self.name)
            .field("order", &self.order())
            .finish()
    }
}
