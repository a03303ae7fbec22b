//! Published tables embedded under `references/`: Clebsch-Gordan matrices,
//! character tables and Kronecker product series.
//!
//! Clebsch-Gordan entries are stored as the printed symbols. An entry
//! written as a bare multiple of `√2` (`i√2`) cannot belong to a unitary
//! matrix; it is read as the same multiple of `1/√2` and its position is
//! recorded in [`CgReference::typos`].

use std::sync::OnceLock;

use num_complex::Complex64;
use serde::Deserialize;
use thiserror::Error;

use crate::group::BuiltinGroup;
use crate::numerics::snap::parse_label;
use crate::numerics::CMatrix;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ReferenceError {
    #[error("FormatError: reference {id}: {message}")]
    Format { id: String, message: String },
}

/// A literal entry that was reinterpreted when loading.
#[derive(Clone, Debug, PartialEq)]
pub struct Typo {
    /// 0-based row and column in the reference matrix.
    pub row: usize,
    pub col: usize,
    pub printed: String,
    pub read_as: Complex64,
}

/// Another set of irrep pairs the same table covers after renaming one
/// target irrep.
#[derive(Clone, Debug, PartialEq)]
pub struct CgVariant {
    pub pairs: Vec<(usize, usize)>,
    /// `(from, to)`: target irrep `from` in the column heads becomes `to`.
    pub replace: (usize, usize),
    pub note: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CgReference {
    pub id: String,
    pub title: String,
    pub group: BuiltinGroup,
    /// Irrep pairs `(alpha, beta)` the table applies to, 1-based labels.
    pub pairs: Vec<(usize, usize)>,
    /// Column heads `(gamma, l)`, both 1-based.
    pub columns: Vec<(usize, usize)>,
    /// Rows in `(j, k)` order, `j` major.
    pub printed: Vec<Vec<String>>,
    pub matrix: CMatrix,
    pub typos: Vec<Typo>,
    /// `(alpha, beta)` pairs whose matrix is the complex conjugate of the
    /// first pair's.
    pub conjugates: Vec<(usize, usize)>,
    pub variants: Vec<CgVariant>,
}

impl CgReference {
    /// Column heads with target irrep `from` renamed to `to`.
    pub fn columns_with(&self, replace: Option<(usize, usize)>) -> Vec<(usize, usize)> {
        self.columns
            .iter()
            .map(|&(g, l)| match replace {
                Some((from, to)) if g == from => (to, l),
                _ => (g, l),
            })
            .collect()
    }

    /// Distinct target irreps in column order.
    pub fn targets(&self) -> Vec<usize> {
        let mut out: Vec<usize> = Vec::new();
        for &(g, _) in &self.columns {
            if !out.contains(&g) {
                out.push(g);
            }
        }
        out
    }

    /// Replaces one entry, keeping the printed form in step.
    pub fn set_entry(&mut self, row: usize, col: usize, value: Complex64) {
        self.matrix[(row, col)] = value;
        self.printed[row][col] = crate::numerics::snap::format_complex(value);
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CharacterReference {
    pub id: String,
    pub title: String,
    pub group: BuiltinGroup,
    pub rows: Vec<Vec<Complex64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
pub struct SeriesCase {
    pub alpha: usize,
    pub beta: usize,
    pub summands: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
pub struct SeriesEquation {
    pub text: String,
    pub cases: Vec<SeriesCase>,
}

impl SeriesEquation {
    /// True if every case has a single summand.
    pub fn is_trivial(&self) -> bool {
        self.cases.iter().all(|c| c.summands.len() == 1)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SeriesReference {
    pub id: String,
    pub title: String,
    pub group: BuiltinGroup,
    pub equations: Vec<SeriesEquation>,
}

#[derive(Deserialize)]
struct CgFile {
    id: String,
    title: String,
    group: String,
    pairs: Vec<(usize, usize)>,
    columns: Vec<(usize, usize)>,
    rows: Vec<Vec<String>>,
    #[serde(default)]
    conjugates: Vec<(usize, usize)>,
    #[serde(default)]
    variants: Vec<VariantFile>,
}

#[derive(Deserialize)]
struct VariantFile {
    pairs: Vec<(usize, usize)>,
    replace: (usize, usize),
    #[serde(default)]
    note: String,
}

#[derive(Deserialize)]
struct CharacterFile {
    id: String,
    title: String,
    group: String,
    rows: Vec<Vec<String>>,
}

#[derive(Deserialize)]
struct SeriesFile {
    id: String,
    title: String,
    group: String,
    equations: Vec<SeriesEquation>,
}

const CG_FILES: [&str; 20] = [
    include_str!("../references/cg/q8-cg-5x5.json"),
    include_str!("../references/cg/q16-cg-5x5.json"),
    include_str!("../references/cg/q16-cg-5x6.json"),
    include_str!("../references/cg/q16-cg-6x6.json"),
    include_str!("../references/cg/q16-cg-6x7.json"),
    include_str!("../references/cg/q32-cg-5x5.json"),
    include_str!("../references/cg/q32-cg-5x6.json"),
    include_str!("../references/cg/q32-cg-5x8.json"),
    include_str!("../references/cg/q32-cg-5x10.json"),
    include_str!("../references/cg/q32-cg-6x6.json"),
    include_str!("../references/cg/q32-cg-6x7.json"),
    include_str!("../references/cg/q32-cg-6x8.json"),
    include_str!("../references/cg/q32-cg-6x9.json"),
    include_str!("../references/cg/q32-cg-6x10.json"),
    include_str!("../references/cg/q32-cg-6x11.json"),
    include_str!("../references/cg/q32-cg-8x8.json"),
    include_str!("../references/cg/q32-cg-8x9.json"),
    include_str!("../references/cg/q32-cg-8x10.json"),
    include_str!("../references/cg/q32-cg-8x11.json"),
    include_str!("../references/cg/g32_42-cg-17x17.json"),
];

const CHARACTER_FILES: [&str; 2] = [
    include_str!("../references/characters/q8.json"),
    include_str!("../references/characters/g32_42.json"),
];

const SERIES_FILES: [&str; 4] = [
    include_str!("../references/series/q8.json"),
    include_str!("../references/series/q16.json"),
    include_str!("../references/series/q32.json"),
    include_str!("../references/series/g32_42.json"),
];

fn format_error(id: &str, message: impl Into<String>) -> ReferenceError {
    ReferenceError::Format {
        id: id.to_owned(),
        message: message.into(),
    }
}

fn parse_group(id: &str, name: &str) -> Result<BuiltinGroup, ReferenceError> {
    name.parse()
        .map_err(|_| format_error(id, format!("unknown group {name:?}")))
}

fn parse_entry(id: &str, text: &str) -> Result<Complex64, ReferenceError> {
    parse_label(text).ok_or_else(|| format_error(id, format!("cannot read entry {text:?}")))
}

/// A printed multiple of `√2` without a denominator.
fn is_bare_sqrt2(text: &str) -> bool {
    text.contains('√') && !text.contains("/√")
}

pub fn parse_cg_reference(text: &str) -> Result<CgReference, ReferenceError> {
    let file: CgFile = serde_json::from_str(text).map_err(|e| format_error("?", e.to_string()))?;
    let id = file.id.as_str();
    let group = parse_group(id, &file.group)?;
    let n = file.rows.len();
    if n != file.columns.len() || file.rows.iter().any(|r| r.len() != n) {
        return Err(format_error(
            id,
            "matrix is not square or column heads do not match",
        ));
    }
    let mut typos = Vec::new();
    let mut rows = Vec::with_capacity(n);
    for (i, printed) in file.rows.iter().enumerate() {
        let mut row = Vec::with_capacity(n);
        for (j, s) in printed.iter().enumerate() {
            let mut z = parse_entry(id, s)?;
            if is_bare_sqrt2(s) {
                z /= 2.0;
                typos.push(Typo {
                    row: i,
                    col: j,
                    printed: s.clone(),
                    read_as: z,
                });
            }
            row.push(z);
        }
        rows.push(row);
    }
    let matrix = CMatrix::from_rows(&rows).map_err(|e| format_error(id, e.to_string()))?;
    Ok(CgReference {
        id: file.id,
        title: file.title,
        group,
        pairs: file.pairs,
        columns: file.columns,
        printed: file.rows,
        matrix,
        typos,
        conjugates: file.conjugates,
        variants: file
            .variants
            .into_iter()
            .map(|v| CgVariant {
                pairs: v.pairs,
                replace: v.replace,
                note: v.note,
            })
            .collect(),
    })
}

pub fn parse_character_reference(text: &str) -> Result<CharacterReference, ReferenceError> {
    let file: CharacterFile =
        serde_json::from_str(text).map_err(|e| format_error("?", e.to_string()))?;
    let group = parse_group(&file.id, &file.group)?;
    let rows = file
        .rows
        .iter()
        .map(|r| r.iter().map(|s| parse_entry(&file.id, s)).collect())
        .collect::<Result<Vec<Vec<_>>, _>>()?;
    Ok(CharacterReference {
        id: file.id,
        title: file.title,
        group,
        rows,
    })
}

pub fn parse_series_reference(text: &str) -> Result<SeriesReference, ReferenceError> {
    let file: SeriesFile =
        serde_json::from_str(text).map_err(|e| format_error("?", e.to_string()))?;
    let group = parse_group(&file.id, &file.group)?;
    Ok(SeriesReference {
        id: file.id,
        title: file.title,
        group,
        equations: file.equations,
    })
}

/// Every embedded Clebsch-Gordan table, Q8 first, then Q16, Q32, G32_42.
pub fn cg_references() -> &'static [CgReference] {
    static CACHE: OnceLock<Vec<CgReference>> = OnceLock::new();
    CACHE.get_or_init(|| {
        CG_FILES
            .iter()
            .map(|t| parse_cg_reference(t).expect("embedded reference is well formed"))
            .collect()
    })
}

pub fn character_references() -> &'static [CharacterReference] {
    static CACHE: OnceLock<Vec<CharacterReference>> = OnceLock::new();
    CACHE.get_or_init(|| {
        CHARACTER_FILES
            .iter()
            .map(|t| parse_character_reference(t).expect("embedded reference is well formed"))
            .collect()
    })
}

pub fn series_references() -> &'static [SeriesReference] {
    static CACHE: OnceLock<Vec<SeriesReference>> = OnceLock::new();
    CACHE.get_or_init(|| {
        SERIES_FILES
            .iter()
            .map(|t| parse_series_reference(t).expect("embedded reference is well formed"))
            .collect()
    })
}

#[derive(Deserialize)]
struct ClassFile {
    groups: std::collections::BTreeMap<String, Vec<Vec<usize>>>,
}

/// Published conjugacy classes of `which`, 1-based element indices.
pub fn class_reference(which: BuiltinGroup) -> &'static [Vec<usize>] {
    static CACHE: OnceLock<ClassFile> = OnceLock::new();
    let file = CACHE.get_or_init(|| {
        serde_json::from_str(include_str!("../references/classes.json"))
            .expect("embedded reference is well formed")
    });
    &file.groups[which.name()]
}

pub fn character_reference(which: BuiltinGroup) -> Option<&'static CharacterReference> {
    character_references().iter().find(|r| r.group == which)
}

pub fn series_reference(which: BuiltinGroup) -> &'static SeriesReference {
    series_references()
        .iter()
        .find(|r| r.group == which)
        .expect("every built-in group has a series file")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::unitary_defect;

    #[test]
    fn all_files_load() {
        assert_eq!(cg_references().len(), 20);
        assert_eq!(character_references().len(), 2);
        assert_eq!(series_references().len(), 4);
        let per_group = |g| cg_references().iter().filter(|r| r.group == g).count();
        assert_eq!(per_group(BuiltinGroup::Q8), 1);
        assert_eq!(per_group(BuiltinGroup::Q16), 4);
        assert_eq!(per_group(BuiltinGroup::Q32), 14);
        assert_eq!(per_group(BuiltinGroup::G32_42), 1);
    }

    #[test]
    fn square_sizes_match_pairs() {
        let dims = |g: BuiltinGroup, a: usize| match g {
            BuiltinGroup::Q8 | BuiltinGroup::Q16 | BuiltinGroup::Q32 => {
                if a <= 4 {
                    1
                } else {
                    2
                }
            }
            BuiltinGroup::G32_42 => {
                if a <= 16 {
                    1
                } else {
                    4
                }
            }
        };
        for r in cg_references() {
            for &(a, b) in &r.pairs {
                assert_eq!(
                    r.matrix.rows(),
                    dims(r.group, a) * dims(r.group, b),
                    "{}",
                    r.id
                );
            }
        }
    }

    #[test]
    fn tables_are_unitary_after_typo_reading() {
        for r in cg_references() {
            assert!(unitary_defect(&r.matrix) < 1e-12, "{}", r.id);
        }
    }

    #[test]
    fn typos_are_flagged() {
        let flagged: Vec<(&str, usize)> = cg_references()
            .iter()
            .filter(|r| !r.typos.is_empty())
            .map(|r| (r.id.as_str(), r.typos.len()))
            .collect();
        assert_eq!(
            flagged,
            [("q16-cg-6x6", 2), ("q16-cg-6x7", 2), ("q32-cg-6x7", 2)]
        );
        let t = &cg_references()
            .iter()
            .find(|r| r.id == "q16-cg-6x6")
            .unwrap()
            .typos[0];
        assert!((t.read_as.norm() - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn literal_reading_is_not_unitary() {
        let r = cg_references()
            .iter()
            .find(|r| r.id == "q16-cg-6x7")
            .unwrap();
        let mut m = r.matrix.clone();
        for t in &r.typos {
            m[(t.row, t.col)] = t.read_as * 2.0;
        }
        assert!(unitary_defect(&m) > 0.5);
    }

    #[test]
    fn series_case_counts() {
        let count = |g| {
            series_reference(g)
                .equations
                .iter()
                .filter(|e| e.is_trivial())
                .count()
        };
        assert_eq!(count(BuiltinGroup::Q8), 4);
        assert_eq!(count(BuiltinGroup::Q16), 11);
        assert_eq!(count(BuiltinGroup::Q32), 16);
        assert_eq!(count(BuiltinGroup::G32_42), 1);
    }

    #[test]
    fn character_rows() {
        let q8 = character_reference(BuiltinGroup::Q8).unwrap();
        assert_eq!(q8.rows.len(), 5);
        assert_eq!(q8.rows[4][1], Complex64::new(-2.0, 0.0));
        let g = character_reference(BuiltinGroup::G32_42).unwrap();
        assert_eq!(g.rows.len(), 17);
        assert!(g.rows.iter().all(|r| r.len() == 17));
        assert!(character_reference(BuiltinGroup::Q16).is_none());
    }

    #[test]
    fn class_lists() {
        for which in BuiltinGroup::ALL {
            let classes = class_reference(which);
            let mut all: Vec<usize> = classes.concat();
            all.sort_unstable();
            assert_eq!(all, (1..=which.order()).collect::<Vec<_>>(), "{which}");
        }
        assert_eq!(class_reference(BuiltinGroup::Q32).len(), 11);
    }

    #[test]
    fn malformed_reference() {
        assert!(parse_cg_reference("{}").is_err());
        let bad = r#"{"id": "x", "title": "", "group": "Q8", "pairs": [[5, 5]],
            "columns": [[1, 1]], "rows": [["zz"]]}"#;
        assert!(matches!(
            parse_cg_reference(bad),
            Err(ReferenceError::Format { .. })
        ));
    }
}
