use std::sync::Arc;

use num_complex::Complex64;

use super::{character, RepError, Representation};
use crate::group::{conjugacy_classes, ClassPartition, Group};
use crate::numerics::snap::format_complex;

/// Irreducible characters, one row per irrep and one column per class.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    group: Arc<Group>,
    classes: ClassPartition,
    labels: Vec<String>,
    dims: Vec<usize>,
    chi: Vec<Vec<Complex64>>,
}

impl CharacterTable {
    pub(crate) fn from_parts(
        group: Arc<Group>,
        classes: ClassPartition,
        labels: Vec<String>,
        dims: Vec<usize>,
        chi: Vec<Vec<Complex64>>,
    ) -> Self {
        Self {
            group,
            classes,
            labels,
            dims,
            chi,
        }
    }

    /// Characters of a complete list of irreps, rows in list order.
    pub fn from_irreps(irreps: &[Representation]) -> Result<Self, RepError> {
        let first = irreps
            .first()
            .ok_or(RepError::Format("no irreps given".into()))?;
        if irreps.iter().any(|r| !r.same_group(first)) {
            return Err(RepError::GroupMismatch);
        }
        let group = Arc::clone(first.group());
        let classes = conjugacy_classes(&group);
        let chi = irreps
            .iter()
            .map(|r| character(r, &classes, 1e-10))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self {
            group,
            classes,
            labels: irreps.iter().map(|r| r.label().to_owned()).collect(),
            dims: irreps.iter().map(Representation::dim).collect(),
            chi,
        })
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn classes(&self) -> &ClassPartition {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.chi.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chi.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, row: usize) -> &str {
        &self.labels[row]
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, row: usize) -> usize {
        self.dims[row]
    }

    pub fn row(&self, row: usize) -> &[Complex64] {
        &self.chi[row]
    }

    pub fn rows(&self) -> &[Vec<Complex64>] {
        &self.chi
    }

    /// Row index of the irrep with the given label.
    pub fn index_of(&self, label: &str) -> Result<usize, RepError> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| RepError::UnknownIrrep {
                label: label.to_owned(),
                count: self.len(),
            })
    }

    /// `max |sum_c |C_c| chi_a(c) conj(chi_b(c)) - |G| delta_ab|`.
    pub fn row_orthogonality_defect(&self) -> f64 {
        let n = self.group.order() as f64;
        let mut worst: f64 = 0.0;
        for (a, ra) in self.chi.iter().enumerate() {
            for (b, rb) in self.chi.iter().enumerate() {
                let s: Complex64 = (0..self.classes.len())
                    .map(|c| self.classes.size(c) as f64 * ra[c] * rb[c].conj())
                    .sum();
                let expect = if a == b { n } else { 0.0 };
                worst = worst.max((s - expect).norm());
            }
        }
        worst
    }

    /// `max |sum_a chi_a(c) conj(chi_a(c')) - delta_cc' |G| / |C_c||`.
    pub fn column_orthogonality_defect(&self) -> f64 {
        let n = self.group.order() as f64;
        let k = self.classes.len();
        let mut worst: f64 = 0.0;
        for c in 0..k {
            for d in 0..k {
                let s: Complex64 = self.chi.iter().map(|row| row[c] * row[d].conj()).sum();
                let expect = if c == d {
                    n / self.classes.size(c) as f64
                } else {
                    0.0
                };
                worst = worst.max((s - expect).norm());
            }
        }
        worst
    }

    /// Checks squareness, `sum n^2 = |G|` and both orthogonality relations.
    pub fn is_consistent(&self, tol: f64) -> bool {
        self.len() == self.classes.len()
            && self.dims.iter().map(|d| d * d).sum::<usize>() == self.group.order()
            && self.row_orthogonality_defect() <= tol
            && self.column_orthogonality_defect() <= tol
    }

    /// For each row of `self`, the matching row of `other`, if the two
    /// tables agree up to a row permutation within `tol`.
    pub fn row_permutation_to(&self, other: &CharacterTable, tol: f64) -> Option<Vec<usize>> {
        if self.len() != other.len() || self.classes.classes() != other.classes.classes() {
            return None;
        }
        let mut taken = vec![false; other.len()];
        let mut perm = Vec::with_capacity(self.len());
        for row in &self.chi {
            let hit = (0..other.len()).find(|&j| {
                !taken[j]
                    && row
                        .iter()
                        .zip(&other.chi[j])
                        .all(|(a, b)| (a - b).norm() <= tol)
            })?;
            taken[hit] = true;
            perm.push(hit);
        }
        Some(perm)
    }

    /// The rows of `self` in the row order and labelling of `other`, if the
    /// two tables agree up to a row permutation within `tol`.
    pub fn reordered_like(&self, other: &CharacterTable, tol: f64) -> Option<CharacterTable> {
        let perm = other.row_permutation_to(self, tol)?;
        Some(Self {
            group: Arc::clone(&self.group),
            classes: self.classes.clone(),
            labels: other.labels.clone(),
            dims: perm.iter().map(|&i| self.dims[i]).collect(),
            chi: perm.iter().map(|&i| self.chi[i].clone()).collect(),
        })
    }

    /// CSV with a header of class names, a row of class sizes, then one row
    /// per irrep. Values are rounded to 12 decimals.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let k = self.classes.len();
        let header: Vec<String> = std::iter::once("irrep".to_owned())
            .chain((1..=k).map(|c| format!("C{c}")))
            .collect();
        w.write_record(&header).expect("in-memory write");
        let sizes: Vec<String> = std::iter::once("size".to_owned())
            .chain(self.classes.sizes().iter().map(usize::to_string))
            .collect();
        w.write_record(&sizes).expect("in-memory write");
        for (label, row) in self.labels.iter().zip(&self.chi) {
            let rec: Vec<String> = std::iter::once(label.clone())
                .chain(row.iter().map(|&z| format_complex(round12(z))))
                .collect();
            w.write_record(&rec).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
    }
}

pub(crate) fn round12(z: Complex64) -> Complex64 {
    let r = |x: f64| {
        let y = (x * 1e12).round() / 1e12;
        if y == 0.0 {
            0.0
        } else {
            y
        }
    };
    Complex64::new(r(z.re), r(z.im))
}
