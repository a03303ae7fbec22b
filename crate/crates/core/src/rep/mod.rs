//! Matrix representations, characters, character tables and Kronecker
//! product decompositions.

mod builtin;
mod character;
mod decompose;
mod dixon;
mod io;
mod table;

pub use builtin::builtin_irreps;
pub use character::{character, character_norm, great_orthogonality_defect, verify_irreducible};
pub use decompose::{decompose, is_simply_reducible, Decomposition};
pub use dixon::{character_table_dixon, class_coefficients, DIXON_ATTEMPTS, DIXON_SEED};
pub use io::{irrep_from_json, irrep_to_json};
pub(crate) use table::round12;
pub use table::CharacterTable;

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use thiserror::Error;

use crate::group::{Group, GroupError};
use crate::numerics::{kron, unitary_defect, CMatrix, NumericsError, Tolerances};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RepError {
    #[error("ClosureFailure: R(g{a}) R(g{b}) disagrees with the listed R(g{product})")]
    ClosureFailure { a: usize, b: usize, product: usize },
    #[error("ClosureFailure: listed matrices do not reach element g{missing}")]
    Incomplete { missing: usize },
    #[error("DimensionMismatch: matrix for g{element} is {rows}x{cols}, expected {dim}x{dim}")]
    DimensionMismatch {
        element: usize,
        rows: usize,
        cols: usize,
        dim: usize,
    },
    #[error("NotHomomorphism: R(g{a}) R(g{b}) != R(g{product}), defect {defect:e}")]
    NotHomomorphism {
        a: usize,
        b: usize,
        product: usize,
        defect: f64,
    },
    #[error("NotUnitary: R(g{element}) has unitarity defect {defect:e}")]
    NotUnitary { element: usize, defect: f64 },
    #[error("NotUnitary: R(g1) is not the identity (defect {defect:e})")]
    IdentityNotUnit { defect: f64 },
    #[error("NotClassFunction: traces at g{a} and g{b} differ by {difference:e}")]
    NotClassFunction { a: usize, b: usize, difference: f64 },
    #[error("DegenerateRandomization: no separating combination after {attempts} attempts")]
    DegenerateRandomization { attempts: usize },
    #[error("NonIntegralDegree: computed degree {value}")]
    NonIntegralDegree { value: f64 },
    #[error("NonIntegralMultiplicity: m_{gamma} = {value}")]
    NonIntegralMultiplicity { gamma: String, value: f64 },
    #[error("UnknownIrrep: {label} (group has irreps 1..={count})")]
    UnknownIrrep { label: String, count: usize },
    #[error("GroupMismatch: representations belong to different groups")]
    GroupMismatch,
    #[error("FormatError: {0}")]
    Format(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

/// A unitary matrix representation: one `dim x dim` matrix per element.
#[derive(Clone)]
pub struct Representation {
    group: Arc<Group>,
    label: String,
    dim: usize,
    matrices: Vec<CMatrix>,
}

impl Representation {
    /// Builds and validates a representation from one matrix per element.
    pub fn new(
        group: Arc<Group>,
        label: impl Into<String>,
        matrices: Vec<CMatrix>,
        tol: &Tolerances,
    ) -> Result<Self, RepError> {
        if matrices.len() != group.order() {
            return Err(RepError::Incomplete {
                missing: matrices.len().min(group.order()) + 1,
            });
        }
        let dim = matrices[0].rows();
        let rep = Self {
            group,
            label: label.into(),
            dim,
            matrices,
        };
        rep.validate(tol)?;
        Ok(rep)
    }

    /// Fills in a representation from matrices listed for some elements.
    ///
    /// Missing even-numbered elements `g_k` are first taken as
    /// `R(g_2) R(g_{k-1})` wherever the table agrees that `g_2 g_{k-1} = g_k`;
    /// the rest follows by closing the known set under products. Any product
    /// that contradicts an already known matrix is a `ClosureFailure`.
    pub fn complete(
        group: Arc<Group>,
        label: impl Into<String>,
        dim: usize,
        listed: &[(usize, CMatrix)],
        tol: &Tolerances,
    ) -> Result<Self, RepError> {
        let n = group.order();
        let mut known: Vec<Option<CMatrix>> = vec![None; n];
        known[0] = Some(CMatrix::identity(dim));
        for (g, m) in listed {
            group.check_element(*g)?;
            if m.rows() != dim || m.cols() != dim {
                return Err(RepError::DimensionMismatch {
                    element: g + 1,
                    rows: m.rows(),
                    cols: m.cols(),
                    dim,
                });
            }
            known[*g] = Some(m.clone());
        }
        let close = tol.eq_tol * 100.0;
        if n > 1 {
            if let Some(r2) = known[1].clone() {
                for k in (3..n).step_by(2) {
                    if known[k].is_none() && group.mul(1, k - 1) == k {
                        if let Some(prev) = &known[k - 1] {
                            known[k] = Some(&r2 * prev);
                        }
                    }
                }
            }
        }
        let mut frontier: Vec<usize> = (0..n).filter(|&g| known[g].is_some()).collect();
        let mut all = frontier.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for &x in &all.clone() {
                for &y in &frontier {
                    for (a, b) in [(x, y), (y, x)] {
                        let z = group.mul(a, b);
                        let p = known[a].as_ref().unwrap() * known[b].as_ref().unwrap();
                        match &known[z] {
                            Some(existing) => {
                                if existing.max_abs_diff(&p) > close {
                                    return Err(RepError::ClosureFailure {
                                        a: a + 1,
                                        b: b + 1,
                                        product: z + 1,
                                    });
                                }
                            }
                            None => {
                                known[z] = Some(p);
                                next.push(z);
                                all.push(z);
                            }
                        }
                    }
                }
            }
            frontier = next;
        }
        let mut matrices = Vec::with_capacity(n);
        for (g, m) in known.into_iter().enumerate() {
            matrices.push(m.ok_or(RepError::Incomplete { missing: g + 1 })?);
        }
        Self::new(group, label, matrices, tol)
    }

    /// The one-dimensional representation with the given value per element.
    pub fn one_dimensional(
        group: Arc<Group>,
        label: impl Into<String>,
        values: &[Complex64],
        tol: &Tolerances,
    ) -> Result<Self, RepError> {
        let matrices = values.iter().map(|&z| CMatrix::scalar(z)).collect();
        Self::new(group, label, matrices, tol)
    }

    pub fn trivial(group: Arc<Group>) -> Self {
        let matrices = vec![CMatrix::identity(1); group.order()];
        Self {
            group,
            label: "1".into(),
            dim: 1,
            matrices,
        }
    }

    /// Checks identity, unitarity and the homomorphism property.
    pub fn validate(&self, tol: &Tolerances) -> Result<(), RepError> {
        let n = self.group.order();
        for (g, m) in self.matrices.iter().enumerate() {
            if m.rows() != self.dim || m.cols() != self.dim {
                return Err(RepError::DimensionMismatch {
                    element: g + 1,
                    rows: m.rows(),
                    cols: m.cols(),
                    dim: self.dim,
                });
            }
        }
        let id_defect = self.matrices[0].max_abs_diff(&CMatrix::identity(self.dim));
        if id_defect > tol.eq_tol {
            return Err(RepError::IdentityNotUnit { defect: id_defect });
        }
        for (g, m) in self.matrices.iter().enumerate() {
            let defect = unitary_defect(m);
            if defect > tol.eq_tol {
                return Err(RepError::NotUnitary {
                    element: g + 1,
                    defect,
                });
            }
        }
        for a in 0..n {
            for b in 0..n {
                let z = self.group.mul(a, b);
                let defect =
                    (&self.matrices[a] * &self.matrices[b]).max_abs_diff(&self.matrices[z]);
                if defect > tol.eq_tol {
                    return Err(RepError::NotHomomorphism {
                        a: a + 1,
                        b: b + 1,
                        product: z + 1,
                        defect,
                    });
                }
            }
        }
        Ok(())
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self, g: usize) -> &CMatrix {
        &self.matrices[g]
    }

    pub fn matrices(&self) -> &[CMatrix] {
        &self.matrices
    }

    pub fn same_group(&self, other: &Representation) -> bool {
        Arc::ptr_eq(&self.group, &other.group) || self.group.table() == other.group.table()
    }

    /// `g -> R(g) kron S(g)`, labelled `a x b`.
    pub fn kron(&self, other: &Representation) -> Result<Representation, RepError> {
        if !self.same_group(other) {
            return Err(RepError::GroupMismatch);
        }
        let matrices = self
            .matrices
            .iter()
            .zip(&other.matrices)
            .map(|(a, b)| kron(a, b))
            .collect();
        Ok(Representation {
            group: Arc::clone(&self.group),
            label: format!("{}x{}", self.label, other.label),
            dim: self.dim * other.dim,
            matrices,
        })
    }

    /// Entrywise complex conjugate representation.
    pub fn conj(&self) -> Representation {
        Representation {
            group: Arc::clone(&self.group),
            label: format!("{}*", self.label),
            dim: self.dim,
            matrices: self.matrices.iter().map(CMatrix::conj).collect(),
        }
    }
}

impl fmt::Debug for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Representation")
            .field("group", &self.group.name())
            .field("label", &self.label)
            .field("dim", &self.dim)
            .finish()
    }
}

/// Position of the irrep with the given label, as a `RepError` otherwise.
pub fn find_irrep(irreps: &[Representation], label: &str) -> Result<usize, RepError> {
    irreps
        .iter()
        .position(|r| r.label() == label)
        .ok_or_else(|| RepError::UnknownIrrep {
            label: label.to_owned(),
            count: irreps.len(),
        })
}
