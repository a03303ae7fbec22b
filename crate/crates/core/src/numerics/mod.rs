//! Dense complex linear algebra used throughout the crate.

mod eigen;
mod matrix;
pub mod snap;

pub use eigen::{hermitian_eig, HermitianEigen, SWEEP_BUDGET};
pub use matrix::{kron, CMatrix};
pub use snap::{snap, snap_str, Snapped};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NumericsError {
    #[error("ShapeMismatch: expected {}x{} entries, found {found}", expected.0, expected.1)]
    ShapeMismatch {
        expected: (usize, usize),
        found: usize,
    },
    #[error("NonFinite: entry ({row}, {col}) is NaN or infinite")]
    NonFinite { row: usize, col: usize },
    #[error("NotSquare: matrix is {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("NotHermitian: max |m - m^H| = {defect:e}")]
    NotHermitian { defect: f64 },
    #[error("NoConvergence: Jacobi iteration exceeded {sweeps} sweeps")]
    NoConvergence { sweeps: usize },
    #[error(
        "InvalidTolerances: need 0 < eq_tol <= eig_zero_tol, got {eq_tol:e} and {eig_zero_tol:e}"
    )]
    InvalidTolerances { eq_tol: f64, eig_zero_tol: f64 },
}

/// Comparison thresholds shared by every numerical check.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    /// Entrywise equality threshold.
    pub eq_tol: f64,
    /// Eigenvalues at or below this count as zero.
    pub eig_zero_tol: f64,
}

impl Tolerances {
    pub fn new(eq_tol: f64, eig_zero_tol: f64) -> Result<Self, NumericsError> {
        if !(eq_tol > 0.0 && eig_zero_tol > 0.0 && eq_tol <= eig_zero_tol) {
            return Err(NumericsError::InvalidTolerances {
                eq_tol,
                eig_zero_tol,
            });
        }
        Ok(Self {
            eq_tol,
            eig_zero_tol,
        })
    }
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            eq_tol: 1e-10,
            eig_zero_tol: 1e-8,
        }
    }
}

/// True iff `max |m^H m - I| <= eq_tol`.
pub fn is_unitary(m: &CMatrix, tol: &Tolerances) -> bool {
    m.is_square() && unitary_defect(m) <= tol.eq_tol
}

/// `max |m^H m - I|`; infinite for non-square input.
pub fn unitary_defect(m: &CMatrix) -> f64 {
    if !m.is_square() {
        return f64::INFINITY;
    }
    (&m.adjoint() * m).max_abs_diff(&CMatrix::identity(m.rows()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn unitary_checks() {
        let tol = Tolerances::default();
        assert!(is_unitary(&CMatrix::identity(4), &tol));
        let d = CMatrix::diag(&[Complex64::new(2.0, 0.0), Complex64::new(1.0, 0.0)]);
        assert!(!is_unitary(&d, &tol));
    }

    #[test]
    fn tolerance_validation() {
        assert!(Tolerances::new(1e-10, 1e-8).is_ok());
        assert!(Tolerances::new(1e-8, 1e-10).is_err());
        assert!(Tolerances::new(0.0, 1e-8).is_err());
    }
}
