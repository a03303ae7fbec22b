use num_complex::Complex64;
use serde::Serialize;

use super::{CgError, CgMatrix};
use crate::numerics::CMatrix;

/// Agreement of one reference column with its computed counterpart.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ColumnPhase {
    /// Target irrep (1-based) and row `l` (1-based) of the column.
    pub gamma: usize,
    pub l: usize,
    /// Unit scalar `p` with `computed ~ p * reference`.
    pub phase: [f64; 2],
    /// `max(| |p| - 1 |, max_i |computed_i - p reference_i|)` before `p`
    /// is normalized.
    pub deviation: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PhaseReport {
    pub columns: Vec<ColumnPhase>,
    pub max_deviation: f64,
}

impl PhaseReport {
    pub fn matches(&self, tol: f64) -> bool {
        self.max_deviation <= tol
    }

    /// True if every phase is within `tol` of 1.
    pub fn all_phases_one(&self, tol: f64) -> bool {
        self.columns
            .iter()
            .all(|c| (Complex64::new(c.phase[0], c.phase[1]) - 1.0).norm() <= tol)
    }

    /// True if every phase is within `tol` of a real sign.
    pub fn phases_are_signs(&self, tol: f64) -> bool {
        self.columns.iter().all(|c| c.phase[1].abs() <= tol)
    }
}

fn column_phase(computed: &CMatrix, cc: usize, reference: &CMatrix, rc: usize) -> (Complex64, f64) {
    let n = reference.rows();
    let pivot = (0..n)
        .max_by(|&a, &b| {
            reference[(a, rc)]
                .norm()
                .total_cmp(&reference[(b, rc)].norm())
        })
        .unwrap_or(0);
    let r = reference[(pivot, rc)];
    if n == 0 || r.norm() == 0.0 {
        return (Complex64::new(1.0, 0.0), f64::INFINITY);
    }
    let p = computed[(pivot, cc)] / r;
    let deviation = (0..n)
        .map(|i| (computed[(i, cc)] - p * reference[(i, rc)]).norm())
        .fold((p.norm() - 1.0).abs(), f64::max);
    let unit = if p.norm() > 0.0 {
        p / p.norm()
    } else {
        Complex64::new(1.0, 0.0)
    };
    (unit, deviation)
}

/// Matches each reference column, labelled `(gamma, l)` with 1-based
/// indices, against the computed column with the same label. The k-th
/// reference column with a given label is matched to replica k.
pub fn compare_up_to_phase(
    computed: &CgMatrix,
    reference: &CMatrix,
    heads: &[(usize, usize)],
) -> Result<PhaseReport, CgError> {
    let n = computed.dim();
    if reference.rows() != n || reference.cols() != n || heads.len() != n {
        return Err(CgError::ShapeMismatch(format!(
            "computed matrix is {n}x{n}, reference is {}x{} with {} column heads",
            reference.rows(),
            reference.cols(),
            heads.len()
        )));
    }
    let mut computed_heads: Vec<(usize, usize, usize)> = Vec::with_capacity(n);
    for b in &computed.blocks {
        for l in 1..=b.columns.cols() {
            computed_heads.push((b.gamma_index + 1, l, b.replica));
        }
    }
    let mut columns = Vec::with_capacity(n);
    let mut max_deviation: f64 = 0.0;
    for (rc, &(gamma, l)) in heads.iter().enumerate() {
        let replica = heads[..rc].iter().filter(|&&h| h == (gamma, l)).count();
        let cc = computed_heads
            .iter()
            .position(|&h| h == (gamma, l, replica))
            .ok_or_else(|| {
                CgError::ShapeMismatch(format!(
                    "no computed column for R{gamma} l={l} replica {}",
                    replica + 1
                ))
            })?;
        let (phase, deviation) = column_phase(&computed.assembled, cc, reference, rc);
        max_deviation = max_deviation.max(deviation);
        columns.push(ColumnPhase {
            gamma,
            l,
            phase: [phase.re, phase.im],
            deviation,
        });
    }
    Ok(PhaseReport {
        columns,
        max_deviation,
    })
}

/// Compares `a` column by column with the entrywise conjugate of `b`.
pub fn compare_conjugate(a: &CgMatrix, b: &CgMatrix) -> Result<PhaseReport, CgError> {
    if a.dim() != b.dim() {
        return Err(CgError::ShapeMismatch(format!(
            "{}x{} against {}x{}",
            a.dim(),
            a.dim(),
            b.dim(),
            b.dim()
        )));
    }
    let conj = b.assembled.conj();
    let mut columns = Vec::with_capacity(a.dim());
    let mut max_deviation: f64 = 0.0;
    for (c, (gamma, l)) in a.column_heads().into_iter().enumerate() {
        let (phase, deviation) = column_phase(&a.assembled, c, &conj, c);
        max_deviation = max_deviation.max(deviation);
        columns.push(ColumnPhase {
            gamma,
            l,
            phase: [phase.re, phase.im],
            deviation,
        });
    }
    Ok(PhaseReport {
        columns,
        max_deviation,
    })
}
