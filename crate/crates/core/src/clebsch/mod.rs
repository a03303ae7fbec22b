//! Clebsch-Gordan matrices from the eigenvectors of the Mercer
//! (triple-product) matrix
//! `M[(j,k,l),(j',k',l')] = (1/|G|) sum_g Ra[j,j'](g) Rb[k,k'](g) conj(Rc[l,l'](g))`.
//!
//! `M` is the orthogonal projector onto the invariant vectors of
//! `Ra x Rb x conj(Rc)`. Each unit eigenvector with eigenvalue 1, reshaped
//! to an `na nb x nc` matrix `V[(j,k), l]`, intertwines:
//! `(Ra x Rb)(g) V = V Rc(g)`.

mod compare;
mod format;

pub use compare::{compare_conjugate, compare_up_to_phase, ColumnPhase, PhaseReport};
pub use format::{cg_from_json, cg_to_json, cg_to_text, CgJson, CgJsonBlock};

use std::sync::Arc;

use num_complex::Complex64;
use thiserror::Error;

use crate::group::Group;
use crate::numerics::{hermitian_eig, kron, unitary_defect, CMatrix, NumericsError, Tolerances};
use crate::par::{self, Execution};
use crate::rep::{decompose, CharacterTable, RepError, Representation};

/// Tolerance for the intertwining relation and the block-diagonal residual.
pub const INTERTWINER_TOL: f64 = 1e-8;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CgError {
    #[error("GroupMismatch: representations belong to different groups")]
    GroupMismatch,
    #[error("RankMismatch: R{gamma} has {found} eigenvalues above threshold, multiplicity is {expected}")]
    RankMismatch {
        gamma: String,
        found: usize,
        expected: usize,
    },
    #[error("IntertwinerFailure: R{gamma} block fails at g{element}, residual {residual:e}")]
    IntertwinerFailure {
        gamma: String,
        element: usize,
        residual: f64,
    },
    #[error("UnitarityFailure: assembled matrix has defect {defect:e}")]
    UnitarityFailure { defect: f64 },
    #[error("ShapeMismatch: {0}")]
    ShapeMismatch(String),
    #[error("IrrepListMismatch: irrep list and character table disagree")]
    IrrepListMismatch,
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

/// The triple-product matrix for one `(alpha, beta, gamma)`.
#[derive(Clone, Debug)]
pub struct MercerMatrix {
    pub alpha: String,
    pub beta: String,
    pub gamma: String,
    /// `(n_alpha, n_beta, n_gamma)`.
    pub dims: (usize, usize, usize),
    /// Rows and columns indexed by `(j, k, l)`, `l` fastest.
    pub m: CMatrix,
}

pub fn assemble_mercer(
    alpha: &Representation,
    beta: &Representation,
    gamma: &Representation,
) -> Result<MercerMatrix, CgError> {
    assemble_mercer_with(Execution::default(), alpha, beta, gamma)
}

/// [`assemble_mercer`] with explicit scheduling; rows are computed
/// independently.
pub fn assemble_mercer_with(
    exec: Execution,
    alpha: &Representation,
    beta: &Representation,
    gamma: &Representation,
) -> Result<MercerMatrix, CgError> {
    if !alpha.same_group(beta) || !alpha.same_group(gamma) {
        return Err(CgError::GroupMismatch);
    }
    let (na, nb, nc) = (alpha.dim(), beta.dim(), gamma.dim());
    let d = na * nb * nc;
    let order = alpha.group().order();
    let scale = 1.0 / order as f64;
    let rows: Vec<Vec<Complex64>> = par::map_range(exec, d, |r| {
        let (j, k, l) = (r / (nb * nc), (r / nc) % nb, r % nc);
        let mut row = vec![Complex64::new(0.0, 0.0); d];
        for g in 0..order {
            let (a, b, c) = (alpha.matrix(g), beta.matrix(g), gamma.matrix(g));
            for jp in 0..na {
                let x = a[(j, jp)];
                if x.norm_sqr() == 0.0 {
                    continue;
                }
                for kp in 0..nb {
                    let y = x * b[(k, kp)];
                    if y.norm_sqr() == 0.0 {
                        continue;
                    }
                    let base = (jp * nb + kp) * nc;
                    for lp in 0..nc {
                        row[base + lp] += y * c[(l, lp)].conj();
                    }
                }
            }
        }
        row.iter_mut().for_each(|z| *z *= scale);
        row
    });
    Ok(MercerMatrix {
        alpha: alpha.label().to_owned(),
        beta: beta.label().to_owned(),
        gamma: gamma.label().to_owned(),
        dims: (na, nb, nc),
        m: CMatrix::from_rows(&rows)?,
    })
}

/// Spectrum summary of a Mercer matrix around the rank threshold.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MercerRank {
    pub rank: usize,
    /// Smallest eigenvalue above the threshold, if any.
    pub smallest_nonzero: Option<f64>,
    /// Largest eigenvalue magnitude at or below the threshold, if any.
    pub largest_zero: Option<f64>,
}

pub fn mercer_rank(mm: &MercerMatrix, tol: &Tolerances) -> Result<MercerRank, CgError> {
    let eig = hermitian_eig(&mm.m, tol)?;
    let rank = eig.count_above(tol.eig_zero_tol);
    Ok(MercerRank {
        rank,
        smallest_nonzero: eig.values[..rank].last().copied(),
        largest_zero: eig.values[rank..].iter().map(|v| v.abs()).reduce(f64::max),
    })
}

/// Clebsch-Gordan columns of one replica of one target irrep.
#[derive(Clone, Debug)]
pub struct CgBlock {
    pub gamma: String,
    /// Position of the target irrep in the irrep list, when known.
    pub gamma_index: usize,
    pub replica: usize,
    /// `n_alpha n_beta x n_gamma`, rows in `(j, k)` order.
    pub columns: CMatrix,
    /// Column norms of the reshaped eigenvector before rescaling.
    pub raw_column_norms: Vec<f64>,
    pub eigenvalue: f64,
}

/// Column sets for every eigenvalue above `eig_zero_tol`, one per replica.
///
/// `expected` is the multiplicity of `gamma` in `alpha x beta`. The
/// representations are those the Mercer matrix was built from.
pub fn cg_block(
    mm: &MercerMatrix,
    alpha: &Representation,
    beta: &Representation,
    gamma: &Representation,
    expected: usize,
    tol: &Tolerances,
) -> Result<Vec<CgBlock>, CgError> {
    let eig = hermitian_eig(&mm.m, tol)?;
    let rank = eig.count_above(tol.eig_zero_tol);
    if rank != expected {
        return Err(CgError::RankMismatch {
            gamma: mm.gamma.clone(),
            found: rank,
            expected,
        });
    }
    let (na, nb, nc) = mm.dims;
    let mut blocks = Vec::with_capacity(rank);
    for i in 0..rank {
        let v = eig.vector(i);
        let mut columns = CMatrix::zeros(na * nb, nc);
        for r in 0..na * nb {
            for l in 0..nc {
                columns[(r, l)] = v[r * nc + l];
            }
        }
        let raw_column_norms: Vec<f64> = (0..nc).map(|l| column_norm(&columns, l)).collect();
        for (l, &norm) in raw_column_norms.iter().enumerate() {
            for r in 0..na * nb {
                columns[(r, l)] /= norm;
            }
        }
        canonicalize_phase(&mut columns, tol);
        check_intertwiner(&columns, alpha, beta, gamma)?;
        blocks.push(CgBlock {
            gamma: mm.gamma.clone(),
            gamma_index: 0,
            replica: 0,
            columns,
            raw_column_norms,
            eigenvalue: eig.values[i],
        });
    }
    if blocks.len() > 1 {
        blocks.sort_by_key(|b| std::cmp::Reverse(first_nonzero_row(&b.columns, tol)));
    }
    for (r, b) in blocks.iter_mut().enumerate() {
        b.replica = r;
    }
    Ok(blocks)
}

fn column_norm(m: &CMatrix, l: usize) -> f64 {
    (0..m.rows())
        .map(|r| m[(r, l)].norm_sqr())
        .sum::<f64>()
        .sqrt()
}

fn first_nonzero_row(columns: &CMatrix, tol: &Tolerances) -> Option<usize> {
    (0..columns.rows()).find(|&r| columns[(r, 0)].norm() > tol.eq_tol)
}

/// Makes the first entry of column 0 with magnitude above `eq_tol` real
/// positive by scaling the whole block. Idempotent.
pub fn canonicalize_phase(columns: &mut CMatrix, tol: &Tolerances) {
    let Some(r) = first_nonzero_row(columns, tol) else {
        return;
    };
    let z = columns[(r, 0)];
    let phase = z.conj() / z.norm();
    for i in 0..columns.rows() {
        for l in 0..columns.cols() {
            columns[(i, l)] *= phase;
        }
    }
    columns[(r, 0)] = Complex64::new(columns[(r, 0)].norm(), 0.0);
}

fn check_intertwiner(
    columns: &CMatrix,
    alpha: &Representation,
    beta: &Representation,
    gamma: &Representation,
) -> Result<(), CgError> {
    for g in 0..alpha.group().order() {
        let left = &kron(alpha.matrix(g), beta.matrix(g)) * columns;
        let right = columns * gamma.matrix(g);
        let residual = left.max_abs_diff(&right);
        if residual > INTERTWINER_TOL {
            return Err(CgError::IntertwinerFailure {
                gamma: gamma.label().to_owned(),
                element: g + 1,
                residual,
            });
        }
    }
    Ok(())
}

/// The full unitary for `alpha x beta`, blocks ordered by target irrep then
/// replica.
#[derive(Clone, Debug)]
pub struct CgMatrix {
    pub group: Arc<Group>,
    pub alpha: String,
    pub beta: String,
    pub blocks: Vec<CgBlock>,
    pub assembled: CMatrix,
}

impl CgMatrix {
    /// Concatenates block columns; no checks.
    pub fn from_blocks(
        group: Arc<Group>,
        alpha: String,
        beta: String,
        blocks: Vec<CgBlock>,
    ) -> Self {
        let rows = blocks.first().map_or(0, |b| b.columns.rows());
        let cols: Vec<Vec<Complex64>> = blocks
            .iter()
            .flat_map(|b| (0..b.columns.cols()).map(move |l| b.columns.column(l)))
            .collect();
        let assembled = if cols.is_empty() {
            CMatrix::zeros(rows, 0)
        } else {
            CMatrix::from_columns(&cols).expect("columns share a length")
        };
        Self {
            group,
            alpha,
            beta,
            blocks,
            assembled,
        }
    }

    pub fn dim(&self) -> usize {
        self.assembled.rows()
    }

    /// `(gamma index + 1, l)` for every column, `l` 1-based.
    pub fn column_heads(&self) -> Vec<(usize, usize)> {
        self.blocks
            .iter()
            .flat_map(|b| (1..=b.columns.cols()).map(move |l| (b.gamma_index + 1, l)))
            .collect()
    }

    pub fn unitary_defect(&self) -> f64 {
        unitary_defect(&self.assembled)
    }

    /// Entrywise complex conjugate, same block structure.
    pub fn conj(&self) -> Self {
        let blocks = self
            .blocks
            .iter()
            .map(|b| CgBlock {
                columns: b.columns.conj(),
                ..b.clone()
            })
            .collect();
        Self::from_blocks(
            Arc::clone(&self.group),
            self.alpha.clone(),
            self.beta.clone(),
            blocks,
        )
    }

    /// Reapplies the phase rule to every block.
    pub fn canonicalized(&self, tol: &Tolerances) -> Self {
        let blocks = self
            .blocks
            .iter()
            .map(|b| {
                let mut c = b.clone();
                canonicalize_phase(&mut c.columns, tol);
                c
            })
            .collect();
        Self::from_blocks(
            Arc::clone(&self.group),
            self.alpha.clone(),
            self.beta.clone(),
            blocks,
        )
    }
}

pub fn cg_matrix(
    irreps: &[Representation],
    table: &CharacterTable,
    alpha: usize,
    beta: usize,
    tol: &Tolerances,
) -> Result<CgMatrix, CgError> {
    cg_matrix_with(Execution::default(), irreps, table, alpha, beta, tol)
}

/// Clebsch-Gordan matrix of `irreps[alpha] x irreps[beta]`; `table` must
/// have one row per irrep in the same order.
pub fn cg_matrix_with(
    exec: Execution,
    irreps: &[Representation],
    table: &CharacterTable,
    alpha: usize,
    beta: usize,
    tol: &Tolerances,
) -> Result<CgMatrix, CgError> {
    if table.len() != irreps.len()
        || irreps
            .iter()
            .zip(table.labels())
            .any(|(r, l)| r.label() != l)
    {
        return Err(CgError::IrrepListMismatch);
    }
    for (i, r) in [alpha, beta].into_iter().enumerate() {
        if r >= irreps.len() {
            let label = if i == 0 { alpha } else { beta } + 1;
            return Err(RepError::UnknownIrrep {
                label: label.to_string(),
                count: irreps.len(),
            }
            .into());
        }
    }
    let (ra, rb) = (&irreps[alpha], &irreps[beta]);
    let dec = decompose(table, alpha, beta)?;
    let mut blocks = Vec::new();
    for (gi, &m) in dec.m.iter().enumerate() {
        if m == 0 {
            continue;
        }
        let rc = &irreps[gi];
        let mm = assemble_mercer_with(exec, ra, rb, rc)?;
        for mut b in cg_block(&mm, ra, rb, rc, m, tol)? {
            b.gamma_index = gi;
            blocks.push(b);
        }
    }
    let cg = CgMatrix::from_blocks(
        Arc::clone(ra.group()),
        ra.label().to_owned(),
        rb.label().to_owned(),
        blocks,
    );
    let defect = cg.unitary_defect();
    if defect > tol.eq_tol {
        return Err(CgError::UnitarityFailure { defect });
    }
    Ok(cg)
}

/// `max_g |U^H (Ra x Rb)(g) U - (direct sum of the targets)(g)|`.
pub fn block_diag_residual(
    u: &CMatrix,
    alpha: &Representation,
    beta: &Representation,
    targets: &[&Representation],
) -> f64 {
    let ud = u.adjoint();
    (0..alpha.group().order())
        .map(|g| {
            let rotated = &(&ud * &kron(alpha.matrix(g), beta.matrix(g))) * u;
            let sum = CMatrix::direct_sum(targets.iter().map(|r| r.matrix(g)));
            rotated.max_abs_diff(&sum)
        })
        .fold(0.0, f64::max)
}

/// Residual of [`block_diag_residual`] for a computed matrix.
pub fn verify_block_diag(
    cg: &CgMatrix,
    alpha: &Representation,
    beta: &Representation,
    irreps: &[Representation],
) -> f64 {
    let targets: Vec<&Representation> = cg.blocks.iter().map(|b| &irreps[b.gamma_index]).collect();
    block_diag_residual(&cg.assembled, alpha, beta, &targets)
}

/// Result of one pair in [`all_pairs`].
#[derive(Clone, Debug)]
pub struct PairCheck {
    pub alpha: usize,
    pub beta: usize,
    pub unitary_defect: f64,
    pub residual: f64,
    /// Largest pairwise spread of raw column norms within any block.
    pub norm_spread: f64,
    pub error: Option<CgError>,
}

/// Computes and checks every ordered pair of irreps, pairs in parallel.
pub fn all_pairs(
    exec: Execution,
    irreps: &[Representation],
    table: &CharacterTable,
    tol: &Tolerances,
) -> Vec<PairCheck> {
    let n = irreps.len();
    par::map_range(exec, n * n, |p| {
        let (a, b) = (p / n, p % n);
        match cg_matrix_with(Execution::Sequential, irreps, table, a, b, tol) {
            Ok(cg) => PairCheck {
                alpha: a,
                beta: b,
                unitary_defect: cg.unitary_defect(),
                residual: verify_block_diag(&cg, &irreps[a], &irreps[b], irreps),
                norm_spread: cg
                    .blocks
                    .iter()
                    .map(|blk| {
                        let (lo, hi) = blk
                            .raw_column_norms
                            .iter()
                            .fold((f64::INFINITY, 0.0f64), |(lo, hi), &x| {
                                (lo.min(x), hi.max(x))
                            });
                        hi - lo
                    })
                    .fold(0.0, f64::max),
                error: None,
            },
            Err(e) => PairCheck {
                alpha: a,
                beta: b,
                unitary_defect: f64::INFINITY,
                residual: f64::INFINITY,
                norm_spread: f64::INFINITY,
                error: Some(e),
            },
        }
    })
}
