use num_complex::Complex64;

use super::{RepError, Representation};
use crate::group::ClassPartition;

/// Trace of the representation on each class, checked to be constant on
/// every class within `tol`.
pub fn character(
    r: &Representation,
    classes: &ClassPartition,
    tol: f64,
) -> Result<Vec<Complex64>, RepError> {
    classes
        .classes()
        .iter()
        .map(|members| {
            let first = members[0];
            let chi = r.matrix(first).trace();
            for &x in &members[1..] {
                let difference = (r.matrix(x).trace() - chi).norm();
                if difference > tol {
                    return Err(RepError::NotClassFunction {
                        a: first + 1,
                        b: x + 1,
                        difference,
                    });
                }
            }
            Ok(chi)
        })
        .collect()
}

/// `(1/|G|) sum_c |C_c| |chi(c)|^2`, which is 1 exactly for irreducibles.
pub fn character_norm(chi: &[Complex64], classes: &ClassPartition) -> f64 {
    let order: usize = classes.sizes().iter().sum();
    chi.iter()
        .enumerate()
        .map(|(c, z)| classes.size(c) as f64 * z.norm_sqr())
        .sum::<f64>()
        / order as f64
}

/// True iff the character norm is 1 within `1e-8`.
pub fn verify_irreducible(r: &Representation, classes: &ClassPartition) -> Result<bool, RepError> {
    let chi = character(r, classes, 1e-10)?;
    Ok((character_norm(&chi, classes) - 1.0).abs() <= 1e-8)
}

/// Largest deviation from the orthogonality relations
/// `(1/|G|) sum_g R^a_ij(g) conj(R^b_kl(g)) = delta_ab delta_ik delta_jl / n_a`
/// over all pairs of the given irreps and all index combinations.
pub fn great_orthogonality_defect(irreps: &[Representation]) -> f64 {
    let mut worst: f64 = 0.0;
    for (ia, a) in irreps.iter().enumerate() {
        for (ib, b) in irreps.iter().enumerate() {
            let n = a.group().order();
            let inv = 1.0 / n as f64;
            for i in 0..a.dim() {
                for j in 0..a.dim() {
                    for k in 0..b.dim() {
                        for l in 0..b.dim() {
                            let sum: Complex64 = (0..n)
                                .map(|g| a.matrix(g)[(i, j)] * b.matrix(g)[(k, l)].conj())
                                .sum();
                            let expect = if ia == ib && i == k && j == l {
                                1.0 / a.dim() as f64
                            } else {
                                0.0
                            };
                            worst = worst.max((sum * inv - expect).norm());
                        }
                    }
                }
            }
        }
    }
    worst
}
