//! Character tables from the class algebra alone (Burnside's method with
//! Dixon's random-combination trick), no representation matrices needed.
//!
//! With class sums `K_a` and structure constants `K_a K_b = sum_d c[a][b][d] K_d`,
//! every irreducible character `chi` gives a common eigenvector
//! `w[b] = |C_b| chi(b) / chi(1)` of the matrices `A_a[b][d] = c[a][b][d]`.
//! After the similarity `L_a = D^-1/2 A_a D^1/2` with `D = diag(|C_b|)` the
//! `L_a` are normal and mutually commuting, so one Hermitian combination of
//! the `L_a` and their adjoints separates all common eigenvectors.

use std::cmp::Ordering;
use std::sync::Arc;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{CharacterTable, RepError};
use crate::group::{conjugacy_classes, ClassPartition, Group};
use crate::numerics::{hermitian_eig, CMatrix, Tolerances};

pub const DIXON_SEED: u64 = 42;

/// Number of random combinations tried before giving up.
pub const DIXON_ATTEMPTS: usize = 8;

/// `c[a][b][d]`: number of `x` in class `a` with `x^-1 z` in class `b`,
/// for a fixed representative `z` of class `d`.
pub fn class_coefficients(g: &Group, classes: &ClassPartition) -> Vec<Vec<Vec<u64>>> {
    let k = classes.len();
    let mut c = vec![vec![vec![0u64; k]; k]; k];
    for (a, members) in classes.classes().iter().enumerate() {
        for d in 0..k {
            let z = classes.representative(d);
            for &x in members {
                let y = g.mul(g.inverse(x), z);
                c[a][classes.class_of(y)][d] += 1;
            }
        }
    }
    c
}

/// Character table computed from the class algebra of `g`.
///
/// Rows are sorted by degree, then by character values in descending
/// lexicographic order over the classes (values rounded to 1e-6), so the
/// trivial character comes first. Labels are `"1"`, `"2"`, ... in that order.
pub fn character_table_dixon(g: &Arc<Group>, seed: u64) -> Result<CharacterTable, RepError> {
    let classes = conjugacy_classes(g);
    let k = classes.len();
    let sizes: Vec<f64> = classes.sizes().iter().map(|&s| s as f64).collect();
    let coeff = class_coefficients(g, &classes);
    let l: Vec<CMatrix> = (0..k)
        .map(|a| {
            let mut m = CMatrix::zeros(k, k);
            for b in 0..k {
                for d in 0..k {
                    m[(b, d)] =
                        Complex64::new(coeff[a][b][d] as f64 * (sizes[d] / sizes[b]).sqrt(), 0.0);
                }
            }
            m
        })
        .collect();

    let tol = Tolerances::default();
    for attempt in 0..DIXON_ATTEMPTS {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(attempt as u64));
        let mut h = CMatrix::zeros(k, k);
        for la in &l {
            let x: f64 = rng.gen();
            let y: f64 = rng.gen();
            let adj = la.adjoint();
            let sym = (la + &adj).scale(Complex64::new(x, 0.0));
            let anti = (la - &adj).scale(Complex64::new(0.0, y));
            h = &(&h + &sym) + &anti;
        }
        let eig = hermitian_eig(&h, &tol)?;
        let spread = eig.values.iter().fold(1.0f64, |m, v| m.max(v.abs()));
        let separated = eig.values.windows(2).all(|w| w[0] - w[1] > 1e-6 * spread);
        if !separated {
            continue;
        }
        match extract_rows(g.order(), &l, &sizes, &eig.vectors) {
            Some(rows) => return finish(g, classes, rows),
            None => continue,
        }
    }
    Err(RepError::DegenerateRandomization {
        attempts: DIXON_ATTEMPTS,
    })
}

type DegreeAndRow = (usize, Vec<Complex64>);

/// Characters and degrees from the common eigenvectors; `None` if some
/// eigenvector is not a common one (an unlucky combination).
fn extract_rows(
    order: usize,
    l: &[CMatrix],
    sizes: &[f64],
    vectors: &CMatrix,
) -> Option<Result<Vec<DegreeAndRow>, RepError>> {
    let k = sizes.len();
    let mut rows = Vec::with_capacity(k);
    for col in 0..k {
        let u = vectors.column(col);
        let mut omega = Vec::with_capacity(k);
        for la in l {
            let lu: Vec<Complex64> = (0..k)
                .map(|b| (0..k).map(|d| la[(b, d)] * u[d]).sum())
                .collect();
            let w: Complex64 = u.iter().zip(&lu).map(|(a, b)| a.conj() * b).sum();
            let residual = lu
                .iter()
                .zip(&u)
                .map(|(a, b)| (a - w * b).norm())
                .fold(0.0, f64::max);
            if residual > 1e-8 * (1.0 + la.max_abs()) {
                return None;
            }
            omega.push(w);
        }
        let norm: f64 = omega.iter().zip(sizes).map(|(w, h)| w.norm_sqr() / h).sum();
        let degree = (order as f64 / norm).sqrt();
        let rounded = degree.round();
        if (degree - rounded).abs() > 1e-6 || rounded < 1.0 {
            return Some(Err(RepError::NonIntegralDegree { value: degree }));
        }
        let chi = omega
            .iter()
            .zip(sizes)
            .map(|(w, h)| w * rounded / *h)
            .collect();
        rows.push((rounded as usize, chi));
    }
    Some(Ok(rows))
}

fn finish(
    g: &Arc<Group>,
    classes: ClassPartition,
    rows: Result<Vec<DegreeAndRow>, RepError>,
) -> Result<CharacterTable, RepError> {
    let mut rows = rows?;
    rows.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| lexicographic_desc(&a.1, &b.1)));
    let labels = (1..=rows.len()).map(|i| i.to_string()).collect();
    let dims = rows.iter().map(|r| r.0).collect();
    let chi = rows.into_iter().map(|r| r.1).collect();
    Ok(CharacterTable::from_parts(
        Arc::clone(g),
        classes,
        labels,
        dims,
        chi,
    ))
}

fn lexicographic_desc(a: &[Complex64], b: &[Complex64]) -> Ordering {
    let key = |z: &Complex64| ((z.re * 1e6).round() as i64, (z.im * 1e6).round() as i64);
    for (x, y) in a.iter().zip(b) {
        match key(y).cmp(&key(x)) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    Ordering::Equal
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{builtin, BuiltinGroup};

    #[test]
    fn q8_class_product() {
        let g = builtin(BuiltinGroup::Q8);
        let cl = conjugacy_classes(&g);
        let c = class_coefficients(&g, &cl);
        // C3 C3 = 2 C1 + 2 C2
        let row: Vec<u64> = (0..5).map(|d| c[2][2][d]).collect();
        assert_eq!(row, [2, 2, 0, 0, 0]);
    }

    #[test]
    fn q8_table_matches_known_values() {
        let g = Arc::new(builtin(BuiltinGroup::Q8));
        let t = character_table_dixon(&g, DIXON_SEED).unwrap();
        let expect = [
            [1.0, 1.0, 1.0, 1.0, 1.0],
            [1.0, 1.0, 1.0, -1.0, -1.0],
            [1.0, 1.0, -1.0, 1.0, -1.0],
            [1.0, 1.0, -1.0, -1.0, 1.0],
            [2.0, -2.0, 0.0, 0.0, 0.0],
        ];
        for (row, want) in t.rows().iter().zip(expect) {
            for (z, w) in row.iter().zip(want) {
                assert!((z - Complex64::new(w, 0.0)).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn degrees_and_consistency() {
        let expect = [
            (BuiltinGroup::Q8, vec![1, 1, 1, 1, 2]),
            (BuiltinGroup::Q16, vec![1, 1, 1, 1, 2, 2, 2]),
            (BuiltinGroup::Q32, [vec![1; 4], vec![2; 7]].concat()),
            (BuiltinGroup::G32_42, [vec![1; 16], vec![4]].concat()),
        ];
        for (which, dims) in expect {
            let g = Arc::new(builtin(which));
            let t = character_table_dixon(&g, DIXON_SEED).unwrap();
            assert_eq!(t.dims(), dims.as_slice(), "{which}");
            assert!(t.is_consistent(1e-8), "{which}");
        }
    }

    #[test]
    fn other_seeds_give_the_same_table() {
        let g = Arc::new(builtin(BuiltinGroup::Q32));
        let a = character_table_dixon(&g, DIXON_SEED).unwrap();
        let b = character_table_dixon(&g, 7).unwrap();
        let perm = a.row_permutation_to(&b, 1e-8).unwrap();
        assert_eq!(perm, (0..a.len()).collect::<Vec<_>>());
    }
}
