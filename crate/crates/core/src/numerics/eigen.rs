//! Cyclic Jacobi eigensolver for dense Hermitian matrices.
//!
//! Each rotation first removes the phase of the pivot `a[p][q]` and then
//! applies an ordinary real Givens rotation, so the accumulated transform
//! stays unitary and the diagonal stays real.

use num_complex::Complex64;

use super::{CMatrix, NumericsError, Tolerances};

/// Maximum number of full sweeps over the upper triangle.
pub const SWEEP_BUDGET: usize = 100;

/// Eigenvalues sorted descending with matching orthonormal eigenvector columns.
#[derive(Clone, Debug)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: CMatrix,
}

impl HermitianEigen {
    pub fn vector(&self, i: usize) -> Vec<Complex64> {
        self.vectors.column(i)
    }

    /// Number of eigenvalues strictly above `threshold`.
    pub fn count_above(&self, threshold: f64) -> usize {
        self.values.iter().filter(|&&v| v > threshold).count()
    }

    /// `V diag(values) V^H`.
    pub fn reconstruct(&self) -> CMatrix {
        let n = self.values.len();
        let mut scaled = self.vectors.clone();
        for j in 0..n {
            for i in 0..n {
                scaled[(i, j)] *= self.values[j];
            }
        }
        &scaled * &self.vectors.adjoint()
    }
}

pub fn hermitian_eig(m: &CMatrix, tol: &Tolerances) -> Result<HermitianEigen, NumericsError> {
    if !m.is_square() {
        return Err(NumericsError::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let defect = m.hermitian_defect();
    if defect > 1e3 * tol.eq_tol {
        return Err(NumericsError::NotHermitian { defect });
    }
    let n = m.rows();
    let mut a = (m + &m.adjoint()).scale(Complex64::new(0.5, 0.0));
    let mut v = CMatrix::identity(n);

    let scale = a.max_abs();
    if n > 1 && scale > 0.0 {
        let target = f64::EPSILON * scale;
        let mut sweeps = 0;
        while off_diagonal_norm(&a) > target {
            if sweeps == SWEEP_BUDGET {
                return Err(NumericsError::NoConvergence { sweeps });
            }
            for p in 0..n - 1 {
                for q in p + 1..n {
                    rotate(&mut a, &mut v, p, q, scale);
                }
            }
            sweeps += 1;
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    order.sort_by(|&x, &y| diag[y].total_cmp(&diag[x]));
    let values: Vec<f64> = order.iter().map(|&i| diag[i]).collect();
    let mut vectors = CMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, &v.column(src));
    }

    // re-orthonormalize each cluster of (nearly) equal eigenvalues
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && values[end - 1] - values[end] <= tol.eig_zero_tol {
            end += 1;
        }
        if end - start > 1 {
            gram_schmidt_columns(&mut vectors, start..end);
        }
        start = end;
    }

    Ok(HermitianEigen { values, vectors })
}

fn off_diagonal_norm(a: &CMatrix) -> f64 {
    let n = a.rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

fn rotate(a: &mut CMatrix, v: &mut CMatrix, p: usize, q: usize, scale: f64) {
    let apq = a[(p, q)];
    let b = apq.norm();
    if b <= f64::EPSILON * 1e-3 * scale {
        return;
    }
    let phase = apq / b;
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let tau = (aqq - app) / (2.0 * b);
    let t = if tau == 0.0 {
        1.0
    } else {
        tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let n = a.rows();

    // J = [[c, s e^{iφ}], [-s e^{-iφ}, c]] on the (p, q) plane; A <- J^H A J.
    let jpq = phase * s;
    let jqp = -phase.conj() * s;
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * c + akq * jqp;
        a[(k, q)] = akp * jpq + akq * c;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = apk * c + aqk * jqp.conj();
        a[(q, k)] = apk * jpq.conj() + aqk * c;
    }
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);
    a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * c + vkq * jqp;
        v[(k, q)] = vkp * jpq + vkq * c;
    }
}

/// Modified Gram-Schmidt on a contiguous range of columns.
pub(crate) fn gram_schmidt_columns(m: &mut CMatrix, range: std::ops::Range<usize>) {
    let cols: Vec<usize> = range.collect();
    for (idx, &j) in cols.iter().enumerate() {
        let mut col = m.column(j);
        for &k in &cols[..idx] {
            let prev = m.column(k);
            let proj: Complex64 = prev.iter().zip(&col).map(|(p, x)| p.conj() * x).sum();
            for (x, p) in col.iter_mut().zip(&prev) {
                *x -= proj * p;
            }
        }
        let norm = col.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 0.0 {
            for x in &mut col {
                *x /= norm;
            }
        }
        m.set_column(j, &col);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn diagonal_input() {
        let m = CMatrix::diag(&[c(1.0, 0.0), c(3.0, 0.0), c(0.0, 0.0)]);
        let e = hermitian_eig(&m, &Tolerances::default()).unwrap();
        assert_eq!(e.values, vec![3.0, 1.0, 0.0]);
        // standard basis vectors, reordered
        assert_eq!(e.vector(0), vec![c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]);
        assert_eq!(e.vector(1), vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        assert_eq!(e.vector(2), vec![c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
    }

    #[test]
    fn rank_one_projector() {
        let s = 1.0 / 3.0f64.sqrt();
        let v = [c(s, 0.0), c(0.0, s), c(-s * 0.6, s * 0.8)];
        let mut m = CMatrix::zeros(3, 3);
        for i in 0..3 {
            for j in 0..3 {
                m[(i, j)] = v[i] * v[j].conj();
            }
        }
        let e = hermitian_eig(&m, &Tolerances::default()).unwrap();
        assert!((e.values[0] - 1.0).abs() < 1e-12);
        assert!(e.values[1].abs() < 1e-12 && e.values[2].abs() < 1e-12);
        let u = e.vector(0);
        let overlap: Complex64 = v.iter().zip(&u).map(|(a, b)| a.conj() * b).sum();
        assert!((overlap.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn complex_two_by_two() {
        // [[2, i], [-i, 2]] has eigenvalues 3 and 1
        let m =
            CMatrix::from_rows(&[[c(2.0, 0.0), c(0.0, 1.0)], [c(0.0, -1.0), c(2.0, 0.0)]]).unwrap();
        let e = hermitian_eig(&m, &Tolerances::default()).unwrap();
        assert!((e.values[0] - 3.0).abs() < 1e-14);
        assert!((e.values[1] - 1.0).abs() < 1e-14);
        assert!(e.reconstruct().approx_eq(&m, 1e-14));
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = CMatrix::from_real_rows(&[[0.0, 1.0], [0.0, 0.0]]).unwrap();
        assert!(matches!(
            hermitian_eig(&m, &Tolerances::default()),
            Err(NumericsError::NotHermitian { .. })
        ));
    }

    #[test]
    fn degenerate_cluster_stays_orthonormal() {
        let m = CMatrix::diag(&[c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
        let e = hermitian_eig(&m, &Tolerances::default()).unwrap();
        let g = &e.vectors.adjoint() * &e.vectors;
        assert!(g.approx_eq(&CMatrix::identity(4), 1e-14));
    }
}
