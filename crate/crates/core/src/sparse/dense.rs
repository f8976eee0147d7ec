//! Small dense kernels: determinants and the generalized symmetric eigenproblem.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

use super::csr::SparseMatrix;

/// Determinant of a row-major `n x n` matrix.
///
/// Closed-form cofactor expansion up to order 4, partial-pivot LU beyond.
pub fn determinant(a: &[f64], n: usize) -> f64 {
    assert_eq!(a.len(), n * n, "determinant needs an n x n matrix");
    match n {
        0 => 1.0,
        1 => a[0],
        2 => a[0] * a[3] - a[1] * a[2],
        3 => det3(a),
        4 => det4(a),
        _ => determinant_lu(a, n),
    }
}

fn det3(a: &[f64]) -> f64 {
    a[0] * (a[4] * a[8] - a[5] * a[7]) - a[1] * (a[3] * a[8] - a[5] * a[6])
        + a[2] * (a[3] * a[7] - a[4] * a[6])
}

fn det4(a: &[f64]) -> f64 {
    // Laplace expansion on the first two rows
    let s0 = a[0] * a[5] - a[4] * a[1];
    let s1 = a[0] * a[6] - a[4] * a[2];
    let s2 = a[0] * a[7] - a[4] * a[3];
    let s3 = a[1] * a[6] - a[5] * a[2];
    let s4 = a[1] * a[7] - a[5] * a[3];
    let s5 = a[2] * a[7] - a[6] * a[3];
    let c5 = a[10] * a[15] - a[14] * a[11];
    let c4 = a[9] * a[15] - a[13] * a[11];
    let c3 = a[9] * a[14] - a[13] * a[10];
    let c2 = a[8] * a[15] - a[12] * a[11];
    let c1 = a[8] * a[14] - a[12] * a[10];
    let c0 = a[8] * a[13] - a[12] * a[9];
    s0 * c5 - s1 * c4 + s2 * c3 + s3 * c2 - s4 * c1 + s5 * c0
}

/// Recursive cofactor expansion along the first row, any order.
pub fn determinant_cofactor(a: &[f64], n: usize) -> f64 {
    assert_eq!(a.len(), n * n, "determinant needs an n x n matrix");
    if n <= 4 {
        return determinant(a, n);
    }
    let mut minor = vec![0.0; (n - 1) * (n - 1)];
    let mut sum = 0.0;
    for j in 0..n {
        if a[j] == 0.0 {
            continue;
        }
        let mut k = 0;
        for r in 1..n {
            for c in (0..n).filter(|&c| c != j) {
                minor[k] = a[r * n + c];
                k += 1;
            }
        }
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign * a[j] * determinant_cofactor(&minor, n - 1);
    }
    sum
}

/// LU factorization with partial pivoting; returns 0 for a singular matrix.
pub fn determinant_lu(a: &[f64], n: usize) -> f64 {
    assert_eq!(a.len(), n * n, "determinant needs an n x n matrix");
    let mut m = a.to_vec();
    let mut det = 1.0;
    for k in 0..n {
        let pivot = (k..n)
            .max_by(|&i, &j| m[i * n + k].abs().total_cmp(&m[j * n + k].abs()))
            .unwrap();
        if m[pivot * n + k] == 0.0 {
            return 0.0;
        }
        if pivot != k {
            for c in 0..n {
                m.swap(k * n + c, pivot * n + c);
            }
            det = -det;
        }
        let d = m[k * n + k];
        det *= d;
        for i in k + 1..n {
            let f = m[i * n + k] / d;
            if f != 0.0 {
                for c in k + 1..n {
                    m[i * n + c] -= f * m[k * n + c];
                }
            }
        }
    }
    det
}

fn to_dense(a: &SparseMatrix) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(a.rows(), a.cols());
    for (i, j, v) in a.iter() {
        m[(i, j)] = v;
    }
    m
}

/// Eigenpairs of `K v = λ M v` for symmetric `K` and SPD `M`.
#[derive(Debug, Clone)]
pub struct GeneralizedEigen {
    /// All eigenvalues, ascending.
    pub values: Vec<f64>,
    order: Vec<usize>,
    lt: DMatrix<f64>,
    w: DMatrix<f64>,
}

impl GeneralizedEigen {
    /// `M`-orthonormal eigenvector of `values[i]`.
    pub fn vector(&self, i: usize) -> Result<Vec<f64>> {
        let w: DVector<f64> = self.w.column(self.order[i]).into_owned();
        let v = self.lt.solve_upper_triangular(&w).ok_or(Error::NotPositiveDefinite)?;
        Ok(v.iter().copied().collect())
    }
}

/// Dense solve of the generalized symmetric eigenproblem.
///
/// `M = L Lᵀ` reduces it to the standard symmetric problem for
/// `L⁻¹ K L⁻ᵀ`; eigenvectors are mapped back with `L⁻ᵀ` on request.
pub fn symmetric_generalized_eig(k: &SparseMatrix, m: &SparseMatrix) -> Result<GeneralizedEigen> {
    let n = k.rows();
    if k.shape() != (n, n) || m.shape() != (n, n) {
        return Err(Error::DimensionMismatch(format!(
            "eigenproblem with K {:?} and M {:?}",
            k.shape(),
            m.shape()
        )));
    }
    let chol = to_dense(m).cholesky().ok_or(Error::NotPositiveDefinite)?;
    let l = chol.l();
    let kd = to_dense(k);
    // Y = L⁻¹ K, then C = L⁻¹ Yᵀ = L⁻¹ K L⁻ᵀ
    let y = l.solve_lower_triangular(&kd).ok_or(Error::NotPositiveDefinite)?;
    let mut c = l
        .solve_lower_triangular(&y.transpose())
        .ok_or(Error::NotPositiveDefinite)?;
    let ct = c.transpose();
    c += ct;
    c *= 0.5;

    let eig = c.symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    Ok(GeneralizedEigen { values, order, lt: l.transpose(), w: eig.eigenvectors })
}
