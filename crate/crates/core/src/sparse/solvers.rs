//! Iterative solvers on symmetric positive semidefinite operators.

use crate::error::{Error, Result};

use super::csr::SparseMatrix;

/// Anything that can compute `y = A x`.
///
/// Application is fallible because some operators (inverse mass matrices)
/// run an inner solve.
pub trait LinearOperator {
    fn nrows(&self) -> usize;
    fn ncols(&self) -> usize;
    fn apply(&self, x: &[f64], y: &mut [f64]) -> Result<()>;

    fn apply_vec(&self, x: &[f64]) -> Result<Vec<f64>> {
        let mut y = vec![0.0; self.nrows()];
        self.apply(x, &mut y)?;
        Ok(y)
    }
}

impl LinearOperator for SparseMatrix {
    fn nrows(&self) -> usize {
        self.rows()
    }

    fn ncols(&self) -> usize {
        self.cols()
    }

    fn apply(&self, x: &[f64], y: &mut [f64]) -> Result<()> {
        if x.len() != self.cols() || y.len() != self.rows() {
            return Err(Error::DimensionMismatch(format!(
                "operator {:?} applied to vector of length {}",
                self.shape(),
                x.len()
            )));
        }
        self.mul_vec_into(x, y);
        Ok(())
    }
}

pub const DEFAULT_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone)]
pub struct Solution {
    pub x: Vec<f64>,
    pub iterations: usize,
    /// Final `||r|| / ||b||` (normal-equation residual for least squares).
    pub relative_residual: f64,
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

fn axpy(alpha: f64, x: &[f64], y: &mut [f64]) {
    y.iter_mut().zip(x).for_each(|(yi, xi)| *yi += alpha * xi);
}

/// Conjugate gradient from a zero initial guess.
///
/// Converges when `||b - A x|| <= tol * ||b||`. On a singular but consistent
/// system the iterates never pick up a kernel component (up to rounding),
/// so the result is the minimum-norm solution. `max_iter` defaults to ten
/// times the order.
pub fn conjugate_gradient(
    a: &dyn LinearOperator,
    b: &[f64],
    tol: f64,
    max_iter: Option<usize>,
) -> Result<Solution> {
    let n = a.nrows();
    if a.ncols() != n || b.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "CG needs a square operator matching b: {}x{} vs {}",
            n,
            a.ncols(),
            b.len()
        )));
    }
    let max_iter = max_iter.unwrap_or(10 * n.max(1));
    let b_norm = norm(b);
    let mut x = vec![0.0; n];
    if b_norm == 0.0 {
        return Ok(Solution { x, iterations: 0, relative_residual: 0.0 });
    }
    let mut r = b.to_vec();
    let mut p = r.clone();
    let mut ap = vec![0.0; n];
    let mut rr = dot(&r, &r);
    let target = tol * b_norm;

    for it in 1..=max_iter {
        a.apply(&p, &mut ap)?;
        let pap = dot(&p, &ap);
        if pap <= 0.0 {
            // direction in the kernel (or indefinite operator): cannot progress
            let res = rr.sqrt() / b_norm;
            return Err(Error::NotConverged { iterations: it - 1, residual: res });
        }
        let alpha = rr / pap;
        axpy(alpha, &p, &mut x);
        axpy(-alpha, &ap, &mut r);
        let rr_new = dot(&r, &r);
        if rr_new.sqrt() <= target {
            return Ok(Solution { x, iterations: it, relative_residual: rr_new.sqrt() / b_norm });
        }
        let beta = rr_new / rr;
        p.iter_mut().zip(&r).for_each(|(pi, ri)| *pi = ri + beta * *pi);
        rr = rr_new;
    }
    Err(Error::NotConverged { iterations: max_iter, residual: rr.sqrt() / b_norm })
}

/// Least squares `min ||A x - b||` by CG on the normal equations (CGLS).
///
/// Starting from zero keeps the iterate in `range(A^T)`, so a rank-deficient
/// problem yields the minimum-norm minimizer. Converges when
/// `||A^T (b - A x)|| <= tol * ||A^T b||`.
pub fn least_squares(a: &SparseMatrix, b: &[f64], tol: f64) -> Result<Solution> {
    if b.len() != a.rows() {
        return Err(Error::DimensionMismatch(format!(
            "least squares: matrix {:?} with rhs of length {}",
            a.shape(),
            b.len()
        )));
    }
    let at = a.transpose();
    let n = a.cols();
    let max_iter = 10 * n.max(1);
    let mut x = vec![0.0; n];
    let mut r = b.to_vec();
    let mut s = at.mul_vec(&r);
    let s0 = norm(&s);
    if s0 == 0.0 {
        return Ok(Solution { x, iterations: 0, relative_residual: 0.0 });
    }
    let mut p = s.clone();
    let mut gamma = dot(&s, &s);
    let mut q = vec![0.0; a.rows()];
    for it in 1..=max_iter {
        a.mul_vec_into(&p, &mut q);
        let qq = dot(&q, &q);
        if qq == 0.0 {
            return Err(Error::NotConverged { iterations: it - 1, residual: gamma.sqrt() / s0 });
        }
        let alpha = gamma / qq;
        axpy(alpha, &p, &mut x);
        axpy(-alpha, &q, &mut r);
        at.mul_vec_into(&r, &mut s);
        let gamma_new = dot(&s, &s);
        if gamma_new.sqrt() <= tol * s0 {
            return Ok(Solution { x, iterations: it, relative_residual: gamma_new.sqrt() / s0 });
        }
        let beta = gamma_new / gamma;
        p.iter_mut().zip(&s).for_each(|(pi, si)| *pi = si + beta * *pi);
        gamma = gamma_new;
    }
    Err(Error::NotConverged { iterations: max_iter, residual: gamma.sqrt() / s0 })
}
