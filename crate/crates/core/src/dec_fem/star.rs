//! Hodge stars: diagonal DEC stars and Whitney mass matrices.

use crate::error::{Error, Result};
use crate::geometry::{dual_volumes, primal_volumes, DualVolumes};
use crate::simplicial::{ChainComplex, SimplicialComplex};
use crate::sparse::SparseMatrix;

use super::operators::Factor;
use super::whitney::whitney_mass_matrix;

#[derive(Debug, Clone)]
pub enum StarKind {
    /// `|⋆σ_i| / |σ_i|` (or all ones for the combinatorial star).
    Diagonal(Vec<f64>),
    /// Whitney mass matrix.
    Mass(SparseMatrix),
}

/// `⋆_p` on an `n`-complex.
#[derive(Debug, Clone)]
pub struct HodgeStar {
    pub p: usize,
    pub n: usize,
    pub kind: StarKind,
}

/// Inner solves with a mass matrix run this much tighter than the outer tolerance.
const INNER_TOLERANCE_FACTOR: f64 = 1e-3;

impl HodgeStar {
    pub fn identity(p: usize, n: usize, len: usize) -> Self {
        Self { p, n, kind: StarKind::Diagonal(vec![1.0; len]) }
    }

    pub fn len(&self) -> usize {
        match &self.kind {
            StarKind::Diagonal(d) => d.len(),
            StarKind::Mass(m) => m.rows(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `(-1)^{p(n-p)}`, the value of `⋆_p⁻¹ ⋆_p`.
    pub fn inverse_sign(&self) -> f64 {
        if (self.p * (self.n - self.p)) % 2 == 0 {
            1.0
        } else {
            -1.0
        }
    }

    pub fn diagonal(&self) -> Option<&[f64]> {
        match &self.kind {
            StarKind::Diagonal(d) => Some(d),
            StarKind::Mass(_) => None,
        }
    }

    pub fn to_sparse(&self) -> SparseMatrix {
        match &self.kind {
            StarKind::Diagonal(d) => SparseMatrix::from_diagonal(d),
            StarKind::Mass(m) => m.clone(),
        }
    }

    pub(crate) fn factor(&self) -> Factor {
        Factor::Matrix(self.to_sparse())
    }

    /// `⋆_p⁻¹`, carrying the sign `(-1)^{p(n-p)}`.
    pub(crate) fn inverse_factor(&self, tol: f64) -> Result<Factor> {
        self.scaled_inverse(self.inverse_sign(), tol)
    }

    /// The plain matrix inverse, without the sign.
    pub(crate) fn abs_inverse_factor(&self, tol: f64) -> Result<Factor> {
        self.scaled_inverse(1.0, tol)
    }

    fn scaled_inverse(&self, sign: f64, tol: f64) -> Result<Factor> {
        match &self.kind {
            StarKind::Diagonal(d) => {
                if let Some(i) = d.iter().position(|&x| x == 0.0) {
                    return Err(Error::InvalidArgument(format!(
                        "⋆_{} has a zero entry at cell {i} and cannot be inverted",
                        self.p
                    )));
                }
                let inv: Vec<f64> = d.iter().map(|x| sign / x).collect();
                Ok(Factor::Matrix(SparseMatrix::from_diagonal(&inv)))
            }
            StarKind::Mass(m) => Ok(Factor::Solve {
                matrix: m.clone(),
                sign,
                tol: (tol * INNER_TOLERANCE_FACTOR).max(1e-15),
            }),
        }
    }

    /// `aᵀ ⋆_p b`.
    pub fn inner(&self, a: &[f64], b: &[f64]) -> f64 {
        match &self.kind {
            StarKind::Diagonal(d) => a.iter().zip(b).zip(d).map(|((x, y), s)| x * y * s).sum(),
            StarKind::Mass(m) => {
                let mb = m.mul_vec(b);
                a.iter().zip(&mb).map(|(x, y)| x * y).sum()
            }
        }
    }
}

/// Diagonal DEC star `⋆_p(i, i) = |⋆σ_i| / |σ_i|`.
///
/// A negative dual volume at this level is reported as a Delaunay violation.
pub fn dec_hodge_star(c: &SimplicialComplex, duals: &DualVolumes, p: usize) -> Result<HodgeStar> {
    let n = c.dim();
    if p > n {
        return Err(Error::InvalidArgument(format!("⋆_{p} requested on a {n}-complex")));
    }
    let bad: Vec<usize> = duals.negative.iter().filter(|(d, _)| *d == p).map(|&(_, i)| i).collect();
    if !bad.is_empty() {
        return Err(Error::DelaunayViolation { dim: p, cells: bad });
    }
    let primal = primal_volumes(c)?;
    let diag = duals.volumes[p].iter().zip(&primal[p]).map(|(d, v)| d / v).collect();
    Ok(HodgeStar { p, n, kind: StarKind::Diagonal(diag) })
}

/// DEC stars for every level.
pub fn dec_hodge_stars(c: &SimplicialComplex) -> Result<Vec<HodgeStar>> {
    let duals = dual_volumes(c)?;
    (0..=c.dim()).map(|p| dec_hodge_star(c, &duals, p)).collect()
}

/// Whitney stars `⋆_p = M_p` for every level.
pub fn whitney_hodge_stars(c: &SimplicialComplex) -> Result<Vec<HodgeStar>> {
    (0..=c.dim())
        .map(|p| {
            Ok(HodgeStar { p, n: c.dim(), kind: StarKind::Mass(whitney_mass_matrix(c, p)?.matrix) })
        })
        .collect()
}

/// Identity stars on every level of a metric-free complex.
pub fn identity_stars<C: ChainComplex + ?Sized>(c: &C) -> Vec<HodgeStar> {
    let n = c.dim();
    (0..=n).map(|p| HodgeStar::identity(p, n, c.cell_count(p))).collect()
}
