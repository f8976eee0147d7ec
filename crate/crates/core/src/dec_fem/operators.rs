//! Composite operators: codifferential and Laplace–deRham.

use crate::error::{Error, Result};
use crate::simplicial::ChainComplex;
use crate::sparse::{conjugate_gradient, spgemm, LinearOperator, SparseMatrix};

use super::star::HodgeStar;

/// One factor of an operator product.
#[derive(Debug, Clone)]
pub enum Factor {
    Matrix(SparseMatrix),
    Scale(f64),
    /// `sign * A⁻¹`, applied by a CG solve.
    Solve { matrix: SparseMatrix, sign: f64, tol: f64 },
}

impl Factor {
    fn shape(&self) -> Option<(usize, usize)> {
        match self {
            Factor::Matrix(m) | Factor::Solve { matrix: m, .. } => Some(m.shape()),
            Factor::Scale(_) => None,
        }
    }

    pub(crate) fn apply(&self, x: &[f64]) -> Result<Vec<f64>> {
        match self {
            Factor::Matrix(m) => m.apply_vec(x),
            Factor::Scale(s) => Ok(x.iter().map(|v| s * v).collect()),
            Factor::Solve { matrix, sign, tol } => {
                let mut y = conjugate_gradient(matrix, x, *tol, None)?.x;
                y.iter_mut().for_each(|v| *v *= sign);
                Ok(y)
            }
        }
    }
}

/// A sum of products of factors, applied right to left.
///
/// Products containing an inverse mass matrix stay implicit; everything else
/// can be multiplied out with [`Operator::to_sparse`].
#[derive(Debug, Clone)]
pub struct Operator {
    rows: usize,
    cols: usize,
    terms: Vec<Vec<Factor>>,
}

impl Operator {
    pub fn product(factors: Vec<Factor>) -> Result<Self> {
        let shapes: Vec<(usize, usize)> = factors.iter().filter_map(Factor::shape).collect();
        let (Some(first), Some(last)) = (shapes.first(), shapes.last()) else {
            return Err(Error::InvalidArgument("operator product needs a matrix factor".into()));
        };
        for w in shapes.windows(2) {
            if w[0].1 != w[1].0 {
                return Err(Error::DimensionMismatch(format!(
                    "cannot compose {:?} with {:?}",
                    w[0], w[1]
                )));
            }
        }
        Ok(Self { rows: first.0, cols: last.1, terms: vec![factors] })
    }

    pub fn from_matrix(m: SparseMatrix) -> Self {
        Self { rows: m.rows(), cols: m.cols(), terms: vec![vec![Factor::Matrix(m)]] }
    }

    pub fn add(mut self, other: Operator) -> Result<Self> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch(format!(
                "cannot add {}x{} and {}x{} operators",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        self.terms.extend(other.terms);
        Ok(self)
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_explicit(&self) -> bool {
        self.terms.iter().flatten().all(|f| !matches!(f, Factor::Solve { .. }))
    }

    /// Multiplies everything out; `None` when an inverse mass matrix is involved.
    pub fn to_sparse(&self) -> Option<SparseMatrix> {
        if !self.is_explicit() {
            return None;
        }
        let mut total = SparseMatrix::zeros(self.rows, self.cols);
        for term in &self.terms {
            let mut scale = 1.0;
            let mut acc: Option<SparseMatrix> = None;
            for f in term {
                match f {
                    Factor::Scale(s) => scale *= s,
                    Factor::Matrix(m) => {
                        acc = Some(match acc {
                            None => m.clone(),
                            Some(a) => spgemm(&a, m).expect("shapes checked at construction"),
                        })
                    }
                    Factor::Solve { .. } => unreachable!(),
                }
            }
            let product = acc.expect("product has a matrix factor").scale(scale);
            total = total.add(&product).expect("shapes checked at construction");
        }
        Some(total)
    }
}

impl LinearOperator for Operator {
    fn nrows(&self) -> usize {
        self.rows
    }

    fn ncols(&self) -> usize {
        self.cols
    }

    fn apply(&self, x: &[f64], y: &mut [f64]) -> Result<()> {
        if x.len() != self.cols || y.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "operator {}x{} applied to vector of length {}",
                self.rows,
                self.cols,
                x.len()
            )));
        }
        y.iter_mut().for_each(|v| *v = 0.0);
        for term in &self.terms {
            let mut v = x.to_vec();
            for f in term.iter().rev() {
                v = f.apply(&v)?;
            }
            y.iter_mut().zip(&v).for_each(|(a, b)| *a += b);
        }
        Ok(())
    }
}

fn sign(k: usize) -> f64 {
    if k % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// `δ_{p+1} = (-1)^{np+1} ⋆_p⁻¹ d_pᵀ ⋆_{p+1}`, mapping `(p+1)`-cochains to `p`-cochains.
pub fn codifferential(
    star_p: &HodgeStar,
    star_p1: &HodgeStar,
    d_p: &SparseMatrix,
    tol: f64,
) -> Result<Operator> {
    let (n, p) = (star_p.n, star_p.p);
    if star_p1.n != n || star_p1.p != p + 1 {
        return Err(Error::InvalidArgument(format!(
            "codifferential needs ⋆_{p} and ⋆_{}, got ⋆_{}",
            p + 1,
            star_p1.p
        )));
    }
    Operator::product(vec![
        Factor::Scale(sign(n * p + 1)),
        star_p.inverse_factor(tol)?,
        Factor::Matrix(d_p.transpose()),
        star_p1.factor(),
    ])
}

/// Weak Laplace–deRham operator
/// `d_pᵀ ⋆_{p+1} d_p + (-1)^{(p-1)(n-p+1)} ⋆_p d_{p-1} ⋆_{p-1}⁻¹ d_{p-1}ᵀ ⋆_p`.
///
/// The second term is dropped at `p = 0` and the first at `p = n`.
pub fn laplace_derham<C: ChainComplex + ?Sized>(
    c: &C,
    p: usize,
    stars: &[HodgeStar],
    tol: f64,
) -> Result<Operator> {
    let n = c.dim();
    if p > n || stars.len() != n + 1 {
        return Err(Error::InvalidArgument(format!(
            "Δ_{p} on a {n}-complex with {} stars",
            stars.len()
        )));
    }
    let mut op: Option<Operator> = None;
    if p < n {
        let d = c.coboundary(p)?;
        op = Some(Operator::product(vec![
            Factor::Matrix(d.transpose()),
            stars[p + 1].factor(),
            Factor::Matrix(d),
        ])?);
    }
    if p > 0 {
        let d = c.coboundary(p - 1)?;
        let second = Operator::product(vec![
            Factor::Scale(sign((p - 1) * (n - p + 1))),
            stars[p].factor(),
            Factor::Matrix(d.clone()),
            stars[p - 1].inverse_factor(tol)?,
            Factor::Matrix(d.transpose()),
            stars[p].factor(),
        ])?;
        op = Some(match op {
            Some(first) => first.add(second)?,
            None => second,
        });
    }
    op.ok_or_else(|| Error::InvalidArgument("Δ_0 on a 0-complex is empty".into()))
}

/// `Δ_p = ∂_pᵀ ∂_p + ∂_{p+1} ∂_{p+1}ᵀ`, no metric.
pub fn combinatorial_laplacian<C: ChainComplex + ?Sized>(c: &C, p: usize) -> Result<SparseMatrix> {
    let n = c.dim();
    if p > n {
        return Err(Error::InvalidArgument(format!("Δ_{p} on a {n}-complex")));
    }
    let b = c.boundary(p);
    let mut lap = spgemm(&b.transpose(), b)?;
    if p < n {
        let b1 = c.boundary(p + 1);
        lap = lap.add(&spgemm(b1, &b1.transpose())?)?;
    }
    Ok(lap)
}
