//! Hodge decomposition of cochains.

use crate::error::{Error, Result};
use crate::simplicial::ChainComplex;
use crate::sparse::{conjugate_gradient, spgemm3, LinearOperator};

use super::operators::{Factor, Operator};
use super::star::HodgeStar;

/// Real values on the `dim`-cells of a complex (or the dual cells when `dual`).
#[derive(Debug, Clone, PartialEq)]
pub struct Cochain {
    pub dim: usize,
    pub dual: bool,
    pub values: Vec<f64>,
}

impl Cochain {
    pub fn primal(dim: usize, values: Vec<f64>) -> Self {
        Self { dim, dual: false, values }
    }

    pub fn norm(&self) -> f64 {
        self.values.iter().map(|v| v * v).sum::<f64>().sqrt()
    }
}

/// `ω = dα + δβ + h`.
#[derive(Debug, Clone)]
pub struct HodgeDecomposition {
    pub alpha: Cochain,
    pub beta: Cochain,
    pub exact: Cochain,
    pub coexact: Cochain,
    pub harmonic: Cochain,
}

fn sign(k: usize) -> f64 {
    if k % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Splits a primal `p`-cochain into exact, coexact and harmonic parts.
///
/// Both potentials come from singular but consistent symmetric systems
/// solved by CG:
/// `d_{p-1}ᵀ ⋆_p d_{p-1} α = d_{p-1}ᵀ ⋆_p ω` and
/// `d_p ⋆_p⁻¹ d_pᵀ γ = ± d_p ω` with `γ = ⋆_{p+1} β`, the sign making
/// `δβ = (-1)^{np+1} ⋆_p⁻¹ d_pᵀ ⋆_{p+1} β` consistent with the star
/// convention. The harmonic part is what is left.
pub fn hodge_decompose<C: ChainComplex + ?Sized>(
    c: &C,
    omega: &Cochain,
    stars: &[HodgeStar],
    tol: f64,
) -> Result<HodgeDecomposition> {
    let n = c.dim();
    let p = omega.dim;
    if omega.dual || p > n || omega.values.len() != c.cell_count(p) || stars.len() != n + 1 {
        return Err(Error::InvalidArgument(format!(
            "cannot decompose a {}{}-cochain of length {} on this complex",
            if omega.dual { "dual " } else { "" },
            p,
            omega.values.len()
        )));
    }
    let w = &omega.values;

    let (alpha, exact) = if p > 0 {
        let d = c.coboundary(p - 1)?;
        let dt = d.transpose();
        let star = stars[p].to_sparse();
        let a = spgemm3(&dt, &star, &d)?;
        let rhs = dt.mul_vec(&star.mul_vec(w));
        let alpha = conjugate_gradient(&a, &rhs, tol, None)?.x;
        let exact = d.mul_vec(&alpha);
        (alpha, exact)
    } else {
        (Vec::new(), vec![0.0; w.len()])
    };

    let (beta, coexact) = if p < n {
        let d = c.coboundary(p)?;
        let t = sign(n * p + 1) * stars[p].inverse_sign();
        let inv = stars[p].abs_inverse_factor(tol)?;
        let op = Operator::product(vec![
            Factor::Matrix(d.clone()),
            inv.clone(),
            Factor::Matrix(d.transpose()),
        ])?;
        let mut rhs = d.mul_vec(w);
        rhs.iter_mut().for_each(|v| *v *= t);
        let gamma = match op.to_sparse() {
            Some(m) => conjugate_gradient(&m, &rhs, tol, None)?.x,
            None => conjugate_gradient(&op, &rhs, tol, None)?.x,
        };
        let back = Operator::product(vec![Factor::Scale(t), inv, Factor::Matrix(d.transpose())])?;
        let coexact = back.apply_vec(&gamma)?;
        let beta = stars[p + 1].abs_inverse_factor(tol)?.apply(&gamma)?;
        (beta, coexact)
    } else {
        (Vec::new(), vec![0.0; w.len()])
    };

    let harmonic: Vec<f64> =
        w.iter().zip(&exact).zip(&coexact).map(|((o, e), q)| o - e - q).collect();
    Ok(HodgeDecomposition {
        alpha: Cochain::primal(p.saturating_sub(1), alpha),
        beta: Cochain::primal(p + 1, beta),
        exact: Cochain::primal(p, exact),
        coexact: Cochain::primal(p, coexact),
        harmonic: Cochain::primal(p, harmonic),
    })
}
