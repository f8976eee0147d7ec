use std::path::Path;

use crate::dec_fem::{
    dec_hodge_stars, hodge_decompose, laplace_derham, whitney_interpolate_at_barycenters, Cochain,
    HodgeStar,
};
use crate::error::{Error, Result};
use crate::simplicial::{ChainComplex, SimplicialComplex};
use crate::sparse::{norm, LinearOperator};

use super::output::write_table;
use super::{barycenters, components, random_cochain, rng};

/// A harmonic remainder this small (relative to its source cochain, in the
/// `⋆_1` norm) is treated as linearly dependent.
const RANK_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone)]
pub struct CohomologyResult {
    /// `b_0 - χ`, the first Betti number of a planar mesh.
    pub expected_rank: usize,
    pub rank: usize,
    /// `⋆_1`-orthonormal, localized harmonic basis.
    pub basis: Vec<Vec<f64>>,
    /// `||Δ_1 h|| / ||h||` for each basis cochain.
    pub laplacian_residuals: Vec<f64>,
    pub barycenters: Vec<Vec<f64>>,
    pub fields: Vec<Vec<Vec<f64>>>,
    pub warnings: Vec<String>,
}

impl CohomologyResult {
    pub fn write_to(&self, dir: &Path) -> Result<()> {
        for (k, (h, field)) in self.basis.iter().zip(&self.fields).enumerate() {
            write_table(dir, &format!("harmonic_{k}.txt"), h.iter().map(|&v| vec![v]))?;
            write_table(
                dir,
                &format!("harmonic_{k}_field.txt"),
                self.barycenters.iter().zip(field).map(|(b, f)| [b.as_slice(), f].concat()),
            )?;
        }
        Ok(())
    }
}

/// Householder reflection of the columns of `basis` (restricted to those
/// from `k` on) that maps the row vector at `row` onto its first entry.
fn reflect(basis: &mut [Vec<f64>], k: usize, row: usize) {
    let u: Vec<f64> = basis[k..].iter().map(|b| b[row]).collect();
    let len = norm(&u);
    if len == 0.0 {
        return;
    }
    let alpha = if u[0] > 0.0 { -len } else { len };
    let mut v = u;
    v[0] -= alpha;
    let vv: f64 = v.iter().map(|x| x * x).sum();
    if vv == 0.0 {
        return;
    }
    let m = basis[0].len();
    for i in 0..m {
        let s: f64 = basis[k..].iter().zip(&v).map(|(b, vj)| b[i] * vj).sum();
        let f = 2.0 * s / vv;
        for (b, vj) in basis[k..].iter_mut().zip(&v) {
            b[i] -= f * vj;
        }
    }
}

/// Each vector in turn claims its largest component; the remaining vectors
/// are rotated among themselves to vanish there.
fn localize(basis: &mut [Vec<f64>]) {
    for k in 0..basis.len() {
        let row = basis[k]
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.abs().total_cmp(&b.1.abs()))
            .map(|(i, _)| i)
            .unwrap_or(0);
        reflect(basis, k, row);
        if basis[k][row] < 0.0 {
            basis[k].iter_mut().for_each(|x| *x = -*x);
        }
    }
}

/// Harmonic parts of seeded random 1-cochains, orthonormalized in the
/// `⋆_1` inner product and then localized.
///
/// `2 b_1` cochains are decomposed (at least two, so that a trivial first
/// cohomology is actually probed).
pub fn cohomology(c: &SimplicialComplex, seed: u64, tol: f64) -> Result<CohomologyResult> {
    if c.dim() != 2 {
        return Err(Error::InvalidArgument(format!(
            "cohomology needs a triangle mesh, got a {}-complex",
            c.dim()
        )));
    }
    let counts = c.cell_counts();
    let comps = components(counts[0], c.cells(1));
    let b0 = comps.iter().max().map_or(0, |m| m + 1) as i64;
    let chi = counts[0] as i64 - counts[1] as i64 + counts[2] as i64;
    let expected = (b0 - chi).max(0) as usize;

    let stars = dec_hodge_stars(c)?;
    let star1: &HodgeStar = &stars[1];
    let mut rng = rng(seed);
    let mut basis: Vec<Vec<f64>> = Vec::new();
    for _ in 0..(2 * expected).max(2) {
        let omega = random_cochain(&mut rng, counts[1]);
        let scale = star1.inner(&omega, &omega).sqrt();
        let mut h = hodge_decompose(c, &Cochain::primal(1, omega), &stars, tol)?.harmonic.values;
        // two passes of Gram–Schmidt keep the basis orthonormal to rounding
        for _ in 0..2 {
            for b in &basis {
                let proj = star1.inner(b, &h);
                h.iter_mut().zip(b).for_each(|(x, y)| *x -= proj * y);
            }
        }
        let len = star1.inner(&h, &h).sqrt();
        if len > RANK_TOLERANCE * scale {
            h.iter_mut().for_each(|x| *x /= len);
            basis.push(h);
        }
    }
    localize(&mut basis);

    let lap = laplace_derham(c, 1, &stars, tol)?;
    let laplacian_residuals = basis
        .iter()
        .map(|h| Ok(norm(&lap.apply_vec(h)?) / norm(h)))
        .collect::<Result<Vec<f64>>>()?;

    let mut warnings = Vec::new();
    if basis.len() != expected {
        warnings.push(format!(
            "harmonic rank {} differs from the expected first Betti number {expected}",
            basis.len()
        ));
    }
    let fields = basis
        .iter()
        .map(|h| whitney_interpolate_at_barycenters(c, h))
        .collect::<Result<Vec<_>>>()?;
    Ok(CohomologyResult {
        expected_rank: expected,
        rank: basis.len(),
        basis,
        laplacian_residuals,
        barycenters: barycenters(c),
        fields,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn localization_keeps_orthonormality() {
        let r = 2f64.sqrt();
        let mut b = vec![vec![0.6, 0.8, 0.0], vec![0.8 / r, -0.6 / r, 1.0 / r]];
        localize(&mut b);
        let d = |x: &[f64], y: &[f64]| x.iter().zip(y).map(|(a, b)| a * b).sum::<f64>();
        assert!((d(&b[0], &b[0]) - 1.0).abs() < 1e-12);
        assert!((d(&b[1], &b[1]) - 1.0).abs() < 1e-12);
        assert!(d(&b[0], &b[1]).abs() < 1e-12);
        let row = (0..3).max_by(|&i, &j| b[0][i].abs().total_cmp(&b[0][j].abs())).unwrap();
        assert!(b[1][row].abs() < 1e-12);
    }
}
