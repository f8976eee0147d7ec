use std::path::Path;

use crate::dec_fem::{hodge_decompose, identity_stars, Cochain};
use crate::error::{Error, Result};
use crate::rips::{build_rips, RipsComplex};
use crate::simplicial::ChainComplex;
use crate::sparse::norm;

use super::output::{labelled, write_lines, write_table};
use super::{random_cochain, rng};

#[derive(Debug, Clone)]
pub struct SensorResult {
    pub complex: RipsComplex,
    /// The random 1-cochain that was decomposed.
    pub input: Vec<f64>,
    /// Raw harmonic part of `input`.
    pub harmonic: Vec<f64>,
    /// `harmonic / max |harmonic|`, or zeros when there is no harmonic part.
    pub normalized: Vec<f64>,
    /// `||h|| / ||x||`.
    pub harmonic_ratio: f64,
}

impl SensorResult {
    pub fn write_to(&self, dir: &Path) -> Result<()> {
        let edges = self.complex.cells(1);
        write_table(dir, "harmonic.txt", self.normalized.iter().map(|&v| vec![v]))?;
        write_lines(
            dir,
            "edge_magnitudes.txt",
            labelled(edges.iter(), self.normalized.iter().map(|v| vec![v.abs()])),
        )
    }
}

/// Coverage test on the Rips complex of `points` at radius `r`: the harmonic
/// part of a random 1-cochain under the combinatorial Laplacian
/// `∂_1ᵀ ∂_1 + ∂_2 ∂_2ᵀ` is nonzero exactly when there is a hole.
pub fn sensor(points: Vec<Vec<f64>>, r: f64, seed: u64, tol: f64) -> Result<SensorResult> {
    let complex = build_rips(points, r, 2)?;
    if complex.dim() < 1 || complex.cell_count(1) == 0 {
        return Err(Error::InvalidArgument(format!("no pair of points lies within radius {r}")));
    }
    let x = random_cochain(&mut rng(seed), complex.cell_count(1));
    let stars = identity_stars(&complex);
    let h = hodge_decompose(&complex, &Cochain::primal(1, x.clone()), &stars, tol)?.harmonic.values;
    let peak = h.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let normalized = if peak > 0.0 { h.iter().map(|v| v / peak).collect() } else { h.clone() };
    Ok(SensorResult { harmonic_ratio: norm(&h) / norm(&x), complex, input: x, harmonic: h, normalized })
}
