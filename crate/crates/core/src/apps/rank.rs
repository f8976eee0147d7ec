use std::collections::BTreeMap;
use std::path::Path;

use crate::abstract_complex::{build_abstract, AbstractComplex};
use crate::error::Result;
use crate::simplicial::{ChainComplex, SimplexArray};
use crate::sparse::{least_squares, norm};

use super::components;
use super::output::{labelled, write_lines};

#[derive(Debug, Clone)]
pub struct RankResult {
    pub complex: AbstractComplex,
    /// Vertex label of each score.
    pub labels: Vec<usize>,
    /// Scores, shifted so each connected component has minimum zero.
    pub alpha: Vec<f64>,
    /// Comparison value per edge, in the orientation the edge was given.
    pub omega: Vec<f64>,
    /// `||∂_1ᵀ α - ω||`.
    pub residual: f64,
    pub component_count: usize,
    pub warnings: Vec<String>,
}

impl RankResult {
    pub fn write_to(&self, dir: &Path) -> Result<()> {
        write_lines(
            dir,
            "scores.txt",
            labelled(self.labels.iter().map(std::slice::from_ref), self.alpha.iter().map(|&a| vec![a])),
        )
    }
}

/// Least squares scores `∂_1ᵀ α ≃ ω` from pairwise comparisons `(u, v, ω)`,
/// meaning `α(v) - α(u) ≈ ω`.
///
/// Repeated pairs are summed (a reversed pair contributes `-ω`).
pub fn rank(comparisons: &[(usize, usize, f64)], tol: f64) -> Result<RankResult> {
    let mut warnings = Vec::new();
    let mut merged: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut edges: Vec<[usize; 2]> = Vec::new();
    let mut values: Vec<f64> = Vec::new();
    for &(u, v, w) in comparisons {
        let key = (u.min(v), u.max(v));
        match merged.get(&key) {
            Some(&k) => {
                let same = edges[k] == [u, v];
                values[k] += if same { w } else { -w };
                warnings.push(format!(
                    "pair ({u}, {v}) appears more than once; values were summed"
                ));
            }
            None => {
                merged.insert(key, edges.len());
                edges.push([u, v]);
                values.push(w);
            }
        }
    }
    let complex = build_abstract(&[SimplexArray::from_rows(&edges)?])?;
    let mut omega = vec![0.0; edges.len()];
    for (e, &w) in edges.iter().zip(&values) {
        let row = complex.cells(1).find(&[e[0].min(e[1]), e[0].max(e[1])]).expect("edge was inserted");
        omega[row] = w;
    }
    let labels: Vec<usize> = complex.cells(0).iter().map(|r| r[0]).collect();
    let a = complex.boundary(1).transpose();
    let mut alpha = least_squares(&a, &omega, tol)?.x;

    let indexed: Vec<[usize; 2]> = complex
        .cells(1)
        .iter()
        .map(|e| [complex.vertex_index(e[0]).unwrap(), complex.vertex_index(e[1]).unwrap()])
        .collect();
    let comp = components(labels.len(), &SimplexArray::from_rows(&indexed)?);
    let count = comp.iter().max().map_or(0, |m| m + 1);
    if count > 1 {
        warnings.push(format!(
            "comparison graph has {count} components; their scores are independent"
        ));
    }
    let mut low = vec![f64::INFINITY; count];
    for (&k, &x) in comp.iter().zip(&alpha) {
        low[k] = low[k].min(x);
    }
    for (x, &k) in alpha.iter_mut().zip(&comp) {
        *x -= low[k];
    }

    let fit = a.mul_vec(&alpha);
    let r: Vec<f64> = fit.iter().zip(&omega).map(|(f, w)| f - w).collect();
    Ok(RankResult {
        complex,
        labels,
        alpha,
        omega,
        residual: norm(&r),
        component_count: count,
        warnings,
    })
}
