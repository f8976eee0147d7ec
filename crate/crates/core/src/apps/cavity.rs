use std::path::Path;

use crate::dec_fem::{whitney_interpolate_at_barycenters, whitney_mass_matrix};
use crate::error::{Error, Result};
use crate::simplicial::{ChainComplex, SimplicialComplex};
use crate::sparse::{spgemm3, symmetric_generalized_eig};

use super::output::{write_lines, write_table};
use super::{barycenters, boundary_edges};

/// Eigenvalues below this fraction of the largest count as zero.
const ZERO_EIGENVALUE: f64 = 1e-8;

#[derive(Debug, Clone)]
pub struct CavityResult {
    /// Every eigenvalue of the reduced problem, ascending.
    pub eigenvalues: Vec<f64>,
    /// Size of the numerical kernel (the discrete gradients).
    pub zero_count: usize,
    /// Edges that carry unknowns.
    pub interior_edges: Vec<usize>,
    /// Smallest nonzero eigenvalues with their full edge cochains.
    pub modes: Vec<(f64, Vec<f64>)>,
    pub barycenters: Vec<Vec<f64>>,
    /// Whitney interpolation of each mode at the barycenters.
    pub fields: Vec<Vec<Vec<f64>>>,
}

impl CavityResult {
    pub fn nonzero_eigenvalues(&self) -> &[f64] {
        &self.eigenvalues[self.zero_count..]
    }

    pub fn write_to(&self, dir: &Path) -> Result<()> {
        write_table(dir, "eigenvalues.txt", self.nonzero_eigenvalues().iter().map(|&v| vec![v]))?;
        for (k, ((_, u), field)) in self.modes.iter().zip(&self.fields).enumerate() {
            write_table(dir, &format!("mode_{k}_edges.txt"), u.iter().map(|&v| vec![v]))?;
            write_table(
                dir,
                &format!("mode_{k}_field.txt"),
                self.barycenters.iter().zip(field).map(|(b, f)| [b.as_slice(), f].concat()),
            )?;
        }
        write_lines(dir, "interior_edges.txt", self.interior_edges.iter().map(|e| e.to_string()))
    }
}

/// Curl-curl eigenproblem `d_1ᵀ M_2 d_1 u = λ M_1 u` with Whitney mass
/// matrices, tangential components fixed to zero on boundary edges.
pub fn cavity(c: &SimplicialComplex, eigs: usize) -> Result<CavityResult> {
    if c.dim() != 2 || c.embedding_dim() != 2 {
        return Err(Error::InvalidArgument(format!(
            "cavity needs a triangle mesh in the plane, got a {}-complex in R^{}",
            c.dim(),
            c.embedding_dim()
        )));
    }
    let d1 = c.coboundary(1)?;
    let m2 = whitney_mass_matrix(c, 2)?.matrix;
    let m1 = whitney_mass_matrix(c, 1)?.matrix;
    let k = spgemm3(&d1.transpose(), &m2, &d1)?;

    let on_boundary = boundary_edges(c);
    let interior: Vec<usize> = (0..on_boundary.len()).filter(|&e| !on_boundary[e]).collect();
    let eig = symmetric_generalized_eig(
        &k.submatrix(&interior, &interior),
        &m1.submatrix(&interior, &interior),
    )?;
    let top = eig.values.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    let zero_count = eig.values.iter().take_while(|&&v| v <= ZERO_EIGENVALUE * top).count();

    let mut modes = Vec::new();
    let mut fields = Vec::new();
    for i in zero_count..(zero_count + eigs).min(eig.values.len()) {
        let v = eig.vector(i)?;
        let mut u = vec![0.0; c.cell_count(1)];
        for (&e, x) in interior.iter().zip(v) {
            u[e] = x;
        }
        fields.push(whitney_interpolate_at_barycenters(c, &u)?);
        modes.push((eig.values[i], u));
    }
    let barycenters = barycenters(c);
    Ok(CavityResult {
        eigenvalues: eig.values,
        zero_count,
        interior_edges: interior,
        modes,
        barycenters,
        fields,
    })
}
