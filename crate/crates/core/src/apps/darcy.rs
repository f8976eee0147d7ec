use std::path::Path;

use crate::dec_fem::{dec_hodge_star, whitney_interpolate_at_barycenters};
use crate::error::{Error, Result};
use crate::geometry::{circumcenters, dual_volumes};
use crate::simplicial::{ChainComplex, SimplicialComplex};
use crate::sparse::{conjugate_gradient, spgemm3, SparseMatrix};

use super::output::{labelled, write_lines, write_table};
use super::{barycenters, boundary_edges};

/// Prescribed normal flux on the boundary.
#[derive(Debug, Clone, Copy)]
pub enum DarcyBoundary {
    /// `ψ = v · n̂` for a uniform velocity `v`.
    UniformVelocity([f64; 2]),
    /// Outward normal flux density `ψ`, sampled at boundary edge midpoints.
    NormalFlux(fn(&[f64]) -> f64),
}

#[derive(Debug, Clone, Copy)]
pub struct DarcyConfig {
    /// Permeability.
    pub kappa: f64,
    /// Viscosity.
    pub mu: f64,
    pub boundary: DarcyBoundary,
    pub tol: f64,
}

impl Default for DarcyConfig {
    fn default() -> Self {
        Self { kappa: 1.0, mu: 1.0, boundary: DarcyBoundary::UniformVelocity([1.0, 0.0]), tol: 1e-13 }
    }
}

#[derive(Debug, Clone)]
pub struct DarcyResult {
    /// Primal 1-cochain `f = ⋆v♭`, one value per edge.
    pub flux: Vec<f64>,
    /// Dual 0-cochain (one value per triangle), mean removed.
    pub pressure: Vec<f64>,
    pub circumcenters: Vec<Vec<f64>>,
    pub barycenters: Vec<Vec<f64>>,
    /// Velocity at each barycenter.
    pub velocity: Vec<[f64; 2]>,
    pub boundary_edges: Vec<usize>,
}

impl DarcyResult {
    pub fn write_to(&self, c: &SimplicialComplex, dir: &Path) -> Result<()> {
        write_lines(dir, "flux.txt", labelled(c.cells(1).iter(), self.flux.iter().map(|&f| vec![f])))?;
        write_table(
            dir,
            "pressure.txt",
            self.circumcenters.iter().zip(&self.pressure).map(|(x, &p)| vec![x[0], x[1], p]),
        )?;
        write_table(
            dir,
            "velocity.txt",
            self.barycenters.iter().zip(&self.velocity).map(|(x, v)| vec![x[0], x[1], v[0], v[1]]),
        )
    }
}

fn signed_area(a: &[f64], b: &[f64], c: &[f64]) -> f64 {
    0.5 * ((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]))
}

/// Mixed DEC formulation of Darcy flow,
/// `[-(μ/κ) ⋆_1, d_1ᵀ; d_1, 0] [f; p] = [0; 0]`, with the flux known on
/// boundary edges.
///
/// The known fluxes are eliminated and the interior fluxes are condensed
/// out, leaving `(κ/μ) D ⋆_1⁻¹ Dᵀ p = -D_b f_b` for the pressure, with the
/// first triangle's pressure pinned to zero. Triangles are oriented
/// counterclockwise so that `d_1` is a consistent divergence.
pub fn darcy(c: &SimplicialComplex, cfg: &DarcyConfig) -> Result<DarcyResult> {
    if c.dim() != 2 || c.embedding_dim() != 2 {
        return Err(Error::InvalidArgument(format!(
            "darcy needs a triangle mesh in the plane, got a {}-complex in R^{}",
            c.dim(),
            c.embedding_dim()
        )));
    }
    for (name, v) in [("kappa", cfg.kappa), ("mu", cfg.mu)] {
        if !(v > 0.0 && v.is_finite()) {
            return Err(Error::InvalidArgument(format!("{name} must be positive, got {v}")));
        }
    }
    let ratio = cfg.kappa / cfg.mu;
    let verts = c.vertices();
    let (ne, nt) = (c.cell_count(1), c.cell_count(2));

    let parity = &c.levels()[2].parity;
    let orient: Vec<f64> = (0..nt)
        .map(|t| {
            let r = c.cells(2).row(t);
            let a = signed_area(&verts[r[0]], &verts[r[1]], &verts[r[2]]);
            if a * f64::from(parity[t]) < 0.0 {
                -1.0
            } else {
                1.0
            }
        })
        .collect();
    let d1 = c.coboundary(1)?.scale_rows_cols(Some(&orient), None);

    let on_boundary = boundary_edges(c);
    let bnd: Vec<usize> = (0..ne).filter(|&e| on_boundary[e]).collect();
    let int: Vec<usize> = (0..ne).filter(|&e| !on_boundary[e]).collect();

    // prescribed fluxes; `f_e` integrates v along the right normal of a→b
    let b2 = c.boundary(2);
    let mut opposite = vec![usize::MAX; ne];
    for (e, t, _) in b2.iter() {
        if on_boundary[e] {
            let tri = c.cells(2).row(t);
            let edge = c.cells(1).row(e);
            opposite[e] = *tri.iter().find(|v| !edge.contains(v)).expect("triangle has a third vertex");
        }
    }
    let mut flux = vec![0.0; ne];
    let mut net = 0.0;
    let mut scale = 0.0;
    for &e in &bnd {
        let (a, b) = (&verts[c.cells(1).row(e)[0]], &verts[c.cells(1).row(e)[1]]);
        let normal = [b[1] - a[1], a[0] - b[0]];
        let mid = [(a[0] + b[0]) / 2.0, (a[1] + b[1]) / 2.0];
        let o = &verts[opposite[e]];
        let outward = if normal[0] * (mid[0] - o[0]) + normal[1] * (mid[1] - o[1]) > 0.0 { 1.0 } else { -1.0 };
        flux[e] = match cfg.boundary {
            DarcyBoundary::UniformVelocity(v) => v[0] * normal[0] + v[1] * normal[1],
            DarcyBoundary::NormalFlux(psi) => {
                outward * psi(&mid) * normal[0].hypot(normal[1])
            }
        };
        net += outward * flux[e];
        scale += flux[e].abs();
    }
    if net.abs() > 1e-10 * scale.max(f64::MIN_POSITIVE) {
        return Err(Error::InconsistentFlux { net });
    }

    let duals = dual_volumes(c)?;
    let star1 = dec_hodge_star(c, &duals, 1)?;
    let diag = star1.diagonal().expect("DEC star is diagonal");
    let mut inv = Vec::with_capacity(int.len());
    for &e in &int {
        if diag[e] == 0.0 {
            return Err(Error::InvalidArgument(format!(
                "interior edge {e} has a zero-length dual edge; ⋆_1 is singular"
            )));
        }
        inv.push(ratio / diag[e]);
    }
    let all_tris: Vec<usize> = (0..nt).collect();
    let d_int = d1.submatrix(&all_tris, &int);
    let d_bnd = d1.submatrix(&all_tris, &bnd);
    let f_bnd: Vec<f64> = bnd.iter().map(|&e| flux[e]).collect();
    let rhs: Vec<f64> = d_bnd.mul_vec(&f_bnd).into_iter().map(|v| -v).collect();

    let schur = spgemm3(&d_int, &SparseMatrix::from_diagonal(&inv), &d_int.transpose())?;
    let free: Vec<usize> = (1..nt).collect();
    let mut pressure = vec![0.0; nt];
    if !free.is_empty() {
        let reduced = schur.submatrix(&free, &free);
        let r: Vec<f64> = free.iter().map(|&t| rhs[t]).collect();
        let sol = conjugate_gradient(&reduced, &r, cfg.tol, None)?;
        for (&t, v) in free.iter().zip(sol.x) {
            pressure[t] = v;
        }
    }
    let f_int = d_int.transpose().mul_vec(&pressure);
    for ((&e, f), s) in int.iter().zip(f_int).zip(&inv) {
        flux[e] = s * f;
    }

    let mean = pressure.iter().sum::<f64>() / nt as f64;
    pressure.iter_mut().for_each(|p| *p -= mean);

    let velocity = whitney_interpolate_at_barycenters(c, &flux)?
        .into_iter()
        .map(|w| [w[1], -w[0]])
        .collect();
    Ok(DarcyResult {
        flux,
        pressure,
        circumcenters: circumcenters(c, 2)?.into_iter().map(|cc| cc.center).collect(),
        barycenters: barycenters(c),
        velocity,
        boundary_edges: bnd,
    })
}
