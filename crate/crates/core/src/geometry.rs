//! Metric quantities of embedded simplices and the circumcentric dual.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::simplicial::{ChainComplex, SimplicialComplex};
use crate::sparse::determinant;

fn factorial(k: usize) -> f64 {
    (1..=k).map(|i| i as f64).product()
}

/// Edge vectors `v_i - v_0`, `i = 1..p`.
fn edge_vectors<P: AsRef<[f64]>>(pts: &[P]) -> Vec<Vec<f64>> {
    let v0 = pts[0].as_ref();
    pts[1..]
        .iter()
        .map(|v| v.as_ref().iter().zip(v0).map(|(a, b)| a - b).collect())
        .collect()
}

fn gram(w: &[Vec<f64>]) -> Vec<f64> {
    let p = w.len();
    let mut g = vec![0.0; p * p];
    for i in 0..p {
        for j in i..p {
            let d: f64 = w[i].iter().zip(&w[j]).map(|(a, b)| a * b).sum();
            g[i * p + j] = d;
            g[j * p + i] = d;
        }
    }
    g
}

/// Unsigned `p`-volume `sqrt(det V^T V) / p!`.
pub fn simplex_volume<P: AsRef<[f64]>>(pts: &[P]) -> f64 {
    let p = pts.len() - 1;
    if p == 0 {
        return 1.0;
    }
    let w = edge_vectors(pts);
    determinant(&gram(&w), p).max(0.0).sqrt() / factorial(p)
}

fn max_edge<P: AsRef<[f64]>>(pts: &[P]) -> f64 {
    let mut m: f64 = 0.0;
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            let d: f64 = pts[i]
                .as_ref()
                .iter()
                .zip(pts[j].as_ref())
                .map(|(a, b)| (a - b) * (a - b))
                .sum();
            m = m.max(d);
        }
    }
    m.sqrt()
}

/// Degenerate when `sqrt(det V0^T V0) < 1e-12 * (max edge)^p`.
pub fn is_degenerate<P: AsRef<[f64]>>(pts: &[P]) -> bool {
    let p = pts.len() - 1;
    if p == 0 {
        return false;
    }
    let w = edge_vectors(pts);
    let root = determinant(&gram(&w), p).max(0.0).sqrt();
    !(root >= 1e-12 * max_edge(pts).powi(p as i32)) || max_edge(pts) == 0.0
}

#[derive(Debug, Clone, PartialEq)]
pub struct Circumcenter {
    /// Barycentric coordinates, one per vertex, summing to one.
    pub barycentric: Vec<f64>,
    pub center: Vec<f64>,
    pub radius: f64,
    /// The auxiliary unknown of the linear system (relative to `v_0`).
    pub q: f64,
}

/// Circumcenter within the affine hull, from the `(p+2) x (p+2)` system
/// `2 v_i . sum_j b_j v_j + Q = v_i . v_i`, `sum_j b_j = 1`.
///
/// The system is translation invariant, so it is assembled with `v_0` moved
/// to the origin.
pub fn circumcenter<P: AsRef<[f64]>>(pts: &[P]) -> Result<Circumcenter> {
    let p = pts.len() - 1;
    let v0 = pts[0].as_ref();
    if p == 0 {
        return Ok(Circumcenter { barycentric: vec![1.0], center: v0.to_vec(), radius: 0.0, q: 0.0 });
    }
    if is_degenerate(pts) {
        return Err(Error::DegenerateSimplex { dim: p, cell: 0 });
    }
    let mut w = vec![vec![0.0; v0.len()]];
    w.extend(edge_vectors(pts));
    let m = p + 2;
    let mut a = DMatrix::zeros(m, m);
    let mut rhs = DVector::zeros(m);
    for i in 0..=p {
        for j in 0..=p {
            a[(i, j)] = 2.0 * w[i].iter().zip(&w[j]).map(|(x, y)| x * y).sum::<f64>();
        }
        a[(i, p + 1)] = 1.0;
        a[(p + 1, i)] = 1.0;
        rhs[i] = w[i].iter().map(|x| x * x).sum();
    }
    rhs[p + 1] = 1.0;
    let sol = a.lu().solve(&rhs).ok_or(Error::DegenerateSimplex { dim: p, cell: 0 })?;
    let barycentric: Vec<f64> = sol.iter().take(p + 1).copied().collect();
    let mut center = v0.to_vec();
    for (bj, wj) in barycentric.iter().zip(&w) {
        center.iter_mut().zip(wj).for_each(|(c, x)| *c += bj * x);
    }
    let radius = center.iter().zip(v0).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt();
    Ok(Circumcenter { barycentric, center, radius, q: sol[p + 1] })
}

/// Gradients of the barycentric coordinates of a `p`-simplex in `R^N`.
#[derive(Debug, Clone, PartialEq)]
pub struct BarycentricDifferentials {
    /// `dμ_1 .. dμ_p`, the columns of `X = (V0^+)^T`.
    pub x: Vec<Vec<f64>>,
}

impl BarycentricDifferentials {
    /// `dμ_0 = -Σ_j dμ_j`.
    pub fn d0(&self) -> Vec<f64> {
        let n = self.x.first().map_or(0, Vec::len);
        let mut d = vec![0.0; n];
        for col in &self.x {
            d.iter_mut().zip(col).for_each(|(a, b)| *a -= b);
        }
        d
    }

    /// `dμ_0 .. dμ_p`.
    pub fn all(&self) -> Vec<Vec<f64>> {
        let mut out = vec![self.d0()];
        out.extend(self.x.iter().cloned());
        out
    }
}

/// `X^T = (V0^T V0)^{-1} V0^T`, switching to a QR factorization of `V0`
/// when `V0^T V0` is ill conditioned.
pub fn barycentric_differentials<P: AsRef<[f64]>>(pts: &[P]) -> Result<BarycentricDifferentials> {
    let p = pts.len() - 1;
    if p == 0 {
        return Ok(BarycentricDifferentials { x: Vec::new() });
    }
    if is_degenerate(pts) {
        return Err(Error::DegenerateSimplex { dim: p, cell: 0 });
    }
    let w = edge_vectors(pts);
    let nn = w[0].len();
    let v0 = DMatrix::from_fn(nn, p, |r, c| w[c][r]);
    let g = v0.transpose() * &v0;
    let ev = g.clone().symmetric_eigenvalues();
    let (lo, hi) = ev.iter().fold((f64::INFINITY, 0.0f64), |(lo, hi), &e| (lo.min(e), hi.max(e)));
    let x = if lo > 0.0 && hi / lo <= 1e8 {
        let chol = g.cholesky().ok_or(Error::DegenerateSimplex { dim: p, cell: 0 })?;
        // X = V0 G^{-1}
        chol.solve(&v0.transpose()).transpose()
    } else {
        let qr = v0.qr();
        let r = qr.r();
        let q = qr.q();
        // X = Q R^{-T}
        let rt_inv_qt = r
            .transpose()
            .solve_lower_triangular(&q.transpose())
            .ok_or(Error::DegenerateSimplex { dim: p, cell: 0 })?;
        rt_inv_qt.transpose()
    };
    Ok(BarycentricDifferentials {
        x: (0..p).map(|c| x.column(c).iter().copied().collect()).collect(),
    })
}

/// Unsigned volumes of every cell, per level (1 at level 0).
pub fn primal_volumes(c: &SimplicialComplex) -> Result<Vec<Vec<f64>>> {
    (0..=c.dim())
        .map(|p| {
            (0..c.cell_count(p))
                .map(|i| {
                    let pts = c.cell_points(p, i);
                    if p > 0 && is_degenerate(&pts) {
                        Err(Error::DegenerateSimplex { dim: p, cell: i })
                    } else {
                        Ok(simplex_volume(&pts))
                    }
                })
                .collect()
        })
        .collect()
}

/// Circumcenters of all `p`-cells.
pub fn circumcenters(c: &SimplicialComplex, p: usize) -> Result<Vec<Circumcenter>> {
    (0..c.cell_count(p))
        .map(|i| {
            circumcenter(&c.cell_points(p, i)).map_err(|_| Error::DegenerateSimplex { dim: p, cell: i })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct DualVolumes {
    /// Signed `|⋆σ|` per level; 1 for top cells.
    pub volumes: Vec<Vec<f64>>,
    /// `(dim, cell)` of every cell whose signed dual volume came out negative.
    pub negative: Vec<(usize, usize)>,
}

/// `(n-1)`-cells with more than two cofaces make the dual ill defined.
pub fn check_manifold(c: &SimplicialComplex) -> Result<()> {
    let n = c.dim();
    if n == 0 {
        return Ok(());
    }
    let b = c.boundary(n);
    for r in 0..b.rows() {
        let k = b.row(r).0.len();
        if k > 2 {
            return Err(Error::NonManifold { cell: r, cofaces: k });
        }
    }
    Ok(())
}

struct FlagWalk<'a> {
    complex: &'a SimplicialComplex,
    verts: Vec<usize>,
    centers: Vec<Option<Circumcenter>>,
    volumes: &'a mut [Vec<f64>],
    boundary_bad: &'a mut Vec<usize>,
    boundary_facet: &'a [bool],
}

impl FlagWalk<'_> {
    fn cell_of(&self, mask: usize) -> (usize, usize) {
        let sub: Vec<usize> =
            self.verts.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v).collect();
        let k = sub.len() - 1;
        let idx = self.complex.cells(k).find(&sub).expect("face of a top simplex is in the complex");
        (k, idx)
    }

    fn descend(&mut self, mask: usize, chain: &mut Vec<Vec<f64>>, sign: f64) {
        let k = mask.count_ones() as usize - 1;
        if k == 0 {
            return;
        }
        let bary = self.centers[mask].as_ref().unwrap().barycentric.clone();
        let n = self.verts.len() - 1;
        let mut slot = 0;
        for i in 0..self.verts.len() {
            if mask >> i & 1 == 0 {
                continue;
            }
            let s = if bary[slot] < 0.0 { -sign } else { sign };
            slot += 1;
            let sub = mask & !(1 << i);
            chain.push(self.centers[sub].as_ref().unwrap().center.clone());
            let vol = s * simplex_volume(chain);
            let (dim, idx) = self.cell_of(sub);
            self.volumes[dim][idx] += vol;
            if dim + 1 == n && vol < 0.0 && self.boundary_facet[idx] {
                self.boundary_bad.push(idx);
            }
            self.descend(sub, chain, s);
            chain.pop();
        }
    }
}

/// Signed circumcentric dual volumes.
///
/// `|⋆σ^p|` sums, over all ascending flags `σ^p ≺ … ≺ σ^n`, the volume of
/// the simplex spanned by the circumcenters of the flag. Each step
/// contributes a minus sign when the circumcenter of the larger simplex lies
/// on the far side of the smaller one from the opposite vertex. A boundary
/// facet with a negative contribution is an error.
pub fn dual_volumes(c: &SimplicialComplex) -> Result<DualVolumes> {
    check_manifold(c)?;
    let n = c.dim();
    let mut volumes: Vec<Vec<f64>> = (0..=n).map(|p| vec![0.0; c.cell_count(p)]).collect();
    volumes[n].iter_mut().for_each(|v| *v = 1.0);
    let boundary_facet: Vec<bool> = if n > 0 {
        let b = c.boundary(n);
        (0..b.rows()).map(|r| b.row(r).0.len() == 1).collect()
    } else {
        Vec::new()
    };
    let mut boundary_bad = Vec::new();
    for t in 0..c.cell_count(n) {
        let verts = c.cells(n).row(t).to_vec();
        let full = (1usize << verts.len()) - 1;
        let mut centers = vec![None; full + 1];
        for (mask, slot) in centers.iter_mut().enumerate().skip(1) {
            let pts: Vec<&[f64]> = verts
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &v)| c.vertices()[v].as_slice())
                .collect();
            let k = pts.len() - 1;
            *slot = Some(circumcenter(&pts).map_err(|_| Error::DegenerateSimplex {
                dim: k,
                cell: if k == n { t } else { 0 },
            })?);
        }
        let top = centers[full].as_ref().unwrap().center.clone();
        let mut walk = FlagWalk {
            complex: c,
            verts,
            centers,
            volumes: &mut volumes,
            boundary_bad: &mut boundary_bad,
            boundary_facet: &boundary_facet,
        };
        walk.descend(full, &mut vec![top], 1.0);
    }
    if !boundary_bad.is_empty() {
        boundary_bad.sort_unstable();
        boundary_bad.dedup();
        return Err(Error::DelaunayViolation { dim: n - 1, cells: boundary_bad });
    }
    let negative = volumes
        .iter()
        .enumerate()
        .flat_map(|(p, v)| v.iter().enumerate().filter(|(_, &x)| x < 0.0).map(move |(i, _)| (p, i)))
        .collect();
    Ok(DualVolumes { volumes, negative })
}
