//! Whitney forms: mass and stiffness matrices, interpolation at barycenters.

use crate::error::{Error, Result};
use crate::geometry::{barycentric_differentials, simplex_volume};
use crate::simplicial::{ChainComplex, SimplicialComplex};
use crate::sparse::{determinant, spgemm3, SparseMatrix};

fn factorial(k: usize) -> f64 {
    (1..=k).map(|i| i as f64).product()
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// `∫_σ μ_a μ_b` over an `n`-simplex of the given volume.
pub fn barycentric_moment_integral(volume: f64, n: usize, a: usize, b: usize) -> f64 {
    let num = if a == b { 2.0 } else { 1.0 };
    volume * num / (((n + 1) * (n + 2)) as f64)
}

/// Unique `p x p` determinants per top simplex: unordered pairs of
/// `p`-subsets of the `n + 1` vertices.
pub fn unique_determinant_count(n: usize, p: usize) -> usize {
    let c = binomial(n + 1, p);
    (c * c + c) / 2
}

/// Determinants per top simplex when every `c_kl` of every entry `i <= j`
/// is evaluated separately: `(p + 1)^2` of them per entry.
pub fn naive_determinant_count(n: usize, p: usize) -> usize {
    let c = binomial(n + 1, p + 1);
    (c * c + c) / 2 * (p + 1) * (p + 1)
}

/// All `k`-subsets of `0..m` in lexicographic order.
fn subsets(m: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..m {
            if m - v < k - cur.len() {
                break;
            }
            cur.push(v);
            rec(v + 1, m, k, cur, out);
            cur.pop();
        }
    }
    rec(0, m, k, &mut cur, &mut out);
    out
}

struct Term {
    sign: f64,
    det: usize,
    same_vertex: bool,
}

struct EntryTemplate {
    fi: usize,
    fj: usize,
    terms: Vec<Term>,
}

/// Index pattern for one `(n, p)`, built once on the reference simplex and
/// reused for every top simplex.
struct MassTemplate {
    n: usize,
    faces: Vec<Vec<usize>>,
    /// Row and column subsets of each unique determinant.
    dets: Vec<(Vec<usize>, Vec<usize>)>,
    entries: Vec<EntryTemplate>,
}

impl MassTemplate {
    fn new(n: usize, p: usize) -> Self {
        let faces = subsets(n + 1, p + 1);
        let sub = subsets(n + 1, p);
        let ns = sub.len();
        let index_of = |s: &[usize]| sub.binary_search_by(|x| x.as_slice().cmp(s)).unwrap();
        let pair_index = |a: usize, b: usize| {
            let (a, b) = if a <= b { (a, b) } else { (b, a) };
            // row-major position in the upper triangle
            a * ns - a * (a + 1) / 2 + b
        };
        let mut dets = Vec::with_capacity(ns * (ns + 1) / 2);
        for a in 0..ns {
            for b in a..ns {
                dets.push((sub[a].clone(), sub[b].clone()));
            }
        }
        let drop = |f: &[usize], k: usize| -> Vec<usize> {
            f.iter().enumerate().filter(|&(x, _)| x != k).map(|(_, &v)| v).collect()
        };
        let mut entries = Vec::new();
        for fi in 0..faces.len() {
            for fj in fi..faces.len() {
                let mut terms = Vec::with_capacity((p + 1) * (p + 1));
                for k in 0..=p {
                    for l in 0..=p {
                        let a = index_of(&drop(&faces[fi], k));
                        let b = index_of(&drop(&faces[fj], l));
                        terms.push(Term {
                            sign: if (k + l) % 2 == 0 { 1.0 } else { -1.0 },
                            det: pair_index(a, b),
                            same_vertex: faces[fi][k] == faces[fj][l],
                        });
                    }
                }
                entries.push(EntryTemplate { fi, fj, terms });
            }
        }
        Self { n, faces, dets, entries }
    }
}

fn gram_of(dmu: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let m = dmu.len();
    let mut g = vec![vec![0.0; m]; m];
    for i in 0..m {
        for j in i..m {
            let v: f64 = dmu[i].iter().zip(&dmu[j]).map(|(a, b)| a * b).sum();
            g[i][j] = v;
            g[j][i] = v;
        }
    }
    g
}

fn sub_det(g: &[Vec<f64>], rows: &[usize], cols: &[usize]) -> f64 {
    let p = rows.len();
    let mut a = Vec::with_capacity(p * p);
    for &r in rows {
        a.extend(cols.iter().map(|&c| g[r][c]));
    }
    determinant(&a, p)
}

#[derive(Debug, Clone)]
pub struct MassMatrix {
    pub matrix: SparseMatrix,
    /// Determinant evaluations performed for each top simplex.
    pub determinants_per_simplex: usize,
}

/// Global row of every local `p`-face of top simplex `t`.
fn face_indices(c: &SimplicialComplex, t: usize, faces: &[Vec<usize>], p: usize) -> Vec<usize> {
    let verts = c.cells(c.dim()).row(t);
    faces
        .iter()
        .map(|f| {
            let g: Vec<usize> = f.iter().map(|&k| verts[k]).collect();
            c.cells(p).find(&g).expect("face of a top simplex is in the complex")
        })
        .collect()
}

fn top_geometry(c: &SimplicialComplex, t: usize) -> Result<(f64, Vec<Vec<f64>>)> {
    let n = c.dim();
    let pts = c.cell_points(n, t);
    let dmu = barycentric_differentials(&pts).map_err(|_| Error::DegenerateSimplex { dim: n, cell: t })?;
    Ok((simplex_volume(&pts), dmu.all()))
}

/// Sign of each `p`-cell's orientation relative to its sorted vertex order.
fn parities(c: &SimplicialComplex, p: usize) -> Vec<f64> {
    c.levels()[p].parity.iter().map(|&s| f64::from(s)).collect()
}

fn scatter(
    triplets: &mut Vec<(usize, usize, f64)>,
    gi: usize,
    gj: usize,
    value: f64,
) {
    triplets.push((gi, gj, value));
    if gi != gj {
        triplets.push((gj, gi, value));
    }
}

/// Whitney inner product matrix `M_p`.
///
/// Per top simplex the pairwise products `dμ_a · dμ_b` are formed once, then
/// every distinct minor `det G[A, B]` over `p`-subsets `A <= B` is evaluated
/// once and combined through the `(n, p)` template with the closed-form
/// moments `∫ μ_a μ_b`. Only entries `i <= j` are computed. For `p = n` the
/// matrix is `diag(1 / |σ|)`.
pub fn whitney_mass_matrix(c: &SimplicialComplex, p: usize) -> Result<MassMatrix> {
    let n = c.dim();
    if p > n {
        return Err(Error::InvalidArgument(format!("M_{p} requested on a {n}-complex")));
    }
    let np = c.cell_count(p);
    if p == n {
        let mut diag = Vec::with_capacity(np);
        for t in 0..np {
            let pts = c.cell_points(n, t);
            if n > 0 && crate::geometry::is_degenerate(&pts) {
                return Err(Error::DegenerateSimplex { dim: n, cell: t });
            }
            diag.push(1.0 / simplex_volume(&pts));
        }
        return Ok(MassMatrix { matrix: SparseMatrix::from_diagonal(&diag), determinants_per_simplex: 0 });
    }
    let tpl = MassTemplate::new(n, p);
    let scale = factorial(p).powi(2);
    let par = parities(c, p);
    let mut triplets = Vec::new();
    let mut dets = vec![0.0; tpl.dets.len()];
    let mut count = 0;
    for t in 0..c.cell_count(n) {
        let (vol, dmu) = top_geometry(c, t)?;
        let g = gram_of(&dmu);
        count = 0;
        for (slot, (rows, cols)) in dets.iter_mut().zip(&tpl.dets) {
            *slot = if p == 0 { 1.0 } else { sub_det(&g, rows, cols) };
            count += 1;
        }
        let global = face_indices(c, t, &tpl.faces, p);
        let same = barycentric_moment_integral(vol, tpl.n, 0, 0);
        let diff = barycentric_moment_integral(vol, tpl.n, 0, 1);
        for e in &tpl.entries {
            let sum: f64 = e
                .terms
                .iter()
                .map(|term| term.sign * dets[term.det] * if term.same_vertex { same } else { diff })
                .sum();
            let (gi, gj) = (global[e.fi], global[e.fj]);
            scatter(&mut triplets, gi, gj, scale * sum * par[gi] * par[gj]);
        }
    }
    let matrix = SparseMatrix::from_triplets(np, np, triplets)?;
    Ok(MassMatrix { matrix, determinants_per_simplex: count })
}

/// Reference assembly evaluating every `c_kl` minor separately.
pub fn naive_whitney_mass_matrix(c: &SimplicialComplex, p: usize) -> Result<MassMatrix> {
    let n = c.dim();
    if p >= n {
        return whitney_mass_matrix(c, p);
    }
    let faces = subsets(n + 1, p + 1);
    let scale = factorial(p).powi(2);
    let par = parities(c, p);
    let np = c.cell_count(p);
    let mut triplets = Vec::new();
    let mut count = 0;
    for t in 0..c.cell_count(n) {
        let (vol, dmu) = top_geometry(c, t)?;
        let g = gram_of(&dmu);
        let global = face_indices(c, t, &faces, p);
        count = 0;
        for fi in 0..faces.len() {
            for fj in fi..faces.len() {
                let mut sum = 0.0;
                for k in 0..=p {
                    for l in 0..=p {
                        let rows: Vec<usize> =
                            faces[fi].iter().enumerate().filter(|&(x, _)| x != k).map(|(_, &v)| v).collect();
                        let cols: Vec<usize> =
                            faces[fj].iter().enumerate().filter(|&(x, _)| x != l).map(|(_, &v)| v).collect();
                        let ckl = if p == 0 { 1.0 } else { sub_det(&g, &rows, &cols) };
                        count += 1;
                        let sign = if (k + l) % 2 == 0 { 1.0 } else { -1.0 };
                        sum += sign
                            * ckl
                            * barycentric_moment_integral(vol, n, faces[fi][k], faces[fj][l]);
                    }
                }
                let (gi, gj) = (global[fi], global[fj]);
                scatter(&mut triplets, gi, gj, scale * sum * par[gi] * par[gj]);
            }
        }
    }
    let matrix = SparseMatrix::from_triplets(np, np, triplets)?;
    Ok(MassMatrix { matrix, determinants_per_simplex: count })
}

/// `K_p = d_pᵀ M_{p+1} d_p`.
pub fn whitney_stiffness(c: &SimplicialComplex, p: usize) -> Result<SparseMatrix> {
    let d = c.coboundary(p)?;
    let m = whitney_mass_matrix(c, p + 1)?.matrix;
    spgemm3(&d.transpose(), &m, &d)
}

/// The 1-form `W u` evaluated at the barycenter of every top simplex.
///
/// At the barycenter all `μ = 1/(n+1)`, so edge `[a, b]` contributes
/// `u_e (dμ_b - dμ_a) / (n + 1)`.
pub fn whitney_interpolate_at_barycenters(c: &SimplicialComplex, u: &[f64]) -> Result<Vec<Vec<f64>>> {
    let n = c.dim();
    if n == 0 || u.len() != c.cell_count(1) {
        return Err(Error::DimensionMismatch(format!(
            "interpolation needs a 1-cochain of length {}, got {}",
            if n == 0 { 0 } else { c.cell_count(1) },
            u.len()
        )));
    }
    let par = parities(c, 1);
    let w = 1.0 / (n as f64 + 1.0);
    let mut out = Vec::with_capacity(c.cell_count(n));
    for t in 0..c.cell_count(n) {
        let (_, dmu) = top_geometry(c, t)?;
        let verts = c.cells(n).row(t);
        let mut v = vec![0.0; c.embedding_dim()];
        for a in 0..=n {
            for b in a + 1..=n {
                let e = c.cells(1).find(&[verts[a], verts[b]]).expect("edge of a top simplex");
                let coef = u[e] * par[e] * w;
                v.iter_mut()
                    .zip(dmu[b].iter().zip(&dmu[a]))
                    .for_each(|(x, (db, da))| *x += coef * (db - da));
            }
        }
        out.push(v);
    }
    Ok(out)
}
