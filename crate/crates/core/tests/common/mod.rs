//! Independent reference computations shared by the integration tests.
#![allow(dead_code)]

use std::path::PathBuf;

use deckit::cube::Bitmap;
use deckit::simplicial::{build_complex, SimplexArray, SimplicialComplex};
use deckit::sparse::SparseMatrix;
use nalgebra::DMatrix;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn fixture(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(rel)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn strip3() -> SimplicialComplex {
    let v = vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![2.0, 0.0], vec![1.0, 1.0], vec![2.0, 1.0]];
    build_complex(v, SimplexArray::from_rows(&[[0, 1, 3], [1, 2, 3], [2, 4, 3]]).unwrap()).unwrap()
}

pub fn dense(m: &SparseMatrix) -> Vec<Vec<f64>> {
    m.to_dense()
}

// ---------------------------------------------------------------- quadrature

fn factorial(k: usize) -> f64 {
    (1..=k).map(|i| i as f64).product()
}

/// All `β ∈ N^{parts}` with `|β| = total`.
fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Grundmann–Möller rule of degree `2s + 1` on an `n`-simplex, as
/// `(weight, barycentric point)` with weights summing to one (multiply by
/// the simplex volume).
pub fn grundmann_moller(n: usize, s: usize) -> Vec<(f64, Vec<f64>)> {
    let d = (n + 2 * s + 1) as f64;
    let mut rule = Vec::new();
    for i in 0..=s {
        let denom = d - 2.0 * i as f64;
        let w = (-1f64).powi(i as i32) * 2f64.powi(-2 * s as i32) * denom.powi((2 * s + 1) as i32)
            / (factorial(i) * factorial(n + 2 * s + 1 - i));
        for beta in compositions(s - i, n + 1) {
            let pt = beta.iter().map(|&b| (2.0 * b as f64 + 1.0) / denom).collect();
            // the rule integrates over the unit simplex of volume 1/n!
            rule.push((w * factorial(n), pt));
        }
    }
    rule
}

// ---------------------------------------------------------------- whitney forms

/// Gradients of the barycentric coordinates of a simplex embedded in `R^N`,
/// through the pseudo-inverse of the edge matrix.
pub fn barycentric_gradients(pts: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = pts.len() - 1;
    let dim = pts[0].len();
    let mut e = DMatrix::zeros(dim, n);
    for k in 0..n {
        for d in 0..dim {
            e[(d, k)] = pts[k + 1][d] - pts[0][d];
        }
    }
    // rows of (EᵀE)⁻¹Eᵀ are the gradients of μ_1..μ_n
    let pinv = (e.transpose() * &e).try_inverse().expect("nondegenerate") * e.transpose();
    let mut grads = vec![vec![0.0; dim]; n + 1];
    for k in 0..n {
        for d in 0..dim {
            grads[k + 1][d] = pinv[(k, d)];
            grads[0][d] -= pinv[(k, d)];
        }
    }
    grads
}

fn subsets(m: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if m < k {
        return vec![];
    }
    let mut out = subsets(m - 1, k);
    for mut s in subsets(m - 1, k - 1) {
        s.push(m - 1);
        out.push(s);
    }
    out.sort();
    out
}

fn det(rows: &[Vec<f64>]) -> f64 {
    let p = rows.len();
    if p == 0 {
        return 1.0;
    }
    DMatrix::from_fn(p, p, |i, j| rows[i][j]).determinant()
}

/// Components of `dμ_{f_0} ∧ … ∧ dμ_{f_{p-1}}` in the basis `e_J`, `J` increasing.
fn wedge(grads: &[Vec<f64>], face: &[usize]) -> Vec<f64> {
    let dim = grads[0].len();
    subsets(dim, face.len())
        .iter()
        .map(|j| det(&face.iter().map(|&f| j.iter().map(|&c| grads[f][c]).collect()).collect::<Vec<_>>()))
        .collect()
}

/// The Whitney form of `face` evaluated at barycentric point `mu`:
/// `p! Σ_k (-1)^k μ_{f_k} dμ_{f_0} ∧ … ∧ (omit k) ∧ … ∧ dμ_{f_p}`.
pub fn whitney_form(grads: &[Vec<f64>], face: &[usize], mu: &[f64]) -> Vec<f64> {
    let p = face.len() - 1;
    let dim = grads[0].len();
    let mut out = vec![0.0; subsets(dim, p).len()];
    for k in 0..=p {
        let rest: Vec<usize> = face.iter().enumerate().filter(|&(i, _)| i != k).map(|(_, &v)| v).collect();
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let w = wedge(grads, &rest);
        for (o, x) in out.iter_mut().zip(w) {
            *o += factorial(p) * sign * mu[face[k]] * x;
        }
    }
    out
}

/// `dW = (p + 1)! dμ_{f_0} ∧ … ∧ dμ_{f_p}`, constant on the simplex.
pub fn whitney_derivative(grads: &[Vec<f64>], face: &[usize]) -> Vec<f64> {
    let scale = factorial(face.len());
    wedge(grads, face).into_iter().map(|x| scale * x).collect()
}

/// `M_p` of a single simplex by quadrature of `⟨W_i, W_j⟩`; faces in
/// lexicographic order, matching the sorted face arrays of the library.
pub fn quadrature_mass(pts: &[Vec<f64>], p: usize) -> Vec<Vec<f64>> {
    let n = pts.len() - 1;
    let grads = barycentric_gradients(pts);
    let faces = subsets(n + 1, p + 1);
    let vol = cayley_menger_volume(pts);
    let rule = grundmann_moller(n, 2);
    let mut m = vec![vec![0.0; faces.len()]; faces.len()];
    for (w, mu) in &rule {
        let forms: Vec<Vec<f64>> = faces.iter().map(|f| whitney_form(&grads, f, mu)).collect();
        for i in 0..faces.len() {
            for j in 0..faces.len() {
                let ip: f64 = forms[i].iter().zip(&forms[j]).map(|(a, b)| a * b).sum();
                m[i][j] += w * vol * ip;
            }
        }
    }
    m
}

// ---------------------------------------------------------------- geometry

/// Simplex volume from pairwise distances only.
pub fn cayley_menger_volume(pts: &[Vec<f64>]) -> f64 {
    let p = pts.len() - 1;
    if p == 0 {
        return 1.0;
    }
    let m = p + 2;
    let mut cm = DMatrix::zeros(m, m);
    for i in 1..m {
        cm[(0, i)] = 1.0;
        cm[(i, 0)] = 1.0;
        for j in 1..m {
            let d2: f64 = pts[i - 1].iter().zip(&pts[j - 1]).map(|(a, b)| (a - b).powi(2)).sum();
            cm[(i, j)] = d2;
        }
    }
    let sign = if (p + 1) % 2 == 0 { 1.0 } else { -1.0 };
    let v2 = sign * cm.determinant() / (2f64.powi(p as i32) * factorial(p).powi(2));
    v2.max(0.0).sqrt()
}

pub fn random_point(rng: &mut ChaCha8Rng, dim: usize) -> Vec<f64> {
    (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect()
}

/// A random `p`-simplex in `R^dim` that is not close to degenerate.
pub fn random_simplex(rng: &mut ChaCha8Rng, p: usize, dim: usize) -> Vec<Vec<f64>> {
    loop {
        let pts: Vec<Vec<f64>> = (0..=p).map(|_| random_point(rng, dim)).collect();
        let vol = cayley_menger_volume(&pts);
        let longest = pts
            .iter()
            .flat_map(|a| pts.iter().map(move |b| a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt()))
            .fold(0.0, f64::max);
        if p == 0 || vol > 1e-3 * longest.powi(p as i32) {
            return pts;
        }
    }
}

// ---------------------------------------------------------------- linear algebra

/// Rank by Gaussian elimination with partial pivoting; pivots below
/// `tol * max |a_ij|` count as zero.
pub fn dense_rank(a: &[Vec<f64>], tol: f64) -> usize {
    let mut m: Vec<Vec<f64>> = a.to_vec();
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let scale = m.iter().flatten().fold(0.0f64, |s, v| s.max(v.abs()));
    if scale == 0.0 {
        return 0;
    }
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let piv = (rank..rows).max_by(|&i, &j| m[i][c].abs().total_cmp(&m[j][c].abs())).unwrap();
        if m[piv][c].abs() <= tol * scale {
            continue;
        }
        m.swap(rank, piv);
        for r in rank + 1..rows {
            let f = m[r][c] / m[rank][c];
            if f != 0.0 {
                for k in c..cols {
                    m[r][k] -= f * m[rank][k];
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn dense_product(a: &[Vec<f64>], b: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let k = b.len();
    let cols = if k == 0 { 0 } else { b[0].len() };
    a.iter()
        .map(|row| (0..cols).map(|j| (0..k).map(|t| row[t] * b[t][j]).sum()).collect())
        .collect()
}

pub fn dense_transpose(a: &[Vec<f64>]) -> Vec<Vec<f64>> {
    if a.is_empty() {
        return vec![];
    }
    (0..a[0].len()).map(|j| a.iter().map(|r| r[j]).collect()).collect()
}

// ---------------------------------------------------------------- rips

/// Every vertex subset of size `2..=max_dim + 1` whose pairwise distances
/// are at most `r`, grouped by dimension, sorted.
pub fn brute_force_cliques(points: &[Vec<f64>], r: f64, max_dim: usize) -> Vec<Vec<Vec<usize>>> {
    let n = points.len();
    let close = |i: usize, j: usize| {
        points[i].iter().zip(&points[j]).map(|(a, b)| (a - b).powi(2)).sum::<f64>() <= r * r
    };
    let mut by_dim: Vec<Vec<Vec<usize>>> = vec![vec![]; max_dim + 1];
    by_dim[0] = (0..n).map(|i| vec![i]).collect();
    for k in 2..=max_dim + 1 {
        for s in subsets(n, k) {
            if s.iter().enumerate().all(|(a, &i)| s[a + 1..].iter().all(|&j| close(i, j))) {
                by_dim[k - 1].push(s);
            }
        }
    }
    while by_dim.len() > 1 && by_dim.last().unwrap().is_empty() {
        by_dim.pop();
    }
    by_dim
}

// ---------------------------------------------------------------- random complexes

/// Random pure simplicial complex on fresh labels `0..used`, top simplices
/// distinct, possibly with isolated components.
pub fn random_top_simplices(rng: &mut ChaCha8Rng, dim: usize, max_vertices: usize) -> SimplexArray {
    let nv = rng.gen_range(dim + 1..=max_vertices.max(dim + 1));
    let count = rng.gen_range(1..=6);
    let mut tops: Vec<Vec<usize>> = Vec::new();
    for _ in 0..count {
        let mut all: Vec<usize> = (0..nv).collect();
        all.shuffle(rng);
        let mut s: Vec<usize> = all[..=dim].to_vec();
        let mut key = s.clone();
        key.sort();
        if tops.iter().any(|t| {
            let mut k = t.clone();
            k.sort();
            k == key
        }) {
            continue;
        }
        if rng.gen_bool(0.5) {
            s.swap(0, dim.min(1));
        }
        tops.push(s);
    }
    // relabel so every label is used
    let mut used: Vec<usize> = tops.iter().flatten().copied().collect();
    used.sort();
    used.dedup();
    let rows: Vec<Vec<usize>> =
        tops.iter().map(|t| t.iter().map(|v| used.binary_search(v).unwrap()).collect()).collect();
    SimplexArray::from_rows(&rows).unwrap()
}

/// Random geometric complex with the given top simplices (vertices in general position).
pub fn random_embedded(rng: &mut ChaCha8Rng, top: SimplexArray, dim: usize) -> SimplicialComplex {
    let nv = top.max_vertex().unwrap() + 1;
    let verts = (0..nv).map(|_| random_point(rng, dim)).collect();
    build_complex(verts, top).unwrap()
}

pub fn random_bitmap(rng: &mut ChaCha8Rng) -> Bitmap {
    let dim = rng.gen_range(1..=3);
    let shape: Vec<usize> = (0..dim).map(|_| rng.gen_range(1..=4)).collect();
    let size = shape.iter().product();
    let bits = (0..size).map(|_| rng.gen_bool(0.6)).collect();
    Bitmap::new(shape, bits).unwrap()
}

pub fn random_cloud(rng: &mut ChaCha8Rng, max_points: usize) -> Vec<Vec<f64>> {
    let n = rng.gen_range(1..=max_points);
    let dim = rng.gen_range(1..=3);
    (0..n).map(|_| (0..dim).map(|_| rng.gen_range(0.0..1.0)).collect()).collect()
}
