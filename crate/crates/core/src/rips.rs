//! Vietoris–Rips complexes of point clouds.

use crate::abstract_complex::{build_abstract, AbstractComplex};
use crate::error::{Error, Result};
use crate::simplicial::{ChainComplex, ComplexLevel, SimplexArray};
use crate::sparse::{spgemm, SparseMatrix};

/// Static kd-tree answering inclusive radius queries.
pub struct KdTree<'a> {
    points: &'a [Vec<f64>],
    nodes: Vec<Node>,
    root: Option<usize>,
}

struct Node {
    point: usize,
    axis: usize,
    left: Option<usize>,
    right: Option<usize>,
}

impl<'a> KdTree<'a> {
    pub fn new(points: &'a [Vec<f64>]) -> Self {
        let mut tree = Self { points, nodes: Vec::with_capacity(points.len()), root: None };
        let mut idx: Vec<usize> = (0..points.len()).collect();
        tree.root = tree.build(&mut idx, 0);
        tree
    }

    fn build(&mut self, idx: &mut [usize], depth: usize) -> Option<usize> {
        if idx.is_empty() {
            return None;
        }
        let dim = self.points[idx[0]].len();
        let axis = depth % dim.max(1);
        let pts = self.points;
        idx.sort_by(|&a, &b| pts[a][axis].total_cmp(&pts[b][axis]).then(a.cmp(&b)));
        let mid = idx.len() / 2;
        let point = idx[mid];
        let (lo, hi) = idx.split_at_mut(mid);
        let left = self.build(lo, depth + 1);
        let right = self.build(&mut hi[1..], depth + 1);
        self.nodes.push(Node { point, axis, left, right });
        Some(self.nodes.len() - 1)
    }

    /// Indices of all points within distance `r` of `q` (boundary included), unsorted.
    pub fn within(&self, q: &[f64], r: f64) -> Vec<usize> {
        let mut out = Vec::new();
        let r2 = r * r;
        let mut stack: Vec<usize> = self.root.into_iter().collect();
        while let Some(k) = stack.pop() {
            let node = &self.nodes[k];
            let p = &self.points[node.point];
            if squared_distance(p, q) <= r2 {
                out.push(node.point);
            }
            let diff = q[node.axis] - p[node.axis];
            let (near, far) = if diff < 0.0 { (node.left, node.right) } else { (node.right, node.left) };
            near.into_iter().for_each(|n| stack.push(n));
            if diff * diff <= r2 {
                far.into_iter().for_each(|n| stack.push(n));
            }
        }
        out
    }
}

pub fn squared_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

fn check_points(points: &[Vec<f64>], r: f64) -> Result<()> {
    if points.is_empty() {
        return Err(Error::Empty("point cloud"));
    }
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::InvalidArgument(format!("radius must be positive, got {r}")));
    }
    let dim = points[0].len();
    if let Some(i) = points.iter().position(|p| p.len() != dim || p.iter().any(|x| !x.is_finite())) {
        return Err(Error::InvalidArgument(format!("point {i} is malformed")));
    }
    Ok(())
}

/// Edges `(i, j)`, `i < j`, with `|x_i - x_j| <= r`, and the upper-triangular adjacency `E`.
pub fn rips_skeleton1(points: &[Vec<f64>], r: f64) -> Result<(SimplexArray, SparseMatrix)> {
    check_points(points, r)?;
    let tree = KdTree::new(points);
    let mut edges = Vec::new();
    for (i, p) in points.iter().enumerate() {
        let mut near: Vec<usize> = tree.within(p, r).into_iter().filter(|&j| j > i).collect();
        near.sort_unstable();
        edges.extend(near.into_iter().map(|j| (i, j)));
    }
    let n = points.len();
    let e = SparseMatrix::from_triplets(n, n, edges.iter().map(|&(i, j)| (i, j, 1.0)))?;
    let s1 = SimplexArray::new(2, edges.into_iter().flat_map(|(i, j)| [i, j]).collect())?;
    Ok((s1, e))
}

/// Vertex incidence `F_p` of a simplex array over `nv` vertices.
pub fn incidence(s: &SimplexArray, nv: usize) -> Result<SparseMatrix> {
    SparseMatrix::from_triplets(
        s.len(),
        nv,
        s.iter().enumerate().flat_map(|(k, row)| row.iter().map(move |&v| (k, v, 1.0))),
    )
}

/// `(p+1)`-simplices from `p`-simplices: entry `(k, j)` of `F_p E` equal to
/// `p + 1` means vertex `j` is adjacent to, and larger than, every vertex of
/// simplex `k`.
pub fn rips_extend(s_p: &SimplexArray, e: &SparseMatrix) -> Result<SimplexArray> {
    let f = incidence(s_p, e.rows())?;
    let fe = spgemm(&f, e)?;
    let full = (s_p.dim() + 1) as f64;
    let mut data = Vec::new();
    for (k, j, v) in fe.iter() {
        if v == full {
            data.extend_from_slice(s_p.row(k));
            data.push(j);
        }
    }
    SimplexArray::new(s_p.width() + 1, data)
}

#[derive(Debug, Clone)]
pub struct RipsComplex {
    pub points: Vec<Vec<f64>>,
    pub radius: f64,
    /// `S_0 .. S_k`; trailing empty skeletons are dropped.
    pub skeletons: Vec<SimplexArray>,
    pub edges: SparseMatrix,
    complex: AbstractComplex,
}

impl ChainComplex for RipsComplex {
    fn levels(&self) -> &[ComplexLevel] {
        self.complex.levels()
    }
}

pub fn build_rips(points: Vec<Vec<f64>>, r: f64, max_dim: usize) -> Result<RipsComplex> {
    if max_dim == 0 {
        return Err(Error::InvalidArgument("max_dim must be at least 1".into()));
    }
    let (s1, e) = rips_skeleton1(&points, r)?;
    let mut skeletons = vec![SimplexArray::new(1, (0..points.len()).collect())?];
    let mut current = s1;
    while !current.is_empty() {
        let next = if current.dim() < max_dim { Some(rips_extend(&current, &e)?) } else { None };
        skeletons.push(current);
        match next {
            Some(s) => current = s,
            None => break,
        }
    }
    let complex = build_abstract(&skeletons)?;
    Ok(RipsComplex { points, radius: r, skeletons, edges: e, complex })
}
