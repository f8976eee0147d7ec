//! Simplex arrays and the face/boundary cascade for embedded simplicial complexes.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::sparse::SparseMatrix;

/// A list of `p`-simplices stored row-major, `p + 1` vertex indices per row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplexArray {
    width: usize,
    data: Vec<usize>,
}

impl SimplexArray {
    /// `width` is the number of vertices per simplex (`p + 1`).
    pub fn new(width: usize, data: Vec<usize>) -> Result<Self> {
        if width == 0 {
            return Err(Error::InvalidArgument("simplex width must be positive".into()));
        }
        if data.len() % width != 0 {
            return Err(Error::DimensionMismatch(format!(
                "{} indices do not split into rows of {width}",
                data.len()
            )));
        }
        Ok(Self { width, data })
    }

    pub fn empty(dim: usize) -> Self {
        Self { width: dim + 1, data: Vec::new() }
    }

    pub fn from_rows<R: AsRef<[usize]>>(rows: &[R]) -> Result<Self> {
        let width = rows.first().map_or(0, |r| r.as_ref().len());
        if width == 0 {
            return Err(Error::Empty("simplex array"));
        }
        let mut data = Vec::with_capacity(rows.len() * width);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != width {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has {} vertices, expected {width}",
                    r.len()
                )));
            }
            data.extend_from_slice(r);
        }
        Ok(Self { width, data })
    }

    pub fn dim(&self) -> usize {
        self.width - 1
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn len(&self) -> usize {
        self.data.len() / self.width
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn row(&self, i: usize) -> &[usize] {
        &self.data[i * self.width..(i + 1) * self.width]
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = &[usize]> + '_ {
        self.data.chunks_exact(self.width)
    }

    pub fn as_flat(&self) -> &[usize] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<usize>> {
        self.iter().map(<[usize]>::to_vec).collect()
    }

    /// Index of `row` in a lexicographically sorted array.
    pub fn find(&self, row: &[usize]) -> Option<usize> {
        let (mut lo, mut hi) = (0, self.len());
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.row(mid).cmp(row) {
                Ordering::Less => lo = mid + 1,
                Ordering::Greater => hi = mid,
                Ordering::Equal => return Some(mid),
            }
        }
        None
    }

    pub fn max_vertex(&self) -> Option<usize> {
        self.data.iter().copied().max()
    }
}

/// Simplices with sorted vertex columns plus the sign of the sorting permutation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParityTaggedSimplexArray {
    pub rows: SimplexArray,
    pub parity: Vec<i8>,
    pub source_index: Vec<usize>,
}

/// Sorts every row, recording the permutation sign from insertion-sort swaps.
pub fn canonical_format(s: &SimplexArray) -> Result<ParityTaggedSimplexArray> {
    let mut data = s.data.clone();
    let mut parity = Vec::with_capacity(s.len());
    for (i, row) in data.chunks_exact_mut(s.width).enumerate() {
        let mut swaps = 0usize;
        for a in 1..row.len() {
            let mut b = a;
            while b > 0 && row[b - 1] > row[b] {
                row.swap(b - 1, b);
                swaps += 1;
                b -= 1;
            }
        }
        if let Some(w) = row.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::RepeatedVertex { row: i, vertex: w[0] });
        }
        parity.push(if swaps % 2 == 0 { 1 } else { -1 });
    }
    Ok(ParityTaggedSimplexArray {
        rows: SimplexArray { width: s.width, data },
        parity,
        source_index: (0..s.len()).collect(),
    })
}

/// Sorted unique faces of a canonical array and the boundary matrix mapping onto them.
///
/// Every simplex contributes its `p + 1` faces (vertex `i` deleted, sign
/// `(-1)^i` times its parity). The expanded list is stably sorted on the face
/// columns, unique faces are extracted, and the carried simplex index and
/// sign columns become the CSR `indices` and `data`.
pub fn boundary_faces(s_plus: &ParityTaggedSimplexArray) -> Result<(SimplexArray, SparseMatrix)> {
    let s = &s_plus.rows;
    let p = s.dim();
    if p == 0 {
        return Err(Error::InvalidArgument("0-simplices have no faces".into()));
    }
    let n = s.len();
    let fw = p;
    let mut faces = Vec::with_capacity(n * (p + 1) * fw);
    let mut parent = Vec::with_capacity(n * (p + 1));
    let mut sign = Vec::with_capacity(n * (p + 1));
    for (j, row) in s.iter().enumerate() {
        for i in 0..=p {
            faces.extend(row.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, &v)| v));
            parent.push(j);
            let alt = if i % 2 == 0 { 1.0 } else { -1.0 };
            sign.push(alt * f64::from(s_plus.parity[j]));
        }
    }
    let face = |k: usize| &faces[k * fw..(k + 1) * fw];
    let mut order: Vec<usize> = (0..parent.len()).collect();
    order.sort_by(|&a, &b| face(a).cmp(face(b)));

    let mut unique = Vec::new();
    let mut ptr = vec![0usize];
    let mut indices = Vec::with_capacity(order.len());
    let mut data = Vec::with_capacity(order.len());
    for (k, &e) in order.iter().enumerate() {
        if k == 0 || face(order[k - 1]) != face(e) {
            if k > 0 {
                ptr.push(indices.len());
            }
            unique.extend_from_slice(face(e));
        }
        indices.push(parent[e]);
        data.push(sign[e]);
    }
    if !order.is_empty() {
        ptr.push(indices.len());
    }
    let nfaces = ptr.len() - 1;
    let boundary = SparseMatrix::from_csr(nfaces, n, ptr, indices, data)?;
    Ok((SimplexArray { width: fw, data: unique }, boundary))
}

/// One dimension of a chain complex.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexLevel {
    /// Cells with sorted vertex columns.
    pub cells: SimplexArray,
    /// Orientation of each cell relative to its sorted vertex order.
    pub parity: Vec<i8>,
    /// `∂_p`, of shape `N_{p-1} x N_p`; `1 x N_0` zero matrix at `p = 0`.
    pub boundary: SparseMatrix,
}

/// Read access shared by every complex that carries boundary matrices.
pub trait ChainComplex {
    fn levels(&self) -> &[ComplexLevel];

    fn dim(&self) -> usize {
        self.levels().len() - 1
    }

    fn cell_count(&self, p: usize) -> usize {
        self.levels()[p].cells.len()
    }

    fn cell_counts(&self) -> Vec<usize> {
        self.levels().iter().map(|l| l.cells.len()).collect()
    }

    fn cells(&self, p: usize) -> &SimplexArray {
        &self.levels()[p].cells
    }

    fn boundary(&self, p: usize) -> &SparseMatrix {
        &self.levels()[p].boundary
    }

    /// `d_p = ∂_{p+1}ᵀ`, of shape `N_{p+1} x N_p`.
    fn coboundary(&self, p: usize) -> Result<SparseMatrix> {
        if p >= self.dim() {
            return Err(Error::InvalidArgument(format!(
                "coboundary d_{p} needs p < {}",
                self.dim()
            )));
        }
        Ok(self.levels()[p + 1].boundary.transpose())
    }
}

/// Builds levels `n..1` from a canonical top array; level 0 gets the zero row.
pub(crate) fn cascade(top: ParityTaggedSimplexArray) -> Result<Vec<ComplexLevel>> {
    let mut levels = Vec::new();
    let mut current = top;
    while current.rows.dim() > 0 {
        let (faces, boundary) = boundary_faces(&current)?;
        levels.push(ComplexLevel { cells: current.rows, parity: current.parity, boundary });
        let m = faces.len();
        current = ParityTaggedSimplexArray {
            rows: faces,
            parity: vec![1; m],
            source_index: (0..m).collect(),
        };
    }
    let n0 = current.rows.len();
    levels.push(ComplexLevel {
        cells: current.rows,
        parity: current.parity,
        boundary: SparseMatrix::zeros(1, n0),
    });
    levels.reverse();
    Ok(levels)
}

/// A simplicial complex embedded in `R^N`.
#[derive(Debug, Clone)]
pub struct SimplicialComplex {
    vertices: Vec<Vec<f64>>,
    top: SimplexArray,
    levels: Vec<ComplexLevel>,
}

impl ChainComplex for SimplicialComplex {
    fn levels(&self) -> &[ComplexLevel] {
        &self.levels
    }
}

impl SimplicialComplex {
    pub fn vertices(&self) -> &[Vec<f64>] {
        &self.vertices
    }

    pub fn embedding_dim(&self) -> usize {
        self.vertices[0].len()
    }

    /// Top simplices in the vertex order they were given.
    pub fn top_simplices(&self) -> &SimplexArray {
        &self.top
    }

    /// Coordinates of the vertices of `p`-cell `i`, in sorted vertex order.
    pub fn cell_points(&self, p: usize, i: usize) -> Vec<&[f64]> {
        self.levels[p].cells.row(i).iter().map(|&v| self.vertices[v].as_slice()).collect()
    }
}

/// Runs the face cascade from the top simplices down to vertices.
///
/// Every vertex must be used by some simplex so that `S_0` is `0..N_0`.
pub fn build_complex(vertices: Vec<Vec<f64>>, top: SimplexArray) -> Result<SimplicialComplex> {
    if top.is_empty() {
        return Err(Error::Empty("top simplex array"));
    }
    if vertices.is_empty() {
        return Err(Error::Empty("vertex array"));
    }
    let dim = vertices[0].len();
    if dim == 0 {
        return Err(Error::InvalidArgument("vertices need at least one coordinate".into()));
    }
    if let Some(i) = vertices.iter().position(|v| v.len() != dim) {
        return Err(Error::DimensionMismatch(format!(
            "vertex {i} has {} coordinates, expected {dim}",
            vertices[i].len()
        )));
    }
    if let Some(i) = vertices.iter().position(|v| v.iter().any(|x| !x.is_finite())) {
        return Err(Error::InvalidArgument(format!("vertex {i} has a non-finite coordinate")));
    }
    let nv = vertices.len();
    for (i, row) in top.iter().enumerate() {
        if let Some(&v) = row.iter().find(|&&v| v >= nv) {
            return Err(Error::IndexOutOfRange { row: i, index: v, limit: nv });
        }
    }
    let canon = canonical_format(&top)?;
    reject_duplicates(&canon.rows)?;

    let levels = cascade(canon)?;
    let used = &levels[0].cells;
    if used.len() != nv {
        let missing = (0..nv).find(|&v| used.find(&[v]).is_none()).unwrap_or(0);
        return Err(Error::InvalidArgument(format!(
            "vertex {missing} is not used by any simplex"
        )));
    }
    Ok(SimplicialComplex { vertices, top, levels })
}

fn reject_duplicates(rows: &SimplexArray) -> Result<()> {
    let mut order: Vec<usize> = (0..rows.len()).collect();
    order.sort_by(|&a, &b| rows.row(a).cmp(rows.row(b)));
    for w in order.windows(2) {
        if rows.row(w[0]) == rows.row(w[1]) {
            return Err(Error::DuplicateSimplex { first: w[0].min(w[1]), second: w[0].max(w[1]) });
        }
    }
    Ok(())
}
