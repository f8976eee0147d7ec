//! Regular cube complexes built from bitmaps.

use crate::error::{Error, Result};
use crate::sparse::SparseMatrix;

/// An `n`-dimensional array of on/off bits, row-major with axis 0 slowest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bitmap {
    shape: Vec<usize>,
    bits: Vec<bool>,
}

impl Bitmap {
    pub fn new(shape: Vec<usize>, bits: Vec<bool>) -> Result<Self> {
        if shape.is_empty() || shape.contains(&0) {
            return Err(Error::InvalidArgument(format!("bad bitmap shape {shape:?}")));
        }
        let size: usize = shape.iter().product();
        if size != bits.len() {
            return Err(Error::DimensionMismatch(format!(
                "bitmap shape {shape:?} holds {size} bits, got {}",
                bits.len()
            )));
        }
        Ok(Self { shape, bits })
    }

    /// A 2D bitmap written as a picture: the first row is the top (largest y)
    /// and columns run along x, so bit `(r, c)` sits at `(c, rows - 1 - r)`.
    pub fn from_picture(rows: &[Vec<bool>]) -> Result<Self> {
        let h = rows.len();
        let w = rows.first().map_or(0, Vec::len);
        if h == 0 || w == 0 {
            return Err(Error::Empty("bitmap"));
        }
        if let Some(r) = rows.iter().position(|r| r.len() != w) {
            return Err(Error::DimensionMismatch(format!(
                "bitmap row {r} has {} entries, expected {w}",
                rows[r].len()
            )));
        }
        let mut bits = vec![false; w * h];
        for (r, row) in rows.iter().enumerate() {
            for (c, &b) in row.iter().enumerate() {
                bits[c * h + (h - 1 - r)] = b;
            }
        }
        Self::new(vec![w, h], bits)
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn dim(&self) -> usize {
        self.shape.len()
    }

    /// Coordinates of every on bit, in row-major order.
    pub fn on_bits(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        self.bits.iter().enumerate().filter(|(_, &b)| b).map(|(mut k, _)| {
            let mut idx = vec![0; self.shape.len()];
            for a in (0..self.shape.len()).rev() {
                idx[a] = k % self.shape[a];
                k /= self.shape[a];
            }
            idx
        })
    }
}

/// `p`-cubes in `R^n`: each row is `n` corner coordinates then `p` ascending directions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubeArray {
    n: usize,
    p: usize,
    data: Vec<usize>,
}

impl CubeArray {
    pub fn new(n: usize, p: usize, data: Vec<usize>) -> Result<Self> {
        if n == 0 || p > n {
            return Err(Error::InvalidArgument(format!("invalid cube array n={n} p={p}")));
        }
        if data.len() % (n + p) != 0 {
            return Err(Error::DimensionMismatch(format!(
                "{} entries do not split into rows of {}",
                data.len(),
                n + p
            )));
        }
        let a = Self { n, p, data };
        for (i, row) in a.iter().enumerate() {
            let dirs = &row[n..];
            if dirs.iter().any(|&d| d >= n) || dirs.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::InvalidArgument(format!(
                    "row {i}: directions {dirs:?} are not ascending axes"
                )));
            }
        }
        Ok(a)
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.p
    }

    pub fn len(&self) -> usize {
        self.data.len() / (self.n + self.p)
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn row(&self, i: usize) -> &[usize] {
        let w = self.n + self.p;
        &self.data[i * w..(i + 1) * w]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[usize]> + '_ {
        self.data.chunks_exact(self.n + self.p)
    }

    pub fn to_rows(&self) -> Vec<Vec<usize>> {
        self.iter().map(<[usize]>::to_vec).collect()
    }
}

/// One top-dimensional cube per on bit, rows in lexicographic order.
pub fn bitmap_to_cubes(bitmap: &Bitmap) -> Result<CubeArray> {
    let n = bitmap.dim();
    let mut data = Vec::new();
    for idx in bitmap.on_bits() {
        data.extend(idx);
        data.extend(0..n);
    }
    if data.is_empty() {
        return Err(Error::Empty("bitmap has no on bits"));
    }
    // row-major enumeration is already lexicographic in the corner
    CubeArray::new(n, n, data)
}

/// Sorted unique faces of a cube array and the boundary matrix onto them.
pub fn cube_boundary_faces(c: &CubeArray) -> Result<(CubeArray, SparseMatrix)> {
    let (n, p) = (c.n, c.p);
    if p == 0 {
        return Err(Error::InvalidArgument("0-cubes have no faces".into()));
    }
    let fw = n + p - 1;
    let mut faces = Vec::with_capacity(c.len() * 2 * p * fw);
    let mut parent = Vec::with_capacity(c.len() * 2 * p);
    let mut sign = Vec::with_capacity(c.len() * 2 * p);
    for (j, row) in c.iter().enumerate() {
        let (corner, dirs) = row.split_at(n);
        for (i, &d) in dirs.iter().enumerate() {
            let alt = if i % 2 == 0 { 1.0 } else { -1.0 };
            for (shift, s) in [(1, alt), (0, -alt)] {
                faces.extend(corner.iter().enumerate().map(|(a, &x)| x + usize::from(a == d) * shift));
                faces.extend(dirs.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, &e)| e));
                parent.push(j);
                sign.push(s);
            }
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
        if k > 0 && face(order[k - 1]) != face(e) {
            ptr.push(indices.len());
        }
        if k == 0 || face(order[k - 1]) != face(e) {
            unique.extend_from_slice(face(e));
        }
        indices.push(parent[e]);
        data.push(sign[e]);
    }
    ptr.push(indices.len());
    let boundary = SparseMatrix::from_csr(ptr.len() - 1, c.len(), ptr, indices, data)?;
    Ok((CubeArray { n, p: p - 1, data: unique }, boundary))
}

#[derive(Debug, Clone)]
pub struct CubeLevel {
    pub cells: CubeArray,
    /// `∂_p`; the `1 x N_0` zero matrix at `p = 0`.
    pub boundary: SparseMatrix,
}

#[derive(Debug, Clone)]
pub struct CubeComplex {
    levels: Vec<CubeLevel>,
}

impl CubeComplex {
    pub fn levels(&self) -> &[CubeLevel] {
        &self.levels
    }

    pub fn dim(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn cells(&self, p: usize) -> &CubeArray {
        &self.levels[p].cells
    }

    pub fn boundary(&self, p: usize) -> &SparseMatrix {
        &self.levels[p].boundary
    }

    pub fn cell_counts(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.cells.len()).collect()
    }
}

pub fn build_cube_complex(bitmap: &Bitmap) -> Result<CubeComplex> {
    let mut current = bitmap_to_cubes(bitmap)?;
    let mut levels = Vec::new();
    while current.p > 0 {
        let (faces, boundary) = cube_boundary_faces(&current)?;
        levels.push(CubeLevel { cells: current, boundary });
        current = faces;
    }
    let n0 = current.len();
    levels.push(CubeLevel { cells: current, boundary: SparseMatrix::zeros(1, n0) });
    levels.reverse();
    Ok(CubeComplex { levels })
}
