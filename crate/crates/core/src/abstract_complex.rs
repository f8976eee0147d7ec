//! Abstract complexes from user simplex lists of mixed dimension.

use crate::error::Result;
use crate::simplicial::{
    boundary_faces, canonical_format, ChainComplex, ComplexLevel, ParityTaggedSimplexArray,
    SimplexArray,
};
use crate::sparse::SparseMatrix;

#[derive(Debug, Clone)]
pub struct AbstractComplex {
    levels: Vec<ComplexLevel>,
    /// `(dim, cell)` of user simplices that coincide with a derived face of
    /// opposite orientation; the derived orientation was kept.
    pub orientation_overrides: Vec<(usize, usize)>,
}

impl ChainComplex for AbstractComplex {
    fn levels(&self) -> &[ComplexLevel] {
        &self.levels
    }
}

impl AbstractComplex {
    /// Cell index of a vertex label, if present.
    pub fn vertex_index(&self, label: usize) -> Option<usize> {
        self.levels[0].cells.find(&[label])
    }
}

struct Merged {
    tagged: ParityTaggedSimplexArray,
    /// Merged row of each derived face.
    face_map: Vec<usize>,
    overrides: Vec<usize>,
}

/// Concatenates derived faces (orientation +1) with user rows, sorts, and
/// keeps the first occurrence of each vertex set.
fn merge(width: usize, faces: Option<&SimplexArray>, user: &[(Vec<usize>, i8)]) -> Merged {
    let nf = faces.map_or(0, SimplexArray::len);
    let row = |k: usize| -> &[usize] {
        if k < nf {
            faces.unwrap().row(k)
        } else {
            &user[k - nf].0
        }
    };
    let parity = |k: usize| if k < nf { 1 } else { user[k - nf].1 };
    let mut order: Vec<usize> = (0..nf + user.len()).collect();
    order.sort_by(|&a, &b| row(a).cmp(row(b)));

    let mut data = Vec::new();
    let mut par = Vec::new();
    let mut face_map = vec![0; nf];
    let mut overrides = Vec::new();
    for (k, &e) in order.iter().enumerate() {
        let fresh = k == 0 || row(order[k - 1]) != row(e);
        if fresh {
            data.extend_from_slice(row(e));
            par.push(parity(e));
        } else if e >= nf && parity(e) != *par.last().unwrap() {
            overrides.push(par.len() - 1);
        }
        if e < nf {
            face_map[e] = par.len() - 1;
        }
    }
    overrides.dedup();
    let m = par.len();
    Merged {
        tagged: ParityTaggedSimplexArray {
            rows: SimplexArray::new(width, data).expect("rows have the merge width"),
            parity: par,
            source_index: (0..m).collect(),
        },
        face_map,
        overrides,
    }
}

/// Merges every user simplex into the face cascade of the highest-dimensional ones.
///
/// Boundary matrices gain empty rows for user simplices that are not faces of
/// anything. Each user simplex keeps the orientation it was given.
pub fn build_abstract(simplex_lists: &[SimplexArray]) -> Result<AbstractComplex> {
    let lists: Vec<&SimplexArray> = simplex_lists.iter().filter(|s| !s.is_empty()).collect();
    if lists.is_empty() {
        return Err(crate::error::Error::Empty("simplex lists"));
    }
    let n = lists.iter().map(|s| s.dim()).max().unwrap();
    let mut user: Vec<Vec<(Vec<usize>, i8)>> = vec![Vec::new(); n + 1];
    for s in &lists {
        let c = canonical_format(s)?;
        for (row, &par) in c.rows.iter().zip(&c.parity) {
            user[s.dim()].push((row.to_vec(), par));
        }
    }

    let mut overrides = Vec::new();
    let mut current = merge(n + 1, None, &user[n]).tagged;
    let mut levels = Vec::new();
    for p in (1..=n).rev() {
        let (faces, bd) = boundary_faces(&current)?;
        let merged = merge(p, Some(&faces), &user[p - 1]);
        overrides.extend(merged.overrides.iter().map(|&c| (p - 1, c)));
        let rows = merged.tagged.rows.len();
        let boundary = SparseMatrix::from_triplets(
            rows,
            bd.cols(),
            bd.iter().map(|(i, j, v)| (merged.face_map[i], j, v)),
        )?;
        levels.push(ComplexLevel { cells: current.rows, parity: current.parity, boundary });
        current = merged.tagged;
    }
    let n0 = current.rows.len();
    levels.push(ComplexLevel {
        cells: current.rows,
        parity: current.parity,
        boundary: SparseMatrix::zeros(1, n0),
    });
    levels.reverse();
    overrides.sort_unstable();
    Ok(AbstractComplex { levels, orientation_overrides: overrides })
}
