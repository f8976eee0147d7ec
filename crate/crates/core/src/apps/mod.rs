//! Drivers for the five worked examples: resonant cavity, Darcy flow,
//! harmonic cochains, sensor coverage and least squares ranking.
//!
//! Each driver computes a result struct from loaded inputs; `write_to`
//! on the result emits plain text files into an output directory.

mod cavity;
mod cohomology;
mod darcy;
mod output;
mod rank;
mod sensor;

pub use cavity::{cavity, CavityResult};
pub use cohomology::{cohomology, CohomologyResult};
pub use darcy::{darcy, DarcyBoundary, DarcyConfig, DarcyResult};
pub use output::{format_value, write_lines, write_table};
pub use rank::{rank, RankResult};
pub use sensor::{sensor, SensorResult};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::simplicial::{ChainComplex, SimplexArray, SimplicialComplex};

pub const DEFAULT_SEED: u64 = 42;

/// Seeded values uniform in `[-1, 1)`.
pub fn random_cochain(rng: &mut ChaCha8Rng, len: usize) -> Vec<f64> {
    (0..len).map(|_| rng.gen_range(-1.0..1.0)).collect()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Edges contained in exactly one top simplex of a 2-complex.
pub(crate) fn boundary_edges(c: &SimplicialComplex) -> Vec<bool> {
    let mut count = vec![0usize; c.cell_count(1)];
    for (e, _, _) in c.boundary(2).iter() {
        count[e] += 1;
    }
    count.into_iter().map(|k| k == 1).collect()
}

pub(crate) fn barycenters(c: &SimplicialComplex) -> Vec<Vec<f64>> {
    let n = c.dim();
    (0..c.cell_count(n))
        .map(|t| {
            let pts = c.cell_points(n, t);
            (0..c.embedding_dim())
                .map(|d| pts.iter().map(|p| p[d]).sum::<f64>() / pts.len() as f64)
                .collect()
        })
        .collect()
}

/// Component label of every vertex `0..n`, numbered by first appearance.
pub(crate) fn components(n: usize, edges: &SimplexArray) -> Vec<usize> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for e in edges.iter() {
        let (a, b) = (find(&mut parent, e[0]), find(&mut parent, e[1]));
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut label = vec![usize::MAX; n];
    let mut out = vec![0; n];
    let mut next = 0;
    for v in 0..n {
        let r = find(&mut parent, v);
        if label[r] == usize::MAX {
            label[r] = next;
            next += 1;
        }
        out[v] = label[r];
    }
    out
}
