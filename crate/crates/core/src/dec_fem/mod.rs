//! Metric operators: Whitney mass matrices, Hodge stars and what is built from them.

mod decompose;
mod operators;
mod star;
mod whitney;

pub use decompose::{hodge_decompose, Cochain, HodgeDecomposition};
pub use operators::{codifferential, combinatorial_laplacian, laplace_derham, Factor, Operator};
pub use star::{
    dec_hodge_star, dec_hodge_stars, identity_stars, whitney_hodge_stars, HodgeStar, StarKind,
};
pub use whitney::{
    barycentric_moment_integral, binomial, naive_determinant_count, naive_whitney_mass_matrix,
    unique_determinant_count, whitney_interpolate_at_barycenters, whitney_mass_matrix,
    whitney_stiffness, MassMatrix,
};
