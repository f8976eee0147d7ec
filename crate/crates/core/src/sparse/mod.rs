mod csr;
mod dense;
mod solvers;

pub use csr::{spgemm, spgemm3, SparseMatrix};
pub use dense::{
    determinant, determinant_cofactor, determinant_lu, symmetric_generalized_eig,
    GeneralizedEigen,
};
pub use solvers::{conjugate_gradient, least_squares, LinearOperator, Solution, DEFAULT_TOLERANCE};

pub(crate) use solvers::norm;
