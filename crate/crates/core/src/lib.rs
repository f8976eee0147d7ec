//! Discrete exterior calculus on simplicial, cubical, Rips and abstract complexes.

pub mod abstract_complex;
pub mod apps;
pub mod cube;
pub mod dec_fem;
pub mod error;
pub mod geometry;
pub mod io;
pub mod rips;
pub mod simplicial;
pub mod sparse;

pub use error::{Error, Result};
