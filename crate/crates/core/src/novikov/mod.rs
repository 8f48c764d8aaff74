//! Exact arithmetic in truncated Novikov rings, matrix diagonalization
//! over them, cohomology of free complexes, and the minimal-rank bound.

mod complex;
mod diag;
mod element;
mod matrix;

pub use complex::{
    min_rank, nov_homology, CohomologyGroup, GradedCohomology, MinRankReport, NovikovComplex,
    NovikovGroupDesc,
};
pub use diag::{diagonalize, linear_solve, Diagonalization};
pub use element::{NovikovElement, Truncation};
pub use matrix::NovikovMatrix;
