//! Discrete Morse generators: triangulations, acyclic matchings, the
//! integer Morse complex with signed V-path counts, the flow-category
//! export, and the Arnold-bound demo pipeline. The simplicial SNF
//! homology here is the independent oracle for everything downstream.

mod complex;
mod gradient;
mod simplicial;
mod snf;

pub use complex::{arnold_demo, morse_complex, morse_pipeline, to_flow_category, DemoReport, MorseComplexZ};
pub use gradient::{discrete_gradient, CellRef, DiscreteGradient, Strategy};
pub use simplicial::{build_simplicial, simplicial_homology, SimplicialComplex, Space};
pub use snf::{smith_normal_form, SmithResult};
