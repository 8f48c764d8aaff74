//! Desk-scale model of equivariant polynomial sections on corner domains:
//! Reynolds averaging, canonical boundary extension, strong
//! ⟨k⟩-transversality checking, and signed zero counting with boundary
//! consistency.

mod extend;
mod numeric;
mod poly;
mod rep;
mod transverse;

pub use extend::{extend_from_boundary, BoundaryData, SectionOnBox};
pub use poly::{Poly, PolyMap, RatMat};
pub use rep::{
    enumerate_equivariant_basis, reynolds_project, EquivariantPolySpace, FiniteGroupRep,
};
pub use transverse::{
    boundary_consistency, check_strong_transversality, count_signed_zeros, ConsistencyReport,
    StratumReport, TracedArc, TransversalityReport, Wall, WallZeroRecord,
};
