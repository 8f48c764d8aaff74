//! Flow-category data model, label-set composition, Novikov cochain
//! complex assembly, cone/square extraction, Λ₀ descent, bifurcation
//! moves, and the Arnold bound check.

mod arnold;
mod assemble;
mod cone;
mod desc;
mod moves;

pub use arnold::{arnold_check, ArnoldReport};
pub use assemble::{assemble_complex, assemble_unchecked, check_d_squared, D2Report};
pub use cone::{cone_decompose, square_decompose, BlockMap, ConeDecomposition, SquareDecomposition};
pub use desc::{
    compose_label_sets, validate_category, CategoryFlags, FlowCategoryDesc, FlowObject,
    LabelComposition, LabelSize, MorphismRecord, ValidationReport, Violation,
};
pub use moves::{bifurcation_move_c, bifurcation_move_d, descend_to_lambda0};
