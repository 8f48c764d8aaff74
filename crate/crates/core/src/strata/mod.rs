//! The ⟨k⟩-stratification calculus: subset/partition bijection, label
//! composition, restriction posets, and the doubling/collaring/product
//! constructions on combinatorial stratified spaces.

mod label;
mod ops;
mod space;

pub use label::{
    compose_labels, h_of_s, restriction_image, restriction_poset_iso, s_of_h, LengthSeq,
    StratumLabel,
};
pub use ops::{collar, double, product, CollarResult, DoubleResult};
pub use space::{examples, Cell, CombStratSpace, Face};
