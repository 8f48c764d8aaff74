//! novflow: exact algebra for Novikov-ring cochain complexes built from
//! flow-category data, the ⟨k⟩-corner stratification calculus, equivariant
//! polynomial perturbation checks on corner domains, and discrete Morse
//! generators that feed the whole pipeline.
//!
//! The crate is generic over the integer scalar (see [`scalar::IntScalar`]);
//! the aliases below fix `BigInt` as the default concrete choice.

pub mod error;
pub mod novikov;
pub mod perturb;
pub mod flowcat;
pub mod morse;
pub mod strata;
pub mod scalar;

pub use scalar::{IntScalar, Rational};

/// Default integer scalar: arbitrary precision.
pub type Int = num_bigint::BigInt;
/// Default exact rational.
pub type Rat = num_rational::Ratio<Int>;

/// Concrete aliases on the default scalar.
pub type Novikov = novikov::NovikovElement<Int>;
pub type NovikovMat = novikov::NovikovMatrix<Int>;
pub type Trunc = novikov::Truncation<Int>;
pub type Complex = novikov::NovikovComplex<Int>;
pub type GroupDesc = novikov::NovikovGroupDesc<Int>;
pub type Cohomology = novikov::GradedCohomology<Int>;
