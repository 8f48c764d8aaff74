//! Scalar abstraction for the exact arithmetic used throughout the crate.
//!
//! All ring arithmetic (Novikov elements, Smith reduction, simplicial
//! boundary matrices, polynomial coefficients) is generic over an integer
//! scalar `I`. `i64` is fast and fine for small hand examples; `BigInt`
//! never overflows and is what the CLI and the bundled pipelines use.

use num_rational::Ratio;

/// Integer scalar: `i64`, `i128` or `num_bigint::BigInt`.
pub trait IntScalar:
    num_integer::Integer
    + num_traits::Signed
    + num_traits::NumAssign
    + num_traits::FromPrimitive
    + num_traits::ToPrimitive
    + num_bigint::ToBigInt
    + Clone
    + std::hash::Hash
    + std::fmt::Debug
    + std::fmt::Display
    + 'static
{
}

impl<T> IntScalar for T where
    T: num_integer::Integer
        + num_traits::Signed
        + num_traits::NumAssign
        + num_traits::FromPrimitive
        + num_traits::ToPrimitive
        + num_bigint::ToBigInt
        + Clone
        + std::hash::Hash
        + std::fmt::Debug
        + std::fmt::Display
        + 'static
{
}

/// Exact rational built on an [`IntScalar`].
pub type Rational<I> = Ratio<I>;

/// Shorthand for a rational from an integer pair.
pub fn rat<I: IntScalar>(num: i64, den: i64) -> Rational<I> {
    Ratio::new(
        I::from_i64(num).expect("numerator fits"),
        I::from_i64(den).expect("denominator fits"),
    )
}

/// Integer scalar from an `i64`.
pub fn int<I: IntScalar>(n: i64) -> I {
    I::from_i64(n).expect("integer fits")
}
