//! Scalar abstraction and the exact rational scalar used throughout.

use num_bigint::BigInt;
use num_traits::{FromPrimitive, Num, Signed};
use std::fmt::{Debug, Display};
use std::iter::Sum;

/// Coefficient scalar for the core math.
///
/// Everything needed is a signed field with exact construction from machine
/// integers. `BigRational` is the instantiation used by the whole artifact;
/// floating point types satisfy the bound structurally but are never used.
pub trait Scalar:
    Clone + Num + Signed + FromPrimitive + Sum<Self> + PartialEq + Debug + Display + Send + Sync + 'static
{
}

impl<T> Scalar for T where
    T: Clone
        + Num
        + Signed
        + FromPrimitive
        + Sum<T>
        + PartialEq
        + Debug
        + Display
        + Send
        + Sync
        + 'static
{
}

/// Arbitrary-precision rational: the coefficient field of the artifact.
///
/// Always reduced to lowest terms with positive denominator (maintained by
/// `num-rational` on construction and arithmetic).
pub type Rat = num_rational::BigRational;

/// The integer `k` as a scalar.
pub fn int<T: Scalar>(k: i64) -> T {
    T::from_i64(k).expect("integer not representable in scalar type")
}

/// The exact fraction `p/q` as a scalar.
pub fn frac<T: Scalar>(p: i64, q: i64) -> T {
    assert!(q != 0, "zero denominator");
    int::<T>(p) / int::<T>(q)
}

/// Shorthand for a concrete rational `p/q`.
pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// Exact factorial as a scalar.
pub fn factorial<T: Scalar>(k: usize) -> T {
    let mut acc = T::one();
    for i in 2..=k {
        acc = acc * int::<T>(i as i64);
    }
    acc
}

/// Render a rational as `p/q` (always with an explicit denominator).
pub fn rat_string(x: &Rat) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_reduce() {
        assert_eq!(rat(2, 4), rat(1, 2));
        assert_eq!(rat(1, -2), rat(-1, 2));
        assert_eq!(rat_string(&rat(-3, 6)), "-1/2");
    }

    #[test]
    fn factorial_values() {
        assert_eq!(factorial::<Rat>(0), rat(1, 1));
        assert_eq!(factorial::<Rat>(4), rat(24, 1));
    }
}
