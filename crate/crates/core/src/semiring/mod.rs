//! Commutative semirings and the exact carriers used throughout the crate.
//!
//! A commutative semiring is a set with two associative and commutative
//! operations, `⊕` and `⊙`, where `⊙` distributes over `⊕`. Neither operation
//! needs an inverse. The carriers shipped here are all exact:
//!
//! | carrier            | type                 | `⊕`   | `⊙` | `0̲` | `⊘` |
//! |--------------------|----------------------|-------|-----|-----|-----|
//! | counting numbers   | [`CountingNat`]      | `+`   | `×` | yes | no  |
//! | integers           | [`ExactInt`]         | `+`   | `×` | yes | no  |
//! | positive rationals | [`PositiveRational`] | `+`   | `×` | no  | yes |
//! | tropical integers  | [`TropicalInt`]      | `max` | `+` | no  | yes |
//! | tropical rationals | [`TropicalRational`] | `max` | `+` | no  | yes |
//! | polynomials, ℕ     | [`PolyNat`]          | `+`   | `×` | yes | no  |
//! | polynomials, ℤ     | [`PolyInt`]          | `+`   | `×` | yes | no  |
//!
//! Every carrier has a multiplicative unit. [`Starred`] adjoins the extra
//! neutral element `∗` to any carrier, which is how undefined flow values are
//! represented. [`SemiringValue`] is a dynamically typed value used by the
//! text formats and the command line.

mod poly;
mod rational;
mod sample;
mod starred;
mod tropical;
mod value;

pub use poly::{Coefficient, Monomial, Poly, PolyInt, PolyNat, Var};
pub use rational::PositiveRational;
pub use sample::Sample;
pub use starred::Starred;
pub use tropical::{Tropical, TropicalInt, TropicalRational};
pub use value::{Carrier, SemiringValue};

use std::fmt::Debug;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use thiserror::Error;

/// The natural numbers `(ℕ, +, ×)`.
pub type CountingNat = BigUint;

/// The integer ring `(ℤ, +, ×)`.
pub type ExactInt = BigInt;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemiringError {
    #[error("carrier mismatch: {left} vs {right}")]
    CarrierMismatch { left: String, right: String },
    #[error("division is not supported on {0}")]
    DivisionUnsupported(String),
    #[error("cannot scale by zero: {0} has no additive identity")]
    ZeroScale(String),
    #[error("value out of carrier domain: {0}")]
    Domain(String),
    #[error("cannot parse {carrier} value from {input:?}: {reason}")]
    Parse {
        carrier: String,
        input: String,
        reason: String,
    },
}

/// A commutative semiring with a multiplicative unit.
///
/// Implementations must keep `add` and `mul` associative and commutative and
/// `mul` distributive over `add`; the property tests check this per carrier.
pub trait Semiring: Clone + PartialEq + Debug {
    fn add(&self, rhs: &Self) -> Self;

    fn mul(&self, rhs: &Self) -> Self;

    fn one() -> Self;

    /// The additive identity, when the carrier has one.
    fn zero() -> Option<Self> {
        None
    }

    /// `self ⊕ … ⊕ self`, `k` times. Scaling by zero needs `0̲`.
    fn nat_scale(&self, k: u64) -> Result<Self, SemiringError> {
        if k == 0 {
            return Self::zero()
                .ok_or_else(|| SemiringError::ZeroScale(std::any::type_name::<Self>().into()));
        }
        // double-and-add
        let mut acc: Option<Self> = None;
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = Some(match acc {
                    Some(a) => a.add(&base),
                    None => base.clone(),
                });
            }
            k >>= 1;
            if k > 0 {
                base = base.add(&base);
            }
        }
        Ok(acc.expect("k > 0"))
    }

    /// `⊕` over a non-empty iterator; `None` for an empty one.
    fn sum<'a, I>(items: I) -> Option<Self>
    where
        I: IntoIterator<Item = &'a Self>,
        Self: 'a,
    {
        items.into_iter().fold(None, |acc, x| match acc {
            None => Some(x.clone()),
            Some(a) => Some(a.add(x)),
        })
    }

    /// `⊙` over an iterator; the empty product is `1̲`.
    fn product<'a, I>(items: I) -> Self
    where
        I: IntoIterator<Item = &'a Self>,
        Self: 'a,
    {
        items.into_iter().fold(Self::one(), |acc, x| acc.mul(x))
    }
}

/// A semiring in which `⊙` is a group operation.
pub trait DivisionSemiring: Semiring {
    /// The unique `c` with `c ⊙ rhs = self`.
    fn div(&self, rhs: &Self) -> Self;

    fn inv(&self) -> Self {
        Self::one().div(self)
    }

    /// `self^e` for an integer exponent.
    fn pow_i(&self, e: i64) -> Self {
        let base = if e < 0 { self.inv() } else { self.clone() };
        let mut out = Self::one();
        for _ in 0..e.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }
}

/// A commutative ring: a semiring with `0̲` and additive inverses.
pub trait Ring: Semiring {
    fn zero_elem() -> Self {
        Self::zero().expect("rings have an additive identity")
    }

    fn neg(&self) -> Self;

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }
}

impl Semiring for BigUint {
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn one() -> Self {
        One::one()
    }

    fn zero() -> Option<Self> {
        Some(Zero::zero())
    }

    fn nat_scale(&self, k: u64) -> Result<Self, SemiringError> {
        Ok(self * BigUint::from(k))
    }
}

impl Semiring for BigInt {
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn one() -> Self {
        One::one()
    }

    fn zero() -> Option<Self> {
        Some(Zero::zero())
    }

    fn nat_scale(&self, k: u64) -> Result<Self, SemiringError> {
        Ok(self * BigInt::from(k))
    }
}

impl Ring for BigInt {
    fn neg(&self) -> Self {
        -self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counting_nat_scale_multiplies() {
        let two = CountingNat::from(2u32);
        assert_eq!(two.nat_scale(4).unwrap(), CountingNat::from(8u32));
        assert_eq!(two.nat_scale(0).unwrap(), CountingNat::from(0u32));
    }

    #[test]
    fn default_nat_scale_is_repeated_addition() {
        // Route the default implementation through a tropical value.
        let a = TropicalInt::from(2);
        assert_eq!(a.nat_scale(4).unwrap(), TropicalInt::from(2));
        assert!(matches!(a.nat_scale(0), Err(SemiringError::ZeroScale(_))));

        let r = PositiveRational::from_integer(3).unwrap();
        assert_eq!(r.nat_scale(5).unwrap(), PositiveRational::from_integer(15).unwrap());
    }

    #[test]
    fn empty_product_is_one_and_empty_sum_is_none() {
        let empty: Vec<ExactInt> = vec![];
        assert_eq!(ExactInt::product(&empty), ExactInt::from(1));
        assert_eq!(ExactInt::sum(&empty), None);
    }

    #[test]
    fn pow_i_handles_negative_exponents() {
        let a = PositiveRational::from_ratio(2, 3).unwrap();
        assert_eq!(a.pow_i(-2), PositiveRational::from_ratio(9, 4).unwrap());
        assert_eq!(a.pow_i(0), PositiveRational::one());
        let t = TropicalInt::from(5);
        assert_eq!(t.pow_i(-3), TropicalInt::from(-15));
    }
}
