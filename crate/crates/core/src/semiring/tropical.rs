use std::fmt;
use std::ops::{Add, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{DivisionSemiring, Semiring, SemiringError};

/// The tropicalization of a totally ordered abelian group: `⊕ = max`,
/// `⊙ = +`, `⊘ = −`. There is no `0̲` (no `−∞`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tropical<T>(pub T);

pub type TropicalInt = Tropical<BigInt>;
pub type TropicalRational = Tropical<BigRational>;

impl<T> Tropical<T> {
    pub fn value(&self) -> &T {
        &self.0
    }

    pub fn into_inner(self) -> T {
        self.0
    }
}

impl From<i64> for TropicalInt {
    fn from(v: i64) -> Self {
        Tropical(BigInt::from(v))
    }
}

impl From<i64> for TropicalRational {
    fn from(v: i64) -> Self {
        Tropical(BigRational::from_integer(BigInt::from(v)))
    }
}

impl<T> Semiring for Tropical<T>
where
    T: Clone + Ord + Zero + fmt::Debug + for<'a> Add<&'a T, Output = T>,
{
    fn add(&self, rhs: &Self) -> Self {
        if self.0 >= rhs.0 {
            self.clone()
        } else {
            rhs.clone()
        }
    }

    fn mul(&self, rhs: &Self) -> Self {
        Tropical(self.0.clone() + &rhs.0)
    }

    fn one() -> Self {
        Tropical(T::zero())
    }

    fn nat_scale(&self, k: u64) -> Result<Self, SemiringError> {
        if k == 0 {
            return Err(SemiringError::ZeroScale("Tropical".into()));
        }
        Ok(self.clone())
    }
}

impl<T> DivisionSemiring for Tropical<T>
where
    T: Clone + Ord + Zero + fmt::Debug + for<'a> Add<&'a T, Output = T> + for<'a> Sub<&'a T, Output = T>,
{
    fn div(&self, rhs: &Self) -> Self {
        Tropical(self.0.clone() - &rhs.0)
    }
}

impl<T: fmt::Display> fmt::Display for Tropical<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl<T> FromStr for Tropical<T>
where
    T: FromStr,
    T::Err: fmt::Display,
{
    type Err = SemiringError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        T::from_str(s).map(Tropical).map_err(|e| SemiringError::Parse {
            carrier: "Tropical".into(),
            input: s.into(),
            reason: e.to_string(),
        })
    }
}
