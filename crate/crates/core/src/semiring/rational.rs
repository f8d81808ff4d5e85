use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use super::{DivisionSemiring, Semiring, SemiringError};

/// `(ℚ_{>0}, +, ×)`: a semiring with division but without `0̲`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PositiveRational(BigRational);

impl PositiveRational {
    pub fn new(value: BigRational) -> Result<Self, SemiringError> {
        if value.is_positive() {
            Ok(Self(value))
        } else {
            Err(SemiringError::Domain(format!("{value} is not positive")))
        }
    }

    pub fn from_ratio(numer: i64, denom: i64) -> Result<Self, SemiringError> {
        if denom == 0 {
            return Err(SemiringError::Domain("zero denominator".into()));
        }
        Self::new(BigRational::new(numer.into(), denom.into()))
    }

    pub fn from_integer(n: i64) -> Result<Self, SemiringError> {
        Self::from_ratio(n, 1)
    }

    pub fn one() -> Self {
        Self(BigRational::one())
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }
}

impl Semiring for PositiveRational {
    fn add(&self, rhs: &Self) -> Self {
        Self(&self.0 + &rhs.0)
    }

    fn mul(&self, rhs: &Self) -> Self {
        Self(&self.0 * &rhs.0)
    }

    fn one() -> Self {
        Self(BigRational::one())
    }

    fn nat_scale(&self, k: u64) -> Result<Self, SemiringError> {
        if k == 0 {
            return Err(SemiringError::ZeroScale("PositiveRational".into()));
        }
        Ok(Self(&self.0 * BigRational::from_integer(BigInt::from(k))))
    }
}

impl DivisionSemiring for PositiveRational {
    fn div(&self, rhs: &Self) -> Self {
        Self(&self.0 / &rhs.0)
    }
}

impl fmt::Display for PositiveRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl FromStr for PositiveRational {
    type Err = SemiringError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse_err = |reason: String| SemiringError::Parse {
            carrier: "PositiveRational".into(),
            input: s.into(),
            reason,
        };
        let value = BigRational::from_str(s).map_err(|e| parse_err(e.to_string()))?;
        Self::new(value).map_err(|e| parse_err(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_examples() {
        let six = PositiveRational::from_integer(6).unwrap();
        let four = PositiveRational::from_integer(4).unwrap();
        assert_eq!(six.div(&four), PositiveRational::from_ratio(3, 2).unwrap());
        assert_eq!(six.div(&six), PositiveRational::one());
    }

    #[test]
    fn rejects_non_positive() {
        assert!(PositiveRational::from_integer(0).is_err());
        assert!(PositiveRational::from_ratio(-1, 2).is_err());
        assert!("0".parse::<PositiveRational>().is_err());
        assert!("-3/4".parse::<PositiveRational>().is_err());
    }

    #[test]
    fn has_no_zero() {
        assert_eq!(<PositiveRational as Semiring>::zero(), None);
    }
}
